"""Concrete syntax: programs, data terms, sugar, printing, diagnostics."""

import pytest
from hypothesis import given, strategies as st

from consfree.lang import LangError, Product, Sort
from consfree.parser import (
    ParseError, parse_data_term, parse_program, print_program, print_term,
)
from corpus import CORPUS, PRELUDE

BOOL = Sort("bool")
LIST = Sort("list")


def test_parse_choose():
    p = parse_program(PRELUDE + """\
fun choose : bool => bool => bool
rules:
choose x y -> x
choose x y -> y
""")
    assert len(p.rules) == 2
    assert p.arity["choose"] == 2
    assert p.table.defined["choose"].dom == BOOL


def test_declarations_only_program():
    p = parse_program(PRELUDE)
    assert p.rules == []
    assert p.table.sorts == {"bool", "list"}


def test_comments_and_blank_lines():
    p = parse_program(PRELUDE + """\
-- the identity on lists
fun f : list => list   -- trailing comment

rules:

f xs -> xs  -- another
""")
    assert len(p.rules) == 1


def test_bitstring_sugar():
    p = parse_program(PRELUDE)
    lit = parse_data_term('"101"', LIST, p.table)
    spelled = parse_data_term("true::false::true::[]", LIST, p.table)
    assert lit == spelled
    assert parse_data_term('""', LIST, p.table) == \
        parse_data_term("[]", LIST, p.table)


def test_cons_sugar_right_associative():
    p = parse_program(PRELUDE)
    t = parse_data_term("true::false::[]", LIST, p.table)
    assert t.name == "cons"
    assert t.args[1].name == "cons"


def test_pair_data_term():
    p = parse_program(PRELUDE)
    t = parse_data_term("(true, [])", Product(BOOL, LIST), p.table)
    assert t.type == Product(BOOL, LIST)
    # n-ary tuples nest to the right
    t3 = parse_data_term("(true, true, [])",
                         Product(BOOL, Product(BOOL, LIST)), p.table)
    assert t3.right.type == Product(BOOL, LIST)


def test_parse_data_term_rejects_non_data():
    p = parse_program(PRELUDE + "fun f : list => list\nrules:\nf xs -> xs\n")
    with pytest.raises(LangError):
        parse_data_term("f []", LIST, p.table)


def test_syntax_error_position():
    with pytest.raises(ParseError) as e:
        parse_program(PRELUDE + "fun f : list => list\nrules:\nf x = x\n")
    assert e.value.pos[0] == 9  # the line with the stray '='


def test_unknown_identifier():
    with pytest.raises(ParseError):
        parse_program(PRELUDE + "fun f : list => bool\nrules:\nf xs -> zs\n")


def test_argument_type_mismatch():
    with pytest.raises(ParseError):
        parse_program(PRELUDE + "fun f : bool => bool\nrules:\nf x -> f []\n")


def test_unterminated_bitstring():
    with pytest.raises(ParseError):
        parse_program(PRELUDE + 'fun f : list => list\nrules:\nf xs -> "10\n')


def test_rule_condition_reported():
    # non-linear lhs violates condition (c)
    with pytest.raises(ParseError) as e:
        parse_program(PRELUDE + """\
fun f : bool => bool => bool
rules:
f x x -> x
""")
    assert "(c)" in str(e.value)


def test_applied_variable_in_pattern():
    with pytest.raises(ParseError):
        parse_program(PRELUDE + """\
fun f : (bool => bool) => bool => bool
rules:
f (g x) y -> y
""")


def test_where_clause_types_rhs_only_helpers():
    # `where` can pin down a variable's type explicitly
    p = parse_program(PRELUDE + """\
fun f : bool => bool
rules:
f x -> x where x : bool
""")
    assert p.rules[0].var_types["x"] == BOOL
    with pytest.raises(ParseError):
        parse_program(PRELUDE + """\
fun f : bool => bool
rules:
f x -> x where x : list
""")


def test_print_parse_roundtrip_corpus():
    for name, src in CORPUS:
        p = parse_program(src)
        text = print_program(p)
        q = parse_program(text)
        assert print_program(q) == text, name
        assert len(q.rules) == len(p.rules), name


@given(st.lists(st.booleans(), max_size=8))
def test_data_term_print_parse_roundtrip(bits):
    p = parse_program(PRELUDE)
    src = "[]"
    for b in reversed(bits):
        src = ("true" if b else "false") + "::" + src
    t = parse_data_term(src, LIST, p.table)
    assert parse_data_term(print_term(t), LIST, p.table) == t


@given(st.text(alphabet="01", max_size=8))
def test_bitstring_literals_roundtrip(s):
    p = parse_program(PRELUDE)
    t = parse_data_term('"%s"' % s, LIST, p.table)
    assert parse_data_term(print_term(t), LIST, p.table) == t
