"""Core language: simple types, terms, rules and programs.

Everything here is immutable after construction; all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Union


class LangError(Exception):
    """Raised on ill-typed terms or malformed declarations."""

    def __init__(self, msg, pos=None):
        self.msg = msg
        self.pos = pos  # (line, col) or None
        super().__init__(msg if pos is None else "%d:%d: %s" % (pos[0], pos[1], msg))


# ---------------------------------------------------------------------------
# Types

@dataclass(frozen=True)
class Sort:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Product:
    left: "Type"
    right: "Type"

    def __str__(self):
        return "%s * %s" % (_paren(self.left, 1), _paren(self.right, 0))


@dataclass(frozen=True)
class Arrow:
    dom: "Type"
    cod: "Type"

    def __str__(self):
        return "%s => %s" % (_paren(self.dom, 0), str(self.cod))


Type = Union[Sort, Product, Arrow]


def _paren(t: Type, level: int) -> str:
    # level 0: parenthesize arrows; level 1: parenthesize arrows and products
    if isinstance(t, Arrow) or (level >= 1 and isinstance(t, Product)):
        return "(%s)" % t
    return str(t)


def type_order(t: Type) -> int:
    if isinstance(t, Sort):
        return 0
    if isinstance(t, Product):
        return max(type_order(t.left), type_order(t.right))
    return max(type_order(t.dom) + 1, type_order(t.cod))


def spine(t: Type) -> tuple[list[Type], Type]:
    """Flatten nested arrows: returns (argument types, final codomain)."""
    args = []
    while isinstance(t, Arrow):
        args.append(t.dom)
        t = t.cod
    return args, t


def arrow(args: list[Type], cod: Type) -> Type:
    for a in reversed(args):
        cod = Arrow(a, cod)
    return cod


def product(parts: list[Type]) -> Type:
    """Right-nested n-ary product."""
    if not parts:
        raise ValueError("empty product")
    t = parts[-1]
    for p in reversed(parts[:-1]):
        t = Product(p, t)
    return t


# ---------------------------------------------------------------------------
# Terms.  All terms carry their type.  Constructor applications (Con) are
# always fully applied; Fun/Var applications may be partial.

@dataclass(frozen=True)
class Con:
    name: str
    args: tuple
    type: Type


@dataclass(frozen=True)
class Fun:
    name: str
    args: tuple
    type: Type


@dataclass(frozen=True)
class Var:
    name: str
    args: tuple
    type: Type


@dataclass(frozen=True)
class Pair:
    left: "Term"
    right: "Term"
    type: Type


Term = Union[Con, Fun, Var, Pair]


def subterms(s: Term) -> set:
    """Reflexive subterm closure; the head of an application is excluded."""
    out = {s}
    if isinstance(s, (Con, Fun, Var)):
        for a in s.args:
            out |= subterms(a)
    elif isinstance(s, Pair):
        out |= subterms(s.left)
        out |= subterms(s.right)
    return out


def free_vars(s: Term) -> set:
    if isinstance(s, Var):
        out = {s.name}
    else:
        out = set()
    if isinstance(s, (Con, Fun, Var)):
        for a in s.args:
            out |= free_vars(a)
    elif isinstance(s, Pair):
        out = free_vars(s.left) | free_vars(s.right)
    return out


def is_ground(s: Term) -> bool:
    return not free_vars(s)


def is_data_term(s: Term) -> bool:
    """Ground term built only from constructors and pairs."""
    if isinstance(s, Con):
        return all(is_data_term(a) for a in s.args)
    if isinstance(s, Pair):
        return is_data_term(s.left) and is_data_term(s.right)
    return False


def apply_term(s: Term, extra: tuple) -> Term:
    """Append arguments to an application (used for over-application)."""
    if not extra:
        return s
    t = s.type
    for _ in extra:
        if not isinstance(t, Arrow):
            raise LangError("cannot apply term of type %s" % s.type)
        t = t.cod
    if isinstance(s, Fun):
        return Fun(s.name, s.args + extra, t)
    if isinstance(s, Var):
        return Var(s.name, s.args + extra, t)
    raise LangError("cannot apply a %s" % type(s).__name__)


# ---------------------------------------------------------------------------
# Symbol tables and programs

@dataclass
class SymbolTable:
    sorts: set = field(default_factory=set)
    constructors: dict = field(default_factory=dict)  # name -> Type
    defined: dict = field(default_factory=dict)       # name -> Type

    def declare_sort(self, name, pos=None):
        if name in self.sorts:
            raise LangError("duplicate sort %r" % name, pos)
        self.sorts.add(name)

    def declare_con(self, name, typ, pos=None):
        self._fresh(name, pos)
        args, cod = spine(typ)
        if not isinstance(cod, Sort):
            raise LangError("constructor %r must target a sort" % name, pos)
        for a in args:
            if type_order(a) != 0:
                raise LangError(
                    "constructor %r takes an argument of order > 0" % name, pos)
        self._check_sorts(typ, pos)
        self.constructors[name] = typ

    def declare_fun(self, name, typ, pos=None):
        self._fresh(name, pos)
        self._check_sorts(typ, pos)
        self.defined[name] = typ

    def _fresh(self, name, pos):
        if name in self.constructors or name in self.defined:
            raise LangError("duplicate symbol %r" % name, pos)

    def _check_sorts(self, typ, pos):
        if isinstance(typ, Sort):
            if typ.name not in self.sorts:
                raise LangError("unknown sort %r" % typ.name, pos)
        elif isinstance(typ, Product):
            self._check_sorts(typ.left, pos)
            self._check_sorts(typ.right, pos)
        else:
            self._check_sorts(typ.dom, pos)
            self._check_sorts(typ.cod, pos)


@dataclass
class Rule:
    lhs: Term
    rhs: Term
    var_types: dict  # name -> Type


@dataclass
class Program:
    table: SymbolTable
    rules: list
    arity: dict = field(default_factory=dict)  # defined name -> nat

    def rules_for(self, name) -> list:
        return [r for r in self.rules if r.lhs.name == name]


def make_program(table: SymbolTable, rules: list) -> Program:
    """Assemble a program, checking rule consistency and assigning arities."""
    arity = {}
    for r in rules:
        f = r.lhs.name
        k = len(r.lhs.args)
        if f in arity and arity[f] != k:
            raise LangError(
                "inconsistent rules: %r used with %d and %d arguments"
                % (f, arity[f], k))
        arity[f] = k
    for f, typ in table.defined.items():
        if f not in arity:
            arity[f] = len(spine(typ)[0])
    return Program(table, rules, arity)


# ---------------------------------------------------------------------------
# Raw (untyped) terms, produced by the parser, and the type checker

@dataclass
class RawApp:
    head: str
    args: list
    pos: Optional[tuple] = None


@dataclass
class RawPair:
    left: "Raw"
    right: "Raw"
    pos: Optional[tuple] = None


Raw = Union[RawApp, RawPair]


def type_check(table: SymbolTable, raw: Raw, var_types: dict,
               expected: Optional[Type] = None) -> Term:
    """Resolve identifiers against the table and compute the unique type.

    var_types gives the (already determined) types of the rule's variables;
    unknown identifiers are an error here.
    """
    term = _check(table, raw, var_types)
    if expected is not None and term.type != expected:
        raise LangError(
            "expected type %s, found %s" % (expected, term.type),
            getattr(raw, "pos", None))
    return term


def _check(table, raw, var_types):
    if isinstance(raw, RawPair):
        l = _check(table, raw.left, var_types)
        r = _check(table, raw.right, var_types)
        return Pair(l, r, Product(l.type, r.type))
    name = raw.head
    args = [_check(table, a, var_types) for a in raw.args]
    if name in table.constructors:
        typ = table.constructors[name]
        arg_types, cod = spine(typ)
        if len(args) != len(arg_types):
            raise LangError(
                "constructor %r expects %d arguments, got %d"
                % (name, len(arg_types), len(args)), raw.pos)
        _check_args(name, args, arg_types, raw.pos)
        return Con(name, tuple(args), cod)
    if name in table.defined:
        typ = table.defined[name]
        return _apply(Fun, name, typ, args, raw.pos)
    if name in var_types:
        return _apply(Var, name, var_types[name], args, raw.pos)
    raise LangError("unknown identifier %r" % name, raw.pos)


def _apply(ctor, name, typ, args, pos):
    arg_types, _ = spine(typ)
    if len(args) > len(arg_types):
        raise LangError("%r applied to too many arguments" % name, pos)
    _check_args(name, args, arg_types[: len(args)], pos)
    t = typ
    for _ in args:
        t = t.cod
    return ctor(name, tuple(args), t)


def _check_args(name, args, arg_types, pos):
    for i, (a, t) in enumerate(zip(args, arg_types)):
        if a.type != t:
            raise LangError(
                "argument %d of %r has type %s, expected %s"
                % (i + 1, name, a.type, t), pos)


# ---------------------------------------------------------------------------
# Rule well-formedness: conditions (a)-(e)

def check_rule(table: SymbolTable, lhs: Term, rhs: Term) -> list:
    """Returns a list of (letter, message) pairs, empty when well-formed."""
    violations = []
    if not isinstance(lhs, Fun):
        violations.append(("a", "left-hand side head is not a defined symbol"))
        return violations
    for pat in lhs.args:
        bad = _non_pattern(pat)
        if bad is not None:
            violations.append(("b", bad))
    counts = {}
    _var_counts(lhs, counts)
    for v, n in counts.items():
        if n > 1:
            violations.append(("c", "variable %r occurs %d times in the left-hand side" % (v, n)))
    extra = free_vars(rhs) - free_vars(lhs)
    if extra:
        violations.append(("d", "right-hand side uses unbound variables: %s"
                           % ", ".join(sorted(extra))))
    if lhs.type != rhs.type:
        violations.append(("e", "left-hand side has type %s, right-hand side %s"
                           % (lhs.type, rhs.type)))
    return violations


def _non_pattern(pat):
    if isinstance(pat, Fun):
        return "defined symbol %r occurs in a pattern" % pat.name
    if isinstance(pat, Var):
        if pat.args:
            return "applied variable %r in a pattern" % pat.name
        return None
    if isinstance(pat, Con):
        for a in pat.args:
            bad = _non_pattern(a)
            if bad is not None:
                return bad
        return None
    bad = _non_pattern(pat.left)
    return bad if bad is not None else _non_pattern(pat.right)


def _var_counts(s, counts):
    if isinstance(s, Var):
        counts[s.name] = counts.get(s.name, 0) + 1
    if isinstance(s, (Con, Fun, Var)):
        for a in s.args:
            _var_counts(a, counts)
    elif isinstance(s, Pair):
        _var_counts(s.left, counts)
        _var_counts(s.right, counts)


# ---------------------------------------------------------------------------
# Data order and values

def data_order(p: Program) -> int:
    orders = [0]
    for typ in p.table.defined.values():
        args, _ = spine(typ)
        orders.extend(type_order(a) for a in args)
    for r in p.rules:
        orders.extend(type_order(t) for t in r.var_types.values())
    return max(orders)


def is_value(p: Program, s: Term) -> bool:
    if isinstance(s, Con):
        return all(is_value(p, a) for a in s.args)
    if isinstance(s, Pair):
        return is_value(p, s.left) and is_value(p, s.right)
    if isinstance(s, Fun):
        return len(s.args) < p.arity[s.name] and all(is_value(p, a) for a in s.args)
    return False
