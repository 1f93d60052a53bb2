"""Terminating all-results evaluation by statement saturation.

Values are abstracted into finite domains: base data terms for sorts,
pairs componentwise, and function graphs (sets of argument/result pairs)
for arrows.  Claims `f A1 ... Am ~ O` are confirmed monotonically to a
fixpoint; the data results of the goal call are read off the table.

Two modes share one engine:

* eager    -- the literal algorithm: every statement over the fully
              enumerated domains is materialized up front, and variable
              subjects contribute their whole down-set.  Reference mode,
              only feasible for small base sets and low data order.
* demand   -- only statements reachable from the goal are materialized,
              and only maximal abstract values are propagated.  Down-set
              slack is recovered at application sites, which compare
              function-graph arguments up to the superset order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .lang import (
    Con, LangError, Pair, Product, Program, Sort, Term, Type, Var,
    is_data_term, spine, subterms, type_order,
)


class DomainCapExceeded(Exception):
    """An abstract domain grew past the configured cap."""


class SaturationPrecondition(Exception):
    """The program or call does not meet the algorithm's preconditions."""


# ---------------------------------------------------------------------------
# Abstract values

@dataclass(frozen=True)
class Base:
    term: Term  # sort-typed data term


@dataclass(frozen=True)
class PairAV:
    left: "AV"
    right: "AV"


@dataclass(frozen=True)
class FunAV:
    graph: frozenset  # of (AV, AV) pairs


AV = object


def abstract(d: Term) -> AV:
    """Data term -> abstract value."""
    if isinstance(d, Pair):
        return PairAV(abstract(d.left), abstract(d.right))
    return Base(d)


def concrete(av: AV) -> Term:
    if isinstance(av, Base):
        return av.term
    if isinstance(av, PairAV):
        l, r = concrete(av.left), concrete(av.right)
        return Pair(l, r, Product(l.type, r.type))
    raise ValueError("no data term for a function value")


def geq(a: AV, b: AV) -> bool:
    if isinstance(a, Base) and isinstance(b, Base):
        return a == b
    if isinstance(a, PairAV) and isinstance(b, PairAV):
        return geq(a.left, b.left) and geq(a.right, b.right)
    if isinstance(a, FunAV) and isinstance(b, FunAV):
        return a.graph >= b.graph
    return False


def av_key(av: AV):
    """Total order on abstract values, for canonical display and choices."""
    if isinstance(av, Base):
        from .parser import print_term
        return (0, print_term(av.term))
    if isinstance(av, PairAV):
        return (1, av_key(av.left), av_key(av.right))
    return (2, len(av.graph), sorted((av_key(a), av_key(b)) for a, b in av.graph))


def print_av(av: AV) -> str:
    from .parser import print_term
    if isinstance(av, Base):
        return print_term(av.term)
    if isinstance(av, PairAV):
        return "(%s, %s)" % (print_av(av.left), print_av(av.right))
    pairs = sorted(av.graph, key=lambda p: (av_key(p[0]), av_key(p[1])))
    return "{%s}" % "; ".join("%s -> %s" % (print_av(a), print_av(b))
                              for a, b in pairs)


# ---------------------------------------------------------------------------
# Base set and type interpretation

def build_base(p: Program, inputs) -> list:
    """Input data subterms plus rhs data subterms, canonically sorted."""
    out = set()
    for v in inputs:
        out |= {t for t in subterms(v) if is_data_term(t)}
    for rule in p.rules:
        out |= {t for t in subterms(rule.rhs) if is_data_term(t)}
    return sorted(out, key=lambda t: av_key(abstract(t)))


def domain_size(t: Type, base: list, cap: int) -> int:
    if isinstance(t, Sort):
        return sum(1 for d in base if d.type == t)
    if isinstance(t, Product):
        n = domain_size(t.left, base, cap) * domain_size(t.right, base, cap)
    else:
        pairs = domain_size(t.dom, base, cap) * domain_size(t.cod, base, cap)
        if pairs > 60:
            raise DomainCapExceeded(
                "2^%d elements at type %s" % (pairs, t))
        n = 2 ** pairs
    if n > cap:
        raise DomainCapExceeded("%d elements at type %s (cap %d)" % (n, t, cap))
    return n


def interpret_type(t: Type, base: list, cap: int = 1_000_000) -> list:
    """Fully enumerated abstract domain for a type."""
    domain_size(t, base, cap)
    if isinstance(t, Sort):
        return [Base(d) for d in base if d.type == t]
    if isinstance(t, Product):
        return [PairAV(a, b)
                for a in interpret_type(t.left, base, cap)
                for b in interpret_type(t.right, base, cap)]
    pairs = [(a, b)
             for a in interpret_type(t.dom, base, cap)
             for b in interpret_type(t.cod, base, cap)]
    return [FunAV(frozenset(s)) for s in _subsets(pairs)]


def _subsets(items):
    out = [[]]
    for x in items:
        out += [s + [x] for s in out]
    return [frozenset(s) for s in out]


def downset(av: AV, cap: int = 1_000_000) -> list:
    if isinstance(av, Base):
        return [av]
    if isinstance(av, PairAV):
        return [PairAV(a, b)
                for a in downset(av.left, cap) for b in downset(av.right, cap)]
    if len(av.graph) > 60 or 2 ** len(av.graph) > cap:
        raise DomainCapExceeded("down-set of a %d-pair graph" % len(av.graph))
    return [FunAV(s) for s in _subsets(sorted(av.graph, key=lambda p: (av_key(p[0]), av_key(p[1]))))]


# ---------------------------------------------------------------------------
# Abstract pattern matching

def abstract_match(patterns, avs) -> list:
    """All substitutions (at most one: patterns are linear) mapping the
    pattern variables to abstract values with pattern*subst == value."""
    subst = {}
    for pat, av in zip(patterns, avs):
        if not _amatch(pat, av, subst):
            return []
    return [subst]


def _amatch(pat, av, subst):
    if isinstance(pat, Var):
        subst[pat.name] = av
        return True
    if isinstance(pat, Con):
        if not isinstance(av, Base):
            return False
        d = av.term
        if not isinstance(d, Con) or d.name != pat.name:
            return False
        return all(_amatch(p, abstract(a), subst)
                   for p, a in zip(pat.args, d.args))
    if isinstance(pat, Pair):
        return (isinstance(av, PairAV)
                and _amatch(pat.left, av.left, subst)
                and _amatch(pat.right, av.right, subst))
    return False


# ---------------------------------------------------------------------------
# The engine

@dataclass
class SaturationStats:
    base_size: int = 0
    keys: int = 0
    confirmed: int = 0
    evaluations: int = 0
    passes: int = 0

    def to_records(self):
        return {
            "base_size": str(self.base_size),
            "statement_keys": str(self.keys),
            "confirmed_statements": str(self.confirmed),
            "evaluations": str(self.evaluations),
        }


class SaturationEngine:
    """Monotone statement-confirmation fixpoint over abstract values.

    One engine instance is tied to a program and the inputs its base set
    was built from; `call` may be invoked repeatedly (the table persists
    and only ever grows)."""

    def __init__(self, program: Program, inputs, mode: str = "demand",
                 domain_cap: int = 200_000, key_cap: int = 2_000_000):
        if mode not in ("demand", "eager"):
            raise ValueError("mode must be 'demand' or 'eager'")
        cf = _cons_free_quick(program)
        if not cf:
            raise SaturationPrecondition("program is not cons-free")
        self.p = program
        self.mode = mode
        self.cap = domain_cap
        self.key_cap = key_cap
        self.base = build_base(program, inputs)
        self.stats = SaturationStats(base_size=len(self.base))
        self.table = {}    # (f, avs) -> set of AV
        self.deps = {}     # key -> set of keys to re-evaluate when it grows
        self.queue = deque()
        self.queued = set()
        self.current = None
        self._domains = {}

    # -- domains ----------------------------------------------------------

    def domain(self, t: Type) -> list:
        if t not in self._domains:
            self._domains[t] = interpret_type(t, self.base, self.cap)
        return self._domains[t]

    # -- public entry points ----------------------------------------------

    def call(self, fname: str, avs) -> set:
        """Saturate and return the confirmed result values of f applied to
        the given abstract arguments (must saturate the full arity)."""
        if fname not in self.p.table.defined:
            raise SaturationPrecondition("unknown defined symbol %r" % fname)
        arg_types, cod = spine(self.p.table.defined[fname])
        if len(avs) != len(arg_types):
            raise SaturationPrecondition(
                "%r expects %d arguments, got %d"
                % (fname, len(arg_types), len(avs)))
        if type_order(cod) != 0:
            raise SaturationPrecondition(
                "result type %s of %r has order > 0" % (cod, fname))
        key = (fname, tuple(avs))
        if self.mode == "eager":
            self._seed_all()
        self._enqueue(key)
        self._run()
        return set(self.table[key])

    def eval_call(self, fname: str, avs) -> set:
        """Confirmed values of f applied to abstract arguments.  Unlike
        `call` the application may be partial, in which case the results
        are function values."""
        if fname not in self.p.table.defined:
            raise SaturationPrecondition("unknown defined symbol %r" % fname)
        arg_types, _ = spine(self.p.table.defined[fname])
        avs = tuple(avs)
        if len(avs) > len(arg_types):
            raise SaturationPrecondition(
                "%r takes at most %d arguments, got %d"
                % (fname, len(arg_types), len(avs)))
        if self.mode == "eager":
            self._seed_all()
        while True:
            before = (self.stats.keys, self.stats.confirmed)
            if len(avs) >= self.p.arity[fname]:
                vals = set(self._query((fname, avs)))
            else:
                vals = self._partial_values(fname, avs, arg_types)
            self._run()
            if (self.stats.keys, self.stats.confirmed) == before:
                return vals

    def call_data(self, fname: str, inputs) -> set:
        """Goal call on data arguments; returns a set of data terms."""
        avs = tuple(abstract(v) for v in inputs)
        return {concrete(av) for av in self.call(fname, avs)}

    def statements(self):
        """One (subject, claim, confirmed) triple per table statement."""
        for (f, avs), confirmed in sorted(
                self.table.items(), key=lambda kv: (kv[0][0], [av_key(a) for a in kv[0][1]])):
            cod = _result_type(self.p.table.defined[f], len(avs))
            for o in self.domain(cod):
                yield (f, avs, o, o in confirmed)

    # -- worklist ----------------------------------------------------------

    def _seed_all(self):
        if getattr(self, "_seeded", False):
            return
        self._seeded = True
        for f, typ in self.p.table.defined.items():
            arg_types, cod = spine(typ)
            if type_order(cod) != 0:
                raise SaturationPrecondition(
                    "result type %s of %r has order > 0" % (cod, f))
            combos = [()]
            for j, t in enumerate(arg_types):
                if j >= self.p.arity[f]:
                    for c in combos:
                        self._enqueue((f, c))
                dom = self.domain(t)
                combos = [c + (a,) for c in combos for a in dom]
            for c in combos:
                self._enqueue((f, c))

    def _enqueue(self, key):
        if key not in self.table:
            if len(self.table) >= self.key_cap:
                raise DomainCapExceeded(
                    "statement table exceeded %d keys" % self.key_cap)
            self.table[key] = set()
            self.deps[key] = set()
            self.stats.keys += 1
        if key not in self.queued:
            self.queued.add(key)
            self.queue.append(key)

    def _run(self):
        while self.queue:
            key = self.queue.popleft()
            self.queued.discard(key)
            prev = self.current
            self.current = key
            self.stats.evaluations += 1
            new = self._eval_key(key)
            self.current = prev
            old = self.table[key]
            if not new <= old:
                self.stats.confirmed += len(new - old)
                old |= new
                for dep in self.deps[key]:
                    self._enqueue(dep)
        self.stats.passes += 1

    def _query(self, key):
        if key not in self.table:
            self._enqueue(key)
        if self.current is not None:
            self.deps[key].add(self.current)
        return self.table[key]

    # -- statement confirmation --------------------------------------------

    def _eval_key(self, key):
        # keys carry at least arity(f) arguments, so every rule applies to a
        # prefix and any remaining arguments are fed to the resulting graphs
        f, avs = key
        n = len(avs)
        out = set()
        for rule in self.p.rules_for(f):
            k = len(rule.lhs.args)
            if k > n:
                continue
            for subst in abstract_match(rule.lhs.args, avs[:k]):
                vals = self._subject_values(rule.rhs, subst)
                for extra in avs[k:]:
                    vals = self._apply_values(vals, [extra])
                out |= vals
        return out

    def _subject_values(self, s: Term, subst: dict) -> set:
        """All claims confirmed (now) for the subject s under subst."""
        if isinstance(s, Var):
            if not s.args:
                if self.mode == "eager":
                    return set(downset(subst[s.name], self.cap))
                return {subst[s.name]}
            vals = {subst[s.name]}
            for a in s.args:
                vals = self._apply_values(vals, self._subject_values(a, subst))
            return vals
        if isinstance(s, Pair):
            return {PairAV(l, r)
                    for l in self._subject_values(s.left, subst)
                    for r in self._subject_values(s.right, subst)}
        if isinstance(s, Con):
            combos = [()]
            for a in s.args:
                vs = sorted(self._subject_values(a, subst), key=av_key)
                combos = [c + (concrete(v),) for c in combos for v in vs]
            return {Base(Con(s.name, c, s.type)) for c in combos}
        # defined-symbol application: below arity(f) it is a closure value,
        # from arity(f) on it reduces and each result is a separate value
        arg_types, _ = spine(self.p.table.defined[s.name])
        arity = self.p.arity[s.name]
        combos = [()]
        for a in s.args:
            vs = sorted(self._subject_values(a, subst), key=av_key)
            combos = [c + (v,) for c in combos for v in vs]
        out = set()
        for c in combos:
            if len(c) >= arity:
                out |= self._query((s.name, c))
            else:
                out |= self._partial_values(s.name, c, arg_types)
        return out

    def _apply_values(self, funs, arg_values) -> set:
        """Apply confirmed function values to confirmed argument values.
        A graph entry (A, O) fires when some argument value dominates A."""
        args = list(arg_values)
        out = set()
        for g in funs:
            if not isinstance(g, FunAV):
                raise LangError("applying a non-function abstract value")
            for a, o in g.graph:
                if any(geq(v, a) for v in args):
                    out.add(o)
        return out

    def _partial_values(self, f, avs, arg_types) -> set:
        gmax = self._gmax(f, avs, arg_types)
        if self.mode == "eager":
            return set(downset(FunAV(gmax), self.cap))
        return {FunAV(gmax)}

    def _gmax(self, f, avs, arg_types) -> frozenset:
        """Maximal graph of the closure f avs (with fewer than arity(f)
        arguments captured): all (A, w) with w a confirmed result of
        f avs A -- or a nested closure graph while still under arity."""
        n = len(avs)
        next_dom = self.domain(arg_types[n])
        graph = set()
        for a in next_dom:
            if n + 1 >= self.p.arity[f]:
                for w in self._query((f, avs + (a,))):
                    graph.add((a, w))
            else:
                if self.mode == "eager":
                    for w in downset(FunAV(self._gmax(f, avs + (a,), arg_types)),
                                     self.cap):
                        graph.add((a, w))
                else:
                    graph.add((a, FunAV(self._gmax(f, avs + (a,), arg_types))))
        return frozenset(graph)


def _result_type(typ, n):
    t = typ
    for _ in range(n):
        t = t.cod
    return t


def _cons_free_quick(p: Program) -> bool:
    from .analysis import is_cons_free
    return is_cons_free(p)[0]


# ---------------------------------------------------------------------------
# Convenience wrappers

def saturate(p: Program, fname: str, inputs, mode: str = "demand",
             domain_cap: int = 200_000) -> set:
    """All data terms derivable from f applied to the given data inputs."""
    engine = SaturationEngine(p, inputs, mode=mode, domain_cap=domain_cap)
    return engine.call_data(fname, inputs)


def saturate_eager(p: Program, fname: str, inputs,
                   domain_cap: int = 200_000) -> set:
    return saturate(p, fname, inputs, mode="eager", domain_cap=domain_cap)
