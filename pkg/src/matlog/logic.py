"""Logic presentations and their model theory over finite matrices.

A logic is presented either by a finite set of rules (Hilbert style) or by
a finite family of finite matrices; some built-ins carry both.  For rule
presentations filterhood is the exact closure condition under all rule
instances.  For matrix presentations the paper-level definition quantifies
over all consequences of the induced logic, which has no given finite
decision procedure; the criterion implemented here is:

  * the empty set is a deductive filter iff the logic has no theorems,
    decided exactly by closing the tuple of unary term functions of the
    generators (a theorem can always be specialized to one variable);
  * values of joint theorem terms found by the same closure must be
    designated (exact necessary condition);
  * valuations h into the target algebra are swept up to variable
    symmetry.  Substitution invariance collapses any valuation onto the
    injective valuation of its image, so one injective valuation per
    support (of size up to variable_bound) decides everything;
  * per support, when the generator-valuation space is small enough, the
    criterion is exact: close the joint traces of all compatible
    generator valuations and look for a reachable trace that is
    undesignated on the target but designated in every compatible
    valuation (such a trace is a genuine failed consequence);
  * on supports past the threshold, fall back to the pairwise relaxation:
    a reachable element a outside F needs some compatible generator
    valuation whose reachable pairs include (a, q) with q undesignated.

Pairwise tracking conflates formulas with equal target values, so it can
over-accept; every refutation it produces is genuine.  Acceptance is
exact wherever the exact mode applies (in particular on the whole
negation-fragment test range) and relative to the pairwise criterion
beyond; the test suite cross-validates against the rule presentation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .algebra import (
    FiniteAlgebra,
    Matrix,
    generated_subalgebra,
    trivial_matrix,
)
from .congruence import (
    FilterError,
    Partition,
    is_congruence,
    leibniz_congruence,
    suszko_congruence,
)
from .terms import (
    App,
    InputError,
    Rule,
    Signature,
    Term,
    Translation,
    Var,
    apply_substitution,
    check_term,
    translate_term,
    variables,
)

UNIVERSE_CAP = 20        # filter enumeration is a subset scan; keep it sane
CLONE_CAP = 20_000       # joint unary term-function closure size bound
EXACT_VALUATION_CAP = 48  # exact filter criterion when sum of |B|^s fits
EXACT_TRACE_CAP = 20_000  # joint trace closure bound before falling back


class PresentationError(InputError):
    """The operation needs a presentation the logic does not carry."""


class DeltaWitnessError(InputError):
    """A candidate congruence-formula set failed to define a congruence."""


@dataclass(frozen=True)
class CongruenceFormulaSet:
    """A non-empty set of binary formulas Delta(x1, x2)."""

    terms: tuple[Term, ...]

    def __post_init__(self):
        if not self.terms:
            raise InputError("congruence formula set must be non-empty")
        for t in self.terms:
            bad = [v for v in variables(t) if v not in (1, 2)]
            if bad:
                raise InputError(f"congruence formula uses variables {bad} beyond x1, x2")
        object.__setattr__(self, "_hash", hash(self.terms))

    def __hash__(self):
        return self._hash

    def at(self, a: Term, b: Term) -> tuple[Term, ...]:
        sub = {1: a, 2: b}
        return tuple(apply_substitution(sub, t) for t in self.terms)


@dataclass(frozen=True)
class Logic:
    """A logic presented by rules, by matrices, or by both."""

    name: str
    signature: Signature
    rules: tuple[Rule, ...] | None = None
    generators: tuple[Matrix, ...] | None = None
    variable_bound: int | None = None
    delta: CongruenceFormulaSet | None = None

    def __post_init__(self):
        if self.rules is None and self.generators is None:
            raise InputError("a logic needs at least one presentation")
        if self.rules:
            for r in self.rules:
                r.check(self.signature)
        if self.generators:
            for g in self.generators:
                if g.algebra.signature != self.signature:
                    raise InputError("generator matrix over a different signature")
        object.__setattr__(
            self,
            "_hash",
            hash((self.name, self.signature, self.rules, self.generators, self.variable_bound)),
        )

    def __hash__(self):
        return self._hash

    @property
    def has_rules(self) -> bool:
        return self.rules is not None

    @property
    def has_generators(self) -> bool:
        return self.generators is not None

    def rule_view(self) -> "Logic":
        if self.rules is None:
            raise PresentationError(f"{self.name} has no rule presentation")
        return Logic(self.name + "[rules]", self.signature, rules=self.rules)

    def matrix_view(self) -> "Logic":
        if self.generators is None:
            raise PresentationError(f"{self.name} has no matrix presentation")
        return Logic(
            self.name + "[matrices]",
            self.signature,
            generators=self.generators,
            variable_bound=self.variable_bound,
            delta=self.delta,
        )


def _variable_bound(L: Logic, alg: FiniteAlgebra) -> int:
    if L.variable_bound is not None:
        return L.variable_bound
    sizes = [alg.size]
    if L.generators:
        sizes.extend(g.algebra.size for g in L.generators)
    return max(sizes)


# ---------------------------------------------------------------------------
# consequence for matrix presentations


def consequence(L: Logic, premises: Iterable[Term], conclusion: Term) -> bool:
    """Semantic consequence over the generator matrices.

    Rule-presented logics have no consequence procedure here (derivability
    search is out of scope); they must carry a matrix presentation.
    """
    if not L.has_generators:
        raise PresentationError(
            f"consequence needs a matrix presentation; {L.name} has none"
        )
    premises = tuple(premises)
    for t in premises:
        check_term(L.signature, t)
    check_term(L.signature, conclusion)
    vs: set[int] = set(variables(conclusion))
    for t in premises:
        vs |= variables(t)
    var_list = sorted(vs)
    for gen in L.generators:
        alg, F = gen.algebra, gen.designated
        for values in itertools.product(range(alg.size), repeat=len(var_list)):
            env = dict(zip(var_list, values))
            if all(alg.evaluate(p, env) in F for p in premises):
                if alg.evaluate(conclusion, env) not in F:
                    return False
    return True


# ---------------------------------------------------------------------------
# filterhood

_FILTER_CACHE: dict = {}
_FILTERLIST_CACHE: dict = {}
_PAIR_CACHE: dict = {}
_SUBALG_CACHE: dict = {}
_SINGLE_CLOSURE_CACHE: dict = {}
_CANON_CLOSURE_CACHE: dict = {}
_THEOREM_CACHE: dict = {}
_FORCED_CACHE: dict = {}


def is_filter(L: Logic, m: Matrix, presentation: str = "auto") -> bool:
    """Is the designated set a deductive filter of L on the algebra?"""
    if m.algebra.signature != L.signature:
        raise InputError("matrix signature does not match the logic")
    if presentation == "auto":
        presentation = "rules" if L.has_rules else "generators"
    key = (L, m, presentation)
    if key not in _FILTER_CACHE:
        if presentation == "rules":
            if not L.has_rules:
                raise PresentationError(f"{L.name} has no rule presentation")
            _FILTER_CACHE[key] = _rule_is_filter(L.rules, m)
        elif presentation == "generators":
            if not L.has_generators:
                raise PresentationError(f"{L.name} has no matrix presentation")
            _FILTER_CACHE[key] = _matrix_is_filter(L, m)
        else:
            raise InputError(f"unknown presentation {presentation!r}")
    return _FILTER_CACHE[key]


def _rule_is_filter(rules: Sequence[Rule], m: Matrix) -> bool:
    alg, F = m.algebra, m.designated
    for rule in rules:
        vs = rule.variables()
        for values in itertools.product(range(alg.size), repeat=len(vs)):
            env = dict(zip(vs, values))
            if all(alg.evaluate(p, env) in F for p in rule.premises):
                if alg.evaluate(rule.conclusion, env) not in F:
                    return False
    return True


def _term_function_closure(algebras: Sequence[FiniteAlgebra], stop_ranges=None, cap: int = CLONE_CAP):
    """Close the tuple of unary term functions of the given algebras.

    Starts from the identity tuple and applies every symbol pointwise.
    With stop_ranges, returns ("found", tup) as soon as every coordinate
    function ranges inside its stop set (a joint theorem term exists).
    Returns ("all", closure) on fixpoint, ("capped", closure) if the cap
    was hit first.
    """
    sig = algebras[0].signature
    start = tuple(tuple(range(a.size)) for a in algebras)

    def good(tup) -> bool:
        return stop_ranges is not None and all(
            set(f) <= stop for f, stop in zip(tup, stop_ranges)
        )

    if good(start):
        return ("found", start)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        elems = tuple(seen)
        for name, arity in sig.symbols:
            if arity == 1:
                pool: Iterable = ((f,) for f in frontier)
            else:
                pool = (
                    combo
                    for combo in itertools.product(elems, repeat=arity)
                    if any(c in frontier for c in combo)
                )
            for combo in pool:
                tup = tuple(
                    tuple(
                        a.apply(name, [combo[j][i][x] for j in range(arity)])
                        for x in range(a.size)
                    )
                    for i, a in enumerate(algebras)
                )
                if tup in seen:
                    continue
                if good(tup):
                    return ("found", tup)
                seen.add(tup)
                nxt.append(tup)
                if len(seen) > cap:
                    return ("capped", seen)
        frontier = nxt
    return ("all", seen)


def has_theorems(L: Logic) -> bool:
    """Per the trivial-matrix law: the empty set fails to be a filter on
    the one-element algebra exactly when the logic has theorems."""
    if L not in _THEOREM_CACHE:
        if L.has_rules:
            # nothing is derivable from the empty set unless an axiom fires
            _THEOREM_CACHE[L] = any(not r.premises for r in L.rules)
        else:
            status, _ = _term_function_closure(
                [g.algebra for g in L.generators],
                stop_ranges=[set(g.designated) for g in L.generators],
            )
            if status == "capped":
                raise InputError(
                    "term-function closure exceeded cap while deciding theorems"
                )
            _THEOREM_CACHE[L] = status == "found"
    return _THEOREM_CACHE[L]


def _forced_value_maps(L: Logic, alg: FiniteAlgebra) -> tuple[tuple[int, ...], ...]:
    """Value maps on alg of joint theorem terms of the generators.

    Every theorem evaluates inside any deductive filter, so these ranges
    are forced.  Sound even when the closure is capped (anything found is
    a genuine term).
    """
    key = (L, alg)
    if key not in _FORCED_CACHE:
        status, closure = _term_function_closure([alg] + [g.algebra for g in L.generators])
        if status == "found":  # unreachable without stop_ranges
            closure = set()
        out = []
        stops = [set(g.designated) for g in L.generators]
        for tup in closure:
            if all(set(f) <= stop for f, stop in zip(tup[1:], stops)):
                out.append(tup[0])
        _FORCED_CACHE[key] = tuple(sorted(set(out)))
    return _FORCED_CACHE[key]


def _pair_ops(a: FiniteAlgebra, b: FiniteAlgebra):
    """Componentwise operation tables on pair codes p * b.size + q."""
    key = (a, b)
    if key not in _PAIR_CACHE:
        na, nb = a.size, b.size
        width = na * nb
        ops = []
        for (name, arity), ta, tb in zip(a.signature.symbols, a.tables, b.tables):
            flat = []
            for codes in itertools.product(range(width), repeat=arity):
                ia = 0
                ib = 0
                for c in codes:
                    p, q = divmod(c, nb)
                    ia = ia * na + p
                    ib = ib * nb + q
                flat.append(ta[ia] * nb + tb[ib])
            ops.append((arity, tuple(flat)))
        _PAIR_CACHE[key] = (ops, width)
    return _PAIR_CACHE[key]


def _close_codes(ops, width: int, base: frozenset | set, new: Iterable[int]):
    """Closure of base plus new under the coded operations."""
    cur = set(base)
    frontier = [c for c in new if c not in cur]
    cur.update(frontier)
    while frontier:
        fr = set(frontier)
        nxt = []
        elems = tuple(cur)
        for arity, table in ops:
            if arity == 1:
                for c in fr:
                    v = table[c]
                    if v not in cur:
                        cur.add(v)
                        nxt.append(v)
            elif arity == 2:
                for c in fr:
                    for d in elems:
                        v = table[c * width + d]
                        if v not in cur:
                            cur.add(v)
                            nxt.append(v)
                        v = table[d * width + c]
                        if v not in cur:
                            cur.add(v)
                            nxt.append(v)
            else:
                for combo in itertools.product(elems, repeat=arity):
                    if not any(x in fr for x in combo):
                        continue
                    idx = 0
                    for x in combo:
                        idx = idx * width + x
                    v = table[idx]
                    if v not in cur:
                        cur.add(v)
                        nxt.append(v)
        frontier = nxt
    return cur


def _single_closure(a: FiniteAlgebra, b: FiniteAlgebra, code: int) -> frozenset[int]:
    key = (a, b, code)
    if key not in _SINGLE_CLOSURE_CACHE:
        ops, width = _pair_ops(a, b)
        _SINGLE_CLOSURE_CACHE[key] = frozenset(_close_codes(ops, width, frozenset(), [code]))
    return _SINGLE_CLOSURE_CACHE[key]


def _canonical_closures(a: FiniteAlgebra, b: FiniteAlgebra, support: tuple[int, ...]):
    """Closures of the diagonal valuation and of each constant valuation."""
    key = (a, b, support)
    if key not in _CANON_CLOSURE_CACHE:
        ops, width = _pair_ops(a, b)
        out = []
        nb = b.size
        if all(x < nb for x in support):
            out.append(frozenset(_close_codes(ops, width, frozenset(), [x * nb + x for x in support])))
        for q in range(nb):
            out.append(frozenset(_close_codes(ops, width, frozenset(), [x * nb + q for x in support])))
        _CANON_CLOSURE_CACHE[key] = tuple(out)
    return _CANON_CLOSURE_CACHE[key]


def _subalgebra(alg: FiniteAlgebra, support: tuple[int, ...]) -> frozenset[int]:
    key = (alg, support)
    if key not in _SUBALG_CACHE:
        _SUBALG_CACHE[key] = generated_subalgebra(alg, support)
    return _SUBALG_CACHE[key]


def _matrix_is_filter(L: Logic, m: Matrix) -> bool:
    alg, F = m.algebra, m.designated
    n = alg.size
    if not F:
        return not has_theorems(L)
    if len(F) == n:
        return True
    for value_map in _forced_value_maps(L, alg):
        if any(v not in F for v in value_map):
            return False
    mbound = _variable_bound(L, alg)
    gens = [(g.algebra, g.designated) for g in L.generators]
    for size in range(1, min(n, mbound) + 1):
        for support in itertools.combinations(range(n), size):
            targets = _subalgebra(alg, support) - F
            if not targets:
                continue
            verdict = None
            if sum(galg.size**size for galg, _ in gens) <= EXACT_VALUATION_CAP:
                verdict = _support_exact_ok(alg, F, gens, support)
            if verdict is None:
                verdict = _support_pairwise_ok(alg, F, gens, support, targets)
            if not verdict:
                return False
    return True


def _compatible_valuations(alg, F, galg, G, support):
    """Generator valuations of the support whose reachable pairs never put
    an F-value against an undesignated one."""
    nb = galg.size
    bad = frozenset(a * nb + q for a in F for q in range(nb) if q not in G)
    out = []
    for w in itertools.product(range(nb), repeat=len(support)):
        codes = [x * nb + w[i] for i, x in enumerate(support)]
        if len(codes) == 1:
            closure = _single_closure(alg, galg, codes[0])
        else:
            ops, width = _pair_ops(alg, galg)
            closure = _close_codes(ops, width, frozenset(), codes)
        if not (closure & bad):
            out.append(w)
    return out


def _support_exact_ok(alg, F, gens, support):
    """Exact theory-closure check on the fragment of this support.

    Closes the joint traces (value on the target, value under every
    compatible generator valuation); a trace that is undesignated on the
    target while designated everywhere else is a consequence of the
    valuation's theory landing outside F.  Returns None when the closure
    exceeds its cap, signalling the caller to fall back.
    """
    columns = []  # one column per compatible (generator, valuation)
    for galg, G in gens:
        for w in _compatible_valuations(alg, F, galg, G, support):
            columns.append((galg, G, w))
    sig = alg.signature
    width = 1 + len(columns)
    start = []
    for i, x in enumerate(support):
        start.append((x,) + tuple(col[2][i] for col in columns))
    seen = set(start)
    frontier = list(seen)

    def violates(tr) -> bool:
        if tr[0] in F:
            return False
        return all(tr[j + 1] in columns[j][1] for j in range(len(columns)))

    for tr in seen:
        if violates(tr):
            return False
    algebras = [alg] + [col[0] for col in columns]
    while frontier:
        nxt = []
        elems = tuple(seen)
        for name, arity in sig.symbols:
            if arity == 1:
                pool: Iterable = ((t,) for t in frontier)
            else:
                pool = (
                    combo
                    for combo in itertools.product(elems, repeat=arity)
                    if any(c in frontier for c in combo)
                )
            for combo in pool:
                tr = tuple(
                    algebras[j].apply(name, [combo[i][j] for i in range(arity)])
                    for j in range(width)
                )
                if tr in seen:
                    continue
                if violates(tr):
                    return False
                seen.add(tr)
                nxt.append(tr)
                if len(seen) > EXACT_TRACE_CAP:
                    return None
        frontier = nxt
    return True


def _support_pairwise_ok(alg, F, gens, support, targets) -> bool:
    """Pairwise relaxation: every reachable non-designated value needs a
    compatible valuation reaching it against an undesignated value."""
    pending = set(targets)
    # cheap canonical valuations first: diagonal and constants
    for galg, G in gens:
        nb = galg.size
        bad = frozenset(a * nb + q for a in F for q in range(nb) if q not in G)
        for closure in _canonical_closures(alg, galg, support):
            if closure & bad:
                continue
            for code in closure:
                a, q = divmod(code, nb)
                if a in pending and q not in G:
                    pending.discard(a)
            if not pending:
                return True
    for galg, G in gens:
        if not pending:
            break
        _dfs_witnesses(alg, F, galg, G, support, pending)
    return not pending


def _dfs_witnesses(alg, F, galg, G, support, pending: set[int]) -> None:
    """Exhaust generator valuations of the support, shrinking pending at
    every compatible leaf."""
    ops, width = _pair_ops(alg, galg)
    nb = galg.size
    bad = frozenset(a * nb + q for a in F for q in range(nb) if q not in G)

    domains = []
    for x in support:
        dom = [
            q for q in range(nb) if not (_single_closure(alg, galg, x * nb + q) & bad)
        ]
        if not dom:
            return  # no compatible valuation exists for this generator
        # diagonal value first, it tends to be compatible
        dom.sort(key=lambda q: (q != x, q))
        domains.append(dom)

    order = sorted(range(len(support)), key=lambda i: len(domains[i]))

    def descend(level: int, closed: set[int]) -> bool:
        if not pending:
            return True
        if level == len(order):
            for code in closed:
                a, q = divmod(code, nb)
                if a in pending and q not in G:
                    pending.discard(a)
            return not pending
        i = order[level]
        x = support[i]
        for q in domains[i]:
            ext = _close_codes(ops, width, closed, [x * nb + q])
            if ext & bad:
                continue
            if descend(level + 1, ext):
                return True
        return False

    descend(0, set())


def generate_filter(L: Logic, alg: FiniteAlgebra, seed: Iterable[int]) -> frozenset[int]:
    """Least deductive filter containing the seed."""
    seed = frozenset(seed)
    if any(not 0 <= x < alg.size for x in seed):
        raise InputError("seed outside the universe")
    if L.has_rules:
        current = set(seed)
        changed = True
        while changed:
            changed = False
            for rule in L.rules:
                vs = rule.variables()
                for values in itertools.product(range(alg.size), repeat=len(vs)):
                    env = dict(zip(vs, values))
                    if all(alg.evaluate(p, env) in current for p in rule.premises):
                        v = alg.evaluate(rule.conclusion, env)
                        if v not in current:
                            current.add(v)
                            changed = True
        return frozenset(current)
    # matrix presentation: meet of all filters above the seed
    result = frozenset(range(alg.size))
    for G in filters_above(L, alg, seed):
        result &= G
        if result == seed:
            break
    return result


def filters_above(L: Logic, alg: FiniteAlgebra, seed: frozenset[int]) -> Iterator[frozenset[int]]:
    """All deductive filters containing seed, ascending by size."""
    if alg.size > UNIVERSE_CAP:
        raise InputError(f"universe larger than the enumeration cap {UNIVERSE_CAP}")
    rest = [x for x in range(alg.size) if x not in seed]
    candidates = []
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            candidates.append(seed | frozenset(extra))
    candidates.sort(key=lambda s: (len(s), sorted(s)))
    for cand in candidates:
        if is_filter(L, Matrix(alg, cand)):
            yield cand


def enumerate_filters(L: Logic, alg: FiniteAlgebra) -> list[frozenset[int]]:
    """All deductive filters on the algebra, ascending by size."""
    key = (L, alg)
    if key not in _FILTERLIST_CACHE:
        _FILTERLIST_CACHE[key] = list(filters_above(L, alg, frozenset()))
    return _FILTERLIST_CACHE[key]


def in_mod_eq(L: Logic, m: Matrix) -> bool:
    """Model with identity Suszko congruence (the canonical model class)."""
    if not is_filter(L, m):
        return False
    if leibniz_congruence(m).is_identity():
        return True  # the Suszko congruence refines the Leibniz one
    return suszko_congruence(L, m).is_identity()


# ---------------------------------------------------------------------------
# equivalential machinery


def check_equivalential(L: Logic, delta: CongruenceFormulaSet) -> bool:
    """Do the congruence-formula rules hold for L?

    Checks reflexivity, detachment, and the replacement rule for every
    connective, through the consequence relation of the generators.
    """
    for t in delta.terms:
        check_term(L.signature, t)
    x1, x2 = Var(1), Var(2)
    for t in delta.at(x1, x1):
        if not consequence(L, (), t):
            return False
    if not consequence(L, (x1,) + delta.at(x1, x2), x2):
        return False
    for name, arity in L.signature.symbols:
        premises: list[Term] = []
        for i in range(arity):
            premises.extend(delta.at(Var(2 * i + 1), Var(2 * i + 2)))
        lhs = App(name, tuple(Var(2 * i + 1) for i in range(arity)))
        rhs = App(name, tuple(Var(2 * i + 2) for i in range(arity)))
        for t in delta.at(lhs, rhs):
            if not consequence(L, premises, t):
                return False
    return True


def leibniz_via_delta(delta: CongruenceFormulaSet, m: Matrix) -> Partition:
    """Partition relating a, b iff every Delta-value at (a, b) is designated.

    Raises DeltaWitnessError when the relation fails to be a compatible
    congruence, which signals that Delta was not a valid witness for the
    matrix's logic.
    """
    alg, F = m.algebra, m.designated
    n = alg.size
    compiled = delta.terms
    rel = [[False] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            rel[a][b] = all(
                alg.evaluate(t, {1: a, 2: b}) in F for t in compiled
            )
    for a in range(n):
        if not rel[a][a]:
            raise DeltaWitnessError("relation is not reflexive")
        for b in range(n):
            if rel[a][b] != rel[b][a]:
                raise DeltaWitnessError("relation is not symmetric")
            for c in range(n):
                if rel[a][b] and rel[b][c] and not rel[a][c]:
                    raise DeltaWitnessError("relation is not transitive")
    raw = [-1] * n
    nxt = 0
    for a in range(n):
        if raw[a] == -1:
            raw[a] = nxt
            for b in range(a + 1, n):
                if rel[a][b]:
                    raw[b] = nxt
            nxt += 1
    p = Partition.from_raw(raw)
    if not is_congruence(alg, p):
        raise DeltaWitnessError("relation is not a congruence")
    for a in range(n):
        for b in range(n):
            if p.relates(a, b) and (a in F) != (b in F):
                raise DeltaWitnessError("relation is not compatible with F")
    return p


def transfer_delta(tr: Translation, delta: CongruenceFormulaSet) -> CongruenceFormulaSet:
    """Image of a congruence-formula set under a translation."""
    return CongruenceFormulaSet(tuple(translate_term(tr, t) for t in delta.terms))


# ---------------------------------------------------------------------------
# built-in presentations


def inconsistent_logic(sig: Signature, name: str = "inconsistent") -> Logic:
    """Everything follows from anything; induced by the designated point."""
    return Logic(
        name,
        sig,
        rules=(Rule((), Var(1)),),
        generators=(trivial_matrix(sig, designated=True),),
    )


def almost_inconsistent_logic(sig: Signature, name: str = "almost-inconsistent") -> Logic:
    """No theorems, but any non-empty set entails everything."""
    return Logic(
        name,
        sig,
        rules=(Rule((Var(1),), Var(2)),),
        generators=(
            trivial_matrix(sig, designated=True),
            trivial_matrix(sig, designated=False),
        ),
    )


def clear_caches() -> None:
    for cache in (
        _FILTER_CACHE,
        _FILTERLIST_CACHE,
        _PAIR_CACHE,
        _SUBALG_CACHE,
        _SINGLE_CLOSURE_CACHE,
        _CANON_CLOSURE_CACHE,
        _THEOREM_CACHE,
        _FORCED_CACHE,
    ):
        cache.clear()
