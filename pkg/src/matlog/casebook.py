"""Built-in worked objects and one verifier per checkable fact about them.

The central object is a seven-element join semilattice expanded with
constants a, b, 0 (constants are unary constant operations throughout).
Its diagram leaves the order between e and 0 undrawn, so two join tables
are possible: one with 0 below e, one with e and 0 incomparable.  Both
reproduce the documented Leibniz blocks ("join-table-choice" verifies
this), but only the incomparable table keeps e out of the range of every
unary term containing one of the constants a, b, 0, which the bounded
composition fact below relies on.  The incomparable table is therefore
the canonical one; see docs/casebook.md.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .algebra import FiniteAlgebra, Matrix, generated_subalgebra, reduct_by_translation
from .congruence import (
    Partition,
    is_congruence,
    leibniz_congruence,
    reduce_matrix,
    suszko_congruence,
)
from .logic import (
    CongruenceFormulaSet,
    Logic,
    check_equivalential,
    enumerate_filters,
    in_mod_eq,
    is_filter,
    leibniz_via_delta,
)
from .terms import App, InputError, Rule, Signature, Term, Translation, Var

ELEMENTS = ("0", "a", "e", "d", "c", "b", "1")
E0, EA, EE, ED, EC, EB, E1 = range(7)

# Hasse covers of the semilattice order; the pair (E0, EE) is deliberately
# absent from the canonical table (see module docstring).
_COVERS = ((E0, EA), (E0, ED), (EA, EC), (EE, EC), (ED, EC), (ED, EB), (EC, E1), (EB, E1))

SL_SIG = Signature((("join", 2), ("ca", 1), ("cb", 1), ("c0", 1)))
NEG_SIG = Signature((("neg", 1),))


def _order_from_covers(n: int, covers) -> list[set[int]]:
    up = [set((x,)) for x in range(n)]
    changed = True
    while changed:
        changed = False
        for lo, hi in covers:
            new = up[hi] - up[lo]
            if new:
                up[lo] |= new
                changed = True
    return up


def join_table_from_covers(n: int, covers) -> tuple[int, ...]:
    """Least-upper-bound table of the poset given by Hasse covers."""
    up = _order_from_covers(n, covers)
    flat = []
    for x in range(n):
        for y in range(n):
            ubs = up[x] & up[y]
            least = [u for u in ubs if ubs <= up[u]]
            if len(least) != 1:
                raise InputError(f"no unique least upper bound for {x}, {y}")
            flat.append(least[0])
    return tuple(flat)


def _semilattice_algebra(covers) -> FiniteAlgebra:
    join = join_table_from_covers(7, covers)
    tables = (join, (EA,) * 7, (EB,) * 7, (E0,) * 7)
    return FiniteAlgebra(SL_SIG, 7, tables, ELEMENTS)


def build_A() -> FiniteAlgebra:
    """The seven-element join semilattice with constants a, b, 0."""
    return _semilattice_algebra(_COVERS)


def build_A_zero_below_e() -> FiniteAlgebra:
    """The rejected disambiguation candidate, with the extra cover 0 < e."""
    return _semilattice_algebra(_COVERS + ((E0, EE),))


NEG_TABLE = (ED, EC, EE, E0, EA, E1, EB)  # 0<->d, a<->c, 1<->b, e fixed


def build_A_alpha_kappa(alpha: int, kappa: int) -> FiniteAlgebra:
    """Expansion with all constants, negation, and kappa implications.

    p imp_beta q is 1 whenever p = q or beta != alpha, and 0 otherwise,
    so imp_alpha is the equality indicator and the others are constant 1.
    """
    if not 0 <= alpha < kappa:
        raise InputError("alpha must satisfy 0 <= alpha < kappa")
    if kappa > 8:
        raise InputError("kappa is capped at 8")
    base = build_A()
    symbols = list(SL_SIG.symbols)
    tables = list(base.tables)
    symbols.append(("neg", 1))
    tables.append(NEG_TABLE)
    for v, name in enumerate(ELEMENTS):
        sym = f"k{name}"
        symbols.append((sym, 1))
        tables.append((v,) * 7)
    for beta in range(kappa):
        symbols.append((f"imp{beta}", 2))
        flat = []
        for p in range(7):
            for q in range(7):
                flat.append(E1 if (p == q or beta != alpha) else E0)
        tables.append(tuple(flat))
    return FiniteAlgebra(Signature(tuple(symbols)), 7, tuple(tables), ELEMENTS)


def kappa_signature(kappa: int) -> Signature:
    return build_A_alpha_kappa(0, kappa).signature


def build_two_element_negation_algebra() -> FiniteAlgebra:
    return FiniteAlgebra(NEG_SIG, 2, ((1, 0),), ("0", "1"))


def matrix_A_1() -> Matrix:
    return Matrix(build_A(), frozenset((E1,)))


def matrix_A_c1() -> Matrix:
    return Matrix(build_A(), frozenset((EC, E1)))


def or_logic() -> Logic:
    """The semilattice logic induced by designating 1, or c and 1."""
    return Logic("or", SL_SIG, generators=(matrix_A_1(), matrix_A_c1()))


def neg_logic() -> Logic:
    """Negation fragment of classical logic: rules and the two-element
    matrix presentation together."""
    x1, x2 = Var(1), Var(2)
    rules = (
        Rule((x1, App("neg", (x1,))), x2),
        Rule((x1,), App("neg", (App("neg", (x1,)),))),
        Rule((App("neg", (App("neg", (x1,)),)),), x1),
    )
    two = Matrix(build_two_element_negation_algebra(), frozenset((1,)))
    return Logic("neg", NEG_SIG, rules=rules, generators=(two,))


def kappa_logic(kappa: int) -> Logic:
    """Induced by designating 1 in every alpha-expansion, alpha < kappa."""
    gens = tuple(
        Matrix(build_A_alpha_kappa(alpha, kappa), frozenset((E1,)))
        for alpha in range(kappa)
    )
    delta = CongruenceFormulaSet(
        tuple(App(f"imp{beta}", (Var(1), Var(2))) for beta in range(kappa))
    )
    return Logic(f"kappa{kappa}", kappa_signature(kappa), generators=gens, delta=delta)


def build_logics() -> dict[str, Logic]:
    return {"or": or_logic(), "neg": neg_logic(), "kappa3": kappa_logic(3)}


# golden partition data
LEIBNIZ_BLOCKS_A_1 = (("a", "e", "c"), ("0", "d"), ("b",), ("1",))
LEIBNIZ_BLOCKS_A_C1 = (("0",), ("a",), ("e",), ("b", "d"), ("c", "1"))
LEIBNIZ_BLOCKS_REDUCT = (("0", "d"), ("a", "c", "e"), ("b",), ("1",))


def _blocks_by_name(names: Sequence[str], blocks) -> tuple[tuple[int, ...], ...]:
    idx = {s: i for i, s in enumerate(names)}
    return tuple(sorted(tuple(sorted(idx[x] for x in b)) for b in blocks))


def golden_partition(blocks) -> Partition:
    return Partition.from_blocks(7, _blocks_by_name(ELEMENTS, blocks))


def is_negation_algebra(alg: FiniteAlgebra) -> bool:
    """One unary operation that is an involution with at most one fixed point."""
    if alg.signature != NEG_SIG:
        return False
    t = alg.table("neg")
    if any(t[t[x]] != x for x in range(alg.size)):
        return False
    return sum(1 for x in range(alg.size) if t[x] == x) <= 1


def neg_mod_eq_characterization(m: Matrix) -> bool:
    """The documented shape of the canonical models of the negation logic:
    trivial algebra, or negation algebra with F empty or a non-fixed-point
    singleton."""
    if m.algebra.size == 1:
        return True
    if not is_negation_algebra(m.algebra):
        return False
    F = m.designated
    if not F:
        return True
    if len(F) != 1:
        return False
    (a,) = F
    return m.algebra.table("neg")[a] != a


@dataclass(frozen=True)
class Report:
    entry: str
    passed: bool
    details: str

    def to_json(self) -> dict:
        return {"entry": self.entry, "passed": self.passed, "details": self.details}


def _verify_two_matrices() -> Report:
    m1, m2 = matrix_A_1(), matrix_A_c1()
    got1 = leibniz_congruence(m1)
    got2 = leibniz_congruence(m2)
    ok1 = got1 == golden_partition(LEIBNIZ_BLOCKS_A_1)
    ok2 = got2 == golden_partition(LEIBNIZ_BLOCKS_A_C1)
    L = or_logic()
    suszko = suszko_congruence(L, m1)
    ok3 = suszko.is_identity()
    ok4 = in_mod_eq(L, m1)
    details = (
        f"leibniz(A,{{1}})={got1.render(m1.algebra)} match={ok1}; "
        f"leibniz(A,{{c,1}})={got2.render(m2.algebra)} match={ok2}; "
        f"suszko identity={ok3}; in canonical model class={ok4}"
    )
    return Report("fact-two-matrices", ok1 and ok2 and ok3 and ok4, details)


def _verify_join_table_choice() -> Report:
    outcomes = []
    for label, alg in (("incomparable", build_A()), ("zero-below-e", build_A_zero_below_e())):
        m1 = Matrix(alg, frozenset((E1,)))
        m2 = Matrix(alg, frozenset((EC, E1)))
        match = (
            leibniz_congruence(m1) == golden_partition(LEIBNIZ_BLOCKS_A_1)
            and leibniz_congruence(m2) == golden_partition(LEIBNIZ_BLOCKS_A_C1)
        )
        # tiebreak: x join 0 must keep e outside its range
        xj0 = [alg.apply("join", (x, E0)) for x in range(7)]
        outcomes.append((label, match, EE not in xj0))
    both_match = all(o[1] for o in outcomes)
    chosen_ok = outcomes[0][1] and outcomes[0][2] and not outcomes[1][2]
    details = "; ".join(
        f"{label}: blocks-match={m}, e-avoidance={t}" for label, m, t in outcomes
    )
    return Report("join-table-choice", both_match and chosen_ok, details)


def _semilattice_tables(n: int):
    """All commutative, associative, idempotent binary tables on n elements."""
    cells = [(x, y) for x in range(n) for y in range(n) if x < y]
    for values in itertools.product(range(n), repeat=len(cells)):
        flat = [[0] * n for _ in range(n)]
        for x in range(n):
            flat[x][x] = x
        for (x, y), v in zip(cells, values):
            flat[x][y] = v
            flat[y][x] = v
        ok = True
        for x in range(n):
            for y in range(n):
                if not ok:
                    break
                for z in range(n):
                    if flat[flat[x][y]][z] != flat[x][flat[y][z]]:
                        ok = False
                        break
        if ok:
            yield tuple(v for row in flat for v in row)


def _verify_four_small() -> Report:
    """No matrix over the semilattice-with-constants signature of size two
    or three lies in the canonical model class of the join logic."""
    L = or_logic()
    checked = 0
    offenders = []
    for n in (2, 3):
        for join in _semilattice_tables(n):
            for consts in itertools.product(range(n), repeat=3):
                tables = (join,) + tuple((v,) * n for v in consts)
                alg = FiniteAlgebra(SL_SIG, n, tables)
                for r in range(n + 1):
                    for combo in itertools.combinations(range(n), r):
                        m = Matrix(alg, frozenset(combo))
                        checked += 1
                        if in_mod_eq(L, m):
                            offenders.append(m)
    details = f"checked {checked} matrices of size 2-3; offenders={len(offenders)}"
    return Report("fact-four-small", not offenders, details)


def _verify_neg_fragment(max_size: int = 4) -> Report:
    L = neg_logic()
    checked = 0
    mismatches = 0
    for n in range(1, max_size + 1):
        for table in itertools.product(range(n), repeat=n):
            alg = FiniteAlgebra(NEG_SIG, n, (table,))
            for r in range(n + 1):
                for combo in itertools.combinations(range(n), r):
                    m = Matrix(alg, frozenset(combo))
                    checked += 1
                    if in_mod_eq(L, m) != neg_mod_eq_characterization(m):
                        mismatches += 1
    details = f"checked {checked} matrices up to size {max_size}; mismatches={mismatches}"
    return Report("neg-fragment-class", mismatches == 0, details)


def _verify_neg_cross_presentation(max_size: int = 4) -> Report:
    L = neg_logic()
    rules_view = L.rule_view()
    matrix_view = L.matrix_view()
    checked = 0
    mismatches = 0
    for n in range(1, max_size + 1):
        for table in itertools.product(range(n), repeat=n):
            alg = FiniteAlgebra(NEG_SIG, n, (table,))
            for r in range(n + 1):
                for combo in itertools.combinations(range(n), r):
                    m = Matrix(alg, frozenset(combo))
                    checked += 1
                    if is_filter(rules_view, m) != is_filter(matrix_view, m):
                        mismatches += 1
    details = f"checked {checked} matrices up to size {max_size}; mismatches={mismatches}"
    return Report("neg-cross-presentation", mismatches == 0, details)


def _verify_no_constants(max_depth: int = 6) -> Report:
    """Every unary term over join, neg, e of depth <= max_depth that
    mentions the constant e evaluates at 0 into {e, a, c}.

    The exhaustive term set is folded into its exact image: a state is a
    (value at x=0, mentions-e) pair, and each depth level applies every
    operation to every state combination, so the reachable states at depth
    d are exactly the (value, flag) pairs realized by depth <= d terms.
    """
    alg = build_A_alpha_kappa(0, 3)
    join = alg.table("join")
    neg = alg.table("neg")
    states = {(E0, False)}
    for _ in range(max_depth):
        new = set(states)
        for (v, f) in states:
            new.add((neg[v], f))
            new.add((EE, True))  # the constant-e term
        for (v1, f1) in states:
            for (v2, f2) in states:
                new.add((join[v1 * 7 + v2], f1 or f2))
        states = new
    bad = sorted(v for (v, f) in states if f and v not in {EE, EA, EC})
    details = (
        f"depth {max_depth}: e-containing values at x=0 are "
        f"{sorted(ELEMENTS[v] for (v, f) in states if f)}; outside {{e,a,c}}: {bad}"
    )
    return Report("no-constants-bounded", not bad, details)


def _verify_term_equivalence(kappa: int = 3) -> Report:
    ok = True
    details = []
    for alpha in range(kappa):
        alg = build_A_alpha_kappa(alpha, kappa)
        for beta in range(kappa):
            table = alg.table(f"imp{beta}")
            if beta != alpha:
                if set(table) != {E1}:
                    ok = False
                    details.append(f"imp{beta} not constant 1 in expansion {alpha}")
            else:
                expected = tuple(
                    E1 if p == q else E0 for p in range(7) for q in range(7)
                )
                if table != expected:
                    ok = False
                    details.append(f"imp{alpha} not the equality indicator")
    msg = "; ".join(details) if details else (
        f"for kappa={kappa}: off-index implications are constant 1, "
        "the matching one is the equality indicator"
    )
    return Report("term-equivalence", ok, msg)


def _verify_algebraizable(kappa: int = 3) -> Report:
    L = kappa_logic(kappa)
    ok1 = check_equivalential(L, L.delta)
    ok2 = True
    for gen in L.generators:
        if leibniz_via_delta(L.delta, gen) != leibniz_congruence(gen):
            ok2 = False
    details = f"rules hold={ok1}; delta computes the Leibniz congruence on all generators={ok2}"
    return Report("fact-algebraizable", ok1 and ok2, details)


def sample_translation_avoiding_imp(alpha: int = 0, kappa: int = 3) -> Translation:
    """A toy source signature interpreted by terms over the expansion that
    avoid imp_alpha; stands in for the hypothetical interpretation in the
    parametric congruence-block check."""
    src = Signature((("f", 1), ("g", 2)))
    tgt = kappa_signature(kappa)
    images = (
        App("neg", (App("join", (Var(1), App("ke", (Var(1),)))),)),
        App("join", (App("neg", (Var(1),)), Var(2))),
    )
    return Translation(src, tgt, images)


def check_reduct_congruence_blocks(tr: Translation, alpha: int = 0, kappa: int = 3) -> bool:
    """Given any translation avoiding imp_alpha, the documented four-block
    partition is a congruence of the reduct."""
    banned = f"imp{alpha}"
    for img in tr.images:
        from .terms import term_symbols

        if banned in term_symbols(img):
            raise InputError(f"translation must avoid {banned}")
    alg = build_A_alpha_kappa(alpha, kappa)
    red = reduct_by_translation(tr, alg)
    return is_congruence(red, golden_partition(LEIBNIZ_BLOCKS_REDUCT))


def _verify_leibniz_blocks_reduct() -> Report:
    tr = sample_translation_avoiding_imp()
    ok = check_reduct_congruence_blocks(tr)
    details = (
        "four-block partition {0,d},{a,c,e},{b},{1} is a congruence of the "
        f"sample reduct: {ok} (parametric: any imp0-avoiding translation works)"
    )
    return Report("leibniz-blocks-reduct", ok, details)


ENTRIES: dict[str, Callable[[], Report]] = {
    "fact-two-matrices": _verify_two_matrices,
    "join-table-choice": _verify_join_table_choice,
    "fact-four-small": _verify_four_small,
    "neg-fragment-class": _verify_neg_fragment,
    "neg-cross-presentation": _verify_neg_cross_presentation,
    "no-constants-bounded": _verify_no_constants,
    "term-equivalence": _verify_term_equivalence,
    "fact-algebraizable": _verify_algebraizable,
    "leibniz-blocks-reduct": _verify_leibniz_blocks_reduct,
}


def verify(entry_id: str) -> Report:
    if entry_id not in ENTRIES:
        raise InputError(f"unknown casebook entry {entry_id!r}")
    return ENTRIES[entry_id]()


def verify_all() -> list[Report]:
    return [ENTRIES[k]() for k in ENTRIES]


def casebook_bundle():
    """The built-in objects as a DSL bundle (the shipped file's content)."""
    from .dsl import WorkspaceBundle
    from .terms import identity_translation

    b = WorkspaceBundle()
    k3sig = kappa_signature(3)
    b.signatures["SL"] = SL_SIG
    b.signatures["NA"] = NEG_SIG
    b.signatures["K3"] = k3sig

    def add_algebra(name, alg, signame):
        # DSL universes are bare 0..n-1, so strip display names
        b.algebras[name] = FiniteAlgebra(alg.signature, alg.size, alg.tables)
        b.algebra_signature_names[name] = signame

    add_algebra("A", build_A(), "SL")
    add_algebra("neg2", build_two_element_negation_algebra(), "NA")
    for alpha in range(3):
        add_algebra(f"A{alpha}k3", build_A_alpha_kappa(alpha, 3), "K3")

    def add_matrix(name, algname, designated):
        b.matrices[name] = Matrix(b.algebras[algname], frozenset(designated))
        b.matrix_algebra_names[name] = algname

    add_matrix("A1", "A", (E1,))
    add_matrix("Ac1", "A", (EC, E1))
    add_matrix("neg2t", "neg2", (1,))
    for alpha in range(3):
        add_matrix(f"K{alpha}", f"A{alpha}k3", (E1,))

    orL = Logic("or_logic", SL_SIG, generators=(b.matrices["A1"], b.matrices["Ac1"]))
    b.logics["or_logic"] = orL
    b.logic_defs["or_logic"] = ("matrices", ("A1", "Ac1"))
    negr = neg_logic()
    b.logics["neg_rules"] = Logic("neg_rules", NEG_SIG, rules=negr.rules)
    b.logic_defs["neg_rules"] = ("rules", "NA")
    b.logics["neg_matrix"] = Logic(
        "neg_matrix", NEG_SIG, generators=(b.matrices["neg2t"],)
    )
    b.logic_defs["neg_matrix"] = ("matrices", ("neg2t",))
    b.logics["kappa3"] = Logic(
        "kappa3", k3sig, generators=tuple(b.matrices[f"K{a}"] for a in range(3))
    )
    b.logic_defs["kappa3"] = ("matrices", tuple(f"K{a}" for a in range(3)))

    b.translations["or_to_kappa3"] = identity_translation(SL_SIG, k3sig)
    b.translation_signature_names["or_to_kappa3"] = ("SL", "K3")
    return b
