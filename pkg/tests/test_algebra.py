import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matlog import casebook as cb
from matlog.algebra import (
    FiniteAlgebra,
    Matrix,
    algebra_to_json,
    all_subuniverses,
    are_isomorphic,
    direct_product,
    enumerate_homomorphisms,
    find_isomorphism,
    generated_subalgebra,
    matrix_power_oracle,
    matrix_to_json,
    reduct_by_translation,
    submatrix,
    trivial_matrix,
)
from matlog.congruence import leibniz_congruence, quotient_matrix
from matlog.terms import App, InputError, Signature, Translation, Var

from conftest import random_matrix

GOLDEN = Path(__file__).resolve().parent / "data" / "matrix_A_1.json"


def test_evaluate_join_is_least_upper_bound():
    A = cb.build_A()
    t = App("join", (Var(1), Var(2)))
    assert A.evaluate(t, {1: cb.EA, 2: cb.EE}) == cb.EC
    assert A.evaluate(t, {1: cb.EA, 2: cb.EB}) == cb.E1
    # e and 0 are incomparable, their join is c
    assert A.evaluate(t, {1: cb.E0, 2: cb.EE}) == cb.EC


def test_evaluate_variable_and_missing_binding():
    A = cb.build_A()
    assert A.evaluate(Var(1), {1: cb.ED}) == cb.ED
    with pytest.raises(InputError):
        A.evaluate(Var(2), {1: cb.ED})


def test_evaluate_expansion_implication():
    alg = cb.build_A_alpha_kappa(0, 3)
    t = App("imp1", (Var(1), Var(2)))
    # beta = 1 differs from alpha = 0, so the value is 1 regardless
    assert alg.evaluate(t, {1: cb.E0, 2: cb.EA}) == cb.E1
    t0 = App("imp0", (Var(1), Var(2)))
    assert alg.evaluate(t0, {1: cb.E0, 2: cb.EA}) == cb.E0
    assert alg.evaluate(t0, {1: cb.EE, 2: cb.EE}) == cb.E1


def test_reduct_identity_translation_keeps_tables():
    A = cb.build_A()
    from matlog.terms import identity_translation

    red = reduct_by_translation(identity_translation(cb.SL_SIG), A)
    assert red.tables == A.tables


def test_reduct_double_negation_is_identity():
    two = cb.build_two_element_negation_algebra()
    src = Signature((("star", 1),))
    tr = Translation(src, cb.NEG_SIG, (App("neg", (App("neg", (Var(1),)),)),))
    red = reduct_by_translation(tr, two)
    assert red.table("star") == (0, 1)


def test_reduct_projection_recovers_factor():
    """The projection translation (each product symbol to its j-th
    component) turns the factor into an algebra whose tables match the
    product's tables read off at the j-th coordinate."""
    import itertools

    from matlog import constructions as cons

    two = cb.build_two_element_negation_algebra()
    m1 = Matrix(two, frozenset((1,)))
    snap = cons.default_snapshot([cb.NEG_SIG, cb.NEG_SIG])
    prod = cons.non_indexed_product([m1, m1], snap)
    for j in (0, 1):
        tr = Translation(
            prod.algebra.signature, cb.NEG_SIG, tuple(s.components[j] for s in snap)
        )
        red = reduct_by_translation(tr, two)
        enc, dec = cons.product_codec([2, 2])
        for sym in snap:
            for args in itertools.product(range(4), repeat=sym.arity):
                via_product = dec(prod.algebra.apply(sym.name, args))[j]
                via_reduct = red.apply(sym.name, tuple(dec(a)[j] for a in args))
                assert via_product == via_reduct


def test_homomorphisms_two_element_negation():
    two = cb.build_two_element_negation_algebra()
    homs = list(enumerate_homomorphisms(two, two))
    assert homs == [(0, 1), (1, 0)]


def test_homomorphisms_to_trivial_algebra():
    A = cb.build_A()
    one = trivial_matrix(cb.SL_SIG).algebra
    homs = list(enumerate_homomorphisms(A, one))
    assert homs == [(0,) * 7]


def test_homomorphisms_from_trivial_lands_on_idempotents():
    two = cb.build_two_element_negation_algebra()
    one = trivial_matrix(cb.NEG_SIG).algebra
    # no element of the two-element negation algebra is a fixed point
    assert list(enumerate_homomorphisms(one, two)) == []


def test_homomorphism_matrix_mode():
    two = cb.build_two_element_negation_algebra()
    homs = list(
        enumerate_homomorphisms(two, two, matrix_mode=(frozenset((1,)), frozenset((1,))))
    )
    assert homs == [(0, 1)]


def test_generated_subalgebra_examples():
    A = cb.build_A()
    assert generated_subalgebra(A, range(7)) == frozenset(range(7))
    closure = generated_subalgebra(A, {cb.EA, cb.EB})
    assert cb.E1 in closure  # a join b = 1
    assert closure == frozenset({cb.E0, cb.EA, cb.EB, cb.E1})
    assert generated_subalgebra(A, ()) == frozenset()


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_generated_subalgebra_is_a_closure_operator(data):
    import random

    rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
    m = random_matrix(rng, max_size=5)
    alg = m.algebra
    seed = frozenset(
        x for x in range(alg.size) if data.draw(st.booleans())
    )
    bigger = seed | frozenset(
        x for x in range(alg.size) if data.draw(st.booleans())
    )
    c1 = generated_subalgebra(alg, seed)
    assert seed <= c1
    assert c1 <= generated_subalgebra(alg, bigger)
    assert generated_subalgebra(alg, c1) == c1


def test_direct_product_empty_is_trivial():
    m = direct_product([], signature=cb.SL_SIG)
    assert m.algebra.size == 1
    assert m.designated == frozenset((0,))


def test_direct_product_componentwise():
    two = Matrix(cb.build_two_element_negation_algebra(), frozenset((1,)))
    prod = direct_product([two, two])
    assert prod.algebra.size == 4
    assert prod.designated == frozenset((3,))  # (1, 1)
    # neg acts componentwise: (0,1) -> (1,0)
    assert prod.algebra.apply("neg", (1,)) == 2


def test_quotient_by_identity_is_isomorphic():
    m = cb.matrix_A_1()
    from matlog.congruence import Partition

    q = quotient_matrix(m, Partition.identity(7))
    assert are_isomorphic(q, m)


def test_quotient_by_leibniz_gives_reduced_four_element_matrix():
    m = cb.matrix_A_1()
    q = quotient_matrix(m, leibniz_congruence(m))
    assert q.algebra.size == 4
    assert leibniz_congruence(q).is_identity()


def test_submatrix_requires_closed_subset():
    A = cb.build_A()
    m = cb.matrix_A_1()
    with pytest.raises(InputError):
        submatrix(m, {cb.EA, cb.EB})  # a join b = 1 escapes
    sub = submatrix(m, {cb.E0, cb.EA, cb.EB, cb.E1})
    assert sub.algebra.size == 4
    assert sub.designated == frozenset((3,))


def test_all_subuniverses_of_expansion_is_whole():
    alg = cb.build_A_alpha_kappa(0, 3)
    # every element is a constant, so the only subuniverse is everything
    assert all_subuniverses(alg) == [frozenset(range(7))]


def test_find_isomorphism_respects_designation():
    two = cb.build_two_element_negation_algebra()
    m1 = Matrix(two, frozenset((1,)))
    m2 = Matrix(two, frozenset((0,)))
    iso = find_isomorphism(m1, m2)
    assert iso == (1, 0)
    assert find_isomorphism(m1, Matrix(two, frozenset((0, 1)))) is None


def test_matrix_power_identity_descriptor():
    two = cb.build_two_element_negation_algebra()
    oracle = matrix_power_oracle(two, 1)
    for v in range(2):
        assert oracle.eval_descriptor((Var(1),), [(v,)]) == (v,)


def test_matrix_power_projection_descriptor():
    two = cb.build_two_element_negation_algebra()
    oracle = matrix_power_oracle(two, 2)
    desc = (Var(3), Var(4))  # second argument of a binary power operation
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    assert oracle.eval_descriptor(desc, [(a, b), (c, d)]) == (c, d)


def test_matrix_power_componentwise_negation():
    two = cb.build_two_element_negation_algebra()
    oracle = matrix_power_oracle(two, 2)
    desc = (App("neg", (Var(1),)), Var(2))
    for p in range(2):
        for q in range(2):
            assert oracle.eval_descriptor(desc, [(p, q)]) == (1 - p, q)


def test_matrix_power_projections_at_all_coordinates():
    for alg in (cb.build_two_element_negation_algebra(), cb.build_A()):
        if alg.size > 4:
            continue
        for n in (2, 3):
            oracle = matrix_power_oracle(alg, n)
            for coord in range(n):
                desc = tuple(Var(coord + 1) for _ in range(n))
                mat = oracle.materialize([("pr", 1, desc)])
                for x in range(oracle.size):
                    tup = oracle.decode(x)
                    assert oracle.decode(mat.apply("pr", (x,))) == (tup[coord],) * n


def test_matrix_power_descriptor_arity_errors():
    two = cb.build_two_element_negation_algebra()
    oracle = matrix_power_oracle(two, 2)
    with pytest.raises(InputError):
        oracle.eval_descriptor((Var(1),), [(0, 0)])  # one term for two coordinates
    with pytest.raises(InputError):
        oracle.eval_descriptor((Var(5), Var(1)), [(0, 0)])


def test_matrix_json_golden_file():
    payload = json.dumps(
        matrix_to_json(cb.matrix_A_1()), sort_keys=True, separators=(",", ":")
    )
    assert payload == GOLDEN.read_text().strip()


def test_algebra_json_shape():
    out = algebra_to_json(cb.build_two_element_negation_algebra())
    assert out["size"] == 2
    assert out["tables"]["neg"] == [1, 0]
    assert out["signature"] == [["neg", 1]]
