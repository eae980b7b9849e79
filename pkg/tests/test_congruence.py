import itertools
import random

import pytest

from matlog import casebook as cb
from matlog.algebra import FiniteAlgebra, Matrix
from matlog.congruence import (
    FilterError,
    Partition,
    is_congruence,
    leibniz_congruence,
    leibniz_via_polynomials,
    quotient_matrix,
    reduce_matrix,
    suszko_congruence,
    unary_polynomials,
)
from matlog.logic import enumerate_filters
from matlog.algebra import are_isomorphic
from matlog.terms import InputError, Signature

from conftest import random_matrix


def set_partitions(n):
    """All partitions of {0..n-1} (Bell(n) of them)."""
    if n == 0:
        yield []
        return
    for smaller in set_partitions(n - 1):
        for i, block in enumerate(smaller):
            yield smaller[:i] + [block + [n - 1]] + smaller[i + 1 :]
        yield smaller + [[n - 1]]


def brute_force_leibniz(m):
    """Maximum compatible congruence over every partition of the universe."""
    n = m.algebra.size
    best = None
    for blocks in set_partitions(n):
        p = Partition.from_blocks(n, blocks)
        compatible = all(
            not (p.relates(a, b) and (a in m.designated) != (b in m.designated))
            for a in range(n)
            for b in range(n)
        )
        if not compatible or not is_congruence(m.algebra, p):
            continue
        if best is None or best.finer_or_equal(p):
            best = p
    return best


def test_partition_canonical_forms():
    p = Partition.from_blocks(4, [[2, 0], [1], [3]])
    assert p.blocks() == ((0, 2), (1,), (3,))
    assert p.to_json() == [[0, 2], [1], [3]]
    assert Partition.identity(3).is_identity()
    assert Partition.single_block(3).block_count == 1
    q = Partition.from_blocks(4, [[0, 1], [2, 3]])
    assert p.meet(q).blocks() == ((0,), (1,), (2,), (3,))
    assert Partition.identity(4).finer_or_equal(p)
    assert not p.finer_or_equal(Partition.identity(4))


def test_partition_from_blocks_validates():
    with pytest.raises(InputError):
        Partition.from_blocks(3, [[0, 1]])
    with pytest.raises(InputError):
        Partition.from_blocks(3, [[0, 1], [1, 2]])


def test_is_congruence_trivial_cases():
    A = cb.build_A()
    assert is_congruence(A, Partition.identity(7))
    assert is_congruence(A, Partition.single_block(7))


def test_is_congruence_paper_blocks():
    A = cb.build_A()
    assert is_congruence(A, cb.golden_partition(cb.LEIBNIZ_BLOCKS_A_1))


def test_leibniz_golden_blocks():
    assert leibniz_congruence(cb.matrix_A_1()) == cb.golden_partition(
        cb.LEIBNIZ_BLOCKS_A_1
    )
    assert leibniz_congruence(cb.matrix_A_c1()) == cb.golden_partition(
        cb.LEIBNIZ_BLOCKS_A_C1
    )


def test_leibniz_total_designation_gives_single_block():
    A = cb.build_A()
    assert leibniz_congruence(Matrix(A, frozenset(range(7)))) == Partition.single_block(7)
    assert leibniz_congruence(Matrix(A, frozenset())) == Partition.single_block(7)


def test_leibniz_compatibility_property(rng):
    for _ in range(80):
        m = random_matrix(rng, max_size=6)
        p = leibniz_congruence(m)
        F = m.designated
        if F and len(F) < m.algebra.size:
            for a in range(m.algebra.size):
                for b in range(m.algebra.size):
                    if p.relates(a, b):
                        assert (a in F) == (b in F)


def test_leibniz_matches_brute_force_small(rng):
    for _ in range(120):
        m = random_matrix(rng, max_size=4)
        assert leibniz_congruence(m) == brute_force_leibniz(m)


def test_leibniz_matches_polynomial_characterization(rng):
    for _ in range(60):
        m = random_matrix(rng, max_size=4)
        assert leibniz_congruence(m) == leibniz_via_polynomials(m)
    for m in (cb.matrix_A_1(), cb.matrix_A_c1()):
        assert leibniz_congruence(m) == leibniz_via_polynomials(m)


def test_unary_polynomials_of_A():
    polys = unary_polynomials(cb.build_A())
    assert tuple(range(7)) in polys
    # x join a as a value table
    A = cb.build_A()
    assert tuple(A.apply("join", (x, cb.EA)) for x in range(7)) in polys


def test_suszko_or_logic_identity():
    s = suszko_congruence(cb.or_logic(), cb.matrix_A_1())
    assert s.is_identity()


def test_suszko_equals_leibniz_when_reduced_and_maximal():
    # two-element negation matrix: designating 1 gives a reduced matrix
    L = cb.neg_logic()
    m = Matrix(cb.build_two_element_negation_algebra(), frozenset((1,)))
    assert suszko_congruence(L, m) == leibniz_congruence(m)
    assert suszko_congruence(L, m).is_identity()


def test_suszko_requires_filter():
    L = cb.or_logic()
    with pytest.raises(FilterError):
        suszko_congruence(L, Matrix(cb.build_A(), frozenset((cb.EE,))))


def test_suszko_is_meet_of_leibniz_over_filters():
    L = cb.neg_logic()
    alg = cb.build_two_element_negation_algebra()
    m = Matrix(alg, frozenset())
    expected = Partition.single_block(2)
    for G in enumerate_filters(L, alg):
        expected = expected.meet(leibniz_congruence(Matrix(alg, G)))
    assert suszko_congruence(L, m) == expected


def test_suszko_refines_leibniz(rng):
    L = cb.neg_logic()
    for _ in range(40):
        n = rng.randint(1, 4)
        table = tuple(rng.randrange(n) for _ in range(n))
        alg = FiniteAlgebra(cb.NEG_SIG, n, (table,))
        elems = frozenset(rng.sample(range(n), rng.randint(0, n)))
        m = Matrix(alg, elems)
        from matlog.logic import is_filter

        if not is_filter(L, m):
            continue
        assert suszko_congruence(L, m).finer_or_equal(leibniz_congruence(m))


def test_suszko_polynomial_cross_check_on_casebook():
    orL = cb.or_logic()
    for m in (cb.matrix_A_1(), cb.matrix_A_c1()):
        assert suszko_congruence(orL, m) == suszko_congruence(
            orL, m, via_polynomials=True
        )
    negL = cb.neg_logic()
    two = cb.build_two_element_negation_algebra()
    for F in (frozenset(), frozenset((0,)), frozenset((1,)), frozenset((0, 1))):
        m = Matrix(two, F)
        assert suszko_congruence(negL, m) == suszko_congruence(
            negL, m, via_polynomials=True
        )
    k3 = cb.kappa_logic(3)
    for gen in k3.generators:
        assert suszko_congruence(k3, gen) == suszko_congruence(
            k3, gen, via_polynomials=True
        )


def test_reduce_golden_and_idempotent():
    m = cb.matrix_A_1()
    red = reduce_matrix(m)
    assert red.algebra.size == 4
    assert leibniz_congruence(red).is_identity()
    assert are_isomorphic(reduce_matrix(red), red)


def test_reduce_trivial_empty_matrix():
    from matlog.algebra import trivial_matrix

    m = trivial_matrix(cb.SL_SIG, designated=False)
    red = reduce_matrix(m)
    assert red.algebra.size == 1
    assert red.designated == frozenset()


def test_reduce_laws_random(rng):
    for _ in range(80):
        m = random_matrix(rng, max_size=6)
        red = reduce_matrix(m)
        assert leibniz_congruence(red).is_identity()
        assert are_isomorphic(reduce_matrix(red), red)


def test_quotient_rejects_non_congruence():
    A = cb.build_A()
    bad = Partition.from_blocks(7, [[0, 6], [1], [2], [3], [4], [5]])
    assert not is_congruence(A, bad)
    with pytest.raises(InputError):
        quotient_matrix(Matrix(A, frozenset((6,))), bad)


def test_quotient_natural_map_is_homomorphism(rng):
    from matlog.algebra import is_homomorphism

    for _ in range(30):
        m = random_matrix(rng, max_size=5)
        p = leibniz_congruence(m)
        q = quotient_matrix(m, p)
        assert is_homomorphism(m.algebra, q.algebra, [p.ids[x] for x in range(m.algebra.size)])
