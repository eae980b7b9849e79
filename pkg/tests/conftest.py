import random

import pytest

from matlog.algebra import FiniteAlgebra, Matrix
from matlog.terms import Signature


def random_signature(rng, max_symbols=3, max_arity=2):
    nsym = rng.randint(1, max_symbols)
    return Signature(
        tuple((f"s{i}", rng.randint(1, max_arity)) for i in range(nsym))
    )


def random_algebra(rng, sig, size):
    tables = tuple(
        tuple(rng.randrange(size) for _ in range(size ** arity))
        for _, arity in sig.symbols
    )
    return FiniteAlgebra(sig, size, tables)


def random_matrix(rng, max_size=5, max_symbols=3, max_arity=2, nonempty=False):
    size = rng.randint(2, max_size)
    alg = random_algebra(rng, random_signature(rng, max_symbols, max_arity), size)
    low = 1 if nonempty else 0
    k = rng.randint(low, size)
    designated = frozenset(rng.sample(range(size), k))
    return Matrix(alg, designated)


@pytest.fixture
def rng():
    return random.Random(20260809)
