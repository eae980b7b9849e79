"""Finite algebras, matrices, evaluation, and structural constructions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .terms import App, InputError, Signature, Term, Translation, Var, check_term


@dataclass(frozen=True)
class FiniteAlgebra:
    """Operation tables over the universe {0..size-1}.

    Tables are flat row-major tuples, one per signature symbol in signature
    order: the value of f(a1,..,ak) sits at index ((a1*n + a2)*n + ..)*n + ak.
    """

    signature: Signature
    size: int
    tables: tuple[tuple[int, ...], ...]
    element_names: tuple[str, ...] | None = None

    def __post_init__(self):
        n = self.size
        if n < 1:
            raise InputError("universe must be non-empty")
        if len(self.tables) != len(self.signature.symbols):
            raise InputError("one table per signature symbol required")
        for (name, arity), table in zip(self.signature.symbols, self.tables):
            if len(table) != n**arity:
                raise InputError(
                    f"table for {name!r} has {len(table)} entries, expected {n**arity}"
                )
            if any(not 0 <= v < n for v in table):
                raise InputError(f"table for {name!r} has out-of-range entries")
        if self.element_names is not None and len(self.element_names) != n:
            raise InputError("element_names length must match universe size")
        object.__setattr__(
            self, "_hash", hash((self.signature, self.size, self.tables))
        )

    def __hash__(self):
        return self._hash

    @property
    def universe(self) -> range:
        return range(self.size)

    def table(self, name: str) -> tuple[int, ...]:
        return self.tables[self.signature.index(name)]

    def apply(self, name: str, args: Sequence[int]) -> int:
        t = self.tables[self.signature.index(name)]
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return t[idx]

    def evaluate(self, t: Term, env: Mapping[int, int]) -> int:
        """Bottom-up evaluation; env must cover the variables of t."""
        if isinstance(t, Var):
            try:
                return env[t.index]
            except KeyError:
                raise InputError(f"no binding for variable x{t.index}") from None
        idx = 0
        tab = self.tables[self.signature.index(t.symbol)]
        if len(t.args) != self.signature.arity(t.symbol):
            raise InputError(f"arity mismatch at {t.symbol!r}")
        for a in t.args:
            idx = idx * self.size + self.evaluate(a, env)
        return tab[idx]

    def name_of(self, element: int) -> str:
        if self.element_names:
            return self.element_names[element]
        return str(element)

    def element(self, token: str) -> int:
        """Resolve an element given by name or by index."""
        if self.element_names and token in self.element_names:
            return self.element_names.index(token)
        try:
            v = int(token)
        except ValueError:
            raise InputError(f"unknown element {token!r}") from None
        if not 0 <= v < self.size:
            raise InputError(f"element index {v} out of range")
        return v


def evaluate(alg: FiniteAlgebra, t: Term, env: Mapping[int, int]) -> int:
    return alg.evaluate(t, env)


@dataclass(frozen=True)
class Matrix:
    """An algebra with a designated subset of its universe."""

    algebra: FiniteAlgebra
    designated: frozenset[int]

    def __post_init__(self):
        if any(not 0 <= v < self.algebra.size for v in self.designated):
            raise InputError("designated elements must lie in the universe")
        object.__setattr__(self, "_hash", hash((self.algebra, self.designated)))

    def __hash__(self):
        return self._hash

    @property
    def size(self) -> int:
        return self.algebra.size


def trivial_matrix(signature: Signature, designated: bool = True) -> Matrix:
    """The one-element matrix over signature, with or without its point."""
    tables = tuple((0,) * 1 for _ in signature.symbols)
    alg = FiniteAlgebra(signature, 1, tables)
    return Matrix(alg, frozenset((0,)) if designated else frozenset())


def reduct_by_translation(tr: Translation, alg: FiniteAlgebra) -> FiniteAlgebra:
    """Same universe; each source symbol is interpreted by its image term."""
    if alg.signature != tr.target:
        raise InputError("algebra is not over the translation's target signature")
    n = alg.size
    tables = []
    for (name, arity), img in zip(tr.source.symbols, tr.images):
        flat = []
        for args in itertools.product(range(n), repeat=arity):
            env = {i + 1: a for i, a in enumerate(args)}
            flat.append(alg.evaluate(img, env))
        tables.append(tuple(flat))
    return FiniteAlgebra(tr.source, n, tuple(tables), alg.element_names)


def generated_subalgebra(alg: FiniteAlgebra, seed: Iterable[int]) -> frozenset[int]:
    """Least subset containing seed and closed under all tables."""
    current: set[int] = set(seed)
    frontier = list(current)
    ops = [(arity, table) for (_, arity), table in zip(alg.signature.symbols, alg.tables)]
    n = alg.size
    while frontier:
        new: set[int] = set()
        elems = tuple(current)
        for arity, table in ops:
            for args in itertools.product(elems, repeat=arity):
                if not any(a in frontier for a in args):
                    continue
                idx = 0
                for a in args:
                    idx = idx * n + a
                v = table[idx]
                if v not in current:
                    new.add(v)
        current |= new
        frontier = list(new)
    return frozenset(current)


def is_homomorphism(
    src: FiniteAlgebra, dst: FiniteAlgebra, mapping: Sequence[int]
) -> bool:
    if src.signature != dst.signature:
        return False
    for (name, arity), table in zip(src.signature.symbols, src.tables):
        for args in itertools.product(range(src.size), repeat=arity):
            idx = 0
            for a in args:
                idx = idx * src.size + a
            if mapping[table[idx]] != dst.apply(name, [mapping[a] for a in args]):
                return False
    return True


def enumerate_homomorphisms(
    src: FiniteAlgebra,
    dst: FiniteAlgebra,
    matrix_mode: tuple[frozenset[int], frozenset[int]] | None = None,
) -> Iterator[tuple[int, ...]]:
    """All maps commuting with every table, by backtracking.

    With matrix_mode=(F_src, F_dst), only maps with h[F_src] included in
    F_dst are produced.  Yields value tuples indexed by source elements.
    """
    if src.signature != dst.signature:
        raise InputError("homomorphism search needs a shared signature")
    n, m = src.size, dst.size
    ops = [(arity, table) for (_, arity), table in zip(src.signature.symbols, src.tables)]
    f_src, f_dst = matrix_mode if matrix_mode else (frozenset(), frozenset())

    image = [-1] * n
    dst_tables = list(dst.tables)

    def check_new(k: int) -> bool:
        for op_i, (arity, table) in enumerate(ops):
            dtable = dst_tables[op_i]
            for args in itertools.product(range(k + 1), repeat=arity):
                if k not in args:
                    continue
                idx = 0
                for a in args:
                    idx = idx * n + a
                v = table[idx]
                if v > k:
                    continue
                didx = 0
                for a in args:
                    didx = didx * m + image[a]
                if dtable[didx] != image[v]:
                    return False
            # applications of old arguments whose value is k
            for args in itertools.product(range(k), repeat=arity):
                idx = 0
                for a in args:
                    idx = idx * n + a
                if table[idx] != k:
                    continue
                didx = 0
                for a in args:
                    didx = didx * m + image[a]
                if dtable[didx] != image[k]:
                    return False
        return True

    def search(k: int) -> Iterator[tuple[int, ...]]:
        if k == n:
            yield tuple(image)
            return
        for cand in range(m):
            if k in f_src and cand not in f_dst:
                continue
            image[k] = cand
            if check_new(k):
                yield from search(k + 1)
        image[k] = -1

    yield from search(0)


def direct_product(
    ms: Sequence[Matrix], signature: Signature | None = None
) -> Matrix:
    """Indexed direct product over a shared signature.

    The empty product is the trivial matrix with its point designated.
    """
    if not ms:
        if signature is None:
            raise InputError("empty product needs an explicit signature")
        return trivial_matrix(signature, designated=True)
    sig = ms[0].algebra.signature
    for m in ms:
        if m.algebra.signature != sig:
            raise InputError("product factors must share a signature")
    sizes = [m.algebra.size for m in ms]
    total = 1
    for s in sizes:
        total *= s

    def decode(idx: int) -> tuple[int, ...]:
        out = []
        for s in reversed(sizes):
            out.append(idx % s)
            idx //= s
        return tuple(reversed(out))

    def encode(tup: Sequence[int]) -> int:
        idx = 0
        for s, v in zip(sizes, tup):
            idx = idx * s + v
        return idx

    tables = []
    for name, arity in sig.symbols:
        flat = []
        for args in itertools.product(range(total), repeat=arity):
            coords = [decode(a) for a in args]
            val = tuple(
                ms[i].algebra.apply(name, [c[i] for c in coords])
                for i in range(len(ms))
            )
            flat.append(encode(val))
        tables.append(tuple(flat))
    alg = FiniteAlgebra(sig, total, tuple(tables))
    desig = frozenset(
        encode(tup)
        for tup in itertools.product(*[sorted(m.designated) for m in ms])
    )
    return Matrix(alg, desig)


def submatrix(m: Matrix, subset: Iterable[int]) -> Matrix:
    """Restriction to a subset closed under all tables, reindexed."""
    sub = sorted(set(subset))
    if not sub:
        raise InputError("submatrix universe must be non-empty")
    closed = generated_subalgebra(m.algebra, sub)
    if set(sub) != closed:
        raise InputError("subset is not closed under the operations")
    reindex = {v: i for i, v in enumerate(sub)}
    n = m.algebra.size
    tables = []
    for (name, arity), table in zip(m.algebra.signature.symbols, m.algebra.tables):
        flat = []
        for args in itertools.product(sub, repeat=arity):
            idx = 0
            for a in args:
                idx = idx * n + a
            flat.append(reindex[table[idx]])
        tables.append(tuple(flat))
    names = None
    if m.algebra.element_names:
        names = tuple(m.algebra.element_names[v] for v in sub)
    alg = FiniteAlgebra(m.algebra.signature, len(sub), tuple(tables), names)
    return Matrix(alg, frozenset(reindex[v] for v in m.designated if v in reindex))


def all_subuniverses(alg: FiniteAlgebra) -> list[frozenset[int]]:
    """All non-empty subsets closed under the tables (small universes only)."""
    out = set()
    for r in range(1, alg.size + 1):
        for combo in itertools.combinations(range(alg.size), r):
            if generated_subalgebra(alg, combo) == frozenset(combo):
                out.add(frozenset(combo))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def find_isomorphism(m1: Matrix, m2: Matrix) -> tuple[int, ...] | None:
    """A designation-preserving table-commuting bijection, if one exists.

    Exhaustive backtracking with per-assignment pruning; meant for the
    sizes this workbench handles (universes up to ~8).
    """
    a1, a2 = m1.algebra, m2.algebra
    if a1.signature != a2.signature or a1.size != a2.size:
        return None
    if len(m1.designated) != len(m2.designated):
        return None
    n = a1.size
    image = [-1] * n
    used = [False] * n
    ops = list(zip(a1.signature.symbols, a1.tables, a2.tables))

    def check_new(k: int) -> bool:
        for (name, arity), t1, t2 in ops:
            for args in itertools.product(range(k + 1), repeat=arity):
                if k not in args:
                    continue
                idx = 0
                for a in args:
                    idx = idx * n + a
                v = t1[idx]
                if v > k:
                    continue
                didx = 0
                for a in args:
                    didx = didx * n + image[a]
                if t2[didx] != image[v]:
                    return False
            for args in itertools.product(range(k), repeat=arity):
                idx = 0
                for a in args:
                    idx = idx * n + a
                if t1[idx] != k:
                    continue
                didx = 0
                for a in args:
                    didx = didx * n + image[a]
                if t2[didx] != image[k]:
                    return False
        return True

    def search(k: int):
        if k == n:
            return tuple(image)
        for cand in range(n):
            if used[cand]:
                continue
            if (k in m1.designated) != (cand in m2.designated):
                continue
            image[k] = cand
            used[cand] = True
            if check_new(k):
                res = search(k + 1)
                if res is not None:
                    return res
            used[cand] = False
        image[k] = -1
        return None

    return search(0)


def are_isomorphic(m1: Matrix, m2: Matrix) -> bool:
    return find_isomorphism(m1, m2) is not None


class MatrixPowerOracle:
    """The n-th matrix power of a finite algebra, operation by operation.

    Universe A^n; a k-ary derived operation is described by an n-tuple of
    kn-ary terms, where argument j contributes coordinates x_{(j-1)n+1}
    .. x_{jn}.  Operations are evaluated on demand; materialize() freezes
    a chosen finite family of descriptors into an ordinary FiniteAlgebra.
    """

    def __init__(self, base: FiniteAlgebra, n: int):
        if n < 1:
            raise InputError("matrix power exponent must be at least 1")
        self.base = base
        self.n = n
        self.size = base.size**n

    def decode(self, idx: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            out.append(idx % self.base.size)
            idx //= self.base.size
        return tuple(reversed(out))

    def encode(self, tup: Sequence[int]) -> int:
        idx = 0
        for v in tup:
            idx = idx * self.base.size + v
        return idx

    def descriptor_arity(self, descriptor: Sequence[Term]) -> int:
        if len(descriptor) != self.n:
            raise InputError(f"descriptor must have {self.n} component terms")
        max_var = 0
        for t in descriptor:
            check_term(self.base.signature, t)
            max_var = max(max_var, _term_vars_max(t))
        return max(1, (max_var + self.n - 1) // self.n)

    def eval_descriptor(
        self, descriptor: Sequence[Term], args: Sequence[Sequence[int]]
    ) -> tuple[int, ...]:
        """Componentwise evaluation of an n-tuple of kn-ary terms."""
        if len(descriptor) != self.n:
            raise InputError(f"descriptor must have {self.n} component terms")
        k = len(args)
        env = {}
        for j, a in enumerate(args):
            if len(a) != self.n:
                raise InputError("arguments must be n-tuples over the base universe")
            for i, v in enumerate(a):
                env[j * self.n + i + 1] = v
        out = []
        for t in descriptor:
            for v in _term_vars(t):
                if v > k * self.n:
                    raise InputError(
                        f"descriptor uses x{v} but only {k} arguments "
                        f"({k * self.n} coordinates) were supplied"
                    )
            out.append(self.base.evaluate(t, env))
        return tuple(out)

    def materialize(
        self, descriptors: Sequence[tuple[str, int, tuple[Term, ...]]]
    ) -> FiniteAlgebra:
        """Snapshot of named (name, arity, descriptor) operations."""
        syms = tuple((name, arity) for name, arity, _ in descriptors)
        sig = Signature(syms)
        tables = []
        for name, arity, desc in descriptors:
            flat = []
            for args in itertools.product(range(self.size), repeat=arity):
                tup = self.eval_descriptor(desc, [self.decode(a) for a in args])
                flat.append(self.encode(tup))
            tables.append(tuple(flat))
        return FiniteAlgebra(sig, self.size, tuple(tables))


def _term_vars(t: Term):
    from .terms import variables

    return variables(t)


def _term_vars_max(t: Term) -> int:
    vs = _term_vars(t)
    return max(vs) if vs else 0


def matrix_power_oracle(alg: FiniteAlgebra, n: int) -> MatrixPowerOracle:
    return MatrixPowerOracle(alg, n)


def algebra_to_json(alg: FiniteAlgebra) -> dict:
    out = {
        "size": alg.size,
        "signature": [[name, arity] for name, arity in alg.signature.symbols],
        "tables": {name: list(alg.table(name)) for name, _ in alg.signature.symbols},
    }
    if alg.element_names:
        out["element_names"] = list(alg.element_names)
    return out


def matrix_to_json(m: Matrix) -> dict:
    out = algebra_to_json(m.algebra)
    out["designated"] = sorted(m.designated)
    return out
