"""Partitions, congruence tests, Leibniz and Suszko congruences, reduction."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import FiniteAlgebra, Matrix
from .terms import InputError


class FilterError(ValueError):
    """The designated set is not a deductive filter of the given logic."""


@dataclass(frozen=True)
class Partition:
    """An equivalence relation on {0..n-1}, stored as normalized block ids.

    ids[i] is the block of element i; ids are numbered by first occurrence,
    which makes equal partitions compare equal structurally.
    """

    ids: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(self.ids))

    def __hash__(self):
        return self._hash

    @staticmethod
    def _normalize(raw: Sequence[int]) -> tuple[int, ...]:
        remap: dict[int, int] = {}
        out = []
        for r in raw:
            if r not in remap:
                remap[r] = len(remap)
            out.append(remap[r])
        return tuple(out)

    @classmethod
    def from_raw(cls, raw: Sequence[int]) -> "Partition":
        return cls(cls._normalize(raw))

    @classmethod
    def identity(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def single_block(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        raw = [-1] * n
        for b, block in enumerate(blocks):
            for x in block:
                if not 0 <= x < n:
                    raise InputError(f"element {x} out of range")
                if raw[x] != -1:
                    raise InputError(f"element {x} appears in two blocks")
                raw[x] = b
        if any(r == -1 for r in raw):
            raise InputError("blocks do not cover the universe")
        return cls.from_raw(raw)

    @property
    def size(self) -> int:
        return len(self.ids)

    @property
    def block_count(self) -> int:
        return max(self.ids) + 1 if self.ids else 0

    def is_identity(self) -> bool:
        return self.block_count == len(self.ids)

    def relates(self, a: int, b: int) -> bool:
        return self.ids[a] == self.ids[b]

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        """Canonical form: blocks sorted, each block sorted."""
        acc: dict[int, list[int]] = {}
        for x, b in enumerate(self.ids):
            acc.setdefault(b, []).append(x)
        return tuple(sorted(tuple(sorted(v)) for v in acc.values()))

    def meet(self, other: "Partition") -> "Partition":
        """Intersection as relations (the congruence-lattice meet)."""
        if len(self.ids) != len(other.ids):
            raise InputError("partition sizes differ")
        return Partition.from_raw(
            [a * len(other.ids) + b for a, b in zip(self.ids, other.ids)]
        )

    def finer_or_equal(self, other: "Partition") -> bool:
        """True when self, as a relation, is contained in other."""
        seen: dict[int, int] = {}
        for mine, theirs in zip(self.ids, other.ids):
            if mine in seen:
                if seen[mine] != theirs:
                    return False
            else:
                seen[mine] = theirs
        return True

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks()]

    def render(self, alg: FiniteAlgebra | None = None) -> str:
        def name(x: int) -> str:
            return alg.name_of(x) if alg else str(x)

        return " ".join("{" + ",".join(name(x) for x in b) + "}" for b in self.blocks())


def unary_letters(alg: FiniteAlgebra) -> tuple[tuple[int, ...], ...]:
    """The single-step unary polynomial maps x -> f(c1,..,x,..,ck).

    One map per (symbol, argument position, tuple of fixed elements); the
    unary polynomial clone is their composition closure plus the identity.
    """
    n = alg.size
    letters: list[tuple[int, ...]] = []
    for (name, arity), table in zip(alg.signature.symbols, alg.tables):
        if arity == 1:
            letters.append(table)
            continue
        for pos in range(arity):
            for ctx in itertools.product(range(n), repeat=arity - 1):
                row = []
                for x in range(n):
                    args = ctx[:pos] + (x,) + ctx[pos:]
                    idx = 0
                    for a in args:
                        idx = idx * n + a
                    row.append(table[idx])
                letters.append(tuple(row))
    return tuple(letters)


def unary_polynomials(alg: FiniteAlgebra, cap: int = 100_000) -> tuple[tuple[int, ...], ...]:
    """All unary polynomial functions, as value tuples, identity included.

    Closure of the identity under post-composition with the single-step
    maps; bounded by n^n, capped to keep degenerate inputs from running
    away.
    """
    n = alg.size
    letters = unary_letters(alg)
    identity = tuple(range(n))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in letters:
                q = tuple(g[v] for v in p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
                    if len(seen) > cap:
                        raise InputError("unary polynomial clone exceeds cap")
        frontier = nxt
    return tuple(sorted(seen))


def is_congruence(alg: FiniteAlgebra, p: Partition) -> bool:
    """Exhaustive check that related elements stay related under every map."""
    if p.size != alg.size:
        raise InputError("partition size does not match the universe")
    ids = p.ids
    for g in unary_letters(alg):
        classes: dict[int, int] = {}
        for x in range(alg.size):
            b = ids[x]
            v = ids[g[x]]
            if classes.setdefault(b, v) != v:
                return False
    return True


def _coarsest_stable(n: int, letters: Sequence[tuple[int, ...]], initial_ids: Sequence[int]) -> Partition:
    """Coarsest refinement of the initial partition stable under the letters.

    Hopcroft-style: worklist of splitter blocks, split every block by
    membership of its letter-image in the splitter, enqueue the smaller
    half.  The result does not depend on the splitting order.
    """
    blocks: dict[int, set[int]] = {}
    for x, b in enumerate(initial_ids):
        blocks.setdefault(b, set()).add(x)
    parts: set[frozenset[int]] = {frozenset(v) for v in blocks.values()}
    work: set[frozenset[int]] = set(parts)
    while work:
        splitter = work.pop()
        for g in letters:
            hits = {x for x in range(n) if g[x] in splitter}
            if not hits:
                continue
            for block in list(parts):
                inside = block & hits
                if not inside or inside == block:
                    continue
                outside = block - inside
                parts.remove(block)
                parts.add(frozenset(inside))
                parts.add(frozenset(outside))
                if block in work:
                    work.remove(block)
                    work.add(frozenset(inside))
                    work.add(frozenset(outside))
                else:
                    work.add(frozenset(inside if len(inside) <= len(outside) else outside))
    raw = [0] * n
    for i, block in enumerate(parts):
        for x in block:
            raw[x] = i
    return Partition.from_raw(raw)


def leibniz_congruence(m: Matrix) -> Partition:
    """Largest congruence compatible with the designated set.

    Partition refinement from {F, complement}: the coarsest partition that
    separates F from its complement and is stable under all one-step
    polynomial maps is exactly the largest congruence that never merges F
    with its complement.
    """
    n = m.algebra.size
    F = m.designated
    if not F or len(F) == n:
        # compatibility is vacuous, the total congruence qualifies
        return Partition.single_block(n)
    initial = [1 if x in F else 0 for x in range(n)]
    return _coarsest_stable(n, unary_letters(m.algebra), initial)


def leibniz_via_polynomials(m: Matrix) -> Partition:
    """Independent oracle: relate a, b iff no unary polynomial separates
    them through the designated set."""
    F = m.designated
    polys = unary_polynomials(m.algebra)
    profiles = [tuple(p[x] in F for p in polys) for x in range(m.algebra.size)]
    seen: dict[tuple, int] = {}
    raw = []
    for prof in profiles:
        raw.append(seen.setdefault(prof, len(seen)))
    return Partition.from_raw(raw)


def quotient_matrix(m: Matrix, p: Partition) -> Matrix:
    """Block algebra with the designated blocks; p must be a congruence."""
    alg = m.algebra
    if not is_congruence(alg, p):
        raise InputError("partition is not a congruence")
    n = alg.size
    k = p.block_count
    reps = [0] * k
    for x in range(n - 1, -1, -1):
        reps[p.ids[x]] = x
    tables = []
    for (name, arity), table in zip(alg.signature.symbols, alg.tables):
        flat = []
        for args in itertools.product(range(k), repeat=arity):
            idx = 0
            for a in args:
                idx = idx * n + reps[a]
            flat.append(p.ids[table[idx]])
        tables.append(tuple(flat))
    names = None
    if alg.element_names:
        blocks = p.blocks()
        by_block = {}
        for b in blocks:
            by_block[p.ids[b[0]]] = "|".join(alg.element_names[x] for x in b)
        names = tuple(by_block[i] for i in range(k))
    qalg = FiniteAlgebra(alg.signature, k, tuple(tables), names)
    return Matrix(qalg, frozenset(p.ids[x] for x in m.designated))


def reduce_matrix(m: Matrix) -> Matrix:
    """Quotient by the Leibniz congruence; the result is reduced."""
    return quotient_matrix(m, leibniz_congruence(m))


def suszko_congruence(L, m: Matrix, via_polynomials: bool = False) -> Partition:
    """Meet of the Leibniz congruences of all deductive filters above F.

    The designated set must itself be a filter of L.  With
    via_polynomials=True the independent characterization through filter
    generation of polynomial images is used instead (cross-check path).
    """
    from . import logic as _logic

    if not _logic.is_filter(L, m):
        raise FilterError("designated set is not a deductive filter of the logic")
    if via_polynomials:
        return _suszko_via_polynomials(L, m)
    current = leibniz_congruence(m)
    if current.is_identity():
        # the meet refines the Leibniz congruence of F itself
        return current
    for G in _logic.filters_above(L, m.algebra, m.designated):
        if G == m.designated:
            continue
        current = current.meet(leibniz_congruence(Matrix(m.algebra, G)))
        if current.is_identity():
            break
    return current


def _suszko_via_polynomials(L, m: Matrix) -> Partition:
    from . import logic as _logic

    alg = m.algebra
    F = m.designated
    polys = unary_polynomials(alg)
    gens: dict[tuple[int, ...], frozenset[int]] = {}

    def fg(seed: frozenset[int]) -> frozenset[int]:
        key = tuple(sorted(seed))
        if key not in gens:
            gens[key] = _logic.generate_filter(L, alg, seed)
        return gens[key]

    profiles = []
    for x in range(alg.size):
        profiles.append(tuple(fg(F | {p[x]}) for p in polys))
    seen: dict[tuple, int] = {}
    raw = [seen.setdefault(prof, len(seen)) for prof in profiles]
    return Partition.from_raw(raw)
