"""Non-indexed products, flat expansions, subdirect checks, and fusion.

A non-indexed product changes the signature: its derived symbols are
tuples of factor terms of a shared arity, evaluated componentwise.  The
full derived language is infinite, so products are materialized over an
explicit finite snapshot of such symbols; the default snapshot embeds
every factor symbol padded with a fresh projection coordinate (the shapes
the componentwise Leibniz property needs) and, when congruence-formula
sets are supplied, the pairing symbols for their Cartesian products.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import FiniteAlgebra, Matrix, generated_subalgebra, trivial_matrix
from .congruence import leibniz_congruence
from .logic import CongruenceFormulaSet, Logic, in_mod_eq, is_filter
from .terms import App, InputError, Signature, Term, Var, check_term, variables


@dataclass(frozen=True)
class ProductSymbol:
    """A derived symbol of a non-indexed product: one component term per
    factor, all of the same arity."""

    name: str
    arity: int
    components: tuple[Term, ...]

    def __post_init__(self):
        for t in self.components:
            bad = [v for v in variables(t) if not 1 <= v <= self.arity]
            if bad:
                raise InputError(
                    f"component of {self.name!r} uses variables {bad} "
                    f"outside x1..x{self.arity}"
                )
        object.__setattr__(self, "_hash", hash((self.name, self.arity, self.components)))

    def __hash__(self):
        return self._hash


def snapshot_signature(snapshot: Sequence[ProductSymbol]) -> Signature:
    return Signature(tuple((s.name, s.arity) for s in snapshot))


def default_snapshot(
    signatures: Sequence[Signature],
    deltas: Sequence[CongruenceFormulaSet] | None = None,
) -> tuple[ProductSymbol, ...]:
    """Per-factor symbols padded with a fresh projection coordinate, plus
    Cartesian pairing symbols for the given congruence-formula sets.

    The padded family includes, per slot, the bare-variable shape
    (x1 in the slot, the pad elsewhere); together with composition this
    makes every one-slot formula with a fresh pad a derived operation,
    which is what the componentwise Leibniz property runs on."""
    out = []
    for j, sig in enumerate(signatures):
        out.append(
            ProductSymbol(
                f"p{j}_id",
                2,
                tuple(Var(1) if i == j else Var(2) for i in range(len(signatures))),
            )
        )
        for name, arity in sig.symbols:
            pad = Var(arity + 1)
            comps = tuple(
                App(name, tuple(Var(i + 1) for i in range(arity))) if i == j else pad
                for i in range(len(signatures))
            )
            out.append(ProductSymbol(f"p{j}_{name}", arity + 1, comps))
    if deltas is not None:
        if len(deltas) != len(signatures):
            raise InputError("one congruence-formula set per factor expected")
        for k, combo in enumerate(itertools.product(*[d.terms for d in deltas])):
            out.append(ProductSymbol(f"pair{k}", 2, tuple(combo)))
    return tuple(out)


def product_delta(
    snapshot: Sequence[ProductSymbol],
    deltas: Sequence[CongruenceFormulaSet],
) -> CongruenceFormulaSet:
    """The Cartesian product of the factor formula sets, read off the
    pairing symbols of the snapshot."""
    combos = {combo: None for combo in itertools.product(*[d.terms for d in deltas])}
    terms = []
    for sym in snapshot:
        if sym.arity == 2 and sym.components in combos:
            terms.append(App(sym.name, (Var(1), Var(2))))
            combos[sym.components] = sym.name
    if any(v is None for v in combos.values()):
        raise InputError("snapshot lacks pairing symbols for the delta product")
    return CongruenceFormulaSet(tuple(terms))


def product_codec(sizes: Sequence[int]):
    def encode(tup: Sequence[int]) -> int:
        idx = 0
        for s, v in zip(sizes, tup):
            idx = idx * s + v
        return idx

    def decode(idx: int) -> tuple[int, ...]:
        out = []
        for s in reversed(sizes):
            out.append(idx % s)
            idx //= s
        return tuple(reversed(out))

    return encode, decode


def non_indexed_product(
    ms: Sequence[Matrix], snapshot: Sequence[ProductSymbol]
) -> Matrix:
    """Cartesian universe, componentwise snapshot operations, product
    designated set.  The empty product is the trivial matrix."""
    if not snapshot:
        raise InputError("snapshot must be non-empty")
    sig = snapshot_signature(snapshot)
    if not ms:
        return trivial_matrix(sig, designated=True)
    for sym in snapshot:
        if len(sym.components) != len(ms):
            raise InputError(
                f"symbol {sym.name!r} has {len(sym.components)} components "
                f"for {len(ms)} factors"
            )
        for m, comp in zip(ms, sym.components):
            check_term(m.algebra.signature, comp)
    sizes = [m.algebra.size for m in ms]
    encode, decode = product_codec(sizes)
    total = 1
    for s in sizes:
        total *= s
    tables = []
    for sym in snapshot:
        flat = []
        for args in itertools.product(range(total), repeat=sym.arity):
            coords = [decode(a) for a in args]
            val = tuple(
                ms[i].algebra.evaluate(
                    sym.components[i], {j + 1: coords[j][i] for j in range(sym.arity)}
                )
                for i in range(len(ms))
            )
            flat.append(encode(val))
        tables.append(tuple(flat))
    names = None
    if all(m.algebra.element_names for m in ms):
        names = tuple(
            "(" + ",".join(ms[i].algebra.element_names[v] for i, v in enumerate(decode(x))) + ")"
            for x in range(total)
        )
    alg = FiniteAlgebra(sig, total, tuple(tables), names)
    desig = frozenset(
        encode(tup) for tup in itertools.product(*[sorted(m.designated) for m in ms])
    )
    return Matrix(alg, desig)


def product_logic(
    logics: Sequence[Logic],
    snapshot: Sequence[ProductSymbol] | None = None,
    name: str | None = None,
) -> Logic:
    """The product logic, presented by products of the factor generators.

    All factors must be matrix-presented.  The default snapshot includes
    pairing symbols (and hence a product congruence-formula set) exactly
    when every factor carries one.
    """
    for L in logics:
        if not L.has_generators:
            raise InputError(f"{L.name} has no matrix presentation to multiply")
    deltas = None
    if logics and all(L.delta is not None for L in logics):
        deltas = [L.delta for L in logics]
    if snapshot is None:
        snapshot = default_snapshot([L.signature for L in logics], deltas)
    gens = tuple(
        non_indexed_product(combo, snapshot)
        for combo in itertools.product(*[L.generators for L in logics])
    )
    delta = None
    if deltas is not None:
        try:
            delta = product_delta(snapshot, deltas)
        except InputError:
            delta = None
    return Logic(
        name or "(" + " x ".join(L.name for L in logics) + ")",
        snapshot_signature(snapshot),
        generators=gens,
        delta=delta,
    )


def flat(
    m: Matrix,
    slot: int,
    count: int,
    signatures: Sequence[Signature],
    snapshot: Sequence[ProductSymbol] | None = None,
) -> Matrix:
    """Non-indexed product with m in the given slot and trivial designated
    matrices everywhere else."""
    if not 0 <= slot < count:
        raise InputError("slot out of range")
    if len(signatures) != count:
        raise InputError("one factor signature per slot expected")
    if signatures[slot] != m.algebra.signature:
        raise InputError("matrix signature must sit in its own slot")
    factors = [
        m if i == slot else trivial_matrix(signatures[i], designated=True)
        for i in range(count)
    ]
    if snapshot is None:
        snapshot = default_snapshot(signatures)
    return non_indexed_product(factors, snapshot)


def is_subdirect(
    m: Matrix,
    factors: Sequence[Matrix],
    embedding: Sequence[int],
    snapshot: Sequence[ProductSymbol],
) -> bool:
    """Injective matrix embedding into the snapshot product with surjective
    projections and the designated set pulled back from the product."""
    product = non_indexed_product(factors, snapshot)
    n = m.algebra.size
    if len(embedding) != n or len(set(embedding)) != n:
        return False
    if any(not 0 <= v < product.algebra.size for v in embedding):
        return False
    if m.algebra.signature != product.algebra.signature:
        return False
    for (name, arity) in m.algebra.signature.symbols:
        for args in itertools.product(range(n), repeat=arity):
            lhs = embedding[m.algebra.apply(name, args)]
            rhs = product.algebra.apply(name, [embedding[a] for a in args])
            if lhs != rhs:
                return False
    if frozenset(x for x in range(n) if embedding[x] in product.designated) != m.designated:
        return False
    sizes = [f.algebra.size for f in factors]
    _, decode = product_codec(sizes)
    for i, f in enumerate(factors):
        if {decode(embedding[x])[i] for x in range(n)} != set(range(f.algebra.size)):
            return False
    return True


def subdirect_submatrix(
    product: Matrix,
    factor_sizes: Sequence[int],
    seed: Iterable[int],
) -> tuple[Matrix, tuple[int, ...]] | None:
    """Generated submatrix of a product, if its projections are onto.

    Returns the reindexed submatrix together with its embedding (the
    sorted closed subset), or None when some projection misses."""
    closed = sorted(generated_subalgebra(product.algebra, seed))
    _, decode = product_codec(factor_sizes)
    for i, size in enumerate(factor_sizes):
        if {decode(x)[i] for x in closed} != set(range(size)):
            return None
    from .algebra import submatrix as _sub

    return _sub(product, closed), tuple(closed)


def fused_signature(
    sigs: Sequence[Signature], tags: Sequence[str] | None = None
) -> Signature:
    """Disjoint union of the factor signatures under name tags."""
    tags = tags or tuple(f"f{i}" for i in range(len(sigs)))
    if len(tags) != len(sigs):
        raise InputError("one tag per fused signature expected")
    symbols = []
    for tag, sig in zip(tags, sigs):
        for name, arity in sig.symbols:
            symbols.append((f"{tag}_{name}", arity))
    return Signature(tuple(symbols))


def fuse(
    m1: Matrix, m2: Matrix, tags: tuple[str, str] = ("f0", "f1")
) -> Matrix:
    """One matrix carrying both table families under tagged symbols.

    The factors must share universe and designated set."""
    if m1.algebra.size != m2.algebra.size:
        raise InputError("fusion needs a shared universe")
    if m1.designated != m2.designated:
        raise InputError("fusion needs a shared designated set")
    sig = fused_signature((m1.algebra.signature, m2.algebra.signature), tags)
    tables = m1.algebra.tables + m2.algebra.tables
    names = m1.algebra.element_names or m2.algebra.element_names
    alg = FiniteAlgebra(sig, m1.algebra.size, tables, names)
    return Matrix(alg, m1.designated)


def fusion_reduct(m: Matrix, tag: str, sig: Signature) -> Matrix:
    """Strip the tag and keep one factor's table family."""
    tables = []
    for name, arity in sig.symbols:
        fused_name = f"{tag}_{name}"
        if fused_name not in m.algebra.signature or m.algebra.signature.arity(fused_name) != arity:
            raise InputError(f"fused matrix lacks symbol {fused_name!r}")
        tables.append(m.algebra.table(fused_name))
    alg = FiniteAlgebra(sig, m.algebra.size, tuple(tables), m.algebra.element_names)
    return Matrix(alg, m.designated)


def fusion_mod_eq_member(
    m: Matrix, logics: Sequence[Logic], tags: Sequence[str] = ("f0", "f1")
) -> bool:
    """Membership in the canonical model class of the fusion of
    equivalential logics: every tagged reduct must be a reduced model of
    its factor."""
    for tag, L in zip(tags, logics):
        red = fusion_reduct(m, tag, L.signature)
        if not in_mod_eq(L, red):
            return False
        if not leibniz_congruence(red).is_identity():
            return False
    return True
