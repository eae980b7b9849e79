"""Signatures, terms, substitutions, translations and rules.

Elements of finite algebras are dense integers, variables are positive
integers (written x1, x2, ... in the DSL).  Nullary symbols are forbidden:
a constant is an arity-1 symbol whose table is a constant map, so every
term contains at least one variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union


class InputError(ValueError):
    """A structural constraint on an input object is violated."""


@dataclass(frozen=True)
class Signature:
    """Operation symbols with arities, in a fixed order."""

    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        seen = set()
        for name, arity in self.symbols:
            if name in seen:
                raise InputError(f"duplicate symbol {name!r} in signature")
            seen.add(name)
            if arity < 1:
                raise InputError(
                    f"symbol {name!r} has arity {arity}; nullary symbols are "
                    "forbidden, model constants as unary constant operations"
                )
        object.__setattr__(self, "_arities", dict(self.symbols))
        object.__setattr__(
            self, "_index", {name: i for i, (name, _) in enumerate(self.symbols)}
        )
        object.__setattr__(self, "_hash", hash(self.symbols))

    def __hash__(self):
        return self._hash

    def arity(self, name: str) -> int:
        try:
            return self._arities[name]
        except KeyError:
            raise InputError(f"unknown symbol {name!r}") from None

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown symbol {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._arities

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.symbols)


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise InputError(f"variable index must be positive, got {self.index}")

    def __repr__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple["Term", ...]

    def __repr__(self):
        return f"{self.symbol}({', '.join(map(repr, self.args))})"


Term = Union[Var, App]


def variables(t: Term) -> frozenset[int]:
    """The (finite) set of variable indices occurring in t."""
    if isinstance(t, Var):
        return frozenset((t.index,))
    out: set[int] = set()
    stack = list(t.args)
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            out.add(s.index)
        else:
            stack.extend(s.args)
    return frozenset(out)


def term_depth(t: Term) -> int:
    if isinstance(t, Var):
        return 0
    if not t.args:
        return 1
    return 1 + max(term_depth(a) for a in t.args)


def term_symbols(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset()
    out: set[str] = set()
    stack: list[Term] = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, App):
            out.add(s.symbol)
            stack.extend(s.args)
    return frozenset(out)


def check_term(sig: Signature, t: Term) -> None:
    """Raise InputError unless t is well formed over sig."""
    if isinstance(t, Var):
        return
    if sig.arity(t.symbol) != len(t.args):
        raise InputError(
            f"symbol {t.symbol!r} has arity {sig.arity(t.symbol)}, "
            f"applied to {len(t.args)} arguments"
        )
    for a in t.args:
        check_term(sig, a)


def term_str(t: Term) -> str:
    if isinstance(t, Var):
        return f"x{t.index}"
    return f"{t.symbol}({', '.join(term_str(a) for a in t.args)})"


def apply_substitution(s: Mapping[int, Term], t: Term) -> Term:
    """Homomorphic extension of s; variables off the support are fixed."""
    if isinstance(t, Var):
        return s.get(t.index, t)
    return App(t.symbol, tuple(apply_substitution(s, a) for a in t.args))


@dataclass(frozen=True)
class Translation:
    """Maps every n-ary source symbol to an n-ary term of the target.

    Images are stored in source-signature order; the image of an n-ary
    symbol may only use variables x1..xn.
    """

    source: Signature
    target: Signature
    images: tuple[Term, ...]

    def __post_init__(self):
        if len(self.images) != len(self.source.symbols):
            raise InputError("translation must give exactly one image per source symbol")
        for (name, arity), img in zip(self.source.symbols, self.images):
            check_term(self.target, img)
            bad = [v for v in variables(img) if not 1 <= v <= arity]
            if bad:
                raise InputError(
                    f"image of {arity}-ary symbol {name!r} uses variables "
                    f"{sorted(bad)} outside x1..x{arity}"
                )
        object.__setattr__(self, "_hash", hash((self.source, self.target, self.images)))

    def __hash__(self):
        return self._hash

    def image(self, name: str) -> Term:
        return self.images[self.source.index(name)]


def translate_term(tr: Translation, t: Term) -> Term:
    """Recursive extension of a translation to terms.

    Variables are fixed, so vars(result) is a subset of vars(t).
    """
    if isinstance(t, Var):
        return t
    args = tuple(translate_term(tr, a) for a in t.args)
    img = tr.image(t.symbol)
    return apply_substitution({i + 1: a for i, a in enumerate(args)}, img)


def identity_translation(source: Signature, target: Signature | None = None) -> Translation:
    """Symbol-by-name translation; target must carry every source symbol."""
    target = target or source
    images = []
    for name, arity in source.symbols:
        if name not in target or target.arity(name) != arity:
            raise InputError(f"target signature lacks {arity}-ary symbol {name!r}")
        images.append(App(name, tuple(Var(i + 1) for i in range(arity))))
    return Translation(source, target, tuple(images))


def compose_translations(outer: Translation, inner: Translation) -> Translation:
    """The translation sending each symbol s to outer(inner(s))."""
    if inner.target.symbols != outer.source.symbols:
        raise InputError("translations do not compose: signature mismatch")
    return Translation(
        inner.source,
        outer.target,
        tuple(translate_term(outer, img) for img in inner.images),
    )


@dataclass(frozen=True)
class Rule:
    """A finitary rule: premises over a signature, one conclusion."""

    premises: tuple[Term, ...]
    conclusion: Term

    def variables(self) -> tuple[int, ...]:
        vs: set[int] = set(variables(self.conclusion))
        for p in self.premises:
            vs |= variables(p)
        return tuple(sorted(vs))

    def check(self, sig: Signature) -> None:
        for p in self.premises:
            check_term(sig, p)
        check_term(sig, self.conclusion)
