"""Interpretation checking and bounded search between logics.

A translation is certified as an interpretation by checking that the
reducts of the required target matrices land in the canonical model class
of the source.  In general mode the required matrices are the reductions
of the target's generators, which refutes soundly but accepts only
relative to the generators (the full model class is not enumerable).  In
equivalential mode, a validated congruence-formula set for the target
upgrades this to all submatrices of the reduced generators, which is the
complete test for targets induced by reduced matrices.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .algebra import Matrix, all_subuniverses, reduct_by_translation, submatrix
from .congruence import leibniz_congruence, reduce_matrix
from .logic import (
    CongruenceFormulaSet,
    Logic,
    check_equivalential,
    consequence,
    in_mod_eq,
)
from .terms import (
    App,
    InputError,
    Signature,
    Term,
    Translation,
    Var,
    term_str,
    translate_term,
)

GENERAL_MODE = "via-R-generators"
EQUIV_MODE = "via-S-of-reduced-generators"


@dataclass(frozen=True)
class Evidence:
    matrix_id: int
    submatrix_id: tuple[int, ...]
    in_mod_eq: bool

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix_id,
            "submatrix": list(self.submatrix_id),
            "in_mod_eq": self.in_mod_eq,
        }


@dataclass(frozen=True)
class InterpretationCertificate:
    translation: Translation
    mode: str
    evidence: tuple[Evidence, ...]

    @property
    def holds(self) -> bool:
        return all(e.in_mod_eq for e in self.evidence)

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "holds": self.holds,
            "translation": {
                name: term_str(img)
                for (name, _), img in zip(
                    self.translation.source.symbols, self.translation.images
                )
            },
            "evidence": [e.to_json() for e in self.evidence],
        }


def required_matrices(
    target: Logic,
    mode: str,
    delta: CongruenceFormulaSet | None = None,
) -> list[tuple[int, tuple[int, ...], Matrix]]:
    """The finite family of target matrices an interpretation must respect.

    General mode: the reductions of the generators.  Equivalential mode:
    all submatrices of the reduced generators (the substructure closure),
    available once a congruence-formula set for the target validates.
    """
    if not target.has_generators:
        raise InputError(f"{target.name} has no matrix presentation")
    out = []
    if mode == GENERAL_MODE:
        for i, gen in enumerate(target.generators):
            red = reduce_matrix(gen)
            out.append((i, tuple(range(red.algebra.size)), red))
        return out
    if mode != EQUIV_MODE:
        raise InputError(f"unknown interpretation mode {mode!r}")
    delta = delta or target.delta
    if delta is None:
        raise InputError("equivalential mode needs a congruence-formula set")
    if not check_equivalential(target, delta):
        raise InputError("congruence-formula set failed validation for the target")
    for i, gen in enumerate(target.generators):
        red = reduce_matrix(gen)
        for sub in all_subuniverses(red.algebra):
            ids = tuple(sorted(sub))
            out.append((i, ids, submatrix(red, sub)))
    return out


def check_interpretation(
    tr: Translation,
    source: Logic,
    target: Logic,
    mode: str = GENERAL_MODE,
    delta: CongruenceFormulaSet | None = None,
    early_exit: bool = False,
) -> InterpretationCertificate:
    """Certify or refute a translation; the certificate re-verifies.

    With early_exit the evidence list stops at the first failing matrix,
    which is enough to refute during search.
    """
    if tr.source != source.signature or tr.target != target.signature:
        raise InputError("translation signatures do not match the logics")
    evidence = []
    for matrix_id, sub_id, mat in required_matrices(target, mode, delta):
        red = reduct_by_translation(tr, mat.algebra)
        ok = in_mod_eq(source, Matrix(red, mat.designated))
        evidence.append(Evidence(matrix_id, sub_id, ok))
        if early_exit and not ok:
            break
    return InterpretationCertificate(tr, mode, tuple(evidence))


def verify_certificate(
    cert: InterpretationCertificate, source: Logic, target: Logic,
    delta: CongruenceFormulaSet | None = None,
) -> bool:
    """Re-run the checks recorded in a certificate."""
    fresh = check_interpretation(cert.translation, source, target, cert.mode, delta)
    return fresh.evidence == cert.evidence and fresh.holds


# ---------------------------------------------------------------------------
# canonical term enumeration and search


def enumerate_terms(sig: Signature, nvars: int, max_depth: int) -> list[Term]:
    """All terms of depth <= max_depth in variables x1..xnvars.

    Canonical order: by depth, then by symbol index, then lexicographically
    on the (already enumerated) children; exhaustion counts over this
    order are reproducible.
    """
    levels: list[list[Term]] = [[Var(i + 1) for i in range(nvars)]]
    all_terms: list[Term] = list(levels[0])
    for _ in range(max_depth):
        level: list[Term] = []
        max_prev = len(all_terms)
        shallow = {t for lev in levels[:-1] for t in lev}
        for name, arity in sig.symbols:
            for combo in itertools.product(range(max_prev), repeat=arity):
                args = tuple(all_terms[i] for i in combo)
                if all(a in shallow for a in args):
                    continue  # would duplicate a shallower term
                level.append(App(name, args))
        levels.append(level)
        all_terms.extend(level)
    return all_terms


def _candidate_lists(target_sig: Signature, source_sig: Signature, depth: int):
    per_arity: dict[int, list[Term]] = {}
    out = []
    for name, arity in source_sig.symbols:
        if arity not in per_arity:
            per_arity[arity] = enumerate_terms(target_sig, arity, depth)
        out.append(per_arity[arity])
    return out


def _consequence_battery(source: Logic, max_items: int = 28):
    """Small source consequences used as a cheap necessary condition.

    Built deterministically from canonically enumerated terms: theorems
    in one variable first (cheapest to check and the sharpest pruners),
    then valid one-premise consequences in two variables.
    """
    battery: list[tuple[tuple[Term, ...], Term]] = []
    for t in enumerate_terms(source.signature, 1, 2):
        if len(battery) >= 8:
            break
        if consequence(source, (), t):
            battery.append(((), t))
    small = enumerate_terms(source.signature, 2, 2)
    for p in small[:24]:
        for c in small[:32]:
            if len(battery) >= max_items:
                return battery
            if p == c:
                continue
            if consequence(source, (p,), c) and not consequence(source, (), c):
                battery.append(((p,), c))
    return battery


@dataclass(frozen=True)
class SearchResult:
    certificate: InterpretationCertificate | None
    candidates_total: int
    candidates_tried: int
    prefilter_survivors: int

    @property
    def found(self) -> bool:
        return self.certificate is not None and self.certificate.holds

    def to_json(self) -> dict:
        out = {
            "found": self.found,
            "candidates_total": self.candidates_total,
            "candidates_tried": self.candidates_tried,
            "prefilter_survivors": self.prefilter_survivors,
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def search_interpretation(
    source: Logic,
    target: Logic,
    depth: int,
    mode: str = GENERAL_MODE,
    delta: CongruenceFormulaSet | None = None,
    threads: int | None = None,
) -> SearchResult:
    """Exhaustive bounded-depth search in canonical order.

    Every source symbol of arity n ranges over target terms of depth at
    most `depth` in x1..xn; candidate translations are the product of
    those lists in lexicographic order of per-symbol indices, and the
    first certified candidate wins.  A battery of sampled source
    consequences prunes candidates before the full model check; the
    battery is a necessary condition, so pruning never skips a winner.
    """
    if depth < 1:
        raise InputError("search depth must be at least 1")
    lists = _candidate_lists(target.signature, source.signature, depth)
    total = 1
    for lst in lists:
        total *= len(lst)
    battery = _consequence_battery(source)
    if threads is None:
        threads = int(os.environ.get("MATLOG_THREADS", "1") or "1")

    def passes_battery(images: tuple[Term, ...]) -> bool:
        tr = Translation(source.signature, target.signature, images)
        for premises, concl in battery:
            if not consequence(
                target,
                tuple(translate_term(tr, p) for p in premises),
                translate_term(tr, concl),
            ):
                return False
        return True

    tried = 0
    survivors = 0
    candidates = itertools.product(*lists)

    def evaluate(images):
        if not passes_battery(images):
            return None
        tr = Translation(source.signature, target.signature, images)
        cert = check_interpretation(tr, source, target, mode, delta, early_exit=True)
        if cert.holds:
            # rebuild with complete evidence for the returned certificate
            return check_interpretation(tr, source, target, mode, delta)
        return cert

    if threads > 1:
        # index-ordered map keeps the first hit deterministic
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for cert in pool.map(evaluate, candidates, chunksize=64):
                tried += 1
                if cert is None:
                    continue
                survivors += 1
                if cert.holds:
                    return SearchResult(cert, total, tried, survivors)
    else:
        for images in candidates:
            tried += 1
            cert = evaluate(images)
            if cert is None:
                continue
            survivors += 1
            if cert.holds:
                return SearchResult(cert, total, tried, survivors)
    return SearchResult(None, total, tried, survivors)
