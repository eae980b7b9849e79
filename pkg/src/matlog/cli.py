"""Command-line front end.

Exit codes: 0 when the request succeeds or the checked property holds,
1 when a checked property is refuted (not a filter, no interpretation,
a failing casebook entry), 2 on usage, parse, or input errors.

Objects are addressed as `casebook:<name>` for built-ins or `FILE:<name>`
for objects defined in a DSL file.  Output is text by default; --format
json prints one canonical JSON document (sorted keys), byte-identical
across runs for identical inputs and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import casebook as cb
from . import constructions as cons
from . import dsl, interp
from .algebra import (
    FiniteAlgebra,
    Matrix,
    algebra_to_json,
    matrix_power_oracle,
    matrix_to_json,
)
from .congruence import (
    FilterError,
    leibniz_congruence,
    reduce_matrix,
    suszko_congruence,
)
from .logic import (
    CongruenceFormulaSet,
    Logic,
    almost_inconsistent_logic,
    check_equivalential,
    consequence,
    enumerate_filters,
    generate_filter,
    inconsistent_logic,
    is_filter,
)
from .terms import InputError, Signature, Term, Translation, term_str

OK, REFUTED, USAGE = 0, 1, 2


class _Resolver:
    """Lazy access to casebook built-ins and DSL files."""

    def __init__(self):
        self._bundles: dict[str, dsl.WorkspaceBundle] = {}
        self._casebook_algebras = {
            "A": cb.build_A,
            "neg2": cb.build_two_element_negation_algebra,
        }
        self._casebook_logics = {
            "or": cb.or_logic,
            "neg": cb.neg_logic,
            "neg-rules": lambda: cb.neg_logic().rule_view(),
            "neg-matrix": lambda: cb.neg_logic().matrix_view(),
            "inconsistent": lambda: inconsistent_logic(cb.SL_SIG),
            "almost-inconsistent": lambda: almost_inconsistent_logic(cb.SL_SIG),
        }

    def bundle(self, path: str) -> dsl.WorkspaceBundle:
        if path not in self._bundles:
            with open(path, "r", encoding="utf-8") as fh:
                self._bundles[path] = dsl.parse_spec(fh.read())
        return self._bundles[path]

    def _split(self, ref: str) -> tuple[str, str]:
        if ":" not in ref:
            raise InputError(
                f"{ref!r} is not an object reference; use casebook:<name> or FILE:<name>"
            )
        head, _, name = ref.rpartition(":")
        return head, name

    def _casebook_algebra(self, name: str) -> FiniteAlgebra:
        if name in self._casebook_algebras:
            return self._casebook_algebras[name]()
        if name.startswith("A") and "k" in name:
            alpha_s, _, kappa_s = name[1:].partition("k")
            try:
                return cb.build_A_alpha_kappa(int(alpha_s), int(kappa_s))
            except ValueError:
                pass
        raise InputError(f"unknown casebook algebra {name!r}")

    def algebra(self, ref: str) -> FiniteAlgebra:
        head, name = self._split(ref)
        if head == "casebook":
            return self._casebook_algebra(name)
        bundle = self.bundle(head)
        if name in bundle.algebras:
            return bundle.algebras[name]
        if name in bundle.matrices:
            return bundle.matrices[name].algebra
        raise InputError(f"no algebra {name!r} in {head}")

    def matrix(self, ref: str, designated: str | None) -> Matrix:
        head, name = self._split(ref)
        if head == "casebook":
            if designated is None:
                if name == "A1":
                    return cb.matrix_A_1()
                if name == "Ac1":
                    return cb.matrix_A_c1()
                raise InputError("casebook algebras need --designated")
            alg = self._casebook_algebra(name)
        else:
            bundle = self.bundle(head)
            if name in bundle.matrices and designated is None:
                return bundle.matrices[name]
            if name in bundle.algebras:
                alg = bundle.algebras[name]
            elif name in bundle.matrices:
                alg = bundle.matrices[name].algebra
            else:
                raise InputError(f"no matrix or algebra {name!r} in {head}")
            if designated is None:
                raise InputError(f"algebra {name!r} needs --designated")
        elems = frozenset(
            alg.element(tok.strip()) for tok in designated.split(",") if tok.strip()
        ) if designated else frozenset()
        return Matrix(alg, elems)

    def logic(self, ref: str) -> Logic:
        head, name = self._split(ref)
        if head == "casebook":
            if name in self._casebook_logics:
                return self._casebook_logics[name]()
            if name.startswith("kappa"):
                try:
                    return cb.kappa_logic(int(name[5:]))
                except ValueError:
                    pass
            raise InputError(f"unknown casebook logic {name!r}")
        bundle = self.bundle(head)
        if name not in bundle.logics:
            raise InputError(f"no logic {name!r} in {head}")
        return bundle.logics[name]

    def translation(self, ref: str, source: Signature, target: Signature) -> Translation:
        if ref == "identity":
            from .terms import identity_translation

            return identity_translation(source, target)
        head, name = self._split(ref)
        if head == "casebook":
            raise InputError("casebook defines no named translations; use a file")
        bundle = self.bundle(head)
        if name not in bundle.translations:
            raise InputError(f"no translation {name!r} in {head}")
        return bundle.translations[name]


def _partition_payload(p, alg):
    return {
        "blocks": p.to_json(),
        "rendered": p.render(alg),
        "identity": p.is_identity(),
    }


def _emit(args, payload: dict, code: int) -> int:
    if args.format == "json":
        record = {"query": args.command, "answer": code == OK, "witness": payload}
        if getattr(args, "seed", None) is not None:
            record["seed"] = args.seed
        print(json.dumps(record, sort_keys=True, separators=(",", ":")))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")
    return code


def _terms_arg(text: str, sig: Signature) -> tuple[Term, ...]:
    parts = [p.strip() for p in text.split(";") if p.strip()]
    return tuple(dsl.parse_term_text(p, sig) for p in parts)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matlog",
        description="workbench for propositional logics over finite matrices",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--seed", type=int, default=None, help="seed recorded with randomized runs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a DSL file and report its contents")
    p.add_argument("file")

    for name, needs_logic in (("leibniz", False), ("suszko", True), ("reduce", False)):
        p = sub.add_parser(name)
        p.add_argument("target", help="matrix or algebra reference")
        p.add_argument("--designated", default=None, help="comma-separated elements")
        if needs_logic:
            p.add_argument("--logic", required=True)

    p = sub.add_parser("filters", help="enumerate deductive filters")
    p.add_argument("target", help="algebra reference")
    p.add_argument("--logic", required=True)

    p = sub.add_parser("fg", help="generate the least filter containing a seed")
    p.add_argument("target")
    p.add_argument("--logic", required=True)
    p.add_argument("--elements", default="", help="comma-separated seed elements")

    p = sub.add_parser("check-filter")
    p.add_argument("target")
    p.add_argument("--designated", default=None)
    p.add_argument("--logic", required=True)

    p = sub.add_parser("consequence")
    p.add_argument("--logic", required=True)
    p.add_argument("--premises", default="", help="semicolon-separated terms")
    p.add_argument("--conclusion", required=True)

    p = sub.add_parser("product", help="non-indexed product over the default snapshot")
    p.add_argument("factors", nargs="+", help="matrix references")
    p.add_argument("--designated", default=None, help="applies to every factor given as an algebra")

    p = sub.add_parser("flat")
    p.add_argument("target")
    p.add_argument("--designated", default=None)
    p.add_argument("--slot", type=int, required=True)
    p.add_argument("--count", type=int, required=True)

    p = sub.add_parser("fuse")
    p.add_argument("first")
    p.add_argument("second")

    p = sub.add_parser("matrix-power")
    p.add_argument("target", help="algebra reference")
    p.add_argument("--power", type=int, required=True)
    p.add_argument(
        "--descriptor",
        action="append",
        default=[],
        help="NAME: t1 | t2 | ... (one component term per coordinate)",
    )

    p = sub.add_parser("check-equivalential")
    p.add_argument("--logic", required=True)
    p.add_argument("--delta", required=True, help="semicolon-separated binary terms")

    p = sub.add_parser("check-interpretation")
    p.add_argument("--source", required=True, dest="source")
    p.add_argument("--target", required=True, dest="target")
    p.add_argument("--translation", required=True)
    p.add_argument("--mode", choices=("general", "equivalential"), default="general")
    p.add_argument("--delta", default=None)

    p = sub.add_parser("search-interpretation")
    p.add_argument("--source", required=True, dest="source")
    p.add_argument("--target", required=True, dest="target")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--mode", choices=("general", "equivalential"), default="general")
    p.add_argument("--delta", default=None)

    p = sub.add_parser("casebook")
    casebook_sub = p.add_subparsers(dest="casebook_command", required=True)
    casebook_sub.add_parser("list")
    v = casebook_sub.add_parser("verify")
    v.add_argument("entry", nargs="?", default=None)
    v.add_argument("--all", action="store_true")

    return parser


def _mode_name(mode: str) -> str:
    return interp.EQUIV_MODE if mode == "equivalential" else interp.GENERAL_MODE


def run(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    resolver = _Resolver()
    try:
        return _dispatch(args, resolver)
    except (InputError, FilterError, dsl.SpecError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def _dispatch(args, resolver: _Resolver) -> int:
    if args.command == "parse":
        with open(args.file, "r", encoding="utf-8") as fh:
            bundle = dsl.parse_spec(fh.read())
        payload = {
            "signatures": sorted(bundle.signatures),
            "algebras": sorted(bundle.algebras),
            "matrices": sorted(bundle.matrices),
            "logics": sorted(bundle.logics),
            "translations": sorted(bundle.translations),
        }
        return _emit(args, payload, OK)

    if args.command == "leibniz":
        m = resolver.matrix(args.target, args.designated)
        p = leibniz_congruence(m)
        return _emit(args, _partition_payload(p, m.algebra), OK)

    if args.command == "suszko":
        L = resolver.logic(args.logic)
        m = resolver.matrix(args.target, args.designated)
        p = suszko_congruence(L, m)
        return _emit(args, _partition_payload(p, m.algebra), OK)

    if args.command == "reduce":
        m = resolver.matrix(args.target, args.designated)
        red = reduce_matrix(m)
        return _emit(args, matrix_to_json(red), OK)

    if args.command == "filters":
        L = resolver.logic(args.logic)
        alg = resolver.algebra(args.target)
        filters = enumerate_filters(L, alg)
        payload = {"filters": [sorted(f) for f in filters], "count": len(filters)}
        return _emit(args, payload, OK)

    if args.command == "fg":
        L = resolver.logic(args.logic)
        alg = resolver.algebra(args.target)
        seed = frozenset(
            alg.element(tok.strip()) for tok in args.elements.split(",") if tok.strip()
        )
        out = generate_filter(L, alg, seed)
        return _emit(args, {"filter": sorted(out)}, OK)

    if args.command == "check-filter":
        L = resolver.logic(args.logic)
        m = resolver.matrix(args.target, args.designated)
        ok = is_filter(L, m)
        return _emit(args, {"is_filter": ok}, OK if ok else REFUTED)

    if args.command == "consequence":
        L = resolver.logic(args.logic)
        premises = _terms_arg(args.premises, L.signature)
        conclusion = dsl.parse_term_text(args.conclusion, L.signature)
        ok = consequence(L, premises, conclusion)
        return _emit(args, {"consequence": ok}, OK if ok else REFUTED)

    if args.command == "product":
        factors = [resolver.matrix(ref, args.designated) for ref in args.factors]
        snapshot = cons.default_snapshot([f.algebra.signature for f in factors])
        prod = cons.non_indexed_product(factors, snapshot)
        return _emit(args, matrix_to_json(prod), OK)

    if args.command == "flat":
        m = resolver.matrix(args.target, args.designated)
        sigs = [m.algebra.signature] * args.count
        out = cons.flat(m, args.slot, args.count, sigs)
        return _emit(args, matrix_to_json(out), OK)

    if args.command == "fuse":
        m1 = resolver.matrix(args.first, None)
        m2 = resolver.matrix(args.second, None)
        return _emit(args, matrix_to_json(cons.fuse(m1, m2)), OK)

    if args.command == "matrix-power":
        alg = resolver.algebra(args.target)
        oracle = matrix_power_oracle(alg, args.power)
        descriptors = []
        for spec in args.descriptor:
            name, _, rest = spec.partition(":")
            comps = tuple(
                dsl.parse_term_text(c.strip(), alg.signature)
                for c in rest.split("|")
            )
            arity = oracle.descriptor_arity(comps)
            descriptors.append((name.strip(), arity, comps))
        if not descriptors:
            raise InputError("matrix-power needs at least one --descriptor")
        out = oracle.materialize(descriptors)
        return _emit(args, algebra_to_json(out), OK)

    if args.command == "check-equivalential":
        L = resolver.logic(args.logic)
        delta = CongruenceFormulaSet(_terms_arg(args.delta, L.signature))
        ok = check_equivalential(L, delta)
        return _emit(args, {"equivalential": ok}, OK if ok else REFUTED)

    if args.command == "check-interpretation":
        source = resolver.logic(args.source)
        target = resolver.logic(args.target)
        tr = resolver.translation(args.translation, source.signature, target.signature)
        delta = (
            CongruenceFormulaSet(_terms_arg(args.delta, target.signature))
            if args.delta
            else None
        )
        cert = interp.check_interpretation(tr, source, target, _mode_name(args.mode), delta)
        return _emit(args, cert.to_json(), OK if cert.holds else REFUTED)

    if args.command == "search-interpretation":
        source = resolver.logic(args.source)
        target = resolver.logic(args.target)
        delta = (
            CongruenceFormulaSet(_terms_arg(args.delta, target.signature))
            if args.delta
            else None
        )
        res = interp.search_interpretation(
            source, target, args.depth, _mode_name(args.mode), delta
        )
        return _emit(args, res.to_json(), OK if res.found else REFUTED)

    if args.command == "casebook":
        if args.casebook_command == "list":
            return _emit(args, {"entries": sorted(cb.ENTRIES)}, OK)
        if args.entry is None and not getattr(args, "all", False):
            raise InputError("casebook verify needs an entry id or --all")
        reports = cb.verify_all() if args.all or args.entry is None else [cb.verify(args.entry)]
        payload = {"reports": [r.to_json() for r in reports]}
        ok = all(r.passed for r in reports)
        if args.format == "text":
            for r in reports:
                print(f"{'PASS' if r.passed else 'FAIL'} {r.entry}: {r.details}")
            return OK if ok else REFUTED
        return _emit(args, payload, OK if ok else REFUTED)

    raise InputError(f"unknown command {args.command!r}")


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
