"""Command-line front end.

Commands: qexp, dims, hilbert, verify, catalog.  Exit codes: 0 all
checks pass, 1 verification failure, 2 unknown entity, 3 bad
configuration.  All configuration comes from flags and the catalog
file; there is no environment-variable configuration.
"""

from __future__ import annotations

import argparse
import json
import sys

from .catalog import Catalog, load_catalog
from .errors import MfringError, OutOfTable, UnknownForm, UnknownIdentity
from .hilbert import HilbertSeries
from .verify import CaseRunner, VerificationReport, full_report

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_UNKNOWN = 2
EXIT_BAD_CONFIG = 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load(args) -> Catalog:
    return load_catalog(args.catalog)


def _parse_group(catalog: Catalog, text: str):
    try:
        if text == "full":
            return catalog.group_by_key("full", 1)
        parts = text.split(":")
        if parts[0] == "gamma0" and len(parts) == 2:
            return catalog.group_by_key("gamma0", int(parts[1]))
        if parts[0] == "gammaH" and len(parts) == 3:
            gens = parts[2].strip()
            if not (gens.startswith("[") and gens.endswith("]")):
                raise CliError(f"bad subgroup list in {text!r}", EXIT_BAD_CONFIG)
            H = [int(x) for x in gens[1:-1].split(",") if x.strip()]
            return catalog.group_by_key("gammaH", int(parts[1]), H)
    except OutOfTable as exc:
        raise CliError(str(exc), EXIT_UNKNOWN)
    except ValueError:
        pass
    raise CliError(f"cannot parse group {text!r} "
                   "(expected full, gamma0:<N> or gammaH:<N>:[a,b])", EXIT_BAD_CONFIG)


def cmd_qexp(args) -> int:
    catalog = _load(args)
    if args.prec < 1:
        raise CliError("--prec must be at least 1", EXIT_BAD_CONFIG)
    name = args.name
    # CLI alias theta<h> for the q -> q^h image of theta
    try:
        series = catalog.lookup_form(name, args.prec)
    except (UnknownForm, MfringError) as exc:
        raise CliError(f"unknown series {name!r}: {exc}", EXIT_UNKNOWN)
    if args.output == "json":
        print(json.dumps({"name": name, "prec": args.prec, "series": str(series)}))
    else:
        print(series)
    return EXIT_OK


def cmd_dims(args) -> int:
    catalog = _load(args)
    if args.kmax < 0:
        raise CliError("--kmax must be nonnegative", EXIT_BAD_CONFIG)
    group = _parse_group(catalog, args.group)
    rows = []
    for k in range(0, args.kmax + 1):
        try:
            rows.append((k, catalog.dim2(group.label, 2 * k)))
        except OutOfTable:
            continue
    if args.output == "json":
        print(json.dumps({"group": args.group, "dims": rows}))
    else:
        for k, d in rows:
            print(f"k={k}: {d}")
    return EXIT_OK


def cmd_hilbert(args) -> int:
    catalog = _load(args)
    if args.horizon < 0:
        raise CliError("--horizon must be nonnegative", EXIT_BAD_CONFIG)
    label = args.case
    if label not in catalog.cases:
        raise CliError(f"unknown case {label!r}", EXIT_UNKNOWN)
    pres = catalog.cases[label].presentation
    if pres is None or pres.hilbert_num is None:
        raise CliError(f"case {label!r} has no claimed Hilbert series", EXIT_UNKNOWN)
    hs = HilbertSeries(pres.hilbert_num, pres.hilbert_den)
    horizon2 = 2 * args.horizon
    runner = CaseRunner(catalog, catalog.cases[label], presentation=True)
    coeffs = hs.expand(horizon2)
    dims = []
    for j2 in range(horizon2 + 1):
        try:
            dims.append(runner.dim2(j2) if j2 else 1)
        except OutOfTable:
            dims.append(None)
    mismatches = [
        j2 for j2, (c, d) in enumerate(zip(coeffs, dims))
        if d is not None and c != d
    ]
    if args.output == "json":
        print(json.dumps({"case": label, "series": hs.render(),
                          "expansion": coeffs, "dims": dims,
                          "mismatched_weights2": mismatches}))
    else:
        print(hs.render())
        print("expansion:", ",".join(str(c) for c in coeffs))
        print("dims:     ", ",".join("-" if d is None else str(d) for d in dims))
        if mismatches:
            print("MISMATCH at doubled weights", mismatches)
    return EXIT_VERIFY_FAILED if mismatches else EXIT_OK


_SELECTORS = {
    "identity": {"identity"},
    "span": {"span"},
    "relations": {"relation"},
    "kernel": {"kernel"},
    "hilbert": {"hilbert"},
    "integrality": {"integrality"},
    "presentation": {"relation", "kernel", "hilbert"},
    "all": {"identity", "span", "relation", "kernel", "hilbert", "integrality"},
}


def _check_prec_override(catalog: Catalog, checks, labels, prec: int):
    """Refuse overrides below the certified cutoff of any selected check."""
    needed = []
    for label, case in catalog.cases.items():
        if labels is not None and label not in labels:
            continue
        if "span" in checks and case.span_gens is not None:
            needed.append((label, "span", catalog.sturm2(case.group, case.span_kmax2 or 8)))
        pres = case.presentation
        if pres is not None and pres.relations:
            half = any(g.w2 % 2 for g in catalog.case_gens(case, presentation=True))
            if "relation" in checks:
                w2 = max(r.w2 for r in pres.relations)
                needed.append((label, "relation",
                               catalog.sturm2(case.group, 2 * w2 if half else w2)))
            if "kernel" in checks and case.kernel_kmax2:
                needed.append((label, "kernel", catalog.sturm2(case.group, case.kernel_kmax2)))
    for name, ident in catalog.identities.items():
        if "identity" not in checks or (labels is not None and name not in labels):
            continue
        w2 = 2 * ident.w2 if ident.half_members else ident.w2
        needed.append((name, "identity", catalog.sturm2(ident.group, w2)))
    for label, kind, bound in needed:
        if prec < bound:
            raise CliError(
                f"--prec {prec} is below the certified cutoff {bound} for "
                f"{kind} check of {label!r}; refusing to run an uncertified check",
                EXIT_BAD_CONFIG,
            )


def cmd_verify(args) -> int:
    catalog = _load(args)
    checks = _SELECTORS[args.selector]
    labels = args.case or None
    if labels:
        known = set(catalog.cases) | set(catalog.identities) | {"alpha1", "alpha7"}
        for label in labels:
            if label not in known:
                raise CliError(f"unknown case {label!r}", EXIT_UNKNOWN)
    kmax2 = None
    if args.kmax is not None:
        if args.kmax < 1:
            raise CliError("--kmax must be at least 1", EXIT_BAD_CONFIG)
        kmax2 = 2 * args.kmax
    if args.prec is not None:
        if args.prec < 1:
            raise CliError("--prec must be at least 1", EXIT_BAD_CONFIG)
        _check_prec_override(catalog, checks, labels, args.prec)
    horizon2 = 2 * args.horizon if args.horizon is not None else 40
    reports = full_report(catalog, checks=checks, cases=labels,
                          kmax2=kmax2, prec_override=args.prec, horizon2=horizon2)
    failed = False
    for r in reports:
        failed = failed or r.status == "fail"
        if args.output == "json":
            print(r.to_json())
        else:
            print(_pretty(r))
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def _half(j2: int) -> str:
    return str(j2 // 2) if j2 % 2 == 0 else f"{j2}/2"


def _pretty(r: VerificationReport) -> str:
    head = f"[{r.status.upper():7s}] {r.case:12s} {r.check:11s} " \
           f"weights {_half(r.k_range[0])}..{_half(r.k_range[1])} prec {r.precision} " \
           f"({r.elapsed_ms} ms)"
    if r.status == "pass":
        return head
    return head + "  " + json.dumps(r.details)


def cmd_catalog_list(args) -> int:
    catalog = _load(args)
    print("cases:")
    for label, case in sorted(catalog.cases.items()):
        bits = []
        if case.span_gens:
            bits.append(f"span({len(case.span_gens)} gens, kmax2={case.span_kmax2})")
        if case.presentation:
            pres = case.presentation
            if pres.relations_unknown:
                bits.append("relations unknown")
            elif pres.relations:
                bits.append(f"relations({len(pres.relations)})")
            if pres.hilbert_num is not None:
                bits.append("hilbert")
        print(f"  {label:12s} group={case.group:8s} L={case.L:<3d} " + ", ".join(bits))
    print("identities:", ", ".join(sorted(catalog.identities)))
    print("forms:", ", ".join(sorted(catalog.forms)))
    print(f"decomposition tables (unverified metadata): {len(catalog.decompositions)} groups")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mfring",
        description="Exact q-expansions and machine verification of graded rings "
                    "of modular forms.",
    )
    parser.add_argument("--catalog", default=None, help="alternative catalog JSON path")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qexp", help="print a q-expansion")
    p.add_argument("name")
    p.add_argument("--prec", type=int, default=10)
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_qexp)

    p = sub.add_parser("dims", help="print dimension table values")
    p.add_argument("--group", required=True, help="full | gamma0:<N> | gammaH:<N>:[a,b]")
    p.add_argument("--kmax", type=int, default=10)
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("hilbert", help="print a claimed Hilbert series and its expansion")
    p.add_argument("--case", required=True)
    p.add_argument("--horizon", type=int, default=20)
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("verify", help="run verification checks")
    p.add_argument("selector", choices=sorted(_SELECTORS))
    p.add_argument("--case", action="append", help="restrict to case/identity labels")
    p.add_argument("--kmax", type=int, default=None, help="override top weight (integer)")
    p.add_argument("--prec", type=int, default=None, help="override working precision")
    p.add_argument("--horizon", type=int, default=None, help="Hilbert comparison horizon")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="catalog inspection")
    p.add_argument("action", choices=("list",))
    p.set_defaults(func=cmd_catalog_list)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (UnknownForm, UnknownIdentity, OutOfTable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except MfringError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG


if __name__ == "__main__":
    sys.exit(main())
