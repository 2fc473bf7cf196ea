"""Command-line interface: ``zfun <subcommand>``.

Exit codes: 0 when the requested checks pass, 1 when a check fails, 2 for
usage, file or contract errors.  JSON results go to --output (or stdout);
human-readable summaries and timings go to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import fileio
from .errors import AxiomViolation, FormatError, ZfunError
from .kantorovich import kantorovich_dual, kantorovich_primal
from .measures import pushforward
from .numbers import DEFAULT_FLOAT_TOLERANCE, mode_from_name
from .scheme import (
    build_finite_fixture,
    decompose_automorphism,
    extend_map,
    member_space,
)
from .spaces import (
    compose,
    glue_space,
    identity_map,
    image,
    is_injective,
    is_surjective,
    metric_map,
)
from .suites import CheckRecord, Report, RunConfig, run_suite


def _shared_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--mode", choices=("exact", "float"), default="exact",
        help="exact rational arithmetic (default) or tolerant floats",
    )
    common.add_argument(
        "--tolerance", type=float, default=DEFAULT_FLOAT_TOLERANCE,
        help="comparison tolerance for float mode (default 1e-9)",
    )
    common.add_argument(
        "--seed", type=int, default=None,
        help="random seed (default: ZFUN_SEED environment variable, then 0)",
    )
    common.add_argument(
        "-o", "--output", metavar="PATH", default=None,
        help="write the JSON result here instead of stdout",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zfun",
        description="exact finite metric spaces, measures, gluing and extension checks",
    )
    common = _shared_flags()
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("validate", parents=[common],
                       help="check the metric axioms of a space file")
    p.add_argument("space", help="space JSON file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("dist", parents=[common],
                       help="Kantorovich distance between two measure files")
    p.add_argument("mu", help="first measure JSON file")
    p.add_argument("nu", help="second measure JSON file")
    p.add_argument("--certificate", choices=("plan", "potential", "both"),
                   default="both", help="which optimality certificate to emit")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("glue", parents=[common],
                       help="adjoin the anchor to a space file")
    p.add_argument("space", help="space JSON file")
    p.add_argument("--anchor", default=None,
                   help="anchor space JSON file (default: two points at distance 1)")
    p.set_defaults(func=cmd_glue)

    p = sub.add_parser("push", parents=[common],
                       help="pushforward of a measure along a map")
    p.add_argument("map", help="map JSON file")
    p.add_argument("measure", help="measure JSON file")
    p.set_defaults(func=cmd_push)

    p = sub.add_parser("extend", parents=[common],
                       help="extend a map between fixture subsets to the ambient space")
    p.add_argument("map", help="map JSON file (domain/codomain may be label lists)")
    p.add_argument("--fixture", default=None,
                   help="fixture JSON file: {\"n\", \"k\", \"seed\", \"h_seed\"?}")
    p.add_argument("--n", type=int, default=None, help="ambient size (alternative to --fixture)")
    p.add_argument("--k", type=int, default=None, help="subset size (alternative to --fixture)")
    p.add_argument("--fixture-seed", type=int, default=None,
                   help="fixture seed (defaults to the global seed)")
    p.add_argument("--check-laws", action="store_true",
                   help="also verify identity/composition laws and "
                        "injectivity/surjectivity/image transfer")
    p.add_argument("--decompose", action="store_true",
                   help="treat the map as an ambient bijection and factor it")
    p.add_argument("--subset", default=None,
                   help="comma-separated member labels (required with --decompose)")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("check", parents=[common],
                       help="run a property-check suite and report")
    p.add_argument("suite", choices=("metric", "measure", "kantorovich",
                                     "scheme", "step", "all"))
    p.add_argument("--trials", type=int, default=100,
                   help="randomized instances per record (default 100)")
    p.add_argument("--n", type=int, default=4, help="fixture ambient size")
    p.add_argument("--k", type=int, default=2, help="fixture subset size")
    p.add_argument("--inject-glue-defect", action="store_true",
                   help="harness self-test: corrupt one glue cross-distance")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("report", parents=[common],
                       help="pretty-print a saved report and exit by its pass flag")
    p.add_argument("report", help="report JSON file")
    p.set_defaults(func=cmd_report)

    return parser


def _mode(args):
    return mode_from_name(args.mode, args.tolerance)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("ZFUN_SEED", "0"))


def _emit(obj, args) -> None:
    text = fileio.dump_json(obj, args.output)
    if args.output is None:
        sys.stdout.write(text)


def _print_records(report_obj, stream) -> None:
    for record in report_obj.get("records", ()):
        status = "PASS" if not record.get("failures") else "FAIL"
        print(
            f"{status} {record.get('name')} [{record.get('tag')}] "
            f"instances={record.get('instances')} "
            f"failures={len(record.get('failures', ()))}",
            file=stream,
        )


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    mode = _mode(args)
    raw = fileio.load_json(args.space)
    record = CheckRecord("metric-axioms", "plumbing")
    record.instances = 1
    try:
        fileio.space_from_obj(raw, mode, Path(args.space).parent)
    except AxiomViolation as exc:
        for axiom, witness in exc.violations:
            record.failures.append({"axiom": axiom, "witness": list(witness)})
    cfg = RunConfig(mode=mode, seed=_seed(args), trials=1)
    report = Report("validate", cfg, [record])
    _emit(report.as_dict(), args)
    _print_records(report.as_dict(), sys.stderr)
    return 0 if report.passed else 1


def cmd_dist(args) -> int:
    mode = _mode(args)
    mu = fileio.load_measure(args.mu, mode)
    nu = fileio.load_measure(args.nu, mode)
    start = time.monotonic()
    dual_value, potential = kantorovich_dual(mu, nu, mode)
    primal_value, plan = kantorovich_primal(mu, nu, mode)
    elapsed = time.monotonic() - start
    gap = primal_value - dual_value
    passed = mode.eq(gap, mode.zero)
    certificate = {}
    if args.certificate in ("potential", "both"):
        certificate["potential"] = fileio.potential_to_obj(potential)
    if args.certificate in ("plan", "both"):
        certificate["plan"] = fileio.plan_to_obj(plan)
    out = {
        "command": "dist",
        "mode": mode.kind,
        "value": fileio.format_number(dual_value),
        "gap": fileio.format_number(gap),
        "certificate": certificate,
        "pass": passed,
    }
    _emit(out, args)
    print(f"dist: value={out['value']} gap={out['gap']} ({elapsed:.3f}s)",
          file=sys.stderr)
    return 0 if passed else 1


def cmd_glue(args) -> int:
    mode = _mode(args)
    space = fileio.load_space(args.space, mode)
    anchor = fileio.load_space(args.anchor, mode) if args.anchor else None
    glued = glue_space(space, anchor, mode)
    _emit(fileio.space_to_obj(glued), args)
    return 0


def cmd_push(args) -> int:
    mode = _mode(args)
    f = fileio.load_map(args.map, mode)
    mu = fileio.load_measure(args.measure, mode)
    nu = pushforward(f, mu, mode)
    _emit(fileio.measure_to_obj(nu), args)
    return 0


def _fixture_from_args(args, mode, seed):
    if args.fixture:
        desc = fileio.load_json(args.fixture)
        if not isinstance(desc, dict) or "n" not in desc or "k" not in desc:
            raise FormatError("a fixture file needs at least 'n' and 'k'")
        n, k = int(desc["n"]), int(desc["k"])
        fixture_seed = int(desc.get("seed", seed))
        h_seed = desc.get("h_seed")
        h_seed = int(h_seed) if h_seed is not None else None
        ambient = None
        if "ambient" in desc:
            ambient = fileio.space_from_obj(
                desc["ambient"], mode, Path(args.fixture).parent
            )
        return build_finite_fixture(n, k, fixture_seed, mode,
                                    ambient=ambient, h_seed=h_seed)
    if args.n is None or args.k is None:
        raise FormatError("extend needs --fixture FILE or both --n and --k")
    fixture_seed = args.fixture_seed if args.fixture_seed is not None else seed
    return build_finite_fixture(args.n, args.k, fixture_seed, mode)


def _member_labels(raw):
    """Accept a bare label list or a space object; return the labels."""
    if isinstance(raw, list):
        return raw
    if isinstance(raw, dict) and "points" in raw:
        return raw["points"]
    raise FormatError("domain/codomain must be a label list or a space object")


def cmd_extend(args) -> int:
    mode = _mode(args)
    seed = _seed(args)
    ctx = _fixture_from_args(args, mode, seed)
    raw = fileio.load_json(args.map)
    if not isinstance(raw, dict) or "assignment" not in raw:
        raise FormatError("a map file needs an 'assignment' object")

    if args.decompose:
        if not args.subset:
            raise FormatError("--decompose requires --subset with member labels")
        member = ctx.member(label.strip() for label in args.subset.split(","))
        h = metric_map(ctx.ambient, ctx.ambient, raw["assignment"])
        u, v = decompose_automorphism(ctx, member, h)
        check = compose(u, v) == h and all(u(x) == x for x in member)
        out = {
            "command": "extend --decompose",
            "ambient": list(ctx.ambient.points),
            "subset": list(member),
            "fixes_subset_pointwise": dict(u.assignment),
            "extends_restriction": dict(v.assignment),
            "pass": bool(check),
        }
        _emit(out, args)
        return 0 if check else 1

    dom = member_space(ctx, _member_labels(raw.get("domain")))
    cod = member_space(ctx, _member_labels(raw.get("codomain")))
    phi = metric_map(dom, cod, raw["assignment"])
    result = extend_map(ctx, phi)
    hat = result.extension

    records = []
    rec = CheckRecord("extension-restricts", "(b)")
    rec.instances = len(dom.points)
    for x in dom.points:
        if hat(x) != phi(x):
            rec.fail(0, point=x, original=phi(x), extension=hat(x))
    records.append(rec)

    if args.check_laws:
        rec = CheckRecord("identity-law", "(a)")
        rec.instances = 1
        ident = extend_map(ctx, identity_map(dom)).extension
        if ident != identity_map(ctx.ambient):
            rec.fail(0, law="identity extension differs from the ambient identity")
        if extend_map(ctx, compose(phi, identity_map(dom))).extension != compose(
            hat, ident
        ):
            rec.fail(0, law="composition with the identity is not preserved")
        records.append(rec)

        rec = CheckRecord("injectivity-transfer", "(c)")
        rec.instances = 1
        if is_injective(hat) != is_injective(phi):
            rec.fail(0, original=is_injective(phi), extension=is_injective(hat))
        records.append(rec)

        rec = CheckRecord("image-trace", "(d)")
        rec.instances = 1
        trace = set(image(hat)) & set(cod.points)
        if trace != set(image(phi)):
            rec.fail(0, trace=sorted(trace), expected=sorted(image(phi)))
        records.append(rec)

        rec = CheckRecord("surjectivity-transfer", "(e)")
        rec.instances = 1
        if is_surjective(hat) != is_surjective(phi):
            rec.fail(0, original=is_surjective(phi), extension=is_surjective(hat))
        records.append(rec)

    cfg = RunConfig(mode=mode, seed=seed, trials=1,
                    n=len(ctx.ambient.points), k=ctx.subset_size)
    report = Report("extend", cfg, records)
    out = report.as_dict()
    out["original"] = dict(phi.assignment)
    out["conjugate"] = dict(result.conjugate.assignment)
    out["extension"] = dict(hat.assignment)
    _emit(out, args)
    _print_records(out, sys.stderr)
    return 0 if report.passed else 1


def cmd_check(args) -> int:
    mode = _mode(args)
    cfg = RunConfig(
        mode=mode,
        seed=_seed(args),
        trials=args.trials,
        n=args.n,
        k=args.k,
        inject_glue_defect=args.inject_glue_defect,
    )
    report = run_suite(args.suite, cfg)
    _emit(report.as_dict(), args)
    _print_records(report.as_dict(), sys.stderr)
    print(
        f"check {args.suite}: {'PASS' if report.passed else 'FAIL'} "
        f"({len(report.records)} records, {report.duration:.3f}s)",
        file=sys.stderr,
    )
    return 0 if report.passed else 1


def cmd_report(args) -> int:
    obj = fileio.load_json(args.report)
    if not isinstance(obj, dict) or "pass" not in obj:
        raise FormatError("not a report: missing 'pass'")
    stream = sys.stdout if args.output is None else sys.stderr
    print(f"command: {obj.get('command', '?')}", file=stream)
    _print_records(obj, stream)
    passed = bool(obj["pass"])
    print("PASS" if passed else "FAIL", file=stream)
    return 0 if passed else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ZfunError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
