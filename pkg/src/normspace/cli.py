"""Command-line entry point.

Exit codes: 0 success, 1 property failure (verify), 2 usage or validation error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import io as nio
from .embeddings import (
    embed_into_Sn,
    euclidean_embed,
    frechet_embed,
    metric_to_psi,
    sup_distances,
)
from .errors import NormSpaceError
from .metric import MAX_ISOMETRY_N, are_proportional, brute_force_isometry, log_distortion
from .norms import (
    NormSphere,
    OffCenterSphere,
    PNorm,
    distance_closed_form,
    estimate_distance,
    sample_domain,
    spec_from_json,
)
from .verify import SUITES, RunConfig, run_suite


class UsageError(Exception):
    pass


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _common(p: argparse.ArgumentParser):
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--refine-iters", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default="-", help="output path, '-' for stdout")


def _domain_flags(p: argparse.ArgumentParser):
    p.add_argument("--k", type=int, required=True, help="dimension")
    p.add_argument("--reference", help="NormSpec JSON file for the sphere (default: 2-norm)")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--center", help="comma-separated center of an off-center sphere")
    p.add_argument("--no-canonical", action="store_true", help="omit +-basis and all-ones points")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="normspace", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm-dist", help="distance between two norm classes")
    p.add_argument("spec_a")
    p.add_argument("spec_b")
    _domain_flags(p)
    _common(p)

    p = sub.add_parser("metric-dist", help="log-distortion between two metrics")
    p.add_argument("metric_a")
    p.add_argument("metric_b")
    p.add_argument("--isometry", action="store_true", help="also search for an isometry (n <= 9)")
    _common(p)

    p = sub.add_parser("embed", help="embeddings of a finite metric")
    p.add_argument("kind", choices=("frechet", "schoenberg", "sn", "psi"))
    p.add_argument("metric")
    p.add_argument("--n", type=int, help="target point count for 'sn'")
    p.add_argument("--base", type=int, default=0, help="base point for 'schoenberg'")
    p.add_argument("--no-rescale", action="store_true", help="'sn' without rescaling to diameter log 2")
    _common(p)

    p = sub.add_parser("sample-domain", help="draw a sample domain")
    _domain_flags(p)
    _common(p)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", choices=("all", *SUITES))
    _common(p)
    return parser


def _config(args) -> RunConfig:
    try:
        return RunConfig(seed=args.seed, samples=args.samples, refine_iters=args.refine_iters, tol=args.tol, threads=args.threads)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _domain(args, cfg: RunConfig):
    if args.center:
        center = np.array([float(v) for v in args.center.split(",")])
        kind = OffCenterSphere(center)
    else:
        ref = spec_from_json(json.loads(open(args.reference).read())) if args.reference else PNorm(2.0)
        kind = NormSphere(ref, args.radius)
    return sample_domain(kind, cfg.samples, cfg.seed, args.k, canonical=not args.no_canonical)


def _emit(args, payload, csv_rows=None):
    if args.format == "csv":
        if csv_rows is None:
            raise UsageError(f"--format csv is not available for '{args.command}'")
        text = nio.rows_to_csv(csv_rows)
    else:
        text = nio.dumps(payload) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)


def cmd_norm_dist(args) -> int:
    cfg = _config(args)
    a = nio.load_spec(args.spec_a)
    b = nio.load_spec(args.spec_b)
    dom = _domain(args, cfg)
    est = estimate_distance(a, b, dom, cfg.refine_iters, cfg.threads)
    out = est.to_json()
    out["closed_form"] = distance_closed_form(a, b, args.k)
    _emit(args, out)
    return 0


def cmd_metric_dist(args) -> int:
    _config(args)
    r1, r2 = nio.load_metric(args.metric_a), nio.load_metric(args.metric_b)
    out = {"distance": log_distortion(r1, r2), "scale": are_proportional(r1, r2)}
    if args.isometry:
        out["isometry"] = list(brute_force_isometry(r1, r2) or []) if r1.n <= MAX_ISOMETRY_N else None
        out["isometric"] = bool(out["isometry"])
    _emit(args, out)
    return 0


def cmd_embed(args) -> int:
    cfg = _config(args)
    r = nio.load_metric(args.metric)
    if args.kind == "frechet":
        coords = frechet_embed(r)
        err = float(np.abs(sup_distances(coords) - r.matrix).max())
        _emit(args, {"coords": coords, "sup_norm_error": err}, coords)
    elif args.kind == "schoenberg":
        rep = euclidean_embed(r, base=args.base, tol=cfg.tol)
        _emit(args, rep.to_json(), rep.coords)
    elif args.kind == "sn":
        if args.n is None:
            raise UsageError("'embed sn' needs --n")
        rep = embed_into_Sn(r, args.n, rescale=not args.no_rescale)
        _emit(args, rep.to_json())
    else:
        psi = metric_to_psi(r)
        _emit(args, psi.to_json(), [psi.psi])
    return 0


def cmd_sample_domain(args) -> int:
    cfg = _config(args)
    dom = _domain(args, cfg)
    _emit(args, dom.to_json(), dom.points)
    return 0


def cmd_verify(args) -> int:
    cfg = _config(args)
    print(f"verify {args.suite}: seed={cfg.seed}", file=sys.stderr)
    t0 = time.perf_counter()
    results = run_suite(args.suite, cfg)
    for r in results:
        status = "ok" if r.passed else f"FAILED ({len(r.failures)})"
        print(f"  {r.name:<11} {r.cases:5d} cases  {r.wall_time:6.2f}s  {status}", file=sys.stderr)
    print(f"  total {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    passed = all(r.passed for r in results)
    report = {
        "seed": cfg.seed,
        "samples": cfg.samples,
        "refine_iters": cfg.refine_iters,
        "tol": cfg.tol,
        "passed": passed,
        "suites": [r.to_json() for r in results],
    }
    _emit(args, report)
    return 0 if passed else 1


COMMANDS = {
    "norm-dist": cmd_norm_dist,
    "metric-dist": cmd_metric_dist,
    "embed": cmd_embed,
    "sample-domain": cmd_sample_domain,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        return COMMANDS[args.command](args)
    except (NormSpaceError, UsageError, OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal error
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
