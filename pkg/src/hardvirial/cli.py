"""Command-line front end wiring shapes, diagrams, and sampler configs to
the three computation routes.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import clusters, measures, spectral, verify
from .geometry import BALL, DISK, SPHEROCYLINDER, Shape
from .montecarlo import SamplerConfig, cluster_integral_mc, virial_coefficient_mc

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


class ShapeParseError(ValueError):
    pass


def parse_shape(spec: str) -> Shape:
    """Parse ``ball:r=<f>``, ``disk:r=<f>``, ``spherocylinder:r=<f>,l=<f>``."""
    kind, _, rest = spec.partition(":")
    if kind not in (BALL, DISK, SPHEROCYLINDER):
        raise ShapeParseError(f"unsupported shape kind {kind!r} in {spec!r}")
    params = {}
    for token in filter(None, rest.split(",")):
        key, eq, value = token.partition("=")
        if not eq or key not in ("r", "l"):
            raise ShapeParseError(f"bad shape parameter token {token!r} in {spec!r}")
        try:
            params[key] = float(value)
        except ValueError:
            raise ShapeParseError(f"bad number in token {token!r} of {spec!r}") from None
    allowed = {"r", "l"} if kind == SPHEROCYLINDER else {"r"}
    if set(params) != allowed:
        raise ShapeParseError(f"{kind} takes parameters {sorted(allowed)}, got {sorted(params)} in {spec!r}")
    try:
        if kind == SPHEROCYLINDER:
            return Shape(kind, params["r"], params["l"])
        return Shape(kind, params["r"])
    except ValueError as exc:
        raise ShapeParseError(f"invalid shape {spec!r}: {exc}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hardvirial")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, sampling=True):
        p.add_argument("--shape", help="shape spec, e.g. ball:r=0.5")
        p.add_argument("--shape2", help="second shape spec (pair quantities)")
        p.add_argument("--out", choices=("json", "csv", "text"), default=None)
        p.add_argument("--config", help="JSON file of defaults, overridden by flags")
        p.add_argument("--tol", type=float, default=None, help="quadrature tolerance override")
        if sampling:
            p.add_argument("--samples", type=int, default=None)
            p.add_argument("--seed", type=int, default=None)
            p.add_argument("--workers", type=int, default=None)
            p.add_argument("--batch", type=int, default=None)

    p = sub.add_parser("b2", help="second virial coefficient")
    p.add_argument("--method", choices=("mc", "kinematic", "fourier"), default=None)
    add_common(p)

    p = sub.add_parser("virial", help="virial coefficient B_N by Monte Carlo")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--method", choices=("mc", "kinematic"), default=None)
    add_common(p)

    p = sub.add_parser("cluster", help="cluster integral of one diagram")
    p.add_argument("--graph", required=True, help="graph literal order:N;edges:1-2,...")
    p.add_argument("--method", choices=("mc", "fourier"), default=None)
    add_common(p)

    p = sub.add_parser("ring", help="m-ring diagram by Fourier quadrature")
    p.add_argument("--m", type=int, required=True)
    add_common(p, sampling=False)

    p = sub.add_parser("graphs", help="enumerate star diagrams")
    p.add_argument("--order", type=int, required=True)
    add_common(p, sampling=False)

    p = sub.add_parser("verify", help="run the cross-route identity suite")
    p.add_argument("--suite", choices=verify.SUITES, default=None)
    add_common(p, sampling=False)
    return parser


def _apply_config(args):
    if getattr(args, "config", None):
        with open(args.config) as fh:
            defaults = json.load(fh)
        for key, value in defaults.items():
            if getattr(args, key, None) is None and hasattr(args, key):
                setattr(args, key, value)
    for key, value in (
        ("out", "text"),
        ("method", None),
        ("samples", 1_000_000),
        ("seed", 0),
        ("workers", 1),
        ("batch", 0),
    ):
        if hasattr(args, key) and getattr(args, key) is None and value is not None:
            setattr(args, key, value)
    return args


def _sampler(args) -> SamplerConfig:
    return SamplerConfig(
        seed=args.seed, samples=args.samples, workers=args.workers, batch=args.batch
    )


def _need_shape(args) -> Shape:
    if not args.shape:
        raise ShapeParseError("--shape is required for this command")
    return parse_shape(args.shape)


def _emit(report: dict, out: str) -> None:
    if out == "json":
        print(json.dumps(report))
    elif out == "csv":
        flat = {}
        for key, value in report.items():
            if isinstance(value, dict):
                flat.update({f"{key}.{k}": v for k, v in value.items()})
            elif not isinstance(value, list):
                flat[key] = value
        print(",".join(str(k) for k in flat))
        print(",".join(str(v) for v in flat.values()))
    else:
        for key, value in report.items():
            if key == "checks":
                for check in value:
                    status = "PASS" if check["passed"] else "FAIL"
                    print(f"[{status}] {check['suite']}: {check['name']} ({check['detail']})")
            elif key == "stars":
                for entry in value:
                    print(
                        f"  {entry['graph']}  x{entry['labeled_count']}  "
                        f"degrees={entry['degrees']} loops={entry['loops']} "
                        f"|Aut|={entry['automorphisms']}"
                    )
            else:
                print(f"{key}: {value}")


def _cmd_b2(args):
    shape = _need_shape(args)
    other = parse_shape(args.shape2) if args.shape2 else shape
    method = args.method or "kinematic"
    report = {
        "command": "b2",
        "inputs": {"shape": args.shape, "shape2": args.shape2 or args.shape},
        "method": method,
    }
    if method == "kinematic":
        report["value"] = measures.kinematic_b2(shape, other)
    elif method == "fourier":
        report["value"] = -spectral.f_fourier(spectral.kernel_for(shape, other), 0.0) / 2.0
    else:
        if other != shape:
            raise ShapeParseError("the MC route estimates identical-particle coefficients")
        est = virial_coefficient_mc(2, shape, _sampler(args))
        report.update(value=est.mean, stderr=est.stderr, samples=est.samples, seed=est.seed)
    return report


def _cmd_virial(args):
    shape = _need_shape(args)
    method = args.method or "mc"
    report = {
        "command": "virial",
        "inputs": {"shape": args.shape, "order": args.order},
        "method": method,
    }
    if method == "kinematic":
        if args.order != 2:
            raise ShapeParseError("the kinematic route gives B2 only")
        report["value"] = measures.kinematic_b2(shape, shape)
    else:
        est = virial_coefficient_mc(args.order, shape, _sampler(args))
        report.update(value=est.mean, stderr=est.stderr, samples=est.samples, seed=est.seed)
    return report


def _cmd_cluster(args):
    shape = _need_shape(args)
    graph = clusters.parse_graph(args.graph)
    method = args.method or "mc"
    report = {
        "command": "cluster",
        "inputs": {"shape": args.shape, "graph": args.graph},
        "method": method,
    }
    if method == "fourier":
        kwargs = {"rtol": args.tol} if args.tol else {}
        report["value"] = spectral.loop_evaluate(graph, spectral.kernel_for(shape), **kwargs)
    else:
        est = cluster_integral_mc(graph, shape, _sampler(args))
        report.update(value=est.mean, stderr=est.stderr, samples=est.samples, seed=est.seed)
    return report


def _cmd_ring(args):
    shape = _need_shape(args)
    kwargs = {"rtol": args.tol} if args.tol else {}
    value = spectral.ring_integral(args.m, spectral.kernel_for(shape), **kwargs)
    return {
        "command": "ring",
        "inputs": {"shape": args.shape, "m": args.m},
        "method": "fourier",
        "value": value,
    }


def _cmd_graphs(args):
    stars = clusters.enumerate_stars(args.order)
    entries = []
    for g, count in stars:
        entries.append(
            {
                "graph": clusters.format_graph(g),
                "labeled_count": count,
                "degrees": list(clusters.vertex_split(g)),
                "loops": clusters.cyclomatic_number(g),
                "automorphisms": clusters.automorphism_order(g),
            }
        )
    return {
        "command": "graphs",
        "inputs": {"order": args.order},
        "method": "enumeration",
        "value": len(entries),
        "stars": entries,
    }


def _cmd_verify(args):
    results = verify.run_suite(args.suite)
    failures = sum(not r.passed for r in results)
    report = {
        "command": "verify",
        "inputs": {"suite": args.suite or "all"},
        "method": "identities",
        "value": failures,
        "checks": [
            {"suite": r.suite, "name": r.name, "passed": r.passed, "detail": r.detail}
            for r in results
        ],
    }
    return report, failures


def run(argv=None) -> int:
    """Parse argv, execute one subcommand, print its report; returns the
    process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args = _apply_config(args)
        started = time.perf_counter()
        failures = 0
        if args.command == "b2":
            report = _cmd_b2(args)
        elif args.command == "virial":
            report = _cmd_virial(args)
        elif args.command == "cluster":
            report = _cmd_cluster(args)
        elif args.command == "ring":
            report = _cmd_ring(args)
        elif args.command == "graphs":
            report = _cmd_graphs(args)
        else:
            report, failures = _cmd_verify(args)
        report["runtime_ms"] = round(1000.0 * (time.perf_counter() - started), 3)
    except (ShapeParseError, clusters.UnsupportedOrderError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (spectral.QuadratureError,) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report, args.out)
    if args.command == "verify" and failures:
        return EXIT_VERIFY
    return EXIT_OK


def console_main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    console_main()
