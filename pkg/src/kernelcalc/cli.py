"""Command-line front end.

Subcommands: eval, psd, wallach, norm, bound, quasi, repro.  JSON is the
default output format; `psd --format csv` emits the Gram spectrum as CSV.
Every flag can also be supplied through a JSON config file (--config);
explicit flags win over config values.

Exit codes: 0 success, 2 configuration or parse error, 3 evaluation error,
4 scan bracket failure (no sign change in the scanned interval).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .automorphisms import CocycleSpec, MobiusMap, curvature_quasi_check
from .errors import BracketError, KernelCalcError, ParseError
from .geometry import sample_points, unit_ball, unit_disc
from .parser import parse_kernel
from .positivity import DEFAULT_TOL, gram, psd_check, wallach_scan
from .repro import run_all
from .rkhs import multiplier_bound, z2_tensor_e1_norm

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_EVAL = 3
EXIT_BRACKET = 4


def _parse_point(text: str) -> tuple[complex, ...]:
    try:
        return tuple(complex(c.strip().replace("i", "j")) for c in text.split(","))
    except ValueError as exc:
        raise ParseError(f"bad point {text!r}: {exc}", 0)


def _domain_for(m: int, radius: float):
    return unit_disc(radius) if m == 1 else unit_ball(m, radius)


def _provenance(args, kernel: str | None) -> dict:
    out = {"version": __version__}
    if kernel is not None:
        out["kernel"] = kernel
    if getattr(args, "seed", None) is not None:
        out["seed"] = args.seed
    if getattr(args, "tol", None) is not None:
        out["tol"] = args.tol
    return out


def _emit(args, payload: dict) -> None:
    text = json.dumps(payload, indent=2)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _complex_matrix(mat) -> list:
    mat = np.atleast_2d(np.asarray(mat, dtype=complex))
    return [[[c.real, c.imag] for c in row] for row in mat]


def cmd_eval(args) -> int:
    expr = parse_kernel(args.kernel)
    z = _parse_point(args.z)
    w = _parse_point(args.w)
    report = _provenance(args, expr.to_dsl())
    if args.order > 0:
        tab = expr.eval_jet(z, w, args.order)
        report["order"] = args.order
        report["entries"] = {
            f"{list(i)}|{list(j)}": _complex_matrix(mat)
            for (i, j), mat in tab.entries.items()
        }
    else:
        report["value"] = _complex_matrix(expr.eval(z, w))
    _emit(args, report)
    return EXIT_OK


def cmd_psd(args) -> int:
    if args.tol <= 0:
        raise ParseError("--tol must be positive", 0)
    expr = parse_kernel(args.kernel)
    domain = _domain_for(expr.m, args.radius)
    rep = psd_check(expr, domain, args.n, args.seed, args.tol)
    if args.format == "csv":
        from .eig import hermitian_part, jacobi_eigenvalues

        g = gram(expr, rep.points)
        eigs = sorted(jacobi_eigenvalues(hermitian_part(g)))
        lines = ["index,eigenvalue"] + [
            f"{i},{float(v)!r}" for i, v in enumerate(eigs)
        ]
        text = "\n".join(lines)
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)
        return EXIT_OK
    payload = json.loads(rep.to_json())
    payload.update(_provenance(args, expr.to_dsl()))
    _emit(args, payload)
    return EXIT_OK


def cmd_wallach(args) -> int:
    base = parse_kernel(args.base)
    domain = _domain_for(base.m, args.radius)
    est = wallach_scan(base, args.lo, args.hi, domain, tol=args.tol,
                       resolution=args.resolution)
    payload = json.loads(est.to_json())
    payload.update(_provenance(args, base.to_dsl()))
    _emit(args, payload)
    return EXIT_OK


def cmd_norm(args) -> int:
    value = z2_tensor_e1_norm(args.m, getattr(args, "lambda"))
    payload = _provenance(args, None)
    payload.update({"m": args.m, "lambda": getattr(args, "lambda"), "norm": value})
    _emit(args, payload)
    return EXIT_OK


def cmd_bound(args) -> int:
    expr = parse_kernel(args.kernel)
    f = args.f
    if f.startswith("z") and f[1:].isdigit():
        f = int(f[1:]) - 1
    elif f == "z":
        f = 0
    else:
        raise ParseError(f"unsupported multiplier function {args.f!r}", 0)
    domain = _domain_for(expr.m, args.radius)
    est = multiplier_bound(expr, f, domain, resolution=args.resolution)
    payload = json.loads(est.to_json())
    payload.update(_provenance(args, expr.to_dsl()))
    _emit(args, payload)
    return EXIT_OK


def cmd_quasi(args) -> int:
    base = parse_kernel(args.kernel)
    m = base.m
    rng = np.random.default_rng(args.seed)
    if args.a:
        a = _parse_point(args.a)
    else:
        v = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        a = tuple(0.5 * rng.random() * v / np.linalg.norm(v))
    phi = MobiusMap(a)
    domain = _domain_for(m, args.radius)
    pts = sample_points(domain, 2 * args.pairs, args.seed)
    pairs = list(zip(pts[: args.pairs], pts[args.pairs :]))
    residual = curvature_quasi_check(base, args.t, phi, pairs)
    payload = _provenance(args, base.to_dsl())
    payload.update(
        {
            "t": args.t,
            "map": json.loads(phi.to_json()),
            "pairs": args.pairs,
            "residual": residual,
        }
    )
    _emit(args, payload)
    return EXIT_OK


def cmd_repro(args) -> int:
    results = run_all()
    width = max(len(r.name) for r in results)
    for r in results:
        tag = "PASS" if r.passed else "FAIL"
        print(f"{tag}  {r.name:<{width}}  {r.detail}")
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else 1


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="kernelcalc",
        description="kernel calculus workbench: evaluate, differentiate, and "
        "certify sesqui-analytic kernels",
    )
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, kernel_flag="--kernel"):
        p.add_argument("--config", help="JSON file with default flag values")
        p.add_argument("--output", help="write the report to this path")
        p.add_argument("--radius", type=float, default=0.8,
                       help="sampling radius inside the domain")

    p = sub.add_parser("eval", help="evaluate a kernel or its jet table")
    common(p)
    p.add_argument("--kernel", required=False)
    p.add_argument("--z", required=False)
    p.add_argument("--w", required=False)
    p.add_argument("--order", type=int, default=0)
    p.set_defaults(func=cmd_eval, required=("kernel", "z", "w"))

    p = sub.add_parser("psd", help="finite-sample positivity certificate")
    common(p)
    p.add_argument("--kernel", required=False)
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_psd, required=("kernel",))

    p = sub.add_parser("wallach", help="bisect a curvature positivity boundary")
    common(p)
    p.add_argument("--base", required=False)
    p.add_argument("--lo", type=float, default=-1.0)
    p.add_argument("--hi", type=float, default=1.0)
    p.add_argument("--resolution", type=float, default=0.05)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_wallach, required=("base",))

    p = sub.add_parser("norm", help="derivative-section norm of the ball matrix kernel")
    common(p)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--lambda", type=float, required=False)
    p.set_defaults(func=cmd_norm, required=("lambda",))

    p = sub.add_parser("bound", help="multiplier-norm bisection")
    common(p)
    p.add_argument("--kernel", required=False)
    p.add_argument("--f", default="z1", help="coordinate function, e.g. z1")
    p.add_argument("--resolution", type=float, default=0.01)
    p.set_defaults(func=cmd_bound, required=("kernel",))

    p = sub.add_parser("quasi", help="quasi-invariance residual under a Mobius map")
    common(p)
    p.add_argument("--kernel", required=False)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--a", help="base point of the map (default: seeded random)")
    p.add_argument("--pairs", type=int, default=20)
    p.set_defaults(func=cmd_quasi, required=("kernel",))

    p = sub.add_parser("repro", help="run the full certification battery")
    p.set_defaults(func=cmd_repro, required=())
    return top


def _apply_config(args) -> None:
    """Fill unset flags from the JSON config file, then check required ones."""
    path = getattr(args, "config", None)
    if path:
        try:
            with open(path) as fh:
                conf = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read config {path!r}: {exc}", 0)
        if not isinstance(conf, dict):
            raise ParseError("config file must hold a JSON object", 0)
        for key, value in conf.items():
            attr = key.replace("-", "_")
            if getattr(args, attr, None) in (None, _DEFAULTS.get(attr)):
                setattr(args, attr, value)
    missing = [name for name in args.required if getattr(args, name, None) is None]
    if missing:
        raise ParseError(
            "missing required option(s): " + ", ".join(f"--{n}" for n in missing), 0
        )


# defaults that a config file is allowed to override even though argparse
# already filled them in
_DEFAULTS = {
    "order": 0, "n": 20, "seed": 0, "tol": DEFAULT_TOL, "format": "json",
    "lo": -1.0, "hi": 1.0, "resolution": 0.05, "radius": 0.8, "m": 2,
    "f": "z1", "t": 1.0, "pairs": 20,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else 0
    try:
        _apply_config(args)
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BracketError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BRACKET
    except (KernelCalcError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
