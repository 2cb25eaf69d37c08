"""Gram assembly, eigenvalue certification, NND verdicts and Wallach scans.

A passing scan is evidence for non-negative definiteness; a failing scan is
a proof (a genuine negative direction on a finite point set).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .eig import hermitian_part, jacobi_eigenvalues, min_eigenvalue
from .errors import BracketError, EvaluationError, ShapeError
from .expr import KernelExpr, LogHessian
from .geometry import DomainSpec, Point, RngSeed, as_point, sample_points

#: default relative PSD tolerance: psd iff min eig >= -tol * (1 + max diagonal)
DEFAULT_TOL = 1e-9

#: default point families for scans: (count, seed) pairs
DEFAULT_FAMILIES = ((20, 11), (30, 23), (40, 37))


@dataclass(frozen=True)
class GramReport:
    """Verdict of a finite-sample non-negative-definiteness check."""

    kernel: str
    size: int
    min_eigenvalue: float
    psd: bool
    tolerance: float
    max_diagonal: float
    points: tuple[Point, ...]
    seed: int | None = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "kernel": self.kernel,
                "points": [
                    [[c.real, c.imag] for c in p.coords] for p in self.points
                ],
                "size": self.size,
                "min_eig": self.min_eigenvalue,
                "psd": self.psd,
                "tol": self.tolerance,
                "seed": self.seed,
            }
        )


@dataclass(frozen=True)
class WallachEstimate:
    """Bisection bracket for the boundary of a generalized Wallach set."""

    boundary: float
    bracket: tuple[float, float]
    resolution: float
    verdicts: tuple[tuple[float, bool], ...]

    def to_json(self) -> str:
        return json.dumps(
            {
                "boundary": self.boundary,
                "bracket": list(self.bracket),
                "resolution": self.resolution,
                "verdicts": [[t, bool(p)] for t, p in self.verdicts],
            }
        )


def gram(expr: KernelExpr, points) -> np.ndarray:
    """Block Gram matrix with block (p, q) = eval(expr, z_p, z_q), symmetrized."""
    pts = [as_point(p, expr.m) for p in points]
    n = len(pts)
    k = expr.size
    g = np.empty((n * k, n * k), dtype=complex)
    for p in range(n):
        for q in range(p, n):
            try:
                block = expr.eval(pts[p], pts[q])
            except Exception as exc:
                raise EvaluationError(
                    f"evaluation failed at pair ({tuple(pts[p].coords)}, "
                    f"{tuple(pts[q].coords)}): {exc}"
                ) from exc
            g[p * k : (p + 1) * k, q * k : (q + 1) * k] = block
            if q != p:
                g[q * k : (q + 1) * k, p * k : (p + 1) * k] = block.conj().T
    return hermitian_part(g)


def _verdict(g: np.ndarray, tol: float) -> tuple[float, float, bool]:
    mineig = min_eigenvalue(g)
    maxdiag = float(np.max(np.diag(g).real))
    return mineig, maxdiag, mineig >= -tol * (1 + maxdiag)


def psd_check(
    expr: KernelExpr,
    domain: DomainSpec,
    n: int,
    seed: RngSeed | int = 0,
    tol: float = DEFAULT_TOL,
) -> GramReport:
    """Sample a point family and certify the Gram matrix eigenvalue verdict."""
    if domain.dim != expr.m:
        raise ShapeError("domain dimension does not match the kernel")
    seed_val = seed.seed if isinstance(seed, RngSeed) else int(seed)
    pts = sample_points(domain, n, seed_val)
    g = gram(expr, pts)
    mineig, maxdiag, psd = _verdict(g, tol)
    return GramReport(
        kernel=expr.to_dsl(),
        size=g.shape[0],
        min_eigenvalue=mineig,
        psd=psd,
        tolerance=tol,
        max_diagonal=maxdiag,
        points=tuple(pts),
        seed=seed_val,
    )


def kernel_order_check(
    k1: KernelExpr,
    k2: KernelExpr,
    domain: DomainSpec,
    n: int,
    seed: RngSeed | int = 0,
    tol: float = DEFAULT_TOL,
) -> GramReport:
    """PSD verdict for the difference kernel K2 - K1 (is K1 dominated by K2)."""
    if k1.m != k2.m or k1.size != k2.size:
        raise ShapeError("kernels must share dimension and output size")
    seed_val = seed.seed if isinstance(seed, RngSeed) else int(seed)
    pts = sample_points(domain, n, seed_val)
    g = gram(k2, pts) - gram(k1, pts)
    mineig, maxdiag, psd = _verdict(g, tol)
    return GramReport(
        kernel=f"difference({k2.to_dsl()}, {k1.to_dsl()})",
        size=g.shape[0],
        min_eigenvalue=mineig,
        psd=psd,
        tolerance=tol,
        max_diagonal=maxdiag,
        points=tuple(pts),
        seed=seed_val,
    )


class _CurvatureFamilyGram:
    """Precomputed Gram data for K^t (d dbar log K) as a function of t.

    Points are sampled once per scan; for each pair the continuous log of
    the base kernel and the log-Hessian block are cached, so the Gram at
    any exponent t is exp(t log K) times the cached block.  This matches
    the AST kernel pow(base, t) * log_hessian(base) exactly.
    """

    def __init__(self, base: KernelExpr, domain: DomainSpec, n: int, seed: int):
        self.points = sample_points(domain, n, seed)
        m = base.m
        self.m = m
        node = LogHessian(base)
        npts = len(self.points)
        self.logk = np.empty((npts, npts), dtype=complex)
        self.blocks = np.empty((npts * m, npts * m), dtype=complex)
        from .jets import variable_jets

        for p in range(npts):
            for q in range(p, npts):
                z, w = self.points[p], self.points[q]
                zv, wv = variable_jets(z.coords, w.coords, m, 1, 1)
                g = base.scalar_log_jet(zv, wv)
                self.logk[p, q] = g.value
                block = np.array(
                    [[j.value for j in row] for row in node.entry_jets(z, w, 0, 0)]
                )
                self.blocks[p * m : (p + 1) * m, q * m : (q + 1) * m] = block
                if q != p:
                    self.logk[q, p] = self.logk[p, q].conjugate()
                    self.blocks[q * m : (q + 1) * m, p * m : (p + 1) * m] = (
                        block.conj().T
                    )

    def gram_at(self, t: float) -> np.ndarray:
        scal = np.exp(t * self.logk)
        return hermitian_part(np.kron(scal, np.ones((self.m, self.m))) * self.blocks)


def wallach_scan(
    base: KernelExpr,
    t_lo: float,
    t_hi: float,
    domain: DomainSpec,
    family=DEFAULT_FAMILIES,
    tol: float = DEFAULT_TOL,
    resolution: float = 0.05,
) -> WallachEstimate:
    """Bisect the boundary of {t : K^{t-2} (K^2 d dbar log K) is NND}.

    The scanned kernel is pow(base, t) * log_hessian(base); a t counts as
    psd only if every point family passes.
    """
    if not base.is_scalar:
        raise ShapeError("wallach_scan needs a scalar base kernel")
    fams = [
        _CurvatureFamilyGram(base, domain, n, s if isinstance(s, int) else s.seed)
        for n, s in family
    ]
    verdicts: list[tuple[float, bool]] = []

    def is_psd(t: float) -> bool:
        ok = all(_verdict(f.gram_at(t), tol)[2] for f in fams)
        verdicts.append((t, ok))
        return ok

    lo_ok, hi_ok = is_psd(t_lo), is_psd(t_hi)
    if lo_ok == hi_ok:
        raise BracketError(
            f"no psd sign change on [{t_lo}, {t_hi}] "
            f"(verdicts {lo_ok}, {hi_ok})"
        )
    if lo_ok:
        raise BracketError(
            "psd region must lie at the upper end of the scanned interval"
        )
    lo, hi = t_lo, t_hi
    while hi - lo > resolution:
        mid = (lo + hi) / 2
        if is_psd(mid):
            hi = mid
        else:
            lo = mid
    return WallachEstimate(
        boundary=(lo + hi) / 2,
        bracket=(lo, hi),
        resolution=resolution,
        verdicts=tuple(verdicts),
    )


def ordinary_wallach_scan(
    base: KernelExpr,
    t_grid,
    domain: DomainSpec,
    family=DEFAULT_FAMILIES,
    tol: float = DEFAULT_TOL,
) -> list[tuple[float, bool]]:
    """Per-t PSD verdicts for the powers K^t, t > 0."""
    from .expr import Pow

    if any(t <= 0 for t in t_grid):
        raise ValueError("ordinary Wallach scan needs t > 0")
    fams = [
        sample_points(domain, n, s if isinstance(s, int) else s.seed)
        for n, s in family
    ]
    out = []
    for t in t_grid:
        expr = Pow(base, float(t))
        ok = all(_verdict(gram(expr, pts), tol)[2] for pts in fams)
        out.append((float(t), ok))
    return out


__all__ = [
    "DEFAULT_FAMILIES",
    "DEFAULT_TOL",
    "GramReport",
    "WallachEstimate",
    "gram",
    "jacobi_eigenvalues",
    "kernel_order_check",
    "min_eigenvalue",
    "ordinary_wallach_scan",
    "psd_check",
    "wallach_scan",
]
