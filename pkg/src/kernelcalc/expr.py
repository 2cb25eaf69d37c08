"""Kernel expression AST: pointwise evaluation and Wirtinger jet tables.

Every node denotes a matrix-valued sesqui-analytic kernel on a domain in C^m
(scalars are 1x1).  Evaluation and differentiation both go through one jet
engine: each node knows how to produce the truncated Taylor expansion of its
matrix entries around a base pair (z, w).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, OrderCapError, ShapeError
from .geometry import Point, as_point, graded_lex_tuples
from .jets import Jet, variable_jets

#: default cap on the derivative order of eval_jet
DEFAULT_ORDER_CAP = 4


class KernelExpr:
    """Base class for kernel expression nodes."""

    #: ambient dimension m of the domain
    m: int
    #: output size k (values are k x k matrices; scalars have k = 1)
    size: int = 1

    def children(self) -> tuple["KernelExpr", ...]:
        return ()

    @property
    def is_scalar(self) -> bool:
        return self.size == 1

    # -- domain --------------------------------------------------------

    def contains(self, p: Point) -> bool:
        """Membership predicate of the node's natural domain."""
        raise NotImplementedError

    def _check_pair(self, z: Point, w: Point):
        for p in (z, w):
            if not self.contains(p):
                raise DomainError(
                    f"point {tuple(p.coords)} outside the domain of {self.to_dsl()}"
                )

    # -- jet engine ----------------------------------------------------

    def scalar_jet(self, zv, wv) -> Jet:
        """Jet of the scalar kernel in the given coordinate jets.

        Only defined for scalar nodes; zv, wv are the seeded jets of this
        node's own m coordinates (already embedded in the caller's space).
        """
        raise ShapeError(f"{type(self).__name__} is not a scalar kernel")

    def scalar_log_jet(self, zv, wv) -> Jet:
        """Jet of the continuous branch of log K.

        Nodes with multiplicative structure (powers, products, tensors)
        propagate the branch structurally, so log K stays well defined even
        where the kernel value itself leaves the right half-plane.  The
        fallback takes the principal log of the value jet and errors out on
        a branch violation.
        """
        return self.scalar_jet(zv, wv).log()

    def entry_jets(self, z: Point, w: Point, nz: int, nw: int) -> np.ndarray:
        """k x k object array of entry jets truncated to caps (nz, nw)."""
        zv, wv = variable_jets(z.coords, w.coords, self.m, nz, nw)
        out = np.empty((1, 1), dtype=object)
        out[0, 0] = self.scalar_jet(zv, wv)
        return out

    # -- public evaluation ----------------------------------------------

    def eval(self, z, w) -> np.ndarray:
        """Evaluate the kernel at (z, w); returns a k x k complex matrix."""
        z = as_point(z, self.m)
        w = as_point(w, self.m)
        self._check_pair(z, w)
        jets = self.entry_jets(z, w, 0, 0)
        k = self.size
        out = np.empty((k, k), dtype=complex)
        for r in range(k):
            for s in range(k):
                out[r, s] = jets[r, s].value
        return out

    def eval_jet(self, z, w, order: int, cap: int = DEFAULT_ORDER_CAP) -> "JetTable":
        """All mixed derivatives d^i dbar^j of the kernel with |i|,|j| <= order."""
        if order < 0:
            raise ValueError("order must be >= 0")
        if order > cap:
            raise OrderCapError(f"order {order} exceeds cap {cap}")
        z = as_point(z, self.m)
        w = as_point(w, self.m)
        self._check_pair(z, w)
        jets = self.entry_jets(z, w, order, order)
        k = self.size
        indices = graded_lex_tuples(self.m, order)
        entries = {}
        for i in indices:
            for j in indices:
                mat = np.empty((k, k), dtype=complex)
                for r in range(k):
                    for s in range(k):
                        mat[r, s] = jets[r, s].deriv(i, j)
                entries[(i, j)] = mat
        return JetTable(order=order, m=self.m, size=k, entries=entries)

    # -- printing --------------------------------------------------------

    def to_dsl(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.to_dsl()}>"

    def __eq__(self, other):
        return isinstance(other, KernelExpr) and self.to_dsl() == other.to_dsl()

    def __hash__(self):
        return hash(self.to_dsl())


@dataclass(frozen=True)
class JetTable:
    """Mixed Wirtinger derivatives of a kernel at one pair, up to a cutoff."""

    order: int
    m: int
    size: int
    entries: dict

    def entry(self, i, j) -> np.ndarray:
        return self.entries[(tuple(i), tuple(j))]

    @property
    def value(self) -> np.ndarray:
        zero = (0,) * self.m
        return self.entries[(zero, zero)]


def _num(x) -> str:
    if isinstance(x, float) and x == int(x) and abs(x) < 1e15:
        return f"{x:.1f}"
    return repr(x)


# ---------------------------------------------------------------------------
# built-in scalar kernels
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SzegoDisc(KernelExpr):
    """(1 - z wbar)^{-1} on the unit disc."""

    m = 1

    def contains(self, p):
        return abs(p[0]) < 1

    def scalar_jet(self, zv, wv):
        return (1.0 - zv[0] * wv[0]) ** -1

    def scalar_log_jet(self, zv, wv):
        return -((1.0 - zv[0] * wv[0]).log())

    def to_dsl(self):
        return "szego_disc()"


@dataclass(frozen=True, eq=False)
class BallPower(KernelExpr):
    """(1 - <z, w>)^{-lam} on the unit ball of C^m."""

    dim: int
    lam: float

    def __post_init__(self):
        if self.dim < 1:
            raise ShapeError("ball_power needs dimension >= 1")

    @property
    def m(self):
        return self.dim

    def contains(self, p):
        return p.norm() < 1

    def _base_jet(self, zv, wv):
        u = 1.0
        for zk, wk in zip(zv, wv):
            u = u - zk * wk
        return u

    def scalar_jet(self, zv, wv):
        # 1 - <z, w> stays in the right half-plane on the ball, so the
        # principal branch of the outer power is the continuous one
        return self._base_jet(zv, wv) ** (-self.lam)

    def scalar_log_jet(self, zv, wv):
        return self._base_jet(zv, wv).log() * (-self.lam)

    def to_dsl(self):
        return f"ball_power({self.dim}, {_num(float(self.lam))})"


def bergman_ball(m: int) -> BallPower:
    """Bergman kernel of the unit ball, (1 - <z,w>)^{-(m+1)}."""
    return BallPower(m, float(m + 1))


def bergman_disc() -> BallPower:
    """Bergman kernel of the unit disc, (1 - z wbar)^{-2}."""
    return BallPower(1, 2.0)


@dataclass(frozen=True, eq=False)
class DiagonalSeries(KernelExpr):
    """1 + sum_n a_n z^n wbar^n on the disc, with finitely many coefficients."""

    coefficients: tuple[float, ...]

    m = 1

    def __init__(self, coefficients):
        object.__setattr__(
            self, "coefficients", tuple(float(a) for a in coefficients)
        )

    def contains(self, p):
        return abs(p[0]) < 1

    def scalar_jet(self, zv, wv):
        p = zv[0] * wv[0]
        acc = 1.0 + 0.0 * p  # promotes to a jet of the right shape
        power = None
        for a in self.coefficients:
            power = p if power is None else power * p
            acc = acc + power * a
        return acc

    def to_dsl(self):
        inner = ", ".join(_num(a) for a in self.coefficients)
        return f"diagonal_series([{inner}])"


# ---------------------------------------------------------------------------
# combinators
# ---------------------------------------------------------------------------


def _require_scalar(node: KernelExpr, what: str):
    if not node.is_scalar:
        raise ShapeError(f"{what} requires a scalar kernel child, got size {node.size}")


@dataclass(frozen=True, eq=False)
class Pow(KernelExpr):
    """Principal-branch power K^t of a scalar kernel."""

    child: KernelExpr
    t: float

    def __post_init__(self):
        _require_scalar(self.child, "pow")

    @property
    def m(self):
        return self.child.m

    def children(self):
        return (self.child,)

    def contains(self, p):
        return self.child.contains(p)

    def scalar_jet(self, zv, wv):
        return (self.child.scalar_log_jet(zv, wv) * self.t).exp()

    def scalar_log_jet(self, zv, wv):
        return self.child.scalar_log_jet(zv, wv) * self.t

    def to_dsl(self):
        return f"pow({self.child.to_dsl()}, {_num(float(self.t))})"


@dataclass(frozen=True, eq=False)
class Product(KernelExpr):
    """Pointwise product of two scalar kernels on the same domain."""

    left: KernelExpr
    right: KernelExpr

    def __post_init__(self):
        _require_scalar(self.left, "product")
        _require_scalar(self.right, "product")
        if self.left.m != self.right.m:
            raise ShapeError("product children live on different dimensions")

    @property
    def m(self):
        return self.left.m

    def children(self):
        return (self.left, self.right)

    def contains(self, p):
        return self.left.contains(p) and self.right.contains(p)

    def scalar_jet(self, zv, wv):
        return self.left.scalar_jet(zv, wv) * self.right.scalar_jet(zv, wv)

    def scalar_log_jet(self, zv, wv):
        return self.left.scalar_log_jet(zv, wv) + self.right.scalar_log_jet(zv, wv)

    def to_dsl(self):
        return f"product({self.left.to_dsl()}, {self.right.to_dsl()})"


@dataclass(frozen=True, eq=False)
class Sum(KernelExpr):
    """Pointwise sum of two kernels of identical shape."""

    left: KernelExpr
    right: KernelExpr

    def __post_init__(self):
        if self.left.m != self.right.m or self.left.size != self.right.size:
            raise ShapeError("sum children must share dimension and output size")

    @property
    def m(self):
        return self.left.m

    @property
    def size(self):
        return self.left.size

    def children(self):
        return (self.left, self.right)

    def contains(self, p):
        return self.left.contains(p) and self.right.contains(p)

    def scalar_jet(self, zv, wv):
        return self.left.scalar_jet(zv, wv) + self.right.scalar_jet(zv, wv)

    def entry_jets(self, z, w, nz, nw):
        a = self.left.entry_jets(z, w, nz, nw)
        b = self.right.entry_jets(z, w, nz, nw)
        out = np.empty(a.shape, dtype=object)
        for idx in np.ndindex(a.shape):
            out[idx] = a[idx] + b[idx]
        return out

    def to_dsl(self):
        return f"sum({self.left.to_dsl()}, {self.right.to_dsl()})"


@dataclass(frozen=True, eq=False)
class Scale(KernelExpr):
    """c * K for a positive constant c."""

    child: KernelExpr
    factor: float

    def __post_init__(self):
        if not self.factor > 0:
            raise ShapeError("scale factor must be positive")

    @property
    def m(self):
        return self.child.m

    @property
    def size(self):
        return self.child.size

    def children(self):
        return (self.child,)

    def contains(self, p):
        return self.child.contains(p)

    def scalar_jet(self, zv, wv):
        return self.child.scalar_jet(zv, wv) * self.factor

    def scalar_log_jet(self, zv, wv):
        return self.child.scalar_log_jet(zv, wv) + math.log(self.factor)

    def entry_jets(self, z, w, nz, nw):
        a = self.child.entry_jets(z, w, nz, nw)
        out = np.empty(a.shape, dtype=object)
        for idx in np.ndindex(a.shape):
            out[idx] = a[idx] * self.factor
        return out

    def to_dsl(self):
        return f"scale({self.child.to_dsl()}, {_num(float(self.factor))})"


@dataclass(frozen=True, eq=False)
class Tensor(KernelExpr):
    """(K1 (x) K2)(z, zeta; w, rho) = K1(z, w) K2(zeta, rho) on C^{m1+m2}."""

    left: KernelExpr
    right: KernelExpr

    def __post_init__(self):
        _require_scalar(self.left, "tensor")
        _require_scalar(self.right, "tensor")

    @property
    def m(self):
        return self.left.m + self.right.m

    def children(self):
        return (self.left, self.right)

    def contains(self, p):
        m1 = self.left.m
        return self.left.contains(Point(p.coords[:m1])) and self.right.contains(
            Point(p.coords[m1:])
        )

    def scalar_jet(self, zv, wv):
        m1 = self.left.m
        a = self.left.scalar_jet(zv[:m1], wv[:m1])
        b = self.right.scalar_jet(zv[m1:], wv[m1:])
        return a * b

    def scalar_log_jet(self, zv, wv):
        m1 = self.left.m
        return self.left.scalar_log_jet(zv[:m1], wv[:m1]) + self.right.scalar_log_jet(
            zv[m1:], wv[m1:]
        )

    def to_dsl(self):
        return f"tensor({self.left.to_dsl()}, {self.right.to_dsl()})"


# ---------------------------------------------------------------------------
# matrix-valued derived kernels
# ---------------------------------------------------------------------------


def _unit(m, k):
    return tuple(1 if i == k else 0 for i in range(m))


@dataclass(frozen=True, eq=False)
class LogHessian(KernelExpr):
    """The m x m matrix kernel (d_i dbar_j log K) of a scalar kernel K."""

    child: KernelExpr

    def __post_init__(self):
        _require_scalar(self.child, "log_hessian")

    @property
    def m(self):
        return self.child.m

    @property
    def size(self):
        return self.child.m

    def children(self):
        return (self.child,)

    def contains(self, p):
        return self.child.contains(p)

    def entry_jets(self, z, w, nz, nw):
        m = self.m
        zv, wv = variable_jets(z.coords, w.coords, m, nz + 1, nw + 1)
        g = self.child.scalar_log_jet(zv, wv)
        out = np.empty((m, m), dtype=object)
        for i in range(m):
            for j in range(m):
                out[i, j] = g.shift(_unit(m, i), _unit(m, j)).truncate(nz, nw)
        return out

    def to_dsl(self):
        return f"log_hessian({self.child.to_dsl()})"


@dataclass(frozen=True, eq=False)
class Curvature(KernelExpr):
    """The m x m curvature-type kernel K^{alpha+beta} (d_i dbar_j log K)."""

    child: KernelExpr
    alpha: float
    beta: float

    def __post_init__(self):
        _require_scalar(self.child, "curvature")
        if not (self.alpha > 0 and self.beta > 0):
            raise ShapeError("curvature parameters alpha, beta must be positive")

    @property
    def m(self):
        return self.child.m

    @property
    def size(self):
        return self.child.m

    def children(self):
        return (self.child,)

    def contains(self, p):
        return self.child.contains(p)

    def entry_jets(self, z, w, nz, nw):
        m = self.m
        zv, wv = variable_jets(z.coords, w.coords, m, nz + 1, nw + 1)
        g = self.child.scalar_log_jet(zv, wv)
        power = (g * (self.alpha + self.beta)).exp().truncate(nz, nw)
        out = np.empty((m, m), dtype=object)
        for i in range(m):
            for j in range(m):
                out[i, j] = power * g.shift(_unit(m, i), _unit(m, j)).truncate(nz, nw)
        return out

    def to_dsl(self):
        return (
            f"curvature({self.child.to_dsl()}, "
            f"{_num(float(self.alpha))}, {_num(float(self.beta))})"
        )


@dataclass(frozen=True, eq=False)
class JetKernel(KernelExpr):
    """The d x d jet kernel with entries K1 * d^i dbar^j K2, |i|,|j| <= k."""

    k1: KernelExpr
    k2: KernelExpr
    order: int

    def __post_init__(self):
        _require_scalar(self.k1, "jet")
        _require_scalar(self.k2, "jet")
        if self.k1.m != self.k2.m:
            raise ShapeError("jet kernel children live on different dimensions")
        if self.order < 0:
            raise ShapeError("jet order must be >= 0")
        if self.order > DEFAULT_ORDER_CAP:
            raise OrderCapError(
                f"jet order {self.order} exceeds cap {DEFAULT_ORDER_CAP}"
            )

    @property
    def m(self):
        return self.k1.m

    @property
    def size(self):
        return math.comb(self.m + self.order, self.m)

    def children(self):
        return (self.k1, self.k2)

    def contains(self, p):
        return self.k1.contains(p) and self.k2.contains(p)

    def entry_jets(self, z, w, nz, nw):
        m = self.m
        k = self.order
        zv, wv = variable_jets(z.coords, w.coords, m, nz + k, nw + k)
        j1 = self.k1.scalar_jet(zv, wv)
        j2 = self.k2.scalar_jet(zv, wv)
        indices = graded_lex_tuples(m, k)
        d = len(indices)
        out = np.empty((d, d), dtype=object)
        for r, i in enumerate(indices):
            for s, j in enumerate(indices):
                out[r, s] = j1.truncate(nz, nw) * j2.shift(i, j).truncate(nz, nw)
        return out

    def to_dsl(self):
        return f"jet({self.k1.to_dsl()}, {self.k2.to_dsl()}, {self.order})"


@dataclass(frozen=True, eq=False)
class BallCurvature(KernelExpr):
    """The explicit m x m ball kernel with prefactor (1 - <z,w>)^{-lam}.

    Diagonal entries are 1 - sum_{j != i} z_j wbar_j, off-diagonal (i, j)
    entries are z_j wbar_i; equals (1/(m+1)) B^t (d dbar log B) for the ball
    Bergman kernel B when lam = t (m+1) + 2.
    """

    dim: int
    lam: float

    def __post_init__(self):
        if self.dim < 2:
            raise ShapeError("ball_curvature needs dimension >= 2")

    @property
    def m(self):
        return self.dim

    @property
    def size(self):
        return self.dim

    def contains(self, p):
        return p.norm() < 1

    def entry_jets(self, z, w, nz, nw):
        m = self.dim
        zv, wv = variable_jets(z.coords, w.coords, m, nz, nw)
        u = 1.0
        for zk, wk in zip(zv, wv):
            u = u - zk * wk
        pref = u ** (-self.lam)
        out = np.empty((m, m), dtype=object)
        for i in range(m):
            for j in range(m):
                if i == j:
                    e = 1.0 + 0.0 * pref
                    for kk in range(m):
                        if kk != i:
                            e = e - zv[kk] * wv[kk]
                else:
                    e = zv[j] * wv[i]
                out[i, j] = pref * e
        return out

    def to_dsl(self):
        return f"ball_curvature({self.dim}, {_num(float(self.lam))})"
