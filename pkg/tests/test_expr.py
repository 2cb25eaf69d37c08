import numpy as np
import pytest

from kernelcalc.errors import BranchError, OrderCapError, ShapeError
from kernelcalc.expr import (
    BallCurvature,
    BallPower,
    Curvature,
    DiagonalSeries,
    JetKernel,
    LogHessian,
    Pow,
    Product,
    Scale,
    Sum,
    SzegoDisc,
    Tensor,
    bergman_ball,
    bergman_disc,
)
from kernelcalc.fd import fd_relative_error
from kernelcalc.geometry import sample_points, unit_ball, unit_disc


def _scalar(expr, z, w):
    return complex(np.atleast_2d(expr.eval(z, w))[0, 0])


def test_szego_matches_the_closed_form():
    for z, w in [(0.3, 0.2), (0.5j, -0.1), (0.0, 0.9)]:
        assert _scalar(SzegoDisc(), z, w) == pytest.approx(
            1 / (1 - z * np.conj(w))
        )


def test_ball_power_matches_the_closed_form():
    z = [0.1 + 0.2j, 0.3]
    w = [0.2, -0.1j]
    ip = sum(a * np.conj(b) for a, b in zip(z, w))
    for lam in (1.0, 2.5, 3.0):
        assert _scalar(BallPower(2, lam), z, w) == pytest.approx(
            (1 - ip) ** -lam
        )
    assert _scalar(bergman_ball(2), z, w) == pytest.approx((1 - ip) ** -3)
    assert _scalar(bergman_disc(), 0.3, 0.2) == pytest.approx(
        (1 - 0.3 * 0.2) ** -2
    )


def test_diagonal_series_is_an_exact_finite_sum():
    e = DiagonalSeries([1.0])
    assert _scalar(e, 0.3, 0.2) == pytest.approx(1.06)
    e2 = DiagonalSeries([0.5, 0.25])
    p = 0.3 * 0.2
    assert _scalar(e2, 0.3, 0.2) == pytest.approx(1 + 0.5 * p + 0.25 * p * p)


def test_combinators_against_numpy_oracle():
    z, w = 0.4, 0.1 - 0.2j
    k = 1 / (1 - z * np.conj(w))
    assert _scalar(Pow(SzegoDisc(), 0.7), z, w) == pytest.approx(k ** 0.7)
    assert _scalar(Product(SzegoDisc(), SzegoDisc()), z, w) == pytest.approx(k * k)
    assert _scalar(Sum(SzegoDisc(), SzegoDisc()), z, w) == pytest.approx(2 * k)
    assert _scalar(Scale(SzegoDisc(), 0.5), z, w) == pytest.approx(0.5 * k)


def test_tensor_splits_the_variables():
    z, w = [0.3, 0.1], [0.2, -0.4]
    got = _scalar(Tensor(SzegoDisc(), SzegoDisc()), z, w)
    want = 1 / ((1 - z[0] * w[0]) * (1 - z[1] * w[1]))
    assert got == pytest.approx(want)


@pytest.mark.parametrize(
    "expr,domain",
    [
        (Curvature(SzegoDisc(), 1.0, 2.0), unit_disc()),
        (LogHessian(bergman_ball(2)), unit_ball(2)),
        (BallCurvature(2, 2.5), unit_ball(2)),
        (JetKernel(SzegoDisc(), SzegoDisc(), 1), unit_disc()),
        (Sum(bergman_disc(), Scale(SzegoDisc(), 0.3)), unit_disc()),
    ],
)
def test_sesqui_symmetry(expr, domain):
    pts = sample_points(domain, 6, 3)
    for z in pts[:3]:
        for w in pts[3:]:
            a = np.atleast_2d(expr.eval(z, w))
            b = np.atleast_2d(expr.eval(w, z))
            assert np.abs(a - b.conj().T).max() < 1e-12


def test_ball_curvature_equals_the_curvature_combinator():
    # the explicit matrix kernel with parameter lam agrees with
    # curvature(ball_power(m, 1), a, b) whenever a + b = lam - 2
    lam = 3.5
    explicit = BallCurvature(2, lam)
    combin = Curvature(BallPower(2, 1.0), (lam - 2) / 2, (lam - 2) / 2)
    pts = sample_points(unit_ball(2), 8, 5)
    for z, w in zip(pts[:4], pts[4:]):
        a = explicit.eval(z, w)
        b = combin.eval(z, w)
        assert np.abs(a - b).max() < 1e-10


def test_matrix_kernel_sizes():
    assert SzegoDisc().size == 1
    assert LogHessian(bergman_ball(3)).size == 3
    assert BallCurvature(2, 2.5).size == 2
    assert JetKernel(SzegoDisc(), SzegoDisc(), 1).size == 2
    assert JetKernel(bergman_ball(2), bergman_ball(2), 1).size == 3


def test_shape_validation():
    with pytest.raises(ShapeError):
        Product(SzegoDisc(), bergman_ball(2))
    with pytest.raises(ShapeError):
        Sum(SzegoDisc(), LogHessian(bergman_ball(2)))
    with pytest.raises(ShapeError):
        BallCurvature(1, 2.5)


def test_order_cap_is_enforced():
    with pytest.raises(OrderCapError):
        SzegoDisc().eval_jet(0.0, 0.0, 5)
    with pytest.raises(OrderCapError):
        JetKernel(SzegoDisc(), SzegoDisc(), 5)


def test_power_branch_error_is_reported():
    # 1 - z wbar can cross the negative real axis only outside the disc;
    # a scaled series with a large negative coefficient triggers it inside
    bad = Pow(DiagonalSeries([-40.0]), 0.5)
    with pytest.raises(BranchError):
        bad.eval(0.9, 0.9)


@pytest.mark.parametrize(
    "expr,domain",
    [
        (Pow(SzegoDisc(), 1.3), unit_disc(0.35)),
        (LogHessian(bergman_ball(2)), unit_ball(2, 0.35)),
        (Curvature(SzegoDisc(), 0.5, 1.0), unit_disc(0.35)),
    ],
)
def test_jet_tables_match_finite_differences(expr, domain):
    for seed in (1, 2, 3):
        z, w = sample_points(domain, 2, seed)
        assert fd_relative_error(expr, z, w, 2) < 1e-6


def test_jet_table_entries_are_derivative_values():
    # d/dz dbar/dwbar of 1/(1 - z wbar) at (0.2, 0.1):
    # (1 + z wbar) / (1 - z wbar)^3
    z, w = 0.2, 0.1
    tab = SzegoDisc().eval_jet(z, w, 1)
    p = z * w
    want = (1 + p) / (1 - p) ** 3
    assert complex(tab.entry((1,), (1,))[0, 0]) == pytest.approx(want)
