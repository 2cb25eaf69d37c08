import json

import numpy as np
import pytest

from kernelcalc.errors import BracketError, ShapeError
from kernelcalc.expr import (
    BallCurvature,
    Curvature,
    Pow,
    Scale,
    SzegoDisc,
    bergman_ball,
    bergman_disc,
)
from kernelcalc.geometry import Point, sample_points, unit_ball, unit_disc
from kernelcalc.positivity import (
    DEFAULT_FAMILIES,
    gram,
    kernel_order_check,
    ordinary_wallach_scan,
    psd_check,
    wallach_scan,
)


def test_gram_against_a_hand_computed_matrix():
    # szego at {0, 0.5}: K(0,0) = K(0,.5) = K(.5,0) = 1, K(.5,.5) = 4/3
    g = gram(SzegoDisc(), [Point((0.0,)), Point((0.5,))])
    assert np.allclose(g, [[1.0, 1.0], [1.0, 4 / 3]])


def test_gram_blocks_for_matrix_kernels():
    expr = BallCurvature(2, 3.0)
    pts = sample_points(unit_ball(2), 3, 5)
    g = gram(expr, pts)
    assert g.shape == (6, 6)
    block = g[0:2, 2:4]
    assert np.allclose(block, expr.eval(pts[0], pts[1]))
    assert np.abs(g - g.conj().T).max() < 1e-12


@pytest.mark.parametrize("expr,domain", [
    (SzegoDisc(), unit_disc()),
    (bergman_ball(2), unit_ball(2)),
    (Curvature(SzegoDisc(), 1.0, 1.0), unit_disc()),
    (BallCurvature(2, 2.5), unit_ball(2)),
])
def test_positive_kernels_certify_psd(expr, domain):
    rep = psd_check(expr, domain, 20, 11)
    assert rep.psd
    assert rep.min_eigenvalue >= -rep.tolerance * (1 + rep.max_diagonal)


def test_ball_matrix_kernel_fails_below_the_threshold():
    rep = psd_check(BallCurvature(2, 1.5), unit_ball(2), 30, 23)
    assert not rep.psd
    assert rep.min_eigenvalue < -rep.tolerance


def test_verdicts_are_deterministic_for_a_fixed_seed():
    a = psd_check(SzegoDisc(), unit_disc(), 15, 4)
    b = psd_check(SzegoDisc(), unit_disc(), 15, 4)
    assert a.min_eigenvalue == b.min_eigenvalue
    assert a.points == b.points


def test_report_serialization_schema():
    rep = psd_check(SzegoDisc(), unit_disc(), 5, 2)
    data = json.loads(rep.to_json())
    assert set(data) == {"kernel", "points", "size", "min_eig", "psd", "tol", "seed"}
    assert data["kernel"] == "szego_disc()"
    assert len(data["points"]) == 5


def test_kernel_order_is_one_directional():
    # szego dominates its half, not the other way around
    half = Scale(SzegoDisc(), 0.5)
    ok = kernel_order_check(half, SzegoDisc(), unit_disc(), 20, 11)
    bad = kernel_order_check(SzegoDisc(), half, unit_disc(), 20, 11)
    assert ok.psd
    assert not bad.psd


def test_wallach_scan_brackets_the_disc_boundary():
    est = wallach_scan(bergman_disc(), -2.0, 0.0, unit_disc())
    assert abs(est.boundary - (-1.0)) <= 0.05
    assert est.bracket[0] < est.boundary < est.bracket[1]
    lo_verdict = dict(est.verdicts)[-2.0]
    assert lo_verdict is False


def test_wallach_scan_requires_a_sign_change():
    with pytest.raises(BracketError):
        wallach_scan(bergman_disc(), 0.5, 1.0, unit_disc())
    with pytest.raises(BracketError):
        wallach_scan(bergman_disc(), -3.0, -2.0, unit_disc())


def test_wallach_scan_rejects_matrix_bases():
    with pytest.raises(ShapeError):
        wallach_scan(BallCurvature(2, 3.0), -1.0, 1.0, unit_ball(2))


def test_ordinary_wallach_powers_of_szego_stay_positive():
    verdicts = ordinary_wallach_scan(SzegoDisc(), [0.5, 1.0, 2.0], unit_disc())
    assert all(ok for _, ok in verdicts)
    with pytest.raises(ValueError):
        ordinary_wallach_scan(SzegoDisc(), [0.0], unit_disc())


def test_failing_pair_is_named_in_evaluation_errors():
    from kernelcalc.errors import EvaluationError

    from kernelcalc.expr import DiagonalSeries

    # a large negative series coefficient pushes the kernel value across
    # the branch cut at some off-diagonal pairs
    bad = Pow(DiagonalSeries([-40.0]), 0.5)
    pts = sample_points(unit_disc(), 10, 1)
    with pytest.raises(EvaluationError) as exc:
        gram(bad, pts)
    assert "pair" in str(exc.value)
