import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from kernelcalc.errors import BranchError
from kernelcalc.jets import Jet, variable_jets


def test_variable_jets_track_the_base_point():
    (z1,), (w1,) = variable_jets([0.3], [0.2], 1, 2, 2)
    assert z1.value == pytest.approx(0.3)
    assert z1.deriv((1,), (0,)) == pytest.approx(1.0)
    assert z1.deriv((0,), (1,)) == 0
    assert w1.value == pytest.approx(0.2)  # conjugate of w = 0.2


def test_product_derivatives_match_hand_calculation():
    # f = z^2 wbar at (z, wbar) = (0.5, 0.25): d2/dz2 dbar = 2
    (z,), (w,) = variable_jets([0.5], [0.25], 1, 2, 1)
    f = z * z * w
    assert f.value == pytest.approx(0.0625)
    assert f.deriv((2,), (1,)) == pytest.approx(2.0)
    assert f.deriv((1,), (1,)) == pytest.approx(2 * 0.5)
    assert f.deriv((2,), (0,)) == pytest.approx(2 * 0.25)


def test_reciprocal_series_oracle():
    # 1/(1 - z wbar) has Taylor coefficients (z wbar)^n
    (z,), (w,) = variable_jets([0.0], [0.0], 1, 3, 3)
    f = (Jet.constant(1.0, 1, 3, 3) - z * w) ** -1
    for n in range(4):
        fact = math.factorial(n) ** 2
        assert f.deriv((n,), (n,)) == pytest.approx(fact)


def test_pow_matches_binomial_series():
    t = 0.7
    (z,), (w,) = variable_jets([0.0], [0.0], 1, 3, 3)
    f = (Jet.constant(1.0, 1, 3, 3) + z * w) ** t
    # (1+u)^t = sum binom(t, n) u^n
    coef = 1.0
    for n in range(4):
        fact = math.factorial(n) ** 2
        assert f.deriv((n,), (n,)) == pytest.approx(coef * fact)
        coef *= (t - n) / (n + 1)


def test_exp_log_inverse_pair():
    (z,), (w,) = variable_jets([0.2], [0.1], 1, 2, 2)
    f = Jet.constant(2.0, 1, 2, 2) + z + w * z
    g = f.log().exp()
    for key, c in f.coeffs.items():
        assert g.coeffs[key] == pytest.approx(c)


def test_log_requires_right_half_plane_value():
    bad = Jet.constant(-1.0, 1, 2, 2)
    with pytest.raises(BranchError):
        bad.log()


def test_non_integer_power_requires_right_half_plane():
    bad = Jet.constant(-2.0, 1, 1, 1)
    assert (bad ** 2).value == pytest.approx(4.0)  # integer powers are fine
    with pytest.raises(BranchError):
        bad ** 0.5


def test_division_by_jet():
    (z,), (w,) = variable_jets([0.3], [0.4], 1, 2, 2)
    num = z * w + Jet.constant(1.0, 1, 2, 2)
    f = num / num
    assert f.value == pytest.approx(1.0)
    assert abs(f.deriv((1,), (1,))) < 1e-12


def test_shift_produces_the_derivative_jet():
    (z,), (w,) = variable_jets([0.0], [0.0], 1, 3, 3)
    f = (Jet.constant(1.0, 1, 3, 3) - z * w) ** -1
    g = f.shift((1,), (1,))  # d/dz dbar/dwbar of the series
    # d/dz d/dwbar 1/(1-z wbar) at 0 = 1
    assert g.value == pytest.approx(1.0)
    assert g.deriv((1,), (1,)) == pytest.approx(4.0)  # n=2 coeff: 2!2!/(1!1!)


@given(
    st.floats(0.5, 3.0),
    st.floats(-0.4, 0.4),
    st.floats(-0.4, 0.4),
)
def test_exp_of_log_is_identity_for_positive_jets(c, a, b):
    (z,), (w,) = variable_jets([0.1], [0.2], 1, 2, 2)
    f = Jet.constant(c, 1, 2, 2) + z * a + w * (b * 1j)
    g = f.log().exp()
    for key, v in f.coeffs.items():
        assert g.coeffs.get(key, 0j) == pytest.approx(v, abs=1e-12)


def test_multivariate_mixed_partials():
    # f = (z1 + 2 z2) * conj(w2), m = 2
    (z1, z2), (w1, w2) = variable_jets([0.1, 0.2], [0.3, 0.4], 2, 1, 1)
    f = (z1 + z2 * 2.0) * w2
    assert f.deriv((1, 0), (0, 1)) == pytest.approx(1.0)
    assert f.deriv((0, 1), (0, 1)) == pytest.approx(2.0)
    assert f.deriv((0, 0), (1, 0)) == 0
