import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ossbsim import (
    DipCurve,
    DomainError,
    HomParams,
    calibrate_sigma,
    coincidence_rate,
    dip_curve,
    fit_visibility,
    misalignment_penalty,
    noisy_visibility,
    visibility,
    visibility_budget,
)
from ossbsim.hom import dip_model
from oracles import SIGMA_STAR

widths = st.floats(0.5, 50)
DELAYS = np.linspace(-100, 100, 201)


def test_far_tails_reach_half():
    p = HomParams(8.0, 6.0, 3.0)
    scale = p.sigma_s * p.sigma_i / math.sqrt(p.sigma_s**2 + p.sigma_i**2) * 2 * math.pi * 1e-3
    d = 10.5 / scale
    assert coincidence_rate(d, p) == pytest.approx(0.5, abs=1e-9)
    assert coincidence_rate(-d, p) == pytest.approx(0.5, abs=1e-9)


def test_perfect_dip():
    assert coincidence_rate(0.0, HomParams(7.0, 7.0, 0.0)) == pytest.approx(0.0, abs=1e-15)


def test_25ghz_dip_vanishes():
    r = coincidence_rate(0.0, HomParams(SIGMA_STAR, SIGMA_STAR, 25.0))
    v = 1 - r / 0.5
    assert 0 <= v < 1e-4


def test_visibility_trivial():
    assert visibility(HomParams(5.0, 5.0, 0.0)) == 1.0
    assert visibility(HomParams(10.0, 5.0, 0.0)) == pytest.approx(0.8, abs=1e-15)


def test_calibration():
    sigma = calibrate_sigma(0.677, 5.0)
    assert sigma == pytest.approx(SIGMA_STAR, abs=1e-12)
    assert sigma == pytest.approx(8.01, abs=0.02)
    assert visibility(HomParams(sigma, sigma, 5.0)) == pytest.approx(0.677, abs=1e-12)
    assert calibrate_sigma(math.exp(-1), 5.0) == pytest.approx(5.0)
    assert visibility(HomParams(sigma, sigma, 7.0)) == pytest.approx(0.465, abs=0.005)
    for bad in (0.0, 1.0, -0.2, 1.5):
        with pytest.raises(DomainError):
            calibrate_sigma(bad, 5.0)


def test_fig2_visibilities():
    got = [visibility(HomParams(SIGMA_STAR, SIGMA_STAR, d)) for d in (5, 7, 9)]
    np.testing.assert_allclose(got, [0.677, 0.465, 0.282], atol=0.005)


@settings(max_examples=100)
@given(widths, widths, st.floats(0, 60))
def test_eq3_eq4_consistency(ss, si, delta):
    p = HomParams(ss, si, delta)
    v = (coincidence_rate(1e9, p) - coincidence_rate(0.0, p)) / coincidence_rate(1e9, p)
    assert v == pytest.approx(visibility(p), abs=1e-12)


@settings(max_examples=100)
@given(widths, widths, st.floats(0, 60), st.floats(-1e4, 1e4))
def test_rate_bounded(ss, si, delta, d):
    assert 0.0 <= coincidence_rate(d, HomParams(ss, si, delta)) <= 0.5


@settings(max_examples=50)
@given(st.floats(2, 40))
def test_detuning_scaling_is_convention_free(sigma):
    v = {d: visibility(HomParams(sigma, sigma, d)) for d in (5, 7, 9)}
    assert math.log(v[7]) / math.log(v[5]) == pytest.approx(49 / 25, abs=1e-9)
    assert math.log(v[9]) / math.log(v[5]) == pytest.approx(81 / 25, abs=1e-9)


def test_monotonicity():
    v = [visibility(HomParams(8.0, 8.0, d)) for d in np.linspace(0, 30, 61)]
    assert np.all(np.diff(v) < 0)
    # fixed sigma_s^2 + sigma_i^2, growing mismatch
    total = 128.0
    ss = np.linspace(8.0, 11.0, 31)
    v = [visibility(HomParams(s, math.sqrt(total - s * s), 2.0)) for s in ss]
    assert np.all(np.diff(v) < 0)


def test_noisy_visibility():
    assert noisy_visibility(1.0, 70) == pytest.approx(0.972, abs=0.003)
    assert noisy_visibility(0.6, 1e9) == pytest.approx(0.6, abs=1e-8)
    assert noisy_visibility(0.0, 5) == 0.0
    with pytest.raises(DomainError):
        noisy_visibility(1.2, 70)


@settings(max_examples=100)
@given(st.floats(0, 1), st.floats(1e-3, 1e6))
def test_noise_never_helps(v, car):
    assert noisy_visibility(v, car) <= v
    if v > 1e-300:
        assert noisy_visibility(v, car) < v


def test_misalignment():
    assert misalignment_penalty(0, 8, 8) == 0
    assert misalignment_penalty(2, SIGMA_STAR, SIGMA_STAR) == pytest.approx(0.060, abs=0.005)
    assert misalignment_penalty(2, 10, 10) == pytest.approx(0.039, abs=0.002)


def test_budget():
    assert visibility_budget([]) == 1.0
    assert visibility_budget([("loss", 0.004)]) == pytest.approx(0.996)
    combined = visibility_budget([("noise", 0.028), ("misalignment", 0.04), ("loss", 0.004)])
    assert combined == pytest.approx(0.930, abs=0.01)
    with pytest.raises(DomainError):
        visibility_budget([("bad", 1.5)])


class TestDipCurve:
    def test_perfect(self):
        p = HomParams(8.0, 8.0, 0.0)
        delays = np.linspace(-10, 10, 41) * p.dip_width()
        c = dip_curve(p, delays)
        assert c.coincidences[20] == pytest.approx(0.0, abs=1e-15)
        assert c.coincidences[0] == pytest.approx(1.0, abs=1e-12)
        assert c.coincidences[-1] == pytest.approx(1.0, abs=1e-12)

    def test_matches_rate_ratio(self):
        p = HomParams(6.0, 9.0, 4.0)
        c = dip_curve(p, DELAYS)
        np.testing.assert_allclose(c.coincidences, coincidence_rate(DELAYS, p) / 0.5, atol=1e-14)

    def test_vanishing_dip(self):
        c = dip_curve(HomParams(SIGMA_STAR, SIGMA_STAR, 25.0), DELAYS)
        assert np.all(np.abs(c.coincidences - 1) < 1e-3)

    def test_noise_scales_fitted_visibility(self):
        c = dip_curve(HomParams(SIGMA_STAR, SIGMA_STAR, 5.0, car=70), DELAYS, apply_noise=True)
        assert fit_visibility(c).visibility == pytest.approx(0.677 * 70 / 72, abs=1e-6)
        assert fit_visibility(c).visibility == pytest.approx(0.677 * 0.972, abs=0.01)

    def test_sorted_and_validated(self):
        c = DipCurve([3, 1, 2, 0, 4], [1, 0.5, 0.7, 0.9, 1])
        assert list(c.delays) == [0, 1, 2, 3, 4]
        assert list(c.coincidences) == [0.9, 0.5, 0.7, 1, 1]
        with pytest.raises(DomainError):
            dip_curve(HomParams(8, 8), [0, 1, 2])
        with pytest.raises(DomainError):
            dip_curve(HomParams(8, 8), DELAYS, apply_noise=True)


class TestFit:
    @pytest.mark.parametrize("v", [0.920, 0.602, 0.337, 0.231])
    def test_noiseless_round_trip(self, v):
        fit = fit_visibility(DipCurve(DELAYS, dip_model(DELAYS, v, 3.0, 25.0)))
        assert fit.converged
        assert fit.visibility == pytest.approx(v, abs=0.005)
        assert fit.center == pytest.approx(3.0, abs=1e-6)
        assert fit.width == pytest.approx(25.0, abs=1e-6)

    def test_flat_curve(self):
        fit = fit_visibility(DipCurve(DELAYS, np.ones_like(DELAYS)))
        assert fit.visibility == pytest.approx(0.0, abs=0.005)
        assert not fit.converged
        assert "degenerate" in fit.message

    def test_no_dip(self):
        fit = fit_visibility(DipCurve(DELAYS, 1 + 0.01 * np.abs(np.sin(DELAYS))))
        assert not fit.converged
        assert fit.visibility == 0.0

    def test_noisy_monte_carlo(self):
        errs = []
        for seed in range(100):
            rng = np.random.default_rng(seed)
            y = dip_model(DELAYS, 0.602, 0.0, 28.0) + rng.normal(0, 0.02, DELAYS.size)
            errs.append(fit_visibility(DipCurve(DELAYS, y)).visibility - 0.602)
        assert max(abs(e) for e in errs) <= 0.03

    def test_deterministic(self):
        rng = np.random.default_rng(7)
        y = dip_model(DELAYS, 0.4, -5.0, 30.0) + rng.normal(0, 0.02, DELAYS.size)
        a = fit_visibility(DipCurve(DELAYS, y))
        b = fit_visibility(DipCurve(DELAYS, y.copy()))
        assert a == b
