"""Closed-form Hong-Ou-Mandel coincidence model, noise budget and dip fitting.

Units: widths and detuning in GHz, delays in ps. The width-delay product in
the coincidence exponent is multiplied by ``2 pi 1e-3`` so that it is in
radians; with this convention the closed form coincides with the numerical
overlap of Gaussian amplitudes whose width is ``sigma / sqrt(2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from ._errors import DomainError
from .photons import PHASE_PER_GHZ_PS

FIT_MAX_NFEV = 2000
FIT_XTOL = 1e-10


@dataclass(frozen=True)
class HomParams:
    """Signal/idler widths, centre-frequency difference and optional source CAR."""

    sigma_s: float
    sigma_i: float
    delta: float = 0.0
    car: float | None = None

    def __post_init__(self):
        if not (self.sigma_s > 0 and self.sigma_i > 0):
            raise DomainError("sigma_s and sigma_i must be > 0")
        if not self.delta >= 0:
            raise DomainError(f"delta must be >= 0, got {self.delta}")
        if self.car is not None and not self.car > 0:
            raise DomainError(f"car must be > 0, got {self.car}")

    @property
    def _sum_sq(self):
        return self.sigma_s**2 + self.sigma_i**2

    def dip_width(self):
        """Standard deviation (ps) of the Gaussian dip in delay."""
        return math.sqrt(self._sum_sq) / (PHASE_PER_GHZ_PS * self.sigma_s * self.sigma_i)


@dataclass(frozen=True)
class FitResult:
    visibility: float
    center: float
    width: float
    residual: float
    converged: bool = True
    message: str = ""


@dataclass
class DipCurve:
    """Normalised coincidences sampled over delay (ps), sorted by delay."""

    delays: np.ndarray
    coincidences: np.ndarray
    fit: FitResult | None = field(default=None)

    def __post_init__(self):
        d = np.asarray(self.delays, dtype=float)
        c = np.asarray(self.coincidences, dtype=float)
        if d.shape != c.shape or d.ndim != 1:
            raise ValueError("delays and coincidences must be 1-D arrays of equal length")
        order = np.argsort(d, kind="stable")
        self.delays, self.coincidences = d[order], c[order]

    def __len__(self):
        return self.delays.size

    def rows(self):
        return list(zip(self.delays.tolist(), self.coincidences.tolist()))


def coincidence_rate(d, p):
    """Coincidence probability at delay ``d`` (ps); 1/2 far from the dip."""
    d = np.asarray(d, dtype=float)
    ss, si = p.sigma_s, p.sigma_i
    s2 = p._sum_sq
    kd = PHASE_PER_GHZ_PS * d
    expo = (ss * ss * si * si * kd * kd + 4.0 * p.delta**2) / (2.0 * s2)
    out = 0.5 - (ss * si / s2) * np.exp(-expo)
    return float(out) if out.ndim == 0 else out


def visibility(p):
    s2 = p._sum_sq
    return 2.0 * (p.sigma_s * p.sigma_i / s2) * math.exp(-4.0 * p.delta**2 / (2.0 * s2))


def calibrate_sigma(target_v, delta):
    """Equal width sigma giving visibility ``target_v`` at detuning ``delta``."""
    if not 0.0 < target_v < 1.0:
        raise DomainError(f"target visibility must lie in (0, 1), got {target_v}")
    if not delta > 0.0:
        raise DomainError(f"delta must be > 0, got {delta}")
    return delta / math.sqrt(-math.log(target_v))


def noisy_visibility(v_ideal, car):
    """Visibility with an accidental-coincidence floor from a finite CAR.

    Accidentals from two uncorrelated channels add ``2 / car`` of the true
    coincidence rate to both the dip and the baseline.
    """
    if not 0.0 <= v_ideal <= 1.0:
        raise DomainError(f"v_ideal must lie in [0, 1], got {v_ideal}")
    if not car > 0:
        raise DomainError(f"car must be > 0, got {car}")
    return v_ideal * car / (car + 2.0)


def misalignment_penalty(delta_err, sigma_s, sigma_i):
    """Fractional visibility loss from a residual centre-frequency error (GHz)."""
    if delta_err < 0 or not (sigma_s > 0 and sigma_i > 0):
        raise DomainError("delta_err must be >= 0 and widths > 0")
    return 1.0 - math.exp(-4.0 * delta_err**2 / (2.0 * (sigma_s**2 + sigma_i**2)))


def visibility_budget(factors):
    """Combine independent fractional penalties ``[(label, penalty), ...]`` multiplicatively."""
    v = 1.0
    for label, penalty in factors:
        if not 0.0 <= penalty <= 1.0:
            raise DomainError(f"penalty {label!r} must lie in [0, 1], got {penalty}")
        v *= 1.0 - penalty
    return v


def dip_curve(p, delays, apply_noise=False):
    """Sample ``R_c(d) / R_c(inf)``; with ``apply_noise`` the dip depth follows the CAR floor."""
    delays = np.asarray(delays, dtype=float)
    if delays.size < 5:
        raise DomainError("a dip curve needs at least 5 delays")
    v = visibility(p)
    if apply_noise:
        if p.car is None:
            raise DomainError("apply_noise requires a CAR value")
        v = noisy_visibility(v, p.car)
    w = p.dip_width()
    coinc = 1.0 - v * np.exp(-(delays**2) / (2.0 * w * w))
    return DipCurve(delays, coinc)


def dip_model(d, v, d0, w):
    return 1.0 - v * np.exp(-((np.asarray(d) - d0) ** 2) / (2.0 * w * w))


def _initial_guess(d, y):
    k = int(np.argmin(y))
    v0 = 1.0 - y[k]
    below = d[y < 1.0 - 0.5 * v0]
    if below.size >= 2:
        w0 = (below.max() - below.min()) / 2.3548
    else:
        w0 = np.median(np.diff(d))
    return np.array([v0, d[k], max(w0, 1e-3 * (d[-1] - d[0]))])


def fit_visibility(curve):
    """Least-squares fit of ``1 - V exp(-(d - d0)^2 / (2 w^2))`` to a dip curve.

    Initial values come from the deepest sample and the half-depth span; the
    Levenberg-Marquardt solver stops once the parameter step drops below 1e-10.
    Degenerate data (flat curve, no dip) yield ``converged=False`` with a
    diagnostic message rather than an exception.
    """
    d, y = curve.delays, curve.coincidences
    if d.size < 5:
        raise DomainError("fit needs at least 5 samples")
    flat_rms = float(np.sqrt(np.mean((y - 1.0) ** 2)))
    if np.ptp(y) < 1e-12:
        return FitResult(0.0, math.nan, math.nan, flat_rms, False, "degenerate data: zero variance")
    x0 = _initial_guess(d, y)
    if x0[0] <= 0.0:
        return FitResult(0.0, math.nan, math.nan, flat_rms, False, "no dip below baseline")

    span = d[-1] - d[0]
    res = least_squares(
        lambda x: dip_model(d, *x) - y,
        x0,
        method="lm",
        xtol=FIT_XTOL,
        ftol=1e-15,
        gtol=1e-15,
        max_nfev=FIT_MAX_NFEV,
        x_scale=np.array([1.0, span, span]),
    )
    v, d0, w = res.x
    rms = float(np.sqrt(np.mean(res.fun**2)))
    ok = bool(res.status > 0)
    return FitResult(float(v), float(d0), float(abs(w)), rms, ok, res.message)
