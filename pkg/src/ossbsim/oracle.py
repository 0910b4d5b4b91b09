"""Brute-force two-photon interference by trapezoid quadrature on a frequency grid.

Deliberately independent of the closed-form overlap in :mod:`ossbsim.photons`:
spectra are sampled point-wise and every integral is a plain trapezoid sum.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._errors import DomainError
from .photons import PHASE_PER_GHZ_PS, apply_modulator
from .sideband import ModulatorConfig, SidebandSpectrum, ossb_compose


@dataclass(frozen=True)
class QuadratureSpec:
    """Grid half-width in units of the widest component, step in units of the narrowest."""

    half_width: float = 12.0
    step: float = 1.0 / 200.0

    def __post_init__(self):
        if self.half_width < 8.0:
            raise DomainError(f"grid half-width must be >= 8 widths, got {self.half_width}")
        if not 0.0 < self.step <= 0.01:
            raise DomainError(f"grid step must be in (0, 1/100] widths, got {self.step}")


def frequency_grid(spectra, q):
    comps = [c for s in spectra for c in s.components]
    widest = max(c.sigma_amp for c in comps)
    narrowest = min(c.sigma_amp for c in comps)
    lo = min(c.center for c in comps) - q.half_width * widest
    hi = max(c.center for c in comps) + q.half_width * widest
    h = q.step * narrowest
    n = int(np.ceil((hi - lo) / h)) + 1
    return lo + h * np.arange(n)


def grid_overlap(a, b, delay, q):
    """Quadrature of ``conj(a) b exp(i 2 pi nu delay)`` plus both squared norms."""
    nu = frequency_grid((a, b), q)
    fa = a.amplitude(nu)
    fb = b.amplitude(nu)
    phase = np.exp(1j * PHASE_PER_GHZ_PS * delay * nu)
    ov = np.trapezoid(np.conj(fa) * fb * phase, nu)
    na = np.trapezoid(np.abs(fa) ** 2, nu)
    nb = np.trapezoid(np.abs(fb) ** 2, nu)
    return complex(ov), float(na), float(nb)


def oracle_coincidence(s, i, delay, q=QuadratureSpec()):
    """Coincidence probability of two independent pure photons at a 50:50 splitter.

    Post-selected on both photons surviving, i.e. normalised by both norms.
    """
    ov, ns, ni = grid_overlap(s, i, delay, q)
    p = 0.5 * (1.0 - abs(ov) ** 2 / (ns * ni))
    return min(max(p, 0.0), 0.5)


def oracle_visibility(s, i, q=QuadratureSpec(), delay=0.0):
    return 1.0 - 2.0 * oracle_coincidence(s, i, delay, q)


def residual_sideband_penalty(m, f_m, filter_s, filter_i_pre, q=QuadratureSpec(), order=-1):
    """Fractional visibility loss caused by every sideband other than ``order``.

    The idler passes the preset single-sideband modulator with no filtering
    afterwards; the result compares the dip against the one obtained with only
    the wanted sideband.
    """
    full = ossb_compose(ModulatorConfig(m, f_m))
    only = np.zeros_like(full.amplitudes)
    only[order + full.n_max] = full[order]
    first = SidebandSpectrum(only, full.n_max)

    v_full = oracle_visibility(filter_s, apply_modulator(filter_i_pre, full, f_m), q)
    v_first = oracle_visibility(filter_s, apply_modulator(filter_i_pre, first, f_m), q)
    return 1.0 - v_full / v_first
