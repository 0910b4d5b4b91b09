"""Single-photon spectral amplitudes built from Gaussian components.

Frequencies are offsets in GHz from a reference (half the pump frequency);
delays are in ps. A component with amplitude width ``A`` is the unit-norm
function ``(pi A^2)^(-1/4) exp(-(nu - c)^2 / (2 A^2))`` over ``nu`` in GHz.

The width ``sigma`` in the closed-form coincidence model relates to the
amplitude width by ``sigma = sqrt(2) * A`` (see :func:`hom_sigma`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._errors import DomainError

# rad per (GHz * ps)
PHASE_PER_GHZ_PS = 2.0 * math.pi * 1e-3
NORM_SLACK = 1e-9


@dataclass(frozen=True)
class GaussianComponent:
    center: float
    sigma_amp: float
    weight: complex = 1.0 + 0j

    def __post_init__(self):
        if not (self.sigma_amp > 0.0 and math.isfinite(self.sigma_amp)):
            raise DomainError(f"sigma_amp must be > 0, got {self.sigma_amp}")
        if not (math.isfinite(self.center) and np.isfinite(complex(self.weight))):
            raise DomainError("center and weight must be finite")
        object.__setattr__(self, "center", float(self.center))
        object.__setattr__(self, "sigma_amp", float(self.sigma_amp))
        object.__setattr__(self, "weight", complex(self.weight))

    def amplitude(self, nu):
        nu = np.asarray(nu, dtype=float)
        a = self.sigma_amp
        return (
            self.weight
            * (math.pi * a * a) ** -0.25
            * np.exp(-((nu - self.center) ** 2) / (2.0 * a * a))
        )


def _pair_overlap(p, q, delay):
    """Closed-form integral of conj(p) * q * exp(i*k*nu) for two components."""
    a2, b2 = p.sigma_amp**2, q.sigma_amp**2
    s2 = a2 + b2
    kappa = PHASE_PER_GHZ_PS * delay
    precision = 1.0 / a2 + 1.0 / b2
    mean = (p.center / a2 + q.center / b2) / precision
    mag = math.sqrt(2.0 * p.sigma_amp * q.sigma_amp / s2) * math.exp(
        -((p.center - q.center) ** 2) / (2.0 * s2) - kappa * kappa / (2.0 * precision)
    )
    return p.weight.conjugate() * q.weight * mag * complex(math.cos(kappa * mean), math.sin(kappa * mean))


class PhotonSpectrum:
    """Weighted sum of Gaussian spectral-amplitude components.

    The L2 norm is at most 1; a smaller norm is the survival probability
    amplitude of a photon that has passed a lossy element.
    """

    def __init__(self, components):
        self.components = tuple(components)
        if not self.components:
            raise DomainError("a photon spectrum needs at least one component")
        n = self.norm()
        if not (0.0 < n <= 1.0 + NORM_SLACK):
            raise DomainError(f"photon spectrum norm must lie in (0, 1], got {n!r}")

    def __repr__(self):
        return f"PhotonSpectrum({list(self.components)!r})"

    def __len__(self):
        return len(self.components)

    def norm(self):
        total = 0.0
        for p in self.components:
            for q in self.components:
                total += _pair_overlap(p, q, 0.0).real
        return math.sqrt(max(total, 0.0))

    def amplitude(self, nu):
        nu = np.asarray(nu, dtype=float)
        out = np.zeros(nu.shape, dtype=complex)
        for comp in self.components:
            out += comp.amplitude(nu)
        return out

    def scaled(self, factor):
        return PhotonSpectrum(
            GaussianComponent(c.center, c.sigma_amp, c.weight * factor) for c in self.components
        )

    def dominant(self):
        """Component with the largest weight magnitude."""
        return max(self.components, key=lambda c: abs(c.weight))


def hom_sigma(sigma_amp):
    """Width used in the closed-form coincidence rate for a given amplitude width."""
    return math.sqrt(2.0) * sigma_amp


def sigma_amp_from_hom(sigma):
    return sigma / math.sqrt(2.0)


def from_filter(center, fwhm_3db, sigma_convention):
    """Unit-norm photon behind a Gaussian band-pass filter.

    ``sigma_convention`` is the ratio of amplitude width to 3-dB bandwidth; it is
    a calibration input (see :data:`ossbsim.presets.SIGMA_CONVENTION`).
    """
    if not fwhm_3db > 0.0:
        raise DomainError(f"fwhm_3db must be > 0, got {fwhm_3db}")
    if not sigma_convention > 0.0:
        raise DomainError(f"sigma_convention must be > 0, got {sigma_convention}")
    return PhotonSpectrum([GaussianComponent(center, sigma_convention * fwhm_3db, 1.0)])


def apply_modulator(photon, sidebands, f_m):
    """Replicate every component at ``center + n * f_m`` weighted by sideband ``n``."""
    out = []
    for comp in photon.components:
        for order, amp in sidebands.items():
            if abs(amp) <= 1e-16:
                continue
            out.append(GaussianComponent(comp.center + order * f_m, comp.sigma_amp, comp.weight * amp))
    if not out:
        raise DomainError("modulator output carries no power")
    return PhotonSpectrum(out)


def overlap(a, b, delay=0.0):
    """Closed-form ``integral conj(a(nu)) b(nu) exp(i 2 pi nu delay) dnu``.

    ``nu`` in GHz, ``delay`` in ps.
    """
    total = 0j
    for p in a.components:
        for q in b.components:
            total += _pair_overlap(p, q, delay)
    return total
