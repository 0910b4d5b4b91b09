"""Phase-modulator sideband combs and the four-branch single-sideband modulator."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ._errors import DomainError
from .bessel import bessel_j_orders

TWO_PI = 2.0 * math.pi
PM_BANDWIDTH_GHZ = 100.0
# Back-solved from the 0.46 V <-> m = 0.54 operating point.
DEFAULT_V_PI = 2.676
POWER_FLOOR = 1e-30


def default_n_max(m):
    """Truncation order leaving < 1e-12 of the comb power outside ``[-n_max, n_max]``."""
    return int(math.ceil(m)) + 20


def _wrap(angle):
    a = math.fmod(float(angle), TWO_PI)
    if a < 0.0:
        a += TWO_PI
    # fmod can round up to exactly 2*pi
    return 0.0 if a >= TWO_PI else a


@dataclass(frozen=True)
class SidebandSpectrum:
    """Complex sideband amplitudes for orders ``-n_max..n_max``, relative to the input field."""

    amplitudes: np.ndarray
    n_max: int

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2 * self.n_max + 1,):
            raise ValueError(f"expected {2 * self.n_max + 1} amplitudes, got {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("sideband amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def orders(self):
        return np.arange(-self.n_max, self.n_max + 1)

    def __getitem__(self, order):
        if abs(order) > self.n_max:
            return 0j
        return complex(self.amplitudes[order + self.n_max])

    def powers(self):
        return np.abs(self.amplitudes) ** 2

    def total_power(self):
        return float(np.sum(self.powers()))

    def items(self):
        return zip(self.orders.tolist(), self.amplitudes.tolist())

    @classmethod
    def identity(cls, n_max=1):
        amps = np.zeros(2 * n_max + 1, dtype=complex)
        amps[n_max] = 1.0
        return cls(amps, n_max)


def paper_bias_preset():
    """Bias pairs ``(alpha, theta)`` that keep only orders n = 3 (mod 4): ..., -5, -1, 3, 7, ..."""
    return (
        (0.0, 0.0),
        (math.pi, math.pi),
        (math.pi / 2, math.pi / 2),
        (3 * math.pi / 2, 3 * math.pi / 2),
    )


@dataclass(frozen=True)
class ModulatorConfig:
    """Drive and bias settings of a four-branch single-sideband modulator.

    ``m`` is the modulation index, ``f_m`` the RF frequency in GHz and ``biases``
    four ``(alpha, theta)`` pairs in radians (RF phase, optical phase) per branch.
    """

    m: float
    f_m: float
    biases: tuple = field(default_factory=paper_bias_preset)
    insertion_loss_db: float = 0.0

    def __post_init__(self):
        if not (self.m >= 0.0 and math.isfinite(self.m)):
            raise DomainError(f"modulation index m must be >= 0, got {self.m}")
        if not (self.f_m > 0.0 and math.isfinite(self.f_m)):
            raise DomainError(f"RF frequency f_m must be > 0, got {self.f_m}")
        if not (self.insertion_loss_db >= 0.0):
            raise DomainError(f"insertion_loss_db must be >= 0, got {self.insertion_loss_db}")
        biases = tuple(tuple(pair) for pair in self.biases)
        if len(biases) != 4 or any(len(p) != 2 for p in biases):
            raise DomainError("biases must be four (alpha, theta) pairs")
        if self.f_m > PM_BANDWIDTH_GHZ:
            warnings.warn(
                f"f_m={self.f_m} GHz exceeds typical phase-modulator bandwidth "
                f"({PM_BANDWIDTH_GHZ} GHz)",
                stacklevel=2,
            )
        object.__setattr__(self, "m", float(self.m))
        object.__setattr__(self, "f_m", float(self.f_m))
        object.__setattr__(self, "insertion_loss_db", float(self.insertion_loss_db))
        object.__setattr__(
            self, "biases", tuple((_wrap(a), _wrap(t)) for a, t in biases)
        )

    def with_biases(self, biases):
        return ModulatorConfig(self.m, self.f_m, tuple(biases), self.insertion_loss_db)

    def with_m(self, m):
        return ModulatorConfig(m, self.f_m, self.biases, self.insertion_loss_db)


@lru_cache(maxsize=256)
def _comb(n_max, m):
    jn = bessel_j_orders(n_max, m)
    jn.setflags(write=False)
    return jn


def pm_sidebands(m, theta, alpha, n_max=None):
    """Output comb of one phase modulator fed by half the input field.

    Order ``n`` carries ``0.5 * exp(i*theta) * J_n(m) * exp(i*n*alpha)``.
    """
    if n_max is None:
        n_max = default_n_max(m)
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    orders = np.arange(-n_max, n_max + 1)
    jn = _comb(n_max, float(m))
    amps = 0.5 * np.exp(1j * theta) * jn * np.exp(1j * orders * alpha)
    return SidebandSpectrum(amps, n_max)


def ossb_compose(config, n_max=None):
    """Sideband spectrum at the output of the four-branch modulator.

    The four phase-modulator outputs are recombined with a further factor 1/2,
    then the lumped insertion loss scales every amplitude uniformly.
    """
    if n_max is None:
        n_max = default_n_max(config.m)
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    orders = np.arange(-n_max, n_max + 1)
    jn = _comb(n_max, config.m)
    phasor = np.zeros(orders.shape, dtype=complex)
    for alpha, theta in config.biases:
        phasor += np.exp(1j * (theta + orders * alpha))
    amps = 0.25 * phasor * jn
    amps *= 10.0 ** (-config.insertion_loss_db / 20.0)
    return SidebandSpectrum(amps, n_max)


def conversion_efficiency(spectrum, order):
    """Power fraction of the input transferred to sideband ``order``."""
    if abs(order) > spectrum.n_max:
        raise DomainError(f"order {order} outside truncation n_max={spectrum.n_max}")
    return abs(spectrum[order]) ** 2


def suppression_ratio_db(spectrum, target_order):
    """Power ratio (dB) of ``target_order`` over the strongest other component.

    Returns ``inf`` when every other component is below 1e-30 in power; a
    target below that floor counts as zero.
    """
    p = spectrum.powers()
    idx = target_order + spectrum.n_max
    if not 0 <= idx < p.size or p[idx] < POWER_FLOOR:
        raise DomainError(f"target order {target_order} has zero amplitude")
    others = np.delete(p, idx)
    worst = others.max() if others.size else 0.0
    if worst < POWER_FLOOR:
        return math.inf
    return 10.0 * math.log10(p[idx] / worst)


def modulation_index(v_rf, v_pi=DEFAULT_V_PI):
    """Linear electro-optic relation m = pi * v_rf / v_pi."""
    if not v_pi > 0.0:
        raise DomainError(f"v_pi must be > 0, got {v_pi}")
    if v_rf < 0.0:
        raise DomainError(f"v_rf must be >= 0, got {v_rf}")
    return math.pi * v_rf / v_pi


def rf_voltage(m, v_pi=DEFAULT_V_PI):
    """Inverse of :func:`modulation_index`."""
    if not v_pi > 0.0:
        raise DomainError(f"v_pi must be > 0, got {v_pi}")
    if m < 0.0:
        raise DomainError(f"m must be >= 0, got {m}")
    return m * v_pi / math.pi
