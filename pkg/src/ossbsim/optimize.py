"""Golden-section search for the drive level and coordinate-wise bias trimming."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from ._errors import DomainError
from .sideband import (
    ModulatorConfig,
    conversion_efficiency,
    ossb_compose,
    suppression_ratio_db,
)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class OptimizationResult:
    x: object
    value: float
    iterations: int
    converged: bool
    tolerance: float
    message: str = ""
    trace: list = field(default_factory=list, repr=False)


def golden_section_max(f, lo, hi, tol=1e-6, max_iter=500):
    """Maximise a unimodal ``f`` on ``[lo, hi]``.

    ``trace`` records ``(a, c, d, b)`` for every iteration. A maximiser within
    ``tol`` of either end is reported as a boundary maximum (``converged=False``).
    """
    if not lo < hi:
        raise DomainError(f"empty bracket [{lo}, {hi}]")
    a, b = float(lo), float(hi)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    trace = []
    it = 0
    while b - a > tol and it < max_iter:
        trace.append((a, c, d, b))
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
        it += 1
    x, fx = (c, fc) if fc >= fd else (d, fd)
    width = b - a
    converged = width <= tol
    message = "converged" if converged else "iteration cap reached"
    for end in (lo, hi):
        if abs(x - end) <= 2.0 * tol:
            f_end = f(end)
            if f_end >= fx:
                x, fx = float(end), f_end
            converged = False
            message = f"boundary maximum at {end}"
    return OptimizationResult(x, fx, it, converged, width, message, trace)


def maximize_conversion(order=-1, bracket=(0.5, 3.0), tol=1e-6, config=None):
    """Modulation index maximising the power in sideband ``order``."""
    lo, hi = bracket
    if not (0.0 <= lo < hi <= 10.0):
        raise DomainError(f"bracket must satisfy 0 <= lo < hi <= 10, got {bracket}")
    if tol < 1e-6:
        raise DomainError(f"tol must be >= 1e-6, got {tol}")
    base = config if config is not None else ModulatorConfig(1.0, 25.0)
    n_max = int(math.ceil(hi)) + 20

    def objective(m):
        return conversion_efficiency(ossb_compose(base.with_m(m), n_max), order)

    return golden_section_max(objective, lo, hi, tol)


def bias_objective(kind="suppression", order=-1):
    """Objective on a :class:`ModulatorConfig`: suppression (dB) or efficiency at ``order``."""
    if kind == "suppression":
        def objective(cfg):
            try:
                return suppression_ratio_db(ossb_compose(cfg), order)
            except DomainError:
                return -math.inf
    elif kind == "efficiency":
        def objective(cfg):
            return conversion_efficiency(ossb_compose(cfg), order)
    else:
        raise DomainError(f"unknown objective {kind!r}")
    return objective


def _set_angle(biases, index, value):
    flat = [v for pair in biases for v in pair]
    flat[index] = value
    return tuple((flat[2 * k], flat[2 * k + 1]) for k in range(4))


def trim_biases(perturbed, objective="suppression", order=-1, tol=1e-6, max_iter=50,
                search_half_width=0.3):
    """Cyclic coordinate ascent over the eight bias angles.

    Each sweep runs a golden-section search per angle on
    ``[angle - search_half_width, angle + search_half_width]`` and keeps the
    new value only if it strictly improves the objective, so the objective
    never decreases. Stops once a full sweep gains less than ``tol``.
    """
    f = bias_objective(objective, order) if isinstance(objective, str) else objective
    cfg = perturbed
    best = f(cfg)
    start = best
    sweeps = 0
    gain = math.inf
    while sweeps < max_iter:
        sweeps += 1
        before = best
        for idx in range(8):
            pair = cfg.biases[idx // 2]
            x0 = pair[idx % 2]

            def along(v, idx=idx):
                return f(cfg.with_biases(_set_angle(cfg.biases, idx, v)))

            res = golden_section_max(along, x0 - search_half_width, x0 + search_half_width, 1e-9)
            if res.value > best:
                cfg = cfg.with_biases(_set_angle(cfg.biases, idx, res.x))
                best = res.value
        gain = best - before
        if not gain >= tol:
            break
    converged = gain < tol or (math.isinf(best) and best > 0)
    msg = f"objective {start:.6g} -> {best:.6g} after {sweeps} sweeps"
    return OptimizationResult(cfg, best, sweeps, converged, gain, msg)
