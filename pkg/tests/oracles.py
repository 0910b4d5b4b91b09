"""Reference computations kept independent of the package code paths."""
import math
from fractions import Fraction

import mpmath
import numpy as np

mpmath.mp.dps = 40


def bessel_series(n, x, terms=60):
    """Ascending series evaluated in 40-digit arithmetic."""
    x = mpmath.mpf(x)
    sign = -1 if (n < 0 and n % 2) else 1
    n = abs(n)
    total = mpmath.mpf(0)
    for k in range(terms):
        total += (-1) ** k * (x / 2) ** (2 * k + n) / (mpmath.factorial(k) * mpmath.factorial(k + n))
    return sign * float(total)


def gaussian_amp(nu, center, width):
    return (math.pi * width * width) ** -0.25 * np.exp(-((nu - center) ** 2) / (2 * width * width))


def grid_overlap(comps_a, comps_b, delay_ps, step, half_width=14.0):
    """Trapezoid integral of conj(a) b exp(i 2 pi nu delay) for lists of (center, width, weight)."""
    comps = comps_a + comps_b
    lo = min(c for c, _, _ in comps) - half_width * max(w for _, w, _ in comps)
    hi = max(c for c, _, _ in comps) + half_width * max(w for _, w, _ in comps)
    nu = np.arange(lo, hi + step, step)
    fa = sum(wt * gaussian_amp(nu, c, w) for c, w, wt in comps_a)
    fb = sum(wt * gaussian_amp(nu, c, w) for c, w, wt in comps_b)
    integrand = np.conj(fa) * fb * np.exp(2j * math.pi * 1e-3 * delay_ps * nu)
    return complex(np.sum((integrand[1:] + integrand[:-1]) * 0.5 * step))


def dense_argmax(f, lo, hi, step):
    grid = np.arange(lo, hi + step / 2, step)
    vals = np.array([f(x) for x in grid])
    return float(grid[int(np.argmax(vals))])


# Frozen with the 40-digit series / mpmath before the implementation existed.
J1_AT_1_8412 = 0.5818652242276431
EFF_M1_AT_1_8412 = 0.33856713916548535
EFF_P3_AT_1_8412 = 0.010964672914232117
EFF_M1_AT_0_54 = 0.06774429915880103
EFF_M1_AT_0_54_DB = -11.691272458121696
SUPP_AT_0_54_DB = 38.14851671543302
SUPP_AT_1_8412_DB = 14.896491230039696
M_STAR = 1.8411837813406593
SIGMA_STAR = 8.005545538707208
