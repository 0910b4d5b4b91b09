"""Bessel functions of the first kind, integer order.

Self-contained evaluation over the envelope ``|n| <= 64``, ``0 <= x <= 32``.
Small arguments use the ascending power series; larger ones use Miller's
downward recurrence normalised with ``J_0 + 2 * sum(J_2k) = 1``.
"""
import math

import numpy as np

from ._errors import DomainError

MAX_ORDER = 64
MAX_ARG = 32.0
SERIES_LIMIT = 12.0

_RESCALE = 1e250


def _check(n, x):
    if abs(n) > MAX_ORDER:
        raise DomainError(f"order |n|={abs(n)} exceeds supported maximum {MAX_ORDER}")
    if not (0.0 <= x <= MAX_ARG) or math.isnan(x):
        raise DomainError(f"argument x={x} outside supported range [0, {MAX_ARG}]")


def _series(n, x):
    # sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!)
    half = 0.5 * x
    term = 1.0
    for k in range(1, n + 1):
        term *= half / k
    if term == 0.0:
        return 0.0
    q = -half * half
    terms = [term]
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + n))
        terms.append(term)
        if abs(term) < 1e-18 * max(abs(terms[0]), 1e-300) and k > half:
            break
        if k > 200:
            break
    return math.fsum(terms)


def _miller(nmax, x):
    """J_0..J_nmax by downward recurrence (x > 0)."""
    top = max(nmax, int(x)) + 2 * int(math.sqrt(40.0 * max(nmax, x, 1.0))) + 20
    top += top % 2
    out = np.zeros(nmax + 1)
    j_next, j_cur = 0.0, 1e-30
    norm = 0.0
    for k in range(top, 0, -1):
        j_prev = (2.0 * k / x) * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        # j_cur now holds the unnormalised J_{k-1}
        if abs(j_cur) > _RESCALE:
            j_cur /= _RESCALE
            j_next /= _RESCALE
            out /= _RESCALE
            norm /= _RESCALE
        if k - 1 <= nmax:
            out[k - 1] = j_cur
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * j_cur
    norm += j_cur
    return out / norm


def bessel_j(n, x):
    """Return J_n(x) for integer ``n`` and real ``x``.

    Negative orders use ``J_{-n}(x) = (-1)^n J_n(x)``.

    Raises
    ------
    DomainError
        If ``(n, x)`` lies outside ``|n| <= 64, 0 <= x <= 32``.
    """
    n = int(n)
    x = float(x)
    _check(n, x)
    if n < 0:
        val = bessel_j(-n, x)
        return -val if n % 2 else val
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    if x < SERIES_LIMIT:
        return _series(n, x)
    return float(_miller(n, x)[n])


def bessel_j_orders(n_max, x):
    """Array of J_n(x) for n = -n_max..n_max (length ``2 * n_max + 1``)."""
    n_max = int(n_max)
    x = float(x)
    _check(n_max, x)
    if x == 0.0:
        pos = np.zeros(n_max + 1)
        pos[0] = 1.0
    elif x < SERIES_LIMIT:
        pos = np.array([_series(k, x) for k in range(n_max + 1)])
    else:
        pos = _miller(n_max, x)
    signs = np.where(np.arange(n_max, 0, -1) % 2, -1.0, 1.0)
    return np.concatenate([signs * pos[:0:-1], pos])
