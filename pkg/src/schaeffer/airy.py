"""Airy function Ai and its derivative on the real line.

Two regimes:

* |x| <= 9: the Maclaurin series Ai(x) = c1 f(x) - c2 g(x) with
  c1 = 3^(-2/3)/Gamma(2/3), c2 = 3^(-1/3)/Gamma(1/3).  The partial sums
  reach magnitude ~ exp(xi), xi = (2/3)|x|^(3/2), before cancelling down
  to the answer, so the accumulation runs at an adaptive precision of
  25 + 0.9 xi digits; double precision alone would lose the 1e-10 target
  already near |x| = 4.

* |x| > 9: the standard asymptotic expansions (the oscillatory
  cos/sin(xi - pi/4) pair for negative arguments, the recessive
  exponential for positive ones) extended with the u_k / v_k correction
  sequences, truncated at the smallest term.  At the seam xi = 18 the
  optimally truncated tail is ~ exp(-2 xi) ~ 1e-15.
"""

from __future__ import annotations

import math

import numpy as np

SERIES_CUTOFF = 9.0
_N_CORRECTIONS = 24


def _correction_coeffs(K: int = _N_CORRECTIONS):
    # u_0 = 1, u_{k+1}/u_k = (3k+5/2)(3k+3/2)(3k+1/2) / (54 (k+1)(k+1/2));
    # v_k = u_k (6k+1)/(1-6k)
    u = [1.0]
    for k in range(K):
        u.append(u[-1] * (3 * k + 2.5) * (3 * k + 1.5) * (3 * k + 0.5) / (54 * (k + 1) * (k + 0.5)))
    u = np.array(u)
    v = u * np.array([(6 * k + 1) / (1 - 6 * k) if k else 1.0 for k in range(len(u))])
    return u, v


_U, _V = _correction_coeffs()


def _asym_sum(coeffs: np.ndarray, xi: float) -> float:
    """sum_k (-1)^k coeffs[k] / xi^k, truncated at the smallest term."""
    total = 0.0
    prev = math.inf
    for k, u in enumerate(coeffs):
        term = u / xi ** k
        if abs(term) > abs(prev):
            break
        total += (-term if k % 2 else term)
        prev = term
    return total


def _series(x: float, derivative: bool) -> float:
    import mpmath as mp

    xi = (2.0 / 3.0) * abs(x) ** 1.5
    dps = 25 + int(0.9 * xi)
    with mp.workdps(dps):
        X = mp.mpf(x)
        c1 = mp.power(3, mp.mpf(-2) / 3) / mp.gamma(mp.mpf(2) / 3)
        c2 = mp.power(3, mp.mpf(-1) / 3) / mp.gamma(mp.mpf(1) / 3)
        X3 = X ** 3
        if not derivative:
            # f = sum 3^k (1/3)_k x^{3k}/(3k)!; ratio x^3/((3k)(3k-1))
            # g = sum 3^k (2/3)_k x^{3k+1}/(3k+1)!; ratio x^3/((3k+1)(3k))
            tf = mp.mpf(1)
            f = tf
            tg = X
            g = tg
            k = 0
            while True:
                k += 1
                tf *= X3 / ((3 * k) * (3 * k - 1))
                tg *= X3 / ((3 * k + 1) * (3 * k))
                f += tf
                g += tg
                if abs(tf) < mp.eps * (abs(f) + 1) and abs(tg) < mp.eps * (abs(g) + 1):
                    break
            return float(c1 * f - c2 * g)
        # f' = sum_{k>=1} 3^k (1/3)_k x^{3k-1}/(3k-1)!; g' = sum 3^k (2/3)_k x^{3k}/(3k)!
        tf = X ** 2 / 2
        fd = tf
        k = 1
        while True:
            k += 1
            tf *= X3 / ((3 * k - 1) * (3 * k - 3))
            fd += tf
            if abs(tf) < mp.eps * (abs(fd) + 1):
                break
        tg = mp.mpf(1)
        gd = tg
        k = 0
        while True:
            k += 1
            tg *= X3 / ((3 * k) * (3 * k - 2))
            gd += tg
            if abs(tg) < mp.eps * (abs(gd) + 1):
                break
        return float(c1 * fd - c2 * gd)


def airy_ai(x: float) -> float:
    x = float(x)
    if abs(x) <= SERIES_CUTOFF:
        return _series(x, derivative=False)
    xi = (2.0 / 3.0) * abs(x) ** 1.5
    if x > 0:
        return math.exp(-xi) / (2 * math.sqrt(math.pi) * x ** 0.25) * _asym_sum(_U, xi)
    ax = -x
    even = _asym_sum(_U[0::2], xi * xi)
    odd = _asym_sum(_U[1::2], xi * xi) / xi
    return (math.cos(xi - math.pi / 4) * even + math.sin(xi - math.pi / 4) * odd) / (
        math.sqrt(math.pi) * ax ** 0.25
    )


def airy_ai_prime(x: float) -> float:
    x = float(x)
    if abs(x) <= SERIES_CUTOFF:
        return _series(x, derivative=True)
    xi = (2.0 / 3.0) * abs(x) ** 1.5
    if x > 0:
        return -(x ** 0.25) * math.exp(-xi) / (2 * math.sqrt(math.pi)) * _asym_sum(_V, xi)
    ax = -x
    even = _asym_sum(_V[0::2], xi * xi)
    odd = _asym_sum(_V[1::2], xi * xi) / xi
    return (
        ax ** 0.25
        / math.sqrt(math.pi)
        * (math.sin(xi - math.pi / 4) * even - math.cos(xi - math.pi / 4) * odd)
    )
