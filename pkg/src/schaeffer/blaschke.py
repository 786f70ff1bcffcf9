"""Taylor coefficients of Blaschke powers b_lambda^n and (1-z^2) b_lambda^n.

The Moebius factor b_lambda(z) = (z - lambda)/(1 - conj(lambda) z) is inner,
so on the unit circle |b_lambda| = 1 and the coefficient sequence of
b_lambda^n has unit l2 norm (Parseval).  Coefficients are computed by
sampling on the circle and taking an FFT, with the transform size doubled
until two successive coefficient vectors agree to ALIAS_TOL in sup norm;
aliasing of a function analytic in |z| < 1/|lambda| dies off geometrically,
so the doubling test is a cheap certified stop.

For coefficients far outside the dominant index range [alpha0*n, n/alpha0]
(alpha0 = (1-lambda)/(1+lambda)) the values underflow double precision.
``log_weighted_coeff_magnitude`` extracts them on a circle through the
decaying saddle of the coefficient integral instead, where the integrand
maximum matches the coefficient size and only log-magnitudes are formed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DomainError, ResourceError

ALIAS_TOL = 1e-12
MAX_FFT_SIZE = 1 << 26


class SeriesOrigin(Enum):
    BLASCHKE_POWER = "blaschke_power"
    WEIGHTED_BLASCHKE_POWER = "weighted_blaschke_power"
    GENERAL = "general"


@dataclass(frozen=True)
class MoebiusParam:
    """A Blaschke factor b_lambda raised to the power n."""

    lam: complex
    n: int

    def __post_init__(self):
        if abs(self.lam) >= 1:
            raise DomainError(f"|lambda| = {abs(self.lam)} must be < 1")
        if self.n < 1:
            raise DomainError("power n must be >= 1")

    @property
    def alpha0(self) -> float:
        """Critical ratio (1-|lambda|)/(1+|lambda|) of the dominant region."""
        r = abs(self.lam)
        return (1 - r) / (1 + r)


@dataclass
class CoefficientSeries:
    """Finite coefficient vector c[0..K] with cached sequence norms."""

    coeffs: np.ndarray
    origin: SeriesOrigin = SeriesOrigin.GENERAL
    param: MoebiusParam | None = None
    _norms: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.ndim != 1 or self.coeffs.size == 0:
            raise DomainError("coefficient vector must be 1-d and nonempty")

    @property
    def max_index(self) -> int:
        return self.coeffs.size - 1

    def _norm(self, key, fn):
        if key not in self._norms:
            self._norms[key] = fn(self.coeffs)
        return self._norms[key]

    @property
    def l1(self) -> float:
        return self._norm("l1", lambda c: float(np.sum(np.abs(c))))

    @property
    def l2(self) -> float:
        return self._norm("l2", lambda c: float(np.sqrt(np.sum(np.abs(c) ** 2))))

    @property
    def linf(self) -> float:
        return self._norm("linf", lambda c: float(np.max(np.abs(c))))

    def padded(self, extra: int) -> "CoefficientSeries":
        c = np.concatenate([self.coeffs, np.zeros(extra, dtype=complex)])
        return CoefficientSeries(c, self.origin, self.param)


def moebius_coeff(lam: complex, k: int) -> complex:
    """k-th Taylor coefficient of b_lambda: -lambda at k=0, (1-|lambda|^2)
    conj(lambda)^(k-1) for k >= 1 (geometric expansion of the denominator)."""
    lam = complex(lam)
    if abs(lam) >= 1:
        raise DomainError("|lambda| must be < 1")
    if k < 0:
        raise DomainError("index k must be >= 0")
    if k == 0:
        return -lam
    return (1 - abs(lam) ** 2) * np.conj(lam) ** (k - 1)


def default_coeff_count(p: MoebiusParam) -> int:
    """Smallest K covering the dominant region with an Airy-width margin:
    ceil(n/alpha0) + 8*ceil(n^(1/3))."""
    return int(np.ceil(p.n / p.alpha0)) + 8 * int(np.ceil(p.n ** (1 / 3)))


def _circle_samples(lam: complex, n: int, size: int) -> np.ndarray:
    z = np.exp(2j * np.pi * np.arange(size) / size)
    return ((z - lam) / (1 - np.conj(lam) * z)) ** n


def blaschke_power_coeffs(p: MoebiusParam, K: int) -> CoefficientSeries:
    """Coefficients c[0..K] of b_lambda^n by adaptive-size circle FFT."""
    if K < 1:
        raise DomainError("K must be >= 1")
    need = max(K + 1, default_coeff_count(p))
    size = 1 << int(np.ceil(np.log2(4 * need)))
    prev = None
    while True:
        if size > MAX_FFT_SIZE:
            raise ResourceError(f"FFT size {size} exceeds budget {MAX_FFT_SIZE}")
        c = np.fft.fft(_circle_samples(p.lam, p.n, size)) / size
        cur = c[: K + 1].copy()
        if prev is not None and np.max(np.abs(cur - prev)) < ALIAS_TOL:
            return CoefficientSeries(cur, SeriesOrigin.BLASCHKE_POWER, p)
        prev = cur
        size *= 2


def weighted_coeffs(p: MoebiusParam, K: int) -> CoefficientSeries:
    """Coefficients of (1-z^2) b_lambda^n via the split
    c_w(k) = c(k) - c(k-2) for k >= 2, c_w(k) = c(k) for k < 2."""
    if K < 2:
        raise DomainError("K must be >= 2")
    base = blaschke_power_coeffs(p, K).coeffs
    w = base.copy()
    w[2:] = base[2:] - base[:-2]
    return CoefficientSeries(w, SeriesOrigin.WEIGHTED_BLASCHKE_POWER, p)


def linf_A_norm(s: CoefficientSeries) -> float:
    """sup_k |c(k)| over the stored range.

    For Blaschke-derived series the stored range must reach past the
    dominant region, K >= ceil(n/alpha0); otherwise the sup would be read
    off a truncation that can miss the slowest-decaying coefficient.
    """
    if s.param is not None and s.origin is not SeriesOrigin.GENERAL:
        needed = int(np.ceil(s.param.n / s.param.alpha0))
        if s.max_index < needed:
            raise DomainError(
                f"series truncated at K={s.max_index} before the dominant "
                f"region (needs K >= {needed})"
            )
    return s.linf


def parseval_defect(s: CoefficientSeries) -> float:
    """1 - sum |c(k)|^2; near 0 for a sufficiently long inner-function series."""
    return 1.0 - s.l2 ** 2


def _decaying_saddle_radius(lam: float, a: float) -> float:
    """Radius through the saddle of the coefficient integral at which the
    exponent -f decays, i.e. the stationary point z* of f with f(z*) > 0."""
    M = (a * (1 + lam ** 2) - (1 - lam ** 2)) / (2 * lam * a)
    if M * M <= 1:
        raise DomainError("index ratio a inside the dominant region; use the plain FFT")
    s = np.sqrt(M * M - 1)
    for z in (M + s, M - s):
        fv = a * np.log(abs(z)) + np.log(abs(1 - lam * z)) - np.log(abs(z - lam))
        if fv > 0:
            return abs(z)
    raise DomainError("no decaying saddle found")


def log_weighted_coeff_magnitude(lam: float, n: int, k: int, window: int = 0) -> np.ndarray:
    """log |c_w(j)| for j in [k-window, k+window], usable far below underflow.

    Samples (1-z^2) b_lambda^n on the circle through the decaying saddle of
    the coefficient integral, rescaled by its maximum modulus so that all
    intermediate values stay representable; only logarithms are returned.
    Requires real lambda in (0,1) and k/n outside the dominant region.
    """
    if not (0 < lam < 1):
        raise DomainError("lambda must be real in (0,1)")
    a = k / n
    r = _decaying_saddle_radius(lam, a)
    size = 1 << int(np.ceil(np.log2(8 * (k + 16))))
    if size > MAX_FFT_SIZE:
        raise ResourceError("FFT size exceeds budget")
    th = 2 * np.pi * np.arange(size) / size
    z = r * np.exp(1j * th)
    log_mod = n * (np.log(np.abs(z - lam)) - np.log(np.abs(1 - lam * z)))
    scale = log_mod.max()
    phase = n * (np.angle(z - lam) - np.angle(1 - lam * z))
    vals = (1 - z * z) * np.exp(log_mod - scale + 1j * phase)
    c = np.fft.fft(vals) / size
    js = np.arange(k - window, k + window + 1)
    mags = np.maximum(np.abs(c[js]), 1e-300)
    return np.log(mags) + scale - js * np.log(r)
