"""Coefficient asymptotics of (1-z^2) b_lambda^n via saddle-point analysis.

Everything is driven by the phase f_a(z) = a log z + log(1 - lambda z)
- log(z - lambda) (principal branches), in terms of which the k-th
coefficient is a circle integral of (1 - z^-2) exp(n f_a(z)) dz/(2 pi i z)
with a = k/n.  The stationary points

    z_pm = M(a) +- sqrt(M(a)^2 - 1),
    M(a) = (a (1+lambda^2) - (1-lambda^2)) / (2 lambda a)

sit on the unit circle for a strictly between alpha0 = (1-lambda)/(1+lambda)
and 1/alpha0, coalesce at z = +1 or z = -1 at the ends of that interval,
and move onto the real axis outside it.

* Mid range (a separated from both ends): a single stationary-phase term
  with an explicitly corrected amplitude (see ``stationary_phase_estimate``).
* Near an end: the cubic normal form f = -t^3/3 + gamma^2 t turns the
  integral into the two-term uniform Airy expansion
  A0 n^(-1/3) Ai(n^(2/3) gamma^2) + A1 n^(-2/3) Ai'(n^(2/3) gamma^2),
  with gamma pinned by the exact relation gamma^3 = (3/2) f(z_plus) and the
  A's from G0(+-gamma) = psi(z_pm) z'(t_pm), z'(t_pm)^2 = -+ 2 gamma/f''(z_pm),
  branches tracked by continuity from the coalesced limit
  z'(0)^3 = -2/f'''(z0).  The left end is handled by mirroring z -> -z,
  which maps the problem to the right-end machinery with parameter -lambda
  and multiplies coefficient k by exp(i pi (k - n)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import blaschke
from .airy import airy_ai, airy_ai_prime
from .errors import ConfigError, DomainError, ModeError

TRUTH_FLOOR = 1e-14
_BRANCH_STEPS = 24
_BRANCH_JUMP_LIMIT = 0.5


# ---------------------------------------------------------------------------
# phase function and stationary points


def alpha0(lam: float) -> float:
    """(1 - lambda)/(1 + lambda), the lower end of the dominant ratio range."""
    if not 0 < lam < 1:
        raise DomainError("lambda must lie in (0, 1)")
    return (1 - lam) / (1 + lam)


def _check_pole(lam: float, z: complex):
    if z == 0 or abs(z - lam) < 1e-300 or (lam != 0 and abs(z - 1 / lam) < 1e-300):
        raise DomainError(f"z = {z} is a singular point of the phase")


def phase_value(lam: float, a: float, z: complex) -> complex:
    _check_pole(lam, z)
    z = complex(z)
    return a * np.log(z) + np.log(1 - lam * z) - np.log(z - lam)


def phase_derivatives(lam: float, a: float, z: complex):
    """(f, f', f'', f''') at z."""
    _check_pole(lam, z)
    z = complex(z)
    f = a * np.log(z) + np.log(1 - lam * z) - np.log(z - lam)
    f1 = -1 / (z - lam) + a / z - lam / (1 - lam * z)
    f2 = 1 / (z - lam) ** 2 - a / z ** 2 - lam ** 2 / (1 - lam * z) ** 2
    f3 = -2 / (z - lam) ** 3 + 2 * a / z ** 3 - 2 * lam ** 3 / (1 - lam * z) ** 3
    return f, f1, f2, f3


def second_derivative_closed_form(lam: float, a: float, z: complex) -> complex:
    """f'' at a stationary point: (1-lambda^2)(1-z^2) lambda
    / (z (z-lambda)^2 (1-lambda z)^2)."""
    z = complex(z)
    return (1 - lam ** 2) * (1 - z * z) * lam / (z * (z - lam) ** 2 * (1 - lam * z) ** 2)


@dataclass(frozen=True)
class PhaseFunction:
    """The phase f_a bound to a parameter pair (lambda, a = k/n)."""

    lam: float
    a: float

    def value(self, z: complex) -> complex:
        return phase_value(self.lam, self.a, z)

    def derivatives(self, z: complex):
        return phase_derivatives(self.lam, self.a, z)

    def circle_phase(self, phi: float) -> float:
        """h(phi) = Im f(e^{i phi}), the real phase along the unit circle."""
        return float(phase_value(self.lam, self.a, np.exp(1j * phi)).imag)

    def saddles(self) -> "SaddleData":
        return stationary_points(self.lam, self.a)


class SaddleKind(Enum):
    CIRCLE_CONJUGATE_PAIR = "circle-conjugate-pair"
    COALESCED = "coalesced"
    REAL_RECIPROCAL_PAIR = "real-reciprocal-pair"


@dataclass(frozen=True)
class SaddleData:
    z_plus: complex
    z_minus: complex
    kind: SaddleKind
    f2_plus: complex


def _midpoint(lam: float, a: float) -> float:
    return (a * (1 + lam ** 2) - (1 - lam ** 2)) / (2 * lam * a)


def stationary_points(lam: float, a: float, lam_range=(0.0, 1.0)) -> SaddleData:
    """Both roots of f' = 0 with their configuration.

    The trichotomy is decided by a against [alpha0, 1/alpha0]: conjugate
    circle pair inside, coalesced double point at the ends (z0 = -1 left,
    z0 = +1 right), reciprocal real pair outside.
    """
    if not lam_range[0] < lam < lam_range[1]:
        raise DomainError("lambda must lie in (0, 1)")
    if a <= 0:
        raise DomainError("index ratio a must be positive")
    a0 = alpha0(lam)
    tol = 1e-12
    if abs(a - a0) <= tol * a0:
        z0 = -1.0 + 0j
        return SaddleData(z0, z0, SaddleKind.COALESCED, 0j)
    if abs(a - 1 / a0) <= tol / a0:
        z0 = 1.0 + 0j
        return SaddleData(z0, z0, SaddleKind.COALESCED, 0j)
    M = _midpoint(lam, a)
    if a0 < a < 1 / a0:
        s = math.sqrt(max(0.0, 1 - M * M))
        zp = complex(M, s)
        zm = complex(M, -s)
        kind = SaddleKind.CIRCLE_CONJUGATE_PAIR
    else:
        s = math.sqrt(M * M - 1)
        zp = complex(M + s)
        zm = complex(M - s)
        kind = SaddleKind.REAL_RECIPROCAL_PAIR
    f2 = phase_derivatives(lam, a, zp)[2]
    return SaddleData(zp, zm, kind, f2)


# ---------------------------------------------------------------------------
# region table


class Region(Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"
    VII = "VII"


def _resolve_alpha_beta(lam: float, alpha, beta):
    a0 = alpha0(lam)
    if alpha is None:
        alpha = a0 / 2
    if beta is None:
        beta = (a0 + 1) / 2
    if not 0 < alpha < a0:
        raise ConfigError(f"alpha must lie in (0, {a0}); got {alpha}")
    if not a0 < beta < 1:
        raise ConfigError(f"beta must lie in ({a0}, 1); got {beta}")
    return alpha, beta


def region_thresholds(lam: float, n: int, alpha: float | None = None,
                      beta: float | None = None):
    """The six index boundaries (alpha n, a0 n -+ n^(1/3), n/a0 -+ n^(1/3),
    n/alpha), made nondecreasing so they partition [0, inf) even at small n."""
    alpha, beta = _resolve_alpha_beta(lam, alpha, beta)
    a0 = alpha0(lam)
    w = n ** (1 / 3)
    raw = [alpha * n, a0 * n - w, a0 * n + w, n / a0 - w, n / a0 + w, n / alpha]
    out = []
    cur = -math.inf
    for b in raw:
        cur = max(cur, b)
        out.append(cur)
    return tuple(out)


def classify_region(lam: float, n: int, k: float, alpha: float | None = None,
                    beta: float | None = None) -> Region:
    """Row of the seven-region decay table containing index k.

    Half-open conventions: I owns [0, alpha n]; the two inner Airy windows
    III and V own both their endpoints on the side facing the oscillatory
    middle; VII starts exactly at n/alpha.
    """
    if k < 0:
        raise DomainError("k must be >= 0")
    b1, b2, b3, b4, b5, b6 = region_thresholds(lam, n, alpha, beta)
    if k <= b1:
        return Region.I
    if k <= b2:
        return Region.II
    if k <= b3:
        return Region.III
    if k < b4:
        return Region.IV
    if k <= b5:
        return Region.V
    if k < b6:
        return Region.VI
    return Region.VII


# ---------------------------------------------------------------------------
# cubic normal form near a coalescence


def _coalescence_ratio(mu: float) -> float:
    """Index ratio at which the saddles coalesce at z = +1 for parameter mu."""
    return (1 + mu) / (1 - mu)


def _pick_saddles(mu: float, a: float):
    """(z_plus, z_minus) with z_plus the saddle mapped to t = +gamma:
    the upper circle saddle inside the critical range, the saddle with
    f > 0 outside it."""
    M = _midpoint(mu, a)
    if M * M <= 1:
        s = math.sqrt(1 - M * M)
        zp = complex(M, s)
        return zp, np.conj(zp)
    s = math.sqrt(M * M - 1)
    c1, c2 = complex(M + s), complex(M - s)
    if phase_value(mu, a, c1).real >= 0:
        return c1, c2
    return c2, c1


def _real_gamma2_root(g3: complex) -> complex:
    """The cube root gamma of g3 for which gamma^2 is real."""
    mag = abs(g3) ** (1 / 3)
    ang = np.angle(g3)
    roots = [mag * np.exp(1j * (ang + 2 * math.pi * i) / 3) for i in range(3)]
    return min(roots, key=lambda r: abs((r * r).imag))


def _zprime_seed(mu: float, ac: float) -> complex:
    """z'(0) at the coalesced saddle: the minimal-imaginary cube root of
    -2/f'''(1, ac); real positive for mu > 0, real negative for mu < 0."""
    f3 = phase_derivatives(mu, ac, 1.0 + 0j)[3]
    target = -2 / f3
    mag = abs(target) ** (1 / 3)
    ang = np.angle(target)
    roots = [mag * np.exp(1j * (ang + 2 * math.pi * i) / 3) for i in range(3)]
    return min(roots, key=lambda r: abs(r.imag))


def gamma_cubed(lam: float, a: float) -> float:
    """Signed cube s = (3/2) f(z_plus) on the decaying side of the right
    coalescence, encoded so that gamma^2 = sign(s) |s|^(2/3): positive for
    a >= 1/alpha0, negative (oscillatory side) for a < 1/alpha0."""
    if not 0 < lam < 1:
        raise DomainError("lambda must lie in (0, 1)")
    ac = _coalescence_ratio(lam)
    if abs(a - ac) > 0.5 * ac:
        raise ModeError("a outside the coalescence neighborhood; use the "
                        "stationary-phase path")
    if abs(a - ac) <= 1e-12 * ac:
        return 0.0
    zp, _ = _pick_saddles(lam, a)
    fv = phase_value(lam, a, zp)
    if a >= ac:
        return 1.5 * float(fv.real)
    return -1.5 * abs(float(fv.imag))


def gamma_squared(lam: float, a: float) -> float:
    s = gamma_cubed(lam, a)
    return math.copysign(abs(s) ** (2 / 3), s)


def gamma_squared_leading_order(lam: float, a: float) -> float:
    """First-order expansion of gamma^2 about the right coalescence:
    (a - 1/alpha0)(1 - lambda)/(lambda (1 + lambda))^(1/3)."""
    ac = _coalescence_ratio(lam)
    return (a - ac) * (1 - lam) / (lam * (1 + lam)) ** (1 / 3)


def _psi(z: complex) -> complex:
    return (1 - z ** -2) / z


def _airy_core(mu: float, n: float, a: float):
    """Two-term uniform Airy value for coefficient ratio a of the problem
    with parameter mu, anchored at the z = 1 coalescence (a_c = (1+mu)/(1-mu)).

    Returns (value, gamma_sq, A0, A1, branch_ok).  The orientation sign
    flips when z'(0) < 0 (the image of the positively traversed circle then
    runs backwards along the Airy contour).
    """
    ac = _coalescence_ratio(mu)
    seed = _zprime_seed(mu, ac)
    sigma = 1.0 if seed.real > 0 else -1.0

    if abs(a - ac) <= 1e-9 * ac:
        g2 = (a - ac) * (1 - mu) / math.copysign(abs(mu * (1 + mu)) ** (1 / 3), mu)
        A0 = 0j
        A1 = complex(2.0 * seed ** 2)
        x = float(n) ** (2 / 3) * g2
        val = sigma * (A1 / float(n) ** (2 / 3) * airy_ai_prime(x))
        return complex(val), float(g2), A0, A1, True

    zp, zm = _pick_saddles(mu, a)
    gam = _real_gamma2_root(1.5 * phase_value(mu, a, zp))
    g2 = float((gam * gam).real)

    # branch tracking from the coalesced limit along a straight path in a
    wp_prev = seed
    wm_prev = seed
    branch_ok = True
    for s in range(1, _BRANCH_STEPS + 1):
        asub = ac + (a - ac) * s / _BRANCH_STEPS
        zps, zms = _pick_saddles(mu, asub)
        gs = _real_gamma2_root(1.5 * phase_value(mu, asub, zps))
        f2p = phase_derivatives(mu, asub, zps)[2]
        f2m = phase_derivatives(mu, asub, zms)[2]
        wp = np.sqrt(-2 * gs / f2p)
        wm = np.sqrt(2 * gs / f2m)
        if abs(wp - wp_prev) > abs(-wp - wp_prev):
            wp = -wp
        if abs(wm - wm_prev) > abs(-wm - wm_prev):
            wm = -wm
        jump = max(abs(wp - wp_prev) / max(abs(wp_prev), 1e-30),
                   abs(wm - wm_prev) / max(abs(wm_prev), 1e-30))
        if jump > _BRANCH_JUMP_LIMIT and s > 1:
            branch_ok = False
        wp_prev, wm_prev = wp, wm

    G0p = _psi(zp) * wp_prev
    G0m = _psi(zm) * wm_prev
    A0 = (G0p + G0m) / 2
    if abs(gam) > 1e-7:
        A1 = (G0p - G0m) / (2 * gam)
    else:
        A1 = complex(2.0 * seed ** 2)  # removable singularity: G0'(0)
    x = float(n) ** (2 / 3) * g2
    val = sigma * (A0 / float(n) ** (1 / 3) * airy_ai(x)
                   + A1 / float(n) ** (2 / 3) * airy_ai_prime(x))
    return complex(val), g2, complex(A0), complex(A1), branch_ok


@dataclass
class AiryEstimate:
    gamma_sq: float
    A0: complex
    A1: complex
    value: complex
    fft_truth: complex | None
    rel_error: float | None
    region: Region | None = None
    branch_ok: bool = True


# cached FFT ground truth, one weighted-coefficient array per (lambda, n)
_truth_cache: dict = {}


def weighted_truth(lam: float, n: int, k: int) -> float:
    """FFT coefficient of (1-z^2) b_lambda^n at integer k (cached per (lambda, n))."""
    key = (float(lam), int(n))
    arr = _truth_cache.get(key)
    if arr is None or arr.size <= k:
        K = max(k + 8, blaschke.default_coeff_count(blaschke.MoebiusParam(lam, n)))
        arr = blaschke.weighted_coeffs(blaschke.MoebiusParam(lam, n), K).coeffs.real
        _truth_cache[key] = arr
    return float(arr[k])


def clear_truth_cache():
    _truth_cache.clear()


def uniform_airy_estimate(lam: float, n: int, k: float,
                          compute_truth: bool = True) -> AiryEstimate:
    """Uniform two-term Airy estimate of the coefficient at index k, valid
    near either coalescence.  Near k/n = alpha0 the mirrored problem with
    parameter -lambda is used and the result carries the parity phase
    exp(i pi (k - n))."""
    if not 0 < lam < 1:
        raise DomainError("lambda must lie in (0, 1)")
    a = k / n
    a0 = alpha0(lam)
    ac_right = 1 / a0
    if abs(a - ac_right) <= 0.5 * ac_right:
        val, g2, A0, A1, ok = _airy_core(lam, n, a)
    elif abs(a - a0) <= 0.5 * a0:
        val, g2, A0, A1, ok = _airy_core(-lam, n, a)
        val = val * np.exp(1j * math.pi * (k - n))
    else:
        raise ModeError("k/n is outside both coalescence neighborhoods; "
                        "use stationary_phase_estimate")
    truth = None
    rel = None
    if compute_truth and float(k).is_integer() and k >= 0:
        truth = weighted_truth(lam, n, int(k))
        rel = abs(val - truth) / max(abs(truth), TRUTH_FLOOR)
    return AiryEstimate(
        gamma_sq=g2, A0=A0, A1=A1, value=val,
        fft_truth=truth, rel_error=rel,
        region=classify_region(lam, n, k) if k >= 0 else None,
        branch_ok=ok,
    )


# ---------------------------------------------------------------------------
# mid-range stationary phase


def stationary_phase_estimate(lam: float, n: int, k: float,
                              beta: float | None = None) -> float:
    """Leading stationary-phase value for k/n separated from both
    coalescences:

        sqrt(2/(pi n)) (1-lambda^2) (a-alpha0)^(1/4) (1/alpha0-a)^(1/4)
            / (lambda a^(3/2)) * cos(n h(phi+) - phi+ + 3 pi/4)

    with h(phi) = Im f(e^{i phi}) and phi+ the upper stationary angle.
    The amplitude uses sin(phi+) = (1-lambda^2) sqrt((a-alpha0)(1/alpha0-a))
    / (2 lambda a), i.e. |g(phi+)| sqrt(2 pi/(n h''(phi+))) written out; a
    frequently quoted variant with sqrt(1-lambda^2) in place of the factor
    (1-lambda^2) overshoots the FFT truth by 1/sqrt(1-lambda^2).
    """
    _, beta = _resolve_alpha_beta(lam, None, beta)
    a = k / n
    if not beta < a < 1 / beta:
        raise ModeError(f"k/n = {a} outside the mid range ({beta}, {1 / beta})")
    a0 = alpha0(lam)
    M = _midpoint(lam, a)
    zp = complex(M, math.sqrt(max(0.0, 1 - M * M)))
    phi_p = float(np.angle(zp))
    h_at = float(phase_value(lam, a, zp).imag)
    env = (
        math.sqrt(2 / (math.pi * n))
        * (1 - lam ** 2)
        * (a - a0) ** 0.25
        * (1 / a0 - a) ** 0.25
        / (lam * a ** 1.5)
    )
    return env * math.cos(n * h_at - phi_p + 3 * math.pi / 4)


def stationary_phase_envelope(lam: float, n: int, k: float) -> float:
    a = k / n
    a0 = alpha0(lam)
    return (
        math.sqrt(2 / (math.pi * n))
        * (1 - lam ** 2)
        * (a - a0) ** 0.25
        * (1 / a0 - a) ** 0.25
        / (lam * a ** 1.5)
    )


# ---------------------------------------------------------------------------
# decay-rate fits against ground truth


@dataclass
class FitResult:
    region: Region
    slope: float
    mode: str  # "power" (log n) or "exponential" (n)
    n_list: tuple
    k_list: tuple
    log_values: tuple


_POWER_REGIONS = {Region.III, Region.IV, Region.V}


def _default_k(region: Region, lam: float, n: int, alpha: float) -> int:
    a0 = alpha0(lam)
    table = {
        Region.I: 0.8 * alpha,
        Region.II: (alpha + a0) / 2,
        Region.III: a0,
        Region.IV: 1.0,
        Region.V: 1 / a0,
        Region.VI: (1 / a0 + 1 / alpha) / 2,
        Region.VII: 1.2 / alpha,
    }
    return max(2, int(round(table[region] * n)))


def decay_exponent_fit(lam: float, region: Region, n_list,
                       alpha: float | None = None,
                       k_of_n=None, window: int = 3) -> FitResult:
    """Least-squares decay rate of the coefficient magnitude at a
    representative index per region, across a geometric n grid.

    Power regions (III, IV, V) fit log|c| against log n; the windowed
    maximum over [k-3, k+3] suppresses the cosine zeros.  Exponential
    regions fit log|c| against n, using the scaled-contour extraction that
    remains accurate far below double-precision underflow.
    """
    n_list = [int(n) for n in n_list]
    if len(n_list) < 4:
        raise DomainError("need at least 4 grid points")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise DomainError("n grid must be strictly increasing")
    alpha_eff, _ = _resolve_alpha_beta(lam, alpha, None)
    ks = []
    logs = []
    for n in n_list:
        k = k_of_n(n) if k_of_n is not None else _default_k(region, lam, n, alpha_eff)
        ks.append(k)
        if region in _POWER_REGIONS:
            lo = max(0, k - window)
            vals = [abs(weighted_truth(lam, n, j)) for j in range(lo, k + window + 1)]
            logs.append(math.log(max(max(vals), 1e-300)))
        else:
            lw = blaschke.log_weighted_coeff_magnitude(lam, n, k, window=window)
            logs.append(float(np.max(lw)))
    y = np.array(logs)
    if region in _POWER_REGIONS:
        x = np.log(np.array(n_list, dtype=float))
    else:
        x = np.array(n_list, dtype=float)
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        raise DomainError("degenerate fit: zero variance")
    A = np.vstack([x, np.ones_like(x)]).T
    slope = float(np.linalg.lstsq(A, y, rcond=None)[0][0])
    return FitResult(
        region=region,
        slope=slope,
        mode="power" if region in _POWER_REGIONS else "exponential",
        n_list=tuple(n_list),
        k_list=tuple(ks),
        log_values=tuple(float(v) for v in y),
    )
