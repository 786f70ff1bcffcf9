"""Resolvent upper-bound family for power-bounded matrices with known spectrum.

``mainlemma_bound`` evaluates the rho-parameterized bound

    C * sqrt( 1/(1-rho^2) * sum_{k=1}^{|m|} rho^{-(2k-2)}
              * (1 - rho^2 |l_k|^2)/|zeta - l_k|^2
              * prod_{j<k} | (1/b_{l_j}(zeta))
                            (1 + (1-rho^2) conj(l_j) zeta/(1-conj(l_j) zeta)) |^2 )

with the |m|-fold products accumulated as sums of log magnitudes, so that
spectra with hundreds of eigenvalues near the origin do not overflow.
``optimize_rho`` minimizes over rho; the four closed forms are particular
rho choices plus relaxations, so the optimized value sits below each of
them wherever their hypotheses hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import DomainError, ModeError
from .spectra import SpectrumSpec

_E = math.e


def pseudo_hyperbolic(z: complex, w: complex) -> float:
    """Moebius-invariant disk distance |(z - w)/(1 - conj(z) w)|."""
    z = complex(z)
    w = complex(w)
    den = 1 - np.conj(z) * w
    if den == 0:
        raise DomainError("conj(z) w = 1: pseudo-hyperbolic distance undefined")
    return abs((z - w) / den)


class BoundRule(Enum):
    MAIN_LEMMA_OPT = "mainlemma-optimized"
    CASE1 = "case1"
    CASE2 = "case2"
    CASE3 = "case3"
    CASE4 = "case4"
    SCHAEFFER_BASELINE = "schaeffer-baseline"


@dataclass(frozen=True)
class BoundQuery:
    spec: SpectrumSpec
    zeta: complex
    C: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "zeta", complex(self.zeta))
        if self.C < 1:
            raise DomainError("power-bound constant C must be >= 1")
        if any(abs(self.zeta - l) < 1e-15 for l in self.spec.expanded()):
            raise DomainError("zeta lies in the spectrum")


@dataclass
class BoundReport:
    rule: BoundRule
    value: float
    rho_star: float | None = None
    r: float | None = None
    delta_terms: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "rule": self.rule.value,
            "value": self.value,
            "rho_star": self.rho_star,
            "r": self.r,
            "delta_terms": self.delta_terms,
        }


def _exp_or_inf(x: float) -> float:
    return math.exp(x) if x < 709.0 else math.inf


def mainlemma_log_bound(q: BoundQuery, rho: float) -> float:
    """log of the rho-parameterized resolvent bound.  All |m|-fold products
    are accumulated as sums of log magnitudes, so spectra with hundreds of
    eigenvalues are handled even where the bound itself overflows a double."""
    if not 0 < rho < 1:
        raise DomainError("rho must lie in (0, 1)")
    zeta = q.zeta
    log_terms = []
    prefix = 0.0  # 2 * sum_{j<k} log |...|
    for k, lam in enumerate(q.spec.expanded(), start=1):
        t = (
            -(2 * k - 2) * math.log(rho)
            + math.log(1 - rho ** 2 * abs(lam) ** 2)
            - 2 * math.log(abs(zeta - lam))
        )
        log_terms.append(t + prefix)
        denom = 1 - np.conj(lam) * zeta
        if denom == 0:
            raise DomainError("zeta conjugate-reciprocal to an eigenvalue")
        b = (zeta - lam) / denom
        fac = (1 + (1 - rho ** 2) * np.conj(lam) * zeta / denom) / b
        prefix += 2 * math.log(abs(fac))
    mx = max(log_terms)
    total = mx + math.log(sum(math.exp(t - mx) for t in log_terms))
    total -= math.log(1 - rho ** 2)
    return math.log(q.C) + 0.5 * total


def mainlemma_bound(q: BoundQuery, rho: float) -> float:
    """The rho-parameterized resolvent bound; inf when it exceeds the double
    range (use mainlemma_log_bound for such regimes)."""
    return _exp_or_inf(mainlemma_log_bound(q, rho))


_GOLDEN = (math.sqrt(5) - 1) / 2


def optimize_rho(q: BoundQuery, grid: int = 32) -> BoundReport:
    """Minimize the lemma bound over rho in (0, 1): a 32-point pre-scan
    guards against multiple local minima, then golden-section refinement on
    log(bound) to |drho| < 1e-8.  The result is clipped by the grid minimum,
    so it never exceeds any scanned value."""
    lo, hi = 1e-6, 1 - 1e-6
    rs = np.linspace(lo, hi, grid)
    logv = np.array([mainlemma_log_bound(q, r) for r in rs])
    i0 = int(np.argmin(logv))
    interior_minima = [
        i for i in range(1, grid - 1) if logv[i] < logv[i - 1] and logv[i] < logv[i + 1]
    ]
    a = rs[max(0, i0 - 1)]
    b = rs[min(grid - 1, i0 + 1)]
    f = lambda r: mainlemma_log_bound(q, r)
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > 1e-8:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
    rho_star = (a + b) / 2
    log_value = mainlemma_log_bound(q, rho_star)
    if log_value > logv[i0]:  # multimodal surprise: fall back to the scan
        rho_star = float(rs[i0])
        log_value = float(logv[i0])
    lams = q.spec.expanded()
    mind = min(abs(1 - np.conj(l) * q.zeta) for l in lams)
    report = BoundReport(
        rule=BoundRule.MAIN_LEMMA_OPT,
        value=_exp_or_inf(log_value),
        rho_star=float(rho_star),
        r=min(pseudo_hyperbolic(q.zeta, l) for l in lams) if abs(q.zeta) <= 1 else None,
        delta_terms={
            "min_abs_one_minus_lam_zeta": mind,
            "interior_minima_in_scan": len(interior_minima),
            "log_value": log_value,
        },
    )
    return report


def thm_case1(q: BoundQuery) -> float:
    """All eigenvalues on the unit circle: C sqrt(|m|)/min_i |zeta - l_i|."""
    lams = q.spec.expanded()
    if any(abs(abs(l) - 1) > 1e-12 for l in lams):
        raise ModeError("case 1 needs all eigenvalues on the unit circle")
    return q.C * math.sqrt(len(lams)) / min(abs(q.zeta - l) for l in lams)


def thm_case2(q: BoundQuery) -> float:
    """zeta = 0: C sqrt(|m| (e - r^(2|m|))) / r^|m| with r = min |l_i|;
    inf beyond the double range (use thm_case2_log there)."""
    return _exp_or_inf(thm_case2_log(q))


def thm_case2_log(q: BoundQuery) -> float:
    """log of the case-2 bound; usable where r^{-|m|} overflows, e.g.
    |m| ~ 700 at r = 0.1."""
    if q.zeta != 0:
        raise ModeError("case 2 is the zeta = 0 bound")
    lams = q.spec.expanded()
    r = min(abs(l) for l in lams)
    if r == 0:
        raise DomainError("case 2 needs an invertible matrix (r > 0)")
    mm = len(lams)
    return (math.log(q.C) + 0.5 * (math.log(mm) + math.log(_E - r ** (2 * mm)))
            - mm * math.log(r))


def schaeffer_baseline(q: BoundQuery) -> float:
    """C sqrt(e |m|) / r^|m|, the classical bound case 2 refines."""
    lams = q.spec.expanded()
    r = min(abs(l) for l in lams)
    if r == 0:
        raise DomainError("baseline needs r > 0")
    mm = len(lams)
    return _exp_or_inf(math.log(q.C) + 0.5 * math.log(_E * mm) - mm * math.log(r))


def thm_case3(q: BoundQuery) -> float:
    """zeta inside the disk, pseudo-hyperbolic separation r in (0,1):
    C e sqrt(2) sqrt(|m|) / (min_i |1 - conj(l_i) zeta| r^|m|)
      * sqrt(1/(1 - r|zeta|) + 1/(2 (1-r^2) |m|))."""
    if abs(q.zeta) >= 1:
        raise ModeError("case 3 needs zeta strictly inside the disk")
    lams = q.spec.expanded()
    r = min(pseudo_hyperbolic(q.zeta, l) for l in lams)
    if r == 0:
        raise DomainError("zeta in the spectrum")
    if r >= 1:
        raise ModeError("pseudo-hyperbolic separation must be < 1")
    mm = len(lams)
    mind = min(abs(1 - np.conj(l) * q.zeta) for l in lams)
    # delta_max = (1-r^2)/(1-r|zeta|) is the extremal value of
    # (1-|l|^2)/|1-conj(l)|zeta|| over the admissible spectrum; the first
    # term under the root is delta_max/(1-r^2)
    delta_max = (1 - r ** 2) / (1 - r * abs(q.zeta))
    log_val = (
        math.log(_E * math.sqrt(2))
        + 0.5 * math.log(mm)
        - math.log(mind)
        - mm * math.log(r)
        + 0.5 * math.log(delta_max / (1 - r ** 2) + 1 / (2 * (1 - r ** 2) * mm))
    )
    return _exp_or_inf(math.log(q.C) + log_val)


class Case4Bounds(NamedTuple):
    headline: float
    proof_form: float


def thm_case4(q: BoundQuery) -> Case4Bounds:
    """zeta on the unit circle.  Returns both published forms:
    headline (3/2) C sqrt(e^2 - 1) |m| / min_i |zeta - l_i| and the
    proof-form 2 C (|m|/min_i |zeta - l_i|) sqrt(2 + 1/(2|m|))
    sqrt((e^(1+s/2) - 1)/(s + 2)) with s = min_i |1 - conj(l_i) zeta|.
    Neither is asserted to dominate the other."""
    if abs(abs(q.zeta) - 1) > 1e-12:
        raise ModeError("case 4 needs |zeta| = 1")
    lams = q.spec.expanded()
    mind = min(abs(q.zeta - l) for l in lams)
    if mind == 0:
        raise DomainError("zeta in the spectrum closure")
    mm = len(lams)
    s = min(abs(1 - np.conj(l) * q.zeta) for l in lams)
    headline = 1.5 * q.C * math.sqrt(_E ** 2 - 1) * mm / mind
    proof = (
        2 * q.C * mm / mind
        * math.sqrt(2 + 1 / (2 * mm))
        * math.sqrt((math.exp(1 + s / 2) - 1) / (s + 2))
    )
    return Case4Bounds(headline, proof)


def applicable_closed_forms(q: BoundQuery) -> dict:
    """Evaluate every closed form whose hypotheses hold for the query."""
    out = {}
    lams = q.spec.expanded()
    if all(abs(abs(l) - 1) <= 1e-12 for l in lams):
        out[BoundRule.CASE1] = thm_case1(q)
    if q.zeta == 0 and min(abs(l) for l in lams) > 0:
        out[BoundRule.CASE2] = thm_case2(q)
        out[BoundRule.SCHAEFFER_BASELINE] = schaeffer_baseline(q)
    if abs(q.zeta) < 1 and all(abs(l) < 1 for l in lams):
        r = min(pseudo_hyperbolic(q.zeta, l) for l in lams)
        if 0 < r < 1:
            out[BoundRule.CASE3] = thm_case3(q)
    if abs(abs(q.zeta) - 1) <= 1e-12:
        out[BoundRule.CASE4] = thm_case4(q).headline
    return out
