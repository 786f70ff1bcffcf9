import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schaeffer import blaschke
from schaeffer.blaschke import (
    CoefficientSeries,
    MoebiusParam,
    SeriesOrigin,
    blaschke_power_coeffs,
    default_coeff_count,
    linf_A_norm,
    log_weighted_coeff_magnitude,
    moebius_coeff,
    parseval_defect,
    weighted_coeffs,
)
from schaeffer.errors import DomainError, ResourceError


class TestMoebiusCoeff:
    def test_constant_term(self):
        assert moebius_coeff(0.5, 0) == -0.5

    def test_first_terms(self):
        # geometric expansion: c(1) = 1 - lambda^2, c(2) = (1 - lambda^2) lambda
        assert abs(moebius_coeff(0.5, 1) - 0.75) < 1e-15
        assert abs(moebius_coeff(0.5, 2) - 0.375) < 1e-15

    def test_complex_conjugation(self):
        lam = 0.3 + 0.4j
        for k in range(6):
            assert moebius_coeff(np.conj(lam), k) == pytest.approx(
                np.conj(moebius_coeff(lam, k))
            )

    def test_domain(self):
        with pytest.raises(DomainError):
            moebius_coeff(1.0, 0)
        with pytest.raises(DomainError):
            moebius_coeff(0.5, -1)


class TestPowerCoeffs:
    def test_n1_matches_closed_form(self):
        s = blaschke_power_coeffs(MoebiusParam(0.5, 1), 2)
        assert np.allclose(s.coeffs, [-0.5, 0.75, 0.375], atol=1e-13)

    def test_parseval_inner_function(self):
        s = blaschke_power_coeffs(MoebiusParam(0.5, 64), 1024)
        assert abs(parseval_defect(s)) < 1e-10

    def test_value_outside_dominant_range(self):
        # oracle: single-shot FFT of size 2^16 (no doubling loop)
        n, k = 64, 16
        size = 1 << 16
        z = np.exp(2j * np.pi * np.arange(size) / size)
        oracle = (np.fft.fft(((z - 0.5) / (1 - 0.5 * z)) ** n) / size)[k]
        s = blaschke_power_coeffs(MoebiusParam(0.5, n), 32)
        assert abs(s.coeffs[k] - oracle) < 1e-12
        # k/n = 1/4 sits left of the dominant range: small but not yet
        # exponentially negligible at n = 64
        assert abs(oracle) == pytest.approx(2.6700882795731478e-3, rel=1e-9)

    def test_constant_coefficient_sign(self):
        for lam, n in [(0.5, 3), (0.7, 4), (0.25, 7)]:
            s = blaschke_power_coeffs(MoebiusParam(lam, n), 4)
            assert s.coeffs[0] == pytest.approx((-lam) ** n, abs=1e-13)

    def test_realness_for_real_lambda(self):
        s = blaschke_power_coeffs(MoebiusParam(0.5, 32), 256)
        assert np.max(np.abs(s.coeffs.imag)) < 1e-12 * np.max(np.abs(s.coeffs.real))

    def test_conjugate_parameter_conjugates_series(self):
        lam = 0.35 + 0.3j
        a = blaschke_power_coeffs(MoebiusParam(lam, 5), 40).coeffs
        b = blaschke_power_coeffs(MoebiusParam(np.conj(lam), 5), 40).coeffs
        assert np.max(np.abs(a - np.conj(b))) < 1e-12

    def test_resource_budget(self):
        with pytest.raises(ResourceError):
            blaschke_power_coeffs(MoebiusParam(0.5, 2), 1 << 25)


class TestWeightedCoeffs:
    def test_hand_convolution_n1(self):
        # c_w(k) = c(k) - c(k-2) applied to the geometric series of b_0.5
        s = weighted_coeffs(MoebiusParam(0.5, 1), 4)
        assert np.allclose(s.coeffs, [-0.5, 0.75, 0.875, -0.5625, -0.28125], atol=1e-13)

    def test_split_identity_exact(self):
        p = MoebiusParam(0.5, 8)
        base = blaschke_power_coeffs(p, 64).coeffs
        w = weighted_coeffs(p, 64).coeffs
        # same arithmetic path, so the identity is exact
        assert np.all(w[2:] == base[2:] - base[:-2])
        assert np.all(w[:2] == base[:2])

    def test_matches_direct_fft_of_weighted_function(self):
        n, K = 12, 96
        size = 1 << 12
        z = np.exp(2j * np.pi * np.arange(size) / size)
        vals = (1 - z * z) * ((z - 0.5) / (1 - 0.5 * z)) ** n
        oracle = (np.fft.fft(vals) / size)[: K + 1]
        s = weighted_coeffs(MoebiusParam(0.5, n), K)
        assert np.max(np.abs(s.coeffs - oracle)) < 1e-12


class TestLinfNorm:
    def test_small_weighted_series(self):
        s = weighted_coeffs(MoebiusParam(0.5, 1), 4)
        assert linf_A_norm(s) == pytest.approx(0.875, abs=1e-13)

    def test_zero_padding_invariant(self):
        s = weighted_coeffs(MoebiusParam(0.5, 4), 40)
        assert linf_A_norm(s.padded(50)) == linf_A_norm(s)

    def test_truncation_before_dominant_region_rejected(self):
        s = weighted_coeffs(MoebiusParam(0.5, 1024), 100)
        with pytest.raises(DomainError):
            linf_A_norm(s)

    def test_sqrt_n_envelope_small_grid(self):
        # n * norm^2 stays in a fixed positive band
        for lam in (0.3, 0.5, 0.7):
            vals = []
            for n in (64, 128, 256):
                p = MoebiusParam(lam, n)
                s = weighted_coeffs(p, default_coeff_count(p))
                vals.append(n * linf_A_norm(s) ** 2)
            assert max(vals) / min(vals) < 1.6


class TestExponentialRegions:
    def test_log_magnitude_matches_direct_fft(self):
        n, k = 128, 32
        size = 1 << 12
        z = np.exp(2j * np.pi * np.arange(size) / size)
        vals = (1 - z * z) * ((z - 0.5) / (1 - 0.5 * z)) ** n
        direct = np.log(abs((np.fft.fft(vals) / size)[k]))
        scaled = log_weighted_coeff_magnitude(0.5, n, k)[0]
        assert scaled == pytest.approx(direct, abs=1e-9)

    @pytest.mark.parametrize("side", ["left", "right"])
    def test_exponential_decay_fit(self, side):
        lam = 0.5
        alpha = (1 - lam) / (1 + lam) / 2
        ns = [128, 256, 512, 1024]
        logs = []
        for n in ns:
            k = int(0.8 * alpha * n) if side == "left" else int(np.ceil(1.2 * n / alpha))
            logs.append(float(np.max(log_weighted_coeff_magnitude(lam, n, k, window=2))))
        slope = np.polyfit(ns, logs, 1)[0]
        assert slope < -1e-3

    def test_deep_region_magnitude_is_tiny(self):
        # far right of the dominant range the coefficient is far below
        # double-precision underflow; only its log is representable
        lw = log_weighted_coeff_magnitude(0.5, 1024, int(7.2 * 1024))[0]
        assert lw < -1000


class TestSeriesContainer:
    def test_norm_caching_and_values(self):
        s = CoefficientSeries(np.array([3.0, -4.0]))
        assert s.l1 == 7.0
        assert s.l2 == 5.0
        assert s.linf == 4.0

    def test_rejects_empty(self):
        with pytest.raises(DomainError):
            CoefficientSeries(np.array([]))

    @given(st.lists(st.floats(-10, 10), min_size=1, max_size=12),
           st.integers(min_value=1, max_value=8))
    @settings(max_examples=50, deadline=None)
    def test_padding_never_changes_norms(self, vals, extra):
        s = CoefficientSeries(np.array(vals, dtype=float))
        p = s.padded(extra)
        assert p.l1 == pytest.approx(s.l1)
        assert p.linf == pytest.approx(s.linf)

    @given(st.floats(min_value=-0.85, max_value=0.85).filter(lambda x: abs(x) > 1e-3),
           st.integers(min_value=1, max_value=16))
    @settings(max_examples=25, deadline=None)
    def test_parseval_random_parameters(self, lam, n):
        p = MoebiusParam(lam, n)
        # the l2 tail decays like |lambda|^(2k): extend K until it is
        # below the tolerance, not just past the dominant region
        tail_terms = int(30 / max(0.15, -math.log(abs(lam)))) + 8
        s = blaschke_power_coeffs(p, default_coeff_count(p) + tail_terms)
        assert abs(parseval_defect(s)) < 1e-9


def test_origin_tags():
    p = MoebiusParam(0.5, 2)
    assert blaschke_power_coeffs(p, 8).origin is SeriesOrigin.BLASCHKE_POWER
    assert weighted_coeffs(p, 8).origin is SeriesOrigin.WEIGHTED_BLASCHKE_POWER


def test_moebius_param_validation():
    with pytest.raises(DomainError):
        MoebiusParam(1.2, 1)
    with pytest.raises(DomainError):
        MoebiusParam(0.5, 0)
