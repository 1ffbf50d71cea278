"""Scaled Bessel, dual-route Marcum Q, and the heterodyne benchmark."""

import math
from math import exp, log, log1p, sqrt

import numpy as np
import pytest

from steinradar import MarcumArgs, bessel_i0_scaled, heterodyne_log_pmd, marcum_q

from oracles import (
    HET_LN_PMD_G10,
    I0E_1,
    I0E_7_5,
    I0E_19,
    I0E_500,
    MARCUM_P_1_2,
    MARCUM_Q_1_2,
    marcum_quadrature,
)


class TestBesselI0Scaled:
    def test_origin(self):
        assert bessel_i0_scaled(0.0) == 1.0

    def test_reference_values(self):
        assert bessel_i0_scaled(1.0) == pytest.approx(I0E_1, rel=1e-14)
        assert bessel_i0_scaled(7.5) == pytest.approx(I0E_7_5, rel=1e-14)
        assert bessel_i0_scaled(19.0) == pytest.approx(I0E_19, rel=1e-14)
        assert bessel_i0_scaled(500.0) == pytest.approx(I0E_500, rel=1e-14)

    def test_against_scipy_grid(self):
        from scipy.special import i0e

        for t in np.concatenate((np.linspace(0, 30, 61), [100.0, 250.0, 700.0])):
            assert bessel_i0_scaled(float(t)) == pytest.approx(
                float(i0e(t)), rel=5e-14
            )

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            bessel_i0_scaled(-1.0)


class TestMarcumArgs:
    def test_validation(self):
        with pytest.raises(ValueError):
            MarcumArgs(-1.0, 2.0)
        with pytest.raises(ValueError):
            MarcumArgs(1.0, math.inf)


class TestMarcumQ:
    def test_zero_noncentrality_closed_form(self):
        for y in np.linspace(0.0, 20.0, 41):
            q, p = marcum_q(MarcumArgs(0.0, float(y)))
            want = exp(-0.5 * y * y)
            assert q == pytest.approx(want, rel=1e-13)
            assert p == pytest.approx(1.0 - want, rel=1e-12, abs=1e-15)

    def test_zero_threshold(self):
        for x in (0.0, 1.0, 10.0, 30.0):
            assert marcum_q(MarcumArgs(x, 0.0)) == (1.0, 0.0)

    def test_reference_point(self):
        q, p = marcum_q(MarcumArgs(1.0, 2.0))
        assert q == pytest.approx(MARCUM_Q_1_2, rel=1e-8)
        assert p == pytest.approx(MARCUM_P_1_2, rel=1e-8)

    def test_against_quadrature_oracle(self):
        for x, y in [(1.0, 2.0), (3.5, 1.2), (0.7, 6.0), (12.0, 10.5)]:
            q, p = marcum_q(MarcumArgs(x, y))
            q_want, p_want = marcum_quadrature(x, y)
            assert q == pytest.approx(q_want, rel=1e-8, abs=1e-12)
            assert p == pytest.approx(p_want, rel=1e-8, abs=1e-12)

    def test_against_scipy_ncx2(self):
        # Q(x, y) is the ncx2(df=2, nc=x^2) survival function at y^2
        from scipy.stats import ncx2

        for x, y in [(1.0, 2.0), (2.0, 2.5), (5.0, 4.0), (0.5, 0.5)]:
            q, _ = marcum_q(MarcumArgs(x, y))
            assert q == pytest.approx(float(ncx2.sf(y * y, 2, x * x)), rel=1e-9)

    def test_huge_arguments_windowed(self):
        # the windowed sums stay exact far beyond exp(-x^2/2) underflow
        from scipy.stats import ncx2

        q, p = marcum_q(MarcumArgs(1500.0, 1450.0))
        assert abs(q + p - 1.0) < 1e-12
        assert q == pytest.approx(float(ncx2.sf(1450.0**2, 2, 1500.0**2)), rel=1e-7)

    def test_complementarity_random(self):
        rng = np.random.default_rng(12)
        for _ in range(500):
            x = float(rng.uniform(0.0, 30.0))
            y = float(rng.uniform(0.0, 30.0))
            q, p = marcum_q(MarcumArgs(x, y))
            assert abs(q + p - 1.0) < 1e-12
            assert 0.0 <= q <= 1.0 and 0.0 <= p <= 1.0

    def test_monotone_in_threshold_and_signal(self):
        # 1e-13 headroom: the pmf building blocks carry ~1e-14 round-off
        ys = np.linspace(0.0, 12.0, 25)
        qs = [marcum_q(MarcumArgs(2.0, float(y)))[0] for y in ys]
        assert all(a >= b - 1e-13 for a, b in zip(qs, qs[1:]))
        xs = np.linspace(0.0, 12.0, 25)
        qx = [marcum_q(MarcumArgs(float(x), 3.0))[0] for x in xs]
        assert all(b >= a - 1e-13 for a, b in zip(qx, qx[1:]))


class TestHeterodyne:
    def test_zero_snr_pure_false_alarm(self):
        for p_fa in (1e-5, 1e-3, 0.1):
            got = heterodyne_log_pmd(0.0, p_fa)
            assert got == pytest.approx(log1p(-p_fa), rel=1e-12)

    def test_reference_point(self):
        assert heterodyne_log_pmd(10.0, 1e-3) == pytest.approx(HET_LN_PMD_G10, rel=1e-8)

    def test_matches_marcum_complement(self):
        for gamma in (0.1, 1.0, 5.0, 50.0):
            _, p = marcum_q(MarcumArgs(sqrt(2.0 * gamma), sqrt(-2.0 * log(1e-3))))
            assert heterodyne_log_pmd(gamma, 1e-3) == pytest.approx(log(p), rel=1e-10)

    def test_strictly_decreasing_in_snr(self):
        gammas = np.logspace(-3, 2, 50)
        vals = [heterodyne_log_pmd(float(g), 1e-3) for g in gammas]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_log_domain_survives_huge_snr(self):
        # p_MD underflows double precision here; the log route must not
        got = heterodyne_log_pmd(2000.0, 1e-3)
        assert math.isfinite(got)
        assert got < -1500.0

    def test_domain(self):
        with pytest.raises(ValueError):
            heterodyne_log_pmd(-1.0, 1e-3)
        with pytest.raises(ValueError):
            heterodyne_log_pmd(1.0, 0.0)
        with pytest.raises(ValueError):
            heterodyne_log_pmd(1.0, 1.0)
