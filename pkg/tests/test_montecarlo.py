"""Trial engine: reproducibility, distributional checks, estimator contracts."""

import math

import numpy as np
import pytest

from dualsel.analytic import SystemConfig, cdf_order_stat, cdf_T, esr_exact, exp_cb
from dualsel.montecarlo import (
    ChannelRealization,
    draw_realization,
    empirical_cdf_T,
    estimate_esr,
    estimate_esr_tdma,
    ks_distance,
    slot_rates,
    _gains_from_uniforms,
    _uniform_block,
)


def cfg_of(K, n, rho):
    return SystemConfig(num_users=K, served_index=n, transmit_snr=rho)


class TestDrawRealization:
    def test_shapes_and_ordering(self):
        r = draw_realization(42, 0, 6)
        assert len(r.gains_bs) == 6 and len(r.gains_eve) == 6
        assert np.all(np.diff(r.gains_bs) >= 0.0)
        assert np.all(r.gains_bs >= 0.0) and np.all(r.gains_eve >= 0.0)
        assert np.all(np.isfinite(r.gains_bs)) and np.all(np.isfinite(r.gains_eve))

    def test_trial_stream_is_position_keyed(self):
        # a trial's gains do not depend on how the surrounding block is cut
        single = draw_realization(42, 5, 4)
        h, g = _gains_from_uniforms(_uniform_block(42, 0, 10, 4), 4)
        assert np.array_equal(h[5], single.gains_bs)
        assert np.array_equal(g[5], single.gains_eve)
        h2, g2 = _gains_from_uniforms(_uniform_block(42, 5, 3, 4), 4)
        assert np.array_equal(h2[0], single.gains_bs)
        assert np.array_equal(g2[0], single.gains_eve)

    def test_different_trials_differ(self):
        a = draw_realization(42, 0, 4)
        b = draw_realization(42, 1, 4)
        c = draw_realization(43, 0, 4)
        assert not np.array_equal(a.gains_bs, b.gains_bs)
        assert not np.array_equal(a.gains_bs, c.gains_bs)

    def test_unit_mean(self):
        u = _uniform_block(7, 0, 1_000_000, 2)
        h, g = _gains_from_uniforms(u, 2)
        pooled = np.concatenate([h.ravel(), g.ravel()])
        assert abs(pooled.mean() - 1.0) < 0.005

    def test_expected_maximum_is_harmonic_number(self):
        u = _uniform_block(11, 0, 1_000_000, 2)
        h, _ = _gains_from_uniforms(u, 2)
        assert abs(h[:, 1].mean() - 1.5) < 0.01

    def test_order_stat_distribution(self):
        cfg = cfg_of(4, 2, 10.0)
        u = _uniform_block(3, 0, 1_000_000, 4)
        h, _ = _gains_from_uniforms(u, 4)
        hn = np.sort(h[:, 1])
        assert ks_distance(hn, cdf_order_stat(hn, 4, 2)) <= 0.005

    def test_validation(self):
        with pytest.raises(ValueError):
            draw_realization(-1, 0, 4)
        with pytest.raises(ValueError):
            draw_realization(1 << 64, 0, 4)
        with pytest.raises(ValueError):
            draw_realization(0, -1, 4)
        with pytest.raises(ValueError):
            draw_realization(0, 0, 0)


class TestSlotRates:
    def test_hand_worked_example(self):
        real = ChannelRealization(
            gains_bs=np.array([0.5, 2.0]), gains_eve=np.array([1.0, 1.0])
        )
        sr = slot_rates(real, 1, 10.0)
        # Gamma_b = 2.0/0.7 ~ 2.857 > Gamma_e = 1.0/1.2 ~ 0.833: no decode
        assert not sr.eve_decoded_jamming
        assert sr.rate_bs == pytest.approx(math.log(3.5), rel=1e-14)
        assert sr.rate_eve == pytest.approx(math.log(11.0 / 6.0), rel=1e-14)

    def test_zero_eavesdropper_gains(self):
        real = ChannelRealization(
            gains_bs=np.array([0.5, 2.0]), gains_eve=np.array([0.0, 0.0])
        )
        sr = slot_rates(real, 1, 10.0)
        assert sr.rate_eve == 0.0
        assert sr.rate_bs == pytest.approx(math.log(3.5), rel=1e-14)

    def test_huge_jammer_gain_at_eve_forces_decode(self):
        real = ChannelRealization(
            gains_bs=np.array([0.5, 2.0]), gains_eve=np.array([1.0, 1e12])
        )
        sr = slot_rates(real, 1, 10.0)
        assert sr.eve_decoded_jamming
        assert sr.rate_eve == pytest.approx(math.log1p(5.0), rel=1e-14)

    def test_boundary_tie_counts_as_decoded(self):
        real = ChannelRealization(
            gains_bs=np.array([1.0, 2.0]), gains_eve=np.array([1.0, 2.0])
        )
        sr = slot_rates(real, 1, 10.0)
        assert sr.eve_decoded_jamming

    def test_rates_nonnegative_and_interference_only_hurts(self):
        rho = 10.0
        for trial in range(200):
            real = draw_realization(99, trial, 5)
            sr = slot_rates(real, 2, rho)
            assert sr.rate_bs >= 0.0 and sr.rate_eve >= 0.0
            if not sr.eve_decoded_jamming:
                assert sr.rate_eve <= math.log1p(0.5 * rho * real.gains_eve[1])

    def test_served_index_validation(self):
        real = draw_realization(1, 0, 4)
        with pytest.raises(ValueError):
            slot_rates(real, 4, 10.0)
        with pytest.raises(ValueError):
            slot_rates(real, 0, 10.0)


class TestEstimateEsr:
    def test_deterministic(self):
        cfg = cfg_of(4, 3, 100.0)
        a = estimate_esr(cfg, 50_000, 42)
        b = estimate_esr(cfg, 50_000, 42)
        assert a == b

    def test_matches_per_trial_api(self):
        cfg = cfg_of(3, 2, 10.0)
        est = estimate_esr(cfg, 400, 8)
        rates = [
            slot_rates(draw_realization(8, t, 3), 2, 10.0) for t in range(400)
        ]
        mean_cb = math.fsum(r.rate_bs for r in rates) / 400
        mean_ce = math.fsum(r.rate_eve for r in rates) / 400
        assert est.mean_cb == pytest.approx(mean_cb, rel=1e-12)
        assert est.mean_ce == pytest.approx(mean_ce, rel=1e-12)

    def test_estimator_fields(self):
        cfg = cfg_of(4, 3, 100.0)
        est = estimate_esr(cfg, 10_000, 5)
        assert est.esr == max(0.0, est.mean_cb - est.mean_ce)
        assert est.std_error > 0.0
        assert est.trials == 10_000 and est.seed == 5

    def test_agrees_with_exact_engine(self):
        cfg = cfg_of(4, 3, 100.0)
        est = estimate_esr(cfg, 10_000, 123)
        assert abs(est.esr - esr_exact(cfg).value) <= 4.0 * est.std_error

    def test_sqrt_n_law(self):
        cfg = cfg_of(4, 2, 10.0)
        se1 = estimate_esr(cfg, 40_000, 3).std_error
        se2 = estimate_esr(cfg, 160_000, 3).std_error
        assert se2 == pytest.approx(se1 / 2.0, rel=0.2)

    def test_mean_cb_matches_closed_form(self):
        for K, n, rho in ((4, 3, 100.0), (8, 7, 100.0)):
            cfg = cfg_of(K, n, rho)
            est = estimate_esr(cfg, 1_000_000, 17)
            # std error of C_b alone is below that of the difference by a
            # small factor; 3x the difference's is a safe envelope
            assert abs(est.mean_cb - exp_cb(cfg)) <= 3.0 * est.std_error

    def test_tdma_slot_rejected(self):
        with pytest.raises(ValueError):
            estimate_esr(cfg_of(4, 4, 10.0), 100, 0)
        with pytest.raises(ValueError):
            estimate_esr(cfg_of(4, 3, 10.0), 0, 0)


class TestEstimateEsrTdma:
    def test_single_user_is_symmetric(self):
        est = estimate_esr_tdma(1, 10.0, 200_000, 21)
        assert abs(est.mean_cb - est.mean_ce) <= 4.0 * est.std_error
        assert est.esr >= 0.0

    def test_two_users_high_snr_is_log2(self):
        est = estimate_esr_tdma(2, 1e6, 1_000_000, 9)
        assert est.esr == pytest.approx(math.log(2.0), abs=0.01)

    def test_below_dual_scheme_optimum(self):
        est = estimate_esr_tdma(8, 100.0, 1_000_000, 30)
        assert 0.0 < est.esr < esr_exact(cfg_of(8, 7, 100.0)).value

    def test_deterministic(self):
        assert estimate_esr_tdma(4, 100.0, 20_000, 1) == estimate_esr_tdma(4, 100.0, 20_000, 1)


class TestEmpiricalCdfT:
    def test_samples_sorted_finite(self):
        cfg = cfg_of(4, 2, 10.0)
        t = empirical_cdf_T(cfg, 10_000, 4)
        assert len(t) == 10_000
        assert np.all(np.diff(t) >= 0.0)
        assert np.all(t >= 0.0) and np.all(np.isfinite(t))

    def test_high_snr_mass_above_one(self):
        cfg = cfg_of(4, 2, 1e8)
        t = empirical_cdf_T(cfg, 100_000, 12)
        assert np.all(t >= 1.0)

    def test_ks_against_closed_form(self):
        cfg = cfg_of(4, 2, 10.0)
        t = empirical_cdf_T(cfg, 1_000_000, 99)
        assert ks_distance(t, cdf_T(t, cfg)) <= 0.005

    def test_ks_helper_validation(self):
        with pytest.raises(ValueError):
            ks_distance(np.array([]), np.array([]))
        with pytest.raises(ValueError):
            ks_distance(np.array([1.0]), np.array([0.5, 0.6]))
