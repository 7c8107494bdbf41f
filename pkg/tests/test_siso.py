import math

import numpy as np
import pytest

from cograte.channel import (
    SISO_SISO,
    ChannelRealization,
    LinearTopology,
    SystemParams,
    deterministic_gains,
)
from cograte.errors import DegenerateDenominator
from cograte.siso import (
    alpha_siso,
    asymptotic_gain,
    power_split_u,
    primary_rate_rp,
    rate_df_dpc,
    rate_f_dpc_noncausal,
)

FIG2_TOPO = LinearTopology.from_spacings(t_d=0.1, r_d=0.6, d_24=1.0)


def _siso_channel(h12=1.0, h13=1.0, h14=1.0, h23=1.0, h24=1.0):
    return ChannelRealization(
        scenario=SISO_SISO, h12=h12, h13=h13, h14=h14, h23=h23, h24=h24
    )


def _bisect_u(h13, h23, alpha, t, params, target, iters=200):
    """Independent oracle: solve Rp(u) = target by bisection (Rp decreasing in u)."""
    lo, hi = 0.0, 1.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if primary_rate_rp(h13, h23, mid, t, alpha, params) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class TestAlpha:
    def test_equal_gains(self):
        params = SystemParams(p=0.5, beta=1.0, P=2.0)
        assert alpha_siso(0.7 + 0.2j, 0.2 - 0.7j, params) == pytest.approx(1.0, abs=1e-12)

    def test_zero_h13(self):
        params = SystemParams(p=0.5, beta=1.0, P=2.0)
        assert alpha_siso(0.0, 1.0, params) == 0.0

    def test_direct_evaluation(self):
        # |h13|^2 = 1, |h12|^2 = 4, beta*P/(1-p) = 3 -> log2(4)/log2(13)
        params = SystemParams(p=0.5, beta=1.0, P=1.5)
        expected = math.log2(4.0) / math.log2(13.0)
        assert alpha_siso(1.0, 2.0, params) == pytest.approx(expected, abs=1e-12)
        assert expected == pytest.approx(0.54047, abs=1e-5)

    def test_can_exceed_one(self):
        params = SystemParams(p=0.5, beta=1.0, P=2.0)
        assert alpha_siso(2.0, 1.0, params) > 1.0

    def test_zero_primary_power(self):
        params = SystemParams(p=0.5, beta=0.0, P=2.0)
        assert alpha_siso(1.0, 2.0, params) == 0.0

    def test_degenerate_denominator(self):
        params = SystemParams(p=0.5, beta=1.0, P=2.0)
        with pytest.raises(DegenerateDenominator):
            alpha_siso(1.0, 0.0, params)


class TestPowerSplit:
    def test_reference_point(self):
        # h13 = h23 = 1, beta = 1, p = 0.5, P = 2, t = 0.5, alpha = 0.5
        params = SystemParams(p=0.5, beta=1.0, P=2.0)
        u = power_split_u(1.0, 1.0, 0.5, 0.5, params)
        assert u == pytest.approx(0.4866060555964672, abs=1e-12)
        assert u == pytest.approx(0.48660, abs=1e-5)
        target = math.log2(5.0)
        oracle = _bisect_u(1.0, 1.0, 0.5, 0.5, params, target)
        assert u == pytest.approx(oracle, abs=1e-9)
        assert primary_rate_rp(1.0, 1.0, u, 0.5, 0.5, params) == pytest.approx(
            target, abs=1e-9
        )

    def test_zero_h13_gives_full_power(self):
        # target rate 0: the oracle converges to u = 1, matching the closed form
        params = SystemParams(p=0.5, beta=1.0, P=2.0)
        u = power_split_u(0.0, 1.0, 0.0, 0.5, params)
        assert u == 1.0
        oracle = _bisect_u(0.0, 1.0, 0.0, 0.5, params, target=0.0)
        assert oracle == pytest.approx(1.0, abs=1e-9)

    def test_defining_property_random(self):
        rng = np.random.default_rng(10)
        for _ in range(300):
            params = SystemParams(
                p=float(rng.uniform(0.05, 0.95)),
                beta=float(rng.uniform(0.25, 4.0)),
                P=float(10.0 ** rng.uniform(-1, 3)),
            )
            h13 = float(rng.uniform(0.1, 2.0))
            h23 = float(rng.uniform(0.1, 2.0))
            alpha = float(rng.uniform(0.0, 0.99))
            t = float(rng.uniform(1e-4, 1.0))
            u = power_split_u(h13, h23, alpha, t, params)
            target = math.log2(1.0 + h13 * h13 * params.active_primary_power())
            achieved = primary_rate_rp(h13, h23, u, t, alpha, params)
            assert abs(achieved - target) <= 1e-9

    def test_monotone_in_u(self):
        # well-posedness of the bisection oracle
        params = SystemParams(p=0.3, beta=2.0, P=5.0)
        rates = [
            primary_rate_rp(0.8, 1.1, u, 0.6, 0.2, params) for u in np.linspace(0.0, 1.0, 25)
        ]
        assert all(a > b for a, b in zip(rates, rates[1:]))


class TestPrimaryRate:
    def test_no_cognitive_presence(self):
        params = SystemParams(p=0.5, beta=1.0, P=2.0)
        expected = math.log2(1.0 + 1.0 * 1.0 * 2.0 / 0.5)
        assert primary_rate_rp(1.0, 1.0, 1.0, 0.0, 0.0, params) == pytest.approx(
            expected, abs=1e-12
        )

    def test_pure_relay_exceeds_target(self):
        params = SystemParams(p=0.5, beta=1.0, P=2.0)
        target = math.log2(5.0)
        assert primary_rate_rp(1.0, 1.0, 0.0, 0.5, 0.2, params) > target

    def test_reference_rate_is_log2_5(self):
        params = SystemParams(p=0.5, beta=1.0, P=2.0)
        u = power_split_u(1.0, 1.0, 0.5, 0.5, params)
        rp = primary_rate_rp(1.0, 1.0, u, 0.5, 0.5, params)
        assert rp == pytest.approx(2.321928094887362, abs=1e-9)


class TestDfDpc:
    def test_reduces_to_classical_at_t0(self):
        params = SystemParams(p=0.1, beta=1.0, P=100.0)
        ch = deterministic_gains(FIG2_TOPO, params, SISO_SISO)
        rates = rate_df_dpc(ch, params, 0.0)
        classical = 0.1 * math.log2(1.0 + abs(ch.h24) ** 2 * 100.0 / 0.1)
        assert rates.total(0.1) == pytest.approx(classical, abs=1e-12)
        assert rates.u is None
        assert rates.r2 == 0.0

    def test_not_decodable_zeroes_state2(self):
        # |h13| > |h12| -> alpha > 1
        params = SystemParams(p=0.1, beta=1.0, P=100.0)
        ch = _siso_channel(h12=0.5, h13=1.5)
        for t in (0.0, 0.3, 1.0):
            rates = rate_df_dpc(ch, params, t)
            assert not rates.decodable
            assert rates.r2 == 0.0

    def test_weak_interference_flag(self):
        params = SystemParams(p=0.1, beta=1.0, P=10.0)
        assert rate_df_dpc(_siso_channel(h23=0.5, h24=1.0), params, 0.2).weak_interference
        assert not rate_df_dpc(_siso_channel(h23=2.0, h24=1.0), params, 0.2).weak_interference

    def test_generalized_beats_classical_mid_snr(self):
        # fine-grid scan of the full rate expression
        params = SystemParams(p=0.1, beta=1.0, P=100.0)
        ch = deterministic_gains(FIG2_TOPO, params, SISO_SISO)
        grid = np.linspace(0.0, 1.0, 20001)
        best = max(rate_df_dpc(ch, params, float(t)).total(0.1) for t in grid)
        classical = rate_df_dpc(ch, params, 0.0).total(0.1)
        assert best > classical + 1.0

    def test_coexistence_at_operating_point(self):
        params = SystemParams(p=0.1, beta=1.0, P=100.0)
        ch = deterministic_gains(FIG2_TOPO, params, SISO_SISO)
        rates = rate_df_dpc(ch, params, 0.4)
        target = math.log2(1.0 + abs(ch.h13) ** 2 * params.active_primary_power())
        assert rates.rp_check == pytest.approx(target, abs=1e-9)

    def test_p_one_collapses_to_state1(self):
        params = SystemParams(p=1.0, beta=1.0, P=10.0)
        ch = _siso_channel()
        rates = rate_df_dpc(ch, params, 0.3)
        assert rates.r2 == 0.0
        assert rates.total(1.0) == pytest.approx(math.log2(1.0 + 10.0 * 0.7), abs=1e-12)

    def test_p_zero_uses_only_state2(self):
        params = SystemParams(p=0.0, beta=1.0, P=10.0)
        ch = _siso_channel(h12=2.0)
        rates = rate_df_dpc(ch, params, 0.5)
        assert rates.r1 == 0.0
        assert rates.r2 > 0.0

    def test_zero_power(self):
        params = SystemParams(p=0.1, beta=1.0, P=0.0)
        rates = rate_df_dpc(_siso_channel(), params, 0.5)
        assert rates.total(0.1) == 0.0
        assert rates.u == 1.0


class TestNonCausal:
    def test_reduces_to_classical_at_t0(self):
        params = SystemParams(p=0.1, beta=1.0, P=50.0)
        ch = deterministic_gains(FIG2_TOPO, params, SISO_SISO)
        assert rate_f_dpc_noncausal(ch, params, 0.0).total(0.1) == pytest.approx(
            rate_df_dpc(ch, params, 0.0).total(0.1), abs=1e-12
        )

    def test_dominates_causal_pointwise(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            params = SystemParams(
                p=float(rng.uniform(0.05, 0.95)),
                beta=float(rng.uniform(0.25, 4.0)),
                P=float(10.0 ** rng.uniform(-2, 4)),
            )
            ch = _siso_channel(
                h12=float(rng.uniform(0.1, 2.0)),
                h13=float(rng.uniform(0.1, 2.0)),
                h23=float(rng.uniform(0.1, 2.0)),
                h24=float(rng.uniform(0.1, 2.0)),
            )
            t = float(rng.uniform(0.0, 1.0))
            nc = rate_f_dpc_noncausal(ch, params, t).total(params.p)
            causal = rate_df_dpc(ch, params, t).total(params.p)
            assert nc >= causal - 1e-12

    def test_coexistence_with_alpha_zero(self):
        rng = np.random.default_rng(12)
        params = SystemParams(p=0.2, beta=1.0, P=30.0)
        for _ in range(100):
            ch = _siso_channel(
                h13=float(rng.uniform(0.1, 2.0)), h23=float(rng.uniform(0.1, 2.0))
            )
            t = float(rng.uniform(1e-3, 1.0))
            rates = rate_f_dpc_noncausal(ch, params, t)
            target = math.log2(1.0 + abs(ch.h13) ** 2 * params.active_primary_power())
            assert rates.rp_check == pytest.approx(target, abs=1e-9)
            assert rates.alpha == 0.0


class TestAsymptoticGain:
    def test_vanishes_at_small_t(self):
        # G decays like sqrt(t) through the relay term
        params = SystemParams(p=0.5, beta=1.0, P=1.0)
        ch = _siso_channel()
        assert abs(asymptotic_gain(ch, params, 1e-9)) < 1e-4
        assert abs(asymptotic_gain(ch, params, 1e-13)) < abs(
            asymptotic_gain(ch, params, 1e-9)
        )

    def test_reference_point(self):
        # h13 = h23 = h24 = 1, beta = 1, p = 0.5, t = 0.5 on the additive branch
        params = SystemParams(p=0.5, beta=1.0, P=1.0)
        ch = _siso_channel()
        expected = 0.5 * math.log2(0.5) + 0.5 * math.log2(1.0 + 0.5 + math.sqrt(2.0))
        g = asymptotic_gain(ch, params, 0.5)
        assert g == pytest.approx(expected, abs=1e-12)
        assert g == pytest.approx(0.27155, abs=1e-4)
        # numerical large-P oracle: R_nc(t) - R_c at P = 1e9
        big = SystemParams(p=0.5, beta=1.0, P=1e9)
        offset = rate_f_dpc_noncausal(ch, big, 0.5).total(0.5) - rate_df_dpc(
            ch, big, 0.0
        ).total(0.5)
        assert g == pytest.approx(offset, abs=1e-2)

    def test_matches_large_p_limit_on_grid(self):
        params = SystemParams(p=0.1, beta=1.0, P=1.0)
        ch = deterministic_gains(FIG2_TOPO, params, SISO_SISO)
        big = SystemParams(p=0.1, beta=1.0, P=1e12)
        classical = rate_df_dpc(ch, big, 0.0).total(0.1)
        for t in (0.05, 0.2, 0.5, 0.8, 0.95):
            offset = rate_f_dpc_noncausal(ch, big, t).total(0.1) - classical
            assert abs(asymptotic_gain(ch, params, t) - offset) <= 1e-3
