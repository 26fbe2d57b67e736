
import numpy as np
import pytest
from scipy import stats

from powerauctions import (FmpiSpec, PremiumRow, cesur_premium,
                           distribution_stats, equality_of_means, fmpi_premium,
                           fmpi_strip, fmpi_weights, monetary_impact,
                           pjm_premium, welch_t, yearly_aggregate)
from powerauctions.datasets import CESUR_AUCTIONS, PJM_AUCTIONS


class TestCesurPremium:
    def test_first_auction(self):
        premium, pct = cesur_premium(46.27, 36.45)
        assert premium == pytest.approx(9.82, abs=1e-9)
        assert pct * 100 == pytest.approx(21.22, abs=0.01)

    def test_negative_premium(self):
        premium, pct = cesur_premium(38.45, 47.78)
        assert premium == pytest.approx(-9.33, abs=1e-9)
        assert pct * 100 == pytest.approx(-24.27, abs=0.01)

    def test_identity(self):
        assert cesur_premium(50.0, 50.0) == (0.0, 0.0)

    def test_nonpositive_price_rejected(self):
        with pytest.raises(ValueError):
            cesur_premium(0.0, 10.0)


class TestPjmPremium:
    def test_ace_2007(self):
        premium, pct = pjm_premium(90.02, 11.34, 70.79)
        assert premium == pytest.approx(7.89, abs=1e-9)
        # published 10.02%; the net-of-costs denominator gives 10.03%
        assert pct * 100 == pytest.approx(10.02, abs=0.02)

    def test_ace_2009(self):
        premium, pct = pjm_premium(107.15, 17.44, 41.29)
        assert premium == pytest.approx(48.42, abs=1e-9)
        assert pct * 100 == pytest.approx(53.97, abs=0.01)

    def test_reco_2009(self):
        premium, pct = pjm_premium(114.39, 17.44, 40.80)
        assert premium == pytest.approx(56.15, abs=1e-9)
        assert pct * 100 == pytest.approx(57.91, abs=0.02)

    def test_nonpositive_net_price_rejected(self):
        with pytest.raises(ValueError):
            pjm_premium(10.0, 15.0, 5.0)


class TestFmpiStrip:
    def test_zero_rate_is_plain_mean(self, rng):
        prices = tuple(rng.uniform(20, 90, size=36))
        value = fmpi_strip(FmpiSpec(prices, annual_rate=0.0))
        assert value == pytest.approx(float(np.mean(prices)), abs=1e-12)

    def test_constant_prices_any_rate(self):
        for r in (0.0, 0.05, 0.12, 0.5):
            assert fmpi_strip(FmpiSpec((42.5,) * 36, annual_rate=r)) == pytest.approx(42.5, abs=1e-12)

    def test_against_direct_summation_oracle(self):
        # independent brute-force sum over the 36 terms
        r = 0.12
        prices = tuple(float(j) for j in range(1, 37))
        weights = [(1.0 + r) ** (-j / 12.0) for j in range(1, 37)]
        total = sum(weights)
        expected = sum(w / total * p for w, p in zip(weights, prices))
        assert fmpi_strip(FmpiSpec(prices, annual_rate=r)) == pytest.approx(expected, abs=1e-12)

    def test_shift_linearity(self, rng):
        prices = rng.uniform(20, 90, size=36)
        base = fmpi_strip(FmpiSpec(tuple(prices), annual_rate=0.07))
        shifted = fmpi_strip(FmpiSpec(tuple(prices + 3.25), annual_rate=0.07))
        assert shifted == pytest.approx(base + 3.25, abs=1e-9)

    def test_weights_sum_to_one_and_decrease(self):
        for r in (0.01, 0.12, 0.3):
            g = fmpi_weights(r)
            assert g.sum() == pytest.approx(1.0, abs=1e-12)
            assert np.all(np.diff(g) < 0)
        g0 = fmpi_weights(0.0)
        assert np.allclose(g0, 1.0 / 36.0)

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError, match="36"):
            FmpiSpec((50.0,) * 35)


class TestFmpiPremium:
    def test_cesur_auction_1(self):
        premium, pct = fmpi_premium(46.27, 0.0, 44.45)
        assert premium == pytest.approx(1.82, abs=1e-9)
        assert pct * 100 == pytest.approx(3.93, abs=0.01)

    def test_ace_2007(self):
        premium, pct = fmpi_premium(99.59, 11.34, 72.01)
        assert premium == pytest.approx(16.24, abs=1e-9)
        assert pct * 100 == pytest.approx(16.31, abs=0.01)

    def test_identity(self):
        assert fmpi_premium(50.0, 0.0, 50.0) == (0.0, 0.0)


class TestYearlyAggregate:
    @staticmethod
    def rows():
        out = []
        for a in CESUR_AUCTIONS:
            premium, pct = cesur_premium(a.price, a.spot_avg)
            f_prem, f_pct = fmpi_premium(a.price, 0.0, a.fmpi)
            out.append(PremiumRow(auction_ref=a.label, group=a.auction_date[:4],
                                  auction_price=a.price, spot_avg=a.spot_avg,
                                  costs=0.0, premium=premium, premium_pct=pct,
                                  fmpi=a.fmpi, fmpi_premium=f_prem,
                                  fmpi_premium_pct=f_pct))
        return out

    def test_2007_average(self):
        agg = yearly_aggregate(self.rows())
        g = agg.groups["2007"]
        assert g["premium"] == pytest.approx(-0.24, abs=0.01)
        assert g["premium_pct"] * 100 == pytest.approx(-1.63, abs=0.02)

    def test_grand_average(self):
        agg = yearly_aggregate(self.rows())
        assert agg.grand["premium_pct"] * 100 == pytest.approx(7.22, abs=0.05)
        assert agg.grand["fmpi_premium_pct"] * 100 == pytest.approx(1.08, abs=0.05)

    def test_single_row_group_is_identity(self):
        row = PremiumRow(auction_ref="x", group="g", auction_price=50.0,
                         spot_avg=45.0, costs=0.0, premium=5.0, premium_pct=0.1)
        agg = yearly_aggregate([row])
        assert agg.groups["g"]["premium"] == 5.0
        assert agg.grand["premium"] == 5.0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            yearly_aggregate([])


class TestMonetaryImpact:
    def test_unit_conversion(self):
        assert monetary_impact(1.0, 1.0) == 2200.0

    def test_zero_premium(self):
        assert monetary_impact(0.0, 123.0) == 0.0

    def test_linearity(self, rng):
        p, c = float(rng.uniform(0, 20)), float(rng.uniform(0, 5000))
        assert monetary_impact(2 * p, c) == pytest.approx(2 * monetary_impact(p, c))
        assert monetary_impact(p, 3 * c) == pytest.approx(3 * monetary_impact(p, c))


class TestDistributionStats:
    def test_two_point_symmetric(self):
        values = [-1.0, 1.0] * 10
        # mean is 0, so shift to keep the CV defined while leaving shape alone
        st = distribution_stats([v + 10.0 for v in values])
        assert st.skewness == pytest.approx(0.0, abs=1e-12)
        assert st.kurtosis == pytest.approx(1.0, abs=1e-12)
        n = len(values)
        assert st.jarque_bera == pytest.approx(n / 6.0 * ((1 - 3) ** 2 / 4.0), abs=1e-9)

    def test_zero_mean_rejected(self):
        with pytest.raises(ValueError, match="mean"):
            distribution_stats([-1.0, 1.0, -1.0, 1.0])

    def test_constant_series_rejected(self):
        with pytest.raises(ValueError, match="variance"):
            distribution_stats([5.0] * 10)

    def test_too_small_sample_rejected(self):
        with pytest.raises(ValueError, match="at least 4"):
            distribution_stats([1.0, 2.0, 3.0])

    def test_seeded_normal_monte_carlo(self, rng):
        x = rng.standard_normal(200_000) + 5.0
        st = distribution_stats(x)
        assert st.skewness == pytest.approx(0.0, abs=0.02)
        assert st.kurtosis == pytest.approx(3.0, abs=0.05)
        assert st.coefficient_of_variation == pytest.approx(0.2, abs=0.005)
        # JB approximately chi2(2): small relative to sample size
        assert st.jarque_bera < 15.0


class TestEqualityOfMeans:
    def test_identical_groups_t_zero(self):
        res = equality_of_means({"a": [1.0, 2.0, 3.0], "b": [1.0, 2.0, 3.0]})
        assert res[0].t_stat == 0.0
        assert not res[0].rejected()

    def test_separated_groups_reject(self):
        a = [0.0, 0.01, -0.01, 0.0]
        b = [10.0, 10.01, 9.99, 10.02]
        (cmp,) = equality_of_means({"a": a, "b": b})
        assert abs(cmp.t_stat) > 100
        assert cmp.rejected(0.05)

    def test_matches_scipy_welch(self, rng):
        a = rng.normal(0, 1, size=9)
        b = rng.normal(0.5, 2, size=14)
        t, dof, p = welch_t(a, b)
        ref = stats.ttest_ind(a, b, equal_var=False)
        assert t == pytest.approx(ref.statistic, abs=1e-12)
        assert p == pytest.approx(ref.pvalue, abs=1e-12)

    def test_zero_variance_both_rejected(self):
        with pytest.raises(ValueError, match="zero variance"):
            welch_t(np.array([1.0, 1.0]), np.array([2.0, 2.0]))

    def test_pairs_cover_all_combinations(self):
        groups = {z: [1.0, 2.0, 3.0] for z in ("ACE", "JCPL", "PSEG", "RECO")}
        res = equality_of_means(groups)
        assert len(res) == 6


class TestPublishedTables:
    def test_all_cesur_rows(self):
        for a in CESUR_AUCTIONS:
            premium, pct = cesur_premium(a.price, a.spot_avg)
            assert premium == pytest.approx(a.premium, abs=0.01), a.label
            assert pct * 100 == pytest.approx(a.premium_pct, abs=0.02), a.label
            f_prem, f_pct = fmpi_premium(a.price, 0.0, a.fmpi)
            assert f_prem == pytest.approx(a.fmpi_premium, abs=0.01), a.label
            assert f_pct * 100 == pytest.approx(a.fmpi_premium_pct, abs=0.02), a.label

    def test_all_pjm_rows(self):
        for a in PJM_AUCTIONS:
            premium, pct = pjm_premium(a.avg_price, a.costs, a.spot_avg)
            assert premium == pytest.approx(a.premium, abs=0.01), (a.year, a.zone)
            assert pct * 100 == pytest.approx(a.premium_pct, abs=0.05), (a.year, a.zone)
            f_prem, f_pct = fmpi_premium(a.bgsfp_price, a.costs, a.fmpi)
            assert f_prem == pytest.approx(a.fmpi_premium, abs=0.01), (a.year, a.zone)
            assert f_pct * 100 == pytest.approx(a.fmpi_premium_pct, abs=0.05), (a.year, a.zone)
