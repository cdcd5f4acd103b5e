import math

import numpy as np
import pytest

from helpers import close, random_positive_triples

from mvbounds import (
    Branch,
    DegenerateStrikeError,
    InvalidSpecError,
    MomentSpec,
    OutOfRangeError,
    Strike,
    dlp_bounds,
    feasible_p_interval,
    l_value,
    lo_max,
    one_sided_tail_bounds,
    p_m,
    p_star,
    scarf_min,
    standardize,
    standardized_scarf_inf,
    threshold_strike,
    two_point_from_p,
    two_sided_tail_bound,
    winsorized_floor,
)


class TestStandardize:
    def test_strike_at_mean_maps_to_zero(self):
        std = standardize(Strike(1.0), MomentSpec(1.0, 3.0))
        assert std.strike_std == 0.0

    def test_direct_arithmetic(self):
        std = standardize(Strike(2.0), MomentSpec(1.0, 2.0))
        assert std.strike_std == 0.5
        assert std.lower_bound_std == -0.5

    def test_round_trip(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            m = rng.uniform(-5, 5)
            s = rng.uniform(0.1, 5)
            c = rng.uniform(-10, 10)
            std = standardize(Strike(c), MomentSpec(m, s))
            assert close(m + s * std.strike_std, c)


class TestTwoPointFromP:
    def test_symmetric(self):
        dist = two_point_from_p(0.5)
        assert dist.low == -1.0 and dist.high == 1.0

    @pytest.mark.parametrize(
        "p,low,high", [(0.8, -0.5, 2.0), (0.2, -2.0, 0.5)]
    )
    def test_known_points(self, p, low, high):
        dist = two_point_from_p(p)
        assert close(dist.low, low) and close(dist.high, high)
        assert abs(dist.mean()) <= 1e-12
        assert abs(dist.second_moment() - 1.0) <= 1e-12

    def test_moment_identity_across_parameter(self):
        for p in np.linspace(1e-4, 1 - 1e-4, 2001):
            dist = two_point_from_p(float(p))
            assert abs(dist.mean()) <= 1e-12
            assert abs(dist.second_moment() - 1.0) <= 1e-12

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.5, 2.0])
    def test_rejects_degenerate(self, p):
        with pytest.raises(OutOfRangeError):
            two_point_from_p(p)


class TestFeasibleInterval:
    def test_positive_threshold(self):
        iv = feasible_p_interval(1.0)
        assert iv.lower == 0.5 and iv.upper == 1.0
        assert iv.lower_closed and not iv.upper_closed

    def test_negative_threshold(self):
        iv = feasible_p_interval(-1.0)
        assert iv.lower == 0.0 and iv.upper == 0.5
        assert not iv.lower_closed and iv.upper_closed

    def test_zero_threshold_keeps_printed_endpoint(self):
        iv = feasible_p_interval(0.0)
        assert iv.lower == 0.0 and iv.upper == 1.0
        assert iv.lower_closed and not iv.upper_closed

    def test_support_split_matches_interval_membership(self):
        # Membership of p in the interval must coincide with the cap falling
        # between the two support points, across a dense (p, c) grid.
        ps = np.linspace(0.004, 0.996, 125)
        cs = np.linspace(-4.0, 4.0, 101)
        pairs = 0
        for c in cs:
            iv = feasible_p_interval(float(c))
            for p in ps:
                dist = two_point_from_p(float(p))
                if c >= 0:
                    split = dist.low < c <= dist.high
                    member = p >= c * c / (1 + c * c)
                else:
                    split = dist.low <= c < dist.high
                    member = p <= 1 / (1 + c * c)
                assert split == member, (p, c)
                assert member == iv.contains(float(p))
                pairs += 1
        assert pairs >= 10_000


class TestLValue:
    def test_symmetric_zero_cap(self):
        assert l_value(0.5, 0.0) == -0.5

    def test_symmetric_unit_cap(self):
        assert l_value(0.5, 1.0) == 0.0

    def test_minimum_value_identity(self):
        rng = np.random.default_rng(11)
        for c in rng.uniform(-6, 6, 100):
            assert close(l_value(p_star(c), c), 0.5 * c - 0.5 * math.sqrt(1 + c * c))

    def test_rejects_endpoints(self):
        with pytest.raises(OutOfRangeError):
            l_value(0.0, 1.0)
        with pytest.raises(OutOfRangeError):
            l_value(1.0, 1.0)

    def test_v_shape_around_minimum(self):
        # Strictly decreasing up to the minimizer, strictly increasing after.
        for c in np.linspace(-5.0, 5.0, 100):
            pstar = p_star(float(c))
            left = np.linspace(1e-6, pstar, 500)
            right = np.linspace(pstar, 1 - 1e-6, 500)
            lv = np.vectorize(lambda p: l_value(float(p), float(c)))
            assert np.all(np.diff(lv(left)) < 0.0), c
            assert np.all(np.diff(lv(right)) > 0.0), c

    def test_grid_minimizer_matches_p_star(self):
        # Independent check: brute-force argmin on a dense grid.
        for c in (-2.0, -0.3, 0.0, 0.7, 3.0):
            ps = np.linspace(1e-5, 1 - 1e-5, 200_001)
            values = -np.sqrt(ps * (1 - ps)) + c * (1 - ps)
            assert abs(ps[np.argmin(values)] - p_star(c)) < 1e-5


class TestPStar:
    def test_symmetry(self):
        assert p_star(0.0) == 0.5
        assert close(p_star(1.0), 0.5 + 0.5 / math.sqrt(2.0))
        assert close(p_star(-1.0), 1.0 - p_star(1.0))

    def test_always_feasible(self):
        for c in np.linspace(-50.0, 50.0, 1001):
            assert feasible_p_interval(float(c)).contains(p_star(float(c))), c


class TestPm:
    def test_values(self):
        assert p_m(1.0) == 0.5
        assert p_m(2.0) == pytest.approx(0.2, abs=0)

    def test_rejects_nonpositive(self):
        with pytest.raises(OutOfRangeError):
            p_m(0.0)
        with pytest.raises(OutOfRangeError):
            p_m(-1.0)


class TestDlpBounds:
    def test_symmetric_case(self):
        env = dlp_bounds(MomentSpec(0.0, 1.0), Strike(0.0), 0.5)
        assert env.lower == 0.0 and env.upper == 0.5

    def test_zero_tail_pins_payoff(self):
        env = dlp_bounds(MomentSpec(2.0, 1.0), Strike(1.0), 0.0)
        assert env.lower == 0.0 and env.upper == 0.0

    def test_known_value(self):
        env = dlp_bounds(MomentSpec(1.0, 2.0), Strike(2.0), 0.25)
        assert close(env.lower, -0.25)
        assert close(env.upper, -0.25 + 2.0 * math.sqrt(0.25 * 0.75))
        assert close(env.upper, 0.616025403784439)

    def test_width_identity_and_peak(self):
        spec = MomentSpec(0.7, 1.3)
        widths = []
        for p0 in np.linspace(0.0, 1.0, 101):
            env = dlp_bounds(spec, Strike(0.2), float(p0))
            assert abs(env.width - spec.std_dev * math.sqrt(p0 * (1 - p0))) <= 1e-12
            widths.append(env.width)
        assert np.argmax(widths) == 50  # widest exactly at p0 = 1/2

    def test_rejects_bad_tail(self):
        with pytest.raises(OutOfRangeError):
            dlp_bounds(MomentSpec(0.0, 1.0), Strike(0.0), 1.5)


class TestTailBounds:
    def test_one_sided(self):
        assert one_sided_tail_bounds(0.0) == (0.0, 1.0)
        lo, hi = one_sided_tail_bounds(1.0)
        assert close(lo, 0.5) and hi == 1.0
        lo, hi = one_sided_tail_bounds(-1.0)
        assert lo == 0.0 and close(hi, 0.5)

    def test_two_sided(self):
        assert close(two_sided_tail_bound(1.0), 1.0)
        assert close(two_sided_tail_bound(2.0), 0.4)
        # Looser than the 1/c² bound past the crossover at 1, sharper before.
        assert two_sided_tail_bound(2.0) > 1.0 / 4.0
        assert two_sided_tail_bound(0.5) == pytest.approx(1.6)
        assert two_sided_tail_bound(0.5) < 1.0 / 0.25

    def test_two_sided_rejects_nonpositive(self):
        with pytest.raises(OutOfRangeError):
            two_sided_tail_bound(0.0)


class TestStandardizedInf:
    def test_low_strike_case(self):
        value, p_opt, branch = standardized_scarf_inf(1.0, -0.5)
        assert close(value, -0.75)
        assert p_opt == 0.5
        assert branch is Branch.LOW_STRIKE

    def test_high_strike_case(self):
        value, p_opt, branch = standardized_scarf_inf(1.0, 1.0)
        assert close(value, 0.5 - 0.5 * math.sqrt(2.0))
        assert branch is Branch.HIGH_STRIKE

    def test_branches_agree_at_seam(self):
        value, _, _ = standardized_scarf_inf(1.0, 0.0)
        assert close(value, -0.5)

    def test_degenerate_cap(self):
        value, p_opt, branch = standardized_scarf_inf(1.0, -1.5)
        assert value == -1.5 and p_opt is None and branch is Branch.DEGENERATE

    def test_rejects_nonpositive_mean(self):
        with pytest.raises(OutOfRangeError):
            standardized_scarf_inf(0.0, 1.0)

    def test_branch_formulas(self):
        rng = np.random.default_rng(5)
        for _ in range(300):
            m = rng.uniform(0.1, 3.0)
            seam = (1 - m * m) / (2 * m)
            c = seam + rng.uniform(-2.0, 2.0)
            if c <= -m:
                continue
            value, p_opt, branch = standardized_scarf_inf(m, c)
            assert close(value, l_value(p_opt, c))
            if branch is Branch.LOW_STRIKE:
                assert close(value, c - (m + c) / (1 + m * m))
            else:
                assert close(value, 0.5 * c - 0.5 * math.sqrt(1 + c * c))


class TestScarfMin:
    def test_seam_value_from_both_formulas(self):
        spec = MomentSpec(1.0, 1.0)
        sol = scarf_min(spec, Strike(1.0))
        assert close(sol.min_winsorized, 0.5)
        assert close(threshold_strike(spec), 1.0)

    def test_low_strike_extremal(self):
        sol = scarf_min(MomentSpec(1.0, 1.0), Strike(0.5))
        assert close(sol.min_winsorized, 0.25)
        assert sol.branch is Branch.LOW_STRIKE
        assert sol.extremal.low == 0.0
        assert close(sol.extremal.high, 2.0)
        assert close(sol.extremal.p_low, 0.5)

    def test_high_strike_extremal(self):
        sol = scarf_min(MomentSpec(1.0, 1.0), Strike(3.0))
        assert close(sol.min_winsorized, 2.0 - 0.5 * math.sqrt(5.0))
        assert close(sol.extremal.low, 0.763932022500210)
        assert close(sol.extremal.high, 5.236067977499790)
        assert close(sol.extremal.p_low, 0.947213595499958)
        assert close(sol.extremal.winsorized_mean(3.0), sol.min_winsorized)

    def test_degenerate_strike(self):
        sol = scarf_min(MomentSpec(1.0, 1.0), Strike(-1.0))
        assert sol.branch is Branch.DEGENERATE
        assert sol.min_winsorized == -1.0
        assert sol.max_call == 2.0
        assert sol.extremal is None

    def test_rejects_nonpositive_mean(self):
        with pytest.raises(InvalidSpecError):
            scarf_min(MomentSpec(0.0, 1.0), Strike(1.0))

    def test_branch_continuity_random(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            m = rng.uniform(0.2, 4.0)
            s = rng.uniform(0.2, 4.0)
            seam = (m * m + s * s) / (2 * m)
            low_formula = m * m / (m * m + s * s) * seam
            high_formula = (seam + m) / 2 - 0.5 * math.sqrt((seam - m) ** 2 + s * s)
            assert close(low_formula, high_formula)
            assert close(scarf_min(MomentSpec(m, s), Strike(seam)).min_winsorized, low_formula)

    def test_reduction_consistency_random(self):
        for m, s, c in random_positive_triples(500, seed=23):
            spec = MomentSpec(m, s)
            sol = scarf_min(spec, Strike(c))
            value_std, _, _ = standardized_scarf_inf(m / s, (c - m) / s)
            assert close(sol.min_winsorized, m + s * value_std)

    def test_matches_branch_formulas_random(self):
        for m, s, c in random_positive_triples(500, seed=29):
            sol = scarf_min(MomentSpec(m, s), Strike(c))
            if sol.branch is Branch.LOW_STRIKE:
                assert close(sol.min_winsorized, m * m / (m * m + s * s) * c)
            else:
                assert close(
                    sol.min_winsorized, (c + m) / 2 - 0.5 * math.sqrt((c - m) ** 2 + s * s)
                )

    def test_attainment_random(self):
        for m, s, c in random_positive_triples(500, seed=31):
            sol = scarf_min(MomentSpec(m, s), Strike(c))
            ext = sol.extremal
            assert abs(ext.winsorized_mean(c) - sol.min_winsorized) <= 1e-12
            assert ext.low >= 0.0
            assert abs(ext.mean() - m) <= 1e-12 * max(1.0, m)
            assert abs(ext.variance() - s * s) <= 1e-12 * max(1.0, s * s)


class TestLoMax:
    def test_small_strike_limit(self):
        spec = MomentSpec(1.0, 1.0)
        assert close(lo_max(spec, Strike(1e-12)), 1.0, tol=1e-9)

    def test_seam_value(self):
        assert close(lo_max(MomentSpec(1.0, 1.0), Strike(1.0)), 0.5)

    def test_high_strike_value(self):
        assert close(lo_max(MomentSpec(1.0, 1.0), Strike(3.0)), -1.0 + 0.5 * math.sqrt(5.0))

    def test_rejects_degenerate_strike(self):
        with pytest.raises(DegenerateStrikeError):
            lo_max(MomentSpec(1.0, 1.0), Strike(-1.0))

    def test_duality_and_corollary_formula(self):
        for m, s, c in random_positive_triples(500, seed=37):
            spec = MomentSpec(m, s)
            lo = lo_max(spec, Strike(c))
            assert close(lo + scarf_min(spec, Strike(c)).min_winsorized, m)
            if 2 * m * c <= m * m + s * s:
                assert close(lo, m - m * m / (m * m + s * s) * c)
            else:
                assert close(lo, (m - c) / 2 + 0.5 * math.sqrt((m - c) ** 2 + s * s))


class TestWinsorizedFloor:
    def test_values(self):
        assert winsorized_floor(MomentSpec(0.0, 1.0), Strike(0.0)) == -1.0
        assert winsorized_floor(MomentSpec(1.0, 1.0), Strike(1.0)) == -3.0

    def test_floor_below_every_minimum(self):
        for m, s, c in random_positive_triples(1000, seed=41):
            spec = MomentSpec(m, s)
            sol = scarf_min(spec, Strike(c))
            assert sol.min_winsorized >= winsorized_floor(spec, Strike(c))
