import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from fpsearch import algorithms as alg
from fpsearch import analytics as an

from conftest import EPS_GRID

R_VALUES = [0.25, 0.5, 0.75, 1.0]


def test_error_after_examples():
    assert an.error_after(0.5, 0.5, 1) == 0.125
    assert an.error_after(0.5, 1.0, 1) == 0.0


def test_error_after_matches_simulation():
    for r in R_VALUES:
        for eps in EPS_GRID:
            for q in range(1, 9):
                d = alg.run_fixed_point_exact(alg.SearchConfig(eps, q, r))
                assert abs(an.error_after(eps, r, q) - d.final_failure) < 1e-10


class TestSuccessSplit:
    @pytest.mark.parametrize("eps", EPS_GRID)
    def test_q1(self, eps):
        assert an.deterministic_success(eps, 1) == pytest.approx((1 - eps) / 2, abs=1e-15)

    def test_half_q2(self):
        p1, pp = an.deterministic_success(0.5, 2), an.probabilistic_success(0.5, 2)
        assert (p1, pp) == (0.8125, 0.15625)
        assert p1 + pp + 0.5**5 == 1.0

    @pytest.mark.parametrize("q", [2, 3, 8])
    def test_eps_zero(self, q):
        assert an.deterministic_success(0.0, q) == 1.0

    def test_partial_sum_form(self):
        # 1 - eps^(2q-2)(1+eps)/2 against the series it sums
        for eps in EPS_GRID:
            for q in range(1, 9):
                series = (1 - eps) / 2 + (1 + eps) / 2 * (1 - eps**2) * sum(eps ** (2 * k - 4) for k in range(2, q + 1))
                assert an.deterministic_success(eps, q) == pytest.approx(series, abs=1e-12)

    def test_report_sums_to_one(self):
        for r in R_VALUES:
            for eps in EPS_GRID:
                for q in range(1, 9):
                    rep = an.analytic_report(eps, r, q)
                    assert rep.p1 + rep.p_prob_success + rep.error_q == pytest.approx(1.0, abs=1e-12)
                    d = alg.run_fixed_point_exact(alg.SearchConfig(eps, q, r))
                    assert rep.p1 == pytest.approx(d.deterministic_success, abs=1e-10)
                    assert rep.p_prob_success == pytest.approx(d.final_success, abs=1e-10)


class TestAverageQueries:
    @pytest.mark.parametrize("eps", EPS_GRID)
    def test_q1(self, eps):
        assert an.avg_queries_quantum(eps, 0.5, 1) == 1.0
        assert an.avg_queries_quantum(eps, 0.5, 1) <= an.avg_queries_classical(eps, 1)

    def test_q4_values(self):
        assert an.avg_queries_quantum(0.5, 0.5, 4) == pytest.approx(1.984375, abs=1e-14)
        assert an.avg_queries_classical(0.5, 4) == pytest.approx(1.9921875, abs=1e-14)

    def test_reduces_to_half_ancilla_form(self):
        for eps in EPS_GRID[:-1]:
            for q in range(1, 9):
                half = 1 + (1 - eps ** (2 * q - 2)) / (2 * (1 - eps))
                assert abs(an.avg_queries_quantum(eps, 0.5, q) - half) < 1e-14

    def test_series_forms(self):
        for eps in EPS_GRID[:-1]:
            for q in range(1, 9):
                cl = (1 - eps) * sum(k * eps ** (k - 1) for k in range(1, 2 * q + 1)) + 2 * q * eps ** (2 * q)
                assert an.avg_queries_classical(eps, q) == pytest.approx(cl, abs=1e-12)

    def test_matches_branch_tree(self):
        for r in R_VALUES:
            for eps in EPS_GRID:
                for q in range(1, 9):
                    d = alg.run_fixed_point_exact(alg.SearchConfig(eps, q, r))
                    assert abs(an.avg_queries_quantum(eps, r, q) - d.expected_queries) < 1e-10
                c = alg.classical_distribution(eps, 2 * q)
                assert abs(an.avg_queries_classical(eps, q) - c.expected_queries) < 1e-10

    @pytest.mark.parametrize("q", [1, 4, 7])
    def test_limits_at_one(self, q):
        assert an.avg_queries_quantum(1.0, 0.5, q) == q
        assert an.avg_queries_classical(1.0, q) == 2 * q
        near = 1 - 1e-9
        assert an.avg_queries_quantum(near, 0.5, q) == pytest.approx(q, abs=1e-6)
        assert an.avg_queries_classical(near, q) == pytest.approx(2 * q, abs=1e-6)

    def test_factor_two_bound(self):
        for eps in EPS_GRID[1:-1]:
            for q in range(1, 9):
                assert 2 * an.avg_queries_quantum(eps, 0.5, q) > an.avg_queries_classical(eps, q)

    def test_limits(self):
        for eps in (0.3, 0.6, 0.9):
            quantum, classical = an.avg_queries_limits(eps, 1.0)
            assert quantum == pytest.approx(1 + 1 / (4 * (1 - eps)))
            assert classical == pytest.approx(1 / (1 - eps))
            assert an.avg_queries_quantum(eps, 1.0, 200) == pytest.approx(quantum, abs=1e-12)
        assert an.avg_queries_limits(0.25, 1.0) == (pytest.approx(4 / 3), pytest.approx(4 / 3))
        with pytest.raises(an.DivergentLimitError):
            an.avg_queries_limits(1.0, 0.5)


class TestPlanner:
    def test_reference_case(self):
        plan = an.plan_queries(0.5, 1e-4)
        assert (plan.q_an, plan.q_pi3, plan.q_cl) == (7, 13, 13)
        assert 0.5**15 <= 1e-4 < 0.5**13

    @pytest.mark.parametrize("eps", [0.1, 0.3, 0.5, 0.7, 0.9, 0.99])
    def test_exact_cube(self, eps):
        plan = an.plan_queries(eps, eps**3)
        assert (plan.q_an, plan.q_pi3, plan.q_cl) == (1, 1, 2)

    @given(st.floats(0.01, 0.99), st.floats(1e-12, 0.99))
    def test_minimal_and_valid(self, up, frac):
        th = up * frac
        assume(0.0 < th < up)
        plan = an.plan_queries(up, th)
        assert up ** (2 * plan.q_an + 1) <= th
        assert plan.q_an == 1 or up ** (2 * plan.q_an - 1) > th
        n = round(math.log(2 * plan.q_pi3 + 1, 3))
        assert (3**n - 1) // 2 == plan.q_pi3
        assert up ** (3**n) <= th
        assert n == 1 or up ** (3 ** (n - 1)) > th
        assert up ** (plan.q_cl + 1) <= th
        assert plan.q_cl == 1 or up**plan.q_cl > th

    def test_pi3_membership(self):
        allowed = {1, 4, 13, 40, 121, 364, 1093, 3280}
        for up in (0.3, 0.5, 0.9):
            for k in range(1, 40):
                assert an.plan_queries(up, up * 10.0**-k * 0.7).q_pi3 in allowed

    @pytest.mark.parametrize("up,th", [(0.5, 0.5), (0.5, 0.6), (1.0, 0.1), (0.5, 0.0)])
    def test_domain(self, up, th):
        with pytest.raises(ValueError):
            an.plan_queries(up, th)


class TestCrossover:
    def test_q2_bracket(self):
        x = an.crossover_epsilon_a(2)
        assert 0.43 < x < 0.45
        assert an.crossover_residual(0.43, 2) < 0 < an.crossover_residual(0.45, 2)

    def test_q4(self):
        assert 0.49 < an.crossover_epsilon_a(4) < 0.5

    @pytest.mark.parametrize("q", range(2, 9))
    def test_residual(self, q):
        x = an.crossover_epsilon_a(q)
        assert abs(2 * x + x ** (2 * q - 2) - 2 * x ** (2 * q) - 1) < 1e-12
        assert x < 0.5

    @pytest.mark.parametrize("q", range(2, 7))
    def test_is_break_even(self, q):
        x = an.crossover_epsilon_a(q)
        for e in (x - 1e-3, x + 1e-3):
            better = an.avg_queries_quantum(e, 0.5, q) < an.avg_queries_classical(e, q)
            assert better == (e > x)

    def test_q1_rejected(self):
        with pytest.raises(ValueError):
            an.crossover_epsilon_a(1)


class TestThresholds:
    def test_r_one(self):
        eps0, eps_rl = an.thresholds(1.0)
        assert eps0 == 0.5 and eps_rl == pytest.approx(1 / 3, abs=1e-15)

    def test_r_half(self):
        assert an.thresholds(0.5) == (None, None)
        assert an.thresholds(0.3) == (None, None)

    def test_r_three_quarters(self):
        eps0, eps_rl = an.thresholds(0.75)
        assert eps0 == pytest.approx(1 / 3, abs=1e-15) and eps_rl == pytest.approx(0.2, abs=1e-15)
        for q in (1, 2, 5):
            assert an.error_after(1 / 3, 0.75, q) == pytest.approx(0.0, abs=1e-30)

    @pytest.mark.parametrize("r", [0.55, 0.7, 0.9, 1.0])
    def test_eps_rl_contraction(self, r):
        _, eps_rl = an.thresholds(r)
        assert eps_rl <= 1 / 3 + 1e-15
        for e in (eps_rl + 0.01, eps_rl + 0.1):
            if e < 1:
                assert abs(1 - 2 * r * (1 - e)) < e


def test_pi3_query_sequence():
    assert an.pi3_query_sequence(4) == [1, 4, 13, 40]
    assert an.pi3_query_sequence(7)[-1] == 1093
    assert all(q == (3**n - 1) // 2 for n, q in enumerate(an.pi3_query_sequence(8), start=1))


def test_simple_scheme_error():
    assert an.simple_scheme_error(1 / 3, 1) == pytest.approx(1 / 27, abs=1e-15)
    for eps in EPS_GRID:
        theta = math.acos(math.sqrt(eps))
        for n in (1, 2, 3):
            trig = math.cos(theta) ** 2 * math.cos(2 * theta) ** (2 * n)
            assert an.simple_scheme_error(eps, n) == pytest.approx(trig, abs=1e-12)


def test_normalization():
    assert an.normalization_n(1.0) == 1.0
    assert an.normalization_n(0.0) == pytest.approx(math.sqrt(2))
    eps = 0.3
    theta = math.acos(math.sqrt(eps))
    assert an.normalization_n(eps) == pytest.approx((math.cos(theta) ** 2 + math.sin(theta) ** 2 / 2) ** -0.5)


@pytest.mark.parametrize("k", range(4, 11))
def test_scaling_law(k):
    f = 2.0**-k
    q = an.min_iterations_for_scale(f)
    assert (1 - f) ** (2 * q + 1) <= math.exp(-1) < (1 - f) ** (2 * q - 1)
    assert 0.4 <= q * f <= 0.6
