"""Closed forms, query planners and thresholds for fixed point search.

These are the reference values the simulators in :mod:`fpsearch.algorithms`
are checked against.  ``epsilon`` is always the initial error probability
and ``r`` the weight of ``|1>`` in the ancilla-1 preparation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import optimize


class DivergentLimitError(ArithmeticError):
    """An average query count that grows without bound (``epsilon = 1``)."""


def _contraction(epsilon: float, r: float) -> float:
    # component of the reflected non-target state along itself
    return 1.0 - 2.0 * r * (1.0 - epsilon)


def error_after(epsilon: float, r: float, q: int) -> float:
    """Error probability ``epsilon * (1 - 2r(1 - epsilon))**(2q)`` after ``q`` iterations."""
    return epsilon * _contraction(epsilon, r) ** (2 * q)


def deterministic_success(epsilon: float, q: int) -> float:
    """Probability of a certified exit from the loop within ``q`` iterations (r = 1/2)."""
    if q < 1:
        raise ValueError("q must be positive")
    return 1.0 - epsilon ** (2 * q - 2) * (1.0 + epsilon) / 2.0


def probabilistic_success(epsilon: float, q: int) -> float:
    """Probability that the final register measurement finds a target (r = 1/2)."""
    if q < 1:
        raise ValueError("q must be positive")
    return 0.5 * epsilon ** (2 * q - 2) * (1.0 + epsilon - 2.0 * epsilon**3)


def avg_queries_quantum(epsilon: float, r: float = 0.5, q: int = 1) -> float:
    """Average oracle queries of the two-ancilla search with ``q`` iterations.

    At ``epsilon = 1`` no run ever exits early and the limit ``q`` is
    returned directly.
    """
    if q < 1:
        raise ValueError("q must be positive")
    if epsilon == 1.0:
        return float(q)
    c = _contraction(epsilon, r)
    return 1.0 + (1.0 - c ** (2 * q - 2)) / (4.0 * r * (1.0 - epsilon))


def avg_queries_classical(epsilon: float, q: int) -> float:
    """Average queries of pick-and-test with ``2q`` iterations; ``2q`` at ``epsilon = 1``."""
    if q < 1:
        raise ValueError("q must be positive")
    if epsilon == 1.0:
        return float(2 * q)
    return (1.0 - epsilon ** (2 * q)) / (1.0 - epsilon)


def avg_queries_limits(epsilon: float, r: float = 0.5) -> tuple[float, float]:
    """``q -> infinity`` averages ``(quantum, classical)``."""
    if epsilon >= 1.0:
        raise DivergentLimitError("average query count diverges at epsilon = 1")
    return 1.0 + 1.0 / (4.0 * r * (1.0 - epsilon)), 1.0 / (1.0 - epsilon)


# -- planning ----------------------------------------------------------------

@dataclass(frozen=True)
class PlanResult:
    q_an: int
    q_pi3: int
    q_cl: int
    eps_up: float
    eps_th: float


def _smallest(start: int, ok, floor: int = 1) -> int:
    """Smallest integer ``k >= floor`` with ``ok(k)``, searching from ``start``."""
    k = max(start, floor)
    while not ok(k):
        k += 1
    while k > floor and ok(k - 1):
        k -= 1
    return k


def plan_queries(eps_up: float, eps_th: float) -> PlanResult:
    """Iteration counts guaranteeing error ``<= eps_th`` whenever ``epsilon <= eps_up``.

    The ceiling formulas give the starting point; the answer is then fixed by
    the defining power inequalities, which is robust when the log ratio is an
    integer up to rounding.
    """
    if not 0.0 < eps_th < eps_up < 1.0:
        raise ValueError("need 0 < eps_th < eps_up < 1")
    ratio = math.log(eps_th) / math.log(eps_up)

    q_an = _smallest(
        math.ceil(0.5 * math.ceil(ratio - 1.0)),
        lambda q: eps_up ** (2 * q + 1) <= eps_th,
    )
    level = _smallest(
        math.ceil(math.log(ratio, 3)),
        lambda n: eps_up ** (3**n) <= eps_th,
    )
    q_cl = _smallest(
        math.ceil(ratio - 1.0),
        lambda q: eps_up ** (q + 1) <= eps_th,
    )
    return PlanResult(q_an, (3**level - 1) // 2, q_cl, eps_up, eps_th)


def crossover_residual(x: float, q: int) -> float:
    return 2.0 * x + x ** (2 * q - 2) - 2.0 * x ** (2 * q) - 1.0


def crossover_epsilon_a(q: int) -> float:
    """Error probability below which pick-and-test needs fewer queries on average.

    Root of ``2x + x**(2q-2) - 2x**(2q) = 1`` on ``(0, 1/2)``, found by
    bisection.  Only defined for ``q >= 2``.
    """
    if q < 2:
        raise ValueError("crossover is only defined for q >= 2")
    root = optimize.bisect(crossover_residual, 0.0, 0.5, args=(q,), xtol=1e-16, rtol=4 * 2.0**-52)
    if abs(crossover_residual(root, q)) >= 1e-12 or not root < 0.5:
        raise ArithmeticError(f"bisection did not converge for q={q}")
    return root


def thresholds(r: float):
    """``(eps0, eps_rl)`` for ``r > 1/2``, ``(None, None)`` otherwise.

    ``eps0`` is where a single iteration succeeds with certainty and
    ``eps_rl`` the error above which the per-iteration contraction beats
    ``epsilon`` itself.
    """
    if not 0.0 < r <= 1.0:
        raise ValueError("r must lie in (0, 1]")
    if r <= 0.5:
        return None, None
    return 1.0 - 1.0 / (2.0 * r), (2.0 * r - 1.0) / (2.0 * r + 1.0)


def pi3_query_sequence(n: int) -> list[int]:
    """Query counts ``q_i = 3 q_{i-1} + 1`` of the first ``n`` Phase-pi/3 levels."""
    if n < 1:
        raise ValueError("n must be positive")
    seq = [1]
    while len(seq) < n:
        seq.append(3 * seq[-1] + 1)
    return seq


def simple_scheme_error(epsilon: float, n: int) -> float:
    """``cos^2(theta) cos^(2n)(2 theta)`` with ``epsilon = cos^2(theta)``."""
    if n < 1:
        raise ValueError("n must be positive")
    # cos(2 theta) = 2 cos^2(theta) - 1
    return epsilon * (2.0 * epsilon - 1.0) ** (2 * n)


def normalization_n(epsilon: float) -> float:
    return math.sqrt(2.0 / (1.0 + epsilon))


@dataclass(frozen=True)
class AnalyticReport:
    error_q: float
    p1: float
    p_prob_success: float
    avg_q_quantum: float
    avg_q_classical: float
    limit_quantum: float
    limit_classical: float


def analytic_report(epsilon: float, r: float = 0.5, q: int = 1) -> AnalyticReport:
    """All closed-form quantities for one ``(epsilon, r, q)``.

    The success split is the general-``r`` form; it reduces to the
    ``r = 1/2`` expressions of :func:`deterministic_success` and
    :func:`probabilistic_success`.  Limits are ``inf`` at ``epsilon = 1``.
    """
    x = r * (1.0 - epsilon)
    c2 = _contraction(epsilon, r) ** 2
    survive = (1.0 - x) * c2 ** (q - 1)
    error = error_after(epsilon, r, q)
    try:
        lim_q, lim_c = avg_queries_limits(epsilon, r)
    except DivergentLimitError:
        lim_q = lim_c = math.inf
    return AnalyticReport(
        error_q=error,
        p1=1.0 - survive,
        p_prob_success=survive - error,
        avg_q_quantum=avg_queries_quantum(epsilon, r, q),
        avg_q_classical=avg_queries_classical(epsilon, q),
        limit_quantum=lim_q,
        limit_classical=lim_c,
    )


def min_iterations_for_scale(f: float, target: float = math.exp(-1.0)) -> int:
    """Smallest ``q`` with ``(1 - f)**(2q + 1) <= target``."""
    if not 0.0 < f < 1.0:
        raise ValueError("f must lie in (0, 1)")
    start = math.ceil((math.log(target) / math.log1p(-f) - 1.0) / 2.0)
    return _smallest(start, lambda q: (1.0 - f) ** (2 * q + 1) <= target, floor=0)
