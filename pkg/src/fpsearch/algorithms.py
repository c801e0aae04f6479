"""Search algorithms in exact (branch tree) and sampled form.

The two-ancilla fixed point search, its avoided-target and deferred
measurement variants, the single-ancilla simple scheme, the recursive
Phase-pi/3 search and the classical pick-and-test baseline.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import mpmath
import numpy as np

from . import statespace as ss

MAX_DEFERRED_Q = 12
MAX_PI3_LEVELS = 8


class Variant(str, enum.Enum):
    STANDARD = "standard"
    AVOIDED_TARGET = "avoided_target"
    DEFERRED_MEASUREMENT = "deferred_measurement"


@dataclass(frozen=True)
class SearchConfig:
    epsilon: float
    q: int
    r: float = 0.5
    variant: Variant = Variant.STANDARD
    seed: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon!r}")
        if not 0.0 < self.r <= 1.0:
            raise ValueError(f"r must lie in (0, 1], got {self.r!r}")
        if isinstance(self.q, bool) or int(self.q) != self.q or self.q < 1:
            raise ValueError(f"q must be a positive integer, got {self.q!r}")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        object.__setattr__(self, "variant", Variant(self.variant))

    @property
    def avoided(self) -> bool:
        return self.variant is Variant.AVOIDED_TARGET


@dataclass(frozen=True)
class OutcomeDistribution:
    """Exact outcome probabilities of one search run.

    ``exit_success[k]`` is the probability of leaving the loop after iteration
    ``k + 1`` with a certified result.  ``final_success`` and
    ``final_failure`` split the probability of reaching the final register
    measurement by its outcome.
    """

    exit_success: tuple[float, ...]
    final_success: float
    final_failure: float
    expected_queries: float

    @property
    def deterministic_success(self) -> float:
        return math.fsum(self.exit_success)

    @property
    def total_success(self) -> float:
        return self.deterministic_success + self.final_success

    @property
    def total(self) -> float:
        return math.fsum((*self.exit_success, self.final_success, self.final_failure))

    @classmethod
    def from_branches(cls, exits, final_success, final_failure) -> "OutcomeDistribution":
        exits = tuple(float(p) for p in exits)
        q = len(exits)
        queries = math.fsum(k * p for k, p in enumerate(exits, start=1))
        queries += q * (final_success + final_failure)
        return cls(exits, float(final_success), float(final_failure), queries)


@dataclass(frozen=True)
class RunRecord:
    success: bool
    queries_used: int
    exit_iteration: int | None = None


# -- two-ancilla fixed point search -----------------------------------------

@dataclass
class _Chain:
    """The outcome-0 trajectory of the loop.

    Every outcome-1 branch exits, so the surviving state after each iteration
    is deterministic.  ``p_one[k]`` is the conditional exit probability at
    iteration ``k + 1`` given the loop was still running, ``p_fail`` the
    conditional failure probability of the final register measurement.
    """

    p_one: list[float] = field(default_factory=list)
    p_fail: float = 0.0


def _trace_chain(cfg: SearchConfig) -> _Chain:
    angles = ss.ProblemAngles.from_epsilon(cfg.epsilon, cfg.r)
    state = ss.prepare_initial(cfg.epsilon, cfg.r)
    chain = _Chain()
    for _ in range(cfg.q):
        state = ss.oracle_query(state, avoided=cfg.avoided)
        p_one, state_zero, _ = ss.measure_ancilla2(state)
        chain.p_one.append(p_one)
        if state_zero is None:
            chain.p_one.extend([0.0] * (cfg.q - len(chain.p_one)))
            return chain
        state = ss.joint_diffusion(state_zero, angles)
    p_t, p_perp = ss.register_probabilities(state)
    chain.p_fail = (p_t if cfg.avoided else p_perp) / (p_t + p_perp)
    return chain


def run_fixed_point_exact(cfg: SearchConfig) -> OutcomeDistribution:
    """Evaluate the whole measurement branch tree of the two-ancilla search."""
    if cfg.variant is Variant.DEFERRED_MEASUREMENT:
        return run_deferred_measurement(cfg)
    chain = _trace_chain(cfg)
    reach = 1.0
    exits = []
    for p_one in chain.p_one:
        exits.append(reach * p_one)
        reach *= 1.0 - p_one
    return OutcomeDistribution.from_branches(
        exits, reach * (1.0 - chain.p_fail), reach * chain.p_fail
    )


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial])


def _sample_trials(p_one, p_fail, seed: int, start: int, stop: int) -> list[RunRecord]:
    q = len(p_one)
    records = []
    for trial in range(start, stop):
        u = _trial_rng(seed, trial).random(q + 1)
        for k in range(q):
            if u[k] < p_one[k]:
                records.append(RunRecord(True, k + 1, k + 1))
                break
        else:
            records.append(RunRecord(bool(u[q] >= p_fail), q, None))
    return records


def sample_chain(p_one, p_fail, seed: int, trials: int, workers: int = 1) -> list[RunRecord]:
    """Sample ``trials`` trajectories through a loop with the given exit chain.

    Trial ``t`` draws from a generator seeded by ``(seed, t)`` only, so the
    output does not depend on ``workers``.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if seed is None:
        raise ValueError("sampled runs need an explicit seed")
    p_one = [float(p) for p in p_one]
    if workers <= 1 or trials < 2 * workers:
        return _sample_trials(p_one, p_fail, seed, 0, trials)
    bounds = np.linspace(0, trials, workers + 1).astype(int)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(
            lambda ab: _sample_trials(p_one, p_fail, seed, int(ab[0]), int(ab[1])),
            zip(bounds[:-1], bounds[1:]),
        )
        return [rec for part in parts for rec in part]


def run_fixed_point_sampled(cfg: SearchConfig, trials: int, workers: int = 1) -> list[RunRecord]:
    """Sample the measurement outcomes of independent runs.

    The post-measurement states along the continuing branch are produced by
    the same gate sequence as the exact evaluator; each trial then draws one
    uniform number per measurement it performs.
    """
    if cfg.variant is Variant.DEFERRED_MEASUREMENT:
        raise ValueError("sampled mode runs the sequential-measurement circuit")
    chain = _trace_chain(cfg)
    return sample_chain(chain.p_one, chain.p_fail, cfg.seed, trials, workers)


def run_deferred_measurement(cfg: SearchConfig) -> OutcomeDistribution:
    """Fully unitary version with one fresh ancilla-2 per iteration.

    Oracle and diffusion of iteration ``k`` only act where the ancilla-2
    qubits of iterations ``1..k-1`` (oracle) or ``1..k`` (diffusion) read 0.
    All qubits are measured once at the end.
    """
    q = cfg.q
    if q > MAX_DEFERRED_Q:
        raise ValueError(f"deferred measurement is limited to q <= {MAX_DEFERRED_Q}")
    avoided = cfg.variant is Variant.AVOIDED_TARGET
    v = ss.prepared_vector(cfg.epsilon, cfg.r)
    # axes: ancilla-1, register, then ancilla-2 of iterations 1..q
    psi = np.zeros((4,) + (2,) * q, dtype=complex)
    psi[(slice(None),) + (0,) * q] = v
    psi = psi.reshape((2, 2) + (2,) * q)
    marked = ss.T_PERP if avoided else ss.T
    for k in range(q):
        idle = (0,) * k
        lo = (1, marked) + idle + (0,)
        hi = (1, marked) + idle + (1,)
        psi[lo], psi[hi] = psi[hi].copy(), psi[lo].copy()
        sub = (slice(None), slice(None)) + idle + (0,)
        block = psi[sub].reshape(4, -1)
        psi[sub] = ss.reflect_about(v, block).reshape(psi[sub].shape)
    prob = np.abs(psi) ** 2
    exits = []
    for k in range(q):
        exits.append(prob[(slice(None), slice(None)) + (0,) * k + (1,)].sum())
    tail = prob[(slice(None), slice(None)) + (0,) * q].sum(axis=0)
    p_t, p_perp = float(tail[ss.T]), float(tail[ss.T_PERP])
    fail, succ = (p_t, p_perp) if avoided else (p_perp, p_t)
    return OutcomeDistribution.from_branches(exits, succ, fail)


# -- single-ancilla simple scheme -------------------------------------------

def run_simple_scheme(epsilon: float, n: int):
    """Single ancilla, unconditioned oracle, diffusion ``U I_s U^dagger``.

    Simulated on the 4-dimensional (register, ancilla) space.  Returns
    ``(error_probability, exit_profile)`` where ``exit_profile[k]`` is the
    probability of a certified exit at iteration ``k + 1``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    theta = math.acos(math.sqrt(epsilon))
    u_s = ss.register_u(theta)[:, 0]
    # axes: register, ancilla
    psi = np.zeros((2, 2), dtype=complex)
    psi[:, 0] = u_s
    reach = 1.0
    exits = []
    for _ in range(n):
        psi[ss.T] = psi[ss.T, ::-1].copy()
        p_one = float(np.sum(np.abs(psi[:, 1]) ** 2))
        exits.append(reach * p_one)
        reach *= 1.0 - p_one
        if 1.0 - p_one < ss.ZERO_BRANCH:
            exits.extend([0.0] * (n - len(exits)))
            reach = 0.0
            break
        psi[:, 1] = 0.0
        psi /= math.sqrt(1.0 - p_one)
        psi = ss.reflect_about(u_s, psi)
    p_perp = float(np.sum(np.abs(psi[ss.T_PERP]) ** 2))
    return reach * p_perp, exits


# -- Phase-pi/3 search -------------------------------------------------------

def phase_pi3_operator(epsilon: float, levels: int, t_sign: int = 1, s_sign: int = 1) -> np.ndarray:
    """``W_{k+1} = W_k R_s W_k^dagger R_t W_k`` starting from ``W_0 = U``."""
    w = ss.register_u(math.acos(math.sqrt(epsilon)))
    r_t = ss.register_phase_t(t_sign * math.pi / 3)
    r_s = ss.register_phase_source(s_sign * math.pi / 3)
    for _ in range(levels):
        w = w @ r_s @ w.conj().T @ r_t @ w
    return w


def _pi3_digits(epsilon: float, levels: int) -> int:
    # The |t_perp> amplitude is ~epsilon**(3**levels / 2) and emerges from
    # cancellation between O(1) entries, so the working precision has to
    # cover its magnitude.  Below double range the float result is 0 anyway.
    if epsilon <= 0.0:
        return 30
    decades = min(-math.log10(epsilon) * 3**levels / 2, 330.0)
    return 30 + int(math.ceil(decades))


def run_phase_pi3(epsilon: float, levels: int, t_sign: int = 1, s_sign: int = 1):
    """Error probability and query count of ``levels`` recursion levels.

    ``t_sign`` / ``s_sign`` of -1 replace the corresponding pi/3 shift by
    -pi/3; flipping exactly one of them moves the fixed point to
    ``epsilon = 1``.  Returns ``(1 - |<t|W|s>|^2, (3**levels - 1) // 2)``.

    The recursion is carried out in multiprecision arithmetic so that the
    error keeps its relative accuracy when it is many orders of magnitude
    below 1.
    """
    if levels < 0 or levels > MAX_PI3_LEVELS:
        raise ValueError(f"levels must lie in 0..{MAX_PI3_LEVELS}")
    if t_sign not in (1, -1) or s_sign not in (1, -1):
        raise ValueError("phase signs must be +1 or -1")
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon!r}")
    if levels == 0:
        return epsilon, 0
    with mpmath.workdps(_pi3_digits(epsilon, levels)):
        eps = mpmath.mpf(epsilon)
        sin_t, cos_t = mpmath.sqrt(1 - eps), mpmath.sqrt(eps)
        w = mpmath.matrix([[sin_t, cos_t], [cos_t, -sin_t]])
        r_t = mpmath.diag([mpmath.expjpi(mpmath.mpf(t_sign) / 3), 1])
        r_s = mpmath.diag([mpmath.expjpi(mpmath.mpf(s_sign) / 3), 1])
        for _ in range(levels):
            w = w * r_s * w.transpose_conj() * r_t * w
        # |<t_perp|W|s>|^2 rather than 1 - |<t|W|s>|^2: same value, no cancellation
        error = float(abs(w[ss.T_PERP, 0]) ** 2)
    return error, (3**levels - 1) // 2


def general_phase_scale_check(theta_phase: float, phi_phase: float, epsilon: float):
    """Compare the simulated ``|t_perp>`` scale factor with its closed form.

    Applies ``U R_s^theta U^dagger R_t^phi U`` to ``|s>`` and divides the
    resulting ``|t_perp>`` amplitude by the initial one, ``sqrt(epsilon)``.
    """
    if epsilon <= 0.0:
        raise ValueError("scale factor ratio is undefined for epsilon = 0")
    u = ss.register_u(math.acos(math.sqrt(epsilon)))
    w = ss.register_phase_s(math.acos(math.sqrt(epsilon)), theta_phase) @ ss.register_phase_t(phi_phase) @ u
    simulated = abs(w[ss.T_PERP, 0]) / math.sqrt(epsilon)
    formula = abs(
        np.exp(0.5j * (theta_phase - phi_phase))
        - 4.0 * math.sin(theta_phase / 2) * math.sin(phi_phase / 2) * (1.0 - epsilon)
    )
    return float(simulated), float(formula)


# -- classical pick-and-test -------------------------------------------------

def classical_distribution(epsilon: float, max_iters: int) -> OutcomeDistribution:
    """Test up to ``max_iters`` random items; the final untested pick is free."""
    if max_iters < 1:
        raise ValueError("max_iters must be positive")
    exits = [(1.0 - epsilon) * epsilon ** (k - 1) for k in range(1, max_iters + 1)]
    reach = epsilon**max_iters
    return OutcomeDistribution.from_branches(exits, reach * (1.0 - epsilon), reach * epsilon)


def run_classical(epsilon: float, max_iters: int, mode: str = "exact", seed: int | None = None, trials: int = 1):
    """Classical baseline, exact (``OutcomeDistribution``) or sampled (records)."""
    dist = classical_distribution(epsilon, max_iters)
    if mode == "exact":
        return dist
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    return sample_chain([1.0 - epsilon] * max_iters, epsilon, seed, trials)
