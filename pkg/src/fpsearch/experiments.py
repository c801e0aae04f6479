"""Figure data, sweeps, Monte Carlo summaries and the verification matrix."""
from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from . import algorithms as alg
from . import analytics as an
from . import database as db

CLOSED_FORM = "closed-form"
EXACT_SIM = "exact-sim"
SAMPLED = "sampled"

MISMATCH_TOL = 1e-10


class VerificationError(RuntimeError):
    """A closed form and its simulated counterpart disagree."""


@dataclass(frozen=True)
class SweepTable:
    columns: tuple[str, ...]
    rows: np.ndarray
    provenance: dict[str, str]

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]

    def to_csv(self) -> str:
        """CSV text, 12 significant digits, ``\\n`` line endings."""
        buf = io.StringIO()
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(format_number(x) for x in row) + "\n")
        return buf.getvalue()

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(self.to_csv())


def format_number(x: float) -> str:
    s = f"{float(x):.12g}"
    return "0" if s == "-0" else s


def epsilon_grid(step: float) -> np.ndarray:
    """Uniform grid on ``[0, 1]`` including both endpoints."""
    if not 0.0 < step <= 0.1:
        raise ValueError("grid step must lie in (0, 0.1]")
    n = round(1.0 / step)
    if abs(n * step - 1.0) < 1e-9:
        return np.arange(n + 1) / n
    grid = np.arange(math.floor(1.0 / step) + 1) * step
    return grid if grid[-1] == 1.0 else np.append(grid, 1.0)


def _check(name: str, closed: np.ndarray, simulated: np.ndarray) -> None:
    worst = float(np.max(np.abs(closed - simulated)))
    if worst > MISMATCH_TOL:
        raise VerificationError(f"{name}: closed form and simulation differ by {worst:.3e}")


def figure1_row(epsilon: float) -> dict[str, float]:
    """Error after one oracle query, closed form and simulated, at one ``epsilon``."""
    return {
        "simple_scheme": an.simple_scheme_error(epsilon, 1),
        "simple_scheme_sim": alg.run_simple_scheme(epsilon, 1)[0],
        "phase_pi3": epsilon**3,
        "phase_pi3_sim": alg.run_phase_pi3(epsilon, 1)[0],
    }


def figure4_row(epsilon: float, q: int = 4) -> dict[str, float]:
    """Average oracle queries at ``q`` iterations, closed form and simulated.

    Phase-pi/3 always runs all its iterations, so its value is ``q``;
    pick-and-test is given ``2q`` iterations.
    """
    cfg = alg.SearchConfig(float(epsilon), q)
    return {
        "fixed_point": an.avg_queries_quantum(epsilon, 0.5, q),
        "fixed_point_sim": alg.run_fixed_point_exact(cfg).expected_queries,
        "phase_pi3": float(q),
        "classical": an.avg_queries_classical(epsilon, q),
        "classical_sim": alg.classical_distribution(epsilon, 2 * q).expected_queries,
    }


def _sweep(eps, rows, pairs, include_simulation) -> SweepTable:
    names = list(rows[0])
    data = {name: np.array([row[name] for row in rows]) for name in names}
    for closed, simulated in pairs:
        _check(closed, data[closed], data[simulated])
    keep = [n for n in names if include_simulation or not n.endswith("_sim")]
    prov = {n: EXACT_SIM if n.endswith("_sim") else CLOSED_FORM for n in keep}
    return SweepTable(("epsilon", *keep), np.column_stack([eps] + [data[n] for n in keep]), prov)


def figure1_data(grid_step: float = 0.01, include_simulation: bool = False) -> SweepTable:
    """Error after one oracle query: simple scheme vs Phase-pi/3.

    Every closed-form value is recomputed by exact simulation and a
    disagreement above ``MISMATCH_TOL`` raises :class:`VerificationError`.
    The simulated columns carry roundoff noise, so they are only part of the
    table on request.
    """
    eps = epsilon_grid(grid_step)
    rows = [figure1_row(float(e)) for e in eps]
    pairs = [("simple_scheme", "simple_scheme_sim"), ("phase_pi3", "phase_pi3_sim")]
    return _sweep(eps, rows, pairs, include_simulation)


def figure4_data(grid_step: float = 0.01, q: int = 4, include_simulation: bool = False) -> SweepTable:
    """Average oracle queries of the three searches, checked like :func:`figure1_data`."""
    if q < 2:
        raise ValueError("q must be at least 2")
    eps = epsilon_grid(grid_step)
    rows = [figure4_row(float(e), q) for e in eps]
    pairs = [("fixed_point", "fixed_point_sim"), ("classical", "classical_sim")]
    return _sweep(eps, rows, pairs, include_simulation)


@dataclass(frozen=True)
class MonteCarloSummary:
    mean_queries: float
    queries_stderr: float
    success_rate: float
    success_stderr: float
    trials: int


def monte_carlo_summary(cfg: alg.SearchConfig, trials: int, workers: int = 1) -> MonteCarloSummary:
    if trials < 100:
        raise ValueError("need at least 100 trials")
    records = alg.run_fixed_point_sampled(cfg, trials, workers=workers)
    queries = np.array([rec.queries_used for rec in records], dtype=float)
    success = np.array([rec.success for rec in records], dtype=float)
    root = math.sqrt(trials)
    return MonteCarloSummary(
        float(queries.mean()),
        float(queries.std(ddof=1) / root),
        float(success.mean()),
        float(success.std(ddof=1) / root),
        trials,
    )


def scaling_scan(f_values) -> list[tuple[float, int, float]]:
    """``(f, q, q*f)`` with ``q`` the fewest iterations reaching error ``1/e``."""
    out = []
    for f in f_values:
        if not 0.0 < f <= 0.1:
            raise ValueError(f"f values must lie in (0, 0.1], got {f}")
        q = an.min_iterations_for_scale(f)
        out.append((f, q, q * f))
    return out


# -- verification matrix -----------------------------------------------------

VERIFY_EPS = tuple(np.round(np.arange(21) * 0.05, 2))
VERIFY_R = (0.25, 0.5, 0.75, 1.0)
VERIFY_Q = tuple(range(1, 9))


def verification_matrix() -> dict[str, float]:
    """Largest closed-form vs simulation discrepancy for each checked quantity."""
    res = dict.fromkeys(
        ("error_after", "deterministic_success", "probabilistic_success", "avg_queries_quantum",
         "avg_queries_classical", "avoided_target", "simple_scheme", "phase_pi3", "phase_scale",
         "deferred_measurement", "database"), 0.0)

    def track(key, a, b):
        res[key] = max(res[key], abs(a - b))

    for e in VERIFY_EPS:
        e = float(e)
        for q in VERIFY_Q:
            for r in VERIFY_R:
                d = alg.run_fixed_point_exact(alg.SearchConfig(e, q, r))
                track("error_after", d.final_failure, an.error_after(e, r, q))
                track("avg_queries_quantum", d.expected_queries, an.avg_queries_quantum(e, r, q))
            d = alg.run_fixed_point_exact(alg.SearchConfig(e, q))
            track("deterministic_success", d.deterministic_success, an.deterministic_success(e, q))
            track("probabilistic_success", d.final_success, an.probabilistic_success(e, q))
            c = alg.classical_distribution(e, 2 * q)
            track("avg_queries_classical", c.expected_queries, an.avg_queries_classical(e, q))
            a = alg.run_fixed_point_exact(alg.SearchConfig(e, q, variant=alg.Variant.AVOIDED_TARGET))
            track("avoided_target", a.final_failure, (1.0 - e) ** (2 * q + 1))
            track("simple_scheme", alg.run_simple_scheme(e, q)[0], an.simple_scheme_error(e, q))
            if q <= 6:
                dd = alg.run_deferred_measurement(alg.SearchConfig(e, q))
                worst = max(abs(x - y) for x, y in zip(
                    (*dd.exit_success, dd.final_success, dd.final_failure),
                    (*d.exit_success, d.final_success, d.final_failure)))
                res["deferred_measurement"] = max(res["deferred_measurement"], worst)
        for n in range(1, 5):
            track("phase_pi3", alg.run_phase_pi3(e, n)[0], e ** (3**n))
        if e > 0.0:
            for tp in (math.pi / 6, math.pi / 3, math.pi / 2, math.pi):
                for pp in (math.pi / 6, math.pi / 3, math.pi / 2, math.pi):
                    track("phase_scale", *alg.general_phase_scale_check(tp, pp, e))
    for n in (4, 8, 16):
        for m in range(n + 1):
            spec = db.DatabaseSpec(n, tuple(range(m)))
            full = db.run_fixed_point_full(spec, 3)
            red = alg.run_fixed_point_exact(alg.SearchConfig(spec.epsilon, 3))
            for x, y in zip((*full.exit_success, full.final_failure), (*red.exit_success, red.final_failure)):
                track("database", x, y)
    return res
