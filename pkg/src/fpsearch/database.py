"""Full-dimensional simulation over an explicit N-item database.

The register holds ``N`` item states prepared in uniform superposition.  A
full state is a length ``4N`` complex array indexed by
``a1*2N + item*2 + a2``, the same ordering the reduced model uses with the
register index replaced by the item index.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algorithms
from . import statespace as ss

MAX_EXACT_ITEMS = 2**14
SUBSPACE_TOL = 1e-10


class SubspaceError(RuntimeError):
    """A full state left the span of the marked/unmarked superpositions."""


@dataclass(frozen=True)
class DatabaseSpec:
    n_items: int
    marked: tuple[int, ...]

    def __post_init__(self):
        n = self.n_items
        if n < 1 or n & (n - 1):
            raise ValueError(f"n_items must be a power of two, got {n}")
        marked = tuple(sorted(int(i) for i in self.marked))
        if len(set(marked)) != len(marked):
            raise ValueError("marked indices must be unique")
        if marked and not (0 <= marked[0] and marked[-1] < n):
            raise ValueError("marked indices must lie in [0, n_items)")
        object.__setattr__(self, "marked", marked)

    @classmethod
    def random(cls, n_items: int, n_marked: int, seed: int) -> "DatabaseSpec":
        if not 0 <= n_marked <= n_items:
            raise ValueError("need 0 <= n_marked <= n_items")
        rng = np.random.default_rng(seed)
        return cls(n_items, tuple(rng.choice(n_items, size=n_marked, replace=False)))

    @property
    def n_marked(self) -> int:
        return len(self.marked)

    @property
    def epsilon(self) -> float:
        return 1.0 - self.n_marked / self.n_items

    def mask(self) -> np.ndarray:
        m = np.zeros(self.n_items, dtype=bool)
        m[list(self.marked)] = True
        return m


def _prepared(spec: DatabaseSpec, r: float) -> np.ndarray:
    uniform = np.full(spec.n_items, 1.0 / math.sqrt(spec.n_items))
    return np.kron([math.sqrt(1.0 - r), math.sqrt(r)], uniform).astype(complex)


def full_initial(spec: DatabaseSpec, r: float = 0.5) -> np.ndarray:
    psi = np.zeros((2 * spec.n_items, 2), dtype=complex)
    psi[:, 0] = _prepared(spec, r)
    return psi.reshape(-1)


def full_oracle(state: np.ndarray, spec: DatabaseSpec) -> np.ndarray:
    """Flip ancilla-2 on ancilla-1 = 1 and a marked item."""
    psi = np.array(state, dtype=complex).reshape(2, spec.n_items, 2)
    m = spec.mask()
    psi[1, m] = psi[1, m][:, ::-1]
    return psi.reshape(-1)


def full_diffusion(state: np.ndarray, spec: DatabaseSpec, r: float = 0.5) -> np.ndarray:
    v = _prepared(spec, r)
    return ss.reflect_about(v, np.asarray(state).reshape(len(v), 2)).reshape(-1)


def full_measure_ancilla2(state: np.ndarray):
    """Same contract as :func:`fpsearch.statespace.measure_ancilla2`."""
    psi = np.asarray(state, dtype=complex).reshape(-1, 2)
    p = np.sum(np.abs(psi) ** 2, axis=0)
    total = p.sum()
    branches = []
    for a2 in (0, 1):
        if p[a2] / total < ss.ZERO_BRANCH:
            branches.append(None)
            continue
        out = np.zeros_like(psi)
        out[:, a2] = psi[:, a2] / math.sqrt(p[a2])
        branches.append(out.reshape(-1))
    return float(p[1] / total), branches[0], branches[1]


def full_register_probabilities(state: np.ndarray, spec: DatabaseSpec) -> tuple[float, float]:
    """Probabilities that the item register reads a marked / unmarked item."""
    w = np.sum(np.abs(np.asarray(state).reshape(2, spec.n_items, 2)) ** 2, axis=(0, 2))
    m = spec.mask()
    return float(w[m].sum()), float(w[~m].sum())


def reduce_state(full: np.ndarray, spec: DatabaseSpec):
    """Project onto the uniform-marked / uniform-unmarked subspace.

    Returns ``(joint_state, residual)`` where ``residual`` is the norm of the
    part of ``full`` outside the subspace.  Raises :class:`SubspaceError` if
    the residual reaches ``SUBSPACE_TOL``.
    """
    psi = np.asarray(full, dtype=complex).reshape(2, spec.n_items, 2)
    m = spec.mask()
    reduced = np.zeros((2, 2, 2), dtype=complex)
    rebuilt = np.zeros_like(psi)
    for reg, sel in ((ss.T, m), (ss.T_PERP, ~m)):
        count = int(sel.sum())
        if count == 0:
            continue
        # <uniform over sel| psi>
        reduced[:, reg, :] = psi[:, sel, :].sum(axis=1) / math.sqrt(count)
        rebuilt[:, sel, :] = reduced[:, reg, None, :] / math.sqrt(count)
    residual = float(np.linalg.norm(psi - rebuilt))
    if residual >= SUBSPACE_TOL:
        raise SubspaceError(f"state leaves the invariant subspace (residual {residual:.3e})")
    return reduced.reshape(8), residual


def _trace_full(spec: DatabaseSpec, q: int, r: float):
    state = full_initial(spec, r)
    p_one = []
    for _ in range(q):
        state = full_oracle(state, spec)
        p, state_zero, _ = full_measure_ancilla2(state)
        p_one.append(p)
        if state_zero is None:
            return p_one + [0.0] * (q - len(p_one)), 0.0
        state = full_diffusion(state_zero, spec, r)
    p_t, p_perp = full_register_probabilities(state, spec)
    return p_one, p_perp / (p_t + p_perp)


def run_fixed_point_full(spec: DatabaseSpec, q: int, r: float = 0.5, mode: str = "exact",
                         seed: int | None = None, trials: int = 1):
    """Two-ancilla search over the explicit database.

    ``mode="exact"`` returns an :class:`~fpsearch.algorithms.OutcomeDistribution`
    with item outcomes aggregated into marked (success) and unmarked
    (failure); ``mode="sampled"`` returns a list of run records.
    """
    if spec.n_items > MAX_EXACT_ITEMS:
        raise ValueError(f"database simulation is limited to N <= {MAX_EXACT_ITEMS}")
    if q < 1:
        raise ValueError("q must be positive")
    if not 0.0 < r <= 1.0:
        raise ValueError("r must lie in (0, 1]")
    p_one, p_fail = _trace_full(spec, q, r)
    if mode == "sampled":
        return algorithms.sample_chain(p_one, p_fail, seed, trials)
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    reach, exits = 1.0, []
    for p in p_one:
        exits.append(reach * p)
        reach *= 1.0 - p
    return algorithms.OutcomeDistribution.from_branches(exits, reach * (1.0 - p_fail), reach * p_fail)
