"""Statevector primitives for the joint (ancilla-1, register, ancilla-2) space.

The register is modelled by its two-dimensional invariant subspace spanned by
the target state ``|t>`` and the non-target state ``|t_perp>``.  A joint state
is a length-8 complex array indexed by ``a1*4 + reg*2 + a2`` with ``reg = 0``
for ``|t>`` and ``reg = 1`` for ``|t_perp>``.

Register operators are 2x2 complex arrays in the ``{t, t_perp}`` basis.  The
source state ``|s>`` is represented by the first basis column, so that
``register_u(theta) @ [1, 0] = sin(theta)|t> + cos(theta)|t_perp>``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

T, T_PERP = 0, 1

# Branches lighter than this are reported as absent instead of renormalized.
ZERO_BRANCH = 1e-15


def basis_index(a1: int, reg: int, a2: int) -> int:
    return a1 * 4 + reg * 2 + a2


def basis_state(a1: int, reg: int, a2: int) -> np.ndarray:
    psi = np.zeros(8, dtype=complex)
    psi[basis_index(a1, reg, a2)] = 1.0
    return psi


def _check_probability(name: str, value: float, *, allow_zero: bool = True) -> None:
    ok = 0.0 <= value <= 1.0 if allow_zero else 0.0 < value <= 1.0
    if not (ok and math.isfinite(value)):
        interval = "[0, 1]" if allow_zero else "(0, 1]"
        raise ValueError(f"{name} must lie in {interval}, got {value!r}")


@dataclass(frozen=True)
class ProblemAngles:
    """Angles fixed by the initial error probability and ancilla-1 weight.

    ``theta`` is the register rotation angle (``epsilon = cos^2 theta``) and
    ``theta_j`` the angle between the prepared joint state and the joint
    non-target direction (``sin^2 theta_j = r sin^2 theta``).
    """

    epsilon: float
    r: float
    theta: float
    theta_j: float

    @classmethod
    def from_epsilon(cls, epsilon: float, r: float = 0.5) -> "ProblemAngles":
        _check_probability("epsilon", epsilon)
        _check_probability("r", r, allow_zero=False)
        theta = math.acos(math.sqrt(epsilon))
        theta_j = math.asin(math.sqrt(r * (1.0 - epsilon)))
        return cls(epsilon=epsilon, r=r, theta=theta, theta_j=theta_j)


def _ancilla1_amplitudes(r: float) -> np.ndarray:
    return np.array([math.sqrt(1.0 - r), math.sqrt(r)])


def _register_amplitudes(epsilon: float) -> np.ndarray:
    # (sin theta, cos theta) without going through arccos
    return np.array([math.sqrt(1.0 - epsilon), math.sqrt(epsilon)])


def prepared_vector(epsilon: float, r: float = 0.5) -> np.ndarray:
    """The 4-component joint vector ``(R_r x U)|0>|s>`` on (ancilla-1, register)."""
    _check_probability("epsilon", epsilon)
    _check_probability("r", r, allow_zero=False)
    return np.kron(_ancilla1_amplitudes(r), _register_amplitudes(epsilon)).astype(complex)


def prepare_initial(epsilon: float, r: float = 0.5) -> np.ndarray:
    """Initial joint state ``(R_r x U x I)|0>|s>|0>``.

    All amplitudes are real and non-negative.  ``r = 1/2`` gives the
    Hadamard-prepared ancilla-1 of the basic algorithm.
    """
    v = prepared_vector(epsilon, r)
    psi = np.zeros(8, dtype=complex)
    psi[0::2] = v
    return psi


def joint_target(a2: int = 0) -> np.ndarray:
    """``|1>|t>|a2>``, the only target direction of the joint search space."""
    return basis_state(1, T, a2)


def joint_nontarget(epsilon: float, r: float = 0.5, a2: int = 0) -> np.ndarray:
    """Normalized non-target part of the prepared vector, tensored with ``|a2>``.

    Undefined (``ValueError``) when the prepared vector has no non-target
    component, i.e. ``r = 1`` and ``epsilon = 0``.
    """
    v = prepared_vector(epsilon, r)
    v[basis_index(1, T, 0) // 2] = 0.0
    norm = np.linalg.norm(v)
    if norm < ZERO_BRANCH:
        raise ValueError("prepared vector has no non-target component")
    psi = np.zeros(8, dtype=complex)
    psi[a2::2] = v / norm
    return psi


def oracle_query(state: np.ndarray, avoided: bool = False) -> np.ndarray:
    """Flip ancilla-2 when ancilla-1 is ``|1>`` and the register is ``|t>``.

    With ``avoided=True`` the flip is conditioned on ``|1>|t_perp>`` instead,
    which makes ``epsilon = 1`` the fixed point.
    """
    reg = T_PERP if avoided else T
    out = np.array(state, dtype=complex, copy=True)
    i0, i1 = basis_index(1, reg, 0), basis_index(1, reg, 1)
    out[i0], out[i1] = state[i1], state[i0]
    return out


def measure_ancilla2(state: np.ndarray):
    """Projective measurement of ancilla-2.

    Returns ``(p_one, state_if_zero, state_if_one)``.  Each post-measurement
    state is renormalized; a branch whose probability is below
    ``ZERO_BRANCH`` is returned as ``None``.
    """
    state = np.asarray(state, dtype=complex)
    zero = state.copy()
    zero[1::2] = 0.0
    one = state.copy()
    one[0::2] = 0.0
    p_zero = float(np.vdot(zero, zero).real)
    p_one = float(np.vdot(one, one).real)
    total = p_zero + p_one
    p_zero, p_one = p_zero / total, p_one / total
    state_zero = zero / math.sqrt(p_zero * total) if p_zero >= ZERO_BRANCH else None
    state_one = one / math.sqrt(p_one * total) if p_one >= ZERO_BRANCH else None
    return p_one, state_zero, state_one


def register_probabilities(state: np.ndarray) -> tuple[float, float]:
    """Probabilities of finding the register in ``|t>`` and ``|t_perp>``."""
    w = np.abs(np.asarray(state).reshape(2, 2, 2)) ** 2
    p = w.sum(axis=(0, 2))
    return float(p[T]), float(p[T_PERP])


def reflect_about(vector: np.ndarray, state: np.ndarray) -> np.ndarray:
    """``(2|v><v| - I)`` acting on the leading factor of ``state``.

    ``state`` is reshaped to ``(len(vector), -1)`` so the reflection acts as
    identity on the trailing factors.
    """
    vector = np.asarray(vector, dtype=complex)
    block = np.asarray(state, dtype=complex).reshape(len(vector), -1)
    overlap = vector.conj() @ block
    return (2.0 * np.outer(vector, overlap) - block).reshape(np.shape(state))


def joint_diffusion(state: np.ndarray, angles: ProblemAngles) -> np.ndarray:
    """Reflect the (ancilla-1, register) factor about ``(R_r x U)|0>|s>``.

    The component along the prepared vector is kept and the orthogonal
    complement negated; ancilla-2 is untouched.
    """
    v = prepared_vector(angles.epsilon, angles.r)
    return reflect_about(v, np.asarray(state).reshape(4, 2)).reshape(8)


def register_u(theta: float) -> np.ndarray:
    """Real orthogonal preparer with ``|s> -> sin(theta)|t> + cos(theta)|t_perp>``."""
    s, c = math.sin(theta), math.cos(theta)
    return np.array([[s, c], [c, -s]], dtype=complex)


def register_phase_t(phi: float) -> np.ndarray:
    """Selective phase shift ``e^{i phi}`` on ``|t>``."""
    return np.diag([np.exp(1j * phi), 1.0])


def register_phase_source(phi: float) -> np.ndarray:
    """Selective phase shift ``e^{i phi}`` on ``|s>`` in the source frame."""
    return np.diag([np.exp(1j * phi), 1.0])


def register_phase_s(theta: float, phi: float) -> np.ndarray:
    """``U R_s^phi U^dagger``: phase ``e^{i phi}`` on the prepared state ``U|s>``."""
    u = register_u(theta)
    return u @ register_phase_source(phi) @ u.conj().T


def norm(state: np.ndarray) -> float:
    return float(np.linalg.norm(state))
