"""Second-moment propagation for zero-mean Gaussian bosonic fields.

A state of n modes is described by the pair of moment matrices

    M[i, j] = <a_i^dag a_j>     (normal moments, Hermitian, photon-number units)
    A[i, j] = <a_i a_j>         (anomalous moments, symmetric)

Every network element -- two-mode squeezer, beam splitter, phase shift --
acts as a linear map a_i -> sum_j (E[i, j] a_j + F[i, j] a_j^dag).  All maps
go through one code path: the stacked 2n x 2n transform
S = [[E, F], [conj(F), conj(E)]] conjugates the ordered second-moment matrix

    Sigma = <xi xi^dag>,  xi = (a_1 .. a_n, a_1^dag .. a_n^dag),

whose blocks are [[M^T + 1, A], [conj(A), M]].  Operations return new
states; ``GaussianState`` instances are immutable after construction.

Mode identifiers are plain non-negative integers, bounds-checked by every
operation that takes one.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Literal, Union

import numpy as np

ModeId = int

SYMMETRY_TOL = 1e-12
PHYSICALITY_TOL = 1e-9


@dataclass(frozen=True)
class SqueezerParams:
    """Gain and phase of one parametric pair source.

    ``V`` is the spontaneous gain |v|^2 of the Bogoliubov map
    a -> u a + v b^dag; the companion U = 1 + V is implied, so U - V = 1
    holds exactly for every V >= 0.  ``theta`` is the phase of v in radians.
    """

    V: float
    theta: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.V) and self.V >= 0.0):
            raise ValueError(f"squeezer gain must be finite and >= 0, got {self.V!r}")
        if not math.isfinite(self.theta):
            raise ValueError(f"squeezer phase must be finite, got {self.theta!r}")

    @property
    def U(self) -> float:
        return 1.0 + self.V

    @property
    def u(self) -> float:
        return math.sqrt(1.0 + self.V)

    @property
    def v(self) -> complex:
        return math.sqrt(self.V) * cmath.exp(1j * self.theta)


@dataclass(frozen=True)
class ObjectPort:
    """Lossy port with intensity transmittance T, mixing in a thermal mode.

    The reflected fraction R = 1 - T couples the probed mode to a background
    mode of mean occupation ``N_B`` (vacuum when N_B = 0).
    """

    T: float
    N_B: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.T) and 0.0 <= self.T <= 1.0):
            raise ValueError(f"transmittance must lie in [0, 1], got {self.T!r}")
        if not (math.isfinite(self.N_B) and self.N_B >= 0.0):
            raise ValueError(f"thermal occupation must be >= 0, got {self.N_B!r}")

    @property
    def R(self) -> float:
        return 1.0 - self.T

    @property
    def t_amp(self) -> float:
        return math.sqrt(self.T)

    @property
    def r_amp(self) -> float:
        return math.sqrt(1.0 - self.T)


# ---------------------------------------------------------------------------
# Network element descriptors.  They are shared by the moment engine here and
# by the truncated-Fock simulator, so both backends run the same network.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThermalInput:
    """Prepare one input mode in a thermal state of mean occupation n_bar."""

    mode: ModeId
    n_bar: float


@dataclass(frozen=True)
class TwoModeSqueezer:
    """Pair source coupling a signal mode and an idler mode."""

    mode_signal: ModeId
    mode_idler: ModeId
    params: SqueezerParams


@dataclass(frozen=True)
class BeamSplitter:
    """Two-mode mixer: a -> t a + r b, b -> t b - r a (t, r real)."""

    mode_a: ModeId
    mode_b: ModeId
    t: float
    r: float


@dataclass(frozen=True)
class PhaseShift:
    """Single-mode phase: a -> exp(i phi) a."""

    mode: ModeId
    phi: float


Element = Union[ThermalInput, TwoModeSqueezer, BeamSplitter, PhaseShift]


# ---------------------------------------------------------------------------
# State container
# ---------------------------------------------------------------------------


def _moment_scale(m: np.ndarray, a: np.ndarray) -> float:
    """Magnitude reference used to make the fixed tolerances scale-aware."""
    top = 0.0
    if m.size:
        top = max(top, float(np.max(np.abs(m))), float(np.max(np.abs(a))))
    return max(1.0, top)


@dataclass(frozen=True, eq=False)
class GaussianState:
    """Immutable second-moment description of an n-mode zero-mean field."""

    n_modes: int
    normal_moments: np.ndarray
    anomalous_moments: np.ndarray

    def __post_init__(self) -> None:
        n = self.n_modes
        if n < 1:
            raise ValueError("state needs at least one mode")
        m = np.array(self.normal_moments, dtype=complex)
        a = np.array(self.anomalous_moments, dtype=complex)
        if m.shape != (n, n) or a.shape != (n, n):
            raise ValueError("moment matrices must be n_modes x n_modes")
        scale = _moment_scale(m, a)
        herm = float(np.max(np.abs(m - m.conj().T)))
        sym = float(np.max(np.abs(a - a.T)))
        if herm > SYMMETRY_TOL * scale:
            raise ValueError(f"normal moments not Hermitian (defect {herm:.3e})")
        if sym > SYMMETRY_TOL * scale:
            raise ValueError(f"anomalous moments not symmetric (defect {sym:.3e})")
        diag = np.diag(m)
        if float(np.min(diag.real)) < -PHYSICALITY_TOL * scale:
            raise ValueError("negative mean photon number on the diagonal")
        defect = physicality_defect_matrices(m, a)
        if defect > PHYSICALITY_TOL * scale:
            raise ValueError(f"moment matrices violate physicality (defect {defect:.3e})")
        m.setflags(write=False)
        a.setflags(write=False)
        object.__setattr__(self, "normal_moments", m)
        object.__setattr__(self, "anomalous_moments", a)

    def check_mode(self, mode: ModeId) -> None:
        if not (0 <= mode < self.n_modes):
            raise ValueError(f"mode {mode} outside 0..{self.n_modes - 1}")


def physicality_defect_matrices(m: np.ndarray, a: np.ndarray) -> float:
    """Largest negative eigenvalue (as a positive defect) of the ordered
    moment matrix [[M, conj(A)], [A, M^T + 1]]; zero for a physical state."""
    n = m.shape[0]
    block = np.block([[m, a.conj()], [a, m.T + np.eye(n)]])
    eigs = np.linalg.eigvalsh(block)
    return max(0.0, -float(eigs[0]))


def physicality_defect(state: GaussianState) -> float:
    return physicality_defect_matrices(state.normal_moments, state.anomalous_moments)


# ---------------------------------------------------------------------------
# Stacked transforms: the single code path for all linear elements
# ---------------------------------------------------------------------------


def stacked_map(e: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Assemble the 2n x 2n transform acting on (a_1..a_n, a_1^dag..a_n^dag)."""
    return np.block([[e, f], [f.conj(), e.conj()]])


def vacuum_sigma(n_modes: int) -> np.ndarray:
    """Ordered moment matrix <xi xi^dag> of the n-mode vacuum."""
    sigma = np.zeros((2 * n_modes, 2 * n_modes), dtype=complex)
    sigma[:n_modes, :n_modes] = np.eye(n_modes)
    return sigma


def sigma_matrix(state: GaussianState) -> np.ndarray:
    n = state.n_modes
    m = state.normal_moments
    a = state.anomalous_moments
    return np.block([[m.T + np.eye(n), a], [a.conj(), m]])


def conjugate_sigma(sigma: np.ndarray, s: np.ndarray) -> np.ndarray:
    return s @ sigma @ s.conj().T


def state_from_sigma(n_modes: int, sigma: np.ndarray) -> GaussianState:
    m = sigma[n_modes:, n_modes:]
    a = sigma[:n_modes, n_modes:]
    return GaussianState(n_modes, m, a)


def identity_coeffs(n_modes: int) -> tuple[np.ndarray, np.ndarray]:
    return np.eye(n_modes, dtype=complex), np.zeros((n_modes, n_modes), dtype=complex)


def squeezer_coeffs(
    n_modes: int, mode_s: ModeId, mode_i: ModeId, p: SqueezerParams
) -> tuple[np.ndarray, np.ndarray]:
    """(E, F) for a_s -> u a_s + v a_i^dag, a_i -> u a_i + v a_s^dag."""
    e, f = identity_coeffs(n_modes)
    e[mode_s, mode_s] = p.u
    e[mode_i, mode_i] = p.u
    f[mode_s, mode_i] = p.v
    f[mode_i, mode_s] = p.v
    return e, f


def beam_splitter_coeffs(
    n_modes: int, mode_a: ModeId, mode_b: ModeId, t: float, r: float
) -> tuple[np.ndarray, np.ndarray]:
    """(E, F) for a_a -> t a_a + r a_b, a_b -> t a_b - r a_a."""
    e, f = identity_coeffs(n_modes)
    e[mode_a, mode_a] = t
    e[mode_a, mode_b] = r
    e[mode_b, mode_b] = t
    e[mode_b, mode_a] = -r
    return e, f


def phase_coeffs(n_modes: int, mode: ModeId, phi: float) -> tuple[np.ndarray, np.ndarray]:
    e, f = identity_coeffs(n_modes)
    e[mode, mode] = cmath.exp(1j * phi)
    return e, f


def mode_scaling_coeffs(
    n_modes: int, mode: ModeId, factor: float
) -> tuple[np.ndarray, np.ndarray]:
    """(E, F) for the raw contraction a -> factor * a on one mode.

    This is not a unitary element: conjugating Sigma with it also scales the
    mode's commutator, which is exactly what a filtered (projected) mode
    carries.  It is used for mode-matched herald analyses and must not be fed
    back into ``GaussianState``, whose validation assumes canonical
    commutators.
    """
    e, f = identity_coeffs(n_modes)
    e[mode, mode] = factor
    return e, f


def _apply(state: GaussianState, e: np.ndarray, f: np.ndarray) -> GaussianState:
    sigma = conjugate_sigma(sigma_matrix(state), stacked_map(e, f))
    return state_from_sigma(state.n_modes, sigma)


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def new_vacuum(n_modes: int) -> GaussianState:
    """All-vacuum state: every moment is zero."""
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    zeros = np.zeros((n_modes, n_modes), dtype=complex)
    return GaussianState(n_modes, zeros, zeros.copy())


def set_thermal(state: GaussianState, mode: ModeId, n_bar: float) -> GaussianState:
    """Place ``mode`` in a thermal state of mean occupation ``n_bar``.

    The mode must be uncorrelated with every other mode; its existing
    occupation is replaced.
    """
    state.check_mode(mode)
    if not (math.isfinite(n_bar) and n_bar >= 0.0):
        raise ValueError(f"thermal occupation must be >= 0, got {n_bar!r}")
    m = state.normal_moments
    a = state.anomalous_moments
    scale = _moment_scale(m, a)
    cross = max(
        float(np.max(np.abs(np.delete(m[mode, :], mode)))) if state.n_modes > 1 else 0.0,
        float(np.max(np.abs(np.delete(m[:, mode], mode)))) if state.n_modes > 1 else 0.0,
        float(np.max(np.abs(a[mode, :]))),
        float(np.max(np.abs(a[:, mode]))),
    )
    if cross > SYMMETRY_TOL * scale:
        raise ValueError("mode is correlated with the rest of the network")
    m_new = np.array(m)
    m_new[mode, mode] = n_bar
    return GaussianState(state.n_modes, m_new, np.array(a))


def apply_two_mode_squeezer(
    state: GaussianState, mode_s: ModeId, mode_i: ModeId, p: SqueezerParams
) -> GaussianState:
    """Pair source: a_s -> u a_s + v a_i^dag, a_i -> u a_i + v a_s^dag."""
    state.check_mode(mode_s)
    state.check_mode(mode_i)
    if mode_s == mode_i:
        raise ValueError("squeezer needs two distinct modes")
    e, f = squeezer_coeffs(state.n_modes, mode_s, mode_i, p)
    return _apply(state, e, f)


def apply_beam_splitter(
    state: GaussianState, mode_a: ModeId, mode_b: ModeId, t: float, r: float
) -> GaussianState:
    """Mix two modes: a_a -> t a_a + r a_b, a_b -> t a_b - r a_a."""
    state.check_mode(mode_a)
    state.check_mode(mode_b)
    if mode_a == mode_b:
        raise ValueError("beam splitter needs two distinct modes")
    if abs(t * t + r * r - 1.0) > 1e-12:
        raise ValueError(f"non-unitary beam splitter: t^2 + r^2 = {t * t + r * r!r}")
    e, f = beam_splitter_coeffs(state.n_modes, mode_a, mode_b, t, r)
    return _apply(state, e, f)


def apply_phase(state: GaussianState, mode: ModeId, phi: float) -> GaussianState:
    """Phase shift a -> exp(i phi) a on one mode."""
    state.check_mode(mode)
    e, f = phase_coeffs(state.n_modes, mode, phi)
    return _apply(state, e, f)


def mean_photon_number(state: GaussianState, mode: ModeId) -> float:
    state.check_mode(mode)
    value = state.normal_moments[mode, mode]
    if abs(value.imag) > 1e-12 * max(1.0, abs(value.real)):
        raise ValueError(f"diagonal moment has spurious imaginary part {value.imag!r}")
    return float(value.real)


def cross_moment(
    state: GaussianState, i: ModeId, j: ModeId, kind: Literal["normal", "anomalous"]
) -> complex:
    """Second moment between two modes: <a_i^dag a_j> or <a_i a_j>."""
    state.check_mode(i)
    state.check_mode(j)
    if kind == "normal":
        return complex(state.normal_moments[i, j])
    if kind == "anomalous":
        return complex(state.anomalous_moments[i, j])
    raise ValueError(f"unknown moment kind {kind!r}")


def run_elements(n_modes: int, elements: Iterable[Element]) -> GaussianState:
    """Apply a network description to the n-mode vacuum.

    ``ThermalInput`` entries are input preparations and are applied first,
    in listing order; the remaining elements apply in listing order.
    """
    elements = list(elements)
    state = new_vacuum(n_modes)
    for el in elements:
        if isinstance(el, ThermalInput):
            state = set_thermal(state, el.mode, el.n_bar)
    for el in elements:
        if isinstance(el, ThermalInput):
            continue
        if isinstance(el, TwoModeSqueezer):
            state = apply_two_mode_squeezer(state, el.mode_signal, el.mode_idler, el.params)
        elif isinstance(el, BeamSplitter):
            state = apply_beam_splitter(state, el.mode_a, el.mode_b, el.t, el.r)
        elif isinstance(el, PhaseShift):
            state = apply_phase(state, el.mode, el.phi)
        else:
            raise TypeError(f"unknown network element {el!r}")
    return state
