"""Idler-conditioned (heralded) signal statistics.

For a zero-mean Gaussian field the fourth-order moment factorizes,

    <n_I n_S> = <n_I><n_S> + |<a_I a_S>|^2 + |<a_I^dag a_S>|^2,

so the click-conditioned signal mean is <n_S> plus a correlation boost
divided by the herald rate.  An on/off detector with efficiency eta and
dark-count mean nu interpolates between that conditional mean (nu -> 0)
and the unconditional mean (nu -> infinity).

The mode-matched heralded fringe treats the detected idler as the
component matched to the pair source: the object port's reflected input
is statistically independent of the herald, so it contributes neither to
the herald rate nor to the phase-sensitive herald-signal correlation.
Intensities are read from the network with the background port in vacuum,
while the herald-side correlation comes from a filtered pass in which the
object port acts as a raw amplitude contraction of the idler (no ancilla
admixture).  The filtered pass runs on raw stacked-moment matrices since
the contraction is not a unitary element.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import gaussian, interferometer
from .gaussian import GaussianState, ModeId, ObjectPort
from .interferometer import (
    MODE_IDLER,
    MODE_PLUS,
    MODE_SIGNAL_A,
    MODE_SIGNAL_B,
    Topology,
    TopologyKind,
)

_INV_SQRT2 = 1.0 / math.sqrt(2.0)
_CHECK_TOL = 1e-10


@dataclass(frozen=True)
class DetectorModel:
    """On/off idler detector: quantum efficiency eta, dark-count mean nu."""

    eta: float
    nu: float = 0.0

    def __post_init__(self) -> None:
        if not (0.0 < self.eta <= 1.0):
            raise ValueError(f"detector efficiency must lie in (0, 1], got {self.eta!r}")
        if not (math.isfinite(self.nu) and self.nu >= 0.0):
            raise ValueError(f"dark-count mean must be >= 0, got {self.nu!r}")


@dataclass(frozen=True)
class HeraldedFringe:
    """dc, amplitude, and contrast of the click-conditioned signal fringe."""

    dc: float
    amplitude: float
    visibility: float

    def __post_init__(self) -> None:
        expected = self.amplitude / self.dc if self.dc > 0.0 else 0.0
        if abs(self.visibility - expected) > 1e-12:
            raise ValueError("visibility inconsistent with amplitude / dc")
        if not (-1e-12 <= self.visibility <= 1.0 + 1e-12):
            raise ValueError(f"heralded visibility {self.visibility!r} outside [0, 1]")


def _number_product(state: GaussianState, mode_i: ModeId, mode_s: ModeId) -> float:
    """<n_I n_S> assembled from second moments of a zero-mean Gaussian state."""
    n_i = gaussian.mean_photon_number(state, mode_i)
    n_s = gaussian.mean_photon_number(state, mode_s)
    anomalous = gaussian.cross_moment(state, mode_i, mode_s, "anomalous")
    normal = gaussian.cross_moment(state, mode_i, mode_s, "normal")
    return n_i * n_s + abs(anomalous) ** 2 + abs(normal) ** 2


def conditional_mean_wick(state: GaussianState, mode_i: ModeId, mode_s: ModeId) -> float:
    """Click-conditioned signal mean <n_I n_S> / <n_I> for an ideal herald."""
    n_i = gaussian.mean_photon_number(state, mode_i)
    if n_i <= 0.0:
        raise ValueError("no herald events: the herald mode is empty")
    return _number_product(state, mode_i, mode_s) / n_i


def conditional_mean_povm(
    state: GaussianState, mode_i: ModeId, mode_s: ModeId, det: DetectorModel
) -> float:
    """Conditional signal mean for an on/off detector in the low-click regime.

    Reduces to ``conditional_mean_wick`` as nu -> 0 and to the unconditional
    mean as nu -> infinity.
    """
    n_i = gaussian.mean_photon_number(state, mode_i)
    n_s = gaussian.mean_photon_number(state, mode_s)
    click = det.eta * n_i + det.nu
    if click <= 0.0:
        raise ValueError("no click probability: eta * <n_I> + nu vanishes")
    return (det.eta * _number_product(state, mode_i, mode_s) + det.nu * n_s) / click


# ---------------------------------------------------------------------------
# Mode-matched heralded fringe
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModeMatchedMoments:
    """Ingredients of the conditional fringe at one phase."""

    herald_mean: float            # <n_I>
    signal_mean: float            # <n_S>(phi)
    pair_corr: complex            # <b_I b_S>(phi)
    exchange_corr: complex        # <b_I b_S^dag>(phi); zero in this geometry


def _closed_form_moments(topo: Topology, phi: float) -> tuple[float, float, float]:
    """(herald mean, signal mean, |pair correlation|^2) closed forms."""
    v_a = topo.crystal_a.V
    v_b = topo.crystal_b.V
    u_a = 1.0 + v_a
    u_b = 1.0 + v_b
    T = topo.object_port.T
    n_i = u_b * T * v_a + v_b
    cos2 = math.cos(2.0 * phi)
    n_s = 0.5 * (v_a + v_b + T * v_a * v_b) + math.sqrt(T * u_a * v_a * v_b) * cos2
    corr_sq = (
        0.5
        * u_b
        * T
        * u_a
        * (T * u_a * v_b + v_a + 2.0 * math.sqrt(T * u_a * v_a * v_b) * cos2)
    )
    return n_i, n_s, corr_sq


def mode_matched_moments(topo: Topology, phi: float) -> ModeMatchedMoments:
    """Engine computation of the mode-matched herald/signal moments.

    Two passes through the stacked-transform machinery: a unitary pass with
    the background port in vacuum for the intensities, and a filtered pass
    with the object port as a raw idler contraction for the correlations.
    The results are verified against the closed forms on every call.
    """
    if topo.kind is not TopologyKind.TWO_SPDC:
        raise ValueError("mode-matched heralding is defined for the two-source layout")
    port = topo.object_port

    clean = replace(topo, object_port=ObjectPort(port.T, 0.0))
    state = interferometer.output_state(clean, phi)
    n_s = gaussian.mean_photon_number(state, MODE_PLUS)
    n_i = gaussian.mean_photon_number(state, MODE_IDLER)

    # Filtered pass on three modes: signal A, signal B, idler.
    n = 3
    sigma = gaussian.vacuum_sigma(n)
    steps = (
        gaussian.squeezer_coeffs(n, MODE_SIGNAL_A, MODE_IDLER, topo.crystal_a),
        gaussian.mode_scaling_coeffs(n, MODE_IDLER, port.t_amp),
        gaussian.squeezer_coeffs(n, MODE_SIGNAL_B, MODE_IDLER, topo.crystal_b),
        gaussian.phase_coeffs(n, MODE_SIGNAL_B, 2.0 * phi),
        gaussian.beam_splitter_coeffs(n, MODE_SIGNAL_B, MODE_SIGNAL_A, _INV_SQRT2, _INV_SQRT2),
    )
    for e, f in steps:
        sigma = gaussian.conjugate_sigma(sigma, gaussian.stacked_map(e, f))
    # Ordered entries with the herald operator leftmost.
    pair_corr = complex(sigma[MODE_IDLER, n + MODE_PLUS])       # <b_I b_S>
    exchange_corr = complex(sigma[MODE_IDLER, MODE_PLUS])       # <b_I b_S^dag>

    exp_n_i, exp_n_s, exp_corr_sq = _closed_form_moments(topo, phi)
    checks = (
        (exp_n_i, n_i),
        (exp_n_s, n_s),
        (exp_corr_sq, abs(pair_corr) ** 2),
    )
    for expected, got in checks:
        if abs(expected - got) > _CHECK_TOL * max(1.0, abs(expected)):
            raise RuntimeError(
                "mode-matched engine moments disagree with their closed forms: "
                f"expected {expected!r}, got {got!r}"
            )
    return ModeMatchedMoments(n_i, n_s, pair_corr, exchange_corr)


def mode_matched_conditional_mean(
    topo: Topology, phi: float, det: DetectorModel | None = None
) -> float:
    """Conditional signal mean of the mode-matched fringe at one phase."""
    mm = mode_matched_moments(topo, phi)
    if mm.herald_mean <= 0.0:
        raise ValueError("no herald events: the herald mode is empty")
    boost = abs(mm.pair_corr) ** 2 + abs(mm.exchange_corr) ** 2
    if det is None:
        return mm.signal_mean + boost / mm.herald_mean
    click = det.eta * mm.herald_mean + det.nu
    if click <= 0.0:
        raise ValueError("no click probability: eta * <n_I> + nu vanishes")
    return mm.signal_mean + det.eta * boost / click


DEFAULT_PHI_GRID = interferometer.FRINGE_PHASES


def heralded_fringe_mode_matched(
    topo: Topology, phi_grid: tuple[float, ...] = DEFAULT_PHI_GRID
) -> HeraldedFringe:
    """Conditional fringe of the "+" output heralded on the idler output.

    The conditional mean is exactly dc + amplitude * cos(2 phi); the grid
    must therefore contain at least two phases with distinct cos(2 phi).
    The fitted dc and amplitude are verified against their closed forms.
    """
    phis = np.asarray(phi_grid, dtype=float)
    cos2 = np.cos(2.0 * phis)
    if phis.size < 2 or abs(cos2.max() - cos2.min()) < 1e-9:
        raise ValueError("phase grid must sample at least two distinct cos(2 phi) values")
    values = np.array([mode_matched_conditional_mean(topo, p) for p in phis])
    design = np.column_stack([np.ones_like(cos2), cos2])
    (dc, amplitude), *_ = np.linalg.lstsq(design, values, rcond=None)

    v_a = topo.crystal_a.V
    v_b = topo.crystal_b.V
    u_a, u_b = 1.0 + v_a, 1.0 + v_b
    T = topo.object_port.T
    n_i = u_b * T * v_a + v_b
    if n_i > 0.0:
        exp_dc = 0.5 * (v_a + v_b + T * v_a * v_b) + 0.5 * u_b / n_i * (
            v_b * (T * u_a) ** 2 + T * u_a * v_a
        )
        exp_amp = math.sqrt(T * u_a * v_a * v_b) * (1.0 + u_b * T * u_a / n_i)
        for expected, got in ((exp_dc, dc), (exp_amp, amplitude)):
            if abs(expected - got) > _CHECK_TOL * max(1.0, abs(expected)):
                raise RuntimeError(
                    f"fitted heralded fringe ({dc!r}, {amplitude!r}) disagrees with "
                    f"closed forms ({exp_dc!r}, {exp_amp!r})"
                )
    visibility = amplitude / dc if dc > 0.0 else 0.0
    return HeraldedFringe(dc=float(dc), amplitude=float(amplitude), visibility=float(visibility))


def heralded_visibility_pair_limit(topo: Topology) -> float:
    """Heralded contrast in the low-brightness pair limit; free of the
    thermal background by construction."""
    if topo.kind is not TopologyKind.TWO_SPDC:
        raise ValueError("pair-limit heralding is defined for the two-source layout")
    v_a = topo.crystal_a.V
    v_b = topo.crystal_b.V
    T = topo.object_port.T
    denom = v_a + v_b + T * v_a * v_b
    if denom <= 0.0:
        return 0.0
    return 2.0 * math.sqrt(T * (1.0 + v_a) * v_a * v_b) / denom
