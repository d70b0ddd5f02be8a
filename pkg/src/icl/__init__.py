"""Induced-coherence interferometry under thermal background noise.

Gaussian second-moment propagation, analytic singles/heralded fringe
formulas, photon-number-difference SNR, and an independent truncated-Fock
oracle for desk-scale verification, plus a parameter-scan CLI (``icl``).
"""

from .gaussian import (
    BeamSplitter,
    GaussianState,
    ObjectPort,
    PhaseShift,
    SqueezerParams,
    ThermalInput,
    TwoModeSqueezer,
    apply_beam_splitter,
    apply_phase,
    apply_two_mode_squeezer,
    cross_moment,
    mean_photon_number,
    new_vacuum,
    physicality_defect,
    run_elements,
    set_thermal,
)
from .interferometer import (
    FringeResult,
    Topology,
    TopologyKind,
    fringe,
    g1_coherence,
    network_elements,
    pre_splitter_moments,
    singles_fringe_analytic,
    singles_fringe_engine,
    three_spdc,
    two_spdc,
    two_spdc_attenuated,
)
from .heralding import (
    DetectorModel,
    HeraldedFringe,
    conditional_mean_povm,
    conditional_mean_wick,
    heralded_fringe_mode_matched,
    heralded_visibility_pair_limit,
)
from .metrics import (
    SnrConvention,
    SnrResult,
    attenuation_search,
    difference_variance,
    optimal_attenuated_visibility,
    snr_heralded,
    snr_unconditional,
    visibility,
)
from .fock import (
    FockConfig,
    OracleEstimate,
    ResourceLimitError,
    TruncationError,
    oracle_conditional,
    oracle_moment,
    simulate_network,
    wick_residual,
)

__version__ = "0.1.0"

__all__ = [
    "BeamSplitter",
    "DetectorModel",
    "FockConfig",
    "FringeResult",
    "GaussianState",
    "HeraldedFringe",
    "ObjectPort",
    "OracleEstimate",
    "PhaseShift",
    "ResourceLimitError",
    "SnrConvention",
    "SnrResult",
    "SqueezerParams",
    "ThermalInput",
    "Topology",
    "TopologyKind",
    "TruncationError",
    "TwoModeSqueezer",
    "apply_beam_splitter",
    "apply_phase",
    "apply_two_mode_squeezer",
    "attenuation_search",
    "conditional_mean_povm",
    "conditional_mean_wick",
    "cross_moment",
    "difference_variance",
    "fringe",
    "g1_coherence",
    "heralded_fringe_mode_matched",
    "heralded_visibility_pair_limit",
    "mean_photon_number",
    "network_elements",
    "new_vacuum",
    "optimal_attenuated_visibility",
    "oracle_conditional",
    "oracle_moment",
    "physicality_defect",
    "pre_splitter_moments",
    "run_elements",
    "set_thermal",
    "simulate_network",
    "singles_fringe_analytic",
    "singles_fringe_engine",
    "snr_heralded",
    "snr_unconditional",
    "three_spdc",
    "two_spdc",
    "two_spdc_attenuated",
    "visibility",
]
