"""Quantum 6j symbols at roots of unity and hyperbolic tetrahedron asymptotics.

Core objects: Level (the odd root order r), Spin / SpinSextuple (symbol
entries), AngleSet (dihedral angles), and the harness drivers that compare
exact symbol evaluations against the dilogarithm volume and the two-term
stationary-phase prediction.
"""

from .qarith import DomainError, Level, LogSigned, Spin, is_r_admissible
from .sixj import DeltaCoeff, SixJResult, SpinSextuple, alpha_term, delta_coeff, sixj_rw
from .qdilog import (
    BumpSpec,
    PhiValue,
    SummandParams,
    alpha_tilde,
    clausen,
    delta_tilde,
    gbar,
    li2_circle,
    phi_batch,
    phi_r,
    qpoch,
)
from .geometry import (
    AngleSet,
    NotHyperbolic,
    StationaryData,
    VolumeResult,
    classify_vertex,
    delta_eta,
    gram_det,
    gram_matrix,
    potential_F,
    predictor,
    predictor_logmag,
    stationary_point,
    volume,
)
from .harness import (
    AsymptoticReport,
    C1Estimate,
    GbarCheck,
    PoissonSpectrum,
    SpinSequenceRule,
    build_spin_sequence,
    convergence_table,
    default_ladder,
    effective_angles,
    extract_c1,
    integrate_gbar,
    poisson_spectrum,
    reports_to_csv,
    richardson_limit,
)

__version__ = "0.1.0"

__all__ = [
    "AngleSet",
    "AsymptoticReport",
    "BumpSpec",
    "C1Estimate",
    "DeltaCoeff",
    "DomainError",
    "GbarCheck",
    "Level",
    "LogSigned",
    "NotHyperbolic",
    "PhiValue",
    "PoissonSpectrum",
    "SixJResult",
    "Spin",
    "SpinSequenceRule",
    "SpinSextuple",
    "StationaryData",
    "SummandParams",
    "VolumeResult",
    "alpha_term",
    "alpha_tilde",
    "build_spin_sequence",
    "classify_vertex",
    "clausen",
    "convergence_table",
    "default_ladder",
    "delta_coeff",
    "delta_eta",
    "delta_tilde",
    "effective_angles",
    "extract_c1",
    "gbar",
    "gram_det",
    "gram_matrix",
    "integrate_gbar",
    "is_r_admissible",
    "li2_circle",
    "phi_batch",
    "phi_r",
    "poisson_spectrum",
    "potential_F",
    "predictor",
    "predictor_logmag",
    "qpoch",
    "reports_to_csv",
    "richardson_limit",
    "sixj_rw",
    "stationary_point",
    "volume",
]
