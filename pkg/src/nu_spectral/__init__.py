"""Symbolic-numeric toolkit for reducing second-order ODEs with polynomial
coefficients to hypergeometric form and solving the resulting spectral
problems with classical orthogonal polynomials and hypergeometric functions.
"""

from .classical import (
    CanonicalHde,
    classify_canonical,
    eigen_lambda,
    inner_product,
    norm_defect,
    norm_sq,
    orthogonality_defect,
    recurrence_poly,
    rodrigues_poly,
)
from .errors import (
    AmbiguousBranch,
    CancellationWarning,
    CountMismatch,
    EmptySpectrum,
    EnergyBelowRegion,
    GridTooCoarse,
    NoAdmissibleBranch,
    NoConvergence,
    NoPerfectSquare,
    NoScatteringRegion,
    NuSpectralError,
    ParseError,
)
from .hyper import (
    Limit2F1,
    SeriesResult,
    gamma_fn,
    hermite_fn,
    hyp1f1,
    hyp2f1,
    hyp2f1_regularized,
    hypU,
    limit_2f1_at_1,
    pochhammer,
    wronskian_defect,
)
from .oracle import (
    FdGrid,
    compare_spectra,
    fd_bound_states,
    fd_convergence_ratio,
    quad_adaptive,
    tanh_sinh,
)
from .polynomials import HALF_LINE, REAL_LINE, UNIT_INTERVAL, Interval, Polynomial
from .potentials import (
    BoundState,
    PotentialSpec,
    ScatteringState,
    bound_spectrum,
    bound_state,
    eigen_eps,
    eigenvalue_count,
    expected_lambda,
    harmonic,
    make_potential,
    morse,
    morse_envelope_growth,
    morse_second_solution_diverges,
    normalization_defect,
    oracle_spectrum,
    pinned_branch,
    rosen_morse2,
    scattering_states,
    wavefunction_residual,
)
from .reduction import (
    EpsAffinePoly,
    FactorizedFunction,
    GheProblem,
    NuBranch,
    ReductionResult,
    branch_candidates,
    chi_from_pi,
    parse_ghe_text,
    pearson_weight,
    reduce_ghe,
)
from .scalars import SurdSum, as_exact, scalar_float, sqrt_scalar

__version__ = "0.1.0"

__all__ = [
    "AmbiguousBranch",
    "BoundState",
    "CancellationWarning",
    "CanonicalHde",
    "CountMismatch",
    "EmptySpectrum",
    "EnergyBelowRegion",
    "EpsAffinePoly",
    "FactorizedFunction",
    "FdGrid",
    "GheProblem",
    "GridTooCoarse",
    "HALF_LINE",
    "Interval",
    "Limit2F1",
    "NoAdmissibleBranch",
    "NoConvergence",
    "NoPerfectSquare",
    "NoScatteringRegion",
    "NuBranch",
    "NuSpectralError",
    "ParseError",
    "Polynomial",
    "PotentialSpec",
    "REAL_LINE",
    "ReductionResult",
    "ScatteringState",
    "SeriesResult",
    "SurdSum",
    "UNIT_INTERVAL",
    "as_exact",
    "bound_spectrum",
    "bound_state",
    "branch_candidates",
    "chi_from_pi",
    "classify_canonical",
    "compare_spectra",
    "eigen_eps",
    "eigen_lambda",
    "eigenvalue_count",
    "expected_lambda",
    "fd_bound_states",
    "fd_convergence_ratio",
    "gamma_fn",
    "harmonic",
    "hermite_fn",
    "hyp1f1",
    "hyp2f1",
    "hyp2f1_regularized",
    "hypU",
    "inner_product",
    "limit_2f1_at_1",
    "make_potential",
    "morse",
    "morse_envelope_growth",
    "morse_second_solution_diverges",
    "norm_defect",
    "norm_sq",
    "normalization_defect",
    "oracle_spectrum",
    "orthogonality_defect",
    "parse_ghe_text",
    "pearson_weight",
    "pinned_branch",
    "pochhammer",
    "quad_adaptive",
    "recurrence_poly",
    "reduce_ghe",
    "rodrigues_poly",
    "rosen_morse2",
    "scalar_float",
    "scattering_states",
    "sqrt_scalar",
    "tanh_sinh",
    "wavefunction_residual",
    "wronskian_defect",
]
