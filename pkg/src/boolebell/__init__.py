"""Correlation polytopes, their facet inequalities, and quantum violations.

The package derives conditions-of-possible-experience inequalities by exact
Double Description hull computation and quantifies how far two-qubit spin
correlations overshoot them via dense Hermitian eigensystem calculations.
"""

__version__ = "0.1.0"

from .classical import (
    SZ_THRESHOLD_THETA,
    UrnDistribution,
    ball_types,
    correlation_point,
    exact_pairwise_expectation,
    sample_urn,
    singlet_sz_profile,
    specker_check,
    uniform_urn,
)
from .errors import (
    BoolebellError,
    ConventionNotFound,
    DegeneratePolytope,
    DimensionMismatch,
    DomainError,
    InvalidPair,
    NoConvergence,
    NotHermitian,
    ScenarioTooLarge,
    UnsupportedMonomialOrder,
)
from .polytope import (
    CHSH_SCENARIO,
    SZ_SCENARIO,
    Facet,
    HRepresentation,
    MembershipReport,
    Scenario,
    VRepresentation,
    affine_dimension,
    dd_hull,
    enumerate_vertices,
    membership,
)
from .quantum import (
    Direction,
    DeviationExtrema,
    correlation_operator,
    deviation,
    deviation_extrema,
    expectation,
    fragment_correlation,
    fragment_monte_carlo,
    is_hermitian,
    kron,
    pauli,
    projector,
    singlet_correlation,
    singlet_state,
    spin_operator,
)
from .spectral import (
    CHSH_FACET,
    BoundReport,
    EigenSystem,
    OptimizeResult,
    SZSpectrum,
    TsirelsonConvention,
    eigh,
    facet_operator,
    optimize_angles,
    optimize_equidistant,
    pair_extremal_states,
    quantum_bound,
    span_projector,
    subspace_distance,
    sz_closed_eigenvalues,
    sz_closed_vectors,
    sz_directions,
    sz_singlet_value,
    sz_spectrum,
    tsirelson_eigenstates,
)
