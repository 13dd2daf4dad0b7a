"""Three-qubit entanglement: 3-tangle convex roofs of GHZ/W mixtures,
rank-2 zero-tangle decisions, numerical roofs and CKW checks."""

from ._backend import BACKEND
from .ckw import CkwReport, ckw_check, family_ckw_sweep, wootters_concurrence
from .config import DEFAULT_TOL, Tolerances
from .family import (
    P0,
    P1,
    PC,
    SLOPE,
    RoofValue,
    concurrence_sum_family,
    constants,
    density_of_point,
    family_point_of_state,
    g1,
    g2,
    min_one_tangle_family,
    optimal_decomposition,
    point_of_density,
    rho_p,
    roof_tau3_axis,
    roof_tau3_bloch,
    tangle_z,
    z_state,
)
from .bloch import FamilyPoint
from .measures import (
    concurrence_pure,
    hyperdet,
    monogamy_residual,
    one_tangle,
    tangle_form,
    three_tangle,
)
from .rank2zero import (
    TanglePolynomial,
    ZeroDecision,
    ZeroSet,
    ZeroSimplex,
    has_vanishing_tangle,
    has_vanishing_tangle_in_span,
    polynomial_roots,
    tangle_polynomial,
    zero_simplex,
)
from .roof import (
    IsometryParams,
    RoofConfig,
    RoofResult,
    average_objective,
    ensemble_from_isometry,
    minimize_roof,
)
from .states import (
    Ensemble,
    Rank2State,
    density_of,
    ghz,
    mix,
    normalize,
    partial_trace,
    spectral_rank2,
    w,
)

__version__ = "0.1.0"
