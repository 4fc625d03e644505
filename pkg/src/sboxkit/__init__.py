"""Butterfly S-box toolkit: GF(2^(2m)) constructions with 4-uniform DDT
and BCT, exact equation solvers, and exhaustive spectrum analysis."""

__version__ = "0.1.0"

from .gf2m import FieldCtx, create_field
from .tower import TowerCtx
from .solvers import (
    LClassification,
    LInstance,
    classify_L,
    solve_L,
    solve_artin_schreier,
    solve_quadratic,
)
from .butterfly import (
    ButterflyParams,
    CoeffSet,
    F_eval,
    R_eval,
    closed_butterfly_table,
    coeffs,
    from_alpha_beta,
    from_theta,
    normalize_k,
    open_butterfly_table,
    theta_to_alpha_beta,
    univariate_table,
)
from .diagnostics import (
    BoomerangReport,
    DiffCoeffs,
    MuXiLambda,
    E_eval,
    H_eval,
    boomerang_traces,
    diff_coeffs,
    kernel_H,
    mu_xi_lambda,
    solve_difference,
)
from .analysis import (
    SBoxTable,
    SpectrumTable,
    baseline_family,
    bct,
    bct_lqsl,
    boomerang_uniformity,
    boomerang_uniformity_lqsl,
    ddt,
    delta_uniformity,
    invert,
    is_permutation,
    nonlinearity,
    walsh,
)
