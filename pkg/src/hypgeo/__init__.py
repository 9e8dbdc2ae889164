"""Geodesics and optimality for left-invariant metrics on PSL(2,R) and SL(2,R).

The package works with axially symmetric metrics (two equal principal
moments) and exposes closed-form geodesics, Maxwell and conjugate times,
cut loci, the injectivity radius, a Riemannian logarithm, and the
sub-Riemannian limit of the cut time.
"""

from .algebra import (
    IsometryClass,
    IsometryKind,
    Psl2Element,
    SplitQuaternion,
    classify_isometry,
    from_sl2,
    hyperbolic_distance,
    psl2_canonicalize,
    sq_exp,
    sq_mul,
    to_mobius_apply,
    to_sl2,
)
from .errors import (
    DegenerateDenominator,
    DegenerateFunction,
    DegenerateIdenticallyZero,
    DeterminantError,
    DomainError,
    HypgeoError,
    IdentityInput,
    IdentityTarget,
    LightLikeInput,
    NegativeTime,
    NoConvergence,
    NonPositiveEigenvalue,
    NoRootFound,
    NotOnC,
    NotTimeLike,
    OnCutLocus,
    OutsideDisk,
    StepCountTooSmall,
    UndefinedAtEquator,
)
from .geodesic_engine import (
    GeodesicSample,
    SymmetryElement,
    apply_symmetry_image,
    apply_symmetry_preimage,
    exp_map,
    exp_map_ode_oracle,
    exp_map_ode_oracle_batch,
    jacobian,
    sample_geodesic,
    vertical_flow,
)
from .metric_space import (
    ETA_INJ_SPLIT,
    ETA_POLE_SPLIT_PSL2,
    ETA_POLE_SPLIT_SL2,
    CausalType,
    Covector,
    Metric,
    covector_from_components,
    covector_from_pbar3,
    light_covector,
    make_metric,
    metric_from_eta,
    tau_of_t,
)
from .optimality import (
    CutDescriptor,
    GroupTag,
    LocusSample,
    WavefrontPoint,
    cut_locus_sample,
    cut_time,
    describe_cut,
    first_conjugate_time,
    injectivity_radius,
    maxwell_time,
    riemannian_log,
    wavefront_row,
    wavefront_sample,
)
from .root_solver import (
    conjugate_roots,
    find_first_positive_root,
    maxwell_root_q0,
    maxwell_root_q3,
)
from .sr_limit import (
    SrMomentum,
    beta_from_pbar3,
    limit_comparison,
    sr_cut_time,
    sr_exp_map,
)

__version__ = "0.1.0"

__all__ = [
    "CausalType",
    "Covector",
    "CutDescriptor",
    "DegenerateDenominator",
    "DegenerateFunction",
    "DegenerateIdenticallyZero",
    "DeterminantError",
    "DomainError",
    "ETA_INJ_SPLIT",
    "ETA_POLE_SPLIT_PSL2",
    "ETA_POLE_SPLIT_SL2",
    "GeodesicSample",
    "GroupTag",
    "HypgeoError",
    "IdentityInput",
    "IdentityTarget",
    "IsometryClass",
    "IsometryKind",
    "LightLikeInput",
    "LocusSample",
    "Metric",
    "NegativeTime",
    "NoConvergence",
    "NoRootFound",
    "NonPositiveEigenvalue",
    "NotOnC",
    "NotTimeLike",
    "OnCutLocus",
    "OutsideDisk",
    "Psl2Element",
    "SplitQuaternion",
    "SrMomentum",
    "StepCountTooSmall",
    "SymmetryElement",
    "UndefinedAtEquator",
    "WavefrontPoint",
    "apply_symmetry_image",
    "apply_symmetry_preimage",
    "beta_from_pbar3",
    "classify_isometry",
    "conjugate_roots",
    "covector_from_components",
    "covector_from_pbar3",
    "cut_locus_sample",
    "cut_time",
    "describe_cut",
    "exp_map",
    "exp_map_ode_oracle",
    "exp_map_ode_oracle_batch",
    "find_first_positive_root",
    "first_conjugate_time",
    "from_sl2",
    "hyperbolic_distance",
    "injectivity_radius",
    "jacobian",
    "light_covector",
    "limit_comparison",
    "make_metric",
    "maxwell_root_q0",
    "maxwell_root_q3",
    "maxwell_time",
    "metric_from_eta",
    "psl2_canonicalize",
    "riemannian_log",
    "sample_geodesic",
    "sq_exp",
    "sq_mul",
    "sr_cut_time",
    "sr_exp_map",
    "tau_of_t",
    "to_mobius_apply",
    "to_sl2",
    "vertical_flow",
    "wavefront_row",
    "wavefront_sample",
]
