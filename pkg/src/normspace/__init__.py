"""Distances between norms on R^k and between metrics on a finite set,
both taken modulo positive rescaling."""

from .diamnorm import (
    REALS,
    Z3_L1,
    BoundedFunction,
    Carrier,
    QuotientFunction,
    diameter_seminorm,
    hom_distance_lower_bound,
    kuratowski_section,
    pair_pseudometric,
    real_function,
    sup_distance,
)
from .embeddings import (
    EmbeddingReport,
    PsiPoint,
    SchoenbergReport,
    embed_into_Sn,
    euclidean_embed,
    frechet_embed,
    isometry_counterexample,
    metric_to_psi,
    pad_to_quotient,
    psi_to_metric,
    schoenberg_matrix,
)
from .metric import (
    FiniteMetric,
    MetricClass,
    apex_extend,
    are_proportional,
    brute_force_isometry,
    discrete,
    gh_pair,
    line_witness,
    log_distortion,
    packing_count,
    rho_distance_closed_form,
    rho_family,
    validate_metric,
)
from .norms import (
    Mixture,
    NormSpec,
    NormSphere,
    OffCenterSphere,
    Perturbed,
    PNorm,
    Precomposed,
    SampleDomain,
    SampledDual,
    Scaled,
    Sum,
    WeightedAbs,
    check_norm_axioms,
    distance_closed_form,
    dual_norm_eval,
    estimate_distance,
    evaluate,
    log_restriction,
    precompose_invariance_check,
    sample_domain,
    spec_from_json,
)

__version__ = "0.1.0"
