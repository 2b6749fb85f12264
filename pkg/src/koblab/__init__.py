"""Numerical hyperbolic geometry of bounded domains in complex space.

Domains, the Kobayashi-Royden metric (closed forms and certified polynomial
disc estimates), curve lengths and graph distances, Hausdorff-type
k-measures, loop and sphere invariants, map degrees, and contraction fixed
points, with a CLI front end.
"""

from .closed_forms import (
    CLOSED_FORM,
    ESTIMATED_UPPER_BOUND,
    MetricValue,
    annulus_canonical_density,
    annulus_kobayashi_density,
    canonical_density_fn,
    has_closed_distance,
    has_closed_form,
    kob_density_fn,
    kob_distance_closed,
    kob_royden_closed,
    poincare_disc_density,
)
from .contraction import (
    FixedPointReport,
    check_strict_image,
    degree_collapse_demo,
    iterate_to_fixed_point,
)
from .distgraph import (
    MetricGraph,
    build_metric_graph,
    curve_length_metric,
    kob_distance_graph,
    kob_distances_from,
    length_density_fn,
)
from .errors import BudgetError, ConfigError, DomainError, KoblabError
from .estimator import (
    MonotonicityReport,
    OptimizerBudget,
    PolyDiscCandidate,
    estimate_kob_royden,
    estimate_kob_royden_candidate,
    kob_directional_min,
    lemma_compare_bound,
    seed_affine_disc,
    uniform_monotonicity_constant,
    uniform_monotonicity_report,
)
from .geometry import (
    Annulus,
    Ball,
    CPoint,
    Disc,
    DomainDescriptor,
    Generic,
    Polydisc,
    SampledCurve,
    TubeCircle,
    TubeSphere,
    TVector,
    curve_in_domain,
    dist_to_complement,
    domain_from_json,
    domain_separation,
    membership,
)
from .hausdorff import (
    EQUILATERAL_CALIBRATION,
    CoverEstimate,
    MeasureReport,
    calibrated_area,
    flat_calibration,
    hausdorff_k_measure,
    pair_distance,
    pair_distance_batch,
    sphere_map_measure_upper,
)
from .invariants import (
    NOT_FORCED,
    TRIVIAL_FORCED,
    HomotopyClassSpec,
    InvariantReport,
    annulus_map_homotopy_verdict,
    l1_annulus,
    l1_annulus_domain,
    lk_tube_upper,
    max_radial_deviation,
    sphere_degree,
    tube_map_degree,
    vk_tube_upper,
    winding_number,
)
from .meshes import (
    SphereMeshMap,
    circle_mesh,
    icosphere,
    real_embedding,
    sphere_core,
    tube_circle_core,
)
from .parallel import rng_for, set_thread_cap, thread_cap
from .polymap import PolyMap

__version__ = "0.1.0"

__all__ = [
    "Annulus",
    "Ball",
    "BudgetError",
    "CLOSED_FORM",
    "CPoint",
    "ConfigError",
    "CoverEstimate",
    "Disc",
    "DomainDescriptor",
    "DomainError",
    "EQUILATERAL_CALIBRATION",
    "ESTIMATED_UPPER_BOUND",
    "FixedPointReport",
    "Generic",
    "HomotopyClassSpec",
    "InvariantReport",
    "KoblabError",
    "MeasureReport",
    "MetricGraph",
    "MetricValue",
    "MonotonicityReport",
    "NOT_FORCED",
    "OptimizerBudget",
    "PolyDiscCandidate",
    "PolyMap",
    "Polydisc",
    "SampledCurve",
    "SphereMeshMap",
    "TRIVIAL_FORCED",
    "TVector",
    "TubeCircle",
    "TubeSphere",
    "annulus_canonical_density",
    "annulus_kobayashi_density",
    "annulus_map_homotopy_verdict",
    "build_metric_graph",
    "calibrated_area",
    "flat_calibration",
    "canonical_density_fn",
    "check_strict_image",
    "circle_mesh",
    "curve_in_domain",
    "curve_length_metric",
    "degree_collapse_demo",
    "dist_to_complement",
    "domain_from_json",
    "domain_separation",
    "estimate_kob_royden",
    "estimate_kob_royden_candidate",
    "has_closed_distance",
    "has_closed_form",
    "hausdorff_k_measure",
    "icosphere",
    "iterate_to_fixed_point",
    "kob_density_fn",
    "kob_directional_min",
    "kob_distance_closed",
    "kob_distance_graph",
    "kob_distances_from",
    "kob_royden_closed",
    "l1_annulus",
    "l1_annulus_domain",
    "lemma_compare_bound",
    "length_density_fn",
    "lk_tube_upper",
    "max_radial_deviation",
    "membership",
    "pair_distance",
    "pair_distance_batch",
    "poincare_disc_density",
    "real_embedding",
    "rng_for",
    "seed_affine_disc",
    "set_thread_cap",
    "sphere_core",
    "sphere_degree",
    "sphere_map_measure_upper",
    "thread_cap",
    "tube_circle_core",
    "tube_map_degree",
    "uniform_monotonicity_constant",
    "uniform_monotonicity_report",
    "vk_tube_upper",
    "winding_number",
]
