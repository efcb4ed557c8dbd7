"""Bounds on the expressiveness of d-dimensional Euclidean preference models."""

from .bounds import (
    BoundParams,
    InfoLossBound,
    LogProb,
    RepresentableBound,
    banned_probability,
    info_loss_cdf_bound,
    info_loss_lower_bound,
    pathology_probability_lower_bound,
    representable_upper_bound,
    stirling2_log,
    sufficiency_threshold,
)
from .errors import CapacityError, DegeneracyError, InvalidArgumentError
from .oracles import (
    Budget,
    McEstimate,
    VerifyReport,
    enumerate_banned_probability,
    exact_pathology_probability,
    mc_pathology_probability,
    one_dim_distinct_orders,
    verify_all,
)
from .pathology import (
    CircularPermutation,
    DetectionResult,
    contains_circulant,
    is_banned,
    necessary_subpreferences,
)
from .perm import (
    Preference,
    Profile,
    SubPreference,
    kendall_distance,
    restrict,
    sample_preference,
    sample_profile,
)
from .permutohedron import (
    MahonianTable,
    adjacent_neighbors,
    ball_size_power_bound,
    ball_sizes_bfs,
    mahonian_counts,
)

__version__ = "0.1.0"
