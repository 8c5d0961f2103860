"""Hyperspace dynamics for group actions on finite spaces and subshifts."""

from .checkers import (
    Bounds,
    PropertyReport,
    Verdict,
    check,
    is_devaney_chaotic,
    is_mixing,
    is_sdic,
    is_transitive,
    is_weakly_mixing,
    has_dense_periodic_points,
    n_set,
    simultaneous_weak_mixing_witness,
)
from .groups import ActionSystem, GroupKind, GroupSpec, image_closure
from .hyperspace import VietorisBasic, build_hyperspace_system, vietoris_contains
from .library import builtin, builtin_family
from .metric import FiniteMetricSpace, hausdorff_distance, point_set_distance, validate_metric
from .shifts import Sft, full_shift, golden_mean, sft_from_forbidden_words
from .theorems import (
    construct_periodic_witness,
    construct_vietoris_proof_witness,
    verify_theorem,
)

__version__ = "0.1.0"
