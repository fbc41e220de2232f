"""Exact computations with partial actions of Hopf algebras: cochain
complexes, twisted crossed products, and their Hopf algebroids."""

from .linalg import GF, QQ, Residue, field_from_name
from .hopf import AbelianGroup, FinAlgebra, FinHopf, build_dual_group_algebra, build_group_algebra, validate_hopf
from .partial_action import (
    PartialActionMap,
    enumerate_base_field_actions,
    subgroup_to_action,
    validate_partial_action,
)
from .convolution import Cochain, convolve, idempotent, invert_in_ideal, random_invertible
from .cohomology import coboundary, enumerate_cohomology, is_cocycle, klein_four_family, reduce_modulo_units
from .crossed_product import TwistedPartialAction, build_crossed_product, normalize_cocycle, validate_crossed_product
from .algebroid import (
    build_algebroid,
    build_cleaving_maps,
    build_smash_algebroid,
    verify_algebroid,
    verify_algebroid_cleft,
    verify_partial_cleft,
)
from .report import ValidationReport

__version__ = "0.1.0"
