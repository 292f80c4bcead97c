"""Rank varieties of totally acyclic complexes over generic hypersurface
rings, computed through matrix factorizations in exact arithmetic."""

from .complexes import (
    FiniteComplex,
    GradedFreeModule,
    HomMatrix,
    PeriodicComplex,
    ValidationReport,
    cone_mul,
    direct_sum,
    dual,
    extract_mf,
    koszul,
    periodic_from_pair,
    shamash_resolution,
    shift,
    trivial_pair,
    validate,
)
from .fields import (
    ExtensionField,
    PrimeField,
    QQ,
    RationalField,
    finite_field,
    make_extension,
    parse_field,
    prime_field,
)
from .parser import parse_poly
from .pipelines import (
    ModulePresentation,
    RealizationTrace,
    complete_resolution_of_k,
    fixture_k,
    fixture_rank_one,
    module_variety,
    realize,
    reproduce_examples,
    worked_ring,
)
from .poly import Poly, PolyRing
from .ring import Alpha, RElem, RingSpec, make_alpha, make_ring, specialize
from .variety import (
    ContractionData,
    EmptinessVerdict,
    IdealGens,
    ProjPoint,
    ZeroSetUnion,
    construct_contraction,
    contractible_at,
    enumerate_points,
    is_empty,
    membership,
    minor_ideal_image,
    preimage_independence_check,
    proj_point,
    rank_over_R,
    rank_variety,
)

__version__ = "0.1.0"
