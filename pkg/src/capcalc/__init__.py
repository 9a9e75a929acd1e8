"""Exact capacities of rational surfaces CP^2 # n(-CP^2) and of convex toric domains."""
from .capacity import CapacityResult, capacity_fk, enumerate_exceptional, in_U2, in_U5
from .cremona import c1nef_vertices, dominates, is_c1nef, is_reduced, reduce, reflect_class, reflect_cohom
from .errors import (
    CapcalcError,
    DegreeMismatchError,
    NotInConeError,
    OutOfDomainError,
    ParseError,
    UncertifiedError,
    UnsupportedError,
)
from .lattice import CohomClass, HomologyClass, area, canonical_class, index, intersect
from .toric import (
    Polygon,
    WeightSequence,
    ball_capacity,
    capacities_of_polygon,
    ech_capacity,
    is_delzant,
    normalize,
    weight_sequence,
    weights_to_class,
)
from .tropical import TropicalCapacity, certify_bound, minimizer_set

__version__ = "0.1.0"
