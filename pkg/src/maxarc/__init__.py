"""Maximal arcs of Denniston and Mathon type in PG(2, 2^h)."""

from .arcs import (
    AdditiveSubgroup,
    Arc,
    ArcError,
    additive_subgroup,
    closed_set_check,
    denniston_arc,
    dual_arc,
    elation_involution,
    extend_by_conic,
    fano_decomposition,
    find_external_line,
    infinity_data,
    mathon_arc,
    mathon_exponent_conics,
    secant_census,
    verify_maximal_arc,
)
from .collineation import Collineation, apply, configuration_stabilizer, theta, theta_family
from .conic import Conic, GeneralConic, Pencil, compose, conic_points, infinity_line, pencil_of, standard_pencil, trace_disjoint
from .field import Field, FieldSpec, find_generator_with_relation, pg32_field
from .isomorphism import are_isomorphic, automorphism_order, canonical_form, field_group_orbits
from .plane import Plane

__version__ = "0.1.0"
