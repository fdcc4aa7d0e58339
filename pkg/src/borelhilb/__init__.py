"""Borel-fixed points of Hilbert schemes of P^n, their tangent spaces and the
weight-vector degenerations that reach them."""

from .degeneration import (
    DegenerationReport,
    HomogeneousIdealBasis,
    PolynomialIdeal,
    degenerate_report,
    echelonize,
    first_order_direction,
    first_order_fan_sample,
    generic_change,
    ideal_of_points,
    initial_ideal,
    truncate_at,
)
from .hilbert import HilbertPolynomial, gotzmann_number, macaulay_form
from .ideals import (
    MonomialIdeal,
    enumerate_borel_points,
    hilbert_point_check,
    is_borel_fixed,
    regularity_borel,
    saturate_borel,
    truncation_filter,
)
from .poset import Filter, Poset, build_poset, flip
from .tangent import (
    TangentVector,
    act_on_first_order,
    enumerate_borel_eigenvectors,
    is_borel_eigenvector,
    is_tangent,
    tangent_space_basis,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerationReport",
    "Filter",
    "HilbertPolynomial",
    "HomogeneousIdealBasis",
    "MonomialIdeal",
    "PolynomialIdeal",
    "Poset",
    "TangentVector",
    "act_on_first_order",
    "build_poset",
    "degenerate_report",
    "echelonize",
    "enumerate_borel_eigenvectors",
    "enumerate_borel_points",
    "first_order_direction",
    "first_order_fan_sample",
    "flip",
    "generic_change",
    "gotzmann_number",
    "hilbert_point_check",
    "ideal_of_points",
    "initial_ideal",
    "is_borel_eigenvector",
    "is_borel_fixed",
    "is_tangent",
    "macaulay_form",
    "regularity_borel",
    "saturate_borel",
    "tangent_space_basis",
    "truncate_at",
    "truncation_filter",
]
