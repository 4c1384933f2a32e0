"""Maximal distance between coherent extensions of a finite lower prevision assessment."""

from .core import Assessment, center_gamble, indicator, inner_product, norm, shift_to_zero
from .extension import check, natural_extension, tight_upper_envelope
from .maxdist import maximal_distance, maximal_distance_bruteforce
from .polytope import ConstraintSystem, CredalSet, credal_set, enumerate_vertices

__all__ = [
    "Assessment",
    "ConstraintSystem",
    "CredalSet",
    "center_gamble",
    "check",
    "credal_set",
    "enumerate_vertices",
    "indicator",
    "inner_product",
    "maximal_distance",
    "maximal_distance_bruteforce",
    "natural_extension",
    "norm",
    "shift_to_zero",
    "tight_upper_envelope",
]
