"""Positive definite quadratic lattices over totally real fields."""
from .coverage import (
    SquareClassCoverage, gamma_class_avoids_units, high_coverage_search, integers_below,
    random_positive_definite, represented_unit_classes,
)
from .enumerate import DEFAULT_BUDGET, Representation, all_representations, represent, short_vectors
from .hnf import echelon, hnf, integer_kernel
from .lattice import (
    QuadraticLattice, ZRestriction, is_positive_definite, lattice_create, orthogonal_sublattice,
    rescale, restrict_scalars, ring_basis,
)

__all__ = [
    "DEFAULT_BUDGET", "QuadraticLattice", "Representation", "SquareClassCoverage", "ZRestriction",
    "all_representations", "echelon", "gamma_class_avoids_units", "high_coverage_search", "hnf",
    "integer_kernel", "integers_below", "is_positive_definite", "lattice_create",
    "orthogonal_sublattice", "random_positive_definite", "represent", "represented_unit_classes",
    "rescale", "restrict_scalars", "ring_basis", "short_vectors",
]
