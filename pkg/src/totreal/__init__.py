"""Exact computation with totally real fields, cyclotomic cosines, unit square classes and quadratic lattices."""
from .errors import TotrealError
from .exactnum import AlgebraicReal, FieldElement, IntPolynomial, NumberField, field_create, rationals

__all__ = ["AlgebraicReal", "FieldElement", "IntPolynomial", "NumberField", "TotrealError", "field_create", "rationals"]
