"""Exact arithmetic for totally real algebraic numbers and number fields."""
from fractions import Fraction

from .algebraic import AlgebraicReal
from .field import FieldElement, NumberField, Ordering, field_create, rationals
from .poly import IntPolynomial, count_real_roots, isolate_real_roots, sturm_sequence
from .reconstruct import algebraic_of, contains, sqrt_in_field


def elem_arith(op: str, x: FieldElement, y: FieldElement | None = None) -> FieldElement:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inverse()
    raise ValueError(f"unknown operation {op!r}")


def trace_norm(x: FieldElement) -> tuple[Fraction, Fraction]:
    return x.trace(), x.norm()


def is_totally_positive(x: FieldElement) -> bool:
    return x.is_totally_positive()


def house_compare(x: FieldElement, r) -> Ordering:
    return x.house_compare(r)


def minpoly_of(x: FieldElement) -> IntPolynomial:
    return x.minpoly()


def is_integral(x: FieldElement) -> bool:
    return x.is_integral()


__all__ = [
    "AlgebraicReal", "FieldElement", "IntPolynomial", "NumberField", "Ordering",
    "algebraic_of", "contains", "count_real_roots", "elem_arith", "field_create",
    "house_compare", "is_integral", "is_totally_positive", "isolate_real_roots",
    "minpoly_of", "rationals", "sqrt_in_field", "sturm_sequence", "trace_norm",
]
