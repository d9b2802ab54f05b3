"""Finite-dimensional C*-algebras and their elements."""
from .core import (
    AlgebraSignature, ComplexScalar, Element, add, adjoint, adjoint_batch, as_scalar,
    element_from_flat, identity, make_rng, matrix_units, mul, random_element,
    random_positive, random_selfadjoint, real_basis, realify, realify_batch, scale,
    unrealify, unrealify_batch, zeros,
)
from .subalgebra import Subalgebra, center, generated_star_subalgebra

__all__ = [
    'AlgebraSignature', 'ComplexScalar', 'Element', 'Subalgebra', 'add', 'adjoint',
    'adjoint_batch', 'as_scalar', 'center', 'element_from_flat', 'generated_star_subalgebra',
    'identity', 'make_rng', 'matrix_units', 'mul', 'random_element', 'random_positive',
    'random_selfadjoint', 'real_basis', 'realify', 'realify_batch', 'scale', 'unrealify',
    'unrealify_batch', 'zeros',
]
