"""Candidate homomorphisms stored as real matrices acting on realified coordinates."""
from dataclasses import dataclass
from typing import List, Sequence
import logging

import numpy as np
import scipy.linalg

from src.algebra.core import (
    AlgebraSignature, Element, real_basis, realify, unrealify,
)
from src.errors import InvalidElementError, SignatureMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RealLinearMap:
    """An R-linear map A -> B as a (2 d_B) x (2 d_A) real matrix.
    
    Additivity holds by construction; scaling laws are checked, not assumed.
    """
    domain: AlgebraSignature
    codomain: AlgebraSignature
    matrix: np.ndarray
    
    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=np.float64)
        expected = (self.codomain.real_dimension, self.domain.real_dimension)
        if matrix.shape != expected:
            raise InvalidElementError(
                f"Map matrix has shape {matrix.shape}, expected {expected} "
                f"for {self.domain} -> {self.codomain}"
            )
        if not np.all(np.isfinite(matrix)):
            raise InvalidElementError("Map matrix entries must be finite")
        matrix.setflags(write=False)
        object.__setattr__(self, 'matrix', matrix)
    
    @classmethod
    def identity(cls, sig: AlgebraSignature) -> "RealLinearMap":
        return cls(sig, sig, np.eye(sig.real_dimension))
    
    @classmethod
    def zero(cls, domain: AlgebraSignature, codomain: AlgebraSignature) -> "RealLinearMap":
        return cls(domain, codomain, np.zeros((codomain.real_dimension, domain.real_dimension)))
    
    def __call__(self, a: Element) -> Element:
        return apply(self, a)
    
    def apply_many(self, elements: Sequence[Element]) -> List[Element]:
        """Apply the map to several elements with one matrix product."""
        if not elements:
            return []
        for a in elements:
            self._check_domain(a)
        images = self.matrix @ np.column_stack([realify(a) for a in elements])
        return [unrealify(images[:, k], self.codomain) for k in range(images.shape[1])]
    
    def basis_images(self) -> List[Element]:
        """Images of the real basis of the domain (the matrix columns)."""
        return [unrealify(self.matrix[:, k], self.codomain) for k in range(self.matrix.shape[1])]
    
    def compose(self, first: "RealLinearMap") -> "RealLinearMap":
        """self o first."""
        if first.codomain != self.domain:
            raise SignatureMismatchError(
                f"Cannot compose: {first.codomain} does not match {self.domain}"
            )
        return RealLinearMap(first.domain, self.codomain, self.matrix @ first.matrix)
    
    def __add__(self, other: "RealLinearMap") -> "RealLinearMap":
        self._check_same(other)
        return RealLinearMap(self.domain, self.codomain, self.matrix + other.matrix)
    
    def __sub__(self, other: "RealLinearMap") -> "RealLinearMap":
        self._check_same(other)
        return RealLinearMap(self.domain, self.codomain, self.matrix - other.matrix)
    
    def _check_domain(self, a: Element) -> None:
        if a.signature != self.domain:
            raise SignatureMismatchError(
                f"Element of {a.signature} does not match map domain {self.domain}"
            )
    
    def _check_same(self, other: "RealLinearMap") -> None:
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise SignatureMismatchError("Maps act between different algebras")


def apply(m: RealLinearMap, a: Element) -> Element:
    """unrealify(matrix . realify(a))."""
    m._check_domain(a)
    return unrealify(m.matrix @ realify(a), m.codomain)


def complex_to_real_operator(operator: np.ndarray) -> np.ndarray:
    """Real form [[Re L, -Im L], [Im L, Re L]] of a complex-linear operator on flat coordinates."""
    return np.block([[operator.real, -operator.imag], [operator.imag, operator.real]])


def left_multiplication_matrix(p: Element) -> np.ndarray:
    """Real matrix of x -> p x on realified coordinates.
    
    Row-major flattening turns left multiplication by a block p_i into
    kron(p_i, I).
    """
    operator = scipy.linalg.block_diag(
        *[np.kron(block, np.eye(n)) for n, block in zip(p.signature.block_dims, p.blocks)]
    )
    return complex_to_real_operator(operator)


def amplify2(m: RealLinearMap) -> RealLinearMap:
    """The entrywise map M2(A) -> M2(B), [[a, b], [c, d]] -> [[m(a), m(b)], [m(c), m(d)]]."""
    domain = m.domain.doubled()
    columns = []
    for e in real_basis(domain):
        (x11, x12), (x21, x22) = e.quadrants()
        y11, y12, y21, y22 = m.apply_many([x11, x12, x21, x22])
        columns.append(realify(Element.from_quadrants(y11, y12, y21, y22)))
    return RealLinearMap(domain, m.codomain.doubled(), np.column_stack(columns))
