"""Restricting the codomain of a map to the *-subalgebra generated by its image."""
from dataclasses import dataclass
from typing import List, Tuple
import logging

import numpy as np

from src.algebra.core import Element, identity, realify
from src.algebra.subalgebra import Subalgebra, center
from src.homomorphisms.maps import RealLinearMap

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CodomainRestriction:
    """A map re-expressed in the coordinates of the subalgebra its image generates.
    
    coordinate_matrix is (2 m) x (2 d_A): realified complex coordinates in
    the orthonormal subalgebra basis (real parts, then imaginary parts).
    """
    original: RealLinearMap
    subalgebra: Subalgebra
    coordinate_matrix: np.ndarray
    
    @property
    def unit(self) -> Element:
        return self.subalgebra.unit
    
    @property
    def dimension(self) -> int:
        return self.subalgebra.dimension
    
    def coordinates(self, a: Element) -> np.ndarray:
        """Complex subalgebra coordinates of m(a)."""
        real = self.coordinate_matrix @ realify(a)
        m = self.dimension
        return real[:m] + 1j * real[m:]
    
    def apply(self, a: Element) -> Element:
        return self.subalgebra.element(self.coordinates(a))
    
    def image_residual(self) -> float:
        """Largest distance of an image of a domain basis element from the subalgebra."""
        return max((self.subalgebra.residual(y) for y in self.original.basis_images()), default=0.0)
    
    def unital_residual(self) -> float:
        """How far m(1_A) is from acting as the unit of the subalgebra."""
        return self.subalgebra.unit_residual()
    
    def center_dimension(self, tol: float = 1e-10) -> int:
        return len(center(self.subalgebra.basis, tol))


def restrict_codomain(m: RealLinearMap, tol: float = 1e-10) -> Tuple[CodomainRestriction, List[Element]]:
    """Generated *-subalgebra of im m with unit m(1_A), and m in its coordinates.
    
    Args:
        m: Map that verifies except possibly for unitality
        tol: Rank cutoff for the span saturation
        
    Returns:
        (restriction, orthonormal basis of the subalgebra)
    """
    images = m.basis_images()
    unit = m(identity(m.domain))
    subalgebra = Subalgebra.generated_by(images, tol, unit=unit)
    logger.debug(
        f"Image of {m.domain} -> {m.codomain} generates a subalgebra of complex dimension "
        f"{subalgebra.dimension}"
    )
    
    if subalgebra.basis:
        coords = np.column_stack([subalgebra.coordinates(y) for y in images])
    else:
        coords = np.zeros((0, len(images)), dtype=np.complex128)
    coordinate_matrix = np.vstack([coords.real, coords.imag])
    restriction = CodomainRestriction(m, subalgebra, coordinate_matrix)
    return restriction, list(subalgebra.basis)
