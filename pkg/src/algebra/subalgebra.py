"""Generated *-subalgebras and centers, computed by span saturation."""
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple
import logging

import numpy as np

from src.algebra.core import AlgebraSignature, Element, element_from_flat, identity
from src.algebra.linalg import null_space, orthonormal_columns
from src.errors import SignatureMismatchError

logger = logging.getLogger(__name__)


def _common_signature(elements: Sequence[Element]) -> AlgebraSignature:
    signatures = {e.signature for e in elements}
    if len(signatures) != 1:
        raise SignatureMismatchError(
            f"Elements must share one signature, got {sorted(str(s) for s in signatures)}"
        )
    return signatures.pop()


def _span_basis(elements: Sequence[Element], sig: AlgebraSignature, tol: float) -> List[Element]:
    if not elements:
        return []
    columns = np.column_stack([e.flatten() for e in elements])
    basis = orthonormal_columns(columns, rcond=tol)
    return [element_from_flat(basis[:, k], sig) for k in range(basis.shape[1])]


def generated_star_subalgebra(
    gens: Sequence[Element],
    tol: float = 1e-10,
    include_unit: bool = True,
    max_rounds: Optional[int] = None
) -> List[Element]:
    """Orthonormal basis of the *-subalgebra generated by gens.
    
    Starts from span(gens, gens*, and 1 when include_unit) and multiplies on
    the left by that starting span until the dimension stops growing. Every
    word in the generators and their adjoints is reached this way, so the
    result is closed under products and the adjoint.
    
    Args:
        gens: Generators, all in one algebra
        tol: Singular-value cutoff relative to the largest singular value
        include_unit: Add the unit of the ambient algebra to the generators
        max_rounds: Safety cap on saturation rounds (default: the algebra dimension)
        
    Returns:
        Orthonormal basis under the trace inner product
    """
    gens = list(gens)
    if not gens:
        return []
    sig = _common_signature(gens)
    
    seeds = gens + [g.adjoint() for g in gens]
    if include_unit:
        seeds.append(identity(sig))
    multipliers = _span_basis(seeds, sig, tol)
    basis = list(multipliers)
    rounds = max_rounds if max_rounds is not None else sig.dimension + 1
    
    for round_index in range(rounds):
        candidates = basis + [m @ b for m in multipliers for b in basis]
        grown = _span_basis(candidates, sig, tol)
        logger.debug(f"Saturation round {round_index}: dimension {len(basis)} -> {len(grown)}")
        if len(grown) == len(basis):
            return grown
        basis = grown
    
    logger.warning(f"Span saturation stopped after {rounds} rounds at dimension {len(basis)}")
    return basis


def center(basis: Sequence[Element], tol: float = 1e-10) -> List[Element]:
    """Basis of the elements of span(basis) commuting with every basis element.
    
    Solved as the null space of the stacked commutator maps
    c -> sum_k c_k [b_k, b_j], one block row per j.
    """
    basis = list(basis)
    if not basis:
        return []
    sig = _common_signature(basis)
    
    rows = []
    for bj in basis:
        rows.append(np.column_stack([(bk @ bj - bj @ bk).flatten() for bk in basis]))
    coefficients = null_space(np.vstack(rows), tol=tol)
    
    members = []
    for k in range(coefficients.shape[1]):
        flat = sum(c * b.flatten() for c, b in zip(coefficients[:, k], basis))
        members.append(element_from_flat(flat, sig))
    return _span_basis(members, sig, tol)


@dataclass(frozen=True)
class Subalgebra:
    """A *-subalgebra of a block algebra, kept as an orthonormal basis in the ambient algebra."""
    ambient: AlgebraSignature
    basis: Tuple[Element, ...]
    unit: Element
    
    @classmethod
    def generated_by(
        cls,
        gens: Sequence[Element],
        tol: float = 1e-10,
        unit: Optional[Element] = None
    ) -> "Subalgebra":
        """Generated subalgebra; with an explicit unit the ambient unit is not added."""
        gens = list(gens)
        sig = _common_signature(gens)
        if unit is None:
            basis = generated_star_subalgebra(gens, tol, include_unit=True)
            unit = identity(sig)
        else:
            basis = generated_star_subalgebra(gens + [unit], tol, include_unit=False)
        return cls(sig, tuple(basis), unit)
    
    @property
    def dimension(self) -> int:
        return len(self.basis)
    
    def _matrix(self) -> np.ndarray:
        return np.column_stack([b.flatten() for b in self.basis])
    
    def coordinates(self, x: Element) -> np.ndarray:
        """Complex coefficients of the orthogonal projection of x onto the span."""
        if not self.basis:
            return np.zeros(0, dtype=np.complex128)
        return self._matrix().conj().T @ x.flatten()
    
    def element(self, coords: np.ndarray) -> Element:
        if not self.basis:
            return element_from_flat(np.zeros(self.ambient.dimension, dtype=np.complex128), self.ambient)
        return element_from_flat(self._matrix() @ np.asarray(coords, dtype=np.complex128), self.ambient)
    
    def residual(self, x: Element) -> float:
        """Frobenius distance from x to the span."""
        return (x - self.element(self.coordinates(x))).frobenius_norm()
    
    def contains(self, x: Element, tol: float = 1e-9) -> bool:
        return self.residual(x) <= tol * (1.0 + x.frobenius_norm())
    
    def center(self, tol: float = 1e-10) -> List[Element]:
        return center(self.basis, tol)
    
    def closure_residual(self) -> float:
        """Largest distance from the span of a product or adjoint of basis elements."""
        worst = 0.0
        for a in self.basis:
            worst = max(worst, self.residual(a.adjoint()))
            for b in self.basis:
                worst = max(worst, self.residual(a @ b))
        return worst
    
    def unit_residual(self) -> float:
        """How far the unit is from acting as the identity on the basis."""
        worst = 0.0
        for b in self.basis:
            worst = max(worst, (self.unit @ b - b).frobenius_norm(), (b @ self.unit - b).frobenius_norm())
        return worst
