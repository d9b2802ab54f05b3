"""Operator norm, spectrum, positivity and the dilation and order characterizations of the norm."""
from dataclasses import dataclass
from typing import Tuple
import logging

import numpy as np

from src.algebra.core import Element, identity
from src.errors import NotPositiveError, NotSelfAdjointError
from src.spectral.jacobi import jacobi_eigenvalues

logger = logging.getLogger(__name__)

EIGENSOLVERS = ('lapack', 'jacobi')


@dataclass(frozen=True)
class SpectralData:
    """Eigenvalues block by block.
    
    Real and sorted ascending for selfadjoint input, complex otherwise.
    """
    blocks: Tuple[np.ndarray, ...]
    
    @property
    def values(self) -> np.ndarray:
        """Union over the blocks (the spectrum of the element)."""
        return np.concatenate(self.blocks)
    
    @property
    def is_real(self) -> bool:
        return all(np.isrealobj(b) for b in self.blocks)
    
    def min(self) -> float:
        return float(np.min(np.real(self.values)))
    
    def max(self) -> float:
        return float(np.max(np.real(self.values)))
    
    def radius(self) -> float:
        return float(np.max(np.abs(self.values)))


def operator_norm(a: Element) -> float:
    """Largest singular value over all blocks (sqrt of the top eigenvalue of a*a)."""
    return float(max(np.linalg.norm(block, 2) for block in a.blocks))


def hermitian_eigenvalues(
    h: Element,
    tol: float = 1e-10,
    method: str = 'lapack',
    jacobi_tol: float = 1e-14,
    jacobi_max_sweeps: int = 100
) -> SpectralData:
    """Real eigenvalues of a selfadjoint element, sorted ascending per block.
    
    The input is symmetrized before solving.
    
    Raises:
        NotSelfAdjointError: ||h - h*|| > tol * (1 + ||h||)
    """
    if method not in EIGENSOLVERS:
        raise ValueError(f"Unknown eigensolver {method!r}, expected one of {EIGENSOLVERS}")
    
    asymmetry = operator_norm(h - h.adjoint())
    if asymmetry > tol * (1.0 + operator_norm(h)):
        raise NotSelfAdjointError(f"Element is not selfadjoint (||h - h*|| = {asymmetry:.3e})")
    
    blocks = []
    for block in h.blocks:
        hermitian = 0.5 * (block + block.conj().T)
        if method == 'jacobi':
            values = jacobi_eigenvalues(hermitian, tol=jacobi_tol, max_sweeps=jacobi_max_sweeps)
        else:
            values = np.linalg.eigvalsh(hermitian)
        blocks.append(np.sort(np.asarray(values, dtype=np.float64)))
    return SpectralData(tuple(blocks))


def spectrum(a: Element, tol: float = 1e-10) -> SpectralData:
    """Eigenvalues of every block; real and sorted when a is selfadjoint."""
    if operator_norm(a - a.adjoint()) <= tol * (1.0 + operator_norm(a)):
        return hermitian_eigenvalues(a, tol)
    return SpectralData(tuple(np.linalg.eigvals(block) for block in a.blocks))


def spectral_radius(a: Element) -> float:
    """Largest modulus in the spectrum."""
    return spectrum(a).radius()


def is_positive(a: Element, tol: float = 1e-10) -> bool:
    """Selfadjoint with smallest eigenvalue >= -tol * (1 + ||a||)."""
    norm = operator_norm(a)
    if operator_norm(a - a.adjoint()) > tol * (1.0 + norm):
        return False
    return hermitian_eigenvalues(a, tol=np.inf).min() >= -tol * (1.0 + norm)


def is_below(a: Element, b: Element, tol: float = 1e-10) -> bool:
    """Order relation a <= b, i.e. b - a is positive."""
    return is_positive(b - a, tol)


def positive_factor(a: Element, tol: float = 1e-10) -> Element:
    """Return v with v*v = a: the positive square root of a.
    
    Eigenvalues that are negative within tolerance are clamped to 0.
    
    Raises:
        NotPositiveError: a is not positive within tol
    """
    if not is_positive(a, tol):
        raise NotPositiveError("positive_factor needs a positive element")
    
    roots = []
    for block in a.blocks:
        values, vectors = np.linalg.eigh(0.5 * (block + block.conj().T))
        root_values = np.sqrt(np.clip(values, 0.0, None))
        roots.append((vectors * root_values) @ vectors.conj().T)
    return Element(a.signature, roots)


def dilation(a: Element, r: float) -> Element:
    """The element [[r 1, a], [a*, r 1]] of M2(A)."""
    unit = identity(a.signature).scale(r)
    return Element.from_quadrants(unit, a, a.adjoint(), unit)


def dilation_norm_bound(a: Element, r: float, tol: float = 1e-12) -> bool:
    """Decide ||a|| <= r through positivity of the dilation [[r 1, a], [a*, r 1]]."""
    if r < 0:
        raise ValueError(f"Bound must be non-negative, got {r}")
    return is_positive(dilation(a, r), tol)


def norm_by_bisection(a: Element, precision: float = 1e-6, tol: float = 1e-12) -> float:
    """Operator norm by bisection on r with dilation_norm_bound as the predicate.
    
    The bracket starts at [0, sum of |entries|] and halves until its width is
    at most precision; the upper endpoint is returned. A precision finer than
    the float spacing near the bracket stops once the midpoint no longer moves.
    """
    if not np.isfinite(precision) or precision <= 0:
        raise ValueError(f"Precision must be positive and finite, got {precision}")
    
    low = 0.0
    high = float(sum(np.sum(np.abs(block)) for block in a.blocks))
    if high == 0.0:
        return 0.0
    
    steps = 0
    while high - low > precision:
        middle = 0.5 * (low + high)
        if middle <= low or middle >= high:
            break
        if dilation_norm_bound(a, middle, tol):
            high = middle
        else:
            low = middle
        steps += 1
    logger.debug(f"Bisection converged in {steps} steps to {high:.12g}")
    return high


def order_norm(
    x: Element,
    precision: float = 1e-10,
    method: str = 'lapack',
    jacobi_tol: float = 1e-14,
    jacobi_max_sweeps: int = 100
) -> float:
    """Order-theoretic norm min{lam : -lam 1 <= x <= lam 1} of a selfadjoint element.
    
    The minimum is attained at max(|smallest eigenvalue|, |largest eigenvalue|).
    
    Raises:
        NotSelfAdjointError: x is not selfadjoint within precision
    """
    values = hermitian_eigenvalues(
        x, tol=precision, method=method,
        jacobi_tol=jacobi_tol, jacobi_max_sweeps=jacobi_max_sweeps,
    )
    return max(abs(values.min()), abs(values.max()))


def order_bounds_hold(x: Element, lam: float, tol: float = 1e-10) -> bool:
    """Whether -lam 1 <= x <= lam 1."""
    unit = identity(x.signature).scale(lam)
    return is_below(-unit, x, tol) and is_below(x, unit, tol)


def batch_operator_norm(blocks) -> np.ndarray:
    """Operator norms of N stacked elements given as (N, n, n) arrays per block."""
    return np.max(np.stack([np.linalg.norm(b, 2, axis=(1, 2)) for b in blocks]), axis=0)
