"""Kernels of candidate homomorphisms and the ideal property of the kernel."""
from typing import Dict, List
import logging

import numpy as np

from src.algebra.core import (
    Element, element_from_flat, make_rng, random_element, realify, unrealify,
)
from src.algebra.linalg import null_space, orthonormal_columns
from src.homomorphisms.maps import RealLinearMap
from src.spectral.norms import operator_norm

logger = logging.getLogger(__name__)


def kernel(m: RealLinearMap, tol: float = 1e-10) -> List[Element]:
    """Basis of the real null space of the map, re-complexified where possible.
    
    For a verified homomorphism the kernel is a complex subspace; then an
    orthonormal complex basis is returned. Otherwise the real basis is.
    """
    real_vectors = null_space(m.matrix, tol=tol)
    if real_vectors.shape[1] == 0:
        return []
    elements = [unrealify(real_vectors[:, k], m.domain) for k in range(real_vectors.shape[1])]
    
    complex_span = orthonormal_columns(np.column_stack([e.flatten() for e in elements]), rcond=tol)
    if 2 * complex_span.shape[1] == len(elements):
        return [element_from_flat(complex_span[:, k], m.domain) for k in range(complex_span.shape[1])]
    logger.debug("Kernel is not a complex subspace; returning a real basis")
    return elements


def kernel_ideal_residuals(
    m: RealLinearMap,
    basis: List[Element],
    samples: int = 20,
    seed: int = 0
) -> Dict[str, float]:
    """How far the kernel is from being a *-closed two-sided ideal.
    
    y lies in the kernel exactly when m(y) = 0, so each residual is the
    largest ||m(y)|| / (1 + ||y||) over the probes y built from the basis.
    """
    rng = make_rng(seed)
    probes = [random_element(m.domain, rng) for _ in range(samples)]
    scalars = [1j, complex(rng.standard_normal(), rng.standard_normal())]
    
    def worst(elements: List[Element]) -> float:
        if not elements:
            return 0.0
        return max(
            operator_norm(fy) / (1.0 + operator_norm(y))
            for y, fy in zip(elements, m.apply_many(elements))
        )
    
    return {
        'scaling': worst([x.scale(z) for x in basis for z in scalars]),
        'left': worst([a @ x for x in basis for a in probes]),
        'right': worst([x @ a for x in basis for a in probes]),
        'adjoint': worst([x.adjoint() for x in basis]),
    }


def image_scaling_gap(m: RealLinearMap, x: Element, scalar: complex = 1j) -> float:
    """Relative distance of scalar * m(x) from the real image of m.
    
    A value near 1 shows that the image is not closed under that scalar,
    so it is not a complex subspace.
    """
    target = realify(m(x).scale(scalar))
    size = float(np.linalg.norm(target))
    if size == 0.0:
        return 0.0
    image = orthonormal_columns(m.matrix, rcond=1e-10)
    projection = image @ (image.T @ target)
    return float(np.linalg.norm(target - projection)) / size
