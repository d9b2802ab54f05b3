"""Split a ring *-homomorphism into complex-linear and conjugate-linear parts.

With T := -i phi(i 1_A), the element T is a central selfadjoint unitary of
the subalgebra generated by the image. P = (T + 1)/2 and Q = 1 - P are
central projections, phi1 = P phi is complex-linear and phi2 = Q phi is
conjugate-linear.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple
import logging

import numpy as np

from src.algebra.core import Element, identity, make_rng, matrix_units, random_element, real_basis
from src.algebra.subalgebra import center
from src.errors import DecompositionError
from src.homomorphisms.maps import RealLinearMap, left_multiplication_matrix
from src.homomorphisms.restriction import restrict_codomain
from src.homomorphisms.verification import VerificationReport, verify
from src.spectral.norms import operator_norm

logger = logging.getLogger(__name__)


class Classification(str, Enum):
    LINEAR = "Linear"
    CONJUGATE_LINEAR = "ConjugateLinear"
    MIXED = "Mixed"


@dataclass
class Decomposition:
    """T, the projections P and Q, the parts phi1 and phi2, and every residual."""
    T: Element
    P: Element
    Q: Element
    phi1: RealLinearMap
    phi2: RealLinearMap
    unit: Element
    residual_T_selfadjoint: float
    residual_T_squares_to_one: float
    residual_central: float
    residual_projection: float
    residual_sum: float
    residual_linear: float
    residual_conjlinear: float
    residual_reconstruction: float
    center_dimension: int
    classification: Classification
    restricted: bool

    def residuals(self) -> Dict[str, float]:
        """Residuals compared against the decomposition tolerance."""
        return {
            'T_selfadjoint': self.residual_T_selfadjoint,
            'T_squares_to_one': self.residual_T_squares_to_one,
            'central': self.residual_central,
            'projection': self.residual_projection,
            'sum': self.residual_sum,
            'linear': self.residual_linear,
            'conjlinear': self.residual_conjlinear,
        }


def _max_norm(elements: List[Element]) -> float:
    return max((operator_norm(x) for x in elements), default=0.0)


def decompose(
    m: RealLinearMap,
    tol: float = 1e-8,
    restrict: bool = True,
    strict: bool = False,
    rank_tol: float = 1e-10,
    reconstruction_tol: float = 1e-10
) -> Decomposition:
    """Build T, P, Q, phi1 and phi2 for a verified map.

    Args:
        m: Map that passes verify
        tol: Tolerance for every residual and for the classification band
        restrict: Work inside the subalgebra generated by the image (unit m(1_A));
            without it T is only guaranteed central relative to the image
        strict: Check centrality against the whole subalgebra basis instead of
            the images of the domain basis
        rank_tol: Rank cutoff for the subalgebra and center computations
        reconstruction_tol: Bound on ||phi1(a) + phi2(a) - m(a)|| over the real basis

    Returns:
        Decomposition

    Raises:
        DecompositionError: some residual exceeds its tolerance
    """
    domain, codomain = m.domain, m.codomain
    generators = m.basis_images()

    if restrict:
        restriction, basis = restrict_codomain(m, rank_tol)
        unit = restriction.unit
    else:
        logger.warning(
            "Decomposing without restricting the codomain; T need not be central in the full codomain"
        )
        basis = matrix_units(codomain)
        unit = identity(codomain)
    center_dimension = len(center(basis, rank_tol))

    T = m(identity(domain).scale(1j)).scale(-1j)
    residual_T_selfadjoint = operator_norm(T - T.adjoint())
    residual_T_squares_to_one = operator_norm(T @ T - unit)
    against = basis if strict else generators
    residual_central = _max_norm([T @ g - g @ T for g in against])

    P = (T + unit).scale(0.5)
    Q = unit - P
    residual_projection = max(
        operator_norm(P @ P - P),
        operator_norm(P - P.adjoint()),
        operator_norm(Q @ Q - Q),
        operator_norm(P @ Q),
    )
    residual_sum = operator_norm(P + Q - unit)

    phi1 = RealLinearMap(domain, codomain, left_multiplication_matrix(P) @ m.matrix)
    phi2 = RealLinearMap(domain, codomain, left_multiplication_matrix(Q) @ m.matrix)

    units = matrix_units(domain)
    i_units = [e.scale(1j) for e in units]
    residual_linear = _max_norm([
        fie - fe.scale(1j) for fe, fie in zip(phi1.apply_many(units), phi1.apply_many(i_units))
    ])
    residual_conjlinear = _max_norm([
        fie + fe.scale(1j) for fe, fie in zip(phi2.apply_many(units), phi2.apply_many(i_units))
    ])

    reals = real_basis(domain)
    residual_reconstruction = _max_norm([
        f1 + f2 - f for f1, f2, f in zip(phi1.apply_many(reals), phi2.apply_many(reals), m.apply_many(reals))
    ])

    if operator_norm(Q) <= tol:
        classification = Classification.LINEAR
    elif operator_norm(P) <= tol:
        classification = Classification.CONJUGATE_LINEAR
    else:
        classification = Classification.MIXED

    decomposition = Decomposition(
        T=T, P=P, Q=Q, phi1=phi1, phi2=phi2, unit=unit,
        residual_T_selfadjoint=residual_T_selfadjoint,
        residual_T_squares_to_one=residual_T_squares_to_one,
        residual_central=residual_central,
        residual_projection=residual_projection,
        residual_sum=residual_sum,
        residual_linear=residual_linear,
        residual_conjlinear=residual_conjlinear,
        residual_reconstruction=residual_reconstruction,
        center_dimension=center_dimension,
        classification=classification,
        restricted=restrict,
    )

    failures = {name: value for name, value in decomposition.residuals().items() if value > tol}
    if residual_reconstruction > reconstruction_tol:
        failures['reconstruction'] = residual_reconstruction
    if failures:
        summary = ", ".join(f"{name}={value:.3e}" for name, value in failures.items())
        logger.warning(f"Decomposition residuals above tolerance: {summary}")
        raise DecompositionError(
            f"Map is not a ring *-homomorphism within tolerance ({summary})", decomposition
        )

    logger.debug(f"Decomposed {domain} -> {codomain}: {classification.value}, center {center_dimension}")
    return decomposition


def classify(m: RealLinearMap, tol: float = 1e-8) -> Classification:
    """Linear, ConjugateLinear or Mixed; never Mixed when the generated center is trivial."""
    decomposition = decompose(m, tol)
    if decomposition.center_dimension == 1 and decomposition.classification is Classification.MIXED:
        logger.error("Mixed classification with a trivial generated center")
        raise DecompositionError("Trivial center but both P and Q are nonzero", decomposition)
    return decomposition.classification


def verify_parts(
    decomposition: Decomposition,
    trials: int = 100,
    seed: int = 0,
    tol: float = 1e-8
) -> Tuple[VerificationReport, VerificationReport]:
    """Verify phi1 and phi2 as unital maps into the corners P B P and Q B Q."""
    report1 = verify(decomposition.phi1, trials, seed, tol, unit=decomposition.P)
    report2 = verify(decomposition.phi2, trials, seed, tol, unit=decomposition.Q)
    return report1, report2


def projection_commutator_residual(
    m: RealLinearMap,
    decomposition: Decomposition,
    trials: int = 100,
    seed: int = 0
) -> float:
    """Largest ||[P, m(a)]|| and ||[Q, m(a)]|| over random a."""
    rng = make_rng(seed)
    images = m.apply_many([random_element(m.domain, rng) for _ in range(trials)])
    P, Q = decomposition.P, decomposition.Q
    return max(
        max(operator_norm(P @ y - y @ P), operator_norm(Q @ y - y @ Q)) for y in images
    )


def spectrum_containment_residual(
    m: RealLinearMap,
    a: Element,
    classification: Optional[Classification] = None
) -> float:
    """Largest distance from an eigenvalue of m(a) to the allowed spectrum of a.

    A unital complex-linear map cannot create spectrum: sigma(m(a)) lies in
    sigma(a). Conjugate-linear maps conjugate it, and a mixed map stays in
    sigma(a) together with its conjugate.
    """
    if classification is None:
        classification = classify(m)
    source = np.concatenate([np.linalg.eigvals(block) for block in a.blocks])
    if classification is Classification.LINEAR:
        allowed = source
    elif classification is Classification.CONJUGATE_LINEAR:
        allowed = source.conj()
    else:
        allowed = np.concatenate([source, source.conj()])
    image = np.concatenate([np.linalg.eigvals(block) for block in m(a).blocks])
    return float(max(np.min(np.abs(allowed - mu)) for mu in image))


def check_spectrum_containment(
    m: RealLinearMap,
    trials: int = 20,
    seed: int = 0,
    classification: Optional[Classification] = None
) -> float:
    """Worst spectrum_containment_residual over random elements."""
    if classification is None:
        classification = classify(m)
    rng = make_rng(seed)
    return max(
        spectrum_containment_residual(m, random_element(m.domain, rng), classification)
        for _ in range(trials)
    )
