"""Verification of the ring *-homomorphism laws and of their consequences.

A map passes when it is multiplicative, *-preserving and unital within
tolerance; the rational and irrational scaling laws are then measured as
consequences. Contractivity, injective-iff-isometric and order
preservation are checked on verified maps only.
"""
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging
import math

import numpy as np

from src.algebra.core import (
    AlgebraSignature, Element, SeedLike, adjoint_batch, identity, make_rng, random_element,
    random_positive, random_selfadjoint, real_basis, realify, realify_batch, unrealify_batch,
)
from src.algebra.linalg import smallest_singular_value
from src.errors import UnverifiedMapError
from src.homomorphisms.kernel import kernel
from src.homomorphisms.maps import RealLinearMap, amplify2
from src.spectral.norms import (
    batch_operator_norm, dilation, hermitian_eigenvalues, operator_norm,
)

logger = logging.getLogger(__name__)

RATIONAL_SCALARS = (0.5, -0.5, 2.0 / 3.0, -2.0 / 3.0, 7.0 / 5.0, -7.0 / 5.0, 3.0, -3.0)
IRRATIONAL_SCALARS = (math.sqrt(2.0), -math.pi, math.e)
EXHAUSTIVE_DIMENSION = 16


@dataclass
class VerificationReport:
    """Per-law residuals of one verification sweep."""
    residual_multiplicative: float
    residual_star: float
    residual_unital: float
    residual_rational_scaling: float
    residual_real_linearity: float
    contractivity_margin: float
    passed: bool
    samples_used: int
    seed: int
    tolerance: float
    residual_additive: float = 0.0
    
    LAWS = ('multiplicative', 'star', 'unital', 'rational_scaling', 'real_linearity')
    
    def residuals(self) -> Dict[str, float]:
        return {law: getattr(self, f"residual_{law}") for law in self.LAWS}
    
    def failed_laws(self) -> List[str]:
        return [law for law, value in self.residuals().items() if value > self.tolerance]
    
    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
    
    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerificationReport":
        return cls(**data)


@dataclass
class IsometryReport:
    """Outcome of the injective-iff-isometric check."""
    injective: bool
    max_deviation: float
    smallest_singular_value: float
    kernel_deviation: Optional[float]
    consistent: bool
    samples_used: int
    
    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _norms(vectors: np.ndarray, sig: AlgebraSignature) -> np.ndarray:
    return batch_operator_norm(unrealify_batch(vectors, sig))


def _products(lefts: np.ndarray, rights: np.ndarray, sig: AlgebraSignature) -> np.ndarray:
    return realify_batch([
        a @ b for a, b in zip(unrealify_batch(lefts, sig), unrealify_batch(rights, sig))
    ])


def _pair_residual(m: RealLinearMap, lefts: np.ndarray, rights: np.ndarray) -> float:
    """Largest ||m(ab) - m(a)m(b)|| / (1 + ||a|| ||b||) over paired columns."""
    if lefts.shape[1] == 0:
        return 0.0
    domain, codomain = m.domain, m.codomain
    images = m.matrix @ _products(lefts, rights, domain)
    expected = _products(m.matrix @ lefts, m.matrix @ rights, codomain)
    weights = 1.0 + _norms(lefts, domain) * _norms(rights, domain)
    return float(np.max(_norms(images - expected, codomain) / weights))


def _scaling_residual(m: RealLinearMap, columns: np.ndarray, images: np.ndarray,
                      scalars: Sequence[float]) -> float:
    return max(
        float(np.max(_norms(m.matrix @ (k * columns) - k * images, m.codomain)))
        for k in scalars
    )


def verify(
    m: RealLinearMap,
    trials: int = 100,
    seed: int = 0,
    tol: float = 1e-8,
    unit: Optional[Element] = None
) -> VerificationReport:
    """Measure every law of a unital *-preserving ring homomorphism.
    
    Multiplicativity is checked on all pairs of real basis elements when the
    domain has complex dimension at most 16 (bilinearity makes that a proof
    for R-linear maps) and always on `trials` random pairs, with residuals
    normalized by 1 + ||a|| ||b||.
    
    Args:
        m: Candidate map
        trials: Number of random samples and random pairs
        seed: Seed of the sample stream
        tol: Tolerance for every residual
        unit: Unit the map must hit (default: 1_B); corner maps pass P here
        
    Returns:
        VerificationReport; failures are data, not exceptions
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    rng = make_rng(seed)
    domain, codomain = m.domain, m.codomain
    
    samples = np.column_stack([realify(random_element(domain, rng)) for _ in range(trials)])
    partners = np.column_stack([realify(random_element(domain, rng)) for _ in range(trials)])
    lefts, rights = samples, partners
    if domain.dimension <= EXHAUSTIVE_DIMENSION:
        basis = np.eye(domain.real_dimension)
        count = basis.shape[1]
        lefts = np.hstack([lefts, np.repeat(basis, count, axis=1)])
        rights = np.hstack([rights, np.tile(basis, (1, count))])
    residual_multiplicative = _pair_residual(m, lefts, rights)
    
    columns = np.hstack([np.eye(domain.real_dimension), samples])
    images = m.matrix @ columns
    adjoints = realify_batch(adjoint_batch(unrealify_batch(columns, domain)))
    image_adjoints = realify_batch(adjoint_batch(unrealify_batch(images, codomain)))
    residual_star = float(np.max(_norms(m.matrix @ adjoints - image_adjoints, codomain)))
    
    target = unit if unit is not None else identity(codomain)
    residual_unital = operator_norm(m(identity(domain)) - target)
    
    residual_rational = _scaling_residual(m, columns, images, RATIONAL_SCALARS)
    residual_real = _scaling_residual(m, columns, images, IRRATIONAL_SCALARS)
    
    margin = float(np.min(_norms(columns, domain) - _norms(images, codomain)))
    
    report = VerificationReport(
        residual_multiplicative=residual_multiplicative,
        residual_star=residual_star,
        residual_unital=residual_unital,
        residual_rational_scaling=residual_rational,
        residual_real_linearity=residual_real,
        contractivity_margin=margin,
        passed=False,
        samples_used=lefts.shape[1] + columns.shape[1],
        seed=int(seed),
        tolerance=tol,
    )
    report.passed = not report.failed_laws()
    if report.passed:
        logger.debug(f"Map {m.domain} -> {m.codomain} verified on {report.samples_used} samples")
    else:
        logger.warning(f"Map {m.domain} -> {m.codomain} failed laws: {', '.join(report.failed_laws())}")
    return report


def _require_verified(m: RealLinearMap, report: Optional[VerificationReport],
                      trials: int, seed: int, tol: float, operation: str) -> VerificationReport:
    if report is None:
        report = verify(m, trials, seed, tol)
    if not report.passed:
        logger.error(f"{operation} called on a map that fails verification")
        raise UnverifiedMapError(
            f"{operation} needs a verified homomorphism; failed laws: {report.failed_laws()}",
            report
        )
    return report


def contractivity_samples(m: RealLinearMap, trials: int, seed: SeedLike) -> List[Element]:
    """Random, scaled-basis, selfadjoint and positive samples of the domain."""
    rng = make_rng(seed)
    domain = m.domain
    samples = [random_element(domain, rng) for _ in range(trials)]
    samples += [e.scale(k) for e in real_basis(domain) for k in (0.5, 3.0)]
    extra = max(1, trials // 4)
    samples += [random_selfadjoint(domain, rng) for _ in range(extra)]
    samples += [random_positive(domain, rng) for _ in range(extra)]
    return samples


def check_contractivity(
    m: RealLinearMap,
    trials: int = 100,
    seed: int = 0,
    tol: float = 1e-8,
    report: Optional[VerificationReport] = None
) -> float:
    """Smallest ||a|| - ||m(a)|| over the samples; contract: >= -tol for verified maps.
    
    Raises:
        UnverifiedMapError: the map does not verify
    """
    _require_verified(m, report, trials, seed, tol, "check_contractivity")
    samples = contractivity_samples(m, trials, seed)
    images = m.apply_many(samples)
    margin = min(operator_norm(a) - operator_norm(fa) for a, fa in zip(samples, images))
    if margin < -tol:
        logger.error(f"Contractivity violated: margin {margin:.3e} on a verified map")
    return margin


def isometry_check(
    m: RealLinearMap,
    trials: int = 100,
    seed: int = 0,
    tol: float = 1e-8,
    injectivity_threshold: float = 1e-8,
    report: Optional[VerificationReport] = None
) -> IsometryReport:
    """Check that a verified map is injective exactly when it is isometric.
    
    Injectivity is decided by the smallest singular value of the matrix.
    Injective maps must keep every sampled norm within tol; non-injective
    maps must send some unit-norm kernel element to (nearly) zero.
    """
    _require_verified(m, report, trials, seed, tol, "isometry_check")
    sigma = smallest_singular_value(m.matrix)
    injective = sigma > injectivity_threshold
    
    samples = contractivity_samples(m, trials, seed)
    images = m.apply_many(samples)
    max_deviation = max(abs(operator_norm(fa) - operator_norm(a)) for a, fa in zip(samples, images))
    
    kernel_deviation = None
    if injective:
        consistent = max_deviation <= tol
    else:
        witnesses = [x.scale(1.0 / operator_norm(x)) for x in kernel(m)]
        deviations = [abs(operator_norm(fx) - 1.0) for fx in m.apply_many(witnesses)]
        kernel_deviation = max(deviations) if deviations else 0.0
        max_deviation = max(max_deviation, kernel_deviation)
        consistent = bool(deviations) and kernel_deviation >= 1.0 - tol
    
    if not consistent:
        logger.error(
            f"Injective/isometric mismatch: injective={injective}, deviation={max_deviation:.3e}"
        )
    return IsometryReport(
        injective=bool(injective),
        max_deviation=float(max_deviation),
        smallest_singular_value=sigma,
        kernel_deviation=kernel_deviation,
        consistent=bool(consistent),
        samples_used=len(samples),
    )


def check_order_preservation(
    m: RealLinearMap,
    trials: int = 100,
    seed: int = 0,
    tol: float = 1e-8
) -> Tuple[bool, float]:
    """For random a <= b (b - a = v*v) check m(a) <= m(b).
    
    Returns:
        (holds, worst) where worst is the smallest eigenvalue of m(b) - m(a)
        divided by 1 + its norm
    """
    rng = make_rng(seed)
    worst = math.inf
    for _ in range(trials):
        a = random_positive(m.domain, rng)
        b = a + random_positive(m.domain, rng)
        gap = m(b) - m(a)
        symmetric = (gap + gap.adjoint()).scale(0.5)
        lowest = hermitian_eigenvalues(symmetric).min()
        asymmetry = operator_norm(gap - gap.adjoint())
        worst = min(worst, (lowest - asymmetry) / (1.0 + operator_norm(gap)))
    holds = worst >= -tol
    if not holds:
        logger.warning(f"Order preservation failed: worst normalized eigenvalue {worst:.3e}")
    return holds, float(worst)


def amplified_dilation_residual(m: RealLinearMap, a: Element, k: float) -> float:
    """Distance between m2([[k1, a], [a*, k1]]) and [[k1, m(a)], [m(a)*, k1]]."""
    image = amplify2(m)(dilation(a, k))
    fa = m(a)
    unit = identity(m.codomain).scale(k)
    expected = Element.from_quadrants(unit, fa, fa.adjoint(), unit)
    return operator_norm(image - expected)
