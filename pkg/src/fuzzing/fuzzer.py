"""Fuzz every theorem over randomly generated homomorphisms."""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional
import logging

import numpy as np

from src.algebra.core import random_element
from src.decomposition import (
    Classification, check_spectrum_containment, decompose,
    projection_commutator_residual, verify_parts,
)
from src.errors import DecompositionError, HomCheckError
from src.fuzzing.generator import (
    MUTATION_KINDS, branch_kinds, mutate_invalid, random_hom, random_signature,
)
from src.homomorphisms.kernel import kernel, kernel_ideal_residuals
from src.homomorphisms.verification import (
    amplified_dilation_residual, check_contractivity, check_order_preservation,
    isometry_check, verify,
)
from src.spectral.norms import operator_norm

logger = logging.getLogger(__name__)

SOUNDNESS_TOLERANCE = 1e-9
SPECTRUM_TOLERANCE = 1e-6
NEGATIVE_THRESHOLD = 1e-3
MUTATION_TARGETS = {
    'break_mult': 'multiplicative',
    'break_star': 'star',
    'break_unital': 'unital',
}


@dataclass
class Counterexample:
    """A failed invariant with everything needed to replay the trial."""
    trial: int
    trial_seed: int
    description: str
    invariant: str
    residual: Optional[float]

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class TrialOutcome:
    trial: int
    trial_seed: int
    description: str
    contractivity_margin: Optional[float] = None
    classification: Optional[str] = None
    center_dimension: Optional[int] = None
    failures: List[Counterexample] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class FuzzReport:
    """Aggregate of a fuzz run; pass_count + fail_count = trials."""
    trials: int
    seed: int
    max_block_dim: int
    tolerance: float
    pass_count: int
    fail_count: int
    worst_contractivity_margin: Optional[float]
    counterexamples: List[Counterexample]
    classifications: Dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.fail_count == 0

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['counterexamples'] = [c.to_dict() for c in self.counterexamples]
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FuzzReport":
        fields = dict(data)
        fields['counterexamples'] = [Counterexample(**c) for c in data.get('counterexamples', [])]
        fields['classifications'] = dict(data.get('classifications', {}))
        return cls(**fields)


def trial_seeds(seed: int, trials: int) -> List[int]:
    """One independent integer seed per trial, derived from the master seed."""
    children = np.random.SeedSequence(seed).spawn(trials)
    return [int(child.generate_state(1)[0]) for child in children]


class TheoremFuzzer:
    """Run seeded trials of generate, verify, check and decompose."""

    def __init__(
        self,
        trials: int = 100,
        seed: int = 0,
        max_block_dim: int = 3,
        tol: float = 1e-8,
        samples: int = 100,
        workers: int = 1,
        include_negatives: bool = False,
        max_codomain_block_dim: int = 9,
        injectivity_threshold: float = 1e-8
    ):
        """Initialize fuzzer.

        Args:
            trials: Number of generated homomorphisms
            seed: Master seed; trial seeds are spawned from it
            max_block_dim: Largest domain block size
            tol: Tolerance for every checked residual
            samples: Elements drawn per check
            workers: Threads running trials; results do not depend on it
            include_negatives: Also check that every mutation is rejected
            max_codomain_block_dim: Size cap of a synthesized codomain block
            injectivity_threshold: Smallest singular value below which a map
                counts as non-injective in the isometry check
        """
        if trials < 1:
            raise ValueError(f"trials must be at least 1, got {trials}")
        if max_block_dim < 1:
            raise ValueError(f"max_block_dim must be at least 1, got {max_block_dim}")
        if workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")
        self.trials = trials
        self.seed = seed
        self.max_block_dim = max_block_dim
        self.tol = tol
        self.samples = samples
        self.workers = workers
        self.include_negatives = include_negatives
        self.max_codomain_block_dim = max_codomain_block_dim
        self.injectivity_threshold = injectivity_threshold

    @classmethod
    def from_config(cls, config, **overrides) -> "TheoremFuzzer":
        """Build from a ConfigManager; keyword overrides win over config values."""
        settings = {
            'trials': config.get('trials', 100),
            'seed': config.get('seed', 0),
            'max_block_dim': config.get('max_block_dim', 3),
            'tol': config.get('tolerance', 1e-8),
            'samples': config.get('fuzz_samples', 100),
            'workers': config.get('fuzz_workers', 1),
            'max_codomain_block_dim': config.get('max_codomain_block_dim', 9),
            'injectivity_threshold': config.get('injectivity_threshold', 1e-8),
        }
        settings.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**settings)

    def run_trial(self, index: int, trial_seed: int) -> TrialOutcome:
        """Generate one homomorphism and check every invariant on it."""
        rng = np.random.default_rng(trial_seed)
        domain = random_signature(self.max_block_dim, rng)
        allow_conjugate = bool(rng.integers(2))
        h = random_hom(domain, rng, allow_conjugate, self.max_codomain_block_dim)
        outcome = TrialOutcome(trial=index, trial_seed=trial_seed, description=h.describe())

        def fail(invariant: str, residual: Optional[float]) -> None:
            outcome.failures.append(Counterexample(
                trial=index, trial_seed=trial_seed, description=outcome.description,
                invariant=invariant,
                residual=None if residual is None else float(residual),
            ))

        stage = 'compile'
        try:
            m = h.compile()

            stage = 'verify'
            report = verify(m, self.samples, trial_seed, SOUNDNESS_TOLERANCE)
            for law in report.failed_laws():
                fail(f"verify.{law}", report.residuals()[law])
            if not report.passed:
                return outcome

            stage = 'contractivity'
            margin = check_contractivity(m, self.samples, trial_seed, self.tol, report)
            outcome.contractivity_margin = margin
            if margin < -self.tol:
                fail('contractivity', margin)

            stage = 'isometry'
            isometry = isometry_check(
                m, self.samples, trial_seed, self.tol,
                injectivity_threshold=self.injectivity_threshold, report=report,
            )
            if not isometry.consistent:
                fail('isometry', isometry.max_deviation)

            stage = 'order_preservation'
            holds, worst = check_order_preservation(m, max(1, self.samples // 4), trial_seed, self.tol)
            if not holds:
                fail('order_preservation', worst)

            stage = 'amplified_dilation'
            a = random_element(m.domain, rng)
            k = operator_norm(a) * (1.0 + rng.random())
            residual = amplified_dilation_residual(m, a, k) / (1.0 + k)
            if residual > self.tol:
                fail('amplified_dilation', residual)

            if not isometry.injective:
                stage = 'kernel_ideal'
                basis = kernel(m)
                for name, value in kernel_ideal_residuals(m, basis, 20, trial_seed).items():
                    if value > self.tol:
                        fail(f"kernel_ideal.{name}", value)

            stage = 'decompose'
            self._check_decomposition(m, h, trial_seed, outcome, fail)

            if self.include_negatives:
                for kind in MUTATION_KINDS:
                    stage = f"negative.{kind}"
                    bad = verify(mutate_invalid(h, kind, rng), self.samples, trial_seed, self.tol)
                    target = bad.residuals()[MUTATION_TARGETS[kind]]
                    if bad.passed or target < NEGATIVE_THRESHOLD:
                        fail(stage, target)
        except (HomCheckError, ValueError, np.linalg.LinAlgError) as e:
            logger.error(f"Trial {index} (seed {trial_seed}) raised in {stage}: {e}")
            fail(stage, None)

        logger.debug(
            f"Trial {index}: {outcome.description} -> "
            f"{'ok' if outcome.passed else f'{len(outcome.failures)} failures'}"
        )
        return outcome

    def _check_decomposition(self, m, h, trial_seed: int, outcome: TrialOutcome, fail) -> None:
        try:
            decomposition = decompose(m, self.tol)
        except DecompositionError as e:
            for name, value in e.decomposition.residuals().items():
                if value > self.tol:
                    fail(f"decompose.{name}", value)
            if e.decomposition.residual_reconstruction > 1e-10:
                fail('decompose.reconstruction', e.decomposition.residual_reconstruction)
            return

        classification = decomposition.classification
        outcome.classification = classification.value
        outcome.center_dimension = decomposition.center_dimension
        if classification is Classification.MIXED:
            if decomposition.center_dimension == 1:
                fail('trivial_center', float(decomposition.center_dimension))
            kinds = set(branch_kinds(h))
            if kinds != {'plain', 'conjugated'}:
                fail('mixed_origin', None)

        report1, report2 = verify_parts(decomposition, self.samples, trial_seed, self.tol)
        for name, report in (('phi1', report1), ('phi2', report2)):
            for law in report.failed_laws():
                fail(f"{name}.{law}", report.residuals()[law])

        commutator = projection_commutator_residual(m, decomposition, self.samples, trial_seed)
        if commutator > self.tol:
            fail('projection_commutation', commutator)

        spectrum = check_spectrum_containment(m, 20, trial_seed, classification)
        if spectrum > SPECTRUM_TOLERANCE:
            fail('spectrum_containment', spectrum)

    def run(self) -> FuzzReport:
        """Run every trial and aggregate the outcomes in trial order."""
        seeds = trial_seeds(self.seed, self.trials)
        logger.info(
            f"Fuzzing {self.trials} trials (seed {self.seed}, max block {self.max_block_dim}, "
            f"{self.workers} workers)"
        )
        if self.workers == 1:
            outcomes = [self.run_trial(i, s) for i, s in enumerate(seeds)]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                outcomes = list(pool.map(self.run_trial, range(self.trials), seeds))

        margins = [o.contractivity_margin for o in outcomes if o.contractivity_margin is not None]
        classifications: Dict[str, int] = {}
        for o in outcomes:
            if o.classification is not None:
                classifications[o.classification] = classifications.get(o.classification, 0) + 1

        fail_count = sum(1 for o in outcomes if not o.passed)
        report = FuzzReport(
            trials=self.trials,
            seed=self.seed,
            max_block_dim=self.max_block_dim,
            tolerance=self.tol,
            pass_count=self.trials - fail_count,
            fail_count=fail_count,
            worst_contractivity_margin=min(margins) if margins else None,
            counterexamples=[c for o in outcomes for c in o.failures],
            classifications=dict(sorted(classifications.items())),
        )
        if report.passed:
            logger.info(f"All {self.trials} trials passed; worst margin {report.worst_contractivity_margin}")
        else:
            logger.warning(f"{fail_count} of {self.trials} trials failed")
        return report


def fuzz_theorems(
    trials: int,
    seed: int,
    max_block_dim: int,
    tol: float = 1e-8,
    samples: int = 100,
    workers: int = 1,
    include_negatives: bool = False
) -> FuzzReport:
    return TheoremFuzzer(
        trials=trials, seed=seed, max_block_dim=max_block_dim, tol=tol,
        samples=samples, workers=workers, include_negatives=include_negatives,
    ).run()
