"""Random homomorphisms, negative mutations and theorem fuzzing."""
from .fuzzer import Counterexample, FuzzReport, TheoremFuzzer, TrialOutcome, fuzz_theorems, trial_seeds
from .generator import (
    MUTATION_KINDS, branch_kinds, mutate_invalid, plain_and_conjugate, random_hom,
    random_signature, random_unitary, walk,
)

__all__ = [
    'Counterexample', 'FuzzReport', 'MUTATION_KINDS', 'TheoremFuzzer', 'TrialOutcome',
    'branch_kinds', 'fuzz_theorems', 'mutate_invalid', 'plain_and_conjugate', 'random_hom',
    'random_signature', 'random_unitary', 'trial_seeds', 'walk',
]
