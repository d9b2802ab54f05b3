#!/usr/bin/env python
"""Tests for random homomorphisms, negative mutations and the theorem fuzzer."""
import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import C, seeds, signatures
from src.algebra import AlgebraSignature, identity
from src.fuzzing import (
    MUTATION_KINDS, FuzzReport, TheoremFuzzer, branch_kinds, fuzz_theorems, mutate_invalid,
    plain_and_conjugate, random_hom, random_signature, random_unitary, trial_seeds, walk,
)
from src.homomorphisms import EntrywiseConjugation, IdentityOn, verify
from src.spectral import operator_norm


def test_random_unitary():
    assert abs(abs(random_unitary(1, 3)[0, 0]) - 1.0) <= 1e-12
    assert np.array_equal(random_unitary(4, 9), random_unitary(4, 9))
    u = random_unitary(3, 5)
    assert np.linalg.norm(u.conj().T @ u - np.eye(3), 2) <= 1e-12
    with pytest.raises(ValueError):
        random_unitary(0)


def test_random_signature_bounds():
    rng = np.random.default_rng(0)
    for _ in range(50):
        sig = random_signature(3, rng)
        assert 1 <= sig.num_blocks <= 3
        assert max(sig.block_dims) <= 3
    with pytest.raises(ValueError):
        random_signature(0)


@given(signatures(max_dim=3), seeds, st.booleans())
def test_random_homs_verify(sig, seed, allow_conjugate):
    h = random_hom(sig, seed, allow_conjugate)
    assert h.domain == sig
    assert max(h.codomain.block_dims) <= 9
    report = verify(h.compile(), trials=30, seed=seed, tol=1e-9)
    assert report.passed
    if not allow_conjugate:
        assert 'conjugated' not in branch_kinds(h)


def test_random_homs_on_m2_sweep():
    sig = AlgebraSignature.of(2)
    for seed in range(1000):
        report = verify(random_hom(sig, seed).compile(), trials=10, seed=seed, tol=1e-9)
        assert max(report.residuals().values()) <= 1e-9


def test_random_hom_is_deterministic():
    sig = AlgebraSignature.of(2, 1)
    first, second = random_hom(sig, 17), random_hom(sig, 17)
    assert first.describe() == second.describe()
    assert np.array_equal(first.compile().matrix, second.compile().matrix)


def test_walk_and_branch_kinds():
    h = plain_and_conjugate(C)
    nodes = list(walk(h))
    assert nodes[0] is h
    assert any(isinstance(n, IdentityOn) for n in nodes)
    assert any(isinstance(n, EntrywiseConjugation) for n in nodes)
    assert sorted(branch_kinds(h)) == ['conjugated', 'plain']


def test_mutations_on_the_identity():
    h = IdentityOn(C)
    unital = verify(mutate_invalid(h, 'break_unital', 0), trials=20)
    assert 0.01 <= unital.residual_unital < 0.02
    assert not unital.passed


def test_break_mult_on_conjugation():
    report = verify(mutate_invalid(EntrywiseConjugation(C), 'break_mult', 0), trials=20)
    assert report.residual_multiplicative >= 1.0
    assert not report.passed


def test_mutation_side_effects_on_other_laws():
    unital = verify(mutate_invalid(IdentityOn(C), 'break_unital', 0), trials=20)
    assert unital.residual_multiplicative > 1e-3
    assert unital.residual_star <= 1e-12
    scaled = verify(mutate_invalid(IdentityOn(C), 'break_mult', 0), trials=20)
    assert scaled.residual_unital >= 1.0
    assert scaled.residual_star <= 1e-12
    for kind in MUTATION_KINDS:
        report = verify(mutate_invalid(EntrywiseConjugation(C), kind, 3), trials=20)
        assert report.residual_rational_scaling <= 1e-10
        assert report.residual_real_linearity <= 1e-10


def test_unknown_mutation():
    with pytest.raises(ValueError):
        mutate_invalid(IdentityOn(C), 'break_everything')


def test_negative_suite():
    rng = np.random.default_rng(8)
    targets = {'break_mult': 'multiplicative', 'break_star': 'star', 'break_unital': 'unital'}
    for seed in range(50):
        h = random_hom(random_signature(3, rng), seed)
        for kind in MUTATION_KINDS:
            report = verify(mutate_invalid(h, kind, seed), trials=30, seed=seed)
            assert not report.passed
            assert report.residuals()[targets[kind]] >= 1e-3


def test_trial_seeds_are_stable():
    assert trial_seeds(42, 5) == trial_seeds(42, 5)
    assert trial_seeds(42, 5)[:3] == trial_seeds(42, 3)
    assert len(set(trial_seeds(1, 100))) == 100


def test_small_fuzz_run_passes():
    report = fuzz_theorems(trials=10, seed=3, max_block_dim=2, samples=30, include_negatives=True)
    assert report.fail_count == 0
    assert report.pass_count + report.fail_count == report.trials == 10
    assert report.counterexamples == []
    assert report.worst_contractivity_margin >= -1e-8
    assert sum(report.classifications.values()) == 10


def test_fuzz_report_is_deterministic_and_round_trips():
    first = fuzz_theorems(trials=1, seed=7, max_block_dim=3, samples=20)
    second = fuzz_theorems(trials=1, seed=7, max_block_dim=3, samples=20)
    assert first.to_dict() == second.to_dict()
    assert FuzzReport.from_dict(first.to_dict()).to_dict() == first.to_dict()


def test_workers_do_not_change_results():
    serial = TheoremFuzzer(trials=6, seed=11, max_block_dim=2, samples=20).run()
    parallel = TheoremFuzzer(trials=6, seed=11, max_block_dim=2, samples=20, workers=3).run()
    assert serial.to_dict() == parallel.to_dict()


def test_fuzzer_validates_its_arguments():
    with pytest.raises(ValueError):
        TheoremFuzzer(trials=0)
    with pytest.raises(ValueError):
        TheoremFuzzer(max_block_dim=0)
    with pytest.raises(ValueError):
        TheoremFuzzer(workers=0)


def test_counterexample_is_recorded_for_exceptions(monkeypatch):
    import src.fuzzing.fuzzer as fuzzer_module

    def broken(*args, **kwargs):
        raise ValueError("boom")

    monkeypatch.setattr(fuzzer_module, 'check_order_preservation', broken)
    report = TheoremFuzzer(trials=2, seed=0, max_block_dim=1, samples=10).run()
    assert report.fail_count == 2
    assert {c.invariant for c in report.counterexamples} == {'order_preservation'}
    assert all(c.residual is None for c in report.counterexamples)


def test_fuzzer_reads_injectivity_threshold_from_config(tmp_path):
    from src.config_manager import ConfigManager
    path = tmp_path / "config.yaml"
    path.write_text("injectivity_threshold: 100.0\nfuzz_samples: 10\nmax_block_dim: 1\n")
    fuzzer = TheoremFuzzer.from_config(ConfigManager(path), trials=2, seed=0)
    assert fuzzer.injectivity_threshold == 100.0
    assert fuzzer.samples == 10
    report = fuzzer.run()
    assert report.fail_count == 2
    assert {c.invariant for c in report.counterexamples} == {'isometry'}


@pytest.mark.slow
def test_acceptance_fuzz_run():
    report = fuzz_theorems(trials=500, seed=42, max_block_dim=3, samples=100, workers=4)
    assert report.fail_count == 0, report.counterexamples[:5]
    assert report.worst_contractivity_margin >= -1e-8


@pytest.mark.slow
def test_acceptance_negative_run():
    report = fuzz_theorems(trials=50, seed=42, max_block_dim=3, samples=100, include_negatives=True)
    assert report.fail_count == 0, report.counterexamples[:5]


def test_identity_norm_is_preserved_by_generated_maps():
    h = random_hom(AlgebraSignature.of(3, 1), 5)
    assert operator_norm(h.compile()(identity(h.domain))) == pytest.approx(1.0, abs=1e-12)
