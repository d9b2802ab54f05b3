#!/usr/bin/env python
"""Tests for the split into complex-linear and conjugate-linear parts."""
import numpy as np
import pytest

from conftest import C, scalar_element
from src.algebra import AlgebraSignature, Element, identity, random_element
from src.decomposition import (
    Classification, check_spectrum_containment, classify, decompose,
    projection_commutator_residual, spectrum_containment_residual, verify_parts,
)
from src.errors import DecompositionError
from src.fuzzing.generator import plain_and_conjugate, random_hom
from src.homomorphisms import BlockEmbedding, DirectSumOfBranches, EntrywiseConjugation, IdentityOn, compose_all


def test_identity_is_linear(identity_c):
    d = decompose(identity_c)
    assert d.classification is Classification.LINEAR
    assert d.T.allclose(identity(C), atol=1e-12)
    assert d.Q.allclose(scalar_element(0.0), atol=1e-12)
    assert d.center_dimension == 1
    assert classify(identity_c) is Classification.LINEAR


def test_conjugation_is_conjugate_linear(conjugation_c):
    d = decompose(conjugation_c)
    assert d.classification is Classification.CONJUGATE_LINEAR
    assert d.T.allclose(scalar_element(-1.0), atol=1e-12)
    assert d.P.allclose(scalar_element(0.0), atol=1e-12)
    assert d.residual_reconstruction <= 1e-10


def test_plain_and_conjugate_is_mixed(plain_and_conjugate_c):
    m = plain_and_conjugate_c.compile()
    d = decompose(m)
    assert d.classification is Classification.MIXED
    assert d.center_dimension == 2
    c2 = AlgebraSignature.of(1, 1)
    assert d.P.allclose(Element(c2, [np.array([[1.0]]), np.array([[0.0]])]), atol=1e-10)
    assert d.Q.allclose(Element(c2, [np.array([[0.0]]), np.array([[1.0]])]), atol=1e-10)
    assert max(d.residuals().values()) <= 1e-8


def test_parts_reconstruct_and_have_the_right_linearity(plain_and_conjugate_c):
    m = plain_and_conjugate_c.compile()
    d = decompose(m)
    a = random_element(C, 8)
    assert (d.phi1(a) + d.phi2(a)).allclose(m(a), atol=1e-10)
    assert d.phi1(a.scale(1j)).allclose(d.phi1(a).scale(1j), atol=1e-10)
    assert d.phi2(a.scale(1j)).allclose(d.phi2(a).scale(-1j), atol=1e-10)


def test_parts_verify_into_their_corners(plain_and_conjugate_c):
    d = decompose(plain_and_conjugate_c.compile())
    first, second = verify_parts(d, trials=30, seed=4)
    assert first.passed and second.passed


def test_projections_commute_with_the_image(plain_and_conjugate_c):
    m = plain_and_conjugate_c.compile()
    d = decompose(m)
    assert projection_commutator_residual(m, d, trials=30, seed=1) <= 1e-10


def test_diagonal_pair_into_m2_is_mixed():
    m = compose_all([
        DirectSumOfBranches((IdentityOn(C), EntrywiseConjugation(C))),
        BlockEmbedding(AlgebraSignature.of(1, 1), ((1, 1),)),
    ]).compile()
    d = decompose(m)
    assert d.T.allclose(Element(AlgebraSignature.of(2), [np.diag([1.0, -1.0])]), atol=1e-12)
    assert d.classification is Classification.MIXED
    assert d.center_dimension == 2
    first, second = verify_parts(d, trials=20, seed=4)
    assert first.passed and second.passed


def test_unrestricted_and_strict_modes():
    sig = AlgebraSignature.of(2)
    m = compose_all([IdentityOn(sig), BlockEmbedding(sig, ((2,),))]).compile()
    loose = decompose(m, restrict=False)
    assert not loose.restricted
    assert loose.classification is Classification.LINEAR
    strict = decompose(m, strict=True)
    assert strict.restricted
    assert strict.residual_central <= 1e-10


def test_non_homomorphism_raises_with_partial_result(doubling_c):
    with pytest.raises(DecompositionError) as info:
        decompose(doubling_c)
    partial = info.value.decomposition
    assert partial is not None
    # T = 2 and the generated unit is m(1) = 2
    assert partial.residual_T_squares_to_one == pytest.approx(2.0)


def test_spectrum_containment():
    sig = AlgebraSignature.of(2)
    a = Element(sig, [np.array([[1j, 1.0], [0.0, 2.0]])])
    linear = compose_all([IdentityOn(sig), BlockEmbedding(sig, ((1,), (2,)))]).compile()
    conjugate = EntrywiseConjugation(sig).compile()
    mixed = plain_and_conjugate(sig).compile()
    assert spectrum_containment_residual(linear, a, Classification.LINEAR) <= 1e-10
    assert spectrum_containment_residual(conjugate, a, Classification.CONJUGATE_LINEAR) <= 1e-10
    assert spectrum_containment_residual(conjugate, a, Classification.LINEAR) >= 1.0
    assert spectrum_containment_residual(mixed, a) <= 1e-10


def test_trivial_center_is_never_mixed():
    for seed in range(20):
        m = random_hom(AlgebraSignature.of(2), seed, allow_conjugate=True).compile()
        d = decompose(m)
        if d.center_dimension == 1:
            assert d.classification is not Classification.MIXED
        assert check_spectrum_containment(m, trials=5, seed=seed, classification=d.classification) <= 1e-6
