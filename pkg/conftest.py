"""Shared fixtures and hypothesis strategies for the test suite."""
import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.algebra.core import AlgebraSignature, Element
from src.fuzzing.generator import plain_and_conjugate
from src.homomorphisms.maps import RealLinearMap
from src.homomorphisms.structured import EntrywiseConjugation, IdentityOn

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))

C = AlgebraSignature.of(1)


def signatures(max_blocks: int = 3, max_dim: int = 4):
    """Block signatures with at most max_blocks blocks of size at most max_dim."""
    return st.lists(st.integers(1, max_dim), min_size=1, max_size=max_blocks).map(
        lambda dims: AlgebraSignature(tuple(dims))
    )


seeds = st.integers(min_value=0, max_value=2**32 - 1)


def scalar_element(z: complex) -> Element:
    return Element(C, [np.array([[z]])])


@pytest.fixture
def identity_c() -> RealLinearMap:
    return IdentityOn(C).compile()


@pytest.fixture
def conjugation_c() -> RealLinearMap:
    return EntrywiseConjugation(C).compile()


@pytest.fixture
def doubling_c() -> RealLinearMap:
    return RealLinearMap(C, C, 2.0 * np.eye(2))


@pytest.fixture
def plain_and_conjugate_c():
    """z -> (z, conj z) into C + C."""
    return plain_and_conjugate(C)


@pytest.fixture
def tmp_journal(tmp_path):
    return str(tmp_path / "journal.db")
