"""Seeded construction of genuine homomorphisms and of near-misses.

Every map is a constructor tree: a direct sum of plain or conjugated
branches, a multiplicity embedding that fills every codomain block, then
conjugation by a random unitary of the codomain. All randomness flows
from the generator handed in, so a tree is reproducible from its seed.
"""
from typing import Iterator, List, Sequence, Tuple
import logging

import numpy as np

from src.algebra.core import AlgebraSignature, Element, SeedLike, identity, make_rng, realify
from src.homomorphisms.maps import RealLinearMap
from src.homomorphisms.structured import (
    BlockEmbedding, Composition, DirectSumOfBranches, EntrywiseConjugation, IdentityOn,
    StructuredHom, UnitaryConjugation, compose_all,
)

logger = logging.getLogger(__name__)

MUTATION_KINDS = ('break_mult', 'break_star', 'break_unital')
MAX_BLOCKS = 3
MAX_MULTIPLICITY = 3


def random_unitary(n: int, seed: SeedLike = None) -> np.ndarray:
    """Haar unitary from the QR factorization of a complex Gaussian matrix."""
    if n < 1:
        raise ValueError(f"Unitary size must be at least 1, got {n}")
    rng = make_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_signature(max_block_dim: int, seed: SeedLike = None,
                     max_blocks: int = MAX_BLOCKS) -> AlgebraSignature:
    if max_block_dim < 1:
        raise ValueError(f"max_block_dim must be at least 1, got {max_block_dim}")
    rng = make_rng(seed)
    count = int(rng.integers(1, max_blocks + 1))
    return AlgebraSignature(tuple(int(n) for n in rng.integers(1, max_block_dim + 1, size=count)))


def _multiplicity_row(rng: np.random.Generator, dims: Sequence[int], cap: int) -> Tuple[int, ...]:
    row = [int(m) for m in rng.integers(0, MAX_MULTIPLICITY + 1, size=len(dims))]
    if sum(row) == 0:
        row[int(rng.integers(len(dims)))] = 1
    # shrink the largest contribution until the block fits
    while sum(m * n for m, n in zip(row, dims)) > cap and sum(row) > 1:
        j = max((k for k in range(len(row)) if row[k] > 0), key=lambda k: row[k] * dims[k])
        row[j] -= 1
    return tuple(row)


def random_hom(
    domain_sig: AlgebraSignature,
    seed: SeedLike = None,
    allow_conjugate: bool = True,
    max_codomain_block_dim: int = 9
) -> StructuredHom:
    """Random unital ring *-homomorphism out of domain_sig.

    With allow_conjugate one or two branches are drawn, each plain or
    entrywise-conjugated; without it there is one plain branch.
    """
    rng = make_rng(seed)
    if allow_conjugate:
        count = int(rng.integers(1, 3))
        branches = [
            EntrywiseConjugation(domain_sig) if rng.random() < 0.5 else IdentityOn(domain_sig)
            for _ in range(count)
        ]
    else:
        branches = [IdentityOn(domain_sig)]
    stacked = branches[0] if len(branches) == 1 else DirectSumOfBranches(tuple(branches))

    dims = stacked.codomain.block_dims
    cap = max(max_codomain_block_dim, max(dims))
    rows = tuple(
        _multiplicity_row(rng, dims, cap) for _ in range(int(rng.integers(1, 4)))
    )
    embedding = BlockEmbedding(stacked.codomain, rows)

    codomain = embedding.codomain
    unitary = Element(codomain, [random_unitary(n, rng) for n in codomain.block_dims])
    h = compose_all([stacked, embedding, UnitaryConjugation(unitary)])
    logger.debug(f"Generated {h.describe()}")
    return h


def plain_and_conjugate(sig: AlgebraSignature) -> StructuredHom:
    """a -> (a, conj(a)): multiplicative and *-preserving but neither linear nor conjugate-linear."""
    return DirectSumOfBranches((IdentityOn(sig), EntrywiseConjugation(sig)))


def walk(h: StructuredHom) -> Iterator[StructuredHom]:
    """Every node of a constructor tree, parents first."""
    yield h
    if isinstance(h, Composition):
        yield from walk(h.first)
        yield from walk(h.second)
    elif isinstance(h, DirectSumOfBranches):
        for branch in h.branches:
            yield from walk(branch)


def branch_kinds(h: StructuredHom) -> List[str]:
    """'plain' and 'conjugated' for each leaf branch of the tree."""
    kinds = []
    for node in walk(h):
        if isinstance(node, IdentityOn):
            kinds.append('plain')
        elif isinstance(node, EntrywiseConjugation):
            kinds.append('conjugated')
    return kinds


def mutate_invalid(h: StructuredHom, kind: str, seed: SeedLike = None) -> RealLinearMap:
    """Perturb the compiled matrix of h so that the targeted law fails.

    break_unital adds delta 1_B along the unit direction (delta in [0.01, 0.02)),
    break_mult scales the whole map by c in [2, 3), and break_star adds
    i delta 1_B along the unit direction (delta in [0.05, 0.1)).

    The targeted residual is not the only one that moves:

    - break_unital: multiplicativity also fails, about (delta + delta^2) / 2 at a = b = 1
    - break_mult: unitality also fails with residual c - 1
    - break_star: unitality and multiplicativity also fail

    The star residual stays at rounding level for break_unital and break_mult,
    and the rational scaling and real linearity residuals never move.
    """
    if kind not in MUTATION_KINDS:
        raise ValueError(f"Unknown mutation kind {kind!r}; expected one of {MUTATION_KINDS}")
    rng = make_rng(seed)
    m = h.compile()
    unit_in = realify(identity(m.domain))
    weights = unit_in / float(unit_in @ unit_in)
    unit_out = identity(m.codomain)

    if kind == 'break_unital':
        delta = 0.01 * (1.0 + rng.random())
        matrix = m.matrix + delta * np.outer(realify(unit_out), weights)
    elif kind == 'break_mult':
        matrix = (2.0 + rng.random()) * m.matrix
    else:
        delta = 0.05 * (1.0 + rng.random())
        matrix = m.matrix + delta * np.outer(realify(unit_out.scale(1j)), weights)
    return RealLinearMap(m.domain, m.codomain, matrix)
