"""Structured homomorphisms: constructor trees that compile to real matrices.

The constructors are identity maps, block multiplicity embeddings,
conjugation by a unitary, entrywise complex conjugation, direct sums of
branches and composition. Every tree built from them is a unital
*-preserving ring homomorphism.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Sequence, Tuple
import logging

import numpy as np
import scipy.linalg

from src.algebra.core import AlgebraSignature, Element, identity, real_basis, realify
from src.errors import SignatureMismatchError, StructureError
from src.homomorphisms.maps import RealLinearMap

logger = logging.getLogger(__name__)

UNITARY_TOLERANCE = 1e-10


class StructuredHom(ABC):
    """A node of a homomorphism constructor tree."""
    
    @property
    @abstractmethod
    def domain(self) -> AlgebraSignature:
        """Signature of the source algebra."""
    
    @property
    @abstractmethod
    def codomain(self) -> AlgebraSignature:
        """Signature of the target algebra."""
    
    @abstractmethod
    def evaluate(self, a: Element) -> Element:
        """Apply the tree to an element of the domain."""
    
    @abstractmethod
    def describe(self) -> str:
        """Short human-readable form used in reports."""
    
    def compile(self) -> RealLinearMap:
        return compile_hom(self)
    
    def _check_domain(self, a: Element) -> None:
        if a.signature != self.domain:
            raise SignatureMismatchError(
                f"Element of {a.signature} does not match domain {self.domain} of {self.describe()}"
            )


@dataclass(frozen=True)
class IdentityOn(StructuredHom):
    sig: AlgebraSignature
    
    @property
    def domain(self) -> AlgebraSignature:
        return self.sig
    
    @property
    def codomain(self) -> AlgebraSignature:
        return self.sig
    
    def evaluate(self, a: Element) -> Element:
        self._check_domain(a)
        return a
    
    def describe(self) -> str:
        return f"id{self.sig}"


@dataclass(frozen=True)
class EntrywiseConjugation(StructuredHom):
    """a -> conj(a) entrywise: unital, *-preserving, conjugate-linear."""
    sig: AlgebraSignature
    
    @property
    def domain(self) -> AlgebraSignature:
        return self.sig
    
    @property
    def codomain(self) -> AlgebraSignature:
        return self.sig
    
    def evaluate(self, a: Element) -> Element:
        self._check_domain(a)
        return a.conjugate()
    
    def describe(self) -> str:
        return f"conj{self.sig}"


@dataclass(frozen=True)
class BlockEmbedding(StructuredHom):
    """Codomain block j is block-diagonal with multiplicities[j][i] copies of domain block i.
    
    Copies are laid out in domain-block order. Every codomain block must
    receive at least one copy, which keeps the embedding unital.
    """
    source: AlgebraSignature
    multiplicities: Tuple[Tuple[int, ...], ...]
    
    def __post_init__(self):
        table = tuple(tuple(int(m) for m in row) for row in self.multiplicities)
        if not table:
            raise StructureError("Multiplicity table needs at least one codomain block")
        for row in table:
            if len(row) != self.source.num_blocks:
                raise StructureError(
                    f"Multiplicity row {list(row)} does not match {self.source.num_blocks} domain blocks"
                )
            if any(m < 0 for m in row):
                raise StructureError(f"Multiplicities must be non-negative, got {list(row)}")
            if sum(row) == 0:
                raise StructureError("Every codomain block must receive a domain block")
        object.__setattr__(self, 'multiplicities', table)
    
    @property
    def domain(self) -> AlgebraSignature:
        return self.source
    
    @property
    def codomain(self) -> AlgebraSignature:
        return AlgebraSignature(tuple(
            sum(m * n for m, n in zip(row, self.source.block_dims)) for row in self.multiplicities
        ))
    
    def evaluate(self, a: Element) -> Element:
        self._check_domain(a)
        blocks = []
        for row in self.multiplicities:
            copies = [block for block, m in zip(a.blocks, row) for _ in range(m)]
            blocks.append(scipy.linalg.block_diag(*copies))
        return Element(self.codomain, blocks)
    
    def describe(self) -> str:
        table = ",".join("(" + ",".join(str(m) for m in row) + ")" for row in self.multiplicities)
        return f"embed{self.source}->{self.codomain}{{{table}}}"


@dataclass(frozen=True, eq=False)
class UnitaryConjugation(StructuredHom):
    """a -> U a U* for a unitary U of the algebra."""
    unitary: Element
    
    def __post_init__(self):
        defect = self.unitary.adjoint() @ self.unitary - identity(self.unitary.signature)
        worst = max(float(np.linalg.norm(block, 2)) for block in defect.blocks)
        if worst > UNITARY_TOLERANCE:
            raise StructureError(f"Conjugating element is not unitary (||U*U - 1|| = {worst:.3e})")
    
    @property
    def domain(self) -> AlgebraSignature:
        return self.unitary.signature
    
    @property
    def codomain(self) -> AlgebraSignature:
        return self.unitary.signature
    
    def evaluate(self, a: Element) -> Element:
        self._check_domain(a)
        return self.unitary @ a @ self.unitary.adjoint()
    
    def describe(self) -> str:
        return f"Ad(U){self.unitary.signature}"


@dataclass(frozen=True)
class DirectSumOfBranches(StructuredHom):
    """a -> (h1(a), ..., hr(a)) into the direct sum of the branch codomains."""
    branches: Tuple[StructuredHom, ...]
    
    def __post_init__(self):
        branches = tuple(self.branches)
        if not branches:
            raise StructureError("A direct sum needs at least one branch")
        domains = {b.domain for b in branches}
        if len(domains) != 1:
            raise StructureError(
                f"Branches of a direct sum must share a domain, got {sorted(str(d) for d in domains)}"
            )
        object.__setattr__(self, 'branches', branches)
    
    @property
    def domain(self) -> AlgebraSignature:
        return self.branches[0].domain
    
    @property
    def codomain(self) -> AlgebraSignature:
        dims: Tuple[int, ...] = ()
        for branch in self.branches:
            dims += branch.codomain.block_dims
        return AlgebraSignature(dims)
    
    def evaluate(self, a: Element) -> Element:
        self._check_domain(a)
        blocks = []
        for branch in self.branches:
            blocks.extend(branch.evaluate(a).blocks)
        return Element(self.codomain, blocks)
    
    def describe(self) -> str:
        return "(" + " + ".join(b.describe() for b in self.branches) + ")"


@dataclass(frozen=True)
class Composition(StructuredHom):
    """second o first."""
    first: StructuredHom
    second: StructuredHom
    
    def __post_init__(self):
        if self.first.codomain != self.second.domain:
            raise StructureError(
                f"Cannot chain {self.first.describe()} into {self.second.describe()}: "
                f"{self.first.codomain} != {self.second.domain}"
            )
    
    @property
    def domain(self) -> AlgebraSignature:
        return self.first.domain
    
    @property
    def codomain(self) -> AlgebraSignature:
        return self.second.codomain
    
    def evaluate(self, a: Element) -> Element:
        return self.second.evaluate(self.first.evaluate(a))
    
    def describe(self) -> str:
        return f"{self.second.describe()} o {self.first.describe()}"


def compose_all(nodes: Sequence[StructuredHom]) -> StructuredHom:
    """Chain nodes left to right: the first node is applied first."""
    if not nodes:
        raise StructureError("Nothing to compose")
    result = nodes[0]
    for node in nodes[1:]:
        result = Composition(result, node)
    return result


def compile_hom(h: StructuredHom) -> RealLinearMap:
    """Lower a tree to the real matrix whose columns are images of the real basis."""
    columns = [realify(h.evaluate(e)) for e in real_basis(h.domain)]
    return RealLinearMap(h.domain, h.codomain, np.column_stack(columns))
