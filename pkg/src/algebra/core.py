"""Finite-dimensional C*-algebras as direct sums of full complex matrix algebras.

An algebra is described by its block sizes [n1, ..., nk]; an element is one
dense complex matrix per block. Every finite-dimensional C*-algebra has this
form, so all arithmetic here is exact matrix arithmetic.
"""
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple, Union
import logging
import math

import numpy as np

from src.errors import InvalidElementError, SignatureMismatchError

logger = logging.getLogger(__name__)

ComplexScalar = complex
SeedLike = Union[None, int, np.random.SeedSequence, np.random.Generator]


def as_scalar(value: Union[int, float, complex]) -> ComplexScalar:
    """Coerce a number to a finite complex scalar."""
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InvalidElementError(f"Scalar must be finite, got {value!r}")
    return z


def make_rng(seed: SeedLike) -> np.random.Generator:
    """Return a PCG64 generator for a seed, a SeedSequence or an existing generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class AlgebraSignature:
    """Shape of the algebra M_{n1}(C) + ... + M_{nk}(C)."""
    block_dims: Tuple[int, ...]
    
    def __post_init__(self):
        dims = tuple(int(n) for n in self.block_dims)
        if len(dims) == 0:
            raise InvalidElementError("An algebra needs at least one block")
        if any(n < 1 for n in dims):
            raise InvalidElementError(f"Block sizes must be positive, got {list(dims)}")
        object.__setattr__(self, 'block_dims', dims)
    
    @classmethod
    def of(cls, *dims: int) -> "AlgebraSignature":
        return cls(tuple(dims))
    
    @property
    def num_blocks(self) -> int:
        return len(self.block_dims)
    
    @property
    def dimension(self) -> int:
        """Complex dimension, the sum of the squared block sizes."""
        return sum(n * n for n in self.block_dims)
    
    @property
    def real_dimension(self) -> int:
        return 2 * self.dimension
    
    def offsets(self) -> List[int]:
        """Start of each block inside the flattened (row-major) element."""
        starts = []
        position = 0
        for n in self.block_dims:
            starts.append(position)
            position += n * n
        return starts
    
    def doubled(self) -> "AlgebraSignature":
        """Signature of M2(A): every block n becomes 2n."""
        return AlgebraSignature(tuple(2 * n for n in self.block_dims))
    
    def halved(self) -> "AlgebraSignature":
        if any(n % 2 for n in self.block_dims):
            raise InvalidElementError(f"Signature {self} is not a doubled signature")
        return AlgebraSignature(tuple(n // 2 for n in self.block_dims))
    
    def direct_sum(self, other: "AlgebraSignature") -> "AlgebraSignature":
        return AlgebraSignature(self.block_dims + other.block_dims)
    
    def __str__(self) -> str:
        return str(list(self.block_dims))


class Element:
    """An element of a block algebra: one complex matrix per block.
    
    Elements are immutable; the block arrays are read-only copies.
    """
    
    __slots__ = ('signature', 'blocks')
    
    def __init__(self, signature: AlgebraSignature, blocks: Sequence[np.ndarray]):
        if len(blocks) != signature.num_blocks:
            raise InvalidElementError(
                f"Expected {signature.num_blocks} blocks for {signature}, got {len(blocks)}"
            )
        frozen = []
        for n, block in zip(signature.block_dims, blocks):
            array = np.array(block, dtype=np.complex128)
            if array.shape != (n, n):
                raise InvalidElementError(f"Block of shape {array.shape} does not match size {n}")
            if not np.all(np.isfinite(array)):
                raise InvalidElementError("Element entries must be finite")
            array.setflags(write=False)
            frozen.append(array)
        object.__setattr__(self, 'signature', signature)
        object.__setattr__(self, 'blocks', tuple(frozen))
    
    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")
    
    def __repr__(self) -> str:
        return f"Element({self.signature}, {[b.tolist() for b in self.blocks]})"
    
    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.blocks)
    
    def _check_same(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise TypeError(f"Expected an Element, got {type(other).__name__}")
        if other.signature != self.signature:
            raise SignatureMismatchError(
                f"Signature mismatch: {self.signature} vs {other.signature}"
            )
    
    def __add__(self, other: "Element") -> "Element":
        self._check_same(other)
        return Element(self.signature, [a + b for a, b in zip(self.blocks, other.blocks)])
    
    def __sub__(self, other: "Element") -> "Element":
        self._check_same(other)
        return Element(self.signature, [a - b for a, b in zip(self.blocks, other.blocks)])
    
    def __neg__(self) -> "Element":
        return Element(self.signature, [-a for a in self.blocks])
    
    def __matmul__(self, other: "Element") -> "Element":
        self._check_same(other)
        return Element(self.signature, [a @ b for a, b in zip(self.blocks, other.blocks)])
    
    def __mul__(self, other):
        if isinstance(other, Element):
            return self @ other
        return self.scale(other)
    
    def __rmul__(self, other):
        return self.scale(other)
    
    def scale(self, value: Union[int, float, complex]) -> "Element":
        z = as_scalar(value)
        return Element(self.signature, [z * a for a in self.blocks])
    
    def adjoint(self) -> "Element":
        return Element(self.signature, [a.conj().T for a in self.blocks])
    
    def conjugate(self) -> "Element":
        """Entrywise complex conjugate."""
        return Element(self.signature, [a.conj() for a in self.blocks])
    
    def flatten(self) -> np.ndarray:
        """Complex coordinate vector: blocks in order, row-major within a block."""
        return np.concatenate([a.ravel() for a in self.blocks])
    
    def trace_inner(self, other: "Element") -> complex:
        """Trace inner product <self, other> = sum_i trace(self_i^* other_i)."""
        self._check_same(other)
        return complex(np.vdot(self.flatten(), other.flatten()))
    
    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.flatten()))
    
    def max_abs_diff(self, other: "Element") -> float:
        self._check_same(other)
        return float(max(np.max(np.abs(a - b)) for a, b in zip(self.blocks, other.blocks)))
    
    def allclose(self, other: "Element", atol: float = 1e-12) -> bool:
        return self.signature == other.signature and self.max_abs_diff(other) <= atol
    
    def is_selfadjoint(self, tol: float = 1e-10) -> bool:
        """Selfadjoint within tol relative to (1 + largest entry)."""
        scale = 1.0 + max(float(np.max(np.abs(a))) for a in self.blocks)
        return self.max_abs_diff(self.adjoint()) <= tol * scale
    
    def quadrants(self) -> Tuple[Tuple["Element", "Element"], Tuple["Element", "Element"]]:
        """Split an element of M2(A) into its four A-valued entries."""
        half = self.signature.halved()
        parts = [[[], []], [[], []]]
        for n, block in zip(half.block_dims, self.blocks):
            parts[0][0].append(block[:n, :n])
            parts[0][1].append(block[:n, n:])
            parts[1][0].append(block[n:, :n])
            parts[1][1].append(block[n:, n:])
        return (
            (Element(half, parts[0][0]), Element(half, parts[0][1])),
            (Element(half, parts[1][0]), Element(half, parts[1][1])),
        )
    
    @classmethod
    def from_quadrants(cls, x11: "Element", x12: "Element",
                       x21: "Element", x22: "Element") -> "Element":
        """Assemble the element [[x11, x12], [x21, x22]] of M2(A)."""
        for other in (x12, x21, x22):
            x11._check_same(other)
        blocks = [
            np.block([[a, b], [c, d]])
            for a, b, c, d in zip(x11.blocks, x12.blocks, x21.blocks, x22.blocks)
        ]
        return cls(x11.signature.doubled(), blocks)


def zeros(sig: AlgebraSignature) -> Element:
    return Element(sig, [np.zeros((n, n), dtype=np.complex128) for n in sig.block_dims])


def identity(sig: AlgebraSignature) -> Element:
    """The unit 1_A: an identity matrix in every block."""
    return Element(sig, [np.eye(n, dtype=np.complex128) for n in sig.block_dims])


def add(a: Element, b: Element) -> Element:
    return a + b


def mul(a: Element, b: Element) -> Element:
    return a @ b


def adjoint(a: Element) -> Element:
    return a.adjoint()


def scale(value: Union[int, float, complex], a: Element) -> Element:
    return a.scale(value)


def element_from_flat(vector: np.ndarray, sig: AlgebraSignature) -> Element:
    """Inverse of Element.flatten."""
    vector = np.asarray(vector, dtype=np.complex128)
    if vector.shape != (sig.dimension,):
        raise InvalidElementError(
            f"Expected {sig.dimension} complex coordinates for {sig}, got shape {vector.shape}"
        )
    blocks = []
    for start, n in zip(sig.offsets(), sig.block_dims):
        blocks.append(vector[start:start + n * n].reshape(n, n))
    return Element(sig, blocks)


def realify(a: Element) -> np.ndarray:
    """Real coordinates of an element: all real parts first, then all imaginary parts."""
    flat = a.flatten()
    return np.concatenate([flat.real, flat.imag])


def unrealify(vector: np.ndarray, sig: AlgebraSignature) -> Element:
    """Inverse of realify; copies coordinates without arithmetic."""
    vector = np.asarray(vector, dtype=np.float64)
    d = sig.dimension
    if vector.shape != (2 * d,):
        raise InvalidElementError(
            f"Expected {2 * d} real coordinates for {sig}, got shape {vector.shape}"
        )
    flat = np.empty(d, dtype=np.complex128)
    flat.real = vector[:d]
    flat.imag = vector[d:]
    return element_from_flat(flat, sig)


def matrix_units(sig: AlgebraSignature) -> List[Element]:
    """The complex basis E_jk of every block, in realify order."""
    return [element_from_flat(column, sig) for column in np.eye(sig.dimension, dtype=np.complex128)]


def real_basis(sig: AlgebraSignature) -> List[Element]:
    """The 2d real basis {E_jk} followed by {i E_jk}: unrealify of the standard basis."""
    return [unrealify(column, sig) for column in np.eye(sig.real_dimension)]


def random_element(sig: AlgebraSignature, seed: SeedLike = None) -> Element:
    """Entries i.i.d. standard complex Gaussian (E|z|^2 = 1) from a seeded PCG64 stream."""
    rng = make_rng(seed)
    blocks = []
    for n in sig.block_dims:
        real = rng.standard_normal((n, n))
        imag = rng.standard_normal((n, n))
        blocks.append((real + 1j * imag) / math.sqrt(2.0))
    return Element(sig, blocks)


def random_selfadjoint(sig: AlgebraSignature, seed: SeedLike = None) -> Element:
    a = random_element(sig, seed)
    return (a + a.adjoint()).scale(0.5)


def random_positive(sig: AlgebraSignature, seed: SeedLike = None) -> Element:
    v = random_element(sig, seed)
    return v.adjoint() @ v


def unrealify_batch(vectors: np.ndarray, sig: AlgebraSignature) -> List[np.ndarray]:
    """Columns of realified coordinates -> one (N, n, n) complex stack per block."""
    vectors = np.asarray(vectors, dtype=np.float64)
    d = sig.dimension
    if vectors.ndim != 2 or vectors.shape[0] != 2 * d:
        raise InvalidElementError(
            f"Expected {2 * d} real coordinates per column for {sig}, got shape {vectors.shape}"
        )
    flat = np.empty((vectors.shape[1], d), dtype=np.complex128)
    flat.real = vectors[:d].T
    flat.imag = vectors[d:].T
    return [
        flat[:, start:start + n * n].reshape(-1, n, n)
        for start, n in zip(sig.offsets(), sig.block_dims)
    ]


def realify_batch(blocks: Sequence[np.ndarray]) -> np.ndarray:
    """Inverse of unrealify_batch: (N, n, n) stacks -> (2 d, N) real columns."""
    count = blocks[0].shape[0]
    flat = np.concatenate([b.reshape(count, -1) for b in blocks], axis=1)
    return np.vstack([flat.real.T, flat.imag.T])


def adjoint_batch(blocks: Sequence[np.ndarray]) -> List[np.ndarray]:
    return [np.conj(np.swapaxes(b, 1, 2)) for b in blocks]
