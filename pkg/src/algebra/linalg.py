"""Rank-revealing helpers shared by the subalgebra, center and kernel computations."""
import numpy as np
import scipy.linalg


def orthonormal_columns(matrix: np.ndarray, rcond: float = 1e-10) -> np.ndarray:
    """Orthonormal basis of the column space.
    
    Singular values at or below rcond times the largest one are dropped.
    """
    if matrix.size == 0 or not np.any(matrix):
        return np.zeros((matrix.shape[0], 0), dtype=matrix.dtype)
    return scipy.linalg.orth(matrix, rcond=rcond)


def null_space(matrix: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis of the null space.
    
    The cutoff is tol * max(1, largest singular value), so a matrix whose
    entries are rounding noise around zero counts as zero.
    """
    if matrix.shape[0] == 0:
        return np.eye(matrix.shape[1], dtype=matrix.dtype)
    # vh must be square; U is never needed in full
    wide = matrix.shape[0] < matrix.shape[1]
    _, singular_values, vh = scipy.linalg.svd(matrix, full_matrices=wide)
    largest = float(singular_values[0]) if singular_values.size else 0.0
    cutoff = tol * max(1.0, largest)
    rank = int(np.sum(singular_values > cutoff))
    return vh[rank:, :].conj().T


def smallest_singular_value(matrix: np.ndarray) -> float:
    """Smallest singular value over the column count (0 when the columns are dependent)."""
    if matrix.shape[1] == 0:
        return float('inf')
    if matrix.shape[0] < matrix.shape[1]:
        return 0.0
    return float(scipy.linalg.svdvals(matrix)[-1])
