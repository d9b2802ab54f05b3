"""Cyclic Jacobi eigenvalue solver for complex Hermitian matrices."""
import logging
import math

import numpy as np

logger = logging.getLogger(__name__)


def _off_diagonal_mass(a: np.ndarray) -> float:
    return float(np.sqrt(np.sum(np.abs(a) ** 2) - np.sum(np.abs(np.diag(a)) ** 2)))


def jacobi_eigenvalues(
    matrix: np.ndarray,
    tol: float = 1e-14,
    max_sweeps: int = 100
) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations.
    
    Each rotation first removes the phase of a[p, q] with a diagonal unitary
    and then applies the real symmetric Jacobi rotation, so a[p, q] becomes 0.
    Sweeps stop once the off-diagonal Frobenius mass is at most tol times
    the Frobenius norm of the matrix.
    
    Args:
        matrix: Hermitian matrix (only its Hermitian part is used)
        tol: Relative off-diagonal mass at convergence
        max_sweeps: Cap on full cyclic sweeps
        
    Returns:
        Real eigenvalues sorted ascending
    """
    a = np.array(matrix, dtype=np.complex128)
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    total = float(np.linalg.norm(a))
    if n == 1 or total == 0.0:
        return np.sort(np.real(np.diag(a)))
    threshold = tol * total
    
    for sweep in range(max_sweeps):
        if _off_diagonal_mass(a) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                app = a[p, p].real
                aqq = a[q, q].real
                
                # tan of the rotation angle, smaller root of t^2 + 2 tau t - 1 = 0
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                
                rotation = np.array(
                    [[c, s], [-s * np.conj(phase), c * np.conj(phase)]],
                    dtype=np.complex128
                )
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rotation
                a[idx, :] = rotation.conj().T @ a[idx, :]
                a[p, q] = 0.0
                a[q, p] = 0.0
    else:
        logger.warning(
            f"Jacobi solver hit {max_sweeps} sweeps with off-diagonal mass {_off_diagonal_mass(a):.3e}"
        )
    
    return np.sort(np.real(np.diag(a)))
