"""Dense symmetric eigensolver by cyclic Jacobi rotations."""

from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from ..core.context import ComputeContext, default_context
from ..core.errors import ArgumentError, NumericError

SYMMETRY_TOL = 1e-14


class EigenDecomposition(BaseModel):
    """Sorted eigenvalues, orthonormal eigenvectors (columns) and the residual certificate."""

    model_config = {"frozen": True, "arbitrary_types_allowed": True}

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int
    off_norm: float
    residual: float
    method: str = "jacobi"

    def __repr__(self) -> str:
        return (
            f"EigenDecomposition(n={len(self.eigenvalues)}, method={self.method}, "
            f"sweeps={self.sweeps}, residual={self.residual:.3e})"
        )


def check_symmetric(matrix: np.ndarray) -> np.ndarray:
    """
    Validate a square symmetric real matrix.

    Raises:
        ArgumentError: If the matrix is not square or max |A − Aᵀ| exceeds 1e-14 relative to max |A|
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ArgumentError(f"expected a square matrix, got shape {a.shape}")
    if a.size == 0:
        raise ArgumentError("matrix is empty")
    asym = float(np.max(np.abs(a - a.T)))
    scale = max(1.0, float(np.max(np.abs(a))))
    if asym > SYMMETRY_TOL * scale:
        raise ArgumentError(
            f"matrix is not symmetric: max |A - A^T| = {asym:.3e}",
            details={"asymmetry": asym},
        )
    return a


def residual(matrix: np.ndarray, eigenvalues: np.ndarray, eigenvectors: np.ndarray) -> float:
    """max_k ‖A v_k − λ_k v_k‖."""
    diff = matrix @ eigenvectors - eigenvectors * eigenvalues[None, :]
    return float(np.max(np.linalg.norm(diff, axis=0)))


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _round_robin(size: int) -> List[np.ndarray]:
    """
    size − 1 layouts of the indices 0..size−1 (size even).

    In each layout position i is paired with position i + size/2; over all
    layouts every pair of indices meets exactly once.
    """
    players = list(range(size))
    half = size // 2
    layouts = []
    for _ in range(size - 1):
        layouts.append(np.array(players[:half] + players[half:][::-1]))
        players = [players[0], players[-1]] + players[1:-1]
    return layouts


def _mix(first: np.ndarray, second: np.ndarray, c: np.ndarray, s: np.ndarray) -> None:
    """In place: first ← c·first − s·second, second ← s·first + c·second."""
    saved = first.copy()
    first *= c
    first -= s * second
    second *= c
    second += s * saved


def _rotate_halves(a: np.ndarray, v: np.ndarray, skip: float) -> None:
    """Annihilate a[i, i + h] for every i < h with |a[i, i + h]| above skip."""
    h = a.shape[0] // 2
    idx = np.arange(h)
    apq = a[idx, idx + h]
    active = np.abs(apq) > skip
    safe = np.where(active, apq, 1.0)
    theta = (a[idx + h, idx + h] - a[idx, idx]) / (2.0 * safe)
    t = np.where(theta >= 0.0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
    t = np.where(active, t, 0.0)
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    _mix(a[:h], a[h:], c[:, None], s[:, None])
    _mix(a[:, :h], a[:, h:], c, s)
    a[idx[active], idx[active] + h] = 0.0
    a[idx[active] + h, idx[active]] = 0.0
    _mix(v[:, :h], v[:, h:], c, s)


def jacobi_eigh(
    matrix: np.ndarray,
    tol: Optional[float] = None,
    max_sweeps: Optional[int] = None,
    ctx: Optional[ComputeContext] = None,
) -> EigenDecomposition:
    """
    Diagonalize a symmetric matrix by cyclic Jacobi sweeps.

    Each sweep visits every off-diagonal pair once, in a fixed round-robin
    order whose rounds rotate disjoint pairs together. Before a round the
    matrix is permuted so that its pairs sit at positions i and i + n/2,
    which turns every update into whole-block arithmetic. Pairs whose entry
    is already below tol/n are left alone.

    Args:
        matrix: Symmetric real matrix
        tol: Stop once the off-diagonal Frobenius norm is below this
        max_sweeps: Sweep cap
        ctx: Compute context

    Returns:
        Decomposition with ascending eigenvalues

    Raises:
        ArgumentError: If the matrix is not symmetric
        NumericError: If the sweep cap is reached first
    """
    ctx = ctx or default_context()
    tol = tol or ctx.config.jacobi_tol
    max_sweeps = max_sweeps or ctx.config.jacobi_max_sweeps
    original = check_symmetric(matrix)
    n = original.shape[0]

    # an odd size gets an isolated padding index that is never rotated
    size = n + (n % 2)
    half = size // 2
    a = np.zeros((size, size))
    a[:n, :n] = original
    v = np.eye(size)
    layouts = _round_robin(size)
    # a and the columns of v are stored in layout order; labels[i] is the index at position i
    labels = np.arange(size)
    position = np.arange(size)
    # off-diagonal entries all below tol/size put the Frobenius norm below tol
    skip = tol / size

    sweeps = 0
    off = _off_norm(a)
    while off >= tol:
        if sweeps >= max_sweeps:
            raise NumericError(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps",
                details={"sweeps": sweeps, "off_norm": off, "tolerance": tol},
            )
        for layout in layouts:
            idx = position[layout]
            if not np.any(np.abs(a[idx[:half], idx[half:]]) > skip):
                continue
            a = a.take(idx, axis=0).take(idx, axis=1)
            v = v.take(idx, axis=1)
            labels = layout
            position[layout] = np.arange(size)
            _rotate_halves(a, v, skip)
        sweeps += 1
        off = _off_norm(a)
        ctx.logger.debug(f"Jacobi sweep {sweeps}: off-diagonal norm {off:.3e}")

    keep = labels < n
    values = np.diag(a)[keep].copy()
    vectors = v[:n, keep].copy()
    order = np.argsort(values, kind="stable")
    values, vectors = values[order], vectors[:, order]
    res = residual(original, values, vectors)
    ctx.logger.info(f"Jacobi on {n}x{n}: {sweeps} sweeps, residual {res:.3e}")
    return EigenDecomposition(
        eigenvalues=values, eigenvectors=vectors, sweeps=sweeps, off_norm=off, residual=res
    )


def lapack_eigh(matrix: np.ndarray) -> EigenDecomposition:
    """Cross-check through numpy's LAPACK driver."""
    a = check_symmetric(matrix)
    values, vectors = np.linalg.eigh(a)
    return EigenDecomposition(
        eigenvalues=values,
        eigenvectors=vectors,
        sweeps=0,
        off_norm=0.0,
        residual=residual(a, values, vectors),
        method="lapack",
    )


def symmetric_eigenvalues(
    matrix: np.ndarray, tol: Optional[float] = None, ctx: Optional[ComputeContext] = None
) -> List[float]:
    """
    All eigenvalues of a symmetric matrix, ascending.

    Args:
        matrix: Symmetric real matrix
        tol: Off-diagonal stopping tolerance
        ctx: Compute context

    Returns:
        Sorted eigenvalues
    """
    return [float(x) for x in jacobi_eigh(matrix, tol, ctx=ctx).eigenvalues]
