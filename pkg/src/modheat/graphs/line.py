"""The weighted line covered by the modular-group Cayley graph, and its projected Laplacian."""

import math
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, model_validator

from ..core.errors import BoundaryError
from ..core.qsqrt2 import QSqrt2, SQRT2
from .weighted import WeightedGraph

LineFunction = Union[Mapping[int, float], Callable[[int], float]]

_INV_2SQRT2 = 1.0 / (2.0 * math.sqrt(2.0))


def mirror_index(m: int) -> int:
    """The involution m ↦ −m − 1 of the line."""
    return -m - 1


def _canonical_pair(i: int, j: int) -> Tuple[int, int]:
    """Order the pair and move it to the nonnegative half when both ends are negative."""
    if i > j:
        i, j = j, i
    if j < 0:
        i, j = mirror_index(j), mirror_index(i)
    return i, j


def line_weight(i: int, j: int) -> int:
    """
    Weight of the line between i and j.

    Args:
        i: Line vertex
        j: Line vertex

    Returns:
        2^{n+1} on the loop at 2n+1 and on the edges (2n−1, 2n), (2n, 2n+1);
        zero elsewhere; negative indices by mirror symmetry
    """
    i, j = _canonical_pair(i, j)
    if j - i > 1:
        return 0
    if i == j:
        return 2 ** ((i + 1) // 2) if i % 2 else 0
    if i == -1:
        return 2
    # edge (i, i+1): i = 2n or i = 2n − 1
    n = i // 2 if i % 2 == 0 else (i + 1) // 2
    return 2 ** (n + 1)


def line_degree(m: int) -> int:
    """Degree on the infinite line: d_{2n} = 2^{n+2}, d_{2n+1} = 2^{n+3}, mirrored for m < 0."""
    if m < 0:
        m = mirror_index(m)
    return 2 ** (m // 2 + 2) if m % 2 == 0 else 2 ** (m // 2 + 3)


def projected_laplacian_entry(i: int, j: int) -> QSqrt2:
    """Exact entry of the projected normalized Laplacian."""
    i, j = _canonical_pair(i, j)
    if i == j:
        return QSqrt2(1) if i % 2 == 0 else QSqrt2(Fraction(3, 4))
    if j - i > 1:
        return QSqrt2(0)
    if i == -1 or i % 2:
        return QSqrt2(-1) / 2
    return -SQRT2 / 4


class LineWindow(BaseModel):
    """The finite window [n_min, n_max] of the weighted line."""

    model_config = {"frozen": True}

    n_min: int
    n_max: int

    @model_validator(mode="after")
    def contains_origin(self) -> "LineWindow":
        """Validate n_min <= 0 <= n_max."""
        if self.n_min > 0 or self.n_max < 0:
            raise ValueError(f"window [{self.n_min}, {self.n_max}] must contain 0")
        return self

    @staticmethod
    def symmetric(radius: int) -> "LineWindow":
        return LineWindow(n_min=-radius, n_max=radius)

    @property
    def indices(self) -> List[int]:
        return list(range(self.n_min, self.n_max + 1))

    def __contains__(self, m: int) -> bool:
        return self.n_min <= m <= self.n_max

    def graph(self, weight: Callable[[int, int], int] = line_weight) -> WeightedGraph:
        """
        The window as a weighted graph; the end vertices keep their degree on the whole line.

        Args:
            weight: Weight function (replaceable to build deliberately broken windows)
        """
        weights: Dict[Tuple[int, int], int] = {}
        for m in self.indices:
            weights[(m, m)] = weight(m, m)
            if m < self.n_max:
                weights[(m, m + 1)] = weight(m, m + 1)
        ambient = {m: line_degree(m) for m in (self.n_min, self.n_max)}
        return WeightedGraph(
            self.indices, weights, ambient, name=f"line[{self.n_min},{self.n_max}]"
        )

    def matrix(self) -> np.ndarray:
        return window_matrix(self.n_min, self.n_max)


def window_matrix(n_min: int, n_max: int) -> np.ndarray:
    """
    Dense projected Laplacian restricted to [n_min, n_max], rows in increasing index order.

    Args:
        n_min: Left end (<= 0)
        n_max: Right end (>= 0)

    Returns:
        Symmetric tridiagonal matrix
    """
    window = LineWindow(n_min=n_min, n_max=n_max)
    size = len(window.indices)
    out = np.zeros((size, size))
    for r, i in enumerate(window.indices):
        for c in range(max(0, r - 1), min(size, r + 2)):
            out[r, c] = float(projected_laplacian_entry(i, window.indices[c]))
    return out


def window_matrix_exact(n_min: int, n_max: int) -> List[List[QSqrt2]]:
    """Window matrix with entries in Q[sqrt2]."""
    idx = LineWindow(n_min=n_min, n_max=n_max).indices
    return [[projected_laplacian_entry(i, j) for j in idx] for i in idx]


def _lookup(f: LineFunction, m: int, window: Optional[Tuple[int, int]]) -> float:
    if window is not None and not window[0] <= m <= window[1]:
        raise BoundaryError(f"stencil needs f({m}), outside window {window}")
    if callable(f):
        return float(f(m))
    try:
        return float(f[m])
    except KeyError:
        raise BoundaryError(f"stencil needs f({m}), which is not defined")


def apply_projected_laplacian(
    f: LineFunction, m: int, window: Optional[Tuple[int, int]] = None
) -> float:
    """
    Apply the projected Laplacian stencil at m.

    Args:
        f: Function on the line, as a mapping or a callable
        m: Line vertex
        window: Optional (n_min, n_max) the stencil must stay inside

    Returns:
        (L f)(m)

    Raises:
        BoundaryError: If m − 1, m or m + 1 is unavailable
    """
    here = _lookup(f, m, window)
    left = _lookup(f, m - 1, window)
    right = _lookup(f, m + 1, window)
    if m >= 0:
        if m % 2 == 0:
            return here - 0.5 * left - _INV_2SQRT2 * right
        return 0.75 * here - _INV_2SQRT2 * left - 0.5 * right
    # m = −k − 1 mirrors the stencil at k
    k = mirror_index(m)
    if k % 2 == 0:
        return here - 0.5 * right - _INV_2SQRT2 * left
    return 0.75 * here - _INV_2SQRT2 * right - 0.5 * left


def mirror(f: Mapping[int, float]) -> Dict[int, float]:
    """(P f)(m) = f(−m − 1)."""
    return {mirror_index(m): value for m, value in f.items()}
