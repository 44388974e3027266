"""Image planes, boundary-aware sampling and plane arithmetic.

A *plane* is a 2-D C-contiguous float64 ndarray of shape (height, width)
holding one color channel (or a raw mosaic) on the nominal [0, 255] scale.
Values stay unclamped through all intermediate computation; quantization
happens once, at image export.

Index convention, fixed project-wide: a pixel is addressed as (i, j) with
i the column (x) and j the row (y), so ``plane[j, i]``. Neighbors:

    W = (i-1, j)   E = (i+1, j)   S = (i, j-1)   N = (i, j+1)

Out-of-range coordinates are folded back by whole-sample symmetric
reflection about the border pixel (-1 -> 1, n -> n-2), which keeps finite
differences bounded at borders and preserves Bayer parity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def as_plane(values) -> np.ndarray:
    """Validate and normalize an array-like into a plane.

    Raises ValueError unless the input is 2-D, at least 2x2 and finite.
    """
    p = np.ascontiguousarray(values, dtype=np.float64)
    if p.ndim != 2:
        raise ValueError(f"plane must be 2-D, got shape {p.shape}")
    if p.shape[0] < 2 or p.shape[1] < 2:
        raise ValueError(f"plane must be at least 2x2, got {p.shape[1]}x{p.shape[0]}")
    if not np.isfinite(p).all():
        raise ValueError("plane contains non-finite samples")
    return p


def reflect_index(k: int, n: int) -> int:
    """Fold an arbitrary integer index into [0, n-1] by symmetric reflection.

    Whole-sample mirror about the border pixels: the extended sequence for
    n == 3 reads ... 2 1 | 0 1 2 | 1 0 ...
    """
    if n == 1:
        return 0
    period = 2 * (n - 1)
    k = abs(k) % period
    return period - k if k >= n else k


def reflect_indices(n: int, shift: int) -> np.ndarray:
    """Index vector mapping position t to reflect(t + shift, n)."""
    return np.array([reflect_index(t + shift, n) for t in range(n)], dtype=np.intp)


def sample_reflect(plane: np.ndarray, i: int, j: int) -> float:
    """Sample at (i, j), reflecting out-of-range coordinates into the grid."""
    h, w = plane.shape
    return float(plane[reflect_index(j, h), reflect_index(i, w)])


def shift_reflect(plane: np.ndarray, di: int, dj: int) -> np.ndarray:
    """Plane resampled at (i + di, j + dj) with reflective boundaries.

    The workhorse behind every stencil: out[j, i] = plane[j + dj, i + di]
    with reflected indices. Returns a new array.
    """
    h, w = plane.shape
    cols = reflect_indices(w, di)
    rows = reflect_indices(h, dj)
    return plane[np.ix_(rows, cols)]


def map_planes(f, *planes: np.ndarray) -> np.ndarray:
    """Apply a pointwise function to one or more same-sized planes."""
    if not planes:
        raise ValueError("map_planes needs at least one plane")
    shape = planes[0].shape
    for p in planes[1:]:
        if p.shape != shape:
            raise ValueError(f"plane dimensions differ: {p.shape} vs {shape}")
    return np.asarray(f(*planes), dtype=np.float64)


def l2_relative_change(a: np.ndarray, b: np.ndarray) -> float:
    """||a - b||_2 / ||a||_2, the iterate-change measure used for stopping tests."""
    if a.shape != b.shape:
        raise ValueError(f"plane dimensions differ: {a.shape} vs {b.shape}")
    denom = float(np.linalg.norm(a))
    if denom == 0.0:
        raise ValueError("l2_relative_change is undefined for an all-zero reference plane")
    return float(np.linalg.norm(a - b)) / denom


@dataclass
class RgbImage:
    """Three same-sized planes; the full-color reconstruction target."""

    r: np.ndarray
    g: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.r = as_plane(self.r)
        self.g = as_plane(self.g)
        self.b = as_plane(self.b)
        if not (self.r.shape == self.g.shape == self.b.shape):
            raise ValueError("r/g/b planes must share dimensions")

    @property
    def height(self) -> int:
        return self.r.shape[0]

    @property
    def width(self) -> int:
        return self.r.shape[1]

    def stacked(self) -> np.ndarray:
        """(height, width, 3) view-copy in RGB order."""
        return np.stack([self.r, self.g, self.b], axis=-1)

    @classmethod
    def from_stacked(cls, arr) -> "RgbImage":
        a = np.asarray(arr, dtype=np.float64)
        if a.ndim != 3 or a.shape[2] != 3:
            raise ValueError(f"expected (h, w, 3) array, got {a.shape}")
        return cls(a[:, :, 0], a[:, :, 1], a[:, :, 2])
