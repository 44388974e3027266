"""Bayer CFA sampling: RGB -> mosaic, channel masks, and a bilinear baseline."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.ndimage import correlate

from .grid import RgbImage, as_plane

# Kernel realizing "average the nearest same-channel neighbors" for every
# Bayer site class at once when paired with mask normalization.
_BILINEAR_KERNEL = np.array([[1.0, 2.0, 1.0],
                             [2.0, 4.0, 2.0],
                             [1.0, 2.0, 1.0]])


class CfaPattern(Enum):
    """2x2 tile at the image origin, read row-major: (0,0) (1,0) / (0,1) (1,1)."""

    RGGB = "RGGB"
    GRBG = "GRBG"
    GBRG = "GBRG"
    BGGR = "BGGR"

    @property
    def red_offset(self) -> tuple[int, int]:
        """(i, j) parity of the red site within the 2x2 tile."""
        return {"RGGB": (0, 0), "GRBG": (1, 0), "GBRG": (0, 1), "BGGR": (1, 1)}[self.value]

    @property
    def blue_offset(self) -> tuple[int, int]:
        ri, rj = self.red_offset
        return (1 - ri, 1 - rj)

    def swapped_chroma(self) -> "CfaPattern":
        """Pattern with the roles of R and B exchanged."""
        for pat in CfaPattern:
            if pat.red_offset == self.blue_offset:
                return pat
        raise AssertionError("unreachable")


def channel_at(pattern: CfaPattern, i: int, j: int) -> str:
    """Channel tag 'R', 'G' or 'B' recorded at pixel (i, j)."""
    parity = (i % 2, j % 2)
    if parity == pattern.red_offset:
        return "R"
    if parity == pattern.blue_offset:
        return "B"
    return "G"


def channel_masks(pattern: CfaPattern, height: int, width: int):
    """Boolean (r, g, b) site masks for a grid of the given size."""
    ii = np.arange(width) % 2
    jj = np.arange(height) % 2
    ri, rj = pattern.red_offset
    bi, bj = pattern.blue_offset
    mask_r = np.outer(jj == rj, ii == ri)
    mask_b = np.outer(jj == bj, ii == bi)
    mask_g = ~(mask_r | mask_b)
    return mask_r, mask_g, mask_b


@dataclass
class BayerMosaic:
    """Single raw plane plus the pattern telling which channel each pixel holds."""

    plane: np.ndarray
    pattern: CfaPattern

    def __post_init__(self):
        self.plane = as_plane(self.plane)

    @property
    def height(self) -> int:
        return self.plane.shape[0]

    @property
    def width(self) -> int:
        return self.plane.shape[1]

    def masks(self):
        return channel_masks(self.pattern, self.height, self.width)


def mosaic(img: RgbImage, pattern: CfaPattern) -> BayerMosaic:
    """Subsample an RGB image through the Bayer pattern (lossless at kept sites)."""
    mask_r, mask_g, mask_b = channel_masks(pattern, img.height, img.width)
    plane = np.where(mask_r, img.r, np.where(mask_g, img.g, img.b))
    return BayerMosaic(plane, pattern)


def _fill_channel(raw: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Known samples kept; missing ones get the mean of nearest same-channel neighbors."""
    m = mask.astype(np.float64)
    num = correlate(raw * m, _BILINEAR_KERNEL, mode="mirror")
    den = correlate(m, _BILINEAR_KERNEL, mode="mirror")
    return np.where(mask, raw, num / den)


def demosaic_bilinear(m: BayerMosaic) -> RgbImage:
    """Baseline comparator: per-channel bilinear interpolation of the mosaic."""
    mask_r, mask_g, mask_b = m.masks()
    return RgbImage(
        _fill_channel(m.plane, mask_r),
        _fill_channel(m.plane, mask_g),
        _fill_channel(m.plane, mask_b),
    )
