"""Initial green plane by gradient-weighted color-difference interpolation.

The green channel is sampled twice as densely as red/blue, so it is
reconstructed first and everything else hangs off it. At each red/blue site
the four one-sided Hamilton-Adams predictions give directional green
estimates; their color differences are smoothed along each direction and
fused with inverse-gradient weights computed over shifted 5x5 windows. Any
other initializer producing "chroma + estimated color difference" plugs in
the same way.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import correlate, correlate1d

from .bayer import BayerMosaic
from .grid import shift_reflect

WEIGHT_EPS = 1e-10

# Mean over the five pixels trailing (including) the center, per direction.
_TAPS_NEG = np.array([0.2] * 5 + [0.0] * 4)
_TAPS_POS = _TAPS_NEG[::-1].copy()


@dataclass
class ColorDiffField:
    """Estimated G-R and G-B differences, nonzero at R and B sites."""

    delta_gr: np.ndarray
    delta_gb: np.ndarray


def _onesided_predictions(plane: np.ndarray):
    """Second-order one-sided predictions along each axis direction.

    At a chroma site the axial neighbor holds green and the two-step neighbor
    the same chroma, so e.g. west reads  G(i-1,j) + (C(i,j) - C(i-2,j)) / 2.
    (At green sites the same arithmetic predicts the row/column chroma.)
    """
    p_w = shift_reflect(plane, -1, 0) + 0.5 * (plane - shift_reflect(plane, -2, 0))
    p_e = shift_reflect(plane, +1, 0) + 0.5 * (plane - shift_reflect(plane, +2, 0))
    p_s = shift_reflect(plane, 0, -1) + 0.5 * (plane - shift_reflect(plane, 0, -2))
    p_n = shift_reflect(plane, 0, +1) + 0.5 * (plane - shift_reflect(plane, 0, +2))
    return p_w, p_e, p_s, p_n


def directional_green_estimates(m: BayerMosaic):
    """West/east/south/north green estimates; known green kept at green sites."""
    _, mask_g, _ = m.masks()
    return tuple(np.where(mask_g, m.plane, p) for p in _onesided_predictions(m.plane))


def _window_kernel(direction: str) -> np.ndarray:
    """9x9 indicator of the 5x5 window shifted two pixels toward a direction."""
    k = np.zeros((9, 9))
    if direction == "w":
        k[2:7, 0:5] = 1.0
    elif direction == "e":
        k[2:7, 4:9] = 1.0
    elif direction == "s":
        k[0:5, 2:7] = 1.0
    else:
        k[4:9, 2:7] = 1.0
    return k


def estimate_color_differences(m: BayerMosaic) -> ColorDiffField:
    """Fused green-chroma difference field at every red/blue site."""
    raw = m.plane
    mask_r, mask_g, mask_b = m.masks()
    p_w, p_e, p_s, p_n = _onesided_predictions(raw)

    # Full-grid directional difference fields, always oriented green-minus-chroma.
    ha_h = 0.5 * (p_w + p_e)
    ha_v = 0.5 * (p_s + p_n)
    delta_h = np.where(mask_g, raw - ha_h, ha_h - raw)
    delta_v = np.where(mask_g, raw - ha_v, ha_v - raw)

    # Directional activity: central gradient magnitude of each difference field.
    grad_h = np.abs(shift_reflect(delta_h, -1, 0) - shift_reflect(delta_h, +1, 0))
    grad_v = np.abs(shift_reflect(delta_v, 0, -1) - shift_reflect(delta_v, 0, +1))

    weights = {}
    for direction, grad in (("w", grad_h), ("e", grad_h), ("s", grad_v), ("n", grad_v)):
        acc = correlate(grad, _window_kernel(direction), mode="mirror")
        weights[direction] = 1.0 / (acc + WEIGHT_EPS) ** 2

    v_w = correlate1d(delta_h, _TAPS_NEG, axis=1, mode="mirror")
    v_e = correlate1d(delta_h, _TAPS_POS, axis=1, mode="mirror")
    v_s = correlate1d(delta_v, _TAPS_NEG, axis=0, mode="mirror")
    v_n = correlate1d(delta_v, _TAPS_POS, axis=0, mode="mirror")

    total = weights["w"] + weights["e"] + weights["s"] + weights["n"]
    fused = (weights["w"] * v_w + weights["e"] * v_e
             + weights["s"] * v_s + weights["n"] * v_n) / total

    zero = np.zeros_like(raw)
    return ColorDiffField(
        delta_gr=np.where(mask_r, fused, zero),
        delta_gb=np.where(mask_b, fused, zero),
    )


def interpolate_green(m: BayerMosaic) -> np.ndarray:
    """Full-resolution initial green: known samples kept bit-exact, chroma
    sites filled with chroma + fused color difference."""
    mask_r, mask_g, mask_b = m.masks()
    diffs = estimate_color_differences(m)
    out = m.plane.copy()
    out[mask_r] += diffs.delta_gr[mask_r]
    out[mask_b] += diffs.delta_gb[mask_b]
    return out
