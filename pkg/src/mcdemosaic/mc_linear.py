"""Linearized curvature on the refined green plane.

Directional gradient-magnitude estimates d feed normalized neighbor weights
u, and the weighted 4-neighbor stencil approximates the mean curvature as a
linear expression. The weights are what actually guides red/blue
reconstruction: edges get small d across and large d along, so neighbors
across an edge are discounted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import shift_reflect

# Additive guard under the square root: keeps the weight denominators
# positive on flat regions without perturbing textured content.
GRAD_EPS = 1e-8


@dataclass
class CurvatureWeights:
    """Directional gradient magnitudes (d) and neighbor weights (u)."""

    d_w: np.ndarray
    d_e: np.ndarray
    d_s: np.ndarray
    d_n: np.ndarray
    u_w: np.ndarray
    u_e: np.ndarray
    u_s: np.ndarray
    u_n: np.ndarray


def directional_differences(g: np.ndarray):
    """Second-order directional estimates of |grad g|, one per axis direction.

    West: axial first difference toward (i-1, j) plus a squared transverse
    average-difference term divided by 16; south mirrors it along the other
    axis. East/north are the shifted-neighbor reads

        d_e(i, j) = d_w(i+1, j),   d_n(i, j) = d_s(i, j+1)

    (the east difference of a pixel is the west difference of its east
    neighbor). A literal reading with d_e = d_w and d_n = d_s would force
    every weight to 1 and make the weighting vacuous, so the shared
    half-point convention is used.
    """
    axial_w = g - shift_reflect(g, -1, 0)
    trans_w = (shift_reflect(g, -1, +1) + shift_reflect(g, 0, +1)
               - shift_reflect(g, -1, -1) - shift_reflect(g, 0, -1))
    d_w = np.sqrt(axial_w * axial_w + trans_w * trans_w / 16.0 + GRAD_EPS)

    axial_s = g - shift_reflect(g, 0, -1)
    trans_s = (shift_reflect(g, +1, 0) + shift_reflect(g, +1, -1)
               - shift_reflect(g, -1, 0) - shift_reflect(g, -1, -1))
    d_s = np.sqrt(axial_s * axial_s + trans_s * trans_s / 16.0 + GRAD_EPS)

    d_e = shift_reflect(d_w, +1, 0)
    d_n = shift_reflect(d_s, 0, +1)
    return d_w, d_e, d_s, d_n


def curvature_weights(d) -> CurvatureWeights:
    """Normalized opposing-pair weights: u_w = 2 d_e / (d_w + d_e), etc.

    By construction u_w + u_e == 2 and u_s + u_n == 2 at every pixel.
    """
    d_w, d_e, d_s, d_n = d
    he = d_w + d_e
    vs = d_s + d_n
    return CurvatureWeights(
        d_w=d_w, d_e=d_e, d_s=d_s, d_n=d_n,
        u_w=2.0 * d_e / he, u_e=2.0 * d_w / he,
        u_s=2.0 * d_n / vs, u_n=2.0 * d_s / vs,
    )


def weights_for(g: np.ndarray) -> CurvatureWeights:
    """Convenience: directional differences and weights of a plane in one call."""
    return curvature_weights(directional_differences(g))


def linear_curvature(g: np.ndarray, w: CurvatureWeights) -> np.ndarray:
    """Weighted 4-neighbor stencil minus 4x center.

    Reduces to the unweighted 5-point Laplacian when all u equal 1. (The
    source formula's trailing bare "- 4" and center-valued north term are
    read as -4 * g(i, j) and u_n * g(i, j+1); anything else breaks the
    all-weights-equal limit.)
    """
    return (w.u_w * shift_reflect(g, -1, 0) + w.u_e * shift_reflect(g, +1, 0)
            + w.u_s * shift_reflect(g, 0, -1) + w.u_n * shift_reflect(g, 0, +1)
            - 4.0 * g)
