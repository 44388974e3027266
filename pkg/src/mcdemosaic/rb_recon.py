"""Red/blue reconstruction guided by the refined green plane.

Both chroma channels are interpolated in the color-difference domain
(chroma minus green) with the curvature weights of mc_linear deciding how
much each neighbor contributes. Three stages per channel: diagonal
interpolation at opposite-chroma sites, a robustness refinement against the
four nearest same-channel neighbors, then axial interpolation at green
sites (which consumes the refined values), refined the same way. Known
mosaic samples are never touched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bayer import BayerMosaic, channel_masks
from .grid import shift_reflect
from .mc_linear import CurvatureWeights, weights_for

REFINE_EPS = 1e-8


@dataclass
class RbParams:
    """Refinement blend factor; 0.5-0.7 is the recommended band, delta = 1
    disables the neighbor blend (diagnostic passthrough)."""

    delta: float = 0.6

    def __post_init__(self):
        if not 0.0 < self.delta <= 1.0:
            raise ValueError("delta must lie in (0, 1]")


def refine(r_hat, neighbors, params: RbParams, literal: bool = False):
    """Blend an estimate with a weighted mean of its four same-channel neighbors.

    nu_k = 1 / |1 + (R_k - r_hat)| de-weights neighbors that disagree with
    the estimate (kept as printed in the source model, asymmetry around
    R_k - r_hat = -1 included, with an additive guard). The default combines
    delta * r_hat + (1 - delta) * sum(nu_k R_k) / sum(nu_k); ``literal=True``
    switches to the difference-quotient form sum(mu_k) / sum(nu_k), retained
    only for comparison since it is dimensionally inconsistent.

    Accepts scalars or same-shaped arrays.
    """
    r_hat = np.asarray(r_hat, dtype=np.float64)
    mu = [np.asarray(nb, dtype=np.float64) - r_hat for nb in neighbors]
    nu = [1.0 / (np.abs(1.0 + mk) + REFINE_EPS) for mk in mu]
    total = sum(nu)
    if literal:
        blend = sum(mu) / total
    else:
        blend = sum(nk * (mk + r_hat) for nk, mk in zip(nu, mu)) / total
    out = params.delta * r_hat + (1.0 - params.delta) * blend
    return float(out) if out.ndim == 0 else out


def _diagonal_estimate(chroma: np.ndarray, g: np.ndarray, w: CurvatureWeights) -> np.ndarray:
    """Green plus the weighted mean of the four diagonal color differences.

    Direction mapping for the diagonals: W -> (i-1, j-1), E -> (i+1, j+1),
    S -> (i+1, j-1), N -> (i-1, j+1); the axial weights are reused verbatim.
    Valid where the four diagonal neighbors carry the chroma channel.
    """
    zeta = chroma - g
    z_w = shift_reflect(zeta, -1, -1)
    z_e = shift_reflect(zeta, +1, +1)
    z_s = shift_reflect(zeta, +1, -1)
    z_n = shift_reflect(zeta, -1, +1)
    total = w.u_w + w.u_e + w.u_s + w.u_n
    return g + (w.u_w * z_w + w.u_e * z_e + w.u_s * z_s + w.u_n * z_n) / total


def _axial_estimate(chroma: np.ndarray, g: np.ndarray, w: CurvatureWeights) -> np.ndarray:
    """Same form with the four axial neighbors supplying the differences."""
    zeta = chroma - g
    z_w = shift_reflect(zeta, -1, 0)
    z_e = shift_reflect(zeta, +1, 0)
    z_s = shift_reflect(zeta, 0, -1)
    z_n = shift_reflect(zeta, 0, +1)
    total = w.u_w + w.u_e + w.u_s + w.u_n
    return g + (w.u_w * z_w + w.u_e * z_e + w.u_s * z_s + w.u_n * z_n) / total


def _diagonal_neighbors(plane: np.ndarray):
    return (shift_reflect(plane, -1, -1), shift_reflect(plane, +1, +1),
            shift_reflect(plane, +1, -1), shift_reflect(plane, -1, +1))


def _axial_neighbors(plane: np.ndarray):
    return (shift_reflect(plane, -1, 0), shift_reflect(plane, +1, 0),
            shift_reflect(plane, 0, -1), shift_reflect(plane, 0, +1))


def interpolate_r_at_b(m: BayerMosaic, g_tilde: np.ndarray,
                       w: CurvatureWeights) -> np.ndarray:
    """Diagonal red estimates, meaningful at blue sites (full plane returned)."""
    return _diagonal_estimate(m.plane, g_tilde, w)


def interpolate_r_at_g(m: BayerMosaic, g_tilde: np.ndarray, w: CurvatureWeights,
                       partial_r: np.ndarray) -> np.ndarray:
    """Axial red estimates from known plus already-refined red, for green sites."""
    return _axial_estimate(partial_r, g_tilde, w)


def _reconstruct_channel(m: BayerMosaic, g_tilde: np.ndarray, w: CurvatureWeights,
                         own_mask, opp_mask, g_mask, params: RbParams) -> np.ndarray:
    raw = m.plane
    # Opposite-chroma sites: diagonal estimate, then refine against the four
    # diagonal neighbors (all known samples of this channel).
    est = _diagonal_estimate(raw, g_tilde, w)
    refined = refine(est, _diagonal_neighbors(raw), params)
    partial = raw.copy()
    partial[opp_mask] = refined[opp_mask]
    # Green sites: axial estimate over known + refined values, refined against
    # the same four axial neighbors.
    est_g = _axial_estimate(partial, g_tilde, w)
    refined_g = refine(est_g, _axial_neighbors(partial), params)
    out = partial
    out[g_mask] = refined_g[g_mask]
    return out


def reconstruct_rb(m: BayerMosaic, g_tilde: np.ndarray,
                   params: RbParams | None = None):
    """Full-resolution (red, blue) planes guided by the refined green."""
    params = params or RbParams()
    if g_tilde.shape != m.plane.shape:
        raise ValueError("g_tilde must match the mosaic dimensions")
    w = weights_for(g_tilde)
    mask_r, mask_g, mask_b = channel_masks(m.pattern, m.height, m.width)
    red = _reconstruct_channel(m, g_tilde, w, mask_r, mask_b, mask_g, params)
    blue = _reconstruct_channel(m, g_tilde, w, mask_b, mask_r, mask_g, params)
    return red, blue
