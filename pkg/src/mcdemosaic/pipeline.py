"""End-to-end demosaicking: green initialization, curvature refinement,
then guided red/blue reconstruction."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bayer import BayerMosaic, CfaPattern, channel_masks
from .green_init import interpolate_green
from .grid import RgbImage
from .mc_solver import McParams, solve
from .rb_recon import RbParams, reconstruct_rb


@dataclass
class PipelineConfig:
    pattern: CfaPattern = CfaPattern.RGGB
    mc: McParams = field(default_factory=McParams)
    rb: RbParams = field(default_factory=RbParams)
    border_crop: int = 10
    samples_per_degree: float = 23.0
    skip_mc_refinement: bool = False

    def __post_init__(self):
        if self.border_crop < 0:
            raise ValueError("border_crop must be >= 0")
        if self.samples_per_degree <= 0:
            raise ValueError("samples_per_degree must be > 0")


def demosaic(m: BayerMosaic, config: PipelineConfig | None = None) -> RgbImage:
    """Reconstruct a full RGB image from a mosaic (float planes, unquantized).

    Known mosaic samples are preserved bit-exact in all three output planes;
    in particular the sampled green values are re-imposed on the refined
    plane before it guides red/blue.
    """
    config = config or PipelineConfig()
    g_hat = interpolate_green(m)
    if config.skip_mc_refinement:
        g = g_hat
    else:
        g = solve(g_hat, config.mc)
        _, mask_g, _ = channel_masks(m.pattern, m.height, m.width)
        g = np.where(mask_g, m.plane, g)
    red, blue = reconstruct_rb(m, g, config.rb)
    return RgbImage(red, g, blue)
