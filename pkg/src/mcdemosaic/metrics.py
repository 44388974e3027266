"""Reconstruction quality metrics: CPSNR and the spatial CIELAB difference.

CPSNR pools one mean squared error over all three channels of the cropped
interior. The spatial CIELAB score follows the S-CIELAB construction
(Zhang & Wandell): sRGB -> XYZ -> opponent space, per-channel contrast-
sensitivity blur parameterized by samples-per-degree, back to XYZ and
CIELAB under D65, then the mean per-pixel Euclidean Lab distance.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.ndimage import gaussian_filter

from .grid import RgbImage

# IEC 61966-2-1 sRGB primaries, D65 white.
_SRGB_TO_XYZ = np.array([
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
])
_D65_WHITE = np.array([0.95047, 1.0, 1.08883])

# Poirson-Wandell pattern-color separable opponent transform.
_OPP_FROM_XYZ = np.array([
    [0.279, 0.720, -0.107],
    [-0.449, 0.290, -0.077],
    [0.086, -0.590, 0.501],
])
_XYZ_FROM_OPP = np.linalg.inv(_OPP_FROM_XYZ)

# Contrast-sensitivity blur per opponent channel: (weight, halfwidth in
# degrees of visual angle) pairs of the Gaussian mixture.
_CSF_KERNELS = (
    ((0.921, 0.0283), (0.105, 0.133), (-0.108, 4.336)),   # luminance
    ((0.531, 0.0392), (0.330, 0.494)),                    # red-green
    ((0.488, 0.0536), (0.371, 0.386)),                    # blue-yellow
)
# Half-width at half height -> Gaussian sigma.
_HW_TO_SIGMA = 1.0 / math.sqrt(2.0 * math.log(2.0))


def _crop(arr: np.ndarray, border: int) -> np.ndarray:
    if border < 0:
        raise ValueError("border_crop must be >= 0")
    h, w = arr.shape[:2]
    if h - 2 * border < 1 or w - 2 * border < 1:
        raise ValueError(f"border_crop={border} leaves no interior for {w}x{h}")
    return arr[border:h - border, border:w - border]


def cpsnr(reference: RgbImage, test: RgbImage, border_crop: int = 10) -> float:
    """10 log10(255^2 / MSE) with the MSE pooled over RGB; inf when identical."""
    if (reference.height, reference.width) != (test.height, test.width):
        raise ValueError("image dimensions differ")
    diff = _crop(reference.stacked() - test.stacked(), border_crop)
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0 ** 2 / mse)


def _srgb_to_opponent(img: RgbImage) -> np.ndarray:
    rgb = np.clip(img.stacked() / 255.0, 0.0, 1.0)
    linear = np.where(rgb <= 0.04045, rgb / 12.92, ((rgb + 0.055) / 1.055) ** 2.4)
    xyz = linear @ _SRGB_TO_XYZ.T
    return xyz @ _OPP_FROM_XYZ.T


def _lab_from_xyz(xyz: np.ndarray) -> np.ndarray:
    t = xyz / _D65_WHITE
    delta = 6.0 / 29.0
    f = np.where(t > delta ** 3, np.cbrt(t), t / (3 * delta ** 2) + 4.0 / 29.0)
    lab = np.empty_like(xyz)
    lab[..., 0] = 116.0 * f[..., 1] - 16.0
    lab[..., 1] = 500.0 * (f[..., 0] - f[..., 1])
    lab[..., 2] = 200.0 * (f[..., 1] - f[..., 2])
    return lab


def _csf_blur(channel: np.ndarray, kernels, samples_per_degree: float) -> np.ndarray:
    """Unit-DC-gain mixture of Gaussians, so uniform fields pass unchanged."""
    total_weight = sum(wt for wt, _ in kernels)
    out = np.zeros_like(channel)
    for wt, halfwidth in kernels:
        sigma = halfwidth * samples_per_degree * _HW_TO_SIGMA
        if sigma < 1e-6:
            out += wt * channel
        else:
            out += wt * gaussian_filter(channel, sigma, mode="mirror")
    return out / total_weight


def _spatial_lab(img: RgbImage, samples_per_degree: float) -> np.ndarray:
    opp = _srgb_to_opponent(img)
    for c in range(3):
        opp[..., c] = _csf_blur(opp[..., c], _CSF_KERNELS[c], samples_per_degree)
    return _lab_from_xyz(opp @ _XYZ_FROM_OPP.T)


def scielab(reference: RgbImage, test: RgbImage, samples_per_degree: float = 23.0,
            border_crop: int = 10) -> float:
    """Mean spatially-filtered CIELAB delta-E over the cropped interior."""
    if (reference.height, reference.width) != (test.height, test.width):
        raise ValueError("image dimensions differ")
    if samples_per_degree <= 0:
        raise ValueError("samples_per_degree must be > 0")
    lab_ref = _spatial_lab(reference, samples_per_degree)
    lab_test = _spatial_lab(test, samples_per_degree)
    de = np.sqrt(np.sum((lab_ref - lab_test) ** 2, axis=-1))
    return float(np.mean(_crop(de, border_crop)))


def _fmt(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.6f}"


@dataclass
class QualityReport:
    """Per-image and averaged scores, serialized to CSV or JSON."""

    border_crop: int
    per_image: list = field(default_factory=list)   # (image id, cpsnr dB, scielab dE)

    def add(self, image: str, cpsnr_db: float, scielab_de: float) -> None:
        self.per_image.append((image, float(cpsnr_db), float(scielab_de)))

    @property
    def average_cpsnr(self) -> float:
        return sum(c for _, c, _ in self.per_image) / len(self.per_image)

    @property
    def average_scielab(self) -> float:
        return sum(s for _, _, s in self.per_image) / len(self.per_image)

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["image", "cpsnr_db", "scielab_de", "border_crop"])
            for name, c, s in self.per_image:
                writer.writerow([name, _fmt(c), _fmt(s), self.border_crop])
            writer.writerow(["average", _fmt(self.average_cpsnr),
                             _fmt(self.average_scielab), self.border_crop])

    def write_json(self, path) -> None:
        def number(v):
            return "inf" if math.isinf(v) else round(v, 6)

        doc = {
            "border_crop": self.border_crop,
            "per_image": [
                {"image": name, "cpsnr_db": number(c), "scielab_de": number(s),
                 "border_crop": self.border_crop}
                for name, c, s in self.per_image
            ],
            "average": {"cpsnr_db": number(self.average_cpsnr),
                        "scielab_de": number(self.average_scielab)},
        }
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
