"""Image file I/O: binary PPM/PGM as the lossless interchange formats, PNG
(via Pillow) for convenience, plus the single quantization step at export.

Raw mosaics travel as PGM with a one-line sidecar file ``<path>.pattern``
recording the CFA phase.
"""

from __future__ import annotations

import os

import numpy as np
from PIL import Image

from .bayer import BayerMosaic, CfaPattern
from .grid import RgbImage


class ImageFormatError(ValueError):
    """Unreadable or unsupported image content."""


def to_uint8(values: np.ndarray) -> np.ndarray:
    """Clamp to [0, 255] and round half away from zero (the one quantization)."""
    return np.floor(np.clip(values, 0.0, 255.0) + 0.5).astype(np.uint8)


def _read_pnm_tokens(data: bytes, count: int):
    """Netpbm header tokens, honoring '#' comments; returns tokens and offset."""
    tokens = []
    pos = 0
    while len(tokens) < count:
        if pos >= len(data):
            raise ImageFormatError("truncated PNM header")
        ch = data[pos:pos + 1]
        if ch == b"#":
            while pos < len(data) and data[pos:pos + 1] != b"\n":
                pos += 1
        elif ch.isspace():
            pos += 1
        else:
            start = pos
            while pos < len(data) and not data[pos:pos + 1].isspace():
                pos += 1
            tokens.append(data[start:pos])
    return tokens, pos + 1  # single whitespace after the last token


def _read_pnm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:2] not in (b"P5", b"P6"):
        raise ImageFormatError(f"{path}: not a binary PGM/PPM file")
    tokens, offset = _read_pnm_tokens(data, 4)
    magic, width, height, maxval = tokens[0], int(tokens[1]), int(tokens[2]), int(tokens[3])
    if maxval != 255:
        raise ImageFormatError(f"{path}: only maxval 255 is supported, got {maxval}")
    channels = 3 if magic == b"P6" else 1
    expected = width * height * channels
    body = data[offset:offset + expected]
    if len(body) != expected:
        raise ImageFormatError(f"{path}: expected {expected} sample bytes, got {len(body)}")
    arr = np.frombuffer(body, dtype=np.uint8).astype(np.float64)
    if channels == 3:
        return arr.reshape(height, width, 3)
    return arr.reshape(height, width)


def read_rgb(path) -> RgbImage:
    """Read a PPM or any Pillow-readable color image as float planes."""
    ext = os.path.splitext(str(path))[1].lower()
    if ext in (".ppm", ".pgm", ".pnm"):
        arr = _read_pnm(path)
        if arr.ndim != 3:
            raise ImageFormatError(f"{path}: grayscale file where RGB was expected")
        return RgbImage.from_stacked(arr)
    with Image.open(path) as im:
        arr = np.asarray(im.convert("RGB"), dtype=np.float64)
    return RgbImage.from_stacked(arr)


def write_rgb(path, img: RgbImage) -> None:
    """Quantize and write; format chosen by extension (.ppm or Pillow-known)."""
    data = to_uint8(img.stacked())
    ext = os.path.splitext(str(path))[1].lower()
    if ext in (".ppm", ".pnm"):
        header = f"P6\n{data.shape[1]} {data.shape[0]}\n255\n".encode()
        with open(path, "wb") as fh:
            fh.write(header + data.tobytes())
    else:
        Image.fromarray(data, mode="RGB").save(path)


def _pattern_sidecar(path) -> str:
    return f"{path}.pattern"


def write_mosaic(path, m: BayerMosaic) -> None:
    """PGM plus the pattern sidecar."""
    data = to_uint8(m.plane)
    header = f"P5\n{data.shape[1]} {data.shape[0]}\n255\n".encode()
    with open(path, "wb") as fh:
        fh.write(header + data.tobytes())
    with open(_pattern_sidecar(path), "w") as fh:
        fh.write(m.pattern.value + "\n")


def read_mosaic(path, pattern: CfaPattern | None = None) -> BayerMosaic:
    """Read a PGM mosaic; pattern from the argument or the sidecar file."""
    arr = _read_pnm(path)
    if arr.ndim != 2:
        raise ImageFormatError(f"{path}: color file where a mosaic was expected")
    if pattern is None:
        sidecar = _pattern_sidecar(path)
        if not os.path.exists(sidecar):
            raise ImageFormatError(
                f"{path}: no pattern given and no sidecar {sidecar} found")
        with open(sidecar) as fh:
            token = fh.read().strip().upper()
        try:
            pattern = CfaPattern(token)
        except ValueError as exc:
            raise ImageFormatError(f"{sidecar}: unknown pattern {token!r}") from exc
    return BayerMosaic(arr, pattern)
