"""Minimal binary PPM (P6, maxval 255) reader and writer."""

from __future__ import annotations

from pathlib import Path

import numpy as np


class PPMFormatError(ValueError):
    pass


def _tokens(data: bytes, count: int):
    """Read ``count`` whitespace-separated header tokens, skipping comments."""
    out = []
    pos = 0
    while len(out) < count:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise PPMFormatError("truncated PPM header")
        out.append(data[start:pos])
    return out, pos


def read_ppm(path) -> np.ndarray:
    """Return an (H, W, 3) uint8 array."""
    data = Path(path).read_bytes()
    (magic, w, h, maxval), pos = _tokens(data, 4)
    if magic != b"P6":
        raise PPMFormatError(f"{path}: expected binary P6 image, got {magic!r}")
    try:
        width, height, maxv = int(w), int(h), int(maxval)
    except ValueError:
        raise PPMFormatError(f"{path}: malformed PPM header") from None
    if maxv != 255:
        raise PPMFormatError(f"{path}: only 8-bit images (maxval 255) are supported, got {maxv}")
    pos += 1  # single whitespace byte before raster
    n = width * height * 3
    raster = data[pos:pos + n]
    if len(raster) != n:
        raise PPMFormatError(f"{path}: raster truncated")
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width, 3).copy()


def write_ppm(path, image: np.ndarray) -> None:
    img = np.ascontiguousarray(image, dtype=np.uint8)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError("expected an (H, W, 3) image")
    height, width = img.shape[:2]
    with open(path, "wb") as f:
        f.write(f"P6\n{width} {height}\n255\n".encode("ascii"))
        f.write(img.tobytes())


def frame_path(frames_dir, frame: int) -> Path:
    return Path(frames_dir) / f"{frame:06d}.ppm"
