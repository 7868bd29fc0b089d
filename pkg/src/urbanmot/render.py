"""Draw track boxes onto PPM frames."""

from __future__ import annotations

import shutil
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .ppm import read_ppm, write_ppm

BORDER = 2
MARKER = 4


def track_color(track_id: int) -> tuple[int, int, int]:
    # 97 is odd, so the red channel alone is a bijection on ids mod 256
    return ((track_id * 97) % 256, (track_id * 57 + 80) % 256, (track_id * 151 + 160) % 256)


def draw_box(image: np.ndarray, box, color, border: int = BORDER) -> None:
    """Outline ``box`` in place and fill a small marker at its top-left corner.

    Only pixels inside the box are touched.
    """
    height, width = image.shape[:2]
    x0 = max(0, int(np.floor(box.x)))
    y0 = max(0, int(np.floor(box.y)))
    x1 = min(width, int(np.ceil(box.x + box.w)))
    y1 = min(height, int(np.ceil(box.y + box.h)))
    if x1 <= x0 or y1 <= y0:
        return
    t = border
    image[y0:min(y1, y0 + t), x0:x1] = color
    image[max(y0, y1 - t):y1, x0:x1] = color
    image[y0:y1, x0:min(x1, x0 + t)] = color
    image[y0:y1, max(x0, x1 - t):x1] = color
    # label anchor: where an id/label caption would be placed
    image[y0:min(y1, y0 + MARKER), x0:min(x1, x0 + MARKER)] = color


def render_tracks(frames_dir, tracks: Mapping[int, Sequence], out_dir) -> int:
    """Write annotated copies of every ``*.ppm`` in ``frames_dir``; returns frames written."""
    src = Path(frames_dir)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    count = 0
    for path in sorted(src.glob("*.ppm")):
        if not path.stem.isdigit():
            continue
        frame = int(path.stem)
        records = tracks.get(frame, [])
        if not records:
            shutil.copyfile(path, out / path.name)
        else:
            img = read_ppm(path)
            for r in sorted(records, key=lambda r: r.track_id):
                draw_box(img, r.box, track_color(r.track_id))
            write_ppm(out / path.name, img)
        count += 1
    return count
