"""Detection / ground-truth file parsing and per-frame detection cleanup."""

from __future__ import annotations

import math
from collections import defaultdict
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .costmodel import iou
from .ppm import frame_path, read_ppm
from .types import (
    HIST_BINS,
    BoundingBox,
    ClassLabel,
    Detection,
    GroundTruthEntry,
    as_histogram,
    empty_histogram,
)

DEFAULT_BLACKLIST = frozenset({ClassLabel.NON_MOTORIZED_VEHICLE})
DETECTION_DIALECTS = ("csv",)


class ParseError(ValueError):
    def __init__(self, path, lineno: int, msg: str):
        super().__init__(f"{path}:{lineno}: {msg}")
        self.path = path
        self.lineno = lineno


def iter_records(path):
    """Yield (line number, fields) for data lines; skips blanks, comments, header."""
    with open(path, encoding="utf-8") as f:
        first = True
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = [s.strip() for s in line.split(",")]
            if first:
                first = False
                if fields[0].lower() == "frame":
                    continue
            yield lineno, fields


def parse_int(path, lineno, s, what):
    try:
        v = int(s)
    except ValueError:
        try:
            fv = float(s)
        except ValueError:
            raise ParseError(path, lineno, f"{what} is not an integer: {s!r}") from None
        if not fv.is_integer():
            raise ParseError(path, lineno, f"{what} is not an integer: {s!r}") from None
        v = int(fv)
    return v


def parse_float(path, lineno, s, what):
    try:
        v = float(s)
    except ValueError:
        raise ParseError(path, lineno, f"{what} is not a number: {s!r}") from None
    if not math.isfinite(v):
        raise ParseError(path, lineno, f"{what} is not finite: {s!r}")
    return v


def parse_box(path, lineno, fields):
    x, y, w, h = (parse_float(path, lineno, s, n) for s, n in zip(fields, "xywh"))
    try:
        return BoundingBox(x, y, w, h)
    except ValueError as e:
        raise ParseError(path, lineno, str(e)) from None


def parse_detections(path, dialect: str = "csv") -> dict[int, list[Detection]]:
    """Read ``frame,x,y,w,h,label,confidence[,h0..h511]`` records grouped by frame."""
    if dialect not in DETECTION_DIALECTS:
        raise ValueError(f"unknown detection dialect {dialect!r}")
    grouped: dict[int, list[Detection]] = defaultdict(list)
    for lineno, fields in iter_records(path):
        if len(fields) not in (7, 7 + HIST_BINS):
            raise ParseError(path, lineno, f"expected 7 or {7 + HIST_BINS} fields, got {len(fields)}")
        frame = parse_int(path, lineno, fields[0], "frame")
        if frame < 0:
            raise ParseError(path, lineno, f"negative frame index {frame}")
        box = parse_box(path, lineno, fields[1:5])
        try:
            label = ClassLabel.parse(fields[5])
        except ValueError as e:
            raise ParseError(path, lineno, str(e)) from None
        conf = parse_float(path, lineno, fields[6], "confidence")
        if not 0.0 <= conf <= 1.0:
            raise ParseError(path, lineno, f"confidence {conf} outside [0, 1]")
        if len(fields) > 7:
            bins = [parse_float(path, lineno, s, "histogram bin") for s in fields[7:]]
            try:
                hist = as_histogram(bins)
            except ValueError as e:
                raise ParseError(path, lineno, str(e)) from None
        else:
            hist = empty_histogram()
        grouped[frame].append(Detection(frame, box, label, conf, hist))
    return dict(sorted(grouped.items()))


def fmt_num(v: float) -> str:
    """Shortest text that parses back to the same float; integers lose '.0'."""
    s = repr(float(v))
    return s[:-2] if s.endswith(".0") else s


def format_detection(det: Detection, with_histogram: bool = True) -> str:
    parts = [str(det.frame), *(fmt_num(v) for v in det.box.as_tuple()), det.label.value, fmt_num(det.confidence)]
    if with_histogram and np.any(det.histogram):
        parts.extend(fmt_num(v) for v in det.histogram)
    return ",".join(parts)


def write_detections(path, detections: Mapping[int, Sequence[Detection]]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for frame in sorted(detections):
            for det in detections[frame]:
                f.write(format_detection(det) + "\n")


def parse_ground_truth(path) -> dict[int, list[GroundTruthEntry]]:
    grouped: dict[int, list[GroundTruthEntry]] = defaultdict(list)
    seen = set()
    for lineno, fields in iter_records(path):
        if len(fields) != 6:
            raise ParseError(path, lineno, f"expected 6 fields, got {len(fields)}")
        frame = parse_int(path, lineno, fields[0], "frame")
        oid = parse_int(path, lineno, fields[1], "object_id")
        if frame < 0 or oid <= 0:
            raise ParseError(path, lineno, "frame must be >= 0 and object_id > 0")
        if (frame, oid) in seen:
            raise ParseError(path, lineno, f"duplicate object id {oid} in frame {frame}")
        seen.add((frame, oid))
        grouped[frame].append(GroundTruthEntry(frame, oid, parse_box(path, lineno, fields[2:6])))
    return dict(sorted(grouped.items()))


def write_ground_truth(path, gt: Mapping[int, Sequence[GroundTruthEntry]]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for frame in sorted(gt):
            for e in gt[frame]:
                f.write(",".join([str(e.frame), str(e.object_id), *(fmt_num(v) for v in e.box.as_tuple())]) + "\n")


def filter_labels(detections: Iterable[Detection], blacklist=DEFAULT_BLACKLIST) -> list[Detection]:
    return [d for d in detections if d.label not in blacklist]


def nms(detections: Sequence[Detection], iou_threshold: float = 0.5) -> list[Detection]:
    """Greedy class-agnostic non-maximal suppression.

    Survivors come out sorted by descending confidence; equal confidences keep
    input order.
    """
    order = sorted(range(len(detections)), key=lambda i: -detections[i].confidence)
    keep: list[Detection] = []
    for i in order:
        d = detections[i]
        if all(iou(d.box, k.box) <= iou_threshold for k in keep):
            keep.append(d)
    return keep


def _pixel_span(start: float, length: float, limit: int) -> tuple[int, int]:
    # pixels whose centers fall inside [start, start + length)
    lo = max(0, math.ceil(start - 0.5))
    hi = min(limit, math.ceil(start + length - 0.5))
    return lo, max(lo, hi)


def box_histogram(image: np.ndarray, box: BoundingBox) -> np.ndarray:
    """Normalized 8x8x8 RGB histogram of the pixels inside ``box``."""
    height, width = image.shape[:2]
    x0, x1 = _pixel_span(box.x, box.w, width)
    y0, y1 = _pixel_span(box.y, box.h, height)
    region = image[y0:y1, x0:x1].reshape(-1, 3).astype(np.int64)
    if region.shape[0] == 0:
        return empty_histogram()
    q = region >> 5
    idx = q[:, 0] * 64 + q[:, 1] * 8 + q[:, 2]
    counts = np.bincount(idx, minlength=HIST_BINS).astype(float)
    hist = counts / counts.sum()
    hist.flags.writeable = False
    return hist


def attach_histograms(detections: Mapping[int, Sequence[Detection]], frames_dir) -> dict[int, list[Detection]]:
    out = {}
    for frame in sorted(detections):
        dets = detections[frame]
        if not dets:
            out[frame] = []
            continue
        path = frame_path(frames_dir, frame)
        if not path.exists():
            raise FileNotFoundError(f"missing image for frame {frame}: {path}")
        image = read_ppm(path)
        out[frame] = [d.with_histogram(box_histogram(image, d.box)) for d in dets]
    return out
