"""Pairwise track/detection costs.

Three unit-range terms are combined into the association cost:

* label cost    -- 1 when class labels differ, otherwise one minus the mean
                   of the two confidences
* position cost -- Jaccard distance ``1 - IoU`` of the two boxes
* color cost    -- Bhattacharyya distance between color histograms
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .types import BoundingBox, ClassLabel, Detection, is_empty_histogram

DEFAULT_WEIGHTS = (1.0, 1.0, 1.0)


def label_cost(label_i: ClassLabel, conf_i: float, label_j: ClassLabel, conf_j: float) -> float:
    if label_i != label_j:
        return 1.0
    return 1.0 - 0.5 * (conf_i + conf_j)


def intersection_area(a: BoundingBox, b: BoundingBox) -> float:
    iw = max(0.0, min(a.right, b.right) - max(a.x, b.x))
    ih = max(0.0, min(a.bottom, b.bottom) - max(a.y, b.y))
    return iw * ih


def iou(a: BoundingBox, b: BoundingBox) -> float:
    if a == b:
        return 1.0
    inter = intersection_area(a, b)
    if inter == 0.0:
        return 0.0
    # rounding in the edge arithmetic can push the ratio a hair past 1
    return min(1.0, inter / (a.area + b.area - inter))


def position_cost(box_i: BoundingBox, box_j: BoundingBox) -> float:
    return 1.0 - iou(box_i, box_j)


def color_cost(h_i: np.ndarray, h_j: np.ndarray) -> float:
    """Bhattacharyya distance between two histograms of equal length.

    An all-zero histogram has no defined distance; it is treated as maximally
    dissimilar (cost 1).
    """
    h_i = np.asarray(h_i, dtype=float)
    h_j = np.asarray(h_j, dtype=float)
    if h_i.shape != h_j.shape:
        raise ValueError(f"histogram bin counts differ: {h_i.size} vs {h_j.size}")
    if is_empty_histogram(h_i) or is_empty_histogram(h_j):
        return 1.0
    n = h_i.size
    coeff = np.sum(np.sqrt(h_i * h_j)) / math.sqrt(h_i.mean() * h_j.mean() * n * n)
    radicand = min(1.0, max(0.0, 1.0 - coeff))
    return math.sqrt(radicand)


class TrackView(NamedTuple):
    """Track-side attributes used for costing."""

    label: ClassLabel
    confidence: float
    box: BoundingBox
    histogram: np.ndarray


@dataclass(frozen=True)
class CostBreakdown:
    label_cost: float
    position_cost: float
    color_cost: float

    @property
    def total(self) -> float:
        return self.label_cost + self.position_cost + self.color_cost

    def weighted(self, weights: Sequence[float] = DEFAULT_WEIGHTS) -> float:
        wl, wp, wc = weights
        return wl * self.label_cost + wp * self.position_cost + wc * self.color_cost


def total_cost(track_view: TrackView, det: Detection) -> CostBreakdown:
    label, conf, box, hist = track_view
    return CostBreakdown(
        label_cost(label, conf, det.label, det.confidence),
        position_cost(box, det.box),
        color_cost(hist, det.histogram),
    )


def cost_matrix(
    track_views: Sequence[TrackView],
    detections: Sequence[Detection],
    weights: Sequence[float] = DEFAULT_WEIGHTS,
) -> np.ndarray:
    """Weighted total cost for every (track, detection) pair."""
    out = np.zeros((len(track_views), len(detections)))
    for i, tv in enumerate(track_views):
        for j, det in enumerate(detections):
            out[i, j] = total_cost(tv, det).weighted(weights)
    return out
