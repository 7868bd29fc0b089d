"""Value types shared by the ingest, cost, tracking and evaluation code."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

HIST_BINS = 512  # 8 x 8 x 8 joint RGB


class ClassLabel(str, enum.Enum):
    """The eleven road-user categories a detector can emit."""

    ARTICULATED_TRUCK = "articulated_truck"
    BICYCLE = "bicycle"
    BUS = "bus"
    CAR = "car"
    MOTORCYCLE = "motorcycle"
    MOTORIZED_VEHICLE = "motorized_vehicle"
    NON_MOTORIZED_VEHICLE = "non_motorized_vehicle"
    PEDESTRIAN = "pedestrian"
    PICKUP_TRUCK = "pickup_truck"
    SINGLE_UNIT_TRUCK = "single_unit_truck"
    WORK_VAN = "work_van"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, name: str) -> "ClassLabel":
        try:
            return cls(name.strip())
        except ValueError:
            raise ValueError(f"unknown class label {name!r}") from None


@dataclass(frozen=True)
class BoundingBox:
    """Axis-aligned box: left/top corner plus width and height, in pixels."""

    x: float
    y: float
    w: float
    h: float

    def __post_init__(self):
        vals = (self.x, self.y, self.w, self.h)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"non-finite box {vals}")
        if self.w <= 0 or self.h <= 0:
            raise ValueError(f"box must have positive size, got w={self.w}, h={self.h}")

    @property
    def area(self) -> float:
        return self.w * self.h

    @property
    def right(self) -> float:
        return self.x + self.w

    @property
    def bottom(self) -> float:
        return self.y + self.h

    @property
    def center(self) -> tuple[float, float]:
        return (self.x + self.w / 2.0, self.y + self.h / 2.0)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x, self.y, self.w, self.h)


def empty_histogram() -> np.ndarray:
    h = np.zeros(HIST_BINS)
    h.flags.writeable = False
    return h


def as_histogram(values) -> np.ndarray:
    """Validate and freeze a histogram (non-negative, normalized or all-zero)."""
    h = np.array(values, dtype=float)
    if h.ndim != 1:
        raise ValueError("histogram must be one-dimensional")
    if not np.all(np.isfinite(h)) or np.any(h < 0):
        raise ValueError("histogram bins must be finite and non-negative")
    total = h.sum()
    if total != 0 and abs(total - 1.0) > 1e-9:
        raise ValueError(f"histogram must sum to 1 or be empty, sums to {total!r}")
    h.flags.writeable = False
    return h


def is_empty_histogram(h: np.ndarray) -> bool:
    return not np.any(h)


@dataclass(frozen=True, eq=False)
class Detection:
    frame: int
    box: BoundingBox
    label: ClassLabel
    confidence: float
    histogram: np.ndarray = field(default_factory=empty_histogram)

    def __post_init__(self):
        if self.frame < 0:
            raise ValueError(f"negative frame index {self.frame}")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence {self.confidence} outside [0, 1]")
        if not isinstance(self.histogram, np.ndarray) or self.histogram.flags.writeable:
            object.__setattr__(self, "histogram", as_histogram(self.histogram))

    def __eq__(self, other):
        if not isinstance(other, Detection):
            return NotImplemented
        return (
            self.frame == other.frame
            and self.box == other.box
            and self.label == other.label
            and self.confidence == other.confidence
            and np.array_equal(self.histogram, other.histogram)
        )

    __hash__ = None

    def with_histogram(self, histogram) -> "Detection":
        return Detection(self.frame, self.box, self.label, self.confidence, as_histogram(histogram))


@dataclass(frozen=True)
class GroundTruthEntry:
    frame: int
    object_id: int
    box: BoundingBox

    def __post_init__(self):
        if self.frame < 0:
            raise ValueError(f"negative frame index {self.frame}")
        if self.object_id <= 0:
            raise ValueError(f"object id must be positive, got {self.object_id}")
