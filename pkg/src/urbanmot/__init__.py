"""Tracking-by-detection for urban traffic scenes.

Per-frame labeled detections are linked into trajectories with a cost made of
a label term, a box-overlap term and a color-histogram term, matched by the
Hungarian method, gated, and coasted through misses with a constant-velocity
Kalman filter. CLEAR MOT metrics (MOTA / MOTP) score the result.
"""

from .types import (
    BoundingBox,
    ClassLabel,
    Detection,
    GroundTruthEntry,
    HIST_BINS,
    empty_histogram,
)
from .costmodel import CostBreakdown, color_cost, label_cost, position_cost, total_cost
from .assignment import AssignmentResult, gate_and_split, solve_min_cost
from .motion import KalmanState, NoiseConfig, init_state, predict, state_to_box, update
from .tracker import Track, TrackRecord, Tracker, TrackerConfig, run_sequence
from .metrics import EvalResult, FrameEvalAccumulator, evaluate, report

__version__ = "0.1.0"

__all__ = [
    "BoundingBox",
    "ClassLabel",
    "Detection",
    "GroundTruthEntry",
    "HIST_BINS",
    "empty_histogram",
    "CostBreakdown",
    "color_cost",
    "label_cost",
    "position_cost",
    "total_cost",
    "AssignmentResult",
    "gate_and_split",
    "solve_min_cost",
    "KalmanState",
    "NoiseConfig",
    "init_state",
    "predict",
    "state_to_box",
    "update",
    "Track",
    "TrackRecord",
    "Tracker",
    "TrackerConfig",
    "run_sequence",
    "EvalResult",
    "FrameEvalAccumulator",
    "evaluate",
    "report",
]
