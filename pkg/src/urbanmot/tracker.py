"""Frame-by-frame tracking loop: match, gate, spawn, coast, time out."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import motion
from .assignment import assign
from .costmodel import DEFAULT_WEIGHTS, TrackView, cost_matrix
from .ingest import DEFAULT_BLACKLIST, filter_labels, fmt_num, nms, ParseError, iter_records, parse_box, parse_float, parse_int
from .types import BoundingBox, ClassLabel, Detection

log = logging.getLogger(__name__)

MATCHED = "matched"
PREDICTED = "predicted"


@dataclass(frozen=True)
class TrackerConfig:
    t_match: float = 1.5
    n_timeout: int = 5
    nms_iou: float = 0.5
    label_blacklist: frozenset = DEFAULT_BLACKLIST
    cost_weights: tuple = DEFAULT_WEIGHTS
    noise: motion.NoiseConfig = motion.NoiseConfig()

    def __post_init__(self):
        if self.t_match < 0:
            raise ValueError("t_match must be >= 0")
        if self.n_timeout < 0:
            raise ValueError("n_timeout must be >= 0")
        if not 0.0 <= self.nms_iou <= 1.0:
            raise ValueError("nms_iou must lie in [0, 1]")
        weights = tuple(float(w) for w in self.cost_weights)
        if len(weights) != 3 or any(w < 0 for w in weights):
            raise ValueError("cost_weights must be three non-negative numbers")
        object.__setattr__(self, "cost_weights", weights)
        object.__setattr__(self, "label_blacklist", frozenset(ClassLabel(l) for l in self.label_blacklist))


@dataclass(frozen=True)
class TrackRecord:
    """One emitted row of tracker output."""

    frame: int
    track_id: int
    box: BoundingBox
    label: ClassLabel
    confidence: float
    status: str


@dataclass
class Track:
    id: int
    state: motion.KalmanState
    last_label: ClassLabel
    last_confidence: float
    last_histogram: np.ndarray
    miss_count: int = 0
    history: list = field(default_factory=list)  # (frame, BoundingBox, status)

    def view(self) -> TrackView:
        return TrackView(self.last_label, self.last_confidence, self.state.box, self.last_histogram)


class Tracker:
    """Stateful per-sequence tracker. Feed frames in order through :meth:`step`."""

    def __init__(self, config: TrackerConfig = TrackerConfig()):
        self.config = config
        self.tracks: list[Track] = []
        self.frame_index: int | None = None
        self.next_id = 1
        self.created = 0
        self.removed = 0

    def _spawn(self, det: Detection, frame: int) -> TrackRecord:
        track = Track(
            id=self.next_id,
            state=motion.init_state(det.box, self.config.noise),
            last_label=det.label,
            last_confidence=det.confidence,
            last_histogram=det.histogram,
        )
        self.next_id += 1
        self.created += 1
        track.history.append((frame, det.box, MATCHED))
        self.tracks.append(track)
        return TrackRecord(frame, track.id, det.box, det.label, det.confidence, MATCHED)

    def step(self, frame_index: int, detections: Sequence[Detection]) -> list[TrackRecord]:
        """Advance one frame; returns the records emitted for this frame, sorted by id."""
        if self.frame_index is not None and frame_index != self.frame_index + 1:
            raise ValueError(f"frame {frame_index} does not follow frame {self.frame_index}")
        self.frame_index = frame_index
        cfg = self.config

        if not self.tracks:
            return [self._spawn(d, frame_index) for d in detections]

        for t in self.tracks:
            t.state = motion.predict(t.state, cfg.noise)

        costs = cost_matrix([t.view() for t in self.tracks], detections, cfg.cost_weights)
        result = assign(costs, cfg.t_match)

        records = []
        for ti, di, _ in result.matches:
            t, d = self.tracks[ti], detections[di]
            t.state = motion.update(t.state, d.box, cfg.noise)
            t.last_label, t.last_confidence, t.last_histogram = d.label, d.confidence, d.histogram
            t.miss_count = 0
            t.history.append((frame_index, d.box, MATCHED))
            records.append(TrackRecord(frame_index, t.id, d.box, d.label, d.confidence, MATCHED))

        dead = set()
        for ti in result.unmatched_tracks:
            t = self.tracks[ti]
            t.miss_count += 1
            if t.miss_count > cfg.n_timeout:
                dead.add(ti)
                continue
            box = t.state.box
            t.history.append((frame_index, box, PREDICTED))
            records.append(TrackRecord(frame_index, t.id, box, t.last_label, t.last_confidence, PREDICTED))
        if dead:
            log.debug("frame %d: removing tracks %s", frame_index, [self.tracks[i].id for i in sorted(dead)])
            self.removed += len(dead)
            self.tracks = [t for i, t in enumerate(self.tracks) if i not in dead]

        for di in result.unmatched_detections:
            records.append(self._spawn(detections[di], frame_index))

        records.sort(key=lambda r: r.track_id)
        return records


def preprocess(detections: Sequence[Detection], config: TrackerConfig) -> list[Detection]:
    """Label blacklist, then non-maximal suppression."""
    return nms(filter_labels(detections, config.label_blacklist), config.nms_iou)


def run_sequence(config: TrackerConfig, detections: Mapping[int, Sequence[Detection]], n_frames: int | None = None, tracker: Tracker | None = None) -> list[TrackRecord]:
    """Track a whole sequence; frames absent from ``detections`` count as empty.

    Frames run from 0 to ``n_frames - 1`` (default: last detection frame).
    """
    if n_frames is None:
        n_frames = max(detections) + 1 if detections else 0
    tracker = tracker if tracker is not None else Tracker(config)
    out: list[TrackRecord] = []
    for frame in range(n_frames):
        dets = preprocess(detections.get(frame, []), config)
        out.extend(tracker.step(frame, dets))
    return out


def format_tracks(records: Sequence[TrackRecord]) -> str:
    lines = []
    for r in records:
        lines.append(",".join([
            str(r.frame), str(r.track_id), *(fmt_num(v) for v in r.box.as_tuple()),
            r.label.value, fmt_num(r.confidence), r.status,
        ]))
    return "".join(line + "\n" for line in lines)


def write_tracks(path, records: Sequence[TrackRecord]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_tracks(records))


def parse_tracks(path) -> dict[int, list[TrackRecord]]:
    """Read ``frame,track_id,x,y,w,h,label,confidence,status`` records grouped by frame."""
    grouped: dict[int, list[TrackRecord]] = {}
    seen = set()
    for lineno, fields in iter_records(path):
        if len(fields) != 9:
            raise ParseError(path, lineno, f"expected 9 fields, got {len(fields)}")
        frame = parse_int(path, lineno, fields[0], "frame")
        tid = parse_int(path, lineno, fields[1], "track_id")
        if (frame, tid) in seen:
            raise ParseError(path, lineno, f"duplicate track id {tid} in frame {frame}")
        seen.add((frame, tid))
        box = parse_box(path, lineno, fields[2:6])
        try:
            label = ClassLabel.parse(fields[6])
        except ValueError as e:
            raise ParseError(path, lineno, str(e)) from None
        conf = parse_float(path, lineno, fields[7], "confidence")
        status = fields[8]
        if status not in (MATCHED, PREDICTED):
            raise ParseError(path, lineno, f"unknown status {status!r}")
        grouped.setdefault(frame, []).append(TrackRecord(frame, tid, box, label, conf, status))
    return dict(sorted(grouped.items()))
