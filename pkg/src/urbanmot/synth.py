"""Synthetic traffic scenarios with known ground truth.

Each scenario rasterizes its road users into small RGB frames, so detection
histograms come from real pixels, and returns the detections the tracker
consumes together with the ground truth used for scoring.

Scenarios:

``crossing_labels``
    Two same-sized road users of different classes drive through each other
    mid-sequence.
``occlusion_gap``
    One road user whose detections drop out for a few frames.
``fp_storm``
    Every true detection comes with shifted, lower-confidence duplicates that
    survive NMS (the detector reporting one object several times).
``parked_clutter``
    Moving road users plus parked cars that are detected but are not ground
    truth, and stray background hits labeled non_motorized_vehicle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .ingest import box_histogram, write_detections, write_ground_truth
from .ppm import frame_path, write_ppm
from .types import BoundingBox, ClassLabel, Detection, GroundTruthEntry

WIDTH, HEIGHT = 320, 240
BACKGROUND = (96, 96, 96)
SCENARIOS = ("crossing_labels", "occlusion_gap", "fp_storm", "parked_clutter")


@dataclass
class _Actor:
    label: ClassLabel
    color: tuple
    size: tuple  # (w, h)
    start: np.ndarray  # center at frame 0
    velocity: np.ndarray
    object_id: int | None  # None: not part of ground truth

    def box(self, t: int) -> BoundingBox:
        cx, cy = self.start + t * self.velocity
        w, h = self.size
        return BoundingBox(float(cx - w / 2), float(cy - h / 2), float(w), float(h))


@dataclass
class Scenario:
    name: str
    seed: int
    n_frames: int
    detections: dict = field(default_factory=dict)  # frame -> [Detection]
    ground_truth: dict = field(default_factory=dict)  # frame -> [GroundTruthEntry]
    frames: list = field(default_factory=list)  # (H, W, 3) uint8 images
    params: dict = field(default_factory=dict)

    def write(self, out_dir, write_frames: bool = False) -> dict:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_detections(out / "detections.csv", self.detections)
        write_ground_truth(out / "gt.csv", self.ground_truth)
        manifest = {
            "scenario": self.name,
            "seed": self.seed,
            "n_frames": self.n_frames,
            "detections": "detections.csv",
            "gt": "gt.csv",
        }
        if write_frames:
            (out / "frames").mkdir(exist_ok=True)
            for t, img in enumerate(self.frames):
                write_ppm(frame_path(out / "frames", t), img)
            manifest["frames"] = "frames"
        manifest.update(self.params)
        with open(out / "scenario.txt", "w", encoding="utf-8", newline="\n") as f:
            for k, v in manifest.items():
                f.write(f"{k} = {v}\n")
        return manifest


def _draw(actors, t):
    img = np.empty((HEIGHT, WIDTH, 3), dtype=np.uint8)
    img[:] = BACKGROUND
    for a in actors:
        b = a.box(t)
        x0, y0 = max(0, int(round(b.x))), max(0, int(round(b.y)))
        x1, y1 = min(WIDTH, int(round(b.right))), min(HEIGHT, int(round(b.bottom)))
        if x1 > x0 and y1 > y0:
            img[y0:y1, x0:x1] = a.color
    return img


def _jittered(box: BoundingBox, rng, sigma: float) -> BoundingBox:
    """Shift a box by isotropic Gaussian noise; the size is kept."""
    if sigma <= 0:
        return box
    dx, dy = rng.normal(0.0, sigma, 2)
    return BoundingBox(box.x + dx, box.y + dy, box.w, box.h)


def _assemble(name, seed, n_frames, actors, det_boxes, params) -> Scenario:
    """det_boxes(t) -> list of (box, label, confidence) for frame t."""
    sc = Scenario(name, seed, n_frames, params=params)
    for t in range(n_frames):
        img = _draw(actors, t)
        sc.frames.append(img)
        gt = [GroundTruthEntry(t, a.object_id, a.box(t)) for a in actors if a.object_id is not None]
        if gt:
            sc.ground_truth[t] = gt
        dets = [Detection(t, box, label, conf, box_histogram(img, box)) for box, label, conf in det_boxes(t)]
        if dets:
            sc.detections[t] = dets
    return sc


def crossing_labels(seed: int = 7, n_frames: int = 20, jitter: float = 0.0, uniform_color: bool = False, confidence: float = 0.9, lane_gap: float = 10.5, speed: float = 1.0) -> Scenario:
    """Two same-sized road users of different classes passing head-on.

    They drive in opposite directions along adjacent lanes ``lane_gap``
    pixels apart, so their boxes overlap heavily around the middle frame
    while peak IoU stays under the default NMS threshold. ``jitter`` is the
    standard deviation (pixels) of Gaussian noise added to each detected box
    position; ``uniform_color`` paints both vehicles the same color so color
    histograms cannot tell them apart.
    """
    rng = np.random.default_rng(seed)
    meet = np.array([WIDTH / 2, HEIGHT / 2]) + rng.uniform(-10, 10, 2)
    t_meet = (n_frames - 1) / 2
    speed = speed * rng.uniform(0.9, 1.1)
    drift = rng.uniform(0.4, 0.8)
    colors = [(200, 40, 40), (200, 40, 40)] if uniform_color else [(200, 40, 40), (40, 60, 200)]
    actors = []
    for k, (label, sign) in enumerate([(ClassLabel.CAR, 1.0), (ClassLabel.PICKUP_TRUCK, -1.0)]):
        v = np.array([sign * speed, drift])
        at_meet = meet + np.array([0.0, -sign * lane_gap / 2])
        actors.append(_Actor(label, colors[k], (40, 30), at_meet - t_meet * v, v, k + 1))
    det_rng = np.random.default_rng([seed, 1])

    def dets(t):
        return [(_jittered(a.box(t), det_rng, jitter), a.label, confidence) for a in actors]

    params = {"jitter": jitter, "uniform_color": uniform_color, "confidence": confidence, "lane_gap": lane_gap}
    return _assemble("crossing_labels", seed, n_frames, actors, dets, params)


def occlusion_gap(seed: int = 0, gap: int = 2, gap_start: int = 4, n_frames: int | None = None, confidence: float = 0.9) -> Scenario:
    """One road user whose detections vanish for ``gap`` frames."""
    if n_frames is None:
        n_frames = max(12, gap_start + gap + 4)
    rng = np.random.default_rng(seed)
    v = np.array([6.0, 2.0]) + rng.uniform(-1, 1, 2)
    start = np.array([40.0, 60.0]) + rng.uniform(-10, 10, 2)
    total = start + (n_frames - 1) * v
    if not (0 < total[0] < WIDTH and 0 < total[1] < HEIGHT):
        # keep the whole trajectory on screen for long sequences
        v = v * min(1.0, (WIDTH - 60 - start[0]) / ((n_frames - 1) * v[0]))
    actor = _Actor(ClassLabel.CAR, (220, 200, 30), (36, 24), start, v, 1)
    hidden = range(gap_start, gap_start + gap)

    def dets(t):
        return [] if t in hidden else [(actor.box(t), actor.label, confidence)]

    params = {"gap": gap, "gap_start": gap_start}
    return _assemble("occlusion_gap", seed, n_frames, [actor], dets, params)


def fp_storm(seed: int = 0, n_frames: int = 20, n_objects: int = 3, duplicates: int = 2) -> Scenario:
    """Each true detection is echoed by shifted, less confident copies."""
    rng = np.random.default_rng(seed)
    labels = [ClassLabel.CAR, ClassLabel.BUS, ClassLabel.PEDESTRIAN, ClassLabel.WORK_VAN, ClassLabel.MOTORCYCLE]
    palette = [(200, 40, 40), (40, 180, 60), (40, 60, 200), (220, 200, 30), (180, 40, 180)]
    actors = []
    for k in range(n_objects):
        lane_y = 40 + k * (HEIGHT - 80) / max(1, n_objects - 1)
        start = np.array([50.0 + rng.uniform(0, 30), lane_y])
        v = np.array([rng.uniform(4, 8), rng.uniform(-0.5, 0.5)])
        actors.append(_Actor(labels[k % len(labels)], palette[k % len(palette)], (36, 28), start, v, k + 1))

    def dets(t):
        out = []
        for a in actors:
            b = a.box(t)
            out.append((b, a.label, 0.95))
            for d in range(duplicates):
                side = 1.0 if d % 2 == 0 else -1.0
                shift = side * b.w * rng.uniform(0.5, 0.65)
                dup = BoundingBox(b.x + shift, b.y + rng.uniform(-3, 3), b.w * rng.uniform(0.9, 1.1), b.h * rng.uniform(0.9, 1.1))
                out.append((dup, a.label, float(rng.uniform(0.4, 0.7))))
        return out

    params = {"n_objects": n_objects, "duplicates": duplicates}
    return _assemble("fp_storm", seed, n_frames, actors, dets, params)


def parked_clutter(seed: int = 0, n_frames: int = 20) -> Scenario:
    """Moving traffic past parked cars that the detector also reports."""
    rng = np.random.default_rng(seed)
    actors = [
        _Actor(ClassLabel.CAR, (200, 40, 40), (40, 28), np.array([30.0, 150.0]), np.array([rng.uniform(8, 11), 0.0]), 1),
        _Actor(ClassLabel.PEDESTRIAN, (40, 60, 200), (12, 30), np.array([250.0, 200.0]), np.array([-rng.uniform(2, 4), -rng.uniform(0, 1)]), 2),
    ]
    for k in range(3):
        pos = np.array([60.0 + 90 * k + rng.uniform(-5, 5), 60.0])
        actors.append(_Actor(ClassLabel.CAR, (30, 30, 30 + 60 * k), (44, 26), pos, np.zeros(2), None))

    def dets(t):
        out = [(a.box(t), a.label, 0.9 if a.object_id else float(rng.uniform(0.6, 0.95))) for a in actors]
        if rng.random() < 0.5:
            x, y = rng.uniform(0, WIDTH - 30), rng.uniform(90, 130)
            out.append((BoundingBox(float(x), float(y), 30.0, 20.0), ClassLabel.NON_MOTORIZED_VEHICLE, float(rng.uniform(0.5, 0.8))))
        return out

    return _assemble("parked_clutter", seed, n_frames, actors, dets, {})


_BUILDERS = {
    "crossing_labels": crossing_labels,
    "occlusion_gap": occlusion_gap,
    "fp_storm": fp_storm,
    "parked_clutter": parked_clutter,
}


def make_scenario(name: str, seed: int = 0, **params) -> Scenario:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}") from None
    return builder(seed=seed, **params)
