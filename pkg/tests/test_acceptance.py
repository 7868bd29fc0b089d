"""Acceptance criteria, one test each.

A pass/fail line per criterion is printed in the terminal summary.
"""

import filecmp
import itertools
import time
from collections import defaultdict

import numpy as np
import pytest

from urbanmot import motion
from urbanmot.assignment import solve_min_cost
from urbanmot.cli import main
from urbanmot.costmodel import TrackView, color_cost, label_cost, position_cost, total_cost
from urbanmot.metrics import evaluate
from urbanmot.synth import crossing_labels, fp_storm, occlusion_gap
from urbanmot.tracker import PREDICTED, TrackerConfig, run_sequence
from urbanmot.types import BoundingBox, ClassLabel

from conftest import det, pixel_jaccard_distance
from test_costmodel import bhattacharyya_oracle
from test_metrics import hand_counted_sequence

CAR, BUS = ClassLabel.CAR, ClassLabel.BUS


def by_frame(records):
    out = defaultdict(list)
    for r in records:
        out[r.frame].append(r)
    return dict(out)


_PERMS = {}


def _oracle_and_solver_totals(m, pairs):
    """Brute-force minimum and the solver's total, summed the same way."""
    if m.shape[0] > m.shape[1]:
        m = m.T
        pairs = [(c, r) for r, c in pairs]
    r, c = m.shape
    if (r, c) not in _PERMS:
        _PERMS[r, c] = np.array(list(itertools.permutations(range(c), r)), dtype=int).reshape(-1, r)
    perms = _PERMS[r, c]
    totals = m[np.arange(r), perms].sum(axis=1)
    pairs = sorted(pairs)
    got = m[[p[0] for p in pairs], [p[1] for p in pairs]][None, :].sum(axis=1)[0]
    return totals.min(), got


def test_hungarian_oracle(criterion):
    criterion("criterion 1: Hungarian total equals brute force on 1000 random matrices, < 10 s")
    rng = np.random.default_rng(2024)
    mats = [rng.uniform(0, 3, size=tuple(rng.integers(1, 8, size=2))) for _ in range(1000)]
    mats[:7] = [rng.uniform(0, 3, size=(k, k)) for k in range(1, 8)]
    t0 = time.perf_counter()
    solutions = [solve_min_cost(m) for m in mats]
    elapsed = time.perf_counter() - t0
    for m, pairs in zip(mats, solutions):
        assert len(pairs) == min(m.shape)
        best, got = _oracle_and_solver_totals(m, pairs)
        assert got == best
    assert elapsed < 10.0


def test_cost_formulas(criterion):
    criterion("criterion 2: cost formula examples and 10000 symmetry/range checks")
    assert label_cost(CAR, 0.8, CAR, 0.6) == pytest.approx(0.3, abs=1e-12)
    assert label_cost(CAR, 0.8, BUS, 0.6) == 1.0
    assert label_cost(CAR, 1.0, CAR, 1.0) == 0.0
    assert position_cost(BoundingBox(0, 0, 10, 10), BoundingBox(5, 0, 10, 10)) == pytest.approx(0.6667, abs=1e-4)
    assert color_cost(np.array([0.5, 0.5]), np.array([1.0, 0.0])) == pytest.approx(0.5412, abs=1e-4)
    h1, h2 = np.zeros(512), np.zeros(512)
    h1[:2] = 0.5
    h2[0] = 1.0
    tv = TrackView(CAR, 0.8, BoundingBox(0, 0, 10, 10), h1)
    assert total_cost(tv, det(box=(5, 0, 10, 10), label=CAR, conf=0.6, hist=h2)).total == pytest.approx(1.5079, abs=1e-4)

    rng = np.random.default_rng(5)
    labels = list(ClassLabel)
    for _ in range(10000):
        a = BoundingBox(*rng.uniform(-50, 50, 2), *rng.uniform(0.5, 60, 2))
        b = BoundingBox(*rng.uniform(-50, 50, 2), *rng.uniform(0.5, 60, 2))
        p = position_cost(a, b)
        assert p == position_cost(b, a) and 0.0 <= p <= 1.0
        ha, hb = rng.random(32) * (rng.random(32) < 0.5), rng.random(32)
        if ha.sum() > 0:
            ha = ha / ha.sum()
        hb = hb / hb.sum()
        c = color_cost(ha, hb)
        assert c == color_cost(hb, ha) and 0.0 <= c <= 1.0
        la, lb = labels[rng.integers(11)], labels[rng.integers(11)]
        ca, cb = rng.uniform(0, 1, 2)
        l = label_cost(la, ca, lb, cb)
        assert l == label_cost(lb, cb, la, ca) and 0.0 <= l <= 1.0
    # color term against an independent evaluation
    for _ in range(100):
        ha, hb = rng.random(16), rng.random(16)
        ha, hb = ha / ha.sum(), hb / hb.sum()
        assert color_cost(ha, hb) == pytest.approx(bhattacharyya_oracle(list(ha), list(hb)), abs=1e-9)


def test_pixel_oracle(criterion):
    criterion("criterion 3: position cost equals pixel-set Jaccard on 1000 integer box pairs")
    rng = np.random.default_rng(11)
    for _ in range(1000):
        boxes = []
        for _ in range(2):
            w, h = rng.integers(1, 51, size=2)
            x, y = rng.integers(0, 51 - w), rng.integers(0, 51 - h)
            boxes.append(BoundingBox(int(x), int(y), int(w), int(h)))
        assert position_cost(*boxes) == pixel_jaccard_distance(*boxes)


def test_kalman(criterion):
    criterion("criterion 4: Kalman convergence < 1e-3 px in 20 frames; PSD over 1000 sequences")
    noise = motion.NoiseConfig()
    a, b = 37.0, 3.25
    state = motion.init_state(BoundingBox(a - 10, 50, 20, 10), noise)
    for t in range(1, 21):
        state = motion.predict(state, noise)
        err = abs(state.mean[0] - (a + b * t))
        state = motion.update(state, BoundingBox(a + b * t - 10, 50, 20, 10), noise)
    assert err < 1e-3

    rng = np.random.default_rng(3)
    for _ in range(1000):
        cfg = motion.NoiseConfig(*rng.uniform(0, 2, 3), rng.uniform(0, 2000))
        s = motion.init_state(BoundingBox(*rng.uniform(0, 100, 2), *rng.uniform(1, 50, 2)), cfg)
        for _ in range(rng.integers(1, 30)):
            s = motion.predict(s, cfg)
            if rng.random() < 0.7:
                s = motion.update(s, BoundingBox(*rng.uniform(0, 100, 2), *rng.uniform(1, 50, 2)), cfg)
            P = s.covariance
            assert np.max(np.abs(P - P.T)) <= 1e-9
            assert np.linalg.eigvalsh(P).min() >= -1e-9
            assert np.all(np.diag(P) >= 0)


def test_lifecycle(criterion):
    criterion("criterion 5: 2-frame gap keeps one id with 2 predicted entries; 7-frame gap gives two ids")
    cfg = TrackerConfig(n_timeout=5)
    sc = occlusion_gap(gap=2)
    out = run_sequence(cfg, sc.detections, sc.n_frames)
    assert {r.track_id for r in out} == {1}
    assert sum(r.status == PREDICTED for r in out) == 2
    sc = occlusion_gap(gap=7)
    out = run_sequence(cfg, sc.detections, sc.n_frames)
    assert {r.track_id for r in out} == {1, 2}


def test_perfect_tracking(criterion):
    criterion("criterion 6: noise-free crossing gives MOTA 1, MOTP 1, no mismatches")
    sc = crossing_labels(seed=7)
    res = evaluate(sc.ground_truth, by_frame(run_sequence(TrackerConfig(), sc.detections, sc.n_frames)))
    assert res.mota == 1.0
    assert res.motp == pytest.approx(1.0, abs=1e-9)
    assert res.counts.mismatches == 0


def test_label_cost_helps(criterion):
    criterion("criterion 7: label cost raises MOTA on the crossing scenario with identical colors")
    sc = crossing_labels(seed=7, jitter=4.0, uniform_color=True, confidence=0.9)
    with_labels = evaluate(sc.ground_truth, by_frame(run_sequence(TrackerConfig(), sc.detections, sc.n_frames)))
    without = evaluate(sc.ground_truth, by_frame(run_sequence(TrackerConfig(cost_weights=(0, 1, 1)), sc.detections, sc.n_frames)))
    print(f"MOTA with labels {with_labels.mota:.4f}, without {without.mota:.4f}")
    assert with_labels.mota - without.mota > 0
    assert with_labels.counts.mismatches == 0


def test_negative_mota(criterion):
    criterion("criterion 8: duplicate detections drive MOTA below 0 with MOTP in [0.6, 1]")
    sc = fp_storm(seed=0)
    res = evaluate(sc.ground_truth, by_frame(run_sequence(TrackerConfig(), sc.detections, sc.n_frames)))
    print(f"fp_storm MOTA {res.mota:.4f} MOTP {res.motp:.4f}")
    assert res.mota < 0
    assert 0.6 <= res.motp <= 1.0


def test_mota_arithmetic(criterion):
    criterion("criterion 9: hand-counted sequence gives MOTA 0.68 and MOTP 0.8")
    gt, hyp = hand_counted_sequence()
    res = evaluate(gt, hyp)
    c = res.counts
    assert (c.matches, c.misses, c.false_positives, c.mismatches, c.gt_count) == (90, 10, 20, 2, 100)
    assert res.mota == pytest.approx(0.68, abs=1e-12)
    assert res.motp == pytest.approx(0.8, abs=1e-12)


def test_determinism(criterion, tmp_path, capsys):
    criterion("criterion 10: track + evaluate twice give byte-identical outputs")
    data = tmp_path / "data"
    assert main(["synth", "--scenario", "parked_clutter", "--seed", "4", "--frames", "--out", str(data)]) == 0
    capsys.readouterr()
    outputs = []
    for run in ("a", "b"):
        out = tmp_path / run
        assert main(["track", "--detections", str(data / "detections.csv"), "--frames", str(data / "frames"),
                     "--gt", str(data / "gt.csv"), "--out", str(out)]) == 0
        assert main(["evaluate", "--gt", str(data / "gt.csv"), "--hyp", str(out / "detections.tracks.csv")]) == 0
        outputs.append(capsys.readouterr().out.replace(str(out), "<out>"))
    names = ["detections.tracks.csv", "detections.summary.txt", "detections.tracks.metrics.csv"]
    for name in names:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    assert outputs[0] == outputs[1]
