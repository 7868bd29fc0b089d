"""
Coasting through an occlusion
=============================

A single car loses its detections for a few frames. The Kalman prediction
carries the track across short gaps; a long gap outlives the timeout and
the car comes back under a new id.
"""

from urbanmot.metrics import evaluate
from urbanmot.synth import occlusion_gap
from urbanmot.tracker import TrackerConfig, run_sequence

config = TrackerConfig(n_timeout=5)

for gap in (2, 5, 7):
    sc = occlusion_gap(seed=0, gap=gap)
    records = run_sequence(config, sc.detections, sc.n_frames)
    ids = sorted({r.track_id for r in records})
    coasted = [r.frame for r in records if r.status == "predicted"]
    print(f"gap {gap}: ids {ids}, predicted frames {coasted}")

###############################################################################
# How close were the predicted boxes? Score the 5-frame gap.
sc = occlusion_gap(seed=0, gap=5)
records = run_sequence(config, sc.detections, sc.n_frames)
hyp = {}
for r in records:
    hyp.setdefault(r.frame, []).append(r)
res = evaluate(sc.ground_truth, hyp)
print(f"MOTA {res.mota:.3f}  MOTP {res.motp:.3f}")
for r in records:
    if r.status == "predicted":
        truth = sc.ground_truth[r.frame][0].box
        print(r.frame, tuple(round(v, 2) for v in r.box.as_tuple()), "truth", truth.as_tuple())
