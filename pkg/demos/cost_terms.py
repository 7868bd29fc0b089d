"""
Three ways two boxes can disagree
=================================

A track and a detection are compared on class label, position and color.
Each term lies in [0, 1]; the tracker adds them up.
"""

import numpy as np

from urbanmot.costmodel import TrackView, color_cost, label_cost, position_cost, total_cost
from urbanmot.types import BoundingBox, ClassLabel, Detection, HIST_BINS

# same class: the cost shrinks as both confidences rise
for conf in (0.5, 0.8, 1.0):
    print(f"car {conf:.1f} vs car {conf:.1f}: {label_cost(ClassLabel.CAR, conf, ClassLabel.CAR, conf):.2f}")
# a different class always costs the full 1
print("car vs bus:", label_cost(ClassLabel.CAR, 1.0, ClassLabel.BUS, 1.0))

###############################################################################
# Position is one minus intersection over union. Slide a box across another.
a = BoundingBox(0, 0, 10, 10)
for dx in range(0, 12, 2):
    print(f"shift {dx:2d}px -> position cost {position_cost(a, BoundingBox(dx, 0, 10, 10)):.3f}")

###############################################################################
# Color compares 512-bin RGB histograms with the Bhattacharyya distance.
rng = np.random.default_rng(0)
red = np.zeros(HIST_BINS)
red[7 * 64] = 1.0
noisy = rng.random(HIST_BINS)
noisy /= noisy.sum()
print("red vs red:  ", color_cost(red, red))
print("red vs noise:", round(color_cost(red, noisy), 4))

###############################################################################
# All three together, with and without the label term.
track = TrackView(ClassLabel.CAR, 0.9, a, red)
d = Detection(1, BoundingBox(3, 1, 10, 10), ClassLabel.PICKUP_TRUCK, 0.9, red)
parts = total_cost(track, d)
print(parts)
print("weights 1,1,1:", round(parts.weighted((1, 1, 1)), 4))
print("weights 0,1,1:", round(parts.weighted((0, 1, 1)), 4))
