"""
Matching tracks to detections
=============================

Association is a minimum-cost bipartite matching; pairs that still cost
too much afterwards are split up again by the gate.
"""

import numpy as np

from urbanmot.assignment import assign, solve_min_cost

costs = np.array([
    [0.2, 1.9, 2.5],
    [1.8, 0.4, 2.1],
    [2.6, 2.2, 2.0],
])
print("optimal pairs:", solve_min_cost(costs))

# with the default threshold of 1.5 the last pair (cost 2.0) is rejected
res = assign(costs, 1.5)
print("kept:", res.matches)
print("lonely tracks:", res.unmatched_tracks, "lonely detections:", res.unmatched_detections)

###############################################################################
# Rectangular problems are fine too: four tracks, two detections.
rng = np.random.default_rng(1)
wide = rng.uniform(0, 3, size=(4, 2))
print(np.round(wide, 2))
print(assign(wide, 1.5))

###############################################################################
# Equal-cost alternatives are broken the same way every time, which keeps the
# tracker output reproducible.
print(solve_min_cost(np.ones((3, 3))))
