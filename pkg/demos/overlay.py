"""
Drawing tracks on frames
========================

Write a synthetic scene with its frames, track it using color histograms
taken from the pixels, and draw the tracks back onto the images.
"""

import sys
import tempfile
from pathlib import Path

from urbanmot.cli import main

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp(prefix="urbanmot-"))
data, tracks, frames = out / "data", out / "tracks", out / "overlay"

main(["synth", "--scenario", "crossing_labels", "--seed", "7", "--frames", "--out", str(data)])
main(["track", "--detections", str(data / "detections.csv"), "--frames", str(data / "frames"),
      "--gt", str(data / "gt.csv"), "--out", str(tracks)])
main(["render", "--frames", str(data / "frames"), "--tracks", str(tracks / "detections.tracks.csv"),
      "--out", str(frames)])
print((tracks / "detections.summary.txt").read_text())
# PPM opens in most image viewers; convert with any image tool if it does not
print("overlays in", frames)
