"""CLEAR MOT evaluation (MOTA, MOTP with IoU as the overlap measure)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .assignment import solve_min_cost
from .costmodel import iou


@dataclass
class FrameEvalAccumulator:
    matches: int = 0
    misses: int = 0
    false_positives: int = 0
    mismatches: int = 0
    overlap_sum: float = 0.0
    gt_count: int = 0

    @property
    def mota(self) -> float:
        if self.gt_count == 0:
            raise ValueError("MOTA is undefined without ground-truth objects")
        return 1.0 - (self.misses + self.false_positives + self.mismatches) / self.gt_count

    @property
    def motp(self) -> float:
        return self.overlap_sum / self.matches if self.matches else 0.0


@dataclass(frozen=True)
class EvalResult:
    mota: float
    motp: float
    counts: FrameEvalAccumulator


def _ident(item):
    """(id, box) for either a ground-truth entry or a track record."""
    if hasattr(item, "object_id"):
        return item.object_id, item.box
    return item.track_id, item.box


def evaluate(gt: Mapping[int, Sequence], hyp: Mapping[int, Sequence], iou_gate: float = 0.5) -> EvalResult:
    """Score hypotheses against ground truth frame by frame.

    ``gt`` and ``hyp`` map frame index to lists of objects carrying an id
    (``object_id`` / ``track_id``) and a ``box``.
    """
    if not 0.0 < iou_gate <= 1.0:
        raise ValueError("iou_gate must lie in (0, 1]")
    acc = FrameEvalAccumulator()
    prev_frame: dict[int, int] = {}  # gt id -> hyp id, previous frame only
    last_match: dict[int, int] = {}  # gt id -> hyp id, most recent match ever

    for frame in sorted(set(gt) | set(hyp)):
        g = dict(_ident(e) for e in gt.get(frame, []))
        h = dict(_ident(e) for e in hyp.get(frame, []))
        acc.gt_count += len(g)
        current: dict[int, int] = {}
        overlaps: dict[int, float] = {}

        for gid, hid in prev_frame.items():
            if gid in g and hid in h:
                o = iou(g[gid], h[hid])
                if o >= iou_gate:
                    current[gid] = hid
                    overlaps[gid] = o

        taken = set(current.values())
        g_left = [k for k in g if k not in current]
        h_left = [k for k in h if k not in taken]
        if g_left and h_left:
            ious = np.array([[iou(g[a], h[b]) for b in h_left] for a in g_left])
            cost = 1.0 - ious
            # pairs below the gate are priced so that no valid pair is ever
            # traded away for one
            cost[ious < iou_gate] = min(len(g_left), len(h_left)) + 1.0
            for r, c in solve_min_cost(cost):
                if ious[r, c] >= iou_gate:
                    current[g_left[r]] = h_left[c]
                    overlaps[g_left[r]] = float(ious[r, c])

        for gid, hid in current.items():
            if gid in last_match and last_match[gid] != hid:
                acc.mismatches += 1
            last_match[gid] = hid
        acc.matches += len(current)
        acc.overlap_sum += sum(overlaps[gid] for gid in current)
        acc.misses += len(g) - len(current)
        acc.false_positives += len(h) - len(current)
        prev_frame = current

    return EvalResult(acc.mota, acc.motp, acc)


REPORT_COLUMNS = ("sequence", "motp_with", "motp_without", "mota_with", "mota_without")


def report(results: Mapping[str, tuple[EvalResult, EvalResult]]) -> tuple[str, str]:
    """Comparison of two tracker configurations per sequence.

    ``results`` maps sequence name to (with-labels, without-labels) results.
    Returns (csv text, aligned plain-text table); rows are sorted by name.
    """
    if not results:
        raise ValueError("no sequences to report")
    rows = []
    for name in sorted(results):
        with_l, without_l = results[name]
        rows.append([name, f"{with_l.motp:.4f}", f"{without_l.motp:.4f}", f"{with_l.mota:.4f}", f"{without_l.mota:.4f}"])
    csv_text = "".join(",".join(r) + "\n" for r in [list(REPORT_COLUMNS), *rows])
    widths = [max(len(r[i]) for r in [list(REPORT_COLUMNS), *rows]) for i in range(len(REPORT_COLUMNS))]
    lines = []
    for k, r in enumerate([list(REPORT_COLUMNS), *rows]):
        lines.append("  ".join(cell.ljust(widths[0]) if i == 0 else cell.rjust(widths[i]) for i, cell in enumerate(r)).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return csv_text, "\n".join(lines) + "\n"
