"""``urbanmot`` command-line entry point."""

from __future__ import annotations

import argparse
import logging
import sys
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from . import config as cfgmod
from .ingest import attach_histograms, parse_detections, parse_ground_truth
from .metrics import EvalResult, evaluate, report
from .render import render_tracks
from .synth import SCENARIOS, make_scenario
from .tracker import Tracker, parse_tracks, run_sequence, write_tracks

log = logging.getLogger("urbanmot")


@dataclass
class RunManifest:
    name: str
    detections: Path
    out_dir: Path
    frames_dir: Path | None = None
    ground_truth: Path | None = None
    overrides: dict = field(default_factory=dict)

    def check(self):
        for p in (self.detections, self.frames_dir, self.ground_truth):
            if p is not None and not Path(p).exists():
                raise FileNotFoundError(f"no such file or directory: {p}")


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help=f"key = value config file (default: ${cfgmod.ENV_VAR})")
    p.add_argument("--t-match", type=float, dest="t_match")
    p.add_argument("--n-timeout", type=int, dest="n_timeout")
    p.add_argument("--nms-iou", type=float, dest="nms_iou")
    p.add_argument("--label-blacklist", type=cfgmod.KEYS["label_blacklist"], dest="label_blacklist",
                   help="comma-separated labels, or 'none'")
    p.add_argument("--cost-weights", type=cfgmod.KEYS["cost_weights"], dest="cost_weights",
                   help="label,position,color weights, e.g. 0,1,1 to drop the label term")
    for key in ("process_pos_var", "process_vel_var", "measurement_var", "initial_vel_var"):
        p.add_argument("--" + key.replace("_", "-"), type=float, dest=key)
    p.add_argument("--iou-gate", type=float, dest="iou_gate")


def load_settings(args):
    path = args.config or cfgmod.default_config_path()
    file_values = cfgmod.read_config(path) if path else {}
    overrides = {k: getattr(args, k, None) for k in cfgmod.KEYS}
    return cfgmod.resolve(file_values, overrides)


def _n_frames(*maps, frames_dir=None) -> int:
    last = -1
    for m in maps:
        if m:
            last = max(last, max(m))
    if frames_dir is not None:
        for p in Path(frames_dir).glob("*.ppm"):
            if p.stem.isdigit():
                last = max(last, int(p.stem))
    return last + 1


def _format_counts(name: str, res: EvalResult) -> str:
    c = res.counts
    return (
        f"{name}: MOTA {res.mota:.4f}  MOTP {res.motp:.4f}  "
        f"GT {c.gt_count}  matches {c.matches}  misses {c.misses}  "
        f"false positives {c.false_positives}  mismatches {c.mismatches}"
    )


def _counts_csv(rows) -> str:
    lines = ["hypothesis,mota,motp,gt_count,matches,misses,false_positives,mismatches"]
    for name, res in rows:
        c = res.counts
        lines.append(f"{name},{res.mota!r},{res.motp!r},{c.gt_count},{c.matches},{c.misses},{c.false_positives},{c.mismatches}")
    return "\n".join(lines) + "\n"


def _by_frame(records):
    out = defaultdict(list)
    for r in records:
        out[r.frame].append(r)
    return dict(out)


def cmd_track(args) -> int:
    config, iou_gate = load_settings(args)
    manifest = RunManifest(
        name=args.name or Path(args.detections).stem,
        detections=Path(args.detections),
        out_dir=Path(args.out),
        frames_dir=Path(args.frames) if args.frames else None,
        ground_truth=Path(args.gt) if args.gt else None,
    )
    manifest.check()
    dets = parse_detections(manifest.detections)
    if manifest.frames_dir is not None:
        dets = attach_histograms(dets, manifest.frames_dir)
    gt = parse_ground_truth(manifest.ground_truth) if manifest.ground_truth else {}
    n_frames = _n_frames(dets, gt, frames_dir=manifest.frames_dir)

    tracker = Tracker(config)
    records = run_sequence(config, dets, n_frames, tracker=tracker)
    manifest.out_dir.mkdir(parents=True, exist_ok=True)
    track_path = manifest.out_dir / f"{manifest.name}.tracks.csv"
    write_tracks(track_path, records)

    summary = [
        f"sequence = {manifest.name}",
        f"frames = {n_frames}",
        f"tracks = {tracker.created}",
        f"removed = {tracker.removed}",
    ]
    if gt:
        res = evaluate(gt, _by_frame(records), iou_gate)
        summary += [f"mota = {res.mota!r}", f"motp = {res.motp!r}", f"mismatches = {res.counts.mismatches}"]
    (manifest.out_dir / f"{manifest.name}.summary.txt").write_text("\n".join(summary) + "\n", encoding="utf-8")
    print(f"{manifest.name}: {n_frames} frames, {tracker.created} tracks ({tracker.removed} removed) -> {track_path}")
    return 0


def cmd_evaluate(args) -> int:
    _, settings_gate = load_settings(args)
    iou_gate = args.iou_gate if args.iou_gate is not None else settings_gate
    for p in (args.gt, args.hyp, args.hyp2):
        if p is not None and not Path(p).exists():
            raise FileNotFoundError(f"no such file: {p}")
    gt = parse_ground_truth(args.gt)
    paths = [Path(p) for p in (args.hyp, args.hyp2) if p is not None]
    names = [p.name for p in paths]
    if len(set(names)) < len(names):
        names = [f"{p.parent.name}/{p.name}" for p in paths]
    results = [(name, evaluate(gt, parse_tracks(p), iou_gate)) for name, p in zip(names, paths)]
    for name, res in results:
        print(_format_counts(name, res))
    csv_path = Path(args.out) if args.out else Path(args.hyp).with_suffix(".metrics.csv")
    csv_path.write_text(_counts_csv(results), encoding="utf-8")
    if args.hyp2:
        name = args.name or Path(args.gt).stem
        csv_text, table = report({name: (results[0][1], results[1][1])})
        print()
        print(table, end="")
        csv_path.with_name(csv_path.stem.replace(".metrics", "") + ".comparison.csv").write_text(csv_text, encoding="utf-8")
    return 0


def cmd_synth(args) -> int:
    params = {}
    if args.scenario == "crossing_labels":
        params = {"jitter": args.jitter, "uniform_color": args.uniform_color}
    elif args.scenario == "occlusion_gap":
        params = {"gap": args.gap}
    sc = make_scenario(args.scenario, seed=args.seed, **params)
    sc.write(args.out, write_frames=args.frames)
    print(f"{sc.name} (seed {sc.seed}): {sc.n_frames} frames written to {args.out}")
    return 0


def cmd_render(args) -> int:
    tracks = parse_tracks(args.tracks)
    n = render_tracks(args.frames, tracks, args.out)
    print(f"rendered {n} frames to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="urbanmot", description="Label-aware multi-object tracking for traffic scenes.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("track", help="track a detection file")
    p.add_argument("--detections", required=True)
    p.add_argument("--frames", help="directory of <frame:06d>.ppm images for color histograms")
    p.add_argument("--gt", help="optional ground truth; adds MOTA/MOTP to the summary")
    p.add_argument("--name", help="sequence name (default: detection file stem)")
    p.add_argument("--out", required=True)
    _add_config_flags(p)
    p.set_defaults(func=cmd_track)

    p = sub.add_parser("evaluate", help="CLEAR MOT scores of track files")
    p.add_argument("--gt", required=True)
    p.add_argument("--hyp", required=True, help="track file (with labels, for comparisons)")
    p.add_argument("--hyp2", help="second track file (without labels) for a side-by-side table")
    p.add_argument("--name", help="sequence name in the comparison table")
    p.add_argument("--out", help="metrics CSV path (default: next to --hyp)")
    _add_config_flags(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("synth", help="write a synthetic scenario")
    p.add_argument("--scenario", required=True, choices=SCENARIOS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--frames", action="store_true", help="also write PPM frames")
    p.add_argument("--jitter", type=float, default=0.0, help="crossing_labels: box position noise (px)")
    p.add_argument("--uniform-color", action="store_true", help="crossing_labels: paint both objects alike")
    p.add_argument("--gap", type=int, default=2, help="occlusion_gap: number of missing frames")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("render", help="draw tracks onto PPM frames")
    p.add_argument("--frames", required=True)
    p.add_argument("--tracks", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (OSError, ValueError) as e:
        print(f"urbanmot: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
