"""Flat ``key = value`` configuration files.

Precedence when building a run configuration: command-line flag, then the
config file, then the built-in default.
"""

from __future__ import annotations

import os
from pathlib import Path

from .motion import NoiseConfig
from .tracker import TrackerConfig
from .types import ClassLabel

ENV_VAR = "URBANMOT_CONFIG"
DEFAULT_IOU_GATE = 0.5

_NOISE_KEYS = ("process_pos_var", "process_vel_var", "measurement_var", "initial_vel_var")


def _labels(text: str) -> frozenset:
    text = text.strip()
    if not text or text.lower() == "none":
        return frozenset()
    return frozenset(ClassLabel.parse(s) for s in text.split(","))


def _weights(text: str) -> tuple:
    parts = [float(s) for s in text.split(",")]
    if len(parts) != 3:
        raise ValueError("cost_weights needs three comma-separated numbers")
    return tuple(parts)


# key -> parser from text
KEYS = {
    "t_match": float,
    "n_timeout": int,
    "nms_iou": float,
    "label_blacklist": _labels,
    "cost_weights": _weights,
    "process_pos_var": float,
    "process_vel_var": float,
    "measurement_var": float,
    "initial_vel_var": float,
    "iou_gate": float,
}


class ConfigError(ValueError):
    pass


def read_config(path) -> dict:
    """Parse a config file into typed values keyed by name."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = KEYS[key](value)
        except ValueError as e:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {e}") from None
    return values


def default_config_path():
    p = os.environ.get(ENV_VAR)
    return Path(p) if p else None


def resolve(file_values: dict, overrides: dict) -> tuple[TrackerConfig, float]:
    """Merge file values and non-None overrides into (TrackerConfig, iou_gate)."""
    merged = dict(file_values)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    noise = NoiseConfig(**{k: merged[k] for k in _NOISE_KEYS if k in merged})
    kwargs = {k: merged[k] for k in ("t_match", "n_timeout", "nms_iou", "label_blacklist", "cost_weights") if k in merged}
    return TrackerConfig(noise=noise, **kwargs), merged.get("iou_gate", DEFAULT_IOU_GATE)


def dump_config(config: TrackerConfig, iou_gate: float = DEFAULT_IOU_GATE) -> str:
    from .ingest import fmt_num

    lines = [
        f"t_match = {fmt_num(config.t_match)}",
        f"n_timeout = {config.n_timeout}",
        f"nms_iou = {fmt_num(config.nms_iou)}",
        "label_blacklist = " + (",".join(sorted(l.value for l in config.label_blacklist)) or "none"),
        "cost_weights = " + ",".join(fmt_num(w) for w in config.cost_weights),
    ]
    lines += [f"{k} = {fmt_num(getattr(config.noise, k))}" for k in _NOISE_KEYS]
    lines.append(f"iou_gate = {fmt_num(iou_gate)}")
    return "\n".join(lines) + "\n"
