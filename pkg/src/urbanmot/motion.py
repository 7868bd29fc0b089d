"""Constant-velocity Kalman filter over [cx, cy, w, h] box state."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .types import BoundingBox

_F = np.eye(8)
_F[:4, 4:] = np.eye(4)  # dt = 1 frame
_H = np.zeros((4, 8))
_H[:, :4] = np.eye(4)
_MIN_SIZE = 1.0


@dataclass(frozen=True)
class NoiseConfig:
    process_pos_var: float = 0.01
    process_vel_var: float = 0.01
    measurement_var: float = 1.0
    initial_vel_var: float = 1000.0

    def __post_init__(self):
        for name in ("process_pos_var", "process_vel_var", "measurement_var", "initial_vel_var"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    def process_noise(self) -> np.ndarray:
        return np.diag([self.process_pos_var] * 4 + [self.process_vel_var] * 4)


@dataclass(frozen=True, eq=False)
class KalmanState:
    mean: np.ndarray  # [cx, cy, w, h, vcx, vcy, vw, vh]
    covariance: np.ndarray

    @property
    def box(self) -> BoundingBox:
        return state_to_box(self)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


def _measurement(box: BoundingBox) -> np.ndarray:
    cx, cy = box.center
    return np.array([cx, cy, box.w, box.h])


def init_state(box: BoundingBox, noise: NoiseConfig = NoiseConfig()) -> KalmanState:
    mean = np.zeros(8)
    mean[:4] = _measurement(box)
    cov = np.diag([noise.measurement_var] * 4 + [noise.initial_vel_var] * 4)
    return KalmanState(_frozen(mean), _frozen(cov))


def predict(state: KalmanState, noise: NoiseConfig = NoiseConfig()) -> KalmanState:
    mean = _F @ state.mean
    mean[2:4] = np.maximum(mean[2:4], _MIN_SIZE)
    cov = _F @ state.covariance @ _F.T + noise.process_noise()
    cov = 0.5 * (cov + cov.T)
    return KalmanState(_frozen(mean), _frozen(cov))


def _gain(S: np.ndarray, HP: np.ndarray) -> np.ndarray:
    # K = P H^T S^-1, solved rather than inverted. Dividing through by the
    # largest entry keeps tiny (even subnormal) variances from overflowing.
    scale = float(np.max(np.abs(S)))
    if scale == 0.0:
        return np.zeros(HP.T.shape)
    S, HP = S / scale, HP / scale
    try:
        return np.linalg.solve(S, HP).T
    except np.linalg.LinAlgError:
        return (np.linalg.pinv(S, hermitian=True) @ HP).T


def update(state: KalmanState, measured_box: BoundingBox, noise: NoiseConfig = NoiseConfig()) -> KalmanState:
    P = state.covariance
    R = noise.measurement_var * np.eye(4)
    innovation = _measurement(measured_box) - _H @ state.mean
    S = _H @ P @ _H.T + R
    K = _gain(S, _H @ P)
    mean = state.mean + K @ innovation
    IKH = np.eye(8) - K @ _H
    cov = IKH @ P @ IKH.T + K @ R @ K.T  # Joseph form
    cov = 0.5 * (cov + cov.T)
    return KalmanState(_frozen(mean), _frozen(cov))


def state_to_box(state: KalmanState) -> BoundingBox:
    cx, cy, w, h = (float(v) for v in state.mean[:4])
    return BoundingBox(cx - w / 2.0, cy - h / 2.0, w, h)
