"""Reconstruction of a tractrix from its directrix.

The unit segment field is written in the directrix's Frenet frame,
v = sum_j v^j xi_j, and its components obey

    dv/ds = K v - e_1 + v^1 v,

with K the tridiagonal skew matrix of curvatures. Unit initial data keep v
on the unit sphere, and the tractrix f = f~ + v has speed |v^1|.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import IntegrationError, ParameterError
from .frenet import DirectrixSpec, FrenetFrame

log = logging.getLogger(__name__)

__all__ = [
    "IntegrationConfig",
    "TractrixSample",
    "ode_rhs",
    "rk4_step",
    "integrate",
    "tractrix_position",
    "tangent_vector",
    "tangency_residual",
    "REGULARITY_THRESHOLD",
]

REGULARITY_THRESHOLD = 1e-8


@dataclass(frozen=True)
class IntegrationConfig:
    s_min: float
    s_max: float
    h: float = 1e-3
    norm_tolerance: float = 1e-9
    renormalize: bool = False
    regularity_threshold: float = REGULARITY_THRESHOLD

    def __post_init__(self):
        if not (self.h > 0):
            raise ParameterError(f"step size must be positive, got h={self.h}")
        if not (self.s_min < self.s_max):
            raise ParameterError(f"empty range: s_min={self.s_min} >= s_max={self.s_max}")
        if not (self.h < self.s_max - self.s_min):
            raise ParameterError(
                f"step h={self.h} is not smaller than the range length {self.s_max - self.s_min}"
            )
        if not (self.norm_tolerance > 0):
            raise ParameterError("norm_tolerance must be positive")


@dataclass(frozen=True, eq=False)
class TractrixSample:
    s: float
    state: np.ndarray
    position: np.ndarray
    speed: float
    regular: bool
    norm_drift: float


def _as_state(state, n=None) -> np.ndarray:
    v = np.asarray(state, dtype=float)
    if v.ndim != 1:
        raise ParameterError(f"state must be a 1-d vector, got shape {v.shape}")
    if n is not None and v.size != n:
        raise ParameterError(f"state has {v.size} components, directrix dimension is {n}")
    return v


def _rhs(gen, v):
    out = gen @ v + v[0] * v
    out[0] -= 1.0
    return out


def ode_rhs(state, spec: DirectrixSpec) -> np.ndarray:
    """Right-hand side of the tractrix system at ``state``.

    Component j is k_j v^{j+1} - k_{j-1} v^{j-1} + v^1 v^j, with an extra -1
    on the first component.
    """
    v = _as_state(state, spec.dimension)
    return _rhs(spec.generator(), v)


def rk4_step(fun, v, h):
    k1 = fun(v)
    k2 = fun(v + 0.5 * h * k1)
    k3 = fun(v + 0.5 * h * k2)
    k4 = fun(v + h * k3)
    return v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _march(gen, v0, end, h, config):
    """States at the uniform grid 0 -> end, endpoint included.

    The step is shrunk to end/N with N = ceil(|end|/h) so the endpoint is hit
    exactly; a zero-length leg returns only the initial state.
    """
    if end == 0:
        return np.zeros(1), v0[None, :].copy()
    nsteps = max(1, math.ceil(abs(end) / h - 1e-9))
    step = end / nsteps
    fun = lambda v: _rhs(gen, v)  # noqa: E731
    states = np.empty((nsteps + 1, v0.size))
    states[0] = v0
    v = v0.copy()
    limit = 1e3 * config.norm_tolerance
    for i in range(1, nsteps + 1):
        v = rk4_step(fun, v, step)
        norm = math.sqrt(float(v @ v))
        drift = abs(norm - 1.0)
        if drift > limit:
            raise IntegrationError(
                f"norm drift {drift:.3e} exceeds {limit:.1e} at s={i * step:.6g} "
                f"(step {step:.3g}); reduce the step size"
            )
        if config.renormalize:
            v = v / norm
        states[i] = v
    return step * np.arange(nsteps + 1), states


def integrate(spec: DirectrixSpec, v0, config: IntegrationConfig) -> list[TractrixSample]:
    """Integrate the tractrix system with classical RK4 from s=0.

    The march runs from 0 towards ``s_max`` and, separately, towards
    ``s_min``, so the initial data sit inside the reported interval; samples
    are returned in increasing s. When 0 lies outside [s_min, s_max] the march
    still starts at 0 and only the in-range samples are returned.

    Raises
    ------
    ParameterError
        If ``v0`` is not a unit vector within ``config.norm_tolerance``.
    IntegrationError
        If the state drifts off the unit sphere by more than
        ``1e3 * norm_tolerance``.
    """
    v0 = _as_state(v0, spec.dimension)
    err = abs(math.sqrt(float(v0 @ v0)) - 1.0)
    if err > config.norm_tolerance:
        raise ParameterError(
            f"initial state must be a unit vector: | |v0| - 1 | = {err:.3e} > {config.norm_tolerance:.1e}"
        )
    gen = spec.generator()
    s_fwd, v_fwd = _march(gen, v0, max(config.s_max, 0.0), config.h, config)
    s_bwd, v_bwd = _march(gen, v0, min(config.s_min, 0.0), config.h, config)
    s = np.concatenate([s_bwd[:0:-1], s_fwd])
    states = np.concatenate([v_bwd[:0:-1], v_fwd])
    keep = (s >= config.s_min - 1e-12) & (s <= config.s_max + 1e-12)
    s, states = s[keep], states[keep]
    log.debug("integrated %d samples on [%g, %g]", s.size, config.s_min, config.s_max)

    frames = spec.frames_at(s)
    positions = spec.positions_at(s) + np.einsum("mj,mjk->mk", states, frames)
    speeds = np.abs(states[:, 0])
    drifts = np.abs(np.linalg.norm(states, axis=1) - 1.0)
    return [
        TractrixSample(
            s=float(s[i]),
            state=states[i],
            position=positions[i],
            speed=float(speeds[i]),
            regular=bool(speeds[i] > config.regularity_threshold),
            norm_drift=float(drifts[i]),
        )
        for i in range(s.size)
    ]


def tractrix_position(frame_position, frame: FrenetFrame, state) -> np.ndarray:
    """Endpoint of the unit segment: f~ + sum_j v^j xi_j."""
    base = np.asarray(frame_position, dtype=float)
    v = _as_state(state, frame.dimension)
    if base.shape != (frame.dimension,):
        raise ParameterError("frame_position and frame dimensions differ")
    return base + v @ frame.vectors


def tangent_vector(spec: DirectrixSpec, state, derivative=None) -> np.ndarray:
    """df/ds in Frenet coordinates.

    ``derivative`` is dv/ds in Frenet coordinates; when omitted it is taken
    from the tractrix system itself. The frame rotation contributes -K v, and
    the directrix tangent xi_1 contributes e_1.
    """
    v = _as_state(state, spec.dimension)
    gen = spec.generator()
    dv = _rhs(gen, v) if derivative is None else _as_state(derivative, spec.dimension)
    out = dv - gen @ v
    out[0] += 1.0
    return out


def tangency_residual(spec: DirectrixSpec, state, derivative=None) -> float:
    """Norm of the part of df/ds orthogonal to the segment direction v.

    Zero exactly when the segment is tangent to the traced curve.
    """
    v = _as_state(state, spec.dimension)
    t = tangent_vector(spec, v, derivative)
    u = v / np.linalg.norm(v)
    return float(np.linalg.norm(t - (t @ u) * u))
