"""Circular Dini surfaces in E^4.

A circular tractrix, viewed in E^4 with x4 = 0, is swept by the skew
rotation that turns the (x1, x2)-plane by a*phi and the (x3, x4)-plane by
b*phi. The resulting helicoidal surface has constant Gauss curvature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import stencils
from .circular import CircularTractrixParams, Regime, eval_v, position
from .exceptions import ParameterError
from .frenet import _circle_frames

__all__ = [
    "DiniParams",
    "MetricComponents",
    "skew_rotation",
    "embed",
    "surface_map",
    "analytic_metric",
    "analytic_gauss_curvature",
    "sweep_check",
    "default_s_range",
    "default_phi_range",
]


@dataclass(frozen=True)
class DiniParams:
    tractrix: CircularTractrixParams
    a: float
    b: float

    def __post_init__(self):
        if self.tractrix.stationary_branch:
            raise ParameterError(
                "stationary tractrices sweep a circle or a point, not a surface; "
                "use a general-branch tractrix"
            )
        if not (np.isfinite(self.a) and np.isfinite(self.b)) or self.a == 0 or self.b == 0:
            raise ParameterError(f"rotation speeds must be finite and non-zero, got a={self.a}, b={self.b}")

    def as_dict(self) -> dict:
        return {**self.tractrix.as_dict(), "a": self.a, "b": self.b}


@dataclass(frozen=True, eq=False)
class MetricComponents:
    """First fundamental form g11 ds^2 + 2 g12 ds dphi + g22 dphi^2.

    Components may be scalars or equally shaped arrays.
    """

    g11: np.ndarray
    g12: np.ndarray
    g22: np.ndarray

    @property
    def det(self):
        return self.g11 * self.g22 - self.g12 * self.g12

    def as_array(self) -> np.ndarray:
        return np.stack(np.broadcast_arrays(self.g11, self.g12, self.g22), axis=-1)


def skew_rotation(a: float, b: float, phi) -> np.ndarray:
    """Block-diagonal rotation: angle a*phi in (x1, x2), angle b*phi in (x3, x4)."""
    phi = np.asarray(phi, dtype=float)
    ca, sa = np.cos(a * phi), np.sin(a * phi)
    cb, sb = np.cos(b * phi), np.sin(b * phi)
    m = np.zeros(phi.shape + (4, 4))
    m[..., 0, 0], m[..., 0, 1], m[..., 1, 0], m[..., 1, 1] = ca, -sa, sa, ca
    m[..., 2, 2], m[..., 2, 3], m[..., 3, 2], m[..., 3, 3] = cb, -sb, sb, cb
    return m


def _rotate(a, b, phi, x):
    """Apply skew_rotation(a, b, phi) to 4-vectors ``x`` without forming matrices."""
    ca, sa = np.cos(a * phi), np.sin(a * phi)
    cb, sb = np.cos(b * phi), np.sin(b * phi)
    x1, x2, x3, x4 = (x[..., i] for i in range(4))
    return np.stack([ca * x1 - sa * x2, sa * x1 + ca * x2, cb * x3 - sb * x4, sb * x3 + cb * x4], axis=-1)


def _promote(x3d):
    return np.concatenate([x3d, np.zeros(x3d.shape[:-1] + (1,))], axis=-1)


def embed(params: DiniParams, s, phi) -> np.ndarray:
    """Point of the surface at (s, phi); broadcasts over array inputs."""
    s, phi = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(phi, dtype=float))
    meridian = _promote(position(params.tractrix, s))
    return _rotate(params.a, params.b, phi, meridian)


def surface_map(params: DiniParams):
    """``(s, phi) -> embed(params, s, phi)`` as a plain callable."""
    return lambda s, phi: embed(params, s, phi)


def analytic_metric(params: DiniParams, s) -> MetricComponents:
    """Closed-form first fundamental form; it does not depend on phi.

    The form is A^2 (ds + c dphi)^2 + B^2 dphi^2 with A^2 = (v1)^2 and,
    writing D for the closed-form denominator,

    ==========  =====  ====================================
    regime      c      B^2
    ==========  =====  ====================================
    r > 1       r*a    lam^2 (a^2 (r^2 - 1) + b^2 c2^2) / D^2
    r = 1       a      4 (a^2 + b^2 c2^2) / D^2
    r < 1       r*a    lam^2 (a^2 (1 - r^2) + b^2 c2^2) / D^2
    ==========  =====  ====================================
    """
    tp = params.tractrix
    a, b, r, c2 = params.a, params.b, tp.r, tp.c2
    s = np.asarray(s, dtype=float)
    t = tp.phase(s)
    d2 = tp.denominator(s) ** 2
    if tp.regime is Regime.SUP_UNIT:
        lam2 = tp.lam ** 2
        a2 = lam2 * np.sinh(t) ** 2 / d2
        cross = r * a
        b2 = lam2 * (a * a * (r * r - 1.0) + b * b * c2 * c2) / d2
    elif tp.regime is Regime.SUB_UNIT:
        lam2 = tp.lam ** 2
        a2 = lam2 * np.sin(t) ** 2 / d2
        cross = r * a
        b2 = lam2 * (a * a * (1.0 - r * r) + b * b * c2 * c2) / d2
    else:
        a2 = 4.0 * t * t / d2
        cross = a
        b2 = 4.0 * (a * a + b * b * c2 * c2) / d2
    return MetricComponents(a2, a2 * cross, a2 * cross * cross + b2)


def analytic_gauss_curvature(params: DiniParams) -> float:
    """Constant Gauss curvature c2^2 (a^2 - b^2) / (a^2 q + b^2 c2^2).

    q is r^2 - 1, 1 or 1 - r^2 in the three regimes.
    """
    tp = params.tractrix
    a2, b2, c22 = params.a ** 2, params.b ** 2, tp.c2 ** 2
    if tp.regime is Regime.SUP_UNIT:
        q = tp.r ** 2 - 1.0
    elif tp.regime is Regime.UNIT:
        q = 1.0
    else:
        q = 1.0 - tp.r ** 2
    num = c22 * (a2 - b2)
    if num == 0.0:
        return 0.0
    return num / (a2 * q + b2 * c22)


def sweep_check(params: DiniParams, s, phi, h: float = 1e-3):
    """Check the degenerate-segment property at (s, phi).

    The unit segment along the rotated meridian, w = R(phi) sum_j v^j xi_j,
    should (i) end on the directrix circle, x1^2 + x2^2 = r^2, x3 = x4 = 0,
    and (ii) be tangent to the meridian. Returns the distance of
    embed - w from that circle and the norm of the part of d(embed)/ds
    orthogonal to w (finite differences, step ``h``). The tangency part is
    only meaningful at regular points.
    """
    tp = params.tractrix
    s, phi = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(phi, dtype=float))
    v = eval_v(tp, s)
    seg = np.einsum("...j,...jk->...k", v, _circle_frames(tp.r, s))
    w = _rotate(params.a, params.b, phi, _promote(seg))
    foot = embed(params, s, phi) - w
    rho = np.hypot(foot[..., 0], foot[..., 1])
    circle_res = np.sqrt((rho - tp.r) ** 2 + foot[..., 2] ** 2 + foot[..., 3] ** 2)

    df = stencils.d1(lambda x: embed(params, x, phi), s, h)
    u = w / np.linalg.norm(w, axis=-1, keepdims=True)
    along = np.sum(df * u, axis=-1, keepdims=True)
    tangency_res = np.linalg.norm(df - along * u, axis=-1)
    if circle_res.ndim == 0:
        return float(circle_res), float(tangency_res)
    return circle_res, tangency_res


def default_s_range(tractrix: CircularTractrixParams) -> tuple[float, float]:
    """An s-interval of regular points on one side of a singular point.

    r > 1 and r = 1: phase in [0.5, 3.5] past the unique singular point.
    r < 1: the middle 80% of the arc between two consecutive roots of v1.
    """
    if tractrix.regime is Regime.UNIT:
        return 0.5 - tractrix.c3, 3.5 - tractrix.c3
    lam = tractrix.lam
    if tractrix.regime is Regime.SUP_UNIT:
        return (0.5 - tractrix.c3) / lam, (3.5 - tractrix.c3) / lam
    return (0.1 * math.pi - tractrix.c3) / lam, (0.9 * math.pi - tractrix.c3) / lam


def default_phi_range(params: DiniParams) -> tuple[float, float]:
    """One short rotation period, [0, 2 pi / max(|a|, |b|)]."""
    return 0.0, 2.0 * math.pi / max(abs(params.a), abs(params.b))
