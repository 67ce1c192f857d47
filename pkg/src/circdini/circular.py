"""Closed-form circular tractrices.

A circle of radius r admits three families of tractrices depending on
whether r is larger than, equal to or smaller than the segment length 1.
Each family has a general branch with constants (c1, c2, c3) tied by one
algebraic constraint, plus constant ("stationary") branches.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import stencils
from .exceptions import ConstraintError, ParameterError
from .frenet import circle_directrix_spec

__all__ = [
    "Regime",
    "CircularTractrixParams",
    "classify_regime",
    "eval_v",
    "eval_v_printed_unit",
    "stationary_v",
    "position",
    "singular_points",
    "ode_residual",
    "second_order_residual",
    "circle_rhs",
]

CONSTRAINT_TOL = 1e-12
_DENOMINATOR_FLOOR = 1e-14


class Regime(str, enum.Enum):
    SUP_UNIT = "sup_unit"  # r > 1
    UNIT = "unit"  # r = 1
    SUB_UNIT = "sub_unit"  # r < 1


def classify_regime(r: float, tol: float = 1e-9) -> Regime:
    """Regime of a circle radius; ``|r - 1| <= tol`` counts as the unit case."""
    if not np.isfinite(r) or r <= 0:
        raise ParameterError(f"circle radius must be positive, got r={r!r}")
    if abs(r - 1.0) <= tol:
        return Regime.UNIT
    return Regime.SUP_UNIT if r > 1.0 else Regime.SUB_UNIT


def _lambda(regime, r):
    if regime is Regime.SUP_UNIT:
        return math.sqrt(r * r - 1.0) / r
    if regime is Regime.SUB_UNIT:
        return math.sqrt(1.0 - r * r) / r
    return None


def _constraint_gap(regime, c1, c2):
    if regime is Regime.SUP_UNIT:
        return c1 * c1 + c2 * c2 - 1.0, "c1^2 + c2^2 = 1"
    if regime is Regime.UNIT:
        return c1 - (1.0 + c2 * c2), "c1 = 1 + c2^2"
    return c1 * c1 - c2 * c2 - 1.0, "c1^2 - c2^2 = 1"


@dataclass(frozen=True)
class CircularTractrixParams:
    """Selects one circular tractrix of the circle of radius ``r``.

    Use :meth:`general` for the three-constant family and :meth:`stationary`
    for the constant solutions. ``lam`` is derived (sqrt|r^2 - 1| / r, or
    None in the unit regime) and cached.
    """

    r: float
    c1: float = 0.0
    c2: float = 0.0
    c3: float = 0.0
    stationary_branch: bool = False
    sign: int = 1
    regime_tol: float = 1e-9
    constraint_tol: float = CONSTRAINT_TOL
    regime: Regime = field(init=False)
    lam: float | None = field(init=False)

    def __post_init__(self):
        regime = classify_regime(self.r, self.regime_tol)
        object.__setattr__(self, "regime", regime)
        object.__setattr__(self, "lam", _lambda(regime, self.r))
        if self.sign not in (1, -1):
            raise ParameterError(f"sign must be +1 or -1, got {self.sign!r}")
        if self.stationary_branch:
            return
        if not all(np.isfinite([self.c1, self.c2, self.c3])):
            raise ParameterError("integration constants must be finite")
        gap, name = _constraint_gap(regime, self.c1, self.c2)
        if abs(gap) > self.constraint_tol:
            raise ConstraintError(
                f"{regime.value} regime (r={self.r}) requires {name}; "
                f"got c1={self.c1!r}, c2={self.c2!r} (violation {gap:.3e})"
            )

    @classmethod
    def general(cls, r, c1=None, c2=0.0, c3=0.0, **kw) -> "CircularTractrixParams":
        """General branch. In the unit regime ``c1`` may be omitted (c1 = 1 + c2^2)."""
        if c1 is None:
            if classify_regime(r, kw.get("regime_tol", 1e-9)) is not Regime.UNIT:
                raise ConstraintError("c1 is required unless r = 1")
            c1 = 1.0 + c2 * c2
        return cls(r=float(r), c1=float(c1), c2=float(c2), c3=float(c3), **kw)

    @classmethod
    def from_c2(cls, r, c2, c3=0.0, c1_sign=1, **kw) -> "CircularTractrixParams":
        """General branch with c1 solved from the regime constraint (sign chosen by ``c1_sign``)."""
        regime = classify_regime(r, kw.get("regime_tol", 1e-9))
        if regime is Regime.UNIT:
            c1 = 1.0 + c2 * c2
        elif regime is Regime.SUP_UNIT:
            if abs(c2) > 1.0:
                raise ConstraintError(f"|c2| <= 1 is needed when r > 1, got c2={c2}")
            c1 = c1_sign * math.sqrt(1.0 - c2 * c2)
        else:
            c1 = c1_sign * math.sqrt(1.0 + c2 * c2)
        return cls(r=float(r), c1=float(c1), c2=float(c2), c3=float(c3), **kw)

    @classmethod
    def stationary(cls, r, sign=1, **kw) -> "CircularTractrixParams":
        return cls(r=float(r), stationary_branch=True, sign=int(sign), **kw)

    def with_c3(self, c3) -> "CircularTractrixParams":
        return replace(self, c3=float(c3))

    def phase(self, s):
        """theta = lam*s + c3, or u = s + c3 in the unit regime."""
        s = np.asarray(s, dtype=float)
        if self.regime is Regime.UNIT:
            return s + self.c3
        return self.lam * s + self.c3

    def denominator(self, s):
        t = self.phase(s)
        if self.regime is Regime.SUP_UNIT:
            return self.c1 / self.r + np.cosh(t)
        if self.regime is Regime.SUB_UNIT:
            return self.c1 / self.r + np.cos(t)
        return self.c1 + t * t

    def as_dict(self) -> dict:
        out = {"r": self.r, "regime": self.regime.value}
        if self.stationary_branch:
            out.update(branch="stationary", sign=self.sign)
        else:
            out.update(branch="general", c1=self.c1, c2=self.c2, c3=self.c3)
        if self.lam is not None:
            out["lambda"] = self.lam
        return out


def stationary_v(regime: Regime, r: float, sign: int = 1) -> np.ndarray:
    """Constant solutions of the circle system."""
    if classify_regime(r) is not Regime(regime):
        raise ParameterError(f"r={r} does not belong to the {Regime(regime).value} regime")
    if regime is Regime.SUP_UNIT:
        return np.array([sign * math.sqrt(r * r - 1.0) / r, 1.0 / r, 0.0])
    if regime is Regime.UNIT:
        return np.array([0.0, 1.0, 0.0])
    return np.array([0.0, r, sign * math.sqrt(1.0 - r * r)])


def _guard(denom):
    if np.any(np.abs(denom) < _DENOMINATOR_FLOOR):
        raise ParameterError("closed-form denominator vanished; constants are inconsistent")


def eval_v(params: CircularTractrixParams, s) -> np.ndarray:
    """Frenet components (v1, v2, v3) of the segment field at arc length ``s``.

    Vectorized: an array of ``s`` gives an array of shape ``s.shape + (3,)``.

    In the unit regime the first component is -2(s + c3) / (c1 + (s + c3)^2);
    the version with numerator -(2s + c3) only agrees with it at c3 = 0 and
    breaks |v| = 1 otherwise (see :func:`eval_v_printed_unit`).
    """
    s = np.asarray(s, dtype=float)
    if params.stationary_branch:
        v = stationary_v(params.regime, params.r, params.sign)
        return np.broadcast_to(v, s.shape + (3,)).copy()
    t = params.phase(s)
    denom = params.denominator(s)
    _guard(denom)
    r, lam, c1, c2 = params.r, params.lam, params.c1, params.c2
    if params.regime is Regime.SUP_UNIT:
        v1 = -lam * np.sinh(t) / denom
        v2 = (c1 + np.cosh(t) / r) / denom
        v3 = lam * c2 / denom
    elif params.regime is Regime.SUB_UNIT:
        v1 = lam * np.sin(t) / denom
        v2 = (c1 + np.cos(t) / r) / denom
        v3 = lam * c2 / denom
    else:
        v1 = -2.0 * t / denom
        v2 = 1.0 - 2.0 / denom
        v3 = 2.0 * c2 / denom
    return np.stack(np.broadcast_arrays(v1, v2, v3), axis=-1)


def eval_v_printed_unit(params: CircularTractrixParams, s) -> np.ndarray:
    """Unit-regime variant with first component -(2s + c3) / (c1 + (s + c3)^2).

    Kept only as a regression fixture: it is not a unit vector for c3 != 0.
    """
    if params.regime is not Regime.UNIT or params.stationary_branch:
        return eval_v(params, s)
    v = eval_v(params, s)
    s = np.asarray(s, dtype=float)
    v[..., 0] = -(2.0 * s + params.c3) / params.denominator(s)
    return v


def position(params: CircularTractrixParams, s, v=None) -> np.ndarray:
    """Point of the circular tractrix in E^3 at arc length ``s`` of the circle."""
    s = np.asarray(s, dtype=float)
    if v is None:
        v = eval_v(params, s)
    v1, v2, v3 = v[..., 0], v[..., 1], v[..., 2]
    r = params.r
    c, sn = np.cos(s / r), np.sin(s / r)
    return np.stack([r * c - v1 * sn - v2 * c, r * sn + v1 * c - v2 * sn, v3], axis=-1)


def _v1_scalar(params, s):
    return float(eval_v(params, s)[0])


def singular_points(params: CircularTractrixParams, s_min: float, s_max: float,
                    tol: float = 1e-10) -> list[float]:
    """Roots of v1 in [s_min, s_max] (where the tractrix is not immersed).

    Sign changes are bracketed on a grid of step min(0.01, period/100) and
    refined by bisection to ``tol``. Grid nodes where |v1| is already below
    1e-13 are reported directly. Stationary branches have no isolated roots
    (v1 is a nonzero constant for r > 1 and vanishes identically otherwise),
    so they return an empty list.
    """
    if not s_min < s_max:
        raise ParameterError(f"empty interval [{s_min}, {s_max}]")
    if params.stationary_branch:
        return []
    step = 0.01
    if params.regime is Regime.SUB_UNIT:
        step = min(step, 2.0 * math.pi / params.lam / 100.0)
    n = max(2, math.ceil((s_max - s_min) / step) + 1)
    grid = np.linspace(s_min, s_max, n)
    vals = eval_v(params, grid)[:, 0]

    roots = []
    exact = np.abs(vals) < 1e-13
    roots.extend(grid[exact].tolist())
    for i in np.nonzero((np.sign(vals[:-1]) * np.sign(vals[1:]) < 0))[0]:
        if exact[i] or exact[i + 1]:
            continue
        lo, hi, flo = grid[i], grid[i + 1], vals[i]
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            fm = _v1_scalar(params, mid)
            if fm == 0.0:
                lo = hi = mid
                break
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
        roots.append(float(0.5 * (lo + hi)))

    roots.sort()
    merged = []
    for x in roots:
        if not merged or x - merged[-1] > 1e-9:
            merged.append(x)
    return merged


def circle_rhs(r: float, v) -> np.ndarray:
    """Tractrix system for the circle, vectorized over the last axis of ``v``."""
    v = np.asarray(v, dtype=float)
    v1, v2, v3 = v[..., 0], v[..., 1], v[..., 2]
    return np.stack([v2 / r + v1 * v1 - 1.0, -v1 / r + v1 * v2, v1 * v3], axis=-1)


def ode_residual(params: CircularTractrixParams, s, h: float = 1e-5, evaluator=eval_v) -> np.ndarray:
    """dv/ds (fourth-order central differences) minus the circle system's right side."""
    s = np.asarray(s, dtype=float)
    dv = stencils.d1(lambda x: evaluator(params, x), s, h)
    return dv - circle_rhs(params.r, evaluator(params, s))


def second_order_residual(params: CircularTractrixParams, s, h: float = 1e-3) -> np.ndarray:
    """Left side of v1'' - 3 v1 v1' + v1 (1/r^2 - 1) + v1^3, by finite differences."""
    s = np.asarray(s, dtype=float)
    f = lambda x: eval_v(params, x)[..., 0]  # noqa: E731
    v1 = f(s)
    d1 = stencils.d1(f, s, h)
    d2 = stencils.d2(f, s, h)
    r = params.r
    return d2 - 3.0 * v1 * d1 + v1 * (1.0 / (r * r) - 1.0) + v1 ** 3


def directrix(params: CircularTractrixParams):
    return circle_directrix_spec(params.r)
