"""Finite-difference differential geometry of parametrized surfaces.

This is the numerical cross-check for the closed-form metric and
curvature: the metric is rebuilt from partials of the embedding, and the
Gauss curvature from the metric alone through the Brioschi formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import stencils
from .circular import eval_v
from .dini import DiniParams, MetricComponents, analytic_gauss_curvature, default_phi_range, default_s_range, embed
from .exceptions import ParameterError, SingularMetricError

__all__ = [
    "EmbeddingJet",
    "CurvatureReport",
    "jet",
    "first_partials",
    "first_fundamental_form",
    "numeric_metric_field",
    "brioschi_curvature",
    "curvature_grid_report",
    "JET_STEP",
    "METRIC_STEP",
]

JET_STEP = 1e-3
JET_ORDER = 4
METRIC_JET_STEP = 1e-2
METRIC_STEP = 1e-2
STENCIL_ORDER = 6
DET_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class EmbeddingJet:
    f: np.ndarray
    f_s: np.ndarray
    f_phi: np.ndarray
    f_ss: np.ndarray
    f_sphi: np.ndarray
    f_phiphi: np.ndarray
    # max |f_sphi - f_sphi(2nd-order stencil)|, a stencil self-consistency gauge
    mixed_gap: np.ndarray


def first_partials(surface, s, phi, h=JET_STEP, order=JET_ORDER):
    """(f_s, f_phi) by central differences."""
    f_s = stencils.d1(lambda x: surface(x, phi), s, h, order)
    f_phi = stencils.d1(lambda y: surface(s, y), phi, h, order)
    return f_s, f_phi


def jet(surface, s, phi, h: float = JET_STEP, order: int = JET_ORDER) -> EmbeddingJet:
    """Value, first and second partials of ``surface`` at (s, phi).

    All derivatives use central stencils of accuracy ``order`` (4 by default,
    i.e. the 5x5 grid of spacing ``h`` around the point).
    """
    if not h > 0:
        raise ParameterError(f"stencil step must be positive, got {h}")
    s = np.asarray(s, dtype=float)
    phi = np.asarray(phi, dtype=float)
    f_s, f_phi = first_partials(surface, s, phi, h, order)
    f_sphi = stencils.d11(surface, s, phi, h, order)
    f_sphi_lo = stencils.d11(surface, s, phi, h, 2)
    return EmbeddingJet(
        f=surface(s, phi),
        f_s=f_s,
        f_phi=f_phi,
        f_ss=stencils.d2(lambda x: surface(x, phi), s, h, order),
        f_sphi=f_sphi,
        f_phiphi=stencils.d2(lambda y: surface(s, y), phi, h, order),
        mixed_gap=np.max(np.abs(f_sphi - f_sphi_lo), axis=-1),
    )


def first_fundamental_form(j: EmbeddingJet) -> MetricComponents:
    return MetricComponents(
        np.sum(j.f_s * j.f_s, axis=-1),
        np.sum(j.f_s * j.f_phi, axis=-1),
        np.sum(j.f_phi * j.f_phi, axis=-1),
    )


def numeric_metric_field(surface, h: float = METRIC_JET_STEP, order: int = STENCIL_ORDER):
    """Metric field of ``surface`` from finite-difference first partials."""

    def field_(s, phi):
        f_s, f_phi = first_partials(surface, np.asarray(s, float), np.asarray(phi, float), h, order)
        return MetricComponents(
            np.sum(f_s * f_s, axis=-1),
            np.sum(f_s * f_phi, axis=-1),
            np.sum(f_phi * f_phi, axis=-1),
        )

    return field_


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def brioschi_curvature(metric_field, s, phi, h: float = METRIC_STEP, order: int = STENCIL_ORDER):
    """Gauss curvature from the metric alone (Brioschi formula).

    With E, F, G the metric components in coordinates (u, v) = (s, phi),

        K = (det M1 - det M2) / (E G - F^2)^2,

        M1 = [[-E_vv/2 + F_uv - G_uu/2, E_u/2, F_u - E_v/2],
              [F_v - G_u/2,             E,     F          ],
              [G_v/2,                   F,     G          ]]
        M2 = [[0,     E_v/2, G_u/2],
              [E_v/2, E,     F    ],
              [G_u/2, F,     G    ]]

    Metric derivatives are central differences of spacing ``h`` and
    accuracy ``order``. Works elementwise on array inputs.

    Raises
    ------
    SingularMetricError
        If E G - F^2 <= 1e-12 anywhere on the stencil.
    """
    s = np.asarray(s, dtype=float)
    phi = np.asarray(phi, dtype=float)

    def g(x, y):
        m = metric_field(x, y)
        if np.any(m.det <= DET_FLOOR):
            raise SingularMetricError(
                "first fundamental form is degenerate on the Brioschi stencil "
                f"(min det {float(np.min(m.det)):.3e})"
            )
        return m.as_array()

    center = g(s, phi)
    gu = stencils.d1(lambda x: g(x, phi), s, h, order)
    gv = stencils.d1(lambda y: g(s, y), phi, h, order)
    guu = stencils.d2(lambda x: g(x, phi), s, h, order)
    gvv = stencils.d2(lambda y: g(s, y), phi, h, order)
    guv = stencils.d11(g, s, phi, h, order)

    E, F, G = (center[..., i] for i in range(3))
    Eu, Fu, Gu = (gu[..., i] for i in range(3))
    Ev, Fv, Gv = (gv[..., i] for i in range(3))
    m1 = [
        [-gvv[..., 0] / 2 + guv[..., 1] - guu[..., 2] / 2, Eu / 2, Fu - Ev / 2],
        [Fv - Gu / 2, E, F],
        [Gv / 2, F, G],
    ]
    zero = np.zeros_like(E)
    m2 = [[zero, Ev / 2, Gu / 2], [Ev / 2, E, F], [Gu / 2, F, G]]
    k = (_det3(m1) - _det3(m2)) / (E * G - F * F) ** 2
    return float(k) if k.ndim == 0 else k


@dataclass(frozen=True, eq=False)
class CurvatureReport:
    grid: tuple[int, int]
    s_range: tuple[float, float]
    phi_range: tuple[float, float]
    estimates: np.ndarray  # NaN at excluded points
    analytic_k: float
    mean_k: float
    max_abs_deviation: float  # max |K_i - mean|
    max_abs_error: float  # max |K_i - analytic|
    relative_error: float
    excluded_points: int
    included_points: int
    params: dict = field(default_factory=dict)

    @property
    def total_points(self) -> int:
        return self.grid[0] * self.grid[1]

    def to_dict(self) -> dict:
        return {
            "analytic_K": self.analytic_k,
            "mean_K": self.mean_k,
            "max_abs_deviation": self.max_abs_deviation,
            "max_abs_error": self.max_abs_error,
            "relative_error": self.relative_error,
            "excluded_points": self.excluded_points,
            "included_points": self.included_points,
            "grid": list(self.grid),
            "s_range": list(self.s_range),
            "phi_range": list(self.phi_range),
            "params": self.params,
        }


def curvature_grid_report(
    params: DiniParams,
    s_range=None,
    phi_range=None,
    grid=(32, 32),
    h: float = METRIC_STEP,
    margin: float = 1e-3,
    jet_step: float = METRIC_JET_STEP,
    order: int = STENCIL_ORDER,
) -> CurvatureReport:
    """Brioschi curvature of the numeric metric on a uniform (s, phi) grid.

    Points where |v1| <= ``margin`` (near singular meridian points) are
    excluded. ``relative_error`` is |mean - K| / |K|, or the absolute
    difference when the analytic K is 0.
    """
    ns, nphi = grid
    if ns < 8 or nphi < 8:
        raise ParameterError(f"curvature grid must be at least 8x8, got {ns}x{nphi}")
    s_range = tuple(default_s_range(params.tractrix) if s_range is None else s_range)
    phi_range = tuple(default_phi_range(params) if phi_range is None else phi_range)
    s_axis = np.linspace(*s_range, ns)
    phi_axis = np.linspace(*phi_range, nphi)
    ss, pp = np.meshgrid(s_axis, phi_axis, indexing="ij")

    regular = np.abs(eval_v(params.tractrix, ss)[..., 0]) > margin
    n_in = int(regular.sum())
    if n_in == 0:
        raise ParameterError("every grid point is within the singular margin; nothing to report")

    field_ = numeric_metric_field(lambda x, y: embed(params, x, y), jet_step, order)
    estimates = np.full(ss.shape, np.nan)
    estimates[regular] = brioschi_curvature(field_, ss[regular], pp[regular], h, order)

    k_exact = analytic_gauss_curvature(params)
    vals = estimates[regular]
    mean = float(vals.mean())
    rel = abs(mean - k_exact) / abs(k_exact) if k_exact != 0 else abs(mean - k_exact)
    return CurvatureReport(
        grid=(ns, nphi),
        s_range=(float(s_range[0]), float(s_range[1])),
        phi_range=(float(phi_range[0]), float(phi_range[1])),
        estimates=estimates,
        analytic_k=float(k_exact),
        mean_k=mean,
        max_abs_deviation=float(np.max(np.abs(vals - mean))),
        max_abs_error=float(np.max(np.abs(vals - k_exact))),
        relative_error=float(rel),
        excluded_points=int(ss.size - n_in),
        included_points=n_in,
        params=params.as_dict(),
    )
