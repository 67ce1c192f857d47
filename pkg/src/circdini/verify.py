"""Self-verification suites run by ``circdini verify``.

Each check measures one residual or invariant over a built-in parameter
matrix covering all three regimes and compares it with a fixed threshold.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import circular, stencils
from .circular import CircularTractrixParams, Regime
from .diffgeo import curvature_grid_report, numeric_metric_field
from .dini import DiniParams, analytic_metric, default_phi_range, default_s_range, embed, sweep_check
from .frenet import circle_directrix_spec
from .tractrix import IntegrationConfig, integrate, ode_rhs, tangency_residual

SUITES = ("full", "tractrix", "surface", "curvature")


@dataclass
class Check:
    name: str
    value: float
    threshold: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.value) and self.value < self.threshold)

    def to_dict(self) -> dict:
        return {**asdict(self), "passed": self.passed}


def tractrix_matrix() -> list[CircularTractrixParams]:
    """Twelve general-branch tractrices, two per radius in {0.5, 0.9, 1, 1.1, 2, 5}."""
    mk = CircularTractrixParams.from_c2
    return [
        mk(0.5, 1.0, 0.0),
        mk(0.5, -0.5, 0.7, c1_sign=-1),
        mk(0.9, 0.0, 0.3),
        mk(0.9, 2.0, -1.0),
        mk(1.0, 1.0, 0.0),
        mk(1.0, 0.5, 1.0),
        mk(1.1, 0.8, 0.2, c1_sign=-1),
        mk(1.1, 0.0, 0.0),
        mk(2.0, 0.8, 0.0),
        mk(2.0, 1.0, -0.5),
        mk(5.0, -0.6, 1.0),
        mk(5.0, 0.0, 0.0, c1_sign=-1),
    ]


def dini_matrix() -> list[DiniParams]:
    """Reference surfaces (one per regime) and two flat ones."""
    return [
        DiniParams(CircularTractrixParams.general(2.0, 0.6, 0.8), 2.0, 1.0),
        DiniParams(CircularTractrixParams.general(1.0, None, 1.0), 1.0, 3.0),
        DiniParams(CircularTractrixParams.general(0.5, math.sqrt(2.0), 1.0), 1.0, 2.0),
        DiniParams(CircularTractrixParams.general(2.0, 0.6, 0.8, 0.3), 1.5, 1.5),
        DiniParams(CircularTractrixParams.from_c2(0.5, 0.0, 0.2), 1.0, 2.0),
    ]


def stationary_matrix() -> list[CircularTractrixParams]:
    st = CircularTractrixParams.stationary
    return [st(2.0, 1), st(2.0, -1), st(5.0, 1), st(1.0), st(0.5, 1), st(0.6, -1)]


def _label(p: CircularTractrixParams) -> str:
    if p.stationary_branch:
        return f"r={p.r:g},stationary{'+' if p.sign > 0 else '-'}"
    return f"r={p.r:g},c1={p.c1:.6g},c2={p.c2:g},c3={p.c3:g}"


def _dlabel(d: DiniParams) -> str:
    return f"{_label(d.tractrix)},a={d.a:g},b={d.b:g}"


def tractrix_checks(unit_variant: str = "corrected") -> list[Check]:
    evaluator = circular.eval_v_printed_unit if unit_variant == "printed" else circular.eval_v
    s = np.linspace(-5.0, 5.0, 201)
    out = []
    for p in tractrix_matrix():
        tag = _label(p)
        v = evaluator(p, s)
        out.append(Check(f"unit_norm[{tag}]", float(np.max(np.abs(np.sum(v * v, axis=-1) - 1.0))), 1e-12))
        res = circular.ode_residual(p, s, evaluator=evaluator)
        out.append(Check(f"ode_residual[{tag}]", float(np.max(np.abs(res))), 1e-9))
        out.append(Check(f"second_order_residual[{tag}]",
                         float(np.max(np.abs(circular.second_order_residual(p, s)))), 1e-6))
        spec = circle_directrix_spec(p.r)
        dv = stencils.d1(lambda x: evaluator(p, x), s, 1e-5)
        tang = max(tangency_residual(spec, v[i], dv[i]) for i in range(s.size))
        out.append(Check(f"tangency_residual[{tag}]", tang, 1e-9))

    for p in tractrix_matrix()[::2]:
        samples = integrate(circle_directrix_spec(p.r), circular.eval_v(p, 0.0),
                            IntegrationConfig(-5.0, 5.0, h=1e-3))
        ss = np.array([x.s for x in samples])
        states = np.array([x.state for x in samples])
        err = float(np.max(np.abs(states - circular.eval_v(p, ss))))
        out.append(Check(f"integrator_vs_closed_form[{_label(p)}]", err, 1e-6))

    for p in stationary_matrix():
        v = circular.eval_v(p, 0.0)
        out.append(Check(f"stationary_rhs[{_label(p)}]",
                         float(np.linalg.norm(ode_rhs(v, circle_directrix_spec(p.r)))), 1e-14))
    return out


def surface_checks() -> list[Check]:
    out = []
    for d in dini_matrix():
        tag = _dlabel(d)
        s_axis = np.linspace(*default_s_range(d.tractrix), 16)
        phi_axis = np.linspace(*default_phi_range(d), 16)
        ss, pp = np.meshgrid(s_axis, phi_axis, indexing="ij")
        circ, tang = sweep_check(d, ss, pp)
        out.append(Check(f"sweep_circle[{tag}]", float(np.max(circ)), 1e-10))
        out.append(Check(f"sweep_tangency[{tag}]", float(np.max(tang)), 1e-8))

        numeric = numeric_metric_field(lambda x, y: embed(d, x, y), h=1e-3, order=4)(ss, pp)
        exact = analytic_metric(d, ss)
        gap = max(float(np.max(np.abs(getattr(numeric, k) - getattr(exact, k)))) for k in ("g11", "g12", "g22"))
        out.append(Check(f"metric_agreement[{tag}]", gap, 1e-8))
        drift = float(np.max(np.ptp(numeric.as_array(), axis=1)))
        out.append(Check(f"metric_phi_independence[{tag}]", drift, 1e-10))

        base = embed(d, s_axis, 0.0)
        moved = embed(d, s_axis, phi_axis[5])
        dist = lambda x: np.linalg.norm(x[:, None, :] - x[None, :, :], axis=-1)  # noqa: E731
        out.append(Check(f"meridian_congruence[{tag}]", float(np.max(np.abs(dist(base) - dist(moved)))), 1e-12))
    return out


def curvature_checks() -> list[Check]:
    out = []
    for d in dini_matrix():
        rep = curvature_grid_report(d, grid=(16, 16))
        tag = _dlabel(d)
        scale = max(1.0, abs(rep.analytic_k))
        if rep.analytic_k == 0.0:
            out.append(Check(f"flat_curvature[{tag}]", rep.max_abs_error, 1e-6))
        else:
            out.append(Check(f"curvature_mean_rel_error[{tag}]", rep.relative_error, 1e-4))
        out.append(Check(f"curvature_constancy[{tag}]", rep.max_abs_deviation / scale, 1e-4))
    return out


def run_suite(name: str = "full", unit_variant: str = "corrected") -> list[Check]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    checks = []
    if name in ("full", "tractrix"):
        checks += tractrix_checks(unit_variant)
    if name in ("full", "surface"):
        checks += surface_checks()
    if name in ("full", "curvature"):
        checks += curvature_checks()
    return checks


def summarize(name: str, checks: list[Check], unit_variant: str = "corrected") -> dict:
    failures = [c.to_dict() for c in checks if not c.passed]
    return {
        "suite": name,
        "unit_variant": unit_variant,
        "passed": not failures,
        "total_checks": len(checks),
        "failed_checks": len(failures),
        "failures": failures,
        "checks": [c.to_dict() for c in checks],
    }


# keep Regime importable from here for callers building their own matrices
__all__ = ["Check", "SUITES", "Regime", "run_suite", "summarize", "tractrix_matrix", "dini_matrix"]
