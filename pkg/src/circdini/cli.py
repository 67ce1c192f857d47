"""Command-line interface.

Usage::

    circdini tractrix   --r 2 --c1 1 --c2 0 --samples 11 --s-min 0 --s-max 1
    circdini integrate  --curvatures 1,0.5,0.25 --v0 1,0,0,0 --s-min -10 --s-max 10
    circdini surface    --r 2 --c1 0.6 --c2 0.8 --a 2 --b 1 --grid 40x60 --format obj --out dini.obj
    circdini curvature  --r 0.5 --c1 1.4142135623730951 --c2 1 --a 1 --b 2
    circdini verify     [full|tractrix|surface|curvature]

Parameters may also come from ``--config file.json`` (keys named like the
flags, with dashes replaced by underscores); flags win over the file.
Exit codes: 0 success, 1 validation or check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import math
import sys

import numpy as np

from .circular import CircularTractrixParams, eval_v, position
from .diffgeo import curvature_grid_report
from .dini import DiniParams, default_phi_range, default_s_range, embed
from .exceptions import CircDiniError
from .frenet import DirectrixSpec
from .tractrix import REGULARITY_THRESHOLD, IntegrationConfig, integrate
from .verify import SUITES, run_suite, summarize

log = logging.getLogger("circdini")

MAX_DIMENSION = 6

DEFAULTS = {
    "c3": 0.0,
    "branch": "general",
    "sign": 1,
    "tol": 1e-12,
    "samples": 201,
    "step": 1e-3,
    "norm_tol": 1e-9,
    "renormalize": False,
    "margin": 1e-3,
    "drop_axis": 4,
}


class UsageError(Exception):
    """Bad command-line input detected after argparse (exit code 2)."""


def fmt(x) -> str:
    """Fixed float formatting used by every emitted file."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def dumps(obj) -> str:
    """JSON with 17-significant-digit floats; keys keep insertion order."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    x = float(obj)
    return fmt(x) if math.isfinite(x) else "null"


def _parse_grid(text):
    try:
        n, m = (int(p) for p in str(text).lower().split("x"))
    except ValueError:
        raise UsageError(f"--grid expects NxM, got {text!r}") from None
    if n < 2 or m < 2:
        raise UsageError(f"--grid needs at least 2 points per axis, got {text!r}")
    return n, m


def _parse_floats(text, name):
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    try:
        return [float(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"{name} expects comma-separated numbers, got {text!r}") from None


def _resolve(args) -> dict:
    """Merge built-in defaults < config file < explicit flags."""
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError("config file must hold a JSON object")
        cfg.update({k.replace("-", "_"): v for k, v in data.items()})
    cfg.update({k: v for k, v in vars(args).items() if v is not None and k not in ("config", "func")})
    return cfg


def _need(cfg, *keys):
    missing = [k for k in keys if cfg.get(k) is None]
    if missing:
        raise UsageError("missing required parameter(s): " + ", ".join("--" + k.replace("_", "-") for k in missing))


def _tractrix_params(cfg) -> CircularTractrixParams:
    _need(cfg, "r")
    if cfg["branch"] == "stationary":
        return CircularTractrixParams.stationary(float(cfg["r"]), int(cfg["sign"]))
    _need(cfg, "c2")
    c1 = cfg.get("c1")
    return CircularTractrixParams.general(
        float(cfg["r"]),
        None if c1 is None else float(c1),
        float(cfg["c2"]),
        float(cfg["c3"]),
        constraint_tol=float(cfg["tol"]),
    )


def _dini_params(cfg) -> DiniParams:
    _need(cfg, "a", "b")
    return DiniParams(_tractrix_params(cfg), float(cfg["a"]), float(cfg["b"]))


def _range(cfg, lo_key, hi_key, default):
    lo = cfg.get(lo_key)
    hi = cfg.get(hi_key)
    lo = default[0] if lo is None else float(lo)
    hi = default[1] if hi is None else float(hi)
    if not lo < hi:
        raise UsageError(f"empty range: --{lo_key.replace('_', '-')} {lo} must be below --{hi_key.replace('_', '-')} {hi}")
    return lo, hi


def _csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt(x) for x in row) + "\n")
    return buf.getvalue()


def cmd_tractrix(cfg) -> str:
    params = _tractrix_params(cfg)
    s_lo, s_hi = _range(cfg, "s_min", "s_max", (-5.0, 5.0))
    n = int(cfg["samples"])
    if n < 2:
        raise UsageError("--samples must be at least 2")
    s = np.linspace(s_lo, s_hi, n)
    v = eval_v(params, s)
    x = position(params, s, v)
    speed = np.abs(v[:, 0])
    rows = (
        (s[i], *x[i], *v[i], speed[i], bool(speed[i] > REGULARITY_THRESHOLD))
        for i in range(n)
    )
    return _csv(["s", "x1", "x2", "x3", "v1", "v2", "v3", "speed", "regular"], rows)


def cmd_integrate(cfg) -> str:
    _need(cfg, "curvatures", "v0")
    k = _parse_floats(cfg["curvatures"], "--curvatures")
    v0 = _parse_floats(cfg["v0"], "--v0")
    if not 1 <= len(k) <= MAX_DIMENSION - 1:
        raise UsageError(f"between 1 and {MAX_DIMENSION - 1} curvatures are supported, got {len(k)}")
    if len(v0) != len(k) + 1:
        raise UsageError(f"--v0 needs {len(k) + 1} components for {len(k)} curvatures, got {len(v0)}")
    s_lo, s_hi = _range(cfg, "s_min", "s_max", (-10.0, 10.0))
    config = IntegrationConfig(
        s_lo, s_hi, h=float(cfg["step"]), norm_tolerance=float(cfg["norm_tol"]),
        renormalize=bool(cfg["renormalize"]),
    )
    samples = integrate(DirectrixSpec(tuple(k)), v0, config)
    header = ["s"] + [f"v{j + 1}" for j in range(len(v0))] + ["norm_drift", "speed"]
    rows = ((p.s, *p.state, p.norm_drift, p.speed) for p in samples)
    return _csv(header, rows)


def surface_grid(params: DiniParams, cfg):
    n, m = _parse_grid(cfg.get("grid") or "10x10")
    s_lo, s_hi = _range(cfg, "s_min", "s_max", default_s_range(params.tractrix))
    p_lo, p_hi = _range(cfg, "phi_min", "phi_max", default_phi_range(params))
    s = np.linspace(s_lo, s_hi, n)
    phi = np.linspace(p_lo, p_hi, m)
    ss, pp = np.meshgrid(s, phi, indexing="ij")
    return ss, pp, embed(params, ss, pp)


def cmd_surface(cfg) -> str:
    params = _dini_params(cfg)
    fmt_name = cfg.get("format") or "csv"
    ss, pp, pts = surface_grid(params, cfg)
    n, m = ss.shape
    if fmt_name == "csv":
        rows = ((ss[i, j], pp[i, j], *pts[i, j]) for i in range(n) for j in range(m))
        return _csv(["s", "phi", "x1", "x2", "x3", "x4"], rows)
    if fmt_name != "obj":
        raise UsageError(f"surface supports --format csv or obj, got {fmt_name!r}")
    drop = int(cfg["drop_axis"])
    if drop not in (1, 2, 3, 4):
        raise UsageError("--drop-axis must be 1, 2, 3 or 4")
    keep = [i for i in range(4) if i != drop - 1]
    buf = io.StringIO()
    buf.write(f"# circular Dini surface, {n}x{m} (s, phi) grid, axis x{drop} dropped\n")
    for i in range(n):
        for j in range(m):
            buf.write("v " + " ".join(fmt(pts[i, j, k]) for k in keep) + "\n")
    for i in range(n - 1):
        for j in range(m - 1):
            a = i * m + j + 1
            buf.write(f"f {a} {a + m} {a + m + 1} {a + 1}\n")
    return buf.getvalue()


def cmd_curvature(cfg) -> str:
    params = _dini_params(cfg)
    grid = _parse_grid(cfg.get("grid") or "32x32")
    s_lo, s_hi = _range(cfg, "s_min", "s_max", default_s_range(params.tractrix))
    p_lo, p_hi = _range(cfg, "phi_min", "phi_max", default_phi_range(params))
    kw = {}
    if cfg.get("metric_step") is not None:
        kw["h"] = float(cfg["metric_step"])
    report = curvature_grid_report(params, (s_lo, s_hi), (p_lo, p_hi), grid, margin=float(cfg["margin"]), **kw)
    return dumps(report.to_dict()) + "\n"


def cmd_verify(cfg) -> tuple[str, int]:
    variant = "printed" if cfg.get("inject_printed_unit") else "corrected"
    name = cfg.get("suite") or "full"
    checks = run_suite(name, variant)
    summary = summarize(name, checks, variant)
    return dumps(summary) + "\n", 0 if summary["passed"] else 1


def _add_tractrix_flags(p):
    g = p.add_argument_group("circular tractrix")
    g.add_argument("--r", type=float, help="directrix circle radius")
    g.add_argument("--c1", type=float, help="integration constant c1 (derived from c2 when r = 1)")
    g.add_argument("--c2", type=float, help="integration constant c2")
    g.add_argument("--c3", type=float, help="phase constant c3 (default 0)")
    g.add_argument("--branch", choices=("general", "stationary"))
    g.add_argument("--sign", type=int, choices=(1, -1), help="sign of the stationary branch")
    g.add_argument("--tol", type=float, help="tolerance on the regime constraint (default 1e-12)")


def _add_range_flags(p, phi=False):
    p.add_argument("--s-min", type=float)
    p.add_argument("--s-max", type=float)
    if phi:
        p.add_argument("--phi-min", type=float)
        p.add_argument("--phi-max", type=float)


def _add_output_flags(p, formats):
    p.add_argument("--format", choices=formats)
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--config", help="JSON file with parameter values")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="circdini", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tractrix", help="sample a closed-form circular tractrix (CSV)")
    _add_tractrix_flags(p)
    _add_range_flags(p)
    p.add_argument("--samples", type=int)
    _add_output_flags(p, ("csv",))
    p.set_defaults(func=cmd_tractrix)

    p = sub.add_parser("integrate", help="integrate the tractrix ODE for constant curvatures (CSV)")
    p.add_argument("--curvatures", help="comma-separated k1,...,k(n-1), n <= 6")
    p.add_argument("--v0", help="comma-separated unit initial state v1,...,vn")
    _add_range_flags(p)
    p.add_argument("--step", type=float)
    p.add_argument("--norm-tol", type=float)
    p.add_argument("--renormalize", action="store_true", default=None)
    _add_output_flags(p, ("csv",))
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("surface", help="sample a circular Dini surface (CSV or OBJ)")
    _add_tractrix_flags(p)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    _add_range_flags(p, phi=True)
    p.add_argument("--grid", help="NxM grid over (s, phi)")
    p.add_argument("--drop-axis", type=int, help="coordinate dropped for OBJ export (default 4)")
    _add_output_flags(p, ("csv", "obj"))
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("curvature", help="numeric vs closed-form Gauss curvature (JSON)")
    _add_tractrix_flags(p)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    _add_range_flags(p, phi=True)
    p.add_argument("--grid", help="NxM grid over (s, phi), at least 8x8")
    p.add_argument("--margin", type=float, help="exclude points with |v1| <= margin (default 1e-3)")
    p.add_argument("--metric-step", type=float, help="Brioschi stencil step")
    _add_output_flags(p, ("json",))
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("verify", help="run the built-in verification suite (JSON)")
    p.add_argument("suite", nargs="?", choices=SUITES)
    p.add_argument("--inject-printed-unit", action="store_true", default=None,
                   help="use the unit-regime variant with numerator -(2s + c3); the suite must fail")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def _write(text, out):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    cfg = _resolve(args)
    try:
        result = args.func(cfg)
    except UsageError as exc:
        parser.error(str(exc))
    except CircDiniError as exc:
        print(f"circdini {args.command}: error: {exc}", file=sys.stderr)
        return 1
    text, code = result if isinstance(result, tuple) else (result, 0)
    _write(text, cfg.get("out"))
    return code


if __name__ == "__main__":
    sys.exit(main())
