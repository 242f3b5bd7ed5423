"""Command-line entry point: ``visualspace <command> [options]``.

Exit status is 0 on success, 2 on a usage error and 1 when a numerical
routine fails.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import experiments as ex
from . import geodesics as geo
from . import luneburg as lb
from . import manifold as mf
from . import maps
from .errors import VisualSpaceError
from .io import ConfigError, Curve, emit_csv, emit_svg, load_observers


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    observer: Optional[lb.ObserverProfile] = None
    K3: Optional[float] = None
    step: float = geo.DEFAULT_STEP
    out: Optional[str] = None
    svg: Optional[str] = None

    def __post_init__(self):
        if self.K3 is not None and not (math.isfinite(self.K3) and self.K3 < 0):
            raise UsageError(f"--K3 must be negative, got {self.K3}")
        if not (math.isfinite(self.step) and self.step > 0):
            raise UsageError(f"--step must be positive, got {self.step}")

    @property
    def format(self) -> str:
        if self.out and self.svg:
            return "both"
        return "svg" if self.svg else "csv"


# --------------------------------------------------------------------------
# argument types
# --------------------------------------------------------------------------

def _pair(text: str) -> tuple[float, float]:
    try:
        a, b = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two comma-separated numbers, got {text!r}")
    return a, b


def _point(text: str) -> mf.GaussianPoint:
    mu, sigma = _pair(text)
    try:
        return mf.GaussianPoint(mu, sigma)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _floats(text: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _vertices(text: str) -> list[str]:
    items = [v.strip() for v in text.split(",") if v.strip()]
    for v in items:
        try:
            float(v[:-2] if v.endswith("L0") else v)
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"vertex {v!r} is neither a distance in cm nor a multiple like 0.5L0")
    if not items:
        raise argparse.ArgumentTypeError("empty vertex list")
    return items


def _profile_spec(text: str) -> ex.SigmaProfile:
    """``linear:OFFSET,SLOPE[,LO,HI]`` or ``table:X1:S1,X2:S2,...``."""
    kind, _, body = text.partition(":")
    try:
        if kind == "linear":
            vals = [float(v) for v in body.split(",")]
            if len(vals) == 2:
                return ex.LinearProfile(vals[0], vals[1], (2.0, 16.0))
            if len(vals) == 4:
                return ex.LinearProfile(vals[0], vals[1], (vals[2], vals[3]))
        elif kind == "table":
            pairs = [tuple(float(v) for v in item.split(":")) for item in body.split(",")]
            return ex.TableProfile(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))
    except (ValueError, IndexError) as exc:
        raise argparse.ArgumentTypeError(f"bad profile {text!r}: {exc}")
    raise argparse.ArgumentTypeError(
        f"bad profile {text!r}: use linear:OFFSET,SLOPE[,LO,HI] or table:X:S,X:S,...")


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="observer records (key=value blocks)")
    common.add_argument("--K3", type=float, help="curvature constant override (< 0)")

    outputs = argparse.ArgumentParser(add_help=False)
    outputs.add_argument("--out", help="CSV output path")
    outputs.add_argument("--svg", help="SVG output path")

    observer = argparse.ArgumentParser(add_help=False)
    observer.add_argument("--observer", default="A.J",
                          help="observer name from --config or the built-in table (default A.J)")

    p = argparse.ArgumentParser(prog="visualspace",
                                description="Fisher-Rao model of binocular visual space")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    s = sub.add_parser("metric", parents=[common, outputs], help="metric tensor at a point")
    s.add_argument("--point", type=_point, required=True, metavar="MU,SIGMA")
    s.add_argument("--numeric", action="store_true", help="also evaluate by quadrature")

    s = sub.add_parser("distance", parents=[common], help="Fisher-Rao distance")
    s.add_argument("--p1", type=_point, required=True, metavar="MU,SIGMA")
    s.add_argument("--p2", type=_point, required=True, metavar="MU,SIGMA")

    s = sub.add_parser("geodesic", parents=[common, outputs], help="integrate a geodesic")
    s.add_argument("--p1", type=_point, required=True, metavar="MU,SIGMA")
    s.add_argument("--p2", type=_point, required=True, metavar="MU,SIGMA")
    s.add_argument("--step", type=float, default=geo.DEFAULT_STEP)

    s = sub.add_parser("map", parents=[common], help="half-plane <-> disk conversion")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--point", type=_point, metavar="MU,SIGMA")
    g.add_argument("--disk", type=_pair, metavar="ALPHA,BETA")

    s = sub.add_parser("horopter", parents=[common, outputs, observer],
                       help="frontal horopters for one observer")
    s.add_argument("--vertices", type=_vertices, default=["0.5L0", "1L0", "2L0"],
                   help="median depths in cm, or multiples nL0 meaning parallax lambda0/n")
    s.add_argument("--samples", type=int, default=201)
    s.add_argument("--angle-fraction", type=float, default=0.9)

    s = sub.add_parser("table1", parents=[common, outputs], help="straight horopter distances")

    s = sub.add_parser("error-sim", parents=[common, outputs], help="two-dot estimation error")
    s.add_argument("--separations", type=_floats, default=list(ex.DEFAULT_SEPARATIONS))
    s.add_argument("--sigma1", type=_profile_spec, default=ex.DEFAULT_SIGMA1,
                   help="foveal width profile (default linear:0.96,-0.03)")

    s = sub.add_parser("alleys", parents=[common, outputs, observer],
                       help="parallel and distance alleys")
    s.add_argument("--anchor-distance", type=float, default=300.0)
    s.add_argument("--anchor-halfwidth", type=float, default=25.0)
    s.add_argument("--depths", type=int, default=12)
    s.add_argument("--swap", action="store_true",
                   help="give the larger widths to the distance alley")
    s.add_argument("--horopters", type=_vertices, default=None,
                   help="overlay frontal horopters at these median depths")
    return p


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def _resolve_observer(args) -> Optional[lb.ObserverProfile]:
    name = getattr(args, "observer", None)
    if name is None:
        return None
    known: dict[str, lb.ObserverProfile] = {}
    if args.config:
        try:
            known = load_observers(args.config)
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}")
    if name in known:
        prof = known[name]
    else:
        try:
            prof = ex.table1_observer(name)
        except KeyError:
            raise UsageError(f"unknown observer {name!r}")
    if args.K3 is not None:
        prof = lb.ObserverProfile(prof.tau, prof.nu, args.K3, prof.name)
    return prof


def _vertex_parallax(spec: str, prof: lb.ObserverProfile, L0: float) -> tuple[str, float]:
    # "nL0" means parallax lambda0 / n, so "1L0" is exactly the straight horopter;
    # a bare number is a median depth in cm
    if spec.endswith("L0"):
        n = float(spec[:-2])
        if not n > 0:
            raise UsageError(f"vertex multiple must be positive, got {spec!r}")
        return spec, prof.nu / (n * L0)
    depth = float(spec)
    if not depth > 0:
        raise UsageError(f"vertex depth must be positive, got {spec!r}")
    return spec, lb.parallax_at_depth(depth, prof.nu)


def cmd_metric(cfg: RunConfig, args) -> str:
    p = args.point
    g = mf.metric_tensor(p)
    rows = [("closed", g.g_mumu, g.g_sigmasigma, g.g_musigma)]
    if args.numeric:
        n = mf.fisher_matrix_numeric(p)
        rows.append(("quadrature", n.g_mumu, n.g_sigmasigma, n.g_musigma))
    if cfg.out:
        emit_csv(rows, cfg.out, ("method", "g_mumu", "g_sigmasigma", "g_musigma"))
    return "; ".join(f"{m}: g_mumu={a:.9g} g_sigmasigma={b:.9g} g_musigma={c:.9g}"
                     for m, a, b, c in rows)


def cmd_distance(cfg: RunConfig, args) -> str:
    return f"{mf.fisher_rao_distance(args.p1, args.p2):.9g}"


def cmd_geodesic(cfg: RunConfig, args) -> str:
    if args.p1 == args.p2:
        raise UsageError("--p1 and --p2 must differ")
    path = geo.shoot_geodesic(args.p1, args.p2, step=cfg.step)
    arc = geo.geodesic_through(args.p1, args.p2)
    if cfg.out:
        rows = [(i, s.mu, s.sigma, s.dmu_ds, s.dsigma_ds) for i, s in enumerate(path.states)]
        emit_csv(rows, cfg.out, ("index", "mu", "sigma", "dmu_ds", "dsigma_ds"))
    if cfg.svg:
        emit_svg([Curve.of("RK4 geodesic", zip(path.mu, path.sigma))], cfg.svg,
                 title="Geodesic in the Fisher-Rao half-plane", xlabel="mu", ylabel="sigma")
    d = mf.fisher_rao_distance(args.p1, args.p2)
    return (f"geodesic {arc}: integrated length {path.arc_length:.9g}, closed form {d:.9g}, "
            f"{len(path)} states")


def cmd_map(cfg: RunConfig, args) -> str:
    K3 = cfg.K3 if cfg.K3 is not None else maps.DEFAULT_K3
    if args.point is not None:
        d = maps.half_plane_to_disk(args.point, K3)
        return f"alpha={d.alpha:.9g} beta={d.beta:.9g}"
    p = maps.disk_to_half_plane(maps.DiskPoint(*args.disk), K3)
    return f"mu={p.mu:.9g} sigma={p.sigma:.9g}"


def _horopter_curves(prof, specs, samples, fraction):
    L0 = lb.straight_horopter_distance(prof)
    curves = []
    for spec in specs:
        name, lam = _vertex_parallax(spec, prof, L0)
        pts = lb.horopter_curve(prof, lam, samples, angle_fraction=fraction)
        curves.append((name, lam, pts))
    return L0, curves


def cmd_horopter(cfg: RunConfig, args) -> str:
    prof = cfg.observer
    if args.samples < 3:
        raise UsageError("--samples must be >= 3")
    if not 0 < args.angle_fraction < 1:
        raise UsageError("--angle-fraction must lie in (0, 1)")
    L0, curves = _horopter_curves(prof, args.vertices, args.samples, args.angle_fraction)
    if cfg.out:
        rows = [(name, lam, i, p.x, p.y) for name, lam, pts in curves
                for i, p in enumerate(pts)]
        emit_csv(rows, cfg.out, ("vertex", "lambda_vertex", "index", "x_cm", "y_cm"))
    if cfg.svg:
        emit_svg([Curve.of(f"vertex {name}", ((p.y, p.x) for p in pts))
                  for name, _, pts in curves],
                 cfg.svg, title=f"Frontal horopters, observer {prof.name} (L0 = {L0:.2f} cm)",
                 xlabel="y (cm)", ylabel="x (cm)", equal_aspect=True)
    shapes = []
    for name, lam, _ in curves:
        k = lb.median_curvature(prof, lam)
        # d2x/dy2 below 1e-3 / L0 reads as straight
        shape = "straight" if abs(k) * L0 < 1e-3 else ("concave" if k < 0 else "convex")
        shapes.append(f"{name}:{shape}")
    return f"observer {prof.name}: L0={L0:.4f} cm; " + ", ".join(shapes)


def cmd_table1(cfg: RunConfig, args) -> str:
    rows = ex.table1_report(K3=cfg.K3)
    header = ("observer", "tau", "nu_cm", "observed_L0_cm", "reference_L0_cm", "lambda0_rad",
              "computed_L0_cm", "abs_delta_reference_cm")
    data = [(r.name, r.tau, r.nu, r.observed_L0, r.reference_L0, r.lambda0, r.computed_L0,
             r.delta_reference) for r in rows]
    if cfg.out:
        emit_csv(data, cfg.out, header)
    worst = max(r.delta_reference for r in rows)
    return f"table1: {len(rows)} observers, max |computed - reference| = {worst:.4f} cm"


def cmd_error_sim(cfg: RunConfig, args) -> str:
    rows = ex.error_curve(args.sigma1, args.separations)
    if cfg.out:
        emit_csv([(r.separation, r.sigma1, r.sigma2, r.fisher_distance, r.error) for r in rows],
                 cfg.out, ("separation_deg", "sigma1", "sigma2", "fisher_distance", "error"))
    if cfg.svg:
        emit_svg([Curve.of("absolute error", ((r.separation, r.error) for r in rows))],
                 cfg.svg, title="Distance estimation error",
                 xlabel="separation (deg)", ylabel="|d_F - d_u|")
    errs = [r.error for r in rows]
    trend = "non-decreasing" if all(b >= a for a, b in zip(errs, errs[1:])) else "not monotone"
    return f"error-sim: {len(rows)} separations, error {errs[0]:.4f} -> {errs[-1]:.4f} ({trend})"


def _ordering(par: ex.AlleyCurve, dist: ex.AlleyCurve) -> str:
    px = np.array([p.x for p in par.right])
    py = np.array([p.y for p in par.right])
    dx = np.array([p.x for p in dist.right])
    dy = np.array([p.y for p in dist.right])
    lo, hi = max(px.min(), dx.min()), min(px.max(), dx.max())
    if lo >= hi:
        return "no common depth range"
    xs = np.linspace(lo, hi, 50)
    diff = np.interp(xs, px[::-1], py[::-1]) - np.interp(xs, dx[::-1], dy[::-1])
    if np.all(diff < 0):
        return "parallel alley inside distance alley"
    if np.all(diff > 0):
        return "parallel alley outside distance alley"
    return "alleys cross"


def cmd_alleys(cfg: RunConfig, args) -> str:
    prof = cfg.observer
    if args.depths < 2:
        raise UsageError("--depths must be >= 2")
    if not (args.anchor_distance > 0 and args.anchor_halfwidth > 0):
        raise UsageError("anchor distance and half-width must be positive")
    conf = ex.default_alley_config(prof, args.anchor_distance, args.anchor_halfwidth,
                                   args.depths, swap=args.swap)
    res = ex.alley_curves(conf)
    alleys = (res.parallel, res.distance)
    if cfg.out:
        rows = [(a.name, side, i, r.depth, r.sigma, (1 if side == "right" else -1) * r.mu,
                 getattr(r, side).x, getattr(r, side).y, a.pair_distance)
                for a in alleys for side in ("right", "left") for i, r in enumerate(a.rows)]
        emit_csv(rows, cfg.out, ("alley", "side", "index", "depth_lambda", "sigma", "mu",
                                 "x_cm", "y_cm", "pair_distance"))
    if cfg.svg:
        curves = []
        for a, color, dashed in ((res.parallel, "#1f77b4", False),
                                 (res.distance, "#d62728", True)):
            for side in ("right", "left"):
                pts = getattr(a, side)
                curves.append(Curve.of(f"{a.name} ({side})", ((p.y, p.x) for p in pts),
                                       color=color, dashed=dashed))
        if args.horopters:
            _, hs = _horopter_curves(prof, args.horopters, 201, 0.9)
            for name, _, pts in hs:
                lim = 2.0 * args.anchor_halfwidth
                curves.append(Curve.of(f"horopter {name}",
                                       ((p.y, p.x) for p in pts if abs(p.y) <= lim),
                                       color="#7f7f7f", dashed=True))
        emit_svg(curves, cfg.svg, title=f"Alleys, observer {prof.name}",
                 xlabel="y (cm)", ylabel="x (cm)")
    return (f"alleys {prof.name}: D*_parallel={res.parallel.pair_distance:.6g}, "
            f"D*_distance={res.distance.pair_distance:.6g}; {_ordering(*alleys)}")


COMMANDS = {
    "metric": cmd_metric,
    "distance": cmd_distance,
    "geodesic": cmd_geodesic,
    "map": cmd_map,
    "horopter": cmd_horopter,
    "table1": cmd_table1,
    "error-sim": cmd_error_sim,
    "alleys": cmd_alleys,
}


def parse_and_dispatch(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        observer = _resolve_observer(args)
        cfg = RunConfig(args.command, observer, args.K3, getattr(args, "step", geo.DEFAULT_STEP),
                        getattr(args, "out", None), getattr(args, "svg", None))
        summary = COMMANDS[args.command](cfg, args)
    except (UsageError, ConfigError) as exc:
        parser.print_usage(sys.stderr)
        print(f"visualspace: error: {exc}", file=sys.stderr)
        return 2
    except (VisualSpaceError, ValueError, ArithmeticError) as exc:
        print(f"visualspace: {args.command} failed: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return 1
    print(summary)
    return 0


def main() -> None:
    sys.exit(parse_and_dispatch())


if __name__ == "__main__":
    main()
