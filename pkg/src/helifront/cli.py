"""Command-line front end.

    helifront classify    --builtin example2 --u -1:1
    helifront mesh        --builtin example4 --grid 200x200 --v 0:6.2832 --out r.obj
    helifront invariants  --spec curve.json --lambda 0.5 --grid 20x4
    helifront slice       --builtin example1 --grid 400
    helifront reconstruct --ell 1 --beta 1 --steps 4096 --u 0:6.2832

Exit codes: 0 success, 1 malformed input, 2 no smooth frame selection.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from helifront import framed, helicoid, io
from helifront.expr import ExpressionError
from helifront.fixtures import EXAMPLES, LAMBDA
from helifront.helicoid import HelicoidalSurface, NoSmoothSelection
from helifront.legendre import CurveSpecError, LegendreCurvature, curve_from_spec, reconstruct_curve
from helifront.singularity import singular_locus_scan

SUBCOMMANDS = ("classify", "mesh", "invariants", "slice", "reconstruct")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    builtin: bool = True
    lam: float | None = None
    u_range: tuple[float, float] | None = None
    v_range: tuple[float, float] = (0.0, 2.0 * math.pi)
    grid: tuple[int, int] | None = None
    steps: int = 4096
    ell: str | None = None
    beta: str | None = None
    out: str | None = None
    scan_points: int = 257
    seed: int = field(default_factory=lambda: int(os.environ.get("SEED", "0")))

    def __post_init__(self):
        if self.lam is not None and not abs(self.lam) > 1e-12:
            raise ConfigError("lambda must be nonzero")
        if self.grid is not None and min(self.grid) < 2:
            raise ConfigError("grid sizes must be >= 2")


def _interval(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an interval a:b, got {text!r}") from None
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"empty interval {text!r}")
    return lo, hi


def _grid(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NuxNv, got {text!r}") from None
    if len(nums) == 1:
        nums.append(2)
    if len(nums) != 2:
        raise argparse.ArgumentTypeError(f"expected NuxNv, got {text!r}")
    return nums[0], nums[1]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="helifront", description="Helicoidal surfaces of frontals.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        s = sub.add_parser(name)
        if name != "reconstruct":
            src = s.add_mutually_exclusive_group(required=True)
            src.add_argument("--builtin", choices=sorted(EXAMPLES))
            src.add_argument("--spec", help="curve-spec JSON file")
            s.add_argument("--lambda", dest="lam", type=float, help="pitch (default 1/2 or the spec's value)")
        else:
            s.add_argument("--spec", help="curvature-spec JSON file")
            s.add_argument("--ell")
            s.add_argument("--beta")
            s.add_argument("--steps", type=int, default=4096)
        s.add_argument("--u", type=_interval, help="parameter interval a:b")
        if name in ("mesh", "invariants"):
            s.add_argument("--v", type=_interval, default=(0.0, 2.0 * math.pi))
        if name in ("mesh", "invariants", "slice"):
            s.add_argument("--grid", type=_grid, help="NuxNv (slice: Nu)")
        if name == "classify":
            s.add_argument("--scan-points", type=int, default=257)
        s.add_argument("--out", help="output file (default: stdout)")
    return p


def _join_interval_flags(argv: list[str]) -> list[str]:
    """Allow ``--u -1:1``: argparse would read ``-1:1`` as an option."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] in ("--u", "--v") and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        input=getattr(ns, "builtin", None) or ns.spec,
        builtin=getattr(ns, "builtin", None) is not None,
        lam=getattr(ns, "lam", None),
        u_range=ns.u,
        v_range=getattr(ns, "v", (0.0, 2.0 * math.pi)),
        grid=getattr(ns, "grid", None),
        steps=getattr(ns, "steps", 4096),
        ell=getattr(ns, "ell", None),
        beta=getattr(ns, "beta", None),
        out=ns.out,
        scan_points=getattr(ns, "scan_points", 257),
    )


def _load_spec(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise CurveSpecError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CurveSpecError(f"{path} is not valid JSON: {exc}") from exc


def load_surface(cfg: RunConfig) -> HelicoidalSurface:
    if cfg.builtin:
        ex = EXAMPLES[cfg.input]
        return ex.helicoid(cfg.lam)
    spec = _load_spec(cfg.input)
    curve = curve_from_spec(spec)
    lam = cfg.lam if cfg.lam is not None else float(spec.get("lambda", LAMBDA)) if isinstance(spec, dict) else LAMBDA
    return HelicoidalSurface(curve, lam)


def _u_grid(cfg: RunConfig, h: HelicoidalSurface, n: int) -> np.ndarray:
    lo, hi = cfg.u_range or h.domain
    return np.linspace(lo, hi, n)


def run_classify(cfg: RunConfig) -> str:
    h = load_surface(cfg)
    interval = cfg.u_range or h.domain
    points = singular_locus_scan(h, interval, cfg.scan_points)
    report = {
        "input": cfg.input,
        "lambda": h.lam,
        "interval": list(interval),
        "singular_points": [p.as_dict() for p in points],
    }
    return io.dumps_json(report)


def run_mesh(cfg: RunConfig) -> str:
    h = load_surface(cfg)
    nu, nv = cfg.grid or (64, 64)
    u = _u_grid(cfg, h, nu)
    v = np.linspace(*cfg.v_range, nv)
    verts = io.grid_vertices(h, u, v)
    faces = io.grid_faces(nu, nv)
    return io.to_text(io.write_obj, verts, faces, f"helicoid {cfg.input} lambda={io.fmt(h.lam)} grid={nu}x{nv}")


def run_invariants(cfg: RunConfig) -> str:
    h = load_surface(cfg)
    k = helicoid.select_k(h)
    field_ = helicoid.framed_invariant_field(h, k)
    nu, nv = cfg.grid or (21, 2)
    u = _u_grid(cfg, h, nu)
    v = np.linspace(*cfg.v_range, nv)
    header = ["u", "v", *framed.INVARIANT_COLUMNS, "JF", "KF", "HF"] + [f"residual{i}" for i in range(1, 7)]
    rows = []
    for ui in u:
        for vj in v:
            inv = field_(float(ui), float(vj)).values()
            cf = framed.framed_curvature(inv)
            res = framed.integrability_residual(field_, float(ui), float(vj))
            rows.append([ui, vj, *(getattr(inv, c) for c in framed.INVARIANT_COLUMNS), *cf, *res])
    return io.to_text(io.write_csv, header, rows)


def run_slice(cfg: RunConfig) -> str:
    h = load_surface(cfg)
    nu = (cfg.grid or (401, 2))[0]
    u = _u_grid(cfg, h, nu)
    s1, s2 = helicoid.slice_curve(h, u, "s")
    c1, c2 = helicoid.slice_curve(h, u, "c")
    rows = zip(u, *(np.broadcast_to(np.asarray(t, dtype=float), u.shape) for t in (s1, s2, c1, c2)))
    return io.to_text(io.write_csv, ["u", "s1", "s2", "c1", "c2"], rows)


def run_reconstruct(cfg: RunConfig) -> str:
    init: dict = {}
    if cfg.input:
        spec = _load_spec(cfg.input)
        if not isinstance(spec, dict) or spec.get("kind") != "curvature":
            raise CurveSpecError("reconstruct needs a curvature spec")
        ell, beta = spec.get("ell"), spec.get("beta")
        init = spec.get("init", {})
        interval = cfg.u_range or tuple(spec.get("domain", (0.0, 1.0)))
        steps = int(spec.get("steps", cfg.steps))
    else:
        ell, beta = cfg.ell, cfg.beta
        interval = cfg.u_range or (0.0, 1.0)
        steps = cfg.steps
    if ell is None or beta is None:
        raise CurveSpecError("reconstruct needs --ell and --beta (or a curvature spec)")
    curv = LegendreCurvature.from_expressions(ell, beta)
    try:
        sampled = reconstruct_curve(
            curv,
            interval,
            steps,
            u0=float(init.get("u0", interval[0])),
            gamma0=tuple(float(t) for t in init.get("gamma0", (0.0, 0.0))),
            angle0=float(init.get("angle0", 0.0)),
        )
    except (TypeError, ValueError) as exc:
        raise CurveSpecError(str(exc)) from exc
    rows = zip(sampled.u, sampled.x, sampled.z, sampled.a, sampled.b)
    return io.to_text(io.write_csv, ["u", "x", "z", "a", "b"], rows)


RUNNERS = {
    "classify": run_classify,
    "mesh": run_mesh,
    "invariants": run_invariants,
    "slice": run_slice,
    "reconstruct": run_reconstruct,
}


def run(cfg: RunConfig) -> str:
    return RUNNERS[cfg.command](cfg)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    ns = parser.parse_args(_join_interval_flags(argv))
    try:
        cfg = config_from_args(ns)
        text = run(cfg)
    except NoSmoothSelection as exc:
        print(f"helifront: no smooth frame selection: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, CurveSpecError, ExpressionError) as exc:
        print(f"helifront: {exc}", file=sys.stderr)
        return 1
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
