"""Command-line front end.

    spherelab <transform|derivative|curvature|lindquist|verify|mesh> [options]

Exit codes: 0 success, 2 invalid configuration, 3 numeric failure; for
``verify`` the number of failed checks (capped at 100).
"""

import argparse
from dataclasses import asdict, dataclass, field
import json
import os
import sys

import numpy as np

from . import convexity, deriv, mesh, verify
from .errors import DomainError, PoleError
from .specfun import is_even_integer
from .transforms import DEFAULT_LEVEL, SphericalDensity, TransformSpec, lp_cosine

COMMANDS = ("transform", "derivative", "curvature", "lindquist", "verify", "mesh")
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
MAX_FAIL_EXIT = 100


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    dim: int = None
    p: float = None  # None: the command's default (1, or the suite's own set for verify)
    preset: str = None
    params: dict = field(default_factory=dict)
    density: str = None  # inline JSON or a file path
    level: int = DEFAULT_LEVEL
    grid: int = 200
    at: list = field(default_factory=list)
    alpha: list = None
    x: list = None
    out: str = None
    seed: int = 0
    suite: str = "all"
    tol: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(**d)

    def to_argv(self):
        argv = [self.command]
        if self.dim is not None:
            argv += ["--dim", str(self.dim)]
        if self.p is not None:
            argv += ["--p", repr(float(self.p))]
        argv += ["--level", str(self.level), "--grid", str(self.grid),
                 "--seed", str(self.seed), "--suite", self.suite]
        if self.preset is not None:
            argv += ["--preset", self.preset]
        for k, v in self.params.items():
            argv.append(f"--param={k}={json.dumps(v)}")
        if self.density is not None:
            argv += ["--density", self.density]
        for pt in self.at:
            argv.append("--at=" + ",".join(repr(float(c)) for c in pt))
        if self.alpha is not None:
            argv += ["--alpha", ",".join(str(a) for a in self.alpha)]
        if self.x is not None:
            argv.append("--x=" + ",".join(repr(float(c)) for c in self.x))
        if self.out is not None:
            argv += ["--out", self.out]
        for k, v in self.tol.items():
            argv += ["--tol", f"{k}={v!r}"]
        return argv


def _vector(text):
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated vector: {text!r}")


def _ints(text):
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def _keyval(text):
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    k, v = text.split("=", 1)
    try:
        return k, json.loads(v)
    except json.JSONDecodeError:
        return k, v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser():
    ap = _Parser(prog="spherelab", description="L^p-cosine transforms, Radon transforms and curvature of the induced bodies.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--dim", type=int)
    ap.add_argument("--p", type=float)
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--preset")
    src.add_argument("--density", help="density JSON file, or inline JSON starting with '{'")
    ap.add_argument("--param", type=_keyval, action="append", default=[], help="preset parameter KEY=JSON")
    ap.add_argument("--level", type=int, default=DEFAULT_LEVEL)
    ap.add_argument("--grid", type=int, default=200)
    ap.add_argument("--at", type=_vector, action="append", default=[])
    ap.add_argument("--alpha", type=_ints)
    ap.add_argument("--x", type=_vector)
    ap.add_argument("--out")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--suite", choices=verify.SUITES, default="all")
    ap.add_argument("--tol", type=_keyval, action="append", default=[])
    return ap


def parse_config(argv):
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(command=ns.command, dim=ns.dim, p=ns.p, preset=ns.preset, params=dict(ns.param),
                    density=ns.density, level=ns.level, grid=ns.grid, at=ns.at, alpha=ns.alpha,
                    x=ns.x, out=ns.out, seed=ns.seed, suite=ns.suite, tol=dict(ns.tol))
    validate(cfg)
    return cfg


def exponent(cfg):
    return 1.0 if cfg.p is None else cfg.p


def validate(cfg):
    if cfg.dim is not None and cfg.dim < 2:
        raise ConfigError(f"--dim must be >= 2 (got {cfg.dim})")
    if cfg.level < 1:
        raise ConfigError(f"--level must be >= 1 (got {cfg.level})")
    if cfg.grid < 1:
        raise ConfigError(f"--grid must be >= 1 (got {cfg.grid})")
    if cfg.p is not None and not cfg.p >= 1.0:
        raise ConfigError(f"--p must be >= 1 for the L^p-cosine transform (got {cfg.p})")
    unknown = set(cfg.tol) - set(verify.DEFAULT_TOL)
    if unknown:
        raise ConfigError(f"unknown --tol key(s) {sorted(unknown)}; known: {sorted(verify.DEFAULT_TOL)}")
    for k, v in cfg.tol.items():
        if not isinstance(v, (int, float)) or not v > 0:
            raise ConfigError(f"--tol {k} must be a positive number (got {v!r})")
    p = exponent(cfg)
    if cfg.command in ("curvature", "mesh") and p != 1.0 and is_even_integer(p):
        raise ConfigError(f"p={p:g} is an even integer; positive curvature is guaranteed only for p > 1 not an even integer")
    if cfg.command == "mesh" and p <= 1.0:
        raise ConfigError("mesh needs p > 1 (boundary points come from the gradient of H = (T_p f)^(1/p))")
    if cfg.command == "derivative":
        if cfg.alpha is None or not cfg.at:
            raise ConfigError("derivative needs --alpha and at least one --at")
    if cfg.command == "lindquist" and not cfg.at:
        raise ConfigError("lindquist needs --at u")


def load_density(cfg):
    if cfg.density is not None:
        text = cfg.density
        if not text.lstrip().startswith("{"):
            if not os.path.exists(text):
                raise ConfigError(f"density file not found: {text}")
            with open(text) as fh:
                text = fh.read()
        try:
            f = SphericalDensity.from_json(text)
        except (ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"invalid density JSON: {exc}")
    else:
        dim = cfg.dim if cfg.dim is not None else 3
        try:
            f = SphericalDensity.preset(cfg.preset or "constant", dim, **cfg.params)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"invalid preset: {exc}")
    if cfg.dim is not None and f.dim != cfg.dim:
        raise ConfigError(f"density has dim {f.dim} but --dim {cfg.dim}")
    return f


def _points(cfg, f):
    for pt in cfg.at:
        if len(pt) != f.dim:
            raise ConfigError(f"point {pt} does not live in R^{f.dim}")
    return [np.array(pt) for pt in cfg.at]


def _report(cfg, results, residuals=(), verdict=None):
    return {"command": cfg.command, "config": cfg.to_dict(), "results": list(results),
            "residuals": list(residuals), "verdict": verdict}


def _emit(cfg, payload, out=sys.stdout):
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text if text.endswith("\n") else text + "\n")


def cmd_transform(cfg, f, err=sys.stderr):
    p = exponent(cfg)
    spec = TransformSpec(p, f.dim, cfg.level)
    pts = _points(cfg, f) or [np.eye(f.dim)[-1]]
    results = []
    for x in pts:
        if not np.any(x):
            err.write("warning: x = 0; the transform vanishes there and derivative commands exclude the origin\n")
        hp = lp_cosine(f, spec, x)
        results.append({"x": x.tolist(), "Hp": hp, "H": hp ** (1.0 / p) if hp >= 0 else None})
    return _report(cfg, results)


def _derivative_path(p, order):
    if p == int(p) and int(p) % 2 == 1 and order == p + 1:
        return "odd"
    if p > 1 and not is_even_integer(p) and order % 2 == 0 and 0 < order < p + 1:
        return "frac"
    raise ConfigError(
        f"no closed form for |alpha|={order}, p={p:g}: need |alpha| = p+1 with p odd (subsphere formula), "
        f"or even 0 < |alpha| < p+1 with p > 1 not an even integer (fractional formula)")


def cmd_derivative(cfg, f, err=sys.stderr):
    alpha = deriv.as_multi_index(cfg.alpha)
    if len(alpha) != f.dim:
        raise ConfigError(f"--alpha has {len(alpha)} entries but dim is {f.dim}")
    p = exponent(cfg)
    path = _derivative_path(p, alpha.order)
    spec = TransformSpec(p, f.dim, cfg.level)
    results, residuals = [], []
    for x in _points(cfg, f):
        if not np.any(x):
            raise ConfigError("derivatives are not defined at the origin")
        if path == "odd":
            val = deriv.analytic_deriv_odd(f, (alpha.order - 2) // 2, alpha, x, cfg.level)
        else:
            val = deriv.analytic_deriv_frac(f, p, alpha, x, cfg.level)
        row = {"x": x.tolist(), "value": val, "formula": path}
        if alpha.order <= 4 and f.kind != "grid":
            fd = deriv.finite_diff(lambda y: lp_cosine(f, spec, y), alpha, x)
            row["finite_difference"] = fd
            residuals.append(abs(val - fd) / max(abs(fd), 1e-300))
        results.append(row)
    return _report(cfg, results, residuals)


def cmd_curvature(cfg, f, err=sys.stderr):
    rep = convexity.curvature_report(f, exponent(cfg), count=cfg.grid, level=cfg.level, seed=cfg.seed)
    payload = _report(cfg, [rep.to_dict()], verdict=rep.verdict)
    err.write(f"min radius {rep.min_radius:.6e}  min curvature {float(np.min(rep.curvature)):.6e}  "
              f"positive {rep.verdict}\n")
    return payload


def cmd_lindquist(cfg, f, err=sys.stderr):
    u = _points(cfg, f)[0]
    p = exponent(cfg)
    if cfg.x is not None:
        x = np.array(cfg.x)
        if len(x) != f.dim:
            raise ConfigError(f"--x must live in R^{f.dim}")
        if p == 1.0:
            uh = u / np.linalg.norm(u)
            if abs(np.dot(uh, x)) > convexity.ORTHO_TOL * max(1.0, np.linalg.norm(x)):
                raise ConfigError("for p = 1 the Lindquist criterion needs x orthogonal to u")
            val = convexity.lindquist_1(f, u, x, cfg.level)
        else:
            val = convexity.lindquist_p(f, p, u, x, cfg.level)
        return _report(cfg, [{"u": u.tolist(), "x": x.tolist(), "value": val}], verdict=bool(val >= convexity.CONVEX_TOL))
    rep = convexity.convexity_check(f, p, convexity.direction_grid(f.dim, cfg.grid, cfg.seed), cfg.level)
    return _report(cfg, [rep.to_dict()], [rep.max_discrepancy], rep.verdict)


def cmd_verify(cfg, f, err=sys.stderr):
    density = f if (cfg.preset or cfg.density) else None
    checks = verify.run_suite(cfg.suite, p=cfg.p, dim=f.dim, level=cfg.level, grid=min(cfg.grid, 50),
                              seed=cfg.seed, density=density, tol=cfg.tol)
    failed = sum(not c["passed"] for c in checks)
    for c in checks:
        tol = "" if c["tolerance"] is None else f" (tol {c['tolerance']:g})"
        err.write(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}: {c['value']:.3e}{tol}\n")
    return _report(cfg, checks, [c["value"] for c in checks], failed == 0), failed


def cmd_mesh(cfg, f, err=sys.stderr):
    verts, faces, normals = mesh.boundary_mesh(f, exponent(cfg), cfg.grid, cfg.level)
    err.write(f"{len(verts)} vertices, {len(faces)} faces\n")
    return mesh.obj_text(verts, faces)


HANDLERS = {
    "transform": cmd_transform,
    "derivative": cmd_derivative,
    "curvature": cmd_curvature,
    "lindquist": cmd_lindquist,
    "verify": cmd_verify,
    "mesh": cmd_mesh,
}


def run(argv, out=sys.stdout, err=sys.stderr):
    """Run one command; returns the exit code."""
    try:
        cfg = parse_config(argv)
        f = load_density(cfg)
        if cfg.command == "mesh" and f.dim != 3:
            raise ConfigError("mesh needs dim=3")
        result = HANDLERS[cfg.command](cfg, f, err)
    except ConfigError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CONFIG
    except (DomainError, PoleError, FloatingPointError, ArithmeticError, RuntimeError, np.linalg.LinAlgError) as exc:
        err.write(f"numeric failure: {exc}\n")
        return EXIT_NUMERIC
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CONFIG
    if cfg.command == "verify":
        payload, failed = result
        _emit(cfg, payload, out)
        return min(failed, MAX_FAIL_EXIT)
    _emit(cfg, result, out)
    return 0


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
