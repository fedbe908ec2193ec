"""Command-line interface.

Exit codes: 0 pass, 1 validation failure, 2 solver failure, 3 I/O failure.
Unreadable or unparseable net files count as I/O failures.
``EDGENET_TOL`` overrides the default tolerance of every check.
"""

import argparse
import ast
import json
import operator
import re
import sys
from pathlib import Path

import numpy as np

from .netcore import NetError, default_tol, validate_edge_constraint

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_SOLVER = 2
EXIT_IO = 3


class UsageError(ValueError):
    """Bad command-line arguments (reported as a validation failure)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- argument parsing helpers ---------------------------------------------------


def parse_size(text):
    """``"RxC"`` (also ``R×C``) to ``(rows, cols)``."""
    m = re.fullmatch(r"\s*(\d+)\s*[x×X,]\s*(\d+)\s*", text)
    if not m:
        raise UsageError(f"size must look like 8x8, got {text!r}")
    return int(m.group(1)), int(m.group(2))


_NAMES = {"pi": np.pi, "e": np.e}
_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}


def _eval(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
        return node.value
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left), _eval(node.right))
    raise ValueError("unsupported expression")


def _number(tok):
    """Numeric literal or arithmetic on literals and ``pi``/``e`` (e.g. ``5*pi/6``)."""
    try:
        return _eval(ast.parse(tok.strip(), mode="eval").body)
    except (SyntaxError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a number: {tok!r}") from exc


def parse_floats(text):
    """Comma-separated reals; ``pi`` and arithmetic such as ``pi/6`` are accepted."""
    try:
        return [float(_number(t)) for t in text.split(",") if t.strip()]
    except TypeError as exc:
        raise UsageError(f"expected real numbers, got {text!r}") from exc


def parse_complexes(text):
    return [complex(_number(t)) for t in text.split(",") if t.strip()]


def _out_paths(out, n):
    if out is None:
        return [None] * n
    p = Path(out)
    if n == 1:
        return [p]
    return [p.with_name(f"{p.stem}_{i}{p.suffix}") for i in range(n)]


def _write(net, path):
    from .io import export_obj, save_json

    if path is None:
        return
    if path.suffix.lower() == ".obj":
        export_obj(net, path)
    else:
        save_json(net, path)


def _emit(args, payload):
    print(json.dumps(_jsonable(payload), indent=1))


def _jsonable(x):
    from .io import _jsonable as conv

    return conv(x)


def _net_summary(net, tol, extra=None):
    from .curvature import net_curvature
    from .io import _stats

    cd = net_curvature(net)
    ec = validate_edge_constraint(net, tol)
    out = {"kind": net.meta.get("kind"), "H": _stats(cd.H), "K": _stats(cd.K), "edge_constraint": ec.summary()}
    out.update(extra or {})
    return out, ec.passed


def _finish(args, nets, tol, extras=None):
    """Write nets, print summaries, and return the exit code."""
    paths = _out_paths(args.out, len(nets))
    summaries = []
    ok = True
    for i, (net, path) in enumerate(zip(nets, paths)):
        s, passed = _net_summary(net, tol, extras[i] if extras else None)
        ok &= passed
        _write(net, path)
        if path is not None:
            s["out"] = str(path)
        summaries.append(s)
    if getattr(args, "report", None):
        from .io import write_curvature_csv

        for i, (net, path) in enumerate(zip(nets, _out_paths(args.report, len(nets)))):
            write_curvature_csv(net, path)
            summaries[i]["report"] = str(path)
    _emit(args, summaries if len(summaries) > 1 else summaries[0])
    return EXIT_OK if ok else EXIT_INVALID


# -- subcommands ----------------------------------------------------------------


def cmd_minimal(args, tol):
    from .minimal import associated_family, holomorphic_grid

    rows, cols = parse_size(args.size)
    kind, _, params = args.holo.partition(":")
    params = parse_complexes(params) if params else None
    if kind == "moebius" and (params is None or len(params) != 4):
        raise UsageError("moebius needs four coefficients a,b,c,d")
    grid = holomorphic_grid(kind, rows, cols, origin=complex(args.origin), params=params)
    alphas = parse_floats(args.alpha)
    nets = [associated_family(grid, a, tol) for a in alphas]
    return _finish(args, nets, tol)


def cmd_cmc(args, tol):
    from .integrable_frames import cmc_net, perturbed_vacuum_field, vacuum_field

    rows, cols = parse_size(args.size)
    a, b = parse_floats(args.vacuum)
    if args.perturb:
        field = perturbed_vacuum_field(rows, cols, a, b, eps=tuple(parse_floats(args.perturb)))
    else:
        field = vacuum_field(rows, cols, a, b)
    nets, extras = [], []
    for alpha in parse_floats(args.alpha):
        res = cmc_net(field, alpha)
        nets.append(res.net)
        extras.append({"alpha": alpha, "compatibility": res.compatibility})
    return _finish(args, nets, tol, extras)


def cmd_knet(args, tol):
    from .kfamily import circles_cauchy, knet_associated, pseudosphere_cauchy

    rows, cols = parse_size(args.size)
    if args.cauchy == "pseudosphere":
        cauchy = pseudosphere_cauchy(rows, cols)
    else:
        cauchy = circles_cauchy(rows, cols, args.delta1, args.delta2, args.turn1, args.turn2)
    lams = parse_floats(args.lam)
    nets = [knet_associated(cauchy, lam) for lam in lams]
    return _finish(args, nets, tol, [{"lambda": lam} for lam in lams])


def _ck_config(path):
    from .kfamily import ck_default_cauchy, tau_from_sin

    if path is None:
        return ck_default_cauchy()
    cfg = json.loads(Path(path).read_text())
    known = {"rows", "cols", "sin_delta", "s_row", "s_col", "l_arg_row", "m_arg_col", "tau1", "tau2", "sin_delta1", "sin_delta2"}
    unknown = set(cfg) - known
    if unknown:
        raise UsageError(f"unknown cK config keys: {sorted(unknown)}")
    if "s_row" not in cfg:
        return ck_default_cauchy(cfg.get("rows", 8), cfg.get("cols", 8), cfg.get("sin_delta"))

    def cplx(v):
        v = np.asarray(v, dtype=float)
        return v[..., 0] + 1j * v[..., 1] if v.ndim == 2 else v.astype(complex)

    out = {k: cplx(cfg[k]) for k in ("s_row", "s_col")}
    out["l_arg_row"] = np.asarray(cfg["l_arg_row"], float)
    out["m_arg_col"] = np.asarray(cfg["m_arg_col"], float)
    for k in ("tau1", "tau2"):
        if k in cfg:
            out[k] = cplx(cfg[k])
        else:
            x = cfg["sin_delta1" if k == "tau1" else "sin_delta2"]
            out[k] = np.array([tau_from_sin(v) for v in np.atleast_1d(x)])
    return out


def cmd_cknet(args, tol):
    from .kfamily import ck_field, ck_net

    field = ck_field(**_ck_config(args.config))
    nets, extras = [], []
    for lam in parse_floats(args.lam):
        res = ck_net(field, lam)
        nets.append(res.net)
        extras.append({"lambda": lam, "compatibility": field.max_residual, **res.extra})
    return _finish(args, nets, tol, extras)


def cmd_developable(args, tol):
    from .developable import extrude_developable, helix_polyline, parallel_frame

    if args.curve:
        cfg = json.loads(Path(args.curve).read_text())
        pts = np.asarray(cfg["points"], dtype=float)
        u0 = cfg.get("u0")
        n0 = cfg.get("n0")
    else:
        pts = helix_polyline(args.points)
        u0 = n0 = None
    if u0 is None or n0 is None:
        e0 = pts[1] - pts[0]
        e0 = e0 / np.linalg.norm(e0)
        tmp = np.array([0.0, 0.0, 1.0]) if abs(e0[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
        u0 = np.cross(e0, tmp)
        u0 /= np.linalg.norm(u0)
        # tilt n0 away from the edge normal plane so the first strip is not flat
        w = np.cross(e0, u0)
        n0 = np.cos(0.3) * w + np.sin(0.3) * e0
        n0 -= np.dot(n0, u0) * u0
        n0 /= np.linalg.norm(n0)
    y0, y1, m = args.rulings.split(":")
    y = np.linspace(float(y0), float(y1), int(m) + 1)
    net = extrude_developable(parallel_frame(pts, u0, n0), y)
    return _finish(args, [net], tol)


def cmd_lantern(args, tol):
    from .developable import schwarz_lantern

    net = schwarz_lantern(args.around, args.height, args.radius)
    return _finish(args, [net], tol)


def _load(path, tol):
    from .io import import_net

    return import_net(path, tol)


def cmd_spin(args, tol):
    from .spin import minimal_alpha_spin_field, spin_transform

    net = _load(args.net, tol)
    kind, _, val = args.lambda_spec.partition(":")
    if kind == "const":
        q = parse_floats(val)
        if len(q) != 4:
            raise UsageError("const spin field needs four components w,x,y,z")
        lam = np.asarray(q)
    elif kind == "minimal-alpha":
        lam = minimal_alpha_spin_field(net, parse_floats(val)[0])
    else:
        raise UsageError(f"unknown lambda spec {args.lambda_spec!r}")
    res = spin_transform(net, lam, tol=tol)
    if not res.closed:
        worst = int(np.argmax(res.closure))
        _emit(args, {"closed": False, "worst_quad": worst, "closure": float(res.closure[worst])})
        return EXIT_INVALID
    extra = {"closed": True, "max_closure": float(res.closure.max(initial=0.0))}
    return _finish(args, [res.net], tol, [extra])


def cmd_analyze(args, tol):
    from .io import run_report

    net = _load(args.net, tol)
    options = {"tol": tol, "csv": args.report, "cube": args.cube}
    if args.weingarten:
        options["weingarten"] = parse_floats(args.weingarten)
    summary = run_report(net, options)
    _emit(args, summary)
    ok = summary["edge_constraint"]["passed"] and summary.get("cube", {}).get("passed", True)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_validate(args, tol):
    net = _load(args.net, tol)
    summary = net.meta["validation"]
    _emit(args, summary)
    return EXIT_OK if summary["passed"] else EXIT_INVALID


def cmd_laxcheck(args, tol):
    from .integrable_frames import (
        cmc_field,
        cmc_transitions,
        diagonal_gauge,
        edge_transport_residual,
        perturbed_vacuum_field,
        sym_bobenko_general,
    )

    if args.spec:
        spec = json.loads(Path(args.spec).read_text())
        unknown = set(spec) - {"a", "b", "u", "v", "alpha", "gauge"}
        if unknown:
            raise UsageError(f"unknown Lax spec keys: {sorted(unknown)}")

        def cplx(v):
            v = np.asarray(v, dtype=float)
            return v[:, 0] + 1j * v[:, 1] if v.ndim == 2 else v.astype(complex)

        field = cmc_field(cplx(spec["a"]), spec["u"], cplx(spec["b"]), spec["v"])
        alpha = float(spec.get("alpha", 0.4))
        gauge = spec.get("gauge")
    else:
        field = perturbed_vacuum_field(4, 4)
        alpha, gauge = 0.4, None
    U, V, dU, dV = cmc_transitions(field, alpha)
    res = sym_bobenko_general(U, V, dU, dV, -1.0, 0.5)
    out = {
        "alpha": alpha,
        "compatibility": res.compatibility,
        "edge_transport_residual": edge_transport_residual(res.ffrak, res.net.normals.reshape(res.ffrak.shape[:-1] + (3,))),
    }
    passed = out["edge_transport_residual"] <= tol
    if gauge is not None:
        theta = np.asarray(gauge, dtype=float)
        g = sym_bobenko_general(*diagonal_gauge(U, V, dU, dV, theta, alpha), -1.0, 0.5)
        out["gauged_edge_transport_residual"] = edge_transport_residual(
            g.ffrak, g.net.normals.reshape(g.ffrak.shape[:-1] + (3,))
        )
    out["passed"] = bool(passed)
    _emit(args, out)
    return EXIT_OK if passed else EXIT_INVALID


# -- entry point ----------------------------------------------------------------


def build_parser():
    p = _Parser(prog="edgenet", description="Edge-constraint nets: generators, curvature and audits.")
    p.add_argument("--tol", type=float, default=None, help="tolerance (default: EDGENET_TOL or 1e-9)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def gen(name, func, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--out", default=None, help="output .json or .obj")
        s.set_defaults(func=func)
        return s

    s = gen("minimal", cmd_minimal, "discrete minimal nets and their associated family")
    s.add_argument("--holo", default="identity", help="identity | scaled:s | moebius:a,b,c,d")
    s.add_argument("--origin", default="0", type=complex)
    s.add_argument("--size", default="10x10")
    s.add_argument("--alpha", default="0")
    s.add_argument("--report", default=None, help="per-quad curvature CSV")

    s = gen("cmc", cmd_cmc, "constant mean curvature nets from Lax data")
    s.add_argument("--vacuum", default="1,1", help="vacuum parameters a,b")
    s.add_argument("--perturb", default=None, help="perturbation amplitudes e_u,e_v,e_a")
    s.add_argument("--size", default="8x8")
    s.add_argument("--alpha", default="0")
    s.add_argument("--report", default=None)

    s = gen("knet", cmd_knet, "K-nets and their associated family")
    s.add_argument("--cauchy", choices=["circles", "pseudosphere"], default="circles")
    s.add_argument("--delta1", type=float, default=0.15)
    s.add_argument("--delta2", type=float, default=0.15)
    s.add_argument("--turn1", type=float, default=0.05)
    s.add_argument("--turn2", type=float, default=-0.05)
    s.add_argument("--lambda", dest="lam", default="1")
    s.add_argument("--size", default="20x20")
    s.add_argument("--report", default=None)

    s = gen("cknet", cmd_cknet, "circular nets of constant negative Gauss curvature")
    s.add_argument("--config", default=None, help="JSON Cauchy data")
    s.add_argument("--lambda", dest="lam", default="1")
    s.add_argument("--report", default=None)

    s = gen("developable", cmd_developable, "developable strip nets from a framed polyline")
    s.add_argument("--curve", default=None, help="JSON with points (and optional u0, n0)")
    s.add_argument("--points", type=int, default=12, help="helix samples when no curve is given")
    s.add_argument("--rulings", default="0:1:4", help="y0:y1:m")
    s.add_argument("--report", default=None)

    s = gen("lantern", cmd_lantern, "Schwarz lantern with cylinder normals")
    s.add_argument("--around", type=int, default=8)
    s.add_argument("--height", type=int, default=4)
    s.add_argument("--radius", type=float, default=1.0)
    s.add_argument("--report", default=None)

    s = gen("spin", cmd_spin, "spin transformation of an edge-constraint net")
    s.add_argument("--net", required=True)
    s.add_argument("--lambda-spec", required=True, help="const:w,x,y,z | minimal-alpha:a")

    s = sub.add_parser("analyze", help="curvature report of a net")
    s.add_argument("--net", required=True)
    s.add_argument("--report", default=None, help="per-quad curvature CSV")
    s.add_argument("--cube", action="store_true", help="cmc folding audit")
    s.add_argument("--weingarten", default=None, help="offset distances t1,t2,...")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("validate", help="edge-constraint validation")
    s.add_argument("--net", required=True)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("laxcheck", help="Lax-field edge transport audit")
    s.add_argument("--spec", default=None, help="JSON with a, b (complex pairs), u, v, alpha, gauge")
    s.set_defaults(func=cmd_laxcheck)
    return p


def main(argv=None):
    from .integrable_frames import SolverError
    from .io import NetFormatError

    try:
        args = build_parser().parse_args(argv)
        tol = args.tol if args.tol is not None else default_tol()
        return args.func(args, tol)
    except (OSError, json.JSONDecodeError, NetFormatError) as exc:
        print(f"edgenet: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SolverError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"edgenet: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (UsageError, NetError, ValueError, KeyError) as exc:
        print(f"edgenet: validation failure: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
