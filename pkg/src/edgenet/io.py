"""File formats and curvature reports.

JSON is the canonical interchange format::

    {"vertices": [[x, y, z], ...], "normals": [...], "quads": [[a, b, c, d], ...],
     "edges": [[i, j], ...], "dir_tags": [1, 2, ...],
     "grid": {"rows": r, "cols": c, "periodic": false} | null, "meta": {...}}

OBJ files carry one ``v`` and one ``vn`` per vertex (index aligned) and
quads as ``f i//i j//j k//k l//l``.  A ``# edgenet grid`` comment keeps the
lattice shape so that lattice graphs survive a round trip.
"""

import csv
import json
from pathlib import Path

import numpy as np

from .curvature import net_curvature
from .netcore import (
    ContactElementNet,
    NetError,
    QuadGraph,
    build_cylinder_graph,
    build_grid_graph,
    validate_edge_constraint,
)

__all__ = [
    "MISSING_NORMALS",
    "NetFormatError",
    "net_to_dict",
    "net_from_dict",
    "save_json",
    "export_obj",
    "import_net",
    "curvature_rows",
    "write_curvature_csv",
    "run_report",
]

MISSING_NORMALS = "contact element net requires per-vertex normals"


class NetFormatError(NetError):
    """A net file that cannot be parsed: missing normals, malformed quads or bad syntax."""


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if np.isfinite(x) else None
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


def _grid_info(graph):
    if graph.grid_shape is None:
        return None
    rows, cols = graph.grid_shape
    return {"rows": int(rows), "cols": int(cols), "periodic": bool(graph.periodic)}


def _lattice_graph(grid):
    if grid["periodic"]:
        return build_cylinder_graph(grid["cols"], grid["rows"])
    return build_grid_graph(grid["rows"], grid["cols"])


def net_to_dict(net, include_meta=True):
    """Plain-data form of a net; arrays in ``meta`` larger than 64 entries are dropped."""
    meta = {}
    if include_meta:
        for k, v in net.meta.items():
            if isinstance(v, np.ndarray) and v.size > 64:
                continue
            meta[k] = v
    g = net.graph
    return {
        "vertices": net.positions.tolist(),
        "normals": net.normals.tolist(),
        "quads": g.quads.tolist(),
        "edges": g.edges.tolist(),
        "dir_tags": g.edge_dirs.tolist(),
        "grid": _grid_info(g),
        "meta": _jsonable(meta),
    }


def net_from_dict(d):
    """Inverse of :func:`net_to_dict`; validates array shapes."""
    if "normals" not in d or d["normals"] is None or len(d["normals"]) == 0:
        raise NetFormatError(MISSING_NORMALS)
    try:
        pos = np.asarray(d["vertices"], dtype=float)
        nrm = np.asarray(d["normals"], dtype=float)
        quads = np.asarray(d["quads"], dtype=np.intp)
    except (KeyError, TypeError, ValueError) as exc:
        raise NetFormatError(f"malformed net data: {exc}") from exc
    if pos.ndim != 2 or pos.shape[1] != 3:
        raise NetFormatError("vertices must be an (V, 3) array")
    if nrm.shape != pos.shape:
        raise NetFormatError(MISSING_NORMALS)
    if quads.ndim != 2 or quads.shape[1] != 4:
        raise NetFormatError("malformed quads: expected four vertex indices per quad")
    try:
        return _build(d, pos, nrm, quads)
    except NetFormatError:
        raise
    except NetError as exc:
        raise NetFormatError(str(exc)) from exc


def _build(d, pos, nrm, quads):
    grid = d.get("grid")
    if grid:
        graph = _lattice_graph(grid)
        if graph.n_vertices != len(pos) or not np.array_equal(graph.quads, quads):
            raise NetFormatError("grid shape does not match the quads")
    elif d.get("edges") is not None:
        graph = QuadGraph(len(pos), quads, np.asarray(d["edges"]), d.get("dir_tags"))
    else:
        graph = QuadGraph(len(pos), quads)
    return ContactElementNet(graph, pos, nrm, dict(d.get("meta") or {}))


def save_json(net, path):
    """Write ``net`` as canonical JSON."""
    Path(path).write_text(json.dumps(net_to_dict(net), indent=1) + "\n")


def export_obj(net, path):
    """Write ``net`` as OBJ with index-aligned normals and 17 significant digits."""
    lines = ["# edgenet contact element net"]
    grid = _grid_info(net.graph)
    if grid:
        lines.append(f"# edgenet grid {grid['rows']} {grid['cols']} {int(grid['periodic'])}")
    lines += ["v {:.17g} {:.17g} {:.17g}".format(*p) for p in net.positions]
    lines += ["vn {:.17g} {:.17g} {:.17g}".format(*n) for n in net.normals]
    for q in net.graph.quads + 1:
        lines.append("f " + " ".join(f"{i}//{i}" for i in q))
    Path(path).write_text("\n".join(lines) + "\n")


def _read_obj(text):
    verts, norms, faces, grid = [], [], [], None
    for ln, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts:
            continue
        tag = parts[0]
        if tag == "#":
            if parts[1:3] == ["edgenet", "grid"] and len(parts) == 6:
                grid = {"rows": int(parts[3]), "cols": int(parts[4]), "periodic": bool(int(parts[5]))}
            continue
        if tag == "v":
            verts.append([float(x) for x in parts[1:4]])
        elif tag == "vn":
            norms.append([float(x) for x in parts[1:4]])
        elif tag == "f":
            if len(parts) != 5:
                raise NetFormatError(f"malformed quads: line {ln} is not a quad face")
            face = []
            for tok in parts[1:]:
                fields = tok.split("/")
                if len(fields) != 3 or not fields[2]:
                    raise NetFormatError(MISSING_NORMALS)
                face.append((int(fields[0]) - 1, int(fields[2]) - 1))
            faces.append(face)
    if not norms:
        raise NetFormatError(MISSING_NORMALS)
    V = len(verts)
    normals = np.full((V, 3), np.nan)
    for face in faces:
        for vi, ni in face:
            if not (0 <= vi < V and 0 <= ni < len(norms)):
                raise NetFormatError("malformed quads: index out of range")
            if np.all(np.isfinite(normals[vi])) and not np.array_equal(normals[vi], norms[ni]):
                raise NetFormatError(f"vertex {vi} has conflicting normals")
            normals[vi] = norms[ni]
    if len(norms) == V:
        missing = ~np.all(np.isfinite(normals), axis=1)
        normals[missing] = np.asarray(norms)[missing]
    if not np.all(np.isfinite(normals)):
        raise NetFormatError(MISSING_NORMALS)
    quads = [[vi for vi, _ in face] for face in faces]
    return {"vertices": verts, "normals": normals.tolist(), "quads": quads, "grid": grid}


def import_net(path, tol=None):
    """Load a JSON or OBJ net and attach ``meta["validation"]``.

    Unparseable files raise :class:`NetFormatError`.  Nets whose edge-constraint residuals exceed ``tol`` still load; the
    validation summary then has ``passed`` False.
    """
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".obj":
        try:
            data = _read_obj(text)
        except (ValueError, IndexError) as exc:
            if isinstance(exc, NetError):
                raise
            raise NetFormatError(f"malformed OBJ: {exc}") from exc
    else:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise NetFormatError(f"malformed JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise NetFormatError("malformed JSON: expected an object")
    net = net_from_dict(data)
    net.meta["validation"] = validate_edge_constraint(net, tol).summary()
    return net


CSV_FIELDS = ["quad", "H", "K", "k1", "k2", "flag", "umbilic", "A_ff", "ii_asymmetry"]


def curvature_rows(net, cd=None):
    """Per-quad curvature records."""
    cd = net_curvature(net) if cd is None else cd
    rows = []
    for q in range(len(cd.H)):
        rows.append(
            {
                "quad": q,
                "H": float(cd.H[q]),
                "K": float(cd.K[q]),
                "k1": float(cd.k1[q]),
                "k2": float(cd.k2[q]),
                "flag": int(cd.flag[q]),
                "umbilic": bool(cd.umbilic[q]),
                "A_ff": float(cd.A_ff[q]),
                "ii_asymmetry": float(cd.ii_asymmetry[q]),
            }
        )
    return rows


def write_curvature_csv(net, path, cd=None):
    """Per-quad curvature CSV with ``repr``-exact floats."""
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        w.writeheader()
        for row in curvature_rows(net, cd):
            w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})


def _stats(x):
    x = np.asarray(x, dtype=float)
    x = x[np.isfinite(x)]
    if x.size == 0:
        return {"min": None, "max": None, "mean": None, "stddev": None, "count": 0}
    return {
        "min": float(x.min()),
        "max": float(x.max()),
        "mean": float(x.mean()),
        "stddev": float(x.std()),
        "count": int(x.size),
    }


def run_report(net, options=None):
    """Summary of curvature, constraint residuals and optional family audits.

    ``options`` keys: ``csv`` (path for the per-quad table), ``tol``,
    ``cube`` (cmc folding audit over all quads), ``weingarten`` (list of
    offset distances).
    """
    from .integrable_frames import cube_cg_verify, weingarten_offset_check

    options = dict(options or {})
    cd = net_curvature(net)
    ec = validate_edge_constraint(net, options.get("tol"))
    summary = {
        "n_vertices": int(net.graph.n_vertices),
        "n_quads": int(net.graph.n_quads),
        "H": _stats(cd.H),
        "K": _stats(cd.K),
        "edge_constraint": ec.summary(),
        "degenerate_quads": int(np.count_nonzero(cd.degenerate)),
        "max_ii_asymmetry": float(np.nanmax(cd.ii_asymmetry)) if len(cd.H) else 0.0,
    }
    if options.get("cube"):
        skew, spread = 0.0, 0.0
        for fq, nq in zip(net.quad_positions(), net.quad_normals()):
            rep = cube_cg_verify(fq, nq)
            skew = max(skew, float(max(rep["skew"].values())))
            sig = np.array([s for pair in rep["sigma"].values() for s in pair])
            spread = max(spread, float(np.ptp(np.abs(sig))))
        tol = ec.tol
        summary["cube"] = {"max_skew": skew, "sigma_spread": spread, "passed": bool(skew <= tol and spread <= tol)}
    if options.get("weingarten"):
        rows = weingarten_offset_check(net, options["weingarten"])
        summary["weingarten"] = [{k: r[k] for k in ("t", "err_H", "err_K")} for r in rows]
    if options.get("csv"):
        write_curvature_csv(net, options["csv"], cd)
        summary["csv"] = str(options["csv"])
    return summary
