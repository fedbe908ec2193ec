"""Quad graphs, contact element nets and the edge-constraint.

A :class:`ContactElementNet` pairs a point ``f`` with a unit normal ``n``
at every vertex of a :class:`QuadGraph`.  It is an edge-constraint net
when every edge is perpendicular to the mean of its two end normals::

    (f_j - f_i) . (n_j + n_i) / 2 = 0

Quads are stored in shift order ``(f, f1, f12, f2)``.  For lattice
patches built by :func:`build_grid_graph` vertex ``(k, l)`` has index
``k * (rows + 1) + l`` so that ``positions.reshape(cols + 1, rows + 1, 3)``
is indexed as ``[k, l]``; ``k`` runs in lattice direction 1.
"""

import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels

__all__ = [
    "DEFAULT_TOL",
    "default_tol",
    "NetError",
    "QuadGraph",
    "ContactElementNet",
    "EdgeConstraintReport",
    "build_grid_graph",
    "build_cylinder_graph",
    "grid_net",
    "validate_edge_constraint",
    "offset_net",
    "sphere_net",
    "sample_analytic",
    "analytic_frame",
    "complete_quad_vertex",
    "random_edge_constraint_quads",
    "random_edge_constraint_net",
]

DEFAULT_TOL = 1e-9


def default_tol():
    """Default relative tolerance, overridable through ``EDGENET_TOL``."""
    raw = os.environ.get("EDGENET_TOL")
    if raw:
        return float(raw)
    return DEFAULT_TOL


class NetError(ValueError):
    """Invalid net data (bad combinatorics, vanishing edges, off-sphere points)."""


@dataclass(eq=False)
class QuadGraph:
    """Combinatorics of a quad net.

    Parameters
    ----------
    n_vertices : int
    quads : (Q, 4) int array
        Vertex indices in shift order ``f, f1, f12, f2``.
    edges : (E, 2) int array, optional
        Derived from the quads when omitted.
    edge_dirs : (E,) int array, optional
        Lattice direction of each edge (1 or 2, 0 when unknown).
    grid_shape : (rows, cols), optional
        Set for rectangular lattice patches.
    """

    n_vertices: int
    quads: np.ndarray
    edges: np.ndarray = None
    edge_dirs: np.ndarray = None
    grid_shape: tuple = None
    periodic: bool = False

    def __post_init__(self):
        self.quads = np.asarray(self.quads, dtype=np.intp).reshape(-1, 4)
        if self.quads.size and (self.quads.min() < 0 or self.quads.max() >= self.n_vertices):
            raise NetError("quad references a vertex out of range")
        if self.edges is None:
            self.edges, self.edge_dirs = _edges_from_quads(self.quads)
        else:
            self.edges = np.asarray(self.edges, dtype=np.intp).reshape(-1, 2)
            if self.edge_dirs is None:
                self.edge_dirs = np.zeros(len(self.edges), dtype=np.int8)
        self.edge_dirs = np.asarray(self.edge_dirs, dtype=np.int8)
        self._check_regular()

    def _check_regular(self):
        seen = {}
        for qi, quad in enumerate(self.quads):
            if len(set(quad.tolist())) != 4:
                raise NetError(f"quad {qi} repeats a vertex")
            for a, b in zip(quad, np.roll(quad, -1)):
                key = (int(a), int(b))
                if key in seen:
                    raise NetError(
                        f"edge {key} traversed twice in the same direction "
                        f"(quads {seen[key]} and {qi}): inconsistent orientation"
                    )
                seen[key] = qi
        counts = {}
        for (a, b) in seen:
            k = (min(a, b), max(a, b))
            counts[k] = counts.get(k, 0) + 1
        if any(c > 2 for c in counts.values()):
            raise NetError("an edge borders more than two quads")

    @property
    def n_quads(self):
        return len(self.quads)

    @property
    def n_edges(self):
        return len(self.edges)

    @cached_property
    def vertex_quads(self):
        out = [[] for _ in range(self.n_vertices)]
        for qi, quad in enumerate(self.quads):
            for v in quad:
                out[v].append(qi)
        return out

    @cached_property
    def vertex_edges(self):
        out = [[] for _ in range(self.n_vertices)]
        for ei, (a, b) in enumerate(self.edges):
            out[a].append(ei)
            out[b].append(ei)
        return out

    @cached_property
    def edge_index(self):
        return {(int(a), int(b)): i for i, (a, b) in enumerate(self.edges)}

    def find_edge(self, a, b):
        """Index and orientation sign of the edge joining ``a`` and ``b``."""
        key = (int(a), int(b))
        if key in self.edge_index:
            return self.edge_index[key], 1
        return self.edge_index[(key[1], key[0])], -1

    def grid_index(self, k, l):
        """Vertex index of lattice point ``(k, l)`` in a grid patch."""
        if self.grid_shape is None:
            raise NetError("graph is not a lattice patch")
        rows, cols = self.grid_shape
        if self.periodic:
            k = k % cols
        return k * (rows + 1) + l

    def spanning_tree(self, root=0):
        """Breadth-first tree as ``(order, parent, parent_edge, sign)``.

        ``sign[v]`` is +1 when the tree edge is stored as ``parent -> v``.
        """
        order = [root]
        parent = np.full(self.n_vertices, -1, dtype=np.intp)
        pedge = np.full(self.n_vertices, -1, dtype=np.intp)
        sign = np.zeros(self.n_vertices, dtype=np.intp)
        parent[root] = root
        head = 0
        while head < len(order):
            v = order[head]
            head += 1
            for ei in self.vertex_edges[v]:
                a, b = self.edges[ei]
                w = b if a == v else a
                if parent[w] == -1:
                    parent[w] = v
                    pedge[w] = ei
                    sign[w] = 1 if a == v else -1
                    order.append(w)
        if len(order) != self.n_vertices:
            raise NetError("quad graph is not connected")
        return np.asarray(order, dtype=np.intp), parent, pedge, sign


def _edges_from_quads(quads):
    index = {}
    edges = []
    dirs = []
    for quad in quads:
        a, b, c, d = (int(x) for x in quad)
        for (u, v, tag) in ((a, b, 1), (d, c, 1), (a, d, 2), (b, c, 2)):
            key = (min(u, v), max(u, v))
            if key in index:
                ei = index[key]
                if dirs[ei] != tag:
                    dirs[ei] = 0
                continue
            index[key] = len(edges)
            edges.append((u, v))
            dirs.append(tag)
    return np.asarray(edges, dtype=np.intp).reshape(-1, 2), np.asarray(dirs, dtype=np.int8)


def build_grid_graph(rows, cols):
    """Lattice patch with ``rows x cols`` quads.

    Edges point from ``(k, l)`` to ``(k+1, l)`` (direction 1) or to
    ``(k, l+1)`` (direction 2).
    """
    rows = int(rows)
    cols = int(cols)
    if rows < 1 or cols < 1:
        raise NetError("grid needs at least one row and one column")
    vid = np.arange((cols + 1) * (rows + 1)).reshape(cols + 1, rows + 1)
    quads = np.stack(
        [vid[:-1, :-1], vid[1:, :-1], vid[1:, 1:], vid[:-1, 1:]], axis=-1
    ).reshape(-1, 4)
    e1 = np.stack([vid[:-1, :], vid[1:, :]], axis=-1).reshape(-1, 2)
    e2 = np.stack([vid[:, :-1], vid[:, 1:]], axis=-1).reshape(-1, 2)
    edges = np.concatenate([e1, e2])
    dirs = np.concatenate([np.ones(len(e1)), 2 * np.ones(len(e2))]).astype(np.int8)
    return QuadGraph(vid.size, quads, edges, dirs, grid_shape=(rows, cols))


def build_cylinder_graph(n_around, n_height):
    """Lattice patch closed up in direction 1 (a combinatorial cylinder)."""
    if n_around < 3 or n_height < 1:
        raise NetError("cylinder needs n_around >= 3 and n_height >= 1")
    vid = np.arange(n_around * (n_height + 1)).reshape(n_around, n_height + 1)
    nxt = np.roll(vid, -1, axis=0)
    quads = np.stack([vid[:, :-1], nxt[:, :-1], nxt[:, 1:], vid[:, 1:]], axis=-1).reshape(-1, 4)
    e1 = np.stack([vid, nxt], axis=-1).reshape(-1, 2)
    e2 = np.stack([vid[:, :-1], vid[:, 1:]], axis=-1).reshape(-1, 2)
    edges = np.concatenate([e1, e2])
    dirs = np.concatenate([np.ones(len(e1)), 2 * np.ones(len(e2))]).astype(np.int8)
    return QuadGraph(vid.size, quads, edges, dirs, grid_shape=(n_height, n_around), periodic=True)


@dataclass(eq=False)
class ContactElementNet:
    """Points and unit normals on a quad graph."""

    graph: QuadGraph
    positions: np.ndarray
    normals: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.positions = np.array(self.positions, dtype=float).reshape(-1, 3)
        self.normals = np.array(self.normals, dtype=float).reshape(-1, 3)
        if len(self.positions) != self.graph.n_vertices or len(self.normals) != self.graph.n_vertices:
            raise NetError("positions/normals do not match the vertex count")
        if not (np.all(np.isfinite(self.positions)) and np.all(np.isfinite(self.normals))):
            raise NetError("non-finite vertex data")

    def quad_positions(self):
        return self.positions[self.graph.quads]

    def quad_normals(self):
        return self.normals[self.graph.quads]

    def grid(self, values=None):
        """Reshape per-vertex data to ``(cols+1, rows+1, ...)`` on lattice patches."""
        rows, cols = self.graph.grid_shape
        values = self.positions if values is None else np.asarray(values)
        ncol = cols if self.graph.periodic else cols + 1
        return values.reshape((ncol, rows + 1) + values.shape[1:])

    def copy(self, positions=None, normals=None):
        return ContactElementNet(
            self.graph,
            self.positions if positions is None else positions,
            self.normals if normals is None else normals,
            dict(self.meta),
        )

    def mean_edge_length(self):
        e = self.positions[self.graph.edges[:, 1]] - self.positions[self.graph.edges[:, 0]]
        return float(np.linalg.norm(e, axis=1).mean())


def grid_net(positions, normals, meta=None):
    """Net on a lattice patch from ``(cols+1, rows+1, 3)`` arrays."""
    positions = np.asarray(positions, dtype=float)
    cols, rows = positions.shape[0] - 1, positions.shape[1] - 1
    graph = build_grid_graph(rows, cols)
    return ContactElementNet(graph, positions.reshape(-1, 3), np.asarray(normals).reshape(-1, 3), meta or {})


@dataclass
class EdgeConstraintReport:
    residuals: np.ndarray
    edge_lengths: np.ndarray
    normal_deviation: np.ndarray
    tol: float
    max_residual: float
    max_relative: float
    vanishing_edges: np.ndarray
    passed: bool

    def summary(self):
        return {
            "max_residual": self.max_residual,
            "max_relative_residual": self.max_relative,
            "max_normal_deviation": float(self.normal_deviation.max(initial=0.0)),
            "vanishing_edges": int(len(self.vanishing_edges)),
            "tol": self.tol,
            "passed": self.passed,
        }


def validate_edge_constraint(net, tol=None):
    """Per-edge residuals ``(f_j - f_i) . (n_j + n_i) / 2``.

    The net passes when every residual is at most ``tol * |edge|``,
    every normal has unit length within ``tol`` and no edge vanishes.
    """
    tol = default_tol() if tol is None else float(tol)
    res, lengths = kernels.edge_residuals(net.positions, net.normals, net.graph.edges)
    dev = np.abs(np.linalg.norm(net.normals, axis=1) - 1.0)
    scale = max(net.mean_edge_length(), np.finfo(float).tiny)
    vanishing = np.flatnonzero(lengths <= 1e-14 * scale)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(lengths > 0, np.abs(res) / lengths, 0.0)
    passed = bool(np.all(np.abs(res) <= tol * lengths) and np.all(dev <= tol) and vanishing.size == 0)
    return EdgeConstraintReport(
        residuals=res,
        edge_lengths=lengths,
        normal_deviation=dev,
        tol=tol,
        max_residual=float(np.abs(res).max(initial=0.0)),
        max_relative=float(rel.max(initial=0.0)),
        vanishing_edges=vanishing,
        passed=passed,
    )


def offset_net(net, t):
    """Parallel net ``(f + t n, n)``."""
    pos = net.positions + float(t) * net.normals
    e = pos[net.graph.edges[:, 1]] - pos[net.graph.edges[:, 0]]
    lengths = np.linalg.norm(e, axis=1)
    scale = max(net.mean_edge_length(), np.finfo(float).tiny)
    bad = np.flatnonzero(lengths <= 1e-14 * scale)
    if len(bad):
        a, b = net.graph.edges[bad[0]]
        raise NetError(f"offset t={t} collapses edge {bad[0]} ({a}, {b})")
    return net.copy(positions=pos)


def sphere_net(graph, positions, r=None, tol=None):
    """Net on a sphere of radius ``r`` about the origin with ``n = f / r``."""
    tol = default_tol() if tol is None else float(tol)
    positions = np.asarray(positions, dtype=float).reshape(-1, 3)
    radii = np.linalg.norm(positions, axis=1)
    if r is None:
        r = float(radii.mean())
    if r <= 0:
        raise NetError("sphere radius must be positive")
    if np.any(np.abs(radii - r) > tol * r):
        bad = int(np.argmax(np.abs(radii - r)))
        raise NetError(f"vertex {bad} is off the sphere of radius {r}")
    return ContactElementNet(graph, positions, positions / r, {"kind": "sphere", "r": r})


def analytic_frame(surface, u, v, **params):
    """Position, first and second partials and unit normal of a surface.

    Returns ``(f, f_u, f_v, f_uu, f_uv, f_vv, n)`` for arrays ``u, v``.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    cu, su, cv, sv = np.cos(u), np.sin(u), np.cos(v), np.sin(v)
    z = np.zeros_like(u + v)
    if surface == "ellipsoid":
        a, b, c = params.get("a", 1.0), params.get("b", 1.0), params.get("c", 1.0)
        if min(a, b, c) <= 0:
            raise NetError("ellipsoid semi-axes must be positive")
        f = np.stack([a * cv * cu, b * cv * su, c * sv + z], -1)
        fu = np.stack([-a * cv * su, b * cv * cu, z], -1)
        fv = np.stack([-a * sv * cu, -b * sv * su, c * cv + z], -1)
        fuu = np.stack([-a * cv * cu, -b * cv * su, z], -1)
        fuv = np.stack([a * sv * su, -b * sv * cu, z], -1)
        fvv = np.stack([-a * cv * cu, -b * cv * su, -c * sv + z], -1)
        n = np.stack([cv * cu / a, cv * su / b, sv / c + z], -1)
    elif surface == "cylinder":
        r = params.get("r", 1.0)
        if r <= 0:
            raise NetError("cylinder radius must be positive")
        f = np.stack([r * cu + z, r * su + z, v + z], -1)
        fu = np.stack([-r * su + z, r * cu + z, z], -1)
        fv = np.stack([z, z, 1.0 + z], -1)
        fuu = np.stack([-r * cu + z, -r * su + z, z], -1)
        fuv = np.stack([z, z, z], -1)
        fvv = np.stack([z, z, z], -1)
        n = np.stack([cu + z, su + z, z], -1)
    elif surface == "torus":
        R, r = params.get("R", 2.0), params.get("r", 1.0)
        if r <= 0 or R <= r:
            raise NetError("torus needs R > r > 0")
        w = R + r * cv
        f = np.stack([w * cu, w * su, r * sv + z], -1)
        fu = np.stack([-w * su, w * cu, z], -1)
        fv = np.stack([-r * sv * cu, -r * sv * su, r * cv + z], -1)
        fuu = np.stack([-w * cu, -w * su, z], -1)
        fuv = np.stack([r * sv * su, -r * sv * cu, z], -1)
        fvv = np.stack([-r * cv * cu, -r * cv * su, -r * sv + z], -1)
        n = np.stack([cv * cu, cv * su, sv + z], -1)
    else:
        raise NetError(f"unknown surface {surface!r}")
    n = n / np.linalg.norm(n, axis=-1, keepdims=True)
    return f, fu, fv, fuu, fuv, fvv, n


def sample_analytic(surface, rows, cols, step, origin=(0.0, 0.0), shear=0.0, **params):
    """Sample a parametrized surface on a lattice with exact normals.

    Lattice point ``(k, l)`` sits at parameters
    ``(origin[0] + k*step_u + shear*l*step_v, origin[1] + l*step_v)``.
    A nonzero ``shear`` moves the lattice off the parameter lines (on the
    torus these are curvature lines and give an exactly circular net).
    ``surface`` is one of ``"ellipsoid"`` (``a, b, c``; longitude,
    latitude), ``"cylinder"`` (``r``; angle, height) or ``"torus"``
    (``R, r``).
    """
    su, sv = (step, step) if np.isscalar(step) else step
    if su <= 0 or sv <= 0:
        raise NetError("step must be positive")
    graph = build_grid_graph(rows, cols)
    k = np.arange(cols + 1)[:, None]
    l = np.arange(rows + 1)[None, :]
    u = origin[0] + k * su + shear * l * sv
    v = origin[1] + l * sv + 0.0 * k
    f, *_, n = analytic_frame(surface, u, v, **params)
    meta = {"kind": surface, "params": dict(params), "step": (su, sv), "origin": tuple(origin), "shear": shear}
    return ContactElementNet(graph, f.reshape(-1, 3), n.reshape(-1, 3), meta)


# -- random edge-constraint data ---------------------------------------------------


def _unit_rows(v):
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def _project_out(d, s):
    return d - (np.einsum("...i,...i->...", d, s) / np.einsum("...i,...i->...", s, s))[..., None] * s


def complete_quad_vertex(target, p1, a1, p2, a2):
    """Point closest to ``target`` with ``(x - p1) . a1 = 0`` and ``(x - p2) . a2 = 0``.

    Used to close a quad: ``x = f12`` must satisfy the edge-constraint on
    both edges ending there.  Works on batches.
    """
    A = np.stack([a1, a2], axis=-2)
    b = np.stack([np.einsum("...i,...i->...", p1, a1), np.einsum("...i,...i->...", p2, a2)], axis=-1)
    G = np.einsum("...ij,...kj->...ik", A, A)
    x = np.asarray(target, dtype=float)
    # one refinement pass: ill-conditioned G otherwise leaves ~1e-12 residuals
    for _ in range(2):
        r = np.einsum("...ij,...j->...i", A, x) - b
        x = x - np.einsum("...ij,...i->...j", A, np.linalg.solve(G, r[..., None])[..., 0])
    return x


def _area_ratio(fq, nq):
    from .curvature import quad_curvature

    cd = quad_curvature(fq, nq)
    scale = np.linalg.norm(cd.partials[:, 0], axis=1) * np.linalg.norm(cd.partials[:, 1], axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        r = np.abs(cd.A_ff) / scale
    return np.where(cd.flag == kernels.GENERIC, r, 0.0)


def random_edge_constraint_quads(count, seed, jitter=0.2, area_floor=0.05):
    """``count`` random edge-constraint quads ``(fq, nq)`` of shape ``(count, 4, 3)``.

    Normals vary linearly with random curvature plus noise; ``f1, f2`` are
    jittered unit steps projected onto their constraint planes and ``f12``
    is the closest admissible point to ``f1 + f2 - f`` plus noise.  Each
    quad is then moved by a random rigid motion.  Quads whose projected
    area is below ``area_floor`` times ``|f_x| |f_y|`` are redrawn; they
    are too ill-conditioned for curvature identities at 1e-10.
    """
    rng = np.random.default_rng(np.uint64(seed))
    out_f, out_n, have = [], [], 0
    xy = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    while have < count:
        m = int(1.1 * (count - have)) + 8
        kap = rng.uniform(-2.0, 2.0, (m, 3)) * 0.4
        x, y = xy[:, 0], xy[:, 1]
        n = np.stack(
            [-(kap[:, None, 0] * x + kap[:, None, 2] * y), -(kap[:, None, 2] * x + kap[:, None, 1] * y), np.ones((m, 4))],
            axis=-1,
        )
        n = _unit_rows(n + 0.4 * jitter * rng.normal(size=n.shape))
        f = np.zeros((m, 4, 3))
        e1 = np.array([1.0, 0.0, 0.0]) + jitter * rng.normal(size=(m, 3))
        e2 = np.array([0.0, 1.0, 0.0]) + jitter * rng.normal(size=(m, 3))
        f[:, 1] = _project_out(e1, n[:, 0] + n[:, 1])
        f[:, 3] = _project_out(e2, n[:, 0] + n[:, 3])
        t = f[:, 1] + f[:, 3] + jitter * rng.normal(size=(m, 3))
        f[:, 2] = complete_quad_vertex(t, f[:, 1], n[:, 1] + n[:, 2], f[:, 3], n[:, 3] + n[:, 2])
        Q, _ = np.linalg.qr(rng.normal(size=(m, 3, 3)))
        f = np.einsum("qij,qvj->qvi", Q, f) + rng.normal(size=(m, 1, 3))
        n = np.einsum("qij,qvj->qvi", Q, n)
        keep = _area_ratio(f, n) >= area_floor
        out_f.append(f[keep])
        out_n.append(n[keep])
        have += int(keep.sum())
    return np.concatenate(out_f)[:count], np.concatenate(out_n)[:count]


def random_edge_constraint_net(rows, cols, seed, step=0.15, jitter=0.1, normal_noise=0.02, area_floor=0.2, max_tries=50):
    """Random edge-constraint net near a random cubic height field.

    The height field has principal curvatures of modulus in ``[0.3, 1]``
    at the origin.  Parameters are jittered, normals perturbed by
    ``normal_noise * step``, and positions rebuilt edge by edge so that
    every edge satisfies the constraint exactly: axis edges are projected
    onto their constraint planes and interior vertices are closed with
    :func:`complete_quad_vertex`.  Draws with a quad below ``area_floor``
    (see :func:`random_edge_constraint_quads`) are repeated.
    """
    rng = np.random.default_rng(np.uint64(seed))
    graph = build_grid_graph(rows, cols)
    for _ in range(max_tries):
        a, c = rng.choice([-1.0, 1.0], 2) * rng.uniform(0.3, 1.0, 2)
        b = rng.uniform(-0.1, 0.1)
        d = rng.uniform(-0.5, 0.5, 4)
        k = np.arange(cols + 1)[:, None]
        l = np.arange(rows + 1)[None, :]
        x = (k - cols / 2) * step + jitter * step * rng.uniform(-0.5, 0.5, (cols + 1, rows + 1))
        y = (l - rows / 2) * step + jitter * step * rng.uniform(-0.5, 0.5, (cols + 1, rows + 1))
        z = 0.5 * (a * x * x + 2 * b * x * y + c * y * y) + (d[0] * x**3 + d[1] * x * x * y + d[2] * x * y * y + d[3] * y**3) / 6
        zx = a * x + b * y + (3 * d[0] * x * x + 2 * d[1] * x * y + d[2] * y * y) / 6
        zy = b * x + c * y + (d[1] * x * x + 2 * d[2] * x * y + 3 * d[3] * y * y) / 6
        p = np.stack([x, y, z], axis=-1)
        n = _unit_rows(np.stack([-zx, -zy, np.ones_like(z)], axis=-1) + normal_noise * step * rng.normal(size=p.shape))
        f = np.zeros_like(p)
        f[0, 0] = p[0, 0]
        for i in range(cols):
            f[i + 1, 0] = f[i, 0] + _project_out(p[i + 1, 0] - p[i, 0], n[i, 0] + n[i + 1, 0])
        for j in range(rows):
            f[0, j + 1] = f[0, j] + _project_out(p[0, j + 1] - p[0, j], n[0, j] + n[0, j + 1])
        for i in range(cols):
            for j in range(rows):
                f[i + 1, j + 1] = complete_quad_vertex(
                    f[i, j] + p[i + 1, j + 1] - p[i, j],
                    f[i + 1, j], n[i + 1, j] + n[i + 1, j + 1],
                    f[i, j + 1], n[i, j + 1] + n[i + 1, j + 1],
                )
        net = ContactElementNet(graph, f.reshape(-1, 3), n.reshape(-1, 3), {"kind": "random", "seed": int(seed)})
        if _area_ratio(net.quad_positions(), net.quad_normals()).min() >= area_floor:
            return net
    raise NetError(f"no well-conditioned random net after {max_tries} draws")
