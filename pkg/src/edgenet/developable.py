"""Developable nets: discrete parallel frames, strip extrusion and the Schwarz lantern.

A discrete parallel frame along a polyline ``a_0 ... a_k`` is obtained by
reflecting ``(u_i, n_i)`` in the perpendicular bisector plane of each edge,
so ``u_{i+1} - u_i`` and ``n_{i+1} - n_i`` are parallel to ``a_{i+1} - a_i``.
Extruding along ``u`` gives a circular net with Gauss map constant along
rulings, hence zero Gauss curvature on every quad.
"""

from dataclasses import dataclass

import numpy as np

from .curvature import developable_principal, mixed_area, net_curvature
from .netcore import ContactElementNet, NetError, build_cylinder_graph, build_grid_graph

__all__ = [
    "FramedPolyline",
    "parallel_frame",
    "helix_polyline",
    "extrude_developable",
    "schwarz_lantern",
    "admissible_sweep",
]


@dataclass
class FramedPolyline:
    """Polyline vertices with an orthonormal pair ``(u_i, n_i)`` at each vertex."""

    points: np.ndarray
    u: np.ndarray
    n: np.ndarray

    def parallelism_residual(self):
        """Largest ``|d x e| / |e|`` for ``d`` the frame increments along edge ``e``."""
        e = np.diff(self.points, axis=0)
        le = np.linalg.norm(e, axis=1, keepdims=True)
        out = 0.0
        for F in (self.u, self.n):
            d = np.diff(F, axis=0)
            out = max(out, float((np.linalg.norm(np.cross(d, e), axis=1) / le[:, 0]).max(initial=0.0)))
        return out


def parallel_frame(points, u0, n0, tol=1e-10):
    """Discrete parallel frame along ``points`` starting from ``(u0, n0)``."""
    P = np.asarray(points, dtype=float)
    u0 = np.asarray(u0, dtype=float)
    n0 = np.asarray(n0, dtype=float)
    if len(P) < 2:
        raise NetError("polyline needs at least two points")
    if abs(np.linalg.norm(u0) - 1) > tol or abs(np.linalg.norm(n0) - 1) > tol or abs(np.dot(u0, n0)) > tol:
        raise ValueError("initial frame must be orthonormal")
    e = np.diff(P, axis=0)
    le = np.linalg.norm(e, axis=1)
    scale = max(float(le.max()), 1e-300)
    bad = np.flatnonzero(le <= 1e-14 * scale)
    if bad.size:
        raise NetError(f"vanishing polyline edge {int(bad[0])}")
    eh = e / le[:, None]
    u = np.empty_like(P)
    n = np.empty_like(P)
    u[0], n[0] = u0, n0
    for i, d in enumerate(eh):
        # Householder reflection in the bisector plane; renormalize against drift
        uu = u[i] - 2.0 * np.dot(u[i], d) * d
        nn = n[i] - 2.0 * np.dot(n[i], d) * d
        u[i + 1] = uu / np.linalg.norm(uu)
        n[i + 1] = nn / np.linalg.norm(nn)
    return FramedPolyline(P, u, n)


def helix_polyline(n_points=12, radius=1.0, pitch=0.4, turns=1.0):
    """Points on a circular helix around the z-axis."""
    t = np.linspace(0.0, 2.0 * np.pi * turns, n_points)
    return np.stack([radius * np.cos(t), radius * np.sin(t), pitch * t / (2.0 * np.pi)], axis=1)


def extrude_developable(fp, y):
    """Net ``f(i, j) = a_i + y_j u_i`` with Gauss map ``n_i`` (constant along rulings)."""
    y = np.asarray(y, dtype=float)
    if y.ndim != 1 or len(y) < 2 or not (np.all(np.diff(y) > 0) or np.all(np.diff(y) < 0)):
        raise ValueError("ruling samples must be strictly monotone")
    f = fp.points[:, None, :] + y[None, :, None] * fp.u[:, None, :]
    n = np.broadcast_to(fp.n[:, None, :], f.shape)
    graph = build_grid_graph(len(y) - 1, len(fp.points) - 1)
    return ContactElementNet(graph, f.reshape(-1, 3), n.reshape(-1, 3), {"kind": "developable"})


def schwarz_lantern(n_around, n_height, radius=1.0, height=None):
    """Schwarz lantern on the cylinder of given radius with radial unit normals.

    Ring ``j`` sits at height ``j * height`` with vertex angles
    ``2 pi i / n_around``, shifted by ``pi / n_around`` on odd rings.
    """
    if n_around < 3 or n_height < 1:
        raise NetError("lantern needs n_around >= 3 and n_height >= 1")
    if radius <= 0:
        raise ValueError("radius must be positive")
    h = 2.0 * np.pi * radius / n_around if height is None else float(height)
    i = np.arange(n_around)[:, None]
    j = np.arange(n_height + 1)[None, :]
    ang = 2.0 * np.pi * i / n_around + (j % 2) * np.pi / n_around
    nrm = np.stack([np.cos(ang), np.sin(ang), np.zeros_like(ang)], axis=-1)
    pos = radius * nrm + np.stack([np.zeros_like(ang), np.zeros_like(ang), h * j + 0 * ang], axis=-1)
    graph = build_cylinder_graph(n_around, n_height)
    return ContactElementNet(graph, pos.reshape(-1, 3), nrm.reshape(-1, 3), {"kind": "lantern", "radius": radius})


def admissible_sweep(net, n_samples=16, area_floor=1e-3):
    """Nonzero principal curvature of each degenerate quad over admissible ``N``.

    Returns ``(kappa, spread, lines)``: the curvature at the best-conditioned
    sample, its largest deviation over the ``n_samples`` admissible
    directions and the curvature line.  Directions whose projected area is
    below ``area_floor`` times the largest one are skipped, since there both
    mixed areas vanish and ``H`` is ``0/0``.  Quads whose Gauss quad is a
    point give ``kappa = 0``; generic quads give NaN.
    """
    cd = net_curvature(net)
    Q = len(cd.flag)
    kappa = np.full(Q, np.nan)
    spread = np.full(Q, np.nan)
    lines = np.full((Q, 3), np.nan)
    thetas = np.linspace(0.0, np.pi, n_samples, endpoint=False) + 0.5 * np.pi / n_samples
    for q in np.flatnonzero(cd.degenerate):
        p = cd.quad_partials(q)
        fr = cd.frame(q)
        if developable_principal(p, fr) is None:
            kappa[q] = spread[q] = 0.0
            continue
        f = (p.fx, p.fy)
        areas = np.array([abs(mixed_area(f, f, fr.admissible(th))) for th in thetas])
        use = areas >= area_floor * areas.max()
        vals = np.array([developable_principal(p, fr, th)[0] for th in thetas[use]])
        ref = vals[np.argmax(areas[use])]
        kappa[q] = ref
        spread[q] = float(np.max(np.abs(vals - ref)))
        lines[q] = fr.span
    return kappa, spread, lines
