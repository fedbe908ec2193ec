"""Discrete holomorphic grids and discrete minimal nets.

A complex lattice function ``g`` with cross-ratio -1 on every quad is
mapped to the sphere by stereographic projection.  The minimal net and
its associated family integrate the edge vectors::

    f1 - f = Re(lambda * omega_1),   f2 - f = -Re(lambda * omega_2)
    omega_i = (1 - g_i g, i (1 + g_i g), g_i + g) / (2 (g_i - g))

with ``lambda = exp(i alpha)``.  ``alpha = 0`` is the circular (isothermic)
minimal net, ``alpha = pi/2`` its conjugate A-net.
"""

from dataclasses import dataclass

import numpy as np

from .curvature import circle_fit_residual, net_curvature
from .netcore import ContactElementNet, NetError, build_grid_graph, default_tol
from .quatmath import stereographic_project

__all__ = [
    "HolomorphicGrid",
    "cross_ratio",
    "holomorphic_grid",
    "weierstrass_vectors",
    "integrate_edges",
    "weierstrass_minimal",
    "associated_family",
    "geometric_edges",
    "quad_family_geometry",
    "formula_gauss_curvature",
    "vertex_star_planarity",
    "MAX_ABS_G",
]

MAX_ABS_G = 1e8


def cross_ratio(g, g1, g12, g2):
    """``(g1 - g)(g12 - g2) / ((g12 - g1)(g2 - g))`` around a quad."""
    g, g1, g12, g2 = (np.asarray(x, dtype=complex) for x in (g, g1, g12, g2))
    den = (g12 - g1) * (g2 - g)
    if np.any(den == 0) or np.any(g1 == g) or np.any(g12 == g2):
        raise ZeroDivisionError("coincident neighbouring values in cross-ratio")
    return (g1 - g) * (g12 - g2) / den


@dataclass
class HolomorphicGrid:
    """Complex values ``g[k, l]`` on a ``(cols+1, rows+1)`` lattice patch."""

    g: np.ndarray

    @property
    def shape(self):
        cols, rows = self.g.shape[0] - 1, self.g.shape[1] - 1
        return rows, cols

    def cross_ratios(self):
        g = self.g
        return cross_ratio(g[:-1, :-1], g[1:, :-1], g[1:, 1:], g[:-1, 1:])


def holomorphic_grid(kind="identity", rows=10, cols=10, origin=0.0, params=None):
    """Lattice patch of a discrete holomorphic function.

    ``kind`` is ``"identity"`` (``g = origin + k + i l``), ``"moebius"``
    (``params = (a, b, c, d)`` applied to the identity patch) or
    ``"scaled"`` (``params = (s,)``: the identity patch times ``s``).
    Möbius maps preserve cross-ratios, so every kind has cross-ratio -1.
    """
    k = np.arange(cols + 1)[:, None]
    l = np.arange(rows + 1)[None, :]
    z = origin + k + 1j * l
    if kind == "identity":
        g = z
    elif kind == "moebius":
        a, b, c, d = (complex(x) for x in params)
        if abs(a * d - b * c) < 1e-14:
            raise ValueError("degenerate Möbius map (ad - bc = 0)")
        den = c * z + d
        if np.any(np.abs(den) < 1e-14):
            raise ValueError("Möbius map sends a grid point to infinity")
        g = (a * z + b) / den
    elif kind == "scaled":
        g = complex(params[0]) * z
    else:
        raise ValueError(f"unknown holomorphic grid kind {kind!r}")
    g = np.asarray(g, dtype=complex)
    if np.any(np.abs(g) > MAX_ABS_G):
        raise ValueError("grid values too large for stereographic projection")
    return HolomorphicGrid(g)


def weierstrass_vectors(g0, g1):
    """Complex 3-vectors ``omega`` for edges ``g0 -> g1`` (shape ``(..., 3)``)."""
    g0 = np.asarray(g0, dtype=complex)
    g1 = np.asarray(g1, dtype=complex)
    pre = 1.0 / (2.0 * (g1 - g0))
    return pre[..., None] * np.stack([1 - g1 * g0, 1j * (1 + g1 * g0), g1 + g0], axis=-1)


def integrate_edges(e1, e2, tol=None):
    """Integrate lattice edge vectors and audit quad closure.

    ``e1[k, l]`` is ``f[k+1, l] - f[k, l]`` and ``e2[k, l]`` is
    ``f[k, l+1] - f[k, l]``.  Returns positions ``(cols+1, rows+1, 3)`` and
    the largest closure residual.
    """
    tol = default_tol() if tol is None else tol
    cols = e1.shape[0]
    rows = e2.shape[1]
    f = np.zeros((cols + 1, rows + 1, 3))
    f[1:, 0] = np.cumsum(e1[:, 0], axis=0)
    f[:, 1:] = f[:, :1] + np.cumsum(e2, axis=1)
    closure = e1[:, :-1] + e2[1:, :] - e2[:-1, :] - e1[:, 1:]
    res = float(np.linalg.norm(closure, axis=-1).max(initial=0.0))
    scale = float(np.mean(np.linalg.norm(np.concatenate([e1.reshape(-1, 3), e2.reshape(-1, 3)]), axis=1)))
    if res > tol * max(scale, 1e-300):
        raise NetError(f"non-integrable edge data (closure residual {res:.3e})")
    return f, res


def weierstrass_minimal(grid, tol=None):
    """Discrete minimal net of a holomorphic grid (``alpha = 0``)."""
    return associated_family(grid, 0.0, tol)


def associated_family(grid, alpha, tol=None):
    """Member ``alpha`` of the associated family of the minimal net of ``grid``."""
    g = grid.g
    lam = np.exp(1j * alpha)
    w1 = weierstrass_vectors(g[:-1, :], g[1:, :])
    w2 = weierstrass_vectors(g[:, :-1], g[:, 1:])
    f, res = integrate_edges(np.real(lam * w1), -np.real(lam * w2), tol)
    n = stereographic_project(g)
    rows, cols = grid.shape
    meta = {"kind": "minimal", "alpha": float(alpha), "closure_residual": res}
    return ContactElementNet(build_grid_graph(rows, cols), f.reshape(-1, 3), n.reshape(-1, 3), meta)


def geometric_edges(grid, alpha):
    """Edge vectors from the geometric form of the associated family.

    ``(-1)^(i-1) |f_i^0 - f^0|^2 (cos a (n_i - n) - sin a (n_i x n))`` with
    ``|f_i^0 - f^0| = 1 / |n_i - n|``.
    """
    n = stereographic_project(grid.g)
    out = []
    for sgn, (a, b) in ((1.0, (n[:-1, :], n[1:, :])), (-1.0, (n[:, :-1], n[:, 1:]))):
        d = b - a
        l2 = 1.0 / np.einsum("...i,...i->...", d, d)
        out.append(sgn * l2[..., None] * (np.cos(alpha) * d - np.sin(alpha) * np.cross(b, a)))
    return out[0], out[1]


def quad_family_geometry(nq, alpha, N=None, tol=1e-9):
    """Scale ``varsigma`` and rotation ``theta`` of a projected family quad.

    The quad of member ``alpha`` projected orthogonally to the Gauss-quad
    plane normal ``N`` equals the base quad rotated by ``theta`` about
    ``N`` and scaled by ``varsigma``.  ``d`` is the signed height of the
    Gauss-quad circle along ``N``.  Returns ``(varsigma, theta, d, N)``.
    """
    nq = np.asarray(nq, dtype=float)
    if circle_fit_residual(nq) > tol:
        raise ValueError("Gauss quad is not circular")
    if N is None:
        nx = 0.5 * (nq[2] + nq[1]) - 0.5 * (nq[3] + nq[0])
        ny = 0.5 * (nq[2] + nq[3]) - 0.5 * (nq[1] + nq[0])
        c = np.cross(nx, ny)
        N = c / np.linalg.norm(c)
    d = float(np.mean(nq @ N))
    vs = float(np.sqrt(np.cos(alpha) ** 2 + np.sin(alpha) ** 2 * d * d))
    theta = float(np.arctan2(np.sin(alpha) * d, np.cos(alpha)))
    return vs, theta, d, N


def formula_gauss_curvature(grid):
    """``-4 (|g12 - g| |g2 - g1|)^2 / prod(1 + |g|^2)`` per quad, ``(cols, rows)``."""
    g = grid.g
    g0, g1, g12, g2 = g[:-1, :-1], g[1:, :-1], g[1:, 1:], g[:-1, 1:]
    num = (np.abs(g12 - g0) * np.abs(g2 - g1)) ** 2
    den = np.prod([1 + np.abs(x) ** 2 for x in (g0, g1, g12, g2)], axis=0)
    return -4.0 * num / den


def vertex_star_planarity(net):
    """Largest ``|e . n| / |e|`` over edges ``e`` incident to each vertex."""
    f, n = net.positions, net.normals
    E = net.graph.edges
    e = f[E[:, 1]] - f[E[:, 0]]
    le = np.linalg.norm(e, axis=1)
    r0 = np.abs(np.einsum("ij,ij->i", e, n[E[:, 0]])) / le
    r1 = np.abs(np.einsum("ij,ij->i", e, n[E[:, 1]])) / le
    return float(max(r0.max(initial=0.0), r1.max(initial=0.0)))


def family_report(grid, alphas):
    """Per-``alpha`` curvature summary used by the CLI."""
    base = weierstrass_minimal(grid)
    K0 = net_curvature(base).K
    out = []
    for a in alphas:
        net = associated_family(grid, a)
        cd = net_curvature(net)
        vs = np.array([quad_family_geometry(nq, a)[0] for nq in net.quad_normals()])
        out.append(
            {
                "alpha": float(a),
                "max_abs_H": float(np.nanmax(np.abs(cd.H))),
                "max_K_scaling_residual": float(np.nanmax(np.abs(cd.K * vs**2 - K0))),
            }
        )
    return out
