"""Normal transport quaternions and discrete spin transformations.

Along an edge ``e = f_b - f_a`` of an edge-constraint net the transport
quaternion ``phi = tau + e`` with real ``tau`` satisfies
``n_b = -phi^{-1} n_a phi``.  A spin field ``lam`` (one invertible
quaternion per vertex) acts by::

    n~ = lam^{-1} n lam,    phi~ = conj(lam_a) phi lam_b

and the transformed net exists when the imaginary parts of ``phi~`` close
up around every quad.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .netcore import ContactElementNet, NetError, default_tol
from .quatmath import (
    quat_conj,
    quat_imag,
    quat_inv,
    quat_mul,
    quat_norm,
    vec_to_quat,
)

__all__ = [
    "SpinResult",
    "normal_transport",
    "net_transports",
    "transport_residual",
    "quad_closure",
    "spin_transform",
    "minimal_alpha_spin_field",
    "conformal_equivalence_check",
]


def normal_transport(e, n, n1, tol=1e-10):
    """Real part ``tau`` and quaternion ``phi = tau + e`` of an edge.

    ``tau = ((n1 - n) x e) . (n + n1) / |n + n1|^2`` solves
    ``-phi^{-1} n phi = n1``.  Works on batches with trailing axis 3.
    Raises ``ValueError`` when the identity fails by more than ``tol``
    (the edge violates the constraint) or the normals are antipodal.
    """
    e, n, n1 = (np.asarray(x, dtype=float) for x in (e, n, n1))
    s = n + n1
    ss = np.einsum("...i,...i->...", s, s)
    if np.any(ss <= 1e-24):
        raise ValueError("antipodal normals along an edge")
    tau = np.einsum("...i,...i->...", np.cross(n1 - n, e), s) / ss
    phi = vec_to_quat(e, w=tau)
    res = transport_residual(phi, n, n1)
    if np.any(res > tol):
        raise ValueError(f"edge violates constraint (transport residual {float(np.max(res)):.3e})")
    return tau, phi


def transport_residual(phi, n, n1):
    """``|n1 + phi^{-1} n phi|`` per edge."""
    conj = quat_imag(quat_mul(quat_mul(quat_inv(phi), vec_to_quat(n)), phi))
    return np.linalg.norm(np.asarray(n1) + conj, axis=-1)


def net_transports(net, tol=None):
    """Transport quaternions of all graph edges, shape ``(E, 4)``."""
    tol = default_tol() if tol is None else tol
    E = net.graph.edges
    f, n = net.positions, net.normals
    _, phi = normal_transport(f[E[:, 1]] - f[E[:, 0]], n[E[:, 0]], n[E[:, 1]], tol=max(tol, 1e-12))
    return phi


def _quad_edges(graph):
    Q = len(graph.quads)
    idx = np.empty((Q, 4), dtype=np.intp)
    sgn = np.empty((Q, 4))
    for q, quad in enumerate(graph.quads):
        for i in range(4):
            idx[q, i], sgn[q, i] = graph.find_edge(quad[i], quad[(i + 1) % 4])
    return idx, sgn


def quad_closure(graph, phi):
    """``|Im(oriented sum of phi around each quad)|``, shape ``(Q,)``."""
    idx, sgn = _quad_edges(graph)
    s = np.einsum("qi,qij->qj", sgn, quat_imag(phi)[idx])
    return np.linalg.norm(s, axis=1)


@dataclass
class SpinResult:
    """Transformed transports and normals; ``net`` is ``None`` when closure fails."""

    phi: np.ndarray
    normals: np.ndarray
    closure: np.ndarray
    net: ContactElementNet = None

    @property
    def closed(self):
        return self.net is not None


def spin_transform(net, lam, phi=None, tol=None, root=0):
    """Apply the spin field ``lam`` ``(V, 4)`` to an edge-constraint net.

    The new net is integrated from ``Im phi~`` along a spanning tree with
    ``f~[root] = f[root]``; it is only built when every quad closes to
    ``tol`` times the mean transformed edge length.
    """
    tol = default_tol() if tol is None else tol
    lam = np.asarray(lam, dtype=float)
    if lam.shape == (4,):
        lam = np.broadcast_to(lam, (net.graph.n_vertices, 4))
    if lam.shape != (net.graph.n_vertices, 4):
        raise ValueError("spin field needs one quaternion per vertex")
    if np.any(quat_norm(lam) <= 1e-300):
        raise ValueError("spin field contains a non-invertible quaternion")
    phi = net_transports(net, tol) if phi is None else np.asarray(phi, float)
    E = net.graph.edges
    phit = quat_mul(quat_mul(quat_conj(lam[E[:, 0]]), phi), lam[E[:, 1]])
    nt = quat_imag(quat_mul(quat_mul(quat_inv(lam), vec_to_quat(net.normals)), lam))
    closure = quad_closure(net.graph, phit)
    scale = float(np.mean(np.linalg.norm(quat_imag(phit), axis=1)))
    if closure.size and closure.max() > tol * scale:
        return SpinResult(phit, nt, closure)
    order, parent, pedge, sign = net.graph.spanning_tree(root)
    et = quat_imag(phit)
    f = np.zeros_like(net.positions)
    f[root] = net.positions[root]
    for v in order[1:]:
        f[v] = f[parent[v]] + sign[v] * et[pedge[v]]
    out = ContactElementNet(net.graph, f, nt, dict(net.meta, spin=True))
    return SpinResult(phit, nt, closure, out)


def minimal_alpha_spin_field(net, alpha):
    """``lam = cos(alpha/2) - sin(alpha/2) n`` at every vertex."""
    return vec_to_quat(-np.sin(alpha / 2.0) * net.normals, w=np.cos(alpha / 2.0))


def _root_basis(n, nt):
    """Orthonormal basis of ``{q : q nt = n q}`` (two-dimensional for unit n, nt)."""
    rows = []
    for i in range(4):
        q = np.zeros(4)
        q[i] = 1.0
        rows.append(quat_mul(q, vec_to_quat(nt)) - quat_mul(vec_to_quat(n), q))
    A = np.array(rows).T
    _, s, vt = np.linalg.svd(A)
    return vt[-2:]


def conformal_equivalence_check(net_a, net_b, tol=None, root_hint=None):
    """Find a spin field carrying ``net_a`` to ``net_b``.

    The root value lies in the two-dimensional solution set of
    ``n lam = lam n~`` and is normalized to unit length; the field is
    propagated along a spanning tree with ``lam_b = phi^{-1} conj(lam_a)^{-1} phi~``
    and the remaining edges are audited.  Propagation makes the normal
    equations hold automatically, so only non-tree edges can fail.

    When every root angle works (real quad holonomies, as for minimal
    nets) the field is not unique; ``report["unique"]`` is then False and
    ``root_hint`` (a quaternion) selects the root closest to it.

    Returns ``(ok, lam, report)``.
    """
    tol = default_tol() if tol is None else tol
    g = net_a.graph
    if net_b.graph.n_vertices != g.n_vertices or not np.array_equal(net_b.graph.quads, g.quads):
        raise NetError("nets must share the quad graph")
    phi = net_transports(net_a, tol)
    phit = net_transports(net_b, tol)
    order, parent, pedge, sign = g.spanning_tree(0)
    E = g.edges
    basis = _root_basis(net_a.normals[0], net_b.normals[0])

    def field(psi):
        lam = np.zeros((g.n_vertices, 4))
        lam[0] = np.cos(psi) * basis[0] + np.sin(psi) * basis[1]
        for v in order[1:]:
            p, ei = parent[v], pedge[v]
            if sign[v] > 0:
                # edge p -> v: phi~ = conj(lam_p) phi lam_v
                lam[v] = quat_mul(quat_inv(phi[ei]), quat_mul(quat_inv(quat_conj(lam[p])), phit[ei]))
            else:
                # edge v -> p: phi~ = conj(lam_v) phi lam_p
                c = quat_mul(phit[ei], quat_mul(quat_inv(lam[p]), quat_inv(phi[ei])))
                lam[v] = quat_conj(c)
        return lam

    def residual(lam):
        pred = quat_mul(quat_mul(quat_conj(lam[E[:, 0]]), phi), lam[E[:, 1]])
        r_phi = quat_norm(pred - phit) / np.maximum(quat_norm(phit), 1e-300)
        nt = quat_imag(quat_mul(quat_mul(quat_inv(lam), vec_to_quat(net_a.normals)), lam))
        r_n = np.linalg.norm(nt - net_b.normals, axis=1)
        return np.concatenate([r_phi, r_n])

    def worst(psi):
        return float(np.max(np.abs(residual(field(psi)))))

    grid = np.linspace(0.0, np.pi, 8, endpoint=False)
    unique = not all(worst(p) <= tol for p in grid)
    best = None
    if root_hint is not None:
        h = np.asarray(root_hint, dtype=float)
        psi_h = float(np.arctan2(basis[1] @ h, basis[0] @ h))
        if worst(psi_h) <= tol:
            best = (psi_h, worst(psi_h))
    if best is None:
        for psi0 in grid:
            sol = least_squares(lambda x: residual(field(x[0])), [psi0], xtol=1e-15, ftol=1e-15, gtol=1e-15)
            w = worst(sol.x[0])
            if best is None or w < best[1]:
                best = (sol.x[0], w)
    lam = field(best[0])
    r = residual(lam)
    ne = len(E)
    report = {
        "max_residual": best[1],
        "worst_edge": int(np.argmax(r[:ne])),
        "worst_edge_residual": float(r[:ne].max()),
        "normal_residual": float(r[ne:].max()),
        "unique": unique,
    }
    return best[1] <= tol, lam, report
