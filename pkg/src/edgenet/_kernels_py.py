"""Reference implementations of the hot loops (numpy / pure Python).

These mirror ``_ext.pyx`` one to one and are used when the compiled
extension is unavailable or ``EDGENET_PURE_PYTHON`` is set.
"""

import numpy as np

# Degeneracy codes for a Gauss quad.
GENERIC = 0
LINE = 1
POINT = 2


def quad_core(F, Nv, mix, deg_tol):
    """Partials, projection direction and mixed areas for a batch of quads.

    Parameters
    ----------
    F, Nv : (Q, 4, 3) arrays
        Positions and normals in shift order ``f, f1, f12, f2``.
    mix : (2, 2) array
        Mixing applied to the midpoint connectors, ``[x', y'] = mix @ [x, y]``.
    deg_tol : float
        Relative threshold on ``|n_x x n_y|``.

    Returns
    -------
    P : (Q, 4, 3) array
        ``f_x, f_y, n_x, n_y``.
    N : (Q, 3) array
        Projection direction (a default admissible one for degenerate quads).
    flag : (Q,) int8
        ``GENERIC``, ``LINE`` or ``POINT``.
    span : (Q, 3) array
        Unit direction of the 1-D Gauss span (zeros unless ``LINE``).
    A : (Q, 3) array
        Mixed areas ``A(f,f), A(f,n), A(n,n)``.
    """
    F = np.asarray(F, dtype=float)
    Nv = np.asarray(Nv, dtype=float)
    mix = np.asarray(mix, dtype=float)

    def connectors(X):
        x = 0.5 * (X[:, 2] + X[:, 1]) - 0.5 * (X[:, 3] + X[:, 0])
        y = 0.5 * (X[:, 2] + X[:, 3]) - 0.5 * (X[:, 1] + X[:, 0])
        return mix[0, 0] * x + mix[0, 1] * y, mix[1, 0] * x + mix[1, 1] * y

    fx, fy = connectors(F)
    nx, ny = connectors(Nv)
    Q = F.shape[0]

    c = np.cross(nx, ny)
    cn = np.linalg.norm(c, axis=1)
    lx = np.linalg.norm(nx, axis=1)
    ly = np.linalg.norm(ny, axis=1)
    scale = lx * ly
    nbar = Nv.sum(axis=1)

    flag = np.full(Q, GENERIC, dtype=np.int8)
    N = np.zeros((Q, 3))
    span = np.zeros((Q, 3))
    tiny = 1e-300
    for q in range(Q):
        if cn[q] > deg_tol * scale[q] and cn[q] > tiny:
            N[q] = c[q] / cn[q]
            continue
        d = nx[q] if lx[q] >= ly[q] else ny[q]
        dn = max(lx[q], ly[q])
        if dn <= 1e-14 * (np.abs(Nv[q]).max() + 1.0):
            flag[q] = POINT
            m = nbar[q]
            mn = np.linalg.norm(m)
            N[q] = m / mn if mn > tiny else np.array([0.0, 0.0, 1.0])
            continue
        flag[q] = LINE
        d = d / dn
        span[q] = d
        m = nbar[q] - np.dot(nbar[q], d) * d
        mn = np.linalg.norm(m)
        if mn <= 1e-12 * (np.linalg.norm(nbar[q]) + 1.0):
            # mean normal along the span: take any unit vector orthogonal to d
            k = int(np.argmin(np.abs(d)))
            e = np.zeros(3)
            e[k] = 1.0
            m = e - np.dot(e, d) * d
            mn = np.linalg.norm(m)
        N[q] = m / mn

    def det3(a, b, n):
        return np.einsum("ij,ij->i", np.cross(a, b), n)

    A = np.empty((Q, 3))
    A[:, 0] = det3(fx, fy, N)
    A[:, 1] = 0.5 * (det3(fx, ny, N) + det3(nx, fy, N))
    A[:, 2] = det3(nx, ny, N)
    P = np.stack([fx, fy, nx, ny], axis=1)
    return P, N, flag, span, A


def edge_residuals(f, n, edges):
    """Edge residuals ``(f_j - f_i) . (n_j + n_i) / 2`` and edge lengths."""
    f = np.asarray(f, dtype=float)
    n = np.asarray(n, dtype=float)
    edges = np.asarray(edges, dtype=np.intp)
    e = f[edges[:, 1]] - f[edges[:, 0]]
    s = n[edges[:, 1]] + n[edges[:, 0]]
    return 0.5 * np.einsum("ij,ij->i", e, s), np.linalg.norm(e, axis=1)


def _qmul(p, q):
    return np.array(
        [
            p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
            p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
            p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
            p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
        ]
    )


def frame_propagate(order, parent, T, dT, phi0, dphi0):
    """Propagate ``Phi_v = T_v Phi_parent`` and its derivative along a tree.

    ``order`` lists vertices so that parents come first; ``order[0]`` is
    the root and receives ``phi0``/``dphi0``.  ``T[v]``/``dT[v]`` hold the
    transition from ``parent[v]`` to ``v`` and its derivative.
    """
    V = T.shape[0]
    phi = np.zeros((V, 4))
    dphi = np.zeros((V, 4))
    root = order[0]
    phi[root] = phi0
    dphi[root] = dphi0
    for v in order[1:]:
        p = parent[v]
        phi[v] = _qmul(T[v], phi[p])
        dphi[v] = _qmul(dT[v], phi[p]) + _qmul(T[v], dphi[p])
    return phi, dphi


def moutard_fill(n):
    """Fill a ``(C+1, R+1, 3)`` Gauss map from its two axes in place.

    Each new vertex is the reflection of ``n`` in the line of ``n1 + n2``.
    """
    C = n.shape[0] - 1
    R = n.shape[1] - 1
    for k in range(C):
        for l in range(R):
            s = n[k + 1, l] + n[k, l + 1]
            ss = np.dot(s, s)
            if ss <= 1e-28:
                raise FloatingPointError(f"antipodal neighbours at quad ({k}, {l})")
            n[k + 1, l + 1] = (2.0 * np.dot(n[k, l], s) / ss) * s - n[k, l]
    return n
