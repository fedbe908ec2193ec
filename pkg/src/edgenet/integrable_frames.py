"""Quaternionic Lax frames, the Sym-Bobenko formula and constant mean curvature nets.

Lattice conventions: ``U[k, l]`` is the transition along the edge
``(k, l) -> (k+1, l)`` (shape ``(cols, rows+1, 4)``) and ``V[k, l]`` along
``(k, l) -> (k, l+1)`` (shape ``(cols+1, rows, 4)``).  Frames satisfy
``Phi_1 = U Phi`` and ``Phi_2 = V Phi``; compatibility around a quad is
``V_1 U = U_2 V``.

Given frames ``Phi`` and their spectral derivatives, the Sym-Bobenko
formula is::

    ffrak = s Phi^{-1} dPhi/dalpha + t Phi^{-1} k Phi,   f = Im ffrak,
    n = Phi^{-1} k Phi
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from . import kernels
from .curvature import net_curvature
from .netcore import ContactElementNet, build_grid_graph
from .quatmath import (
    QUAT_K,
    quat_conj,
    quat_imag,
    quat_inv,
    quat_mul,
    quat_norm,
    vec_to_quat,
)

__all__ = [
    "SolverError",
    "CMCField",
    "FrameResult",
    "cmc_lax",
    "cmc_det",
    "cmc_compatibility_residual",
    "cmc_compatibility_solve",
    "cmc_field",
    "vacuum_field",
    "perturbed_vacuum_field",
    "cmc_transitions",
    "lattice_compatibility",
    "propagate_frames",
    "sym_bobenko_general",
    "edge_transport_residual",
    "frame_product_rule_residual",
    "cmc_net",
    "diagonal_gauge",
    "folding_parameter",
    "signed_folding_parameter",
    "skew_parallelogram_complete",
    "cube_faces",
    "cube_cg_verify",
    "cmc_edge_lengths",
    "weingarten_offset_check",
]

# spectral samples for the cmc compatibility: the residual is a Laurent
# polynomial of degree 2 in lambda, so five distinct samples determine it
_CMC_ALPHAS = np.array([0.13, 0.71, 1.37, 2.09, 2.83])


class SolverError(RuntimeError):
    """Compatibility solver failed to converge."""


def _cmc_beta_u(u, lam):
    return -lam * u - 1.0 / (lam * u)


def cmc_lax(a, b, u, v, alpha):
    """cmc Lax quaternions ``U, V`` and their ``alpha``-derivatives.

    ``U = [[a, -lam u - 1/(lam u)], [u/lam + lam/u, conj(a)]]`` and
    ``V = [[b, -i lam v + i/(lam v)], [i lam/v - i v/lam, conj(b)]]`` with
    ``lam = exp(i alpha)``.  Inputs broadcast; outputs have a trailing axis 4.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if np.any(u <= 0) or np.any(v <= 0):
        raise ValueError("cmc Lax data needs u, v > 0")
    lam = np.exp(1j * alpha)
    bu = -lam * u - 1.0 / (lam * u)
    bu_a = -1j * lam * u + 1j / (lam * u)
    bv = -1j * lam * v + 1j / (lam * v)
    bv_a = lam * v + 1.0 / (lam * v)

    def q(diag, beta):
        diag, beta = np.broadcast_arrays(diag, beta)
        return np.stack([diag.real, -beta.imag, -beta.real, -diag.imag], axis=-1)

    zero = np.zeros_like(a)
    return q(a, bu), q(b, bv), q(zero, bu_a), q(zero, bv_a)


def cmc_det(a, u, alpha, kind="U"):
    """``|a|^2 + u^2 + u^-2 +/- 2 cos(2 alpha)`` (``+`` for U, ``-`` for V)."""
    sgn = 1.0 if kind == "U" else -1.0
    return np.abs(a) ** 2 + u**2 + u**-2 + sgn * 2.0 * np.cos(2.0 * alpha)


def cmc_compatibility_residual(a, u, b, v, a2, u2, b1, v1, alphas=_CMC_ALPHAS):
    """Largest entry of ``V_1 U - U_2 V`` over the given spectral samples."""
    out = 0.0
    for al in np.atleast_1d(alphas):
        U, V, _, _ = cmc_lax(a, b, u, v, al)
        U2, _, _, _ = cmc_lax(a2, b, u2, v, al)
        _, V1, _, _ = cmc_lax(a, b1, u, v1, al)
        r = quat_mul(V1, U) - quat_mul(U2, V)
        out = max(out, float(np.abs(r).max()))
    return out


def cmc_compatibility_solve(a, u, b, v, seed=None, max_iter=50, tol=1e-12):
    """Solve ``V_1 U = U_2 V`` for ``(b1, v1, a2, u2)``.

    Unknowns are ``(Re b1, Im b1, log v1, Re a2, Im a2, log u2)``; the
    residual stacks the quaternion mismatch at five spectral samples and
    the determinant splittings ``det U_2 = det U``, ``det V_1 = det V``.
    ``seed`` is ``(b1, v1, a2, u2)`` (defaults to the inputs).

    Returns ``(b1, v1, a2, u2, residual)``.
    """
    a, b = complex(a), complex(b)
    u, v = float(u), float(v)
    if u <= 0 or v <= 0:
        raise ValueError("cmc Lax data needs u, v > 0")
    if seed is None:
        seed = (b, v, a, u)
    sb1, sv1, sa2, su2 = seed
    x0 = np.array([sb1.real, sb1.imag, np.log(sv1), sa2.real, sa2.imag, np.log(su2)])
    Us, Vs = [], []
    for al in _CMC_ALPHAS:
        U, V, _, _ = cmc_lax(a, b, u, v, al)
        Us.append(U)
        Vs.append(V)
    dU = abs(a) ** 2 + u * u + 1.0 / (u * u)
    dV = abs(b) ** 2 + v * v + 1.0 / (v * v)

    def fun(x):
        b1 = x[0] + 1j * x[1]
        v1 = np.exp(x[2])
        a2 = x[3] + 1j * x[4]
        u2 = np.exp(x[5])
        out = []
        for al, U, V in zip(_CMC_ALPHAS, Us, Vs):
            U2, V1, _, _ = cmc_lax(a2, b1, u2, v1, al)
            out.append(quat_mul(V1, U) - quat_mul(U2, V))
        out.append([abs(a2) ** 2 + u2 * u2 + 1.0 / (u2 * u2) - dU])
        out.append([abs(b1) ** 2 + v1 * v1 + 1.0 / (v1 * v1) - dV])
        return np.concatenate([np.ravel(o) for o in out])

    sol = least_squares(fun, x0, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=max_iter * 7)
    x = sol.x
    b1, v1, a2, u2 = x[0] + 1j * x[1], float(np.exp(x[2])), x[3] + 1j * x[4], float(np.exp(x[5]))
    res = cmc_compatibility_residual(a, u, b, v, a2, u2, b1, v1)
    scale = 1.0 + dU + dV
    if not np.isfinite(res) or res > tol * scale:
        raise SolverError(f"cmc compatibility did not converge (residual {res:.3e})")
    return b1, v1, a2, u2, res


@dataclass
class CMCField:
    """Solved cmc Lax data on a lattice patch.

    ``a, u`` have shape ``(cols, rows+1)`` (direction-1 edges) and
    ``b, v`` shape ``(cols+1, rows)`` (direction-2 edges).
    """

    a: np.ndarray
    u: np.ndarray
    b: np.ndarray
    v: np.ndarray
    max_residual: float = 0.0

    @property
    def shape(self):
        return self.b.shape[1], self.a.shape[0]


def cmc_field(a_row, u_row, b_col, v_col, solver=cmc_compatibility_solve):
    """Propagate Cauchy data on the two axes to a full cmc Lax field.

    ``a_row, u_row`` give the U data along ``l = 0`` (length ``cols``) and
    ``b_col, v_col`` the V data along ``k = 0`` (length ``rows``).
    """
    a_row = np.asarray(a_row, dtype=complex)
    u_row = np.asarray(u_row, dtype=float)
    b_col = np.asarray(b_col, dtype=complex)
    v_col = np.asarray(v_col, dtype=float)
    cols, rows = len(a_row), len(b_col)
    a = np.zeros((cols, rows + 1), dtype=complex)
    u = np.zeros((cols, rows + 1))
    b = np.zeros((cols + 1, rows), dtype=complex)
    v = np.zeros((cols + 1, rows))
    a[:, 0], u[:, 0] = a_row, u_row
    b[0, :], v[0, :] = b_col, v_col
    worst = 0.0
    for l in range(rows):
        for k in range(cols):
            seed = (b[k, l], v[k, l], a[k, l], u[k, l])
            b1, v1, a2, u2, res = solver(a[k, l], u[k, l], b[k, l], v[k, l], seed=seed)
            b[k + 1, l], v[k + 1, l] = b1, v1
            a[k, l + 1], u[k, l + 1] = a2, u2
            worst = max(worst, res)
    return CMCField(a, u, b, v, worst)


def vacuum_field(rows, cols, a=1.0, b=1.0):
    """Constant vacuum data ``a, b`` real, ``u = v = 1`` (commuting Lax pair)."""
    return CMCField(
        np.full((cols, rows + 1), complex(a)),
        np.ones((cols, rows + 1)),
        np.full((cols + 1, rows), complex(b)),
        np.ones((cols + 1, rows)),
    )


def perturbed_vacuum_field(rows, cols, a=1.0, b=0.8, eps=(0.05, 0.04, 0.1)):
    """Vacuum Cauchy data with smooth perturbations, propagated by the solver."""
    k = np.arange(cols)
    l = np.arange(rows)
    u_row = 1.0 + eps[0] * np.sin(k + 0.5)
    v_col = 1.0 + eps[1] * np.cos(l)
    a_row = a + 1j * eps[2] * np.cos(k)
    b_col = np.full(rows, complex(b))
    return cmc_field(a_row, u_row, b_col, v_col)


def cmc_transitions(field, alpha):
    """Lattice arrays ``U, V, U_alpha, V_alpha`` for a cmc field."""
    U, _, Ua, _ = cmc_lax(field.a, 1.0, field.u, 1.0, alpha)
    _, V, _, Va = cmc_lax(1.0, field.b, 1.0, field.v, alpha)
    return U, V, Ua, Va


def lattice_compatibility(U, V):
    """Per-quad ``|V_1 U - U_2 V| / (|V_1| |U|)``, shape ``(cols, rows)``."""
    lhs = quat_mul(V[1:, :], U[:, :-1])
    rhs = quat_mul(U[:, 1:], V[:-1, :])
    return quat_norm(lhs - rhs) / (quat_norm(V[1:, :]) * quat_norm(U[:, :-1]))


def propagate_frames(U, V, dU, dV, phi0=None, dphi0=None, backend=None):
    """Frames and spectral derivatives on a lattice from edge transitions.

    Integrates along row ``l = 0`` with ``U`` and then up each column with
    ``V``.  Returns ``(phi, dphi)`` shaped ``(cols+1, rows+1, 4)``.
    """
    kern = kernels if backend is None else kernels.get_backend(backend)
    cols, rows = U.shape[0], V.shape[1]
    R = rows + 1
    V_total = (cols + 1) * R
    T = np.zeros((V_total, 4))
    dT = np.zeros((V_total, 4))
    parent = np.zeros(V_total, dtype=np.intp)
    order = []
    for k in range(cols + 1):
        vid = k * R
        order.append(vid)
        if k > 0:
            parent[vid] = (k - 1) * R
            T[vid], dT[vid] = U[k - 1, 0], dU[k - 1, 0]
    for k in range(cols + 1):
        for l in range(1, R):
            vid = k * R + l
            order.append(vid)
            parent[vid] = vid - 1
            T[vid], dT[vid] = V[k, l - 1], dV[k, l - 1]
    phi0 = np.array([1.0, 0, 0, 0]) if phi0 is None else np.asarray(phi0, float)
    dphi0 = np.zeros(4) if dphi0 is None else np.asarray(dphi0, float)
    phi, dphi = kern.frame_propagate(np.asarray(order, dtype=np.intp), parent, T, dT, phi0, dphi0)
    return phi.reshape(cols + 1, R, 4), dphi.reshape(cols + 1, R, 4)


@dataclass
class FrameResult:
    net: ContactElementNet
    ffrak: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    compatibility: float
    extra: dict = field(default_factory=dict)


def sym_bobenko_general(U, V, dU, dV, s, t, compat_tol=1e-10, backend=None):
    """Net from a compatible quaternionic Lax field via the Sym-Bobenko formula."""
    U, V, dU, dV = (np.asarray(x, dtype=float) for x in (U, V, dU, dV))
    comp = lattice_compatibility(U, V)
    worst = float(comp.max(initial=0.0))
    if worst > compat_tol:
        raise SolverError(f"Lax field not compatible (relative residual {worst:.3e})")
    phi, dphi = propagate_frames(U, V, dU, dV, backend=backend)
    if np.any(quat_norm(phi) <= 1e-300):
        raise SolverError("non-invertible frame")
    pinv = quat_inv(phi)
    nq = quat_mul(quat_mul(pinv, QUAT_K), phi)
    ff = s * quat_mul(pinv, dphi) + t * nq
    cols, rows = U.shape[0], V.shape[1]
    net = ContactElementNet(
        build_grid_graph(rows, cols),
        quat_imag(ff).reshape(-1, 3),
        quat_imag(nq).reshape(-1, 3),
        {"kind": "sym_bobenko", "s": s, "t": t},
    )
    return FrameResult(net, ff, phi, dphi, worst)


def edge_transport_residual(ffrak, n):
    """Largest ``|n_i + (ffrak_i - ffrak) n (ffrak_i - ffrak)^{-1}|`` over lattice edges."""
    nq = vec_to_quat(n)
    out = 0.0
    for sl0, sl1 in (((slice(None, -1), slice(None)), (slice(1, None), slice(None))),
                     ((slice(None), slice(None, -1)), (slice(None), slice(1, None)))):
        d = ffrak[sl1] - ffrak[sl0]
        conj = quat_mul(quat_mul(d, nq[sl0]), quat_inv(d))
        out = max(out, float(quat_norm(nq[sl1] + conj).max(initial=0.0)))
    return out


def frame_product_rule_residual(U, V, dU, dV, phi, dphi):
    """Largest ``|(Phi_i)' - (T' Phi + T Phi')|`` over all lattice edges.

    Propagation enforces this on spanning-tree edges only; the remaining
    edges audit the derivative of the compatibility condition.
    """
    out = 0.0
    for T, dT, p0, d0, p1, d1 in (
        (U, dU, phi[:-1, :], dphi[:-1, :], phi[1:, :], dphi[1:, :]),
        (V, dV, phi[:, :-1], dphi[:, :-1], phi[:, 1:], dphi[:, 1:]),
    ):
        r = d1 - quat_mul(dT, p0) - quat_mul(T, d0)
        out = max(out, float(quat_norm(r).max(initial=0.0)))
    return out


def cmc_net(field, alpha, normalize=True, backend=None):
    """cmc net of a solved Lax field at spectral parameter ``exp(i alpha)``.

    Uses ``ffrak = -Phi^{-1} Phi_alpha + Phi^{-1} k Phi / 2``.  With
    ``normalize`` the positions are scaled by ``-H_measured`` so the net has
    mean curvature -1; the raw data stay in ``meta``.
    """
    U, V, dU, dV = cmc_transitions(field, alpha)
    res = sym_bobenko_general(U, V, dU, dV, -1.0, 0.5, backend=backend)
    net = res.net
    H = net_curvature(net).H
    H_raw = float(np.nanmedian(H))
    meta = {
        "kind": "cmc",
        "alpha": float(alpha),
        "H_raw": H_raw,
        "raw_positions": net.positions.copy(),
        "compatibility": res.compatibility,
    }
    if normalize:
        if not np.isfinite(H_raw) or H_raw == 0:
            raise SolverError("cannot normalize: measured mean curvature vanishes")
        scale = -H_raw
        net = net.copy(positions=net.positions * scale)
        meta["scale"] = scale
    net.meta.update(meta)
    res.net = net
    return res


def diagonal_gauge(U, V, dU, dV, theta, alpha):
    """Gauge a Lax field by ``G = exp(k alpha theta_v)`` at every vertex.

    ``U' = G_1 U G^{-1}``, ``V' = G_2 V G^{-1}`` stays compatible, but its
    diagonal entries now depend on the spectral parameter.  ``theta`` has
    shape ``(cols+1, rows+1)``.
    """
    ang = alpha * theta
    G = np.zeros(theta.shape + (4,))
    G[..., 0] = np.cos(ang)
    G[..., 3] = np.sin(ang)
    dG = np.zeros_like(G)
    dG[..., 0] = -theta * np.sin(ang)
    dG[..., 3] = theta * np.cos(ang)
    Gi = quat_conj(G)
    dGi = quat_conj(dG)

    def gauge(T, dT, g1, dg1, gi, dgi):
        out = quat_mul(quat_mul(g1, T), gi)
        d = (quat_mul(quat_mul(dg1, T), gi) + quat_mul(quat_mul(g1, dT), gi)
             + quat_mul(quat_mul(g1, T), dgi))
        return out, d

    U2, dU2 = gauge(U, dU, G[1:, :], dG[1:, :], Gi[:-1, :], dGi[:-1, :])
    V2, dV2 = gauge(V, dV, G[:, 1:], dG[:, 1:], Gi[:, :-1], dGi[:, :-1])
    return U2, V2, dU2, dV2


# -- skew parallelograms ------------------------------------------------------


def _edge_fold_sine(p0, p1, p2, p3):
    """Sine of the tetrahedron dihedral along edge ``p0 p1``."""
    e = p1 - p0
    a = np.cross(e, p2 - p0)
    b = np.cross(e, p3 - p0)
    den = np.linalg.norm(a) * np.linalg.norm(b)
    if den <= 1e-300:
        return 0.0
    return float(np.linalg.norm(np.cross(a, b)) / den)


def folding_parameter(quad):
    """Folding parameters ``sin(delta)/l`` along the two edge directions.

    ``quad`` is ``(g, g1, g12, g2)``.  For a skew parallelogram both values
    agree.  Returns ``(sigma_1, sigma_2, l1, l2)``.
    """
    g, g1, g12, g2 = (np.asarray(x, dtype=float) for x in quad)
    l1 = float(np.linalg.norm(g1 - g))
    l2 = float(np.linalg.norm(g2 - g))
    s1 = _edge_fold_sine(g, g1, g12, g2) / l1
    s2 = _edge_fold_sine(g, g2, g12, g1) / l2
    return s1, s2, l1, l2


def signed_folding_parameter(quad):
    """Folding parameter with the sign that :func:`skew_parallelogram_complete` expects."""
    g, g1, g12, g2 = (np.asarray(x, dtype=float) for x in quad)
    s1, s2, l1, l2 = folding_parameter(quad)
    orient = np.sign(np.linalg.det(np.array([g1 - g, g2 - g, g12 - g])))
    lsign = np.sign(l2 - l1) or 1.0
    return float(-orient * lsign * 0.5 * (s1 + s2))


def _rho(sigma, l1, l2, branch=(1, 1)):
    c1, c2 = branch
    if abs(sigma) < 1e-4 and c1 == c2:
        return c1 * (sigma * (l2**2 - l1**2) / 2.0 + sigma**3 * (l2**4 - l1**4) / 8.0)
    r1 = np.sqrt(max(0.0, 1.0 - (sigma * l1) ** 2))
    r2 = np.sqrt(max(0.0, 1.0 - (sigma * l2) ** 2))
    return (c1 * r1 - c2 * r2) / sigma


def skew_parallelogram_complete(g, g1, g2, sigma, branch=(1, 1)):
    """Fourth vertex ``g12`` of the skew parallelogram with folding parameter ``sigma``.

    ``g12 - g2 = q (g1 - g) q^{-1}`` with ``q = rho + (g2 - g1)``.
    ``sigma = 0`` yields the planar crossed (anti-)parallelogram.
    ``branch`` gives the signs of the two cosines ``sqrt(1 - sigma^2 l_i^2)``;
    the default covers folds in ``[0, pi/2]``, a ``-1`` selects the obtuse fold.
    """
    g, g1, g2 = (np.asarray(x, dtype=float) for x in (g, g1, g2))
    l1 = float(np.linalg.norm(g1 - g))
    l2 = float(np.linalg.norm(g2 - g))
    if abs(sigma) * max(l1, l2) > 1.0 + 1e-12:
        raise ValueError("fold exceeds edge bound (|sigma| * l > 1)")
    q = vec_to_quat(g2 - g1, w=_rho(sigma, l1, l2, branch))
    w = vec_to_quat(g1 - g)
    return g2 + quat_imag(quat_mul(quat_mul(q, w), quat_inv(q)))


def cube_faces(fq, nq):
    """Vertices of the cube ``C_g`` built from a quad and its unit offset.

    ``g = f, g1 = f1 + n1, g12 = f12, g2 = f2 + n2`` and
    ``g* = f + n, g1* = f1, g12* = f12 + n12, g2* = f2``.  Returns
    ``(bottom, top)`` as ``(4, 3)`` arrays in shift order.
    """
    f, f1, f12, f2 = fq
    n, n1, n12, n2 = nq
    bottom = np.array([f, f1 + n1, f12, f2 + n2])
    top = np.array([f + n, f1, f12 + n12, f2])
    return bottom, top


def _g_hat(bottom, top):
    v = top - bottom
    return np.cross(v[2] - v[0], v[1] - v[3])


def cmc_edge_lengths(detU, detV, alpha):
    """Squared non-unit edge lengths of the front and left faces of ``C_g``."""
    c2, s2 = np.cos(2 * alpha), np.sin(2 * alpha)
    l1 = 1.0 - 4.0 * (c2 / detU + s2**2 / detU**2)
    l2 = 1.0 + 4.0 * (c2 / detV - s2**2 / detV**2)
    return l1, l2


def cube_cg_verify(fq, nq):
    """Audit the cube ``C_g`` of one quad.

    Returns a dict with the six faces, their opposite-edge mismatch,
    per-face folding parameters, the ``G-hat`` directions of the three
    opposite-face pairings, and the vanishing projected-area sum.
    """
    g, gs = cube_faces(np.asarray(fq, float), np.asarray(nq, float))
    faces = {
        "bottom": g,
        "top": gs,
        "front": np.array([g[0], g[1], gs[1], gs[0]]),
        "back": np.array([g[3], g[2], gs[2], gs[3]]),
        "left": np.array([g[0], g[3], gs[3], gs[0]]),
        "right": np.array([g[1], g[2], gs[2], gs[1]]),
    }
    skew = {}
    sigma = {}
    lengths = {}
    for name, F in faces.items():
        e = [np.linalg.norm(F[(i + 1) % 4] - F[i]) for i in range(4)]
        skew[name] = max(abs(e[0] - e[2]), abs(e[1] - e[3]))
        s1, s2, l1, l2 = folding_parameter(F)
        sigma[name] = (s1, s2)
        lengths[name] = (l1, l2)
    pairs = {
        "bottom_top": (faces["bottom"], faces["top"]),
        "front_back": (faces["front"], faces["back"]),
        "left_right": (faces["left"], faces["right"]),
    }
    ghat = {}
    for name, (lo, hi) in pairs.items():
        G = _g_hat(lo, hi)
        nG = np.linalg.norm(G)
        ghat[name] = G / nG if nG > 1e-300 else np.full(3, np.nan)
    G = _g_hat(g, gs)
    if np.linalg.norm(G) <= 1e-300:
        G = np.array([0.0, 0.0, 1.0])
    gsum = float(np.dot(np.cross(gs[2] - gs[0], gs[3] - gs[1]), G) + np.dot(np.cross(g[2] - g[0], g[3] - g[1]), G))
    gsum /= np.linalg.norm(G) * max(np.linalg.norm(g[2] - g[0]) * np.linalg.norm(g[3] - g[1]), 1e-300)
    ref = ghat["bottom_top"]
    ghat_mismatch = max(min(np.linalg.norm(x - ref), np.linalg.norm(x + ref)) for x in ghat.values())
    return {
        "faces": faces,
        "skew": skew,
        "sigma": sigma,
        "lengths": lengths,
        "ghat": ghat,
        "ghat_mismatch": float(ghat_mismatch),
        "gsum": gsum,
    }


def weingarten_offset_check(net, ts, H=None):
    """Offset curvatures measured directly and from the closed forms.

    For each ``t`` returns measured and predicted ``(H_t, K_t)`` and, when a
    constant ``H`` is supplied, the residual of ``a K_t + b H_t - 1`` with
    ``a = -t (1/H + t)`` and ``b = 1/H + 2 t``.
    """
    from .netcore import offset_net

    base = net_curvature(net)
    out = []
    for t in ts:
        off = net_curvature(offset_net(net, t))
        den = 1.0 + 2.0 * base.H * t + base.K * t * t
        Kp = base.K / den
        Hp = (base.H + base.K * t) / den
        row = {
            "t": float(t),
            "H": off.H,
            "K": off.K,
            "H_pred": Hp,
            "K_pred": Kp,
            "err_H": float(np.nanmax(np.abs(off.H - Hp))),
            "err_K": float(np.nanmax(np.abs(off.K - Kp))),
        }
        if H is not None:
            a = -t * (1.0 / H + t)
            b = 1.0 / H + 2.0 * t
            row["linear_weingarten"] = float(np.nanmax(np.abs(a * off.K + b * off.H - 1.0)))
        out.append(row)
    return out
