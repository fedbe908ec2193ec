"""K-nets, their associated family, the K-net Lax pair and cK-nets.

A K-net is built from its Gauss map: two chains of unit normals along the
lattice axes are completed quad by quad to Chebyshev (skew parallelogram)
quads on the sphere, and the immersion integrates::

    f1 - f = n1 x n,    f2 - f = n x n2

cK-nets come from the Lax pair ``Phi_1 = L Phi``, ``Phi_2 = M Phi`` with
real spectral parameter ``lam = exp(t)`` through ``f = 2 Im(Phi^{-1} dPhi/dt)``
and ``n = Phi^{-1} k Phi``.

Complex angles ``delta`` enter only through ``tau = tan(delta/2)``.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from . import kernels
from .integrable_frames import (
    SolverError,
    frame_product_rule_residual,
    lattice_compatibility,
    sym_bobenko_general,
)
from .minimal import integrate_edges
from .netcore import ContactElementNet, build_grid_graph
from .quatmath import quat_mul

__all__ = [
    "KNetCauchy",
    "HirotaField",
    "CKField",
    "moutard_complete",
    "chain_data",
    "rebuild_chain",
    "pseudosphere_cauchy",
    "circles_cauchy",
    "knet_gauss_map",
    "knet_from_cauchy",
    "knet_gauss_curvature",
    "knet_associated",
    "quad_interior_angles",
    "napier_residual",
    "k_lax_u",
    "k_lax_v",
    "k_lax_step",
    "hirota_residual",
    "hirota_field",
    "k_lax_transitions",
    "delta_to_tau",
    "tau_from_sin",
    "ck_modulus",
    "ck_lax",
    "ck_det",
    "ck_compatibility_residual",
    "ck_compatibility_solve",
    "ck_field",
    "ck_transitions",
    "ck_default_cauchy",
    "ck_net",
]

# real spectral samples; L and M are Laurent polynomials of degree 1 in lam,
# so the compatibility residual has degree 2 and five samples pin it
_CK_LAMBDAS = np.array([0.45, 0.8, 1.3, 1.9, 2.7])


def _unit(v):
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


# -- Gauss map ----------------------------------------------------------------


def moutard_complete(n, n1, n2, tol=1e-14):
    """Fourth normal ``n12`` of the spherical Chebyshev quad ``n, n1, n2``.

    ``n12`` is ``n`` reflected in the line of ``s = n1 + n2``:
    ``2 (n . s) s / |s|^2 - n``.  On unit inputs this equals
    ``(n . s / (1 + n1 . n2)) s - n``.
    """
    n, n1, n2 = (np.asarray(x, dtype=float) for x in (n, n1, n2))
    s = n1 + n2
    ss = np.einsum("...i,...i->...", s, s)
    if np.any(ss <= tol):
        raise FloatingPointError("antipodal neighbouring normals (n1 = -n2)")
    t = np.einsum("...i,...i->...", n, s)
    return (2.0 * t / ss)[..., None] * s - n


def chain_data(P):
    """Steps, signed turning angles and initial tangent of a spherical chain.

    ``steps[i]`` is the arc length from ``P[i]`` to ``P[i+1]``; ``turns[i]``
    is the angle at ``P[i+1]`` between the transported incoming tangent and
    the outgoing one, positive counterclockwise about ``P[i+1]``.
    """
    P = np.asarray(P, dtype=float)
    dots = np.clip(np.einsum("ij,ij->i", P[:-1], P[1:]), -1.0, 1.0)
    steps = np.arccos(dots)
    tans = _unit(P[1:] - dots[:, None] * P[:-1])
    turns = np.empty(max(len(P) - 2, 0))
    for i in range(1, len(P) - 1):
        d = steps[i - 1]
        tt = -np.sin(d) * P[i - 1] + np.cos(d) * tans[i - 1]
        a = tans[i]
        turns[i - 1] = np.arctan2(np.dot(np.cross(tt, a), P[i]), np.dot(tt, a))
    return steps, turns, tans[0]


def rebuild_chain(p0, t0, steps, turns):
    """Inverse of :func:`chain_data`: walk geodesic steps with given turns."""
    p = np.asarray(p0, dtype=float)
    t = np.asarray(t0, dtype=float)
    out = [p]
    for i, d in enumerate(steps):
        q = np.cos(d) * p + np.sin(d) * t
        tt = -np.sin(d) * p + np.cos(d) * t
        if i < len(turns):
            k = turns[i]
            tt = np.cos(k) * tt + np.sin(k) * np.cross(q, tt)
        out.append(q)
        p, t = q, tt
    return np.array(out)


@dataclass
class KNetCauchy:
    """Gauss-map Cauchy data: ``chain1 = n[:, 0]`` and ``chain2 = n[0, :]``."""

    chain1: np.ndarray
    chain2: np.ndarray

    def __post_init__(self):
        self.chain1 = np.asarray(self.chain1, dtype=float)
        self.chain2 = np.asarray(self.chain2, dtype=float)
        if len(self.chain1) < 2 or len(self.chain2) < 2:
            raise ValueError("Cauchy chains need at least two normals")
        if np.abs(self.chain1[0] - self.chain2[0]).max() > 1e-12:
            raise ValueError("Cauchy chains must start at the same normal")
        for c in (self.chain1, self.chain2):
            if np.abs(np.linalg.norm(c, axis=1) - 1.0).max() > 1e-10:
                raise ValueError("Cauchy chains must consist of unit normals")

    @property
    def shape(self):
        return len(self.chain2) - 1, len(self.chain1) - 1

    @property
    def deltas(self):
        """Per-edge angles ``Delta_1`` along chain 1 and ``Delta_2`` along chain 2."""
        return chain_data(self.chain1)[0], chain_data(self.chain2)[0]


def _rz(c):
    return np.array([[np.cos(c), -np.sin(c), 0.0], [np.sin(c), np.cos(c), 0.0], [0.0, 0.0, 1.0]])


def pseudosphere_cauchy(rows=20, cols=20, c=0.5, b0=0.2, b1=0.45):
    """Cauchy data of the rotationally symmetric (pseudosphere) K-net.

    The Gauss map is ``n(k, l) = R^(k-l) P(k+l)`` with ``R`` the rotation by
    ``c/2`` about the z-axis and ``P`` a chain on the xz-meridian starting at
    latitudes ``b0`` and ``b1``; ``P(m+2)`` is the Moutard completion of
    ``P(m), R P(m+1), R^-1 P(m+1)``.  Both steps are then constant.
    """
    R = _rz(c / 2.0)
    P = [np.array([np.cos(b0), 0.0, np.sin(b0)]), np.array([np.cos(b1), 0.0, np.sin(b1)])]
    M = max(rows, cols)
    while len(P) < M + 1:
        P.append(moutard_complete(P[-2], R @ P[-1], R.T @ P[-1]))
    chain1 = np.array([np.linalg.matrix_power(R, k) @ P[k] for k in range(cols + 1)])
    chain2 = np.array([np.linalg.matrix_power(R.T, l) @ P[l] for l in range(rows + 1)])
    return KNetCauchy(chain1, chain2)


def circles_cauchy(rows=20, cols=20, delta1=0.15, delta2=0.15, turn1=0.05, turn2=-0.05, opening=np.pi / 2):
    """Cauchy chains of constant step and constant turning angle (small circles)."""
    p0 = np.array([0.0, 0.0, 1.0])
    t1 = np.array([1.0, 0.0, 0.0])
    t2 = np.cos(opening) * t1 + np.sin(opening) * np.cross(p0, t1)
    c1 = rebuild_chain(p0, t1, np.full(cols, delta1), np.full(cols - 1, turn1))
    c2 = rebuild_chain(p0, t2, np.full(rows, delta2), np.full(rows - 1, turn2))
    return KNetCauchy(c1, c2)


def knet_gauss_map(cauchy, backend=None):
    """Complete the Cauchy chains to the Gauss map ``(cols+1, rows+1, 3)``."""
    kern = kernels if backend is None else kernels.get_backend(backend)
    rows, cols = cauchy.shape
    n = np.zeros((cols + 1, rows + 1, 3))
    n[:, 0] = cauchy.chain1
    n[0, :] = cauchy.chain2
    return kern.moutard_fill(n)


def knet_from_cauchy(cauchy, tol=1e-10, backend=None):
    """K-net of the given Gauss-map Cauchy data."""
    n = knet_gauss_map(cauchy, backend)
    e1 = np.cross(n[1:, :], n[:-1, :])
    e2 = np.cross(n[:, :-1], n[:, 1:])
    f, res = integrate_edges(e1, e2, tol)
    rows, cols = cauchy.shape
    meta = {"kind": "knet", "closure_residual": res}
    return ContactElementNet(build_grid_graph(rows, cols), f.reshape(-1, 3), n.reshape(-1, 3), meta)


def knet_gauss_curvature(nq):
    """``K = -2 / ((n1 + n2) . n)`` per quad; ``nq`` has shape ``(..., 4, 3)``."""
    nq = np.asarray(nq, dtype=float)
    s = nq[..., 1, :] + nq[..., 3, :]
    return -2.0 / np.einsum("...i,...i->...", s, nq[..., 0, :])


def knet_associated(cauchy, lam, tol=1e-10, backend=None):
    """Member ``lam > 0`` of the associated family of a K-net.

    The chains are rebuilt with steps ``tan(D1(lam)/2) = lam tan(D1/2)`` and
    ``tan(D2(lam)/2) = tan(D2/2) / lam``, keeping their spherical turning
    angles and the initial tangent directions.
    """
    lam = float(lam)
    if not lam > 0:
        raise ValueError("associated family parameter must be positive")
    out = []
    for chain, p in ((cauchy.chain1, lam), (cauchy.chain2, 1.0 / lam)):
        steps, turns, t0 = chain_data(chain)
        new = 2.0 * np.arctan(p * np.tan(steps / 2.0))
        if np.any(new <= 0) or np.any(new >= np.pi):
            raise ValueError("associated step angle leaves (0, pi)")
        out.append(rebuild_chain(chain[0], t0, new, turns))
    net = knet_from_cauchy(KNetCauchy(out[0], out[1]), tol, backend)
    net.meta["lambda"] = lam
    return net


def quad_interior_angles(net):
    """Interior angles at ``f, f1, f12, f2`` of every quad, shape ``(Q, 4)``."""
    fq = net.quad_positions()
    a = np.roll(fq, -1, axis=1) - fq
    b = np.roll(fq, 1, axis=1) - fq
    c = np.linalg.norm(np.cross(a, b), axis=-1)
    return np.arctan2(c, np.einsum("...i,...i->...", a, b))


def napier_residual(net):
    """``|exp(i a) - (exp(i b) k - 1)/(exp(i b) - k)|`` per quad.

    ``a`` and ``b`` are the interior angles at ``f`` and ``f1`` and
    ``k = tan(D1/2) tan(D2/2)`` with the quad's Gauss-map steps.
    """
    ang = quad_interior_angles(net)
    nq = net.quad_normals()
    d1 = np.arccos(np.clip(np.einsum("qi,qi->q", nq[:, 0], nq[:, 1]), -1, 1))
    d2 = np.arccos(np.clip(np.einsum("qi,qi->q", nq[:, 0], nq[:, 3]), -1, 1))
    k = np.tan(d1 / 2) * np.tan(d2 / 2)
    eb = np.exp(1j * ang[:, 1])
    return np.abs(np.exp(1j * ang[:, 0]) - (eb * k - 1.0) / (eb - k))


# -- K-net Lax pair and Hirota ------------------------------------------------


def _q(m00, m01):
    """Quaternion of ``[[m00, m01], [-conj(m01), conj(m00)]]``."""
    m00, m01 = np.broadcast_arrays(np.asarray(m00, complex), np.asarray(m01, complex))
    return np.stack([m00.real, -m01.imag, -m01.real, -m00.imag], axis=-1)


def k_lax_u(h, h1, sigma_u, lam):
    """``U = [[cot(su/2) H1/H, i lam], [i lam, cot(su/2) H/H1]]`` with ``H = exp(i h)``."""
    H, H1 = np.exp(1j * np.asarray(h, float)), np.exp(1j * np.asarray(h1, float))
    cu = 1.0 / np.tan(sigma_u / 2.0)
    return _q(cu * H1 / H, 1j * lam * np.ones_like(H))


def k_lax_v(h, h2, sigma_v, lam):
    """``V = [[1, (i/lam) tan(sv/2) H2 H], [(i/lam) tan(sv/2)/(H2 H), 1]]``."""
    H, H2 = np.exp(1j * np.asarray(h, float)), np.exp(1j * np.asarray(h2, float))
    tv = np.tan(sigma_v / 2.0)
    return _q(np.ones_like(H), 1j / lam * tv * H2 * H)


def k_lax_step(h, h1, h2, sigma_u, sigma_v):
    """Solve ``V_1 U = U_2 V`` for ``h12``.

    The upper-left entry of the compatibility condition is linear in
    ``H12``; the other entries hold identically.  Returns ``(h12, residual)``
    where the residual is the largest quaternion mismatch over several
    spectral samples.
    """
    H, H1, H2 = (np.exp(1j * np.asarray(x, float)) for x in (h, h1, h2))
    cu = 1.0 / np.tan(sigma_u / 2.0)
    tv = np.tan(sigma_v / 2.0)
    H12 = (cu * H1 / H + tv / (H2 * H)) / (cu / H2 + tv * H1)
    h12 = np.angle(H12)
    res = 0.0
    for lam in _CK_LAMBDAS:
        U, V = k_lax_u(h, h1, sigma_u, lam), k_lax_v(h, h2, sigma_v, lam)
        U2, V1 = k_lax_u(h2, h12, sigma_u, lam), k_lax_v(h1, h12, sigma_v, lam)
        res = max(res, float(np.abs(quat_mul(V1, U) - quat_mul(U2, V)).max()))
    return h12, res


def hirota_residual(h, h1, h12, h2, sigma_u, sigma_v):
    """``e^{i(h12+h)} - e^{i(h1+h2)} - T (1 - e^{i(h+h1+h12+h2)})``, ``T = tan(su/2) tan(sv/2)``."""
    h, h1, h12, h2 = (np.asarray(x, float) for x in (h, h1, h12, h2))
    T = np.tan(sigma_u / 2.0) * np.tan(sigma_v / 2.0)
    return np.exp(1j * (h12 + h)) - np.exp(1j * (h1 + h2)) - T * (1.0 - np.exp(1j * (h + h1 + h12 + h2)))


@dataclass
class HirotaField:
    """Real potential ``h`` on a ``(cols+1, rows+1)`` patch with constants ``sigma_u, sigma_v``."""

    h: np.ndarray
    sigma_u: float
    sigma_v: float
    max_compatibility: float = 0.0

    def residuals(self):
        h = self.h
        return hirota_residual(h[:-1, :-1], h[1:, :-1], h[1:, 1:], h[:-1, 1:], self.sigma_u, self.sigma_v)


def hirota_field(h_row, h_col, sigma_u, sigma_v):
    """Propagate ``h`` from its values on the two axes with :func:`k_lax_step`."""
    h_row = np.asarray(h_row, float)
    h_col = np.asarray(h_col, float)
    if h_row[0] != h_col[0]:
        raise ValueError("axis data must agree at the origin")
    h = np.zeros((len(h_row), len(h_col)))
    h[:, 0] = h_row
    h[0, :] = h_col
    worst = 0.0
    for k in range(len(h_row) - 1):
        for l in range(len(h_col) - 1):
            h[k + 1, l + 1], r = k_lax_step(h[k, l], h[k + 1, l], h[k, l + 1], sigma_u, sigma_v)
            worst = max(worst, r)
    return HirotaField(h, float(sigma_u), float(sigma_v), worst)


def k_lax_transitions(field, lam):
    """Lattice arrays ``U`` ``(cols, rows+1, 4)`` and ``V`` ``(cols+1, rows, 4)``."""
    h = field.h
    U = k_lax_u(h[:-1, :], h[1:, :], field.sigma_u, lam)
    V = k_lax_v(h[:, :-1], h[:, 1:], field.sigma_v, lam)
    return U, V


# -- cK-nets ------------------------------------------------------------------


def delta_to_tau(delta):
    """``tau = tan(delta/2)`` for real or complex ``delta``."""
    return complex(np.tan(complex(delta) / 2.0))


def tau_from_sin(x):
    """``tau`` of the angle with ``sin(delta) = x``.

    For ``x > 1`` the branch ``delta = pi/2 - i arccosh(x)`` is used, so
    ``|tau| = 1`` and ``arg tau`` lies in ``(-pi/2, pi/2]``.
    """
    x = float(x)
    if x <= 0:
        raise ValueError("sin(delta) must be positive")
    if x <= 1.0:
        return complex(np.tan(np.arcsin(x) / 2.0))
    return delta_to_tau(np.pi / 2 - 1j * np.arccosh(x))


def ck_modulus(s, s1, tau):
    """Modulus of ``l`` that keeps ``L`` quaternionic.

    ``sqrt((cos(r1 - p) + cos(r - p)) / (cos(r1 + p) + cos(r + p)))`` with
    ``s = e^{ir}``, ``s1 = e^{ir1}`` and ``p = arg tau``; equal to 1 for
    real ``delta``.  Requires ``tau`` real or ``|tau| = 1``.
    """
    tau = complex(tau)
    if abs(tau.imag) < 1e-15 * max(1.0, abs(tau)):
        return np.ones(np.broadcast(s, s1).shape) if np.ndim(s) or np.ndim(s1) else 1.0
    if abs(abs(tau) - 1.0) > 1e-12:
        raise ValueError("complex delta must satisfy |tan(delta/2)| = 1")
    p = np.angle(tau)
    r, r1 = np.angle(s), np.angle(s1)
    num = np.cos(r1 - p) + np.cos(r - p)
    den = np.cos(r1 + p) + np.cos(r + p)
    ratio = num / den
    if np.any(ratio <= 0):
        raise ValueError("modulus formula has no real solution for these vertex values")
    return np.sqrt(ratio)


def ck_lax(s, s1, l, tau, lam):
    """cK Lax quaternion ``L`` and ``L_t = lam dL/dlam`` for one edge.

    ``L = [[c l/s + t l s1, i(lam - s s1/lam)], [i(lam - 1/(lam s s1)), c s/l + t/(l s1)]]``
    with ``t = tau`` and ``c = 1/tau``.
    """
    s, s1, l = (np.asarray(x, complex) for x in (s, s1, l))
    tau = complex(tau)
    c = 1.0 / tau
    L = _q(c * l / s + tau * l * s1, 1j * (lam - s * s1 / lam))
    Lt = _q(np.zeros_like(s * s1), 1j * (lam + s * s1 / lam))
    return L, Lt


def _ck_matrix(s, s1, l, tau, lam):
    c = 1.0 / tau
    return np.array(
        [
            [c * l / s + tau * l * s1, 1j * (lam - s * s1 / lam)],
            [1j * (lam - 1.0 / (lam * s * s1)), c * s / l + tau / (l * s1)],
        ]
    )


def ck_compatibility_residual(s, s1, s2, s12, l, m, l2, m1, tau1, tau2, lams=_CK_LAMBDAS):
    """Largest entry of ``M_1 L - L_2 M`` (as 2x2 complex matrices) over ``lams``."""
    out = 0.0
    for lam in np.atleast_1d(lams):
        R = _ck_matrix(s1, s12, m1, tau2, lam) @ _ck_matrix(s, s1, l, tau1, lam)
        R -= _ck_matrix(s2, s12, l2, tau1, lam) @ _ck_matrix(s, s2, m, tau2, lam)
        out = max(out, float(np.abs(R).max()))
    return out


def ck_compatibility_solve(s, s1, s2, l, m, tau1, tau2, seed=None, max_iter=50, tol=1e-12):
    """Solve ``M_1 L = L_2 M`` for ``(m1, l2, s12)``.

    Unknowns are the arguments of ``m1``, ``l2`` and ``s12``; ``s12`` is
    unit and the moduli of ``m1``, ``l2`` follow :func:`ck_modulus`.  The
    solution does not depend on the spectral parameter, so the residual
    stacks all entries at several samples.  Returns ``(m1, l2, s12, residual)``.
    """
    s, s1, s2, l, m = (complex(x) for x in (s, s1, s2, l, m))
    tau1, tau2 = complex(tau1), complex(tau2)
    if seed is None:
        seed = (m, l, s1 * s2 / s)
    x0 = np.angle(np.asarray(seed, dtype=complex))
    mats = [(_ck_matrix(s, s1, l, tau1, lam), _ck_matrix(s, s2, m, tau2, lam)) for lam in _CK_LAMBDAS]

    def unpack(x):
        s12 = np.exp(1j * x[2])
        m1 = ck_modulus(s1, s12, tau2) * np.exp(1j * x[0])
        l2 = ck_modulus(s2, s12, tau1) * np.exp(1j * x[1])
        return m1, l2, s12

    def fun(x):
        m1, l2, s12 = unpack(x)
        out = []
        for lam, (L, M) in zip(_CK_LAMBDAS, mats):
            R = _ck_matrix(s1, s12, m1, tau2, lam) @ L - _ck_matrix(s2, s12, l2, tau1, lam) @ M
            out.append(R.real.ravel())
            out.append(R.imag.ravel())
        return np.concatenate(out)

    best = None
    # the solution is unique, so the first converged start is accepted;
    # restarts on a fixed offset grid escape local minima of the least squares
    offsets = [np.zeros(3)] + [np.array(o) for o in np.ndindex(4, 4, 4) if any(o)]
    for off in offsets:
        start = x0 + 0.5 * np.pi * np.asarray(off, float)
        try:
            sol = least_squares(fun, start, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15,
                                max_nfev=max_iter * 4)
            m1, l2, s12 = unpack(sol.x)
        except ValueError:
            continue
        res = ck_compatibility_residual(s, s1, s2, s12, l, m, l2, m1, tau1, tau2)
        if best is None or res < best[3]:
            best = (m1, l2, s12, res)
        if res <= tol:
            break
    if best is None:
        raise SolverError("cK compatibility has no solution: modulus formula has no real value")
    if not np.isfinite(best[3]) or best[3] > tol:
        raise SolverError(f"cK compatibility did not converge (residual {best[3]:.3e})")
    m1, l2, s12, res = best
    return complex(m1), complex(l2), complex(s12), res


@dataclass
class CKField:
    """Solved cK Lax data.

    ``s`` lives on vertices ``(cols+1, rows+1)``, ``l`` on direction-1 edges
    ``(cols, rows+1)``, ``m`` on direction-2 edges ``(cols+1, rows)``;
    ``tau1[k]`` is constant along direction 2 and ``tau2[l]`` along direction 1.
    """

    s: np.ndarray
    l: np.ndarray
    m: np.ndarray
    tau1: np.ndarray
    tau2: np.ndarray
    max_residual: float = 0.0

    @property
    def shape(self):
        return self.m.shape[1], self.l.shape[0]


def ck_field(s_row, s_col, l_arg_row, m_arg_col, tau1, tau2):
    """Propagate cK Cauchy data to a full field.

    ``s_row = s[:, 0]`` and ``s_col = s[0, :]`` are unit complex numbers;
    ``l_arg_row`` and ``m_arg_col`` are the arguments of ``l[:, 0]`` and
    ``m[0, :]`` (moduli follow :func:`ck_modulus`).
    """
    s_row = np.asarray(s_row, complex)
    s_col = np.asarray(s_col, complex)
    tau1 = np.asarray(tau1, complex)
    tau2 = np.asarray(tau2, complex)
    cols, rows = len(s_row) - 1, len(s_col) - 1
    if abs(s_row[0] - s_col[0]) > 1e-14:
        raise ValueError("axis data must agree at the origin")
    if len(tau1) != cols or len(tau2) != rows:
        raise ValueError("need one tau per lattice line")
    if np.abs(np.abs(np.concatenate([s_row, s_col])) - 1.0).max() > 1e-12:
        raise ValueError("vertex variables s must be unit complex numbers")
    s = np.zeros((cols + 1, rows + 1), complex)
    l = np.zeros((cols, rows + 1), complex)
    m = np.zeros((cols + 1, rows), complex)
    s[:, 0], s[0, :] = s_row, s_col
    for k in range(cols):
        l[k, 0] = ck_modulus(s[k, 0], s[k + 1, 0], tau1[k]) * np.exp(1j * l_arg_row[k])
    for j in range(rows):
        m[0, j] = ck_modulus(s[0, j], s[0, j + 1], tau2[j]) * np.exp(1j * m_arg_col[j])
    worst = 0.0
    for j in range(rows):
        for k in range(cols):
            m1, l2, s12, r = ck_compatibility_solve(
                s[k, j], s[k + 1, j], s[k, j + 1], l[k, j], m[k, j], tau1[k], tau2[j]
            )
            m[k + 1, j], l[k, j + 1], s[k + 1, j + 1] = m1, l2, s12
            worst = max(worst, r)
    return CKField(s, l, m, tau1, tau2, worst)


def ck_det(tau, lam):
    """``det L = cot^2(delta/2) + tan^2(delta/2) + lam^2 + lam^-2`` (independent of s, l)."""
    tau = complex(tau)
    return float((1.0 / tau**2 + tau**2).real + lam * lam + 1.0 / (lam * lam))


def ck_transitions(field, lam, normalize=True):
    """Lattice arrays ``L, M, L_t, M_t`` at real spectral parameter ``lam``.

    With ``normalize`` each transition is divided by the square root of its
    determinant so frames stay unit.  A real scalar factor only changes the
    real part of ``Phi^{-1} Phi_t``, so ``f`` and ``n`` are unaffected.
    """
    s = field.s
    cols, rows = field.l.shape[0], field.m.shape[1]
    L = np.zeros((cols, rows + 1, 4))
    Lt = np.zeros_like(L)
    M = np.zeros((cols + 1, rows, 4))
    Mt = np.zeros_like(M)
    dd = 2.0 * lam * lam - 2.0 / (lam * lam)

    def scaled(T, Tt, tau):
        if not normalize:
            return T, Tt
        d = ck_det(tau, lam)
        if d <= 0:
            raise SolverError("cK transition with non-positive determinant")
        return T / np.sqrt(d), Tt / np.sqrt(d) - T * dd / (2.0 * d**1.5)

    for k in range(cols):
        L[k], Lt[k] = scaled(*ck_lax(s[k, :], s[k + 1, :], field.l[k, :], field.tau1[k], lam), field.tau1[k])
    for j in range(rows):
        M[:, j], Mt[:, j] = scaled(*ck_lax(s[:, j], s[:, j + 1], field.m[:, j], field.tau2[j], lam), field.tau2[j])
    return L, M, Lt, Mt


def ck_default_cauchy(rows=8, cols=8, sin_delta=None):
    """Smooth cK Cauchy data; ``sin_delta`` above 1 selects complex angles.

    Returns keyword arguments for :func:`ck_field`.
    """
    k = np.arange(cols + 1)
    j = np.arange(rows + 1)
    rho_row = 0.3 * np.sin(0.7 * k)
    rho_col = 0.225 * np.sin(0.9 * j)
    if sin_delta is None:
        tau1 = np.full(cols, delta_to_tau(0.8))
        tau2 = np.full(rows, delta_to_tau(0.6))
    else:
        tau1 = np.full(cols, tau_from_sin(sin_delta[0]))
        tau2 = np.full(rows, tau_from_sin(sin_delta[1]))
    return {
        "s_row": np.exp(1j * rho_row),
        "s_col": np.exp(1j * rho_col),
        "l_arg_row": -np.pi / 2 + 0.1 * np.cos(0.5 * k[:-1]),
        "m_arg_col": -np.pi / 2 - 0.1 * np.cos(0.4 * j[:-1]),
        "tau1": tau1,
        "tau2": tau2,
    }


def ck_net(field, lam, backend=None):
    """cK-net at real spectral parameter ``lam = exp(t)``.

    ``f = 2 Im(Phi^{-1} Phi_t)`` and ``n = Phi^{-1} k Phi``.  The product
    rule audit of the propagated ``(Phi, Phi_t)`` pair is stored in
    ``extra["product_rule"]``.
    """
    lam = float(lam)
    if lam == 0:
        raise ValueError("spectral parameter must be nonzero")
    L, M, Lt, Mt = ck_transitions(field, lam)
    res = sym_bobenko_general(L, M, Lt, Mt, 2.0, 0.0, backend=backend)
    res.extra["product_rule"] = frame_product_rule_residual(L, M, Lt, Mt, res.phi, res.dphi)
    res.extra["lax_compatibility"] = float(lattice_compatibility(L, M).max(initial=0.0))
    res.net.meta.update({"kind": "cknet", "lambda": lam})
    return res
