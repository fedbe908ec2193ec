"""Per-quad curvature of contact element nets.

For a quad with midpoint connectors ``f_x, f_y, n_x, n_y`` the projection
direction is ``N = n_x x n_y / |n_x x n_y|`` and the mixed area is::

    A(g, h) = (det(g_x, h_y, N) + det(h_x, g_y, N)) / 2

Mean and Gauss curvature are ``H = A(f,n)/A(f,f)`` and ``K = A(n,n)/A(f,f)``.
When ``n_x`` and ``n_y`` are parallel (a degenerate Gauss quad) any unit
``N`` orthogonal to their span is admissible; :class:`ProjectionFrame`
exposes that circle of choices.
"""

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from . import kernels
from .kernels import GENERIC, LINE, POINT

__all__ = [
    "DEG_TOL",
    "UMBILIC_TOL",
    "GENERIC",
    "LINE",
    "POINT",
    "QuadPartials",
    "ProjectionFrame",
    "QuadCurvatureData",
    "quad_partials",
    "projection_direction",
    "mixed_area",
    "steiner_curvatures",
    "fundamental_forms",
    "principal_data",
    "developable_principal",
    "quad_curvature",
    "net_curvature",
    "circle_fit_residual",
    "circumcircle_height",
    "analytic_principal",
    "direction_angle_deg",
]

DEG_TOL = 1e-8
UMBILIC_TOL = 1e-8


@dataclass
class QuadPartials:
    """Midpoint connectors of position and normal quads (leading batch axes allowed)."""

    fx: np.ndarray
    fy: np.ndarray
    nx: np.ndarray
    ny: np.ndarray


def _mix(mixing):
    return np.eye(2) if mixing is None else np.asarray(mixing, dtype=float)


def quad_partials(fq, nq, mixing=None):
    """Midpoint connectors of quads given in shift order.

    ``fq`` and ``nq`` have shape ``(..., 4, 3)``.  An optional 2x2
    ``mixing`` replaces ``(x, y)`` by ``mixing @ (x, y)`` for both nets.
    """
    fq = np.asarray(fq, dtype=float)
    nq = np.asarray(nq, dtype=float)
    m = _mix(mixing)

    def conn(X):
        x = 0.5 * (X[..., 2, :] + X[..., 1, :]) - 0.5 * (X[..., 3, :] + X[..., 0, :])
        y = 0.5 * (X[..., 2, :] + X[..., 3, :]) - 0.5 * (X[..., 1, :] + X[..., 0, :])
        return m[0, 0] * x + m[0, 1] * y, m[1, 0] * x + m[1, 1] * y

    fx, fy = conn(fq)
    nx, ny = conn(nq)
    return QuadPartials(fx, fy, nx, ny)


@dataclass
class ProjectionFrame:
    """Projection direction of one quad and its tangent basis.

    ``flag`` is ``GENERIC``, ``LINE`` (``n_x``, ``n_y`` parallel; admissible
    directions form the circle orthogonal to ``span``) or ``POINT``
    (constant normals; every unit vector is admissible).
    """

    N: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    flag: int
    span: np.ndarray = None

    @property
    def degenerate(self):
        return self.flag != GENERIC

    def admissible(self, theta):
        """Admissible projection direction at circle parameter ``theta``.

        ``theta = 0`` returns the default ``N``.  For ``POINT`` quads the
        circle through ``N`` and ``e1`` is used (any unit vector would do).
        """
        if self.flag == GENERIC:
            return self.N.copy()
        if self.flag == LINE:
            b = np.cross(self.span, self.N)
        else:
            b = self.e1
        return np.cos(theta) * self.N + np.sin(theta) * b


def _tangent_basis(N):
    k = int(np.argmin(np.abs(N)))
    e = np.zeros(3)
    e[k] = 1.0
    e1 = e - np.dot(e, N) * N
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(N, e1)


def projection_direction(p, tol=DEG_TOL):
    """Projection frame of a single quad from its partials."""
    nx, ny = np.asarray(p.nx, float), np.asarray(p.ny, float)
    c = np.cross(nx, ny)
    cn = np.linalg.norm(c)
    lx, ly = np.linalg.norm(nx), np.linalg.norm(ny)
    if cn > tol * lx * ly and cn > 1e-300:
        N = c / cn
        return ProjectionFrame(N, *_tangent_basis(N), GENERIC)
    d, dn = (nx, lx) if lx >= ly else (ny, ly)
    if dn <= 1e-14:
        N = np.array([0.0, 0.0, 1.0])
        return ProjectionFrame(N, *_tangent_basis(N), POINT)
    d = d / dn
    N = np.cross(d, _tangent_basis(d)[0])
    return ProjectionFrame(N, *_tangent_basis(N), LINE, d)


def _det(a, b, n):
    return np.einsum("...i,...i->...", np.cross(a, b), n)


def mixed_area(g, h, N):
    """``A(g, h)`` for partials ``g`` and ``h`` (objects with ``.fx, .fy``
    or ``(x, y)`` pairs) and projection direction ``N``."""
    gx, gy = (g.fx, g.fy) if hasattr(g, "fx") else g
    hx, hy = (h.fx, h.fy) if hasattr(h, "fx") else h
    return 0.5 * (_det(gx, hy, N) + _det(hx, gy, N))


def steiner_curvatures(p, N, eps=1e-14):
    """``(H, K)`` from mixed areas; NaN where ``A(f,f)`` vanishes."""
    f = (p.fx, p.fy)
    n = (p.nx, p.ny)
    aff = mixed_area(f, f, N)
    afn = mixed_area(f, n, N)
    ann = mixed_area(n, n, N)
    scale = np.linalg.norm(p.fx, axis=-1) * np.linalg.norm(p.fy, axis=-1)
    ok = np.abs(aff) > eps * scale
    with np.errstate(divide="ignore", invalid="ignore"):
        H = np.where(ok, afn / aff, np.nan)
        K = np.where(ok, ann / aff, np.nan)
    return H, K


def _project(v, N):
    return v - np.einsum("...i,...i->...", v, N)[..., None] * N


def fundamental_forms(p, N):
    """Fundamental forms and shape operator in the basis of projected partials.

    ``I_ij = f_i . f_j``, ``II_ij = f_i . n_j`` and ``III_ij = n_i . n_j``
    with ``f_i`` the partials projected orthogonally to ``N``;
    ``S = I^{-1} II``.  Returns ``(I, II, III, S, asym)`` where ``asym`` is
    ``|II_12 - II_21|``.
    """
    fx, fy = _project(p.fx, N), _project(p.fy, N)
    F = np.stack([fx, fy], axis=-2)
    G = np.stack([p.nx, p.ny], axis=-2)
    I = np.einsum("...ik,...jk->...ij", F, F)
    II = np.einsum("...ik,...jk->...ij", F, G)
    III = np.einsum("...ik,...jk->...ij", G, G)
    det = I[..., 0, 0] * I[..., 1, 1] - I[..., 0, 1] * I[..., 1, 0]
    tr = I[..., 0, 0] + I[..., 1, 1]
    if np.any(np.abs(det) <= 1e-14 * tr * tr):
        raise np.linalg.LinAlgError("projected partials collinear")
    S = np.linalg.solve(I, II)
    asym = np.abs(II[..., 0, 1] - II[..., 1, 0])
    return I, II, III, S, asym


def principal_data(I, II, F, umbilic_tol=UMBILIC_TOL):
    """Principal curvatures ``k1 <= k2`` and ambient principal directions.

    Solves the symmetric pencil ``sym(II) c = k I c``; ``F`` holds the
    projected partials as rows, so a coefficient vector ``c`` maps to the
    direction ``c @ F``.  Directions are NaN at umbilics.
    """
    IIs = 0.5 * (II + II.T)
    k, C = linalg.eigh(IIs, I)
    dirs = C.T @ F
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    umbilic = abs(k[1] - k[0]) < umbilic_tol * (abs(k[0]) + abs(k[1]) + 1e-300)
    if umbilic:
        dirs = np.full((2, 3), np.nan)
    return k[0], k[1], dirs[0], dirs[1], umbilic


def developable_principal(p, frame, theta=0.0):
    """Nonzero principal curvature ``2H`` and curvature line of a degenerate quad.

    Returns ``None`` when the Gauss quad is a point (zero shape operator).
    The curvature value is the same for every admissible ``N``; ``theta``
    selects which one is used.
    """
    if frame.flag == GENERIC:
        raise ValueError("developable_principal needs a degenerate Gauss quad")
    if frame.flag == POINT:
        return None
    N = frame.admissible(theta)
    H, _ = steiner_curvatures(p, N)
    return 2.0 * float(H), frame.span.copy()


@dataclass
class QuadCurvatureData:
    """Curvature data for all quads of a net (arrays indexed by quad)."""

    partials: np.ndarray  # (Q, 4, 3): f_x, f_y, n_x, n_y
    N: np.ndarray
    flag: np.ndarray
    span: np.ndarray
    A_ff: np.ndarray
    A_fn: np.ndarray
    A_nn: np.ndarray
    H: np.ndarray
    K: np.ndarray
    I: np.ndarray
    II: np.ndarray
    III: np.ndarray
    S: np.ndarray
    k1: np.ndarray
    k2: np.ndarray
    dir1: np.ndarray
    dir2: np.ndarray
    umbilic: np.ndarray
    ii_asymmetry: np.ndarray

    @property
    def degenerate(self):
        return self.flag != GENERIC

    def frame(self, q):
        N = self.N[q]
        span = self.span[q] if self.flag[q] == LINE else None
        return ProjectionFrame(N, *_tangent_basis(N), int(self.flag[q]), span)

    def quad_partials(self, q):
        P = self.partials[q]
        return QuadPartials(P[0], P[1], P[2], P[3])


def quad_curvature(fq, nq, mixing=None, deg_tol=DEG_TOL, backend=None):
    """Curvature data for a batch of quads ``(Q, 4, 3)`` in shift order."""
    kern = kernels if backend is None else kernels.get_backend(backend)
    fq = np.asarray(fq, dtype=float).reshape(-1, 4, 3)
    nq = np.asarray(nq, dtype=float).reshape(-1, 4, 3)
    P, N, flag, span, A = kern.quad_core(fq, nq, _mix(mixing), deg_tol)
    Q = len(fq)
    aff, afn, ann = A[:, 0], A[:, 1], A[:, 2]
    scale = np.linalg.norm(P[:, 0], axis=1) * np.linalg.norm(P[:, 1], axis=1)
    ok = np.abs(aff) > 1e-14 * scale
    with np.errstate(divide="ignore", invalid="ignore"):
        H = np.where(ok, afn / aff, np.nan)
        K = np.where(ok, ann / aff, np.nan)

    fx = _project(P[:, 0], N)
    fy = _project(P[:, 1], N)
    F = np.stack([fx, fy], axis=1)
    G = P[:, 2:4]
    I = np.einsum("qik,qjk->qij", F, F)
    II = np.einsum("qik,qjk->qij", F, G)
    III = np.einsum("qik,qjk->qij", G, G)
    S = np.full((Q, 2, 2), np.nan)
    k1 = np.full(Q, np.nan)
    k2 = np.full(Q, np.nan)
    d1 = np.full((Q, 3), np.nan)
    d2 = np.full((Q, 3), np.nan)
    umb = np.zeros(Q, dtype=bool)
    for q in np.flatnonzero(ok):
        try:
            S[q] = np.linalg.solve(I[q], II[q])
            k1[q], k2[q], d1[q], d2[q], umb[q] = principal_data(I[q], II[q], F[q])
        except np.linalg.LinAlgError:
            # near-singular I: principal data stay undefined for this quad
            S[q] = np.nan

    asym = np.abs(II[:, 0, 1] - II[:, 1, 0])
    return QuadCurvatureData(P, N, flag, span, aff, afn, ann, H, K, I, II, III, S, k1, k2, d1, d2, umb, asym)


def net_curvature(net, mixing=None, deg_tol=DEG_TOL, backend=None):
    """:func:`quad_curvature` over every quad of a net."""
    return quad_curvature(net.quad_positions(), net.quad_normals(), mixing, deg_tol, backend)


def circle_fit_residual(P):
    """Largest distance of four points from the circle through the first three."""
    P = np.asarray(P, dtype=float)
    a, b, c = P[0], P[1], P[2]
    ab, ac = b - a, c - a
    w = np.cross(ab, ac)
    ww = np.dot(w, w)
    if ww <= 1e-300:
        return np.inf
    center = a + (np.dot(ac, ac) * np.cross(w, ab) + np.dot(ab, ab) * np.cross(ac, w)) / (2 * ww)
    r = np.linalg.norm(a - center)
    wn = w / np.sqrt(ww)
    out = 0.0
    for p in P[3:]:
        dv = p - center
        h = np.dot(dv, wn)
        rad = np.linalg.norm(dv - h * wn)
        out = max(out, float(np.hypot(h, rad - r)))
    return out


def circumcircle_height(nq, N, tol=1e-9):
    """Signed distance ``d`` of the Gauss quad's circle plane along ``N``.

    Raises ``ValueError`` if the four normals are not concircular.
    """
    nq = np.asarray(nq, dtype=float)
    if circle_fit_residual(nq) > tol:
        raise ValueError("Gauss quad is not circular")
    return float(np.mean(nq @ N))


def analytic_principal(surface, u, v, **params):
    """Principal curvatures and directions of an analytic surface.

    Signs follow the discrete convention ``n_x = S f_x`` (a sphere with
    outward normals has ``k = 1/r``).  Returns ``(k, dirs)`` with ``k`` of
    shape ``(..., 2)`` sorted ascending and unit ambient directions
    ``(..., 2, 3)``.
    """
    from .netcore import analytic_frame

    _, fu, fv, fuu, fuv, fvv, n = analytic_frame(surface, u, v, **params)
    dot = lambda a, b: np.einsum("...i,...i->...", a, b)  # noqa: E731
    I = np.stack([np.stack([dot(fu, fu), dot(fu, fv)], -1), np.stack([dot(fu, fv), dot(fv, fv)], -1)], -2)
    II = -np.stack([np.stack([dot(fuu, n), dot(fuv, n)], -1), np.stack([dot(fuv, n), dot(fvv, n)], -1)], -2)
    k, C = np.linalg.eig(np.linalg.solve(I, II))
    k, C = k.real, C.real
    order = np.argsort(k, axis=-1)
    k = np.take_along_axis(k, order, -1)
    C = np.take_along_axis(C, order[..., None, :], -1)
    F = np.stack([fu, fv], axis=-2)
    dirs = np.einsum("...ij,...ik->...jk", C, F)
    return k, dirs / np.linalg.norm(dirs, axis=-1, keepdims=True)


def direction_angle_deg(a, b):
    """Unsigned angle in degrees between line directions ``a`` and ``b``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    # atan2 keeps full precision near 0 where arccos loses half the digits
    c = np.abs(np.einsum("...i,...i->...", a, b))
    s = np.linalg.norm(np.cross(a, b), axis=-1)
    return np.degrees(np.arctan2(s, c))
