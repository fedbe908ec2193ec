"""Quaternion, vector and complex helpers.

Quaternions are numpy arrays with a trailing axis of length 4, stored
scalar-first ``(w, x, y, z)``.  The imaginary part is identified with a
vector in R^3, so ``vec_to_quat`` and ``quat_imag`` move between the two.

The 2x2 complex matrix picture used for Lax matrices maps
``i -> -i*sigma_1``, ``j -> -i*sigma_2``, ``k -> -i*sigma_3``::

    (w, x, y, z)  <->  [[w - i z, -y - i x],
                        [y - i x,  w + i z]]
"""

import numpy as np

__all__ = [
    "QUAT_ONE",
    "QUAT_I",
    "QUAT_J",
    "QUAT_K",
    "quat",
    "vec_to_quat",
    "quat_imag",
    "quat_real",
    "quat_mul",
    "quat_conj",
    "quat_norm2",
    "quat_norm",
    "quat_inv",
    "quat_div_left",
    "quat_conjugate_vector",
    "quat_from_axis_angle",
    "quat_to_rotation_matrix",
    "quat_to_matrix",
    "matrix_to_quat",
    "is_quaternionic",
    "stereographic_project",
    "chordal_distance",
    "unit",
]

QUAT_ONE = np.array([1.0, 0.0, 0.0, 0.0])
QUAT_I = np.array([0.0, 1.0, 0.0, 0.0])
QUAT_J = np.array([0.0, 0.0, 1.0, 0.0])
QUAT_K = np.array([0.0, 0.0, 0.0, 1.0])


def quat(w=0.0, x=0.0, y=0.0, z=0.0):
    """Build a single quaternion from its four components."""
    return np.array([w, x, y, z], dtype=float)


def vec_to_quat(v, w=0.0):
    """Embed vectors ``(..., 3)`` as quaternions with real part ``w``."""
    v = np.asarray(v, dtype=float)
    out = np.empty(v.shape[:-1] + (4,))
    out[..., 0] = w
    out[..., 1:] = v
    return out


def quat_imag(q):
    return np.asarray(q)[..., 1:]


def quat_real(q):
    return np.asarray(q)[..., 0]


def quat_mul(p, q):
    """Hamilton product, broadcasting over leading axes."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    pw, px, py, pz = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    qw, qx, qy, qz = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    return np.stack(
        [
            pw * qw - px * qx - py * qy - pz * qz,
            pw * qx + px * qw + py * qz - pz * qy,
            pw * qy - px * qz + py * qw + pz * qx,
            pw * qz + px * qy - py * qx + pz * qw,
        ],
        axis=-1,
    )


def quat_conj(q):
    q = np.asarray(q, dtype=float)
    out = -q
    out[..., 0] = q[..., 0]
    return out


def quat_norm2(q):
    q = np.asarray(q, dtype=float)
    return np.sum(q * q, axis=-1)


def quat_norm(q):
    return np.sqrt(quat_norm2(q))


def quat_inv(q):
    """Multiplicative inverse; raises on (numerically) zero quaternions."""
    q = np.asarray(q, dtype=float)
    n2 = quat_norm2(q)
    if np.any(n2 <= np.finfo(float).tiny):
        raise ZeroDivisionError("non-invertible quaternion")
    return quat_conj(q) / n2[..., None]


def quat_div_left(p, q):
    """Return ``p^{-1} q``."""
    return quat_mul(quat_inv(p), q)


def quat_conjugate_vector(q, v):
    """Imaginary part of ``q^{-1} (0, v) q``.

    For unit ``q = cos(t/2) + sin(t/2) a`` this rotates ``v`` by ``-t``
    about ``a``; the length of ``v`` is preserved for any invertible ``q``.
    """
    vq = vec_to_quat(v)
    return quat_imag(quat_mul(quat_mul(quat_inv(q), vq), q))


def quat_from_axis_angle(axis, angle):
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis, axis=-1, keepdims=True)
    half = 0.5 * np.asarray(angle, dtype=float)
    return vec_to_quat(np.sin(half)[..., None] * axis, w=np.cos(half))


def quat_to_rotation_matrix(q):
    """Matrix ``R`` with ``R @ v == quat_conjugate_vector(q, v)``."""
    w, x, y, z = np.asarray(q, dtype=float) / quat_norm(q)
    # q^{-1} v q for unit q equals the standard rotation by conj(q)
    x, y, z = -x, -y, -z
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def quat_to_matrix(q):
    """2x2 complex matrix of a quaternion (trailing axes ``(2, 2)``)."""
    q = np.asarray(q, dtype=float)
    w, x, y, z = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    m = np.empty(q.shape[:-1] + (2, 2), dtype=complex)
    m[..., 0, 0] = w - 1j * z
    m[..., 0, 1] = -y - 1j * x
    m[..., 1, 0] = y - 1j * x
    m[..., 1, 1] = w + 1j * z
    return m


def matrix_to_quat(m):
    """Quaternion of a 2x2 complex matrix.

    Only the first row is read; use :func:`is_quaternionic` to check that
    the matrix actually has the form ``[[a, b], [-conj(b), conj(a)]]``.
    """
    m = np.asarray(m, dtype=complex)
    a = m[..., 0, 0]
    b = m[..., 0, 1]
    return np.stack([a.real, -b.imag, -b.real, -a.imag], axis=-1)


def is_quaternionic(m, tol=1e-10):
    m = np.asarray(m, dtype=complex)
    d1 = np.abs(m[..., 1, 1] - np.conj(m[..., 0, 0]))
    d2 = np.abs(m[..., 1, 0] + np.conj(m[..., 0, 1]))
    scale = 1.0 + np.abs(m).max()
    return bool(np.all(d1 <= tol * scale) and np.all(d2 <= tol * scale))


def stereographic_project(g):
    """Inverse stereographic projection of complex ``g`` onto the unit sphere.

    ``g = 0`` maps to the south pole ``(0, 0, -1)``.
    """
    g = np.asarray(g, dtype=complex)
    a = np.abs(g) ** 2
    out = np.stack([2.0 * g.real, 2.0 * g.imag, a - 1.0], axis=-1)
    return out / (1.0 + a)[..., None]


def chordal_distance(z, w):
    """Euclidean distance between the stereographic images of ``z`` and ``w``."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return 2.0 * np.abs(z - w) / np.sqrt((1.0 + np.abs(z) ** 2) * (1.0 + np.abs(w) ** 2))


def unit(v, axis=-1):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v, axis=axis, keepdims=True)
