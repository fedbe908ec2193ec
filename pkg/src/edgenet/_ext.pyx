# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled versions of the hot loops in ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()

cdef enum:
    GENERIC = 0
    LINE = 1
    POINT = 2


cdef inline double _dot(double* a, double* b) nogil:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


cdef inline void _cross(double* a, double* b, double* out) nogil:
    out[0] = a[1] * b[2] - a[2] * b[1]
    out[1] = a[2] * b[0] - a[0] * b[2]
    out[2] = a[0] * b[1] - a[1] * b[0]


cdef inline double _det(double* a, double* b, double* n) nogil:
    cdef double c[3]
    _cross(a, b, c)
    return _dot(c, n)


def quad_core(F, Nv, mix, double deg_tol):
    cdef double[:, :, ::1] f = np.ascontiguousarray(F, dtype=np.float64)
    cdef double[:, :, ::1] nv = np.ascontiguousarray(Nv, dtype=np.float64)
    cdef double[:, ::1] mx = np.ascontiguousarray(mix, dtype=np.float64)
    cdef Py_ssize_t Q = f.shape[0]
    P_arr = np.empty((Q, 4, 3))
    N_arr = np.zeros((Q, 3))
    flag_arr = np.zeros(Q, dtype=np.int8)
    span_arr = np.zeros((Q, 3))
    A_arr = np.empty((Q, 3))
    cdef double[:, :, ::1] P = P_arr
    cdef double[:, ::1] N = N_arr
    cdef cnp.int8_t[::1] flag = flag_arr
    cdef double[:, ::1] span = span_arr
    cdef double[:, ::1] A = A_arr
    cdef Py_ssize_t q, i
    cdef double x[3]
    cdef double y[3]
    cdef double fx[3]
    cdef double fy[3]
    cdef double nx[3]
    cdef double ny[3]
    cdef double c[3]
    cdef double nb[3]
    cdef double d[3]
    cdef double m[3]
    cdef double cn, lx, ly, dn, mn, nbn, t, amax, dmin
    cdef int k
    with nogil:
        for q in range(Q):
            for i in range(3):
                x[i] = 0.5 * (f[q, 2, i] + f[q, 1, i]) - 0.5 * (f[q, 3, i] + f[q, 0, i])
                y[i] = 0.5 * (f[q, 2, i] + f[q, 3, i]) - 0.5 * (f[q, 1, i] + f[q, 0, i])
                fx[i] = mx[0, 0] * x[i] + mx[0, 1] * y[i]
                fy[i] = mx[1, 0] * x[i] + mx[1, 1] * y[i]
                x[i] = 0.5 * (nv[q, 2, i] + nv[q, 1, i]) - 0.5 * (nv[q, 3, i] + nv[q, 0, i])
                y[i] = 0.5 * (nv[q, 2, i] + nv[q, 3, i]) - 0.5 * (nv[q, 1, i] + nv[q, 0, i])
                nx[i] = mx[0, 0] * x[i] + mx[0, 1] * y[i]
                ny[i] = mx[1, 0] * x[i] + mx[1, 1] * y[i]
                nb[i] = nv[q, 0, i] + nv[q, 1, i] + nv[q, 2, i] + nv[q, 3, i]
                P[q, 0, i] = fx[i]
                P[q, 1, i] = fy[i]
                P[q, 2, i] = nx[i]
                P[q, 3, i] = ny[i]
            _cross(nx, ny, c)
            cn = sqrt(_dot(c, c))
            lx = sqrt(_dot(nx, nx))
            ly = sqrt(_dot(ny, ny))
            if cn > deg_tol * lx * ly and cn > 1e-300:
                for i in range(3):
                    N[q, i] = c[i] / cn
            else:
                if lx >= ly:
                    dn = lx
                    for i in range(3):
                        d[i] = nx[i]
                else:
                    dn = ly
                    for i in range(3):
                        d[i] = ny[i]
                amax = 0.0
                for i in range(3):
                    for k in range(4):
                        if fabs(nv[q, k, i]) > amax:
                            amax = fabs(nv[q, k, i])
                if dn <= 1e-14 * (amax + 1.0):
                    flag[q] = POINT
                    mn = sqrt(_dot(nb, nb))
                    if mn > 1e-300:
                        for i in range(3):
                            N[q, i] = nb[i] / mn
                    else:
                        N[q, 2] = 1.0
                else:
                    flag[q] = LINE
                    for i in range(3):
                        d[i] = d[i] / dn
                        span[q, i] = d[i]
                    t = _dot(nb, d)
                    for i in range(3):
                        m[i] = nb[i] - t * d[i]
                    mn = sqrt(_dot(m, m))
                    nbn = sqrt(_dot(nb, nb))
                    if mn <= 1e-12 * (nbn + 1.0):
                        k = 0
                        dmin = fabs(d[0])
                        for i in range(1, 3):
                            if fabs(d[i]) < dmin:
                                dmin = fabs(d[i])
                                k = <int>i
                        for i in range(3):
                            m[i] = -d[k] * d[i]
                        m[k] += 1.0
                        mn = sqrt(_dot(m, m))
                    for i in range(3):
                        N[q, i] = m[i] / mn
            for i in range(3):
                c[i] = N[q, i]
            A[q, 0] = _det(fx, fy, c)
            A[q, 1] = 0.5 * (_det(fx, ny, c) + _det(nx, fy, c))
            A[q, 2] = _det(nx, ny, c)
    return P_arr, N_arr, flag_arr, span_arr, A_arr


def edge_residuals(f_in, n_in, edges_in):
    cdef double[:, ::1] f = np.ascontiguousarray(f_in, dtype=np.float64)
    cdef double[:, ::1] n = np.ascontiguousarray(n_in, dtype=np.float64)
    cdef cnp.intp_t[:, ::1] edges = np.ascontiguousarray(edges_in, dtype=np.intp)
    cdef Py_ssize_t E = edges.shape[0]
    res_arr = np.empty(E)
    len_arr = np.empty(E)
    cdef double[::1] res = res_arr
    cdef double[::1] ln = len_arr
    cdef Py_ssize_t e, i, a, b
    cdef double s, l2, dv
    with nogil:
        for e in range(E):
            a = edges[e, 0]
            b = edges[e, 1]
            s = 0.0
            l2 = 0.0
            for i in range(3):
                dv = f[b, i] - f[a, i]
                s += dv * (n[b, i] + n[a, i])
                l2 += dv * dv
            res[e] = 0.5 * s
            ln[e] = sqrt(l2)
    return res_arr, len_arr


cdef inline void _qmul(double* p, double* q, double* o) nogil:
    o[0] = p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3]
    o[1] = p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2]
    o[2] = p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1]
    o[3] = p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]


def frame_propagate(order_in, parent_in, T_in, dT_in, phi0, dphi0):
    cdef cnp.intp_t[::1] order = np.ascontiguousarray(order_in, dtype=np.intp)
    cdef cnp.intp_t[::1] parent = np.ascontiguousarray(parent_in, dtype=np.intp)
    cdef double[:, ::1] T = np.ascontiguousarray(T_in, dtype=np.float64)
    cdef double[:, ::1] dT = np.ascontiguousarray(dT_in, dtype=np.float64)
    cdef Py_ssize_t V = T.shape[0]
    phi_arr = np.zeros((V, 4))
    dphi_arr = np.zeros((V, 4))
    cdef double[:, ::1] phi = phi_arr
    cdef double[:, ::1] dphi = dphi_arr
    cdef double a[4]
    cdef double b[4]
    cdef Py_ssize_t j, v, p, i
    cdef Py_ssize_t root = order[0]
    for i in range(4):
        phi[root, i] = phi0[i]
        dphi[root, i] = dphi0[i]
    with nogil:
        for j in range(1, order.shape[0]):
            v = order[j]
            p = parent[v]
            _qmul(&T[v, 0], &phi[p, 0], &phi[v, 0])
            _qmul(&dT[v, 0], &phi[p, 0], a)
            _qmul(&T[v, 0], &dphi[p, 0], b)
            for i in range(4):
                dphi[v, i] = a[i] + b[i]
    return phi_arr, dphi_arr


def moutard_fill(n_in):
    cdef double[:, :, :] n = n_in
    cdef Py_ssize_t C = n.shape[0] - 1
    cdef Py_ssize_t R = n.shape[1] - 1
    cdef Py_ssize_t k, l, i
    cdef double s[3]
    cdef double ss, t
    for k in range(C):
        for l in range(R):
            ss = 0.0
            t = 0.0
            for i in range(3):
                s[i] = n[k + 1, l, i] + n[k, l + 1, i]
                ss += s[i] * s[i]
                t += n[k, l, i] * s[i]
            if ss <= 1e-28:
                raise FloatingPointError(f"antipodal neighbours at quad ({k}, {l})")
            for i in range(3):
                n[k + 1, l + 1, i] = (2.0 * t / ss) * s[i] - n[k, l, i]
    return n_in
