# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled geometry kernels.

Scalar mirrors of the vectorized formulas in ``pure.py``; both backends are
expected to agree bitwise away from degenerate inputs (edge-of-region ties).
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt, fabs, INFINITY

cnp.import_array()

BACKEND = "compiled"

cdef double _SEG_EPS = 1e-30


cdef inline double _d3(const double* u, const double* v) nogil:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


cdef inline void _c3(const double* u, const double* v, double* out) nogil:
    out[0] = u[1] * v[2] - u[2] * v[1]
    out[1] = u[2] * v[0] - u[0] * v[2]
    out[2] = u[0] * v[1] - u[1] * v[0]


cdef inline void _sub3(const double* u, const double* v, double* out) nogil:
    out[0] = u[0] - v[0]
    out[1] = u[1] - v[1]
    out[2] = u[2] - v[2]


cdef inline double _clamp01(double x) nogil:
    if x < 0.0:
        return 0.0
    if x > 1.0:
        return 1.0
    return x


cdef double _closest_pt_tri(const double* p, const double* a, const double* b,
                            const double* c, double* out) nogil:
    """Ericson ClosestPtPointTriangle; returns the distance."""
    cdef double ab[3], ac[3], ap[3], bp[3], cp[3], diff[3]
    cdef double d1, d2, d3, d4, d5, d6, vc, vb, va, v, w, denom
    cdef int k
    _sub3(b, a, ab)
    _sub3(c, a, ac)
    _sub3(p, a, ap)
    d1 = _d3(ab, ap)
    d2 = _d3(ac, ap)
    if d1 <= 0.0 and d2 <= 0.0:
        out[0] = a[0]; out[1] = a[1]; out[2] = a[2]
    else:
        _sub3(p, b, bp)
        d3 = _d3(ab, bp)
        d4 = _d3(ac, bp)
        if d3 >= 0.0 and d4 <= d3:
            out[0] = b[0]; out[1] = b[1]; out[2] = b[2]
        else:
            vc = d1 * d4 - d3 * d2
            if vc <= 0.0 and d1 >= 0.0 and d3 <= 0.0:
                v = d1 / (d1 - d3)
                for k in range(3):
                    out[k] = a[k] + v * ab[k]
            else:
                _sub3(p, c, cp)
                d5 = _d3(ab, cp)
                d6 = _d3(ac, cp)
                if d6 >= 0.0 and d5 <= d6:
                    out[0] = c[0]; out[1] = c[1]; out[2] = c[2]
                else:
                    vb = d5 * d2 - d1 * d6
                    if vb <= 0.0 and d2 >= 0.0 and d6 <= 0.0:
                        w = d2 / (d2 - d6)
                        for k in range(3):
                            out[k] = a[k] + w * ac[k]
                    else:
                        va = d3 * d6 - d5 * d4
                        if va <= 0.0 and (d4 - d3) >= 0.0 and (d5 - d6) >= 0.0:
                            w = (d4 - d3) / ((d4 - d3) + (d5 - d6))
                            for k in range(3):
                                out[k] = b[k] + w * (c[k] - b[k])
                        else:
                            denom = 1.0 / (va + vb + vc)
                            v = vb * denom
                            w = vc * denom
                            for k in range(3):
                                out[k] = a[k] + ab[k] * v + ac[k] * w
    _sub3(p, out, diff)
    return sqrt(_d3(diff, diff))


def closest_on_tri(q, a, b, c):
    cdef cnp.ndarray[double, ndim=2] qa = np.ascontiguousarray(q, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] aa = np.ascontiguousarray(a, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] ba = np.ascontiguousarray(b, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] ca = np.ascontiguousarray(c, dtype=np.float64).reshape(-1, 3)
    cdef Py_ssize_t n = aa.shape[0]
    if qa.shape[0] == 1 and n > 1:
        qa = np.ascontiguousarray(np.broadcast_to(qa, (n, 3)))
    cdef cnp.ndarray[double, ndim=2] out = np.empty((n, 3), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] dist = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i
    for i in range(n):
        dist[i] = _closest_pt_tri(&qa[i, 0], &aa[i, 0], &ba[i, 0], &ca[i, 0], &out[i, 0])
    return out, dist


cdef double _seg_seg_sq(const double* p1, const double* q1, const double* p2,
                        const double* q2) nogil:
    cdef double d1[3], d2[3], r[3], c1[3], c2[3], diff[3]
    cdef double a, e, f, cc, b, denom, s, t
    cdef int k
    _sub3(q1, p1, d1)
    _sub3(q2, p2, d2)
    _sub3(p1, p2, r)
    a = _d3(d1, d1)
    e = _d3(d2, d2)
    f = _d3(d2, r)
    cc = _d3(d1, r)
    b = _d3(d1, d2)
    if a <= _SEG_EPS and e <= _SEG_EPS:
        s = 0.0
        t = 0.0
    elif a <= _SEG_EPS:
        s = 0.0
        t = _clamp01(f / e)
    elif e <= _SEG_EPS:
        s = _clamp01(-cc / a)
        t = 0.0
    else:
        denom = a * e - b * b
        if denom > _SEG_EPS:
            s = _clamp01((b * f - cc * e) / denom)
        else:
            s = 0.0
        t = (b * s + f) / e
        if t < 0.0:
            t = 0.0
            s = _clamp01(-cc / a)
        elif t > 1.0:
            t = 1.0
            s = _clamp01((b - cc) / a)
    for k in range(3):
        c1[k] = p1[k] + d1[k] * s
        c2[k] = p2[k] + d2[k] * t
    _sub3(c1, c2, diff)
    return _d3(diff, diff)


def tri_distance(a0, a1, a2, b0, b1, b2):
    cdef cnp.ndarray[double, ndim=2] A0 = np.ascontiguousarray(a0, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] A1 = np.ascontiguousarray(a1, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] A2 = np.ascontiguousarray(a2, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] B0 = np.ascontiguousarray(b0, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] B1 = np.ascontiguousarray(b1, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] B2 = np.ascontiguousarray(b2, dtype=np.float64).reshape(-1, 3)
    cdef Py_ssize_t n = A0.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i
    cdef double best, d, dd
    cdef double tmp[3]
    cdef const double* ea[3][2]
    cdef const double* eb[3][2]
    cdef int ii, jj
    for i in range(n):
        ea[0][0] = &A0[i, 0]; ea[0][1] = &A1[i, 0]
        ea[1][0] = &A1[i, 0]; ea[1][1] = &A2[i, 0]
        ea[2][0] = &A2[i, 0]; ea[2][1] = &A0[i, 0]
        eb[0][0] = &B0[i, 0]; eb[0][1] = &B1[i, 0]
        eb[1][0] = &B1[i, 0]; eb[1][1] = &B2[i, 0]
        eb[2][0] = &B2[i, 0]; eb[2][1] = &B0[i, 0]
        best = INFINITY
        for ii in range(3):
            for jj in range(3):
                d = _seg_seg_sq(ea[ii][0], ea[ii][1], eb[jj][0], eb[jj][1])
                if d < best:
                    best = d
        for ii in range(3):
            dd = _closest_pt_tri(ea[ii][0], &B0[i, 0], &B1[i, 0], &B2[i, 0], tmp)
            d = dd * dd
            if d < best:
                best = d
        for ii in range(3):
            dd = _closest_pt_tri(eb[ii][0], &A0[i, 0], &A1[i, 0], &A2[i, 0], tmp)
            d = dd * dd
            if d < best:
                best = d
        out[i] = sqrt(best)
    return out


cdef inline double _snap(double x, double eps) nogil:
    if fabs(x) < eps:
        return 0.0
    return x


cdef int _interval_ref_c(double d0, double d1, double d2) nogil:
    """Index of the lone vertex, or -1 for coplanar (Moller enumeration)."""
    if d0 * d1 > 0.0:
        return 2
    if d0 * d2 > 0.0:
        return 1
    if d1 * d2 > 0.0 or d0 != 0.0:
        return 0
    if d1 != 0.0:
        return 1
    if d2 != 0.0:
        return 2
    return -1


cdef double _pair_eps_c(const double* a0, const double* a1, const double* a2,
                        const double* b0, const double* b1, const double* b2,
                        const double* n) nogil:
    cdef double scale = 0.0
    cdef const double* pts[6]
    cdef int i, k
    pts[0] = a0; pts[1] = a1; pts[2] = a2
    pts[3] = b0; pts[4] = b1; pts[5] = b2
    for i in range(6):
        for k in range(3):
            if fabs(pts[i][k]) > scale:
                scale = fabs(pts[i][k])
    return 1e-12 * sqrt(_d3(n, n)) * scale


cdef bint _coplanar_2d(const double* a0, const double* a1, const double* a2,
                       const double* b0, const double* b1, const double* b2,
                       int i0, int i1) nogil:
    cdef double ta[3][2], tb[3][2]
    cdef int i, j
    ta[0][0] = a0[i0]; ta[0][1] = a0[i1]
    ta[1][0] = a1[i0]; ta[1][1] = a1[i1]
    ta[2][0] = a2[i0]; ta[2][1] = a2[i1]
    tb[0][0] = b0[i0]; tb[0][1] = b0[i1]
    tb[1][0] = b1[i0]; tb[1][1] = b1[i1]
    tb[2][0] = b2[i0]; tb[2][1] = b2[i1]
    for i in range(3):
        for j in range(3):
            if _edge_edge_2d(ta[i], ta[(i + 1) % 3], tb[j], tb[(j + 1) % 3]):
                return True
    return _point_in_2d(ta[0], tb) or _point_in_2d(tb[0], ta)


cdef bint _edge_edge_2d(const double* v0, const double* v1, const double* u0,
                        const double* u1) nogil:
    cdef double ax = v1[0] - v0[0]
    cdef double ay = v1[1] - v0[1]
    cdef double bx = u0[0] - u1[0]
    cdef double by = u0[1] - u1[1]
    cdef double cx = v0[0] - u0[0]
    cdef double cy = v0[1] - u0[1]
    cdef double f = ay * bx - ax * by
    cdef double d = by * cx - bx * cy
    cdef double e
    if (f > 0.0 and 0.0 <= d <= f) or (f < 0.0 and f <= d <= 0.0):
        e = ax * cy - ay * cx
        if f > 0.0:
            return 0.0 <= e <= f
        return f <= e <= 0.0
    return False


cdef bint _point_in_2d(const double* p, double t[3][2]) nogil:
    cdef int i, has_sign = 0
    cdef bint s = False
    cdef double cr
    for i in range(3):
        cr = ((t[(i + 1) % 3][0] - t[i][0]) * (p[1] - t[i][1])
              - (t[(i + 1) % 3][1] - t[i][1]) * (p[0] - t[i][0]))
        if cr == 0.0:
            continue
        if has_sign == 0:
            s = cr > 0.0
            has_sign = 1
        elif (cr > 0.0) != s:
            return False
    return True


def tri_overlap(a0, a1, a2, b0, b1, b2):
    cdef cnp.ndarray[double, ndim=2] A0 = np.ascontiguousarray(a0, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] A1 = np.ascontiguousarray(a1, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] A2 = np.ascontiguousarray(a2, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] B0 = np.ascontiguousarray(b0, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] B1 = np.ascontiguousarray(b1, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] B2 = np.ascontiguousarray(b2, dtype=np.float64).reshape(-1, 3)
    cdef Py_ssize_t n = A0.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out = np.zeros(n, dtype=np.uint8)
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = _tri_overlap_one(&A0[i, 0], &A1[i, 0], &A2[i, 0],
                                  &B0[i, 0], &B1[i, 0], &B2[i, 0])
    return out


cdef cnp.uint8_t _tri_overlap_one(const double* a0, const double* a1, const double* a2,
                                  const double* b0, const double* b1, const double* b2) nogil:
    cdef double e1[3], e2[3], n1[3], n2[3], dline[3]
    cdef double d1, d2, eps1, eps2
    cdef double du0, du1, du2, dv0, dv1, dv2
    cdef double pv[3], pu[3]
    cdef int refv, refu, axis, k
    cdef double iv0, iv1, iu0, iu1, lo_v, hi_v, lo_u, hi_u, t

    _sub3(a1, a0, e1)
    _sub3(a2, a0, e2)
    _c3(e1, e2, n1)
    d1 = -_d3(n1, a0)
    eps1 = _pair_eps_c(a0, a1, a2, b0, b1, b2, n1)
    du0 = _snap(_d3(n1, b0) + d1, eps1)
    du1 = _snap(_d3(n1, b1) + d1, eps1)
    du2 = _snap(_d3(n1, b2) + d1, eps1)
    if du0 * du1 > 0.0 and du0 * du2 > 0.0:
        return 0

    _sub3(b1, b0, e1)
    _sub3(b2, b0, e2)
    _c3(e1, e2, n2)
    d2 = -_d3(n2, b0)
    eps2 = _pair_eps_c(a0, a1, a2, b0, b1, b2, n2)
    dv0 = _snap(_d3(n2, a0) + d2, eps2)
    dv1 = _snap(_d3(n2, a1) + d2, eps2)
    dv2 = _snap(_d3(n2, a2) + d2, eps2)
    if dv0 * dv1 > 0.0 and dv0 * dv2 > 0.0:
        return 0

    refv = _interval_ref_c(dv0, dv1, dv2)
    refu = _interval_ref_c(du0, du1, du2)
    if refv < 0 or refu < 0:
        # coplanar pair: 2D test in the dominant plane of n1
        axis = 0
        if fabs(n1[1]) > fabs(n1[axis]):
            axis = 1
        if fabs(n1[2]) > fabs(n1[axis]):
            axis = 2
        if axis == 0:
            return 1 if _coplanar_2d(a0, a1, a2, b0, b1, b2, 1, 2) else 0
        elif axis == 1:
            return 1 if _coplanar_2d(a0, a1, a2, b0, b1, b2, 0, 2) else 0
        return 1 if _coplanar_2d(a0, a1, a2, b0, b1, b2, 0, 1) else 0

    _c3(n1, n2, dline)
    axis = 0
    if fabs(dline[1]) > fabs(dline[axis]):
        axis = 1
    if fabs(dline[2]) > fabs(dline[axis]):
        axis = 2
    pv[0] = a0[axis]; pv[1] = a1[axis]; pv[2] = a2[axis]
    pu[0] = b0[axis]; pu[1] = b1[axis]; pu[2] = b2[axis]

    _interval_c(pv, dv0, dv1, dv2, refv, &iv0, &iv1)
    _interval_c(pu, du0, du1, du2, refu, &iu0, &iu1)
    lo_v = iv0 if iv0 < iv1 else iv1
    hi_v = iv1 if iv1 > iv0 else iv0
    lo_u = iu0 if iu0 < iu1 else iu1
    hi_u = iu1 if iu1 > iu0 else iu0
    if hi_v < lo_u or hi_u < lo_v:
        return 0
    return 1


cdef void _interval_c(const double* proj, double d0, double d1, double d2,
                      int ref, double* t0, double* t1) nogil:
    cdef double dd[3]
    cdef int o1 = (ref + 1) % 3
    cdef int o2 = (ref + 2) % 3
    dd[0] = d0; dd[1] = d1; dd[2] = d2
    t0[0] = proj[ref] + (proj[o1] - proj[ref]) * (dd[ref] / (dd[ref] - dd[o1]))
    t1[0] = proj[ref] + (proj[o2] - proj[ref]) * (dd[ref] / (dd[ref] - dd[o2]))


cdef void _cross_points_c(const double* v0, const double* v1, const double* v2,
                          double d0, double d1, double d2, int ref,
                          double* p, double* q) nogil:
    cdef const double* vs[3]
    cdef double dd[3]
    cdef int o1 = (ref + 1) % 3
    cdef int o2 = (ref + 2) % 3
    cdef double t1, t2
    cdef int k
    vs[0] = v0; vs[1] = v1; vs[2] = v2
    dd[0] = d0; dd[1] = d1; dd[2] = d2
    t1 = dd[ref] / (dd[ref] - dd[o1])
    t2 = dd[ref] / (dd[ref] - dd[o2])
    for k in range(3):
        p[k] = vs[ref][k] + (vs[o1][k] - vs[ref][k]) * t1
        q[k] = vs[ref][k] + (vs[o2][k] - vs[ref][k]) * t2


def tri_segment(a0, a1, a2, b0, b1, b2):
    cdef cnp.ndarray[double, ndim=2] A0 = np.ascontiguousarray(a0, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] A1 = np.ascontiguousarray(a1, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] A2 = np.ascontiguousarray(a2, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] B0 = np.ascontiguousarray(b0, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] B1 = np.ascontiguousarray(b1, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] B2 = np.ascontiguousarray(b2, dtype=np.float64).reshape(-1, 3)
    cdef Py_ssize_t n = A0.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] ok = np.zeros(n, dtype=np.uint8)
    cdef cnp.ndarray[double, ndim=2] sp = np.zeros((n, 3), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] sq = np.zeros((n, 3), dtype=np.float64)
    cdef Py_ssize_t i
    for i in range(n):
        ok[i] = _tri_segment_one(&A0[i, 0], &A1[i, 0], &A2[i, 0],
                                 &B0[i, 0], &B1[i, 0], &B2[i, 0],
                                 &sp[i, 0], &sq[i, 0])
    return ok, sp, sq


cdef cnp.uint8_t _tri_segment_one(const double* a0, const double* a1, const double* a2,
                                  const double* b0, const double* b1, const double* b2,
                                  double* sp, double* sq) nogil:
    cdef double e1[3], e2[3], n1[3], n2[3], dline[3], dhat[3]
    cdef double pa[3], qa[3], pb[3], qb[3], tmp[3]
    cdef double d1, d2, eps1, eps2, norm
    cdef double du0, du1, du2, dv0, dv1, dv2
    cdef double sa0, sa1, sb0, sb1, lo, hi, t
    cdef int refv, refu, k

    _sub3(a1, a0, e1)
    _sub3(a2, a0, e2)
    _c3(e1, e2, n1)
    d1 = -_d3(n1, a0)
    eps1 = _pair_eps_c(a0, a1, a2, b0, b1, b2, n1)
    du0 = _snap(_d3(n1, b0) + d1, eps1)
    du1 = _snap(_d3(n1, b1) + d1, eps1)
    du2 = _snap(_d3(n1, b2) + d1, eps1)
    if du0 * du1 > 0.0 and du0 * du2 > 0.0:
        return 0

    _sub3(b1, b0, e1)
    _sub3(b2, b0, e2)
    _c3(e1, e2, n2)
    d2 = -_d3(n2, b0)
    eps2 = _pair_eps_c(a0, a1, a2, b0, b1, b2, n2)
    dv0 = _snap(_d3(n2, a0) + d2, eps2)
    dv1 = _snap(_d3(n2, a1) + d2, eps2)
    dv2 = _snap(_d3(n2, a2) + d2, eps2)
    if dv0 * dv1 > 0.0 and dv0 * dv2 > 0.0:
        return 0

    refv = _interval_ref_c(dv0, dv1, dv2)
    refu = _interval_ref_c(du0, du1, du2)
    if refv < 0 or refu < 0:
        return 0

    _c3(n1, n2, dline)
    norm = sqrt(_d3(dline, dline))
    if norm <= 0.0:
        return 0
    for k in range(3):
        dhat[k] = dline[k] / norm

    _cross_points_c(a0, a1, a2, dv0, dv1, dv2, refv, pa, qa)
    _cross_points_c(b0, b1, b2, du0, du1, du2, refu, pb, qb)
    sa0 = _d3(dhat, pa)
    sa1 = _d3(dhat, qa)
    sb0 = _d3(dhat, pb)
    sb1 = _d3(dhat, qb)
    if sa0 > sa1:
        sa0, sa1 = sa1, sa0
        for k in range(3):
            tmp[k] = pa[k]; pa[k] = qa[k]; qa[k] = tmp[k]
    if sb0 > sb1:
        sb0, sb1 = sb1, sb0
        for k in range(3):
            tmp[k] = pb[k]; pb[k] = qb[k]; qb[k] = tmp[k]

    lo = sa0 if sa0 > sb0 else sb0
    hi = sa1 if sa1 < sb1 else sb1
    if hi < lo:
        return 0
    for k in range(3):
        sp[k] = pa[k] if sa0 >= sb0 else pb[k]
        sq[k] = qa[k] if sa1 <= sb1 else qb[k]
    return 1


def ray_tris(origin, direction, a, b, c, double t_min=0.0, double bary_eps=1e-9):
    cdef cnp.ndarray[double, ndim=1] o = np.ascontiguousarray(origin, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] d = np.ascontiguousarray(direction, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] A = np.ascontiguousarray(a, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] B = np.ascontiguousarray(b, dtype=np.float64).reshape(-1, 3)
    cdef cnp.ndarray[double, ndim=2] C = np.ascontiguousarray(c, dtype=np.float64).reshape(-1, 3)
    cdef Py_ssize_t n = A.shape[0]
    cdef cnp.ndarray[double, ndim=1] t_out = np.full(n, np.inf, dtype=np.float64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] back = np.zeros(n, dtype=np.uint8)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] unreliable = np.zeros(n, dtype=np.uint8)
    cdef Py_ssize_t i
    cdef double e1[3], e2[3], pvec[3], tvec[3], qvec[3]
    cdef double det, scale, inv, u, v, t, w, bmin
    for i in range(n):
        _sub3(&B[i, 0], &A[i, 0], e1)
        _sub3(&C[i, 0], &A[i, 0], e2)
        _c3(&d[0], e2, pvec)
        det = _d3(e1, pvec)
        scale = sqrt(_d3(e1, e1)) * sqrt(_d3(e2, e2))
        if fabs(det) <= 1e-12 * scale:
            continue
        inv = 1.0 / det
        _sub3(&o[0], &A[i, 0], tvec)
        u = _d3(tvec, pvec) * inv
        _c3(tvec, e1, qvec)
        v = _d3(&d[0], qvec) * inv
        t = _d3(e2, qvec) * inv
        w = 1.0 - u - v
        if u >= 0.0 and v >= 0.0 and w >= 0.0 and t > t_min:
            t_out[i] = t
            if det < 0.0:
                back[i] = 1
            bmin = u
            if v < bmin:
                bmin = v
            if w < bmin:
                bmin = w
            if bmin < bary_eps:
                unreliable[i] = 1
    return t_out, back, unreliable
