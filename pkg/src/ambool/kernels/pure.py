"""Pure-numpy geometry kernels.

Reference implementations of the hot predicates: triangle-triangle overlap
(Moller interval test), triangle-triangle minimum distance, mutual
intersection segments, point-triangle closest point (Ericson) and
Moller-Trumbore ray casting. The compiled backend in ``_fast.pyx`` mirrors
these formulas operation-for-operation so both backends agree bitwise on
non-borderline inputs.

All batch arguments are float64 arrays of shape (n, 3); triangle corners are
passed as three separate arrays.
"""
import numpy as np

BACKEND = "pure"

_SEG_EPS = 1e-30


def _dot(u, v):
    return u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1] + u[..., 2] * v[..., 2]


def _cross(u, v):
    out = np.empty(np.broadcast(u, v).shape, dtype=np.float64)
    out[..., 0] = u[..., 1] * v[..., 2] - u[..., 2] * v[..., 1]
    out[..., 1] = u[..., 2] * v[..., 0] - u[..., 0] * v[..., 2]
    out[..., 2] = u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]
    return out


def closest_on_tri(q, a, b, c):
    """Closest point on each triangle (a,b,c) to each query point q.

    Returns (points (n,3), distances (n,)). Region classification follows
    Ericson's ClosestPtPointTriangle.
    """
    q = np.asarray(q, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)

    ab = b - a
    ac = c - a
    ap = q - a
    d1 = _dot(ab, ap)
    d2 = _dot(ac, ap)
    bp = q - b
    d3 = _dot(ab, bp)
    d4 = _dot(ac, bp)
    cp = q - c
    d5 = _dot(ab, cp)
    d6 = _dot(ac, cp)
    vc = d1 * d4 - d3 * d2
    vb = d5 * d2 - d1 * d6
    va = d3 * d6 - d5 * d4

    with np.errstate(divide="ignore", invalid="ignore"):
        v_ab = d1 / (d1 - d3)
        w_ac = d2 / (d2 - d6)
        w_bc = (d4 - d3) / ((d4 - d3) + (d5 - d6))
        denom = 1.0 / (va + vb + vc)

    v_in = vb * denom
    w_in = vc * denom

    # Interior formula first, then overwrite in reverse region precedence so
    # the first matching region in A, B, AB, C, AC, BC order wins.
    out = a + ab * v_in[..., None] + ac * w_in[..., None]

    cond_bc = (va <= 0) & ((d4 - d3) >= 0) & ((d5 - d6) >= 0)
    pt = b + w_bc[..., None] * (c - b)
    out = np.where(cond_bc[..., None], pt, out)

    cond_ac = (vb <= 0) & (d2 >= 0) & (d6 <= 0)
    pt = a + w_ac[..., None] * ac
    out = np.where(cond_ac[..., None], pt, out)

    cond_c = (d6 >= 0) & (d5 <= d6)
    out = np.where(cond_c[..., None], c, out)

    cond_ab = (vc <= 0) & (d1 >= 0) & (d3 <= 0)
    pt = a + v_ab[..., None] * ab
    out = np.where(cond_ab[..., None], pt, out)

    cond_b = (d3 >= 0) & (d4 <= d3)
    out = np.where(cond_b[..., None], b, out)

    cond_a = (d1 <= 0) & (d2 <= 0)
    out = np.where(cond_a[..., None], a, out)

    diff = q - out
    return out, np.sqrt(_dot(diff, diff))


def _seg_seg_closest(p1, q1, p2, q2):
    """Squared distance between segments [p1,q1] and [p2,q2] (Ericson)."""
    d1 = q1 - p1
    d2 = q2 - p2
    r = p1 - p2
    a = _dot(d1, d1)
    e = _dot(d2, d2)
    f = _dot(d2, r)
    cc = _dot(d1, r)
    b = _dot(d1, d2)
    denom = a * e - b * b

    with np.errstate(divide="ignore", invalid="ignore"):
        s_gen = np.clip((b * f - cc * e) / denom, 0.0, 1.0)
    s = np.where(denom > _SEG_EPS, s_gen, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (b * s + f) / e

    # re-clamp t, recompute s where clamped
    with np.errstate(divide="ignore", invalid="ignore"):
        s_t0 = np.clip(-cc / a, 0.0, 1.0)
        s_t1 = np.clip((b - cc) / a, 0.0, 1.0)
    t_low = t < 0.0
    t_high = t > 1.0
    s = np.where(t_low, s_t0, np.where(t_high, s_t1, s))
    t = np.clip(t, 0.0, 1.0)

    # degenerate segments
    both = (a <= _SEG_EPS) & (e <= _SEG_EPS)
    with np.errstate(divide="ignore", invalid="ignore"):
        t_pa = np.clip(f / e, 0.0, 1.0)
    s = np.where(a <= _SEG_EPS, 0.0, s)
    t = np.where(a <= _SEG_EPS, t_pa, t)
    t = np.where(e <= _SEG_EPS, 0.0, t)
    s = np.where(both, 0.0, s)
    t = np.where(both, 0.0, t)

    c1 = p1 + d1 * s[..., None]
    c2 = p2 + d2 * t[..., None]
    diff = c1 - c2
    return _dot(diff, diff)


def tri_distance(a0, a1, a2, b0, b1, b2):
    """Minimum distance candidates between two triangles.

    Minimum over the 9 edge-edge pairs and the 6 vertex-triangle pairs.
    Exact for disjoint triangles; piercing triangles report a positive
    value, so callers combine this with ``tri_overlap``.
    """
    ea = ((a0, a1), (a1, a2), (a2, a0))
    eb = ((b0, b1), (b1, b2), (b2, b0))
    best = None
    for pa, qa in ea:
        for pb, qb in eb:
            d2 = _seg_seg_closest(pa, qa, pb, qb)
            best = d2 if best is None else np.minimum(best, d2)
    for p in (a0, a1, a2):
        _, d = closest_on_tri(p, b0, b1, b2)
        best = np.minimum(best, d * d)
    for p in (b0, b1, b2):
        _, d = closest_on_tri(p, a0, a1, a2)
        best = np.minimum(best, d * d)
    return np.sqrt(best)


def _plane_dists(n, d, p0, p1, p2, eps):
    """Signed plane offsets of three points, snapped to zero within eps."""
    d0 = _dot(n, p0) + d
    d1 = _dot(n, p1) + d
    d2 = _dot(n, p2) + d
    d0 = np.where(np.abs(d0) < eps, 0.0, d0)
    d1 = np.where(np.abs(d1) < eps, 0.0, d1)
    d2 = np.where(np.abs(d2) < eps, 0.0, d2)
    return d0, d1, d2


def _interval_ref(d0, d1, d2):
    """Index of the vertex that sits alone on one side of the plane.

    Returns (ref, coplanar) following Moller's case enumeration.
    """
    ref = np.full(d0.shape, -1, dtype=np.int64)
    coplanar = (d0 == 0.0) & (d1 == 0.0) & (d2 == 0.0)
    c1 = d0 * d1 > 0.0
    c2 = d0 * d2 > 0.0
    c3 = (d1 * d2 > 0.0) | (d0 != 0.0)
    c4 = d1 != 0.0
    c5 = d2 != 0.0
    ref = np.where(c5, 2, ref)
    ref = np.where(c4, 1, ref)
    ref = np.where(c3, 0, ref)
    ref = np.where(c2, 1, ref)
    ref = np.where(c1, 2, ref)
    ref = np.where(coplanar, -1, ref)
    return ref, coplanar


def _gather(rows, idx):
    """rows: tuple of three (n,...) arrays, idx: (n,) in {0,1,2}."""
    stacked = np.stack(rows, axis=1)
    return stacked[np.arange(len(idx)), idx]


def _pair_eps(a0, a1, a2, b0, b1, b2, n):
    scale = np.zeros(len(a0), dtype=np.float64)
    for p in (a0, a1, a2, b0, b1, b2):
        scale = np.maximum(scale, np.max(np.abs(p), axis=-1))
    return 1e-12 * np.sqrt(_dot(n, n)) * scale


def _coplanar_overlap_2d(a, b):
    """2D overlap of two triangles given as (3,2) arrays (scalar path)."""

    def edge_edge(v0, v1, u0, u1):
        ax = v1[0] - v0[0]
        ay = v1[1] - v0[1]
        bx = u0[0] - u1[0]
        by = u0[1] - u1[1]
        cx = v0[0] - u0[0]
        cy = v0[1] - u0[1]
        f = ay * bx - ax * by
        d = by * cx - bx * cy
        if (f > 0 and 0 <= d <= f) or (f < 0 and f <= d <= 0):
            e = ax * cy - ay * cx
            if f > 0:
                return 0 <= e <= f
            return f <= e <= 0
        return False

    def point_in(p, t):
        s = None
        for i in range(3):
            e0 = t[i]
            e1 = t[(i + 1) % 3]
            cr = (e1[0] - e0[0]) * (p[1] - e0[1]) - (e1[1] - e0[1]) * (p[0] - e0[0])
            if cr == 0:
                continue
            if s is None:
                s = cr > 0
            elif (cr > 0) != s:
                return False
        return True

    for i in range(3):
        for j in range(3):
            if edge_edge(a[i], a[(i + 1) % 3], b[j], b[(j + 1) % 3]):
                return True
    return point_in(a[0], b) or point_in(b[0], a)


def tri_overlap(a0, a1, a2, b0, b1, b2):
    """Exact (tolerance-zero) triangle-triangle overlap test.

    Moller's interval method with a coplanar 2D fallback. Touching contact
    counts as overlap. Returns uint8 flags of shape (n,).
    """
    a0, a1, a2, b0, b1, b2 = (np.asarray(x, dtype=np.float64).reshape(-1, 3)
                              for x in (a0, a1, a2, b0, b1, b2))
    n = len(a0)
    result = np.zeros(n, dtype=np.uint8)
    if n == 0:
        return result

    n1 = _cross(a1 - a0, a2 - a0)
    d1 = -_dot(n1, a0)
    eps1 = _pair_eps(a0, a1, a2, b0, b1, b2, n1)
    du0, du1, du2 = _plane_dists(n1, d1, b0, b1, b2, eps1)
    reject = (du0 * du1 > 0.0) & (du0 * du2 > 0.0)

    n2 = _cross(b1 - b0, b2 - b0)
    d2 = -_dot(n2, b0)
    eps2 = _pair_eps(a0, a1, a2, b0, b1, b2, n2)
    dv0, dv1, dv2 = _plane_dists(n2, d2, a0, a1, a2, eps2)
    reject |= (dv0 * dv1 > 0.0) & (dv0 * dv2 > 0.0)

    dline = _cross(n1, n2)
    axis = np.argmax(np.abs(dline), axis=-1)
    rows = np.arange(n)
    pv = tuple(np.stack((a0, a1, a2), axis=1)[rows, :, axis][:, i] for i in range(3))
    pu = tuple(np.stack((b0, b1, b2), axis=1)[rows, :, axis][:, i] for i in range(3))

    refv, copl_v = _interval_ref(dv0, dv1, dv2)
    refu, copl_u = _interval_ref(du0, du1, du2)
    coplanar = (copl_v | copl_u) & ~reject

    live = ~reject & ~coplanar
    if np.any(live):
        iv0, iv1 = _interval(pv, (dv0, dv1, dv2), np.where(live, refv, 0))
        iu0, iu1 = _interval(pu, (du0, du1, du2), np.where(live, refu, 0))
        lo_v = np.minimum(iv0, iv1)
        hi_v = np.maximum(iv0, iv1)
        lo_u = np.minimum(iu0, iu1)
        hi_u = np.maximum(iu0, iu1)
        hit = ~((hi_v < lo_u) | (hi_u < lo_v))
        result[live & hit] = 1

    for i in np.nonzero(coplanar)[0]:
        ax = int(np.argmax(np.abs(n1[i])))
        keep = [j for j in range(3) if j != ax]
        ta = np.stack((a0[i][keep], a1[i][keep], a2[i][keep]))
        tb = np.stack((b0[i][keep], b1[i][keep], b2[i][keep]))
        if _coplanar_overlap_2d(ta, tb):
            result[i] = 1
    return result


def _interval(proj, dists, ref):
    """Scalar interval of a triangle on the intersection line.

    proj: per-vertex projections, dists: signed plane offsets, ref: index of
    the lone vertex. Division is safe by case construction.
    """
    o1 = (ref + 1) % 3
    o2 = (ref + 2) % 3
    pr = _gather(proj, ref)
    p1 = _gather(proj, o1)
    p2 = _gather(proj, o2)
    dr = _gather(dists, ref)
    dd1 = _gather(dists, o1)
    dd2 = _gather(dists, o2)
    with np.errstate(divide="ignore", invalid="ignore"):
        t0 = pr + (p1 - pr) * (dr / (dr - dd1))
        t1 = pr + (p2 - pr) * (dr / (dr - dd2))
    return t0, t1


def tri_segment(a0, a1, a2, b0, b1, b2):
    """Mutual intersection segment of properly crossing triangle pairs.

    Returns (ok uint8 (n,), p (n,3), q (n,3)). ok is 0 for disjoint or
    coplanar pairs; callers fall back to projection stepping for those.
    """
    a0, a1, a2, b0, b1, b2 = (np.asarray(x, dtype=np.float64).reshape(-1, 3)
                              for x in (a0, a1, a2, b0, b1, b2))
    n = len(a0)
    ok = np.zeros(n, dtype=np.uint8)
    sp = np.zeros((n, 3), dtype=np.float64)
    sq = np.zeros((n, 3), dtype=np.float64)
    if n == 0:
        return ok, sp, sq

    n1 = _cross(a1 - a0, a2 - a0)
    d1 = -_dot(n1, a0)
    eps1 = _pair_eps(a0, a1, a2, b0, b1, b2, n1)
    du = _plane_dists(n1, d1, b0, b1, b2, eps1)
    n2 = _cross(b1 - b0, b2 - b0)
    d2 = -_dot(n2, b0)
    eps2 = _pair_eps(a0, a1, a2, b0, b1, b2, n2)
    dv = _plane_dists(n2, d2, a0, a1, a2, eps2)

    reject = (du[0] * du[1] > 0.0) & (du[0] * du[2] > 0.0)
    reject |= (dv[0] * dv[1] > 0.0) & (dv[0] * dv[2] > 0.0)
    refv, copl_v = _interval_ref(*dv)
    refu, copl_u = _interval_ref(*du)
    live = ~reject & ~copl_v & ~copl_u
    if not np.any(live):
        return ok, sp, sq

    dline = _cross(n1, n2)
    norm = np.sqrt(_dot(dline, dline))
    live &= norm > 0.0

    pa, qa = _cross_points((a0, a1, a2), dv, np.where(live, refv, 0))
    pb, qb = _cross_points((b0, b1, b2), du, np.where(live, refu, 0))

    with np.errstate(divide="ignore", invalid="ignore"):
        dhat = dline / norm[..., None]
    sa0 = _dot(dhat, pa)
    sa1 = _dot(dhat, qa)
    sb0 = _dot(dhat, pb)
    sb1 = _dot(dhat, qb)

    # orient each chord so its scalar interval is increasing
    swap_a = sa0 > sa1
    pa, qa = (np.where(swap_a[:, None], qa, pa), np.where(swap_a[:, None], pa, qa))
    sa0, sa1 = np.where(swap_a, sa1, sa0), np.where(swap_a, sa0, sa1)
    swap_b = sb0 > sb1
    pb, qb = (np.where(swap_b[:, None], qb, pb), np.where(swap_b[:, None], pb, qb))
    sb0, sb1 = np.where(swap_b, sb1, sb0), np.where(swap_b, sb0, sb1)

    lo = np.maximum(sa0, sb0)
    hi = np.minimum(sa1, sb1)
    live &= hi >= lo

    start = np.where((sa0 >= sb0)[:, None], pa, pb)
    end = np.where((sa1 <= sb1)[:, None], qa, qb)
    ok[live] = 1
    sp[live] = start[live]
    sq[live] = end[live]
    return ok, sp, sq


def _cross_points(verts, dists, ref):
    """3D points where the two ref-adjacent edges cross the other plane."""
    o1 = (ref + 1) % 3
    o2 = (ref + 2) % 3
    vr = _gather(verts, ref)
    v1 = _gather(verts, o1)
    v2 = _gather(verts, o2)
    dr = _gather(dists, ref)
    dd1 = _gather(dists, o1)
    dd2 = _gather(dists, o2)
    with np.errstate(divide="ignore", invalid="ignore"):
        t1 = (dr / (dr - dd1))[..., None]
        t2 = (dr / (dr - dd2))[..., None]
    return vr + (v1 - vr) * t1, vr + (v2 - vr) * t2


def ray_tris(origin, direction, a, b, c, t_min=0.0, bary_eps=1e-9):
    """Moller-Trumbore ray cast against a batch of triangles.

    Returns (t, back, unreliable): t is +inf for misses, back flags hits on
    the interior side (direction . normal > 0), unreliable flags hits within
    bary_eps of an edge or vertex in barycentric coordinates.
    """
    origin = np.asarray(origin, dtype=np.float64)
    direction = np.asarray(direction, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64).reshape(-1, 3)
    b = np.asarray(b, dtype=np.float64).reshape(-1, 3)
    c = np.asarray(c, dtype=np.float64).reshape(-1, 3)

    e1 = b - a
    e2 = c - a
    pvec = _cross(np.broadcast_to(direction, e2.shape), e2)
    det = _dot(e1, pvec)
    scale = np.sqrt(_dot(e1, e1)) * np.sqrt(_dot(e2, e2))
    parallel = np.abs(det) <= 1e-12 * scale

    with np.errstate(divide="ignore", invalid="ignore"):
        inv = 1.0 / det
    tvec = origin - a
    u = _dot(tvec, pvec) * inv
    qvec = _cross(tvec, e1)
    v = _dot(np.broadcast_to(direction, qvec.shape), qvec) * inv
    t = _dot(e2, qvec) * inv
    w = 1.0 - u - v

    hit = (~parallel) & (u >= 0.0) & (v >= 0.0) & (w >= 0.0) & (t > t_min)
    t_out = np.where(hit, t, np.inf)
    back = (hit & (det < 0.0)).astype(np.uint8)
    bmin = np.minimum(np.minimum(u, v), w)
    unreliable = (hit & (bmin < bary_eps)).astype(np.uint8)
    return t_out, back, unreliable
