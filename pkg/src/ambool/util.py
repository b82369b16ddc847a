"""Small shared helpers."""
import os

import numpy as np


def worker_count() -> int:
    """Worker cap from AMBOOL_THREADS (defaults to the CPU count)."""
    env = os.environ.get("AMBOOL_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def closest_on_segments(points, seg0, seg1, chunk=256):
    """Nearest point on a segment set for each query point.

    points: (n,3); seg0/seg1: (k,3) segment endpoints. Returns
    (closest (n,3), distance (n,)).
    """
    points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    seg0 = np.asarray(seg0, dtype=np.float64).reshape(-1, 3)
    seg1 = np.asarray(seg1, dtype=np.float64).reshape(-1, 3)
    n = len(points)
    k = len(seg0)
    if k == 0:
        raise ValueError("empty segment set")
    d = seg1 - seg0
    dd = np.einsum("ij,ij->i", d, d)
    out = np.empty((n, 3), dtype=np.float64)
    dist = np.empty(n, dtype=np.float64)
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        p = points[lo:hi]
        w = p[:, None, :] - seg0[None, :, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.einsum("nkj,kj->nk", w, d) / dd[None, :]
        t = np.clip(np.nan_to_num(t), 0.0, 1.0)
        cand = seg0[None, :, :] + t[:, :, None] * d[None, :, :]
        diff = cand - p[:, None, :]
        d2 = np.einsum("nkj,nkj->nk", diff, diff)
        best = np.argmin(d2, axis=1)
        rows = np.arange(hi - lo)
        out[lo:hi] = cand[rows, best]
        dist[lo:hi] = np.sqrt(d2[rows, best])
    return out, dist


def normalized(v):
    v = np.asarray(v, dtype=np.float64)
    ln = np.linalg.norm(v, axis=-1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(ln > 0, v / ln, 0.0)
