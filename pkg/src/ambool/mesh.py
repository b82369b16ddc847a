"""Editable indexed triangle mesh with constant-time adjacency.

The mesh is the single mutable artifact every pipeline stage edits. Edits
mark elements dead instead of compacting, so triangle/vertex ids are stable
for the lifetime of an operation; ``compacted()`` produces a dense copy.

Orientation convention: counter-clockwise seen from outside (outward
normals). Two live triangles sharing an edge must traverse it in opposite
directions.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryError, InvalidEdgeError, TopologyError
from .util import closest_on_segments


def edge_key(a, b):
    """Order-independent edge key. Raises on degenerate (a == b) edges."""
    if a == b:
        raise ValueError("degenerate edge (%d, %d)" % (a, b))
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class VertexBinding:
    """Projection binding of a vertex: free, fixed, on a polyline, or on a
    surface target. ``ref`` indexes into the constraint set's polylines or
    surface-target registry."""

    kind: str = "free"
    ref: int | None = None


FREE = VertexBinding("free")
FIXED = VertexBinding("fixed")


class ConstraintSet:
    """Feature-edge graph plus per-vertex projection bindings.

    Feature edges map to the polyline they lie on (or None when untracked).
    The graph's node set (vertices whose feature degree != 2) must survive
    remeshing; the remesh pass gates its operators on this structure.
    """

    def __init__(self):
        self.feature_edges = {}
        self.polylines = []
        self.surface_targets = {}
        self._bindings = {}
        self._feature_degree = {}

    def copy(self):
        out = ConstraintSet()
        out.feature_edges = dict(self.feature_edges)
        out.polylines = [p.copy() for p in self.polylines]
        out.surface_targets = dict(self.surface_targets)
        out._bindings = dict(self._bindings)
        out._feature_degree = dict(self._feature_degree)
        return out

    def binding(self, v) -> VertexBinding:
        return self._bindings.get(v, FREE)

    def set_binding(self, v, binding):
        if binding.kind == "free":
            self._bindings.pop(v, None)
        else:
            self._bindings[v] = binding

    def add_polyline(self, points) -> int:
        self.polylines.append(np.asarray(points, dtype=np.float64))
        return len(self.polylines) - 1

    def add_surface_target(self, target) -> int:
        tid = len(self.surface_targets)
        while tid in self.surface_targets:
            tid += 1
        self.surface_targets[tid] = target
        return tid

    def is_feature(self, e) -> bool:
        return e in self.feature_edges

    def add_feature_edge(self, e, polyline=None):
        if e in self.feature_edges:
            return
        self.feature_edges[e] = polyline
        for v in e:
            self._feature_degree[v] = self._feature_degree.get(v, 0) + 1

    def remove_feature_edge(self, e):
        if e not in self.feature_edges:
            return
        del self.feature_edges[e]
        for v in e:
            self._feature_degree[v] -= 1
            if self._feature_degree[v] == 0:
                del self._feature_degree[v]

    def feature_degree(self, v) -> int:
        return self._feature_degree.get(v, 0)

    def feature_nodes(self):
        """Vertices where the feature graph branches, ends, or crosses."""
        return {v for v, d in self._feature_degree.items() if d != 2}

    def project_to_polyline(self, pid, points):
        line = self.polylines[pid]
        if len(line) == 1:
            return np.broadcast_to(line[0], np.atleast_2d(points).shape).copy()
        pts, _ = closest_on_segments(np.atleast_2d(points), line[:-1], line[1:])
        return pts

    # -- bookkeeping hooks used by the mesh edit operators ---------------

    def on_split(self, e, a, b, new_vid):
        if e in self.feature_edges:
            pid = self.feature_edges[e]
            self.remove_feature_edge(e)
            self.add_feature_edge(edge_key(a, new_vid), pid)
            self.add_feature_edge(edge_key(new_vid, b), pid)
            if pid is not None:
                self.set_binding(new_vid, VertexBinding("polyline", pid))
            else:
                self.set_binding(new_vid, FIXED)
        else:
            ba, bb = self.binding(a), self.binding(b)
            if ba.kind == "surface" and ba == bb:
                self.set_binding(new_vid, ba)

    def on_collapse(self, e, removed, survivor):
        if e in self.feature_edges:
            self.remove_feature_edge(e)
        # rewire feature edges incident to the removed vertex
        moved = [k for k in self.feature_edges if removed in k]
        for k in moved:
            pid = self.feature_edges[k]
            self.remove_feature_edge(k)
            other = k[0] if k[1] == removed else k[1]
            if other != survivor:
                self.add_feature_edge(edge_key(other, survivor), pid)
        bs = self.binding(survivor)
        br = self._bindings.pop(removed, FREE)
        self.set_binding(survivor, merge_bindings(bs, br))

    def remapped(self, vmap):
        """Copy with vertex ids sent through vmap (-1 entries dropped)."""
        out = ConstraintSet()
        out.polylines = [p.copy() for p in self.polylines]
        out.surface_targets = dict(self.surface_targets)
        for e, pid in self.feature_edges.items():
            a, b = vmap[e[0]], vmap[e[1]]
            if a >= 0 and b >= 0:
                out.add_feature_edge(edge_key(int(a), int(b)), pid)
        for v, bind in self._bindings.items():
            nv = vmap[v]
            if nv >= 0:
                out.set_binding(int(nv), bind)
        return out


_RANK = {"free": 0, "surface": 1, "polyline": 2, "fixed": 3}


def merge_bindings(a: VertexBinding, b: VertexBinding) -> VertexBinding:
    return a if _RANK[a.kind] >= _RANK[b.kind] else b


@dataclass
class BoundaryLoop:
    """Ordered cycle of boundary vertices; the mesh interior lies to the
    left when walking the cycle."""

    mesh: "TriMesh"
    vertices: list
    source: str | None = None
    patch: int | None = None

    def __len__(self):
        return len(self.vertices)

    def positions(self):
        return self.mesh.vertices[self.vertices]

    def edges(self):
        n = len(self.vertices)
        return [edge_key(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def edge_lengths(self):
        p = self.positions()
        return np.linalg.norm(np.roll(p, -1, axis=0) - p, axis=1)


@dataclass
class SplitResult:
    new_vertex: int
    created: list
    removed: list


@dataclass
class CollapseResult:
    survivor: int
    removed: list
    rewired: list


class TriMesh:
    """Indexed triangle mesh with liveness flags and edge adjacency.

    Construction rejects edges with more than two incident triangles
    (non-manifold). ``validate`` reports orientation conflicts, dangling
    references, and adjacency drift without raising.
    """

    def __init__(self):
        self.vertices = np.empty((0, 3), dtype=np.float64)
        self.tris = np.empty((0, 3), dtype=np.int32)
        self.v_alive = np.empty(0, dtype=bool)
        self.t_alive = np.empty(0, dtype=bool)
        self._nv = 0
        self._nt = 0
        self._edge_tris = {}
        self._vertex_tris = []
        self.generation = 0
        self.constraints = ConstraintSet()

    # -- construction -----------------------------------------------------

    @classmethod
    def from_arrays(cls, vertices, triangles):
        m = cls()
        vertices = np.asarray(vertices, dtype=np.float64).reshape(-1, 3)
        triangles = np.asarray(triangles, dtype=np.int64).reshape(-1, 3)
        if len(triangles) and (triangles.min() < 0 or triangles.max() >= len(vertices)):
            raise TopologyError("triangle references out-of-range vertex")
        m._grow_vertices(len(vertices))
        m.vertices[: len(vertices)] = vertices
        m.v_alive[: len(vertices)] = True
        m._nv = len(vertices)
        m._vertex_tris = [[] for _ in range(len(vertices))]
        bad = []
        m._grow_tris(len(triangles))
        for t, (i, j, k) in enumerate(triangles):
            if i == j or j == k or k == i:
                raise TopologyError("degenerate triangle %d" % t)
            m.tris[t] = (i, j, k)
            m.t_alive[t] = True
            for e in ((i, j), (j, k), (k, i)):
                key = edge_key(int(e[0]), int(e[1]))
                lst = m._edge_tris.setdefault(key, [])
                lst.append(t)
                if len(lst) > 2:
                    bad.append(key)
            for v in (i, j, k):
                m._vertex_tris[v].append(t)
        if bad:
            raise TopologyError("non-manifold edges: %s" % sorted(set(bad)),
                                code="non-manifold-edge")
        m._nt = len(triangles)
        m.generation = 1
        return m

    def _grow_vertices(self, extra):
        need = self._nv + extra
        if need <= len(self.vertices):
            return
        cap = max(need, int(len(self.vertices) * 1.5) + 8)
        nv = np.empty((cap, 3), dtype=np.float64)
        nv[: self._nv] = self.vertices[: self._nv]
        self.vertices = nv
        na = np.zeros(cap, dtype=bool)
        na[: self._nv] = self.v_alive[: self._nv]
        self.v_alive = na

    def _grow_tris(self, extra):
        need = self._nt + extra
        if need <= len(self.tris):
            return
        cap = max(need, int(len(self.tris) * 1.5) + 8)
        nt = np.empty((cap, 3), dtype=np.int32)
        nt[: self._nt] = self.tris[: self._nt]
        self.tris = nt
        na = np.zeros(cap, dtype=bool)
        na[: self._nt] = self.t_alive[: self._nt]
        self.t_alive = na

    # -- basic queries -----------------------------------------------------

    def live_triangles(self):
        return np.nonzero(self.t_alive[: self._nt])[0]

    def live_vertices(self):
        return np.nonzero(self.v_alive[: self._nv])[0]

    @property
    def n_triangles(self):
        return int(self.t_alive[: self._nt].sum())

    @property
    def n_vertices(self):
        return int(self.v_alive[: self._nv].sum())

    def tri(self, t):
        return tuple(int(x) for x in self.tris[t])

    def edge_tris(self, e):
        return self._edge_tris.get(e, ())

    def has_edge(self, e):
        return e in self._edge_tris

    def is_boundary_edge(self, e):
        return len(self._edge_tris.get(e, ())) == 1

    def vertex_tris(self, v):
        return self._vertex_tris[v]

    def neighbors(self, v):
        out = set()
        for t in self._vertex_tris[v]:
            for x in self.tris[t]:
                out.add(int(x))
        out.discard(v)
        return out

    def is_boundary_vertex(self, v):
        for t in self._vertex_tris[v]:
            i, j, k = self.tris[t]
            for a, b in ((i, j), (j, k), (k, i)):
                if (a == v or b == v) and self.is_boundary_edge(edge_key(int(a), int(b))):
                    return True
        return False

    def edges(self):
        return self._edge_tris.keys()

    def boundary_edges(self):
        return [e for e, ts in self._edge_tris.items() if len(ts) == 1]

    def edge_length(self, e):
        return float(np.linalg.norm(self.vertices[e[0]] - self.vertices[e[1]]))

    def tri_corners(self, ids):
        ids = np.asarray(ids, dtype=np.int64)
        t = self.tris[ids]
        return self.vertices[t[:, 0]], self.vertices[t[:, 1]], self.vertices[t[:, 2]]

    def tri_normals(self, ids, normalize=True):
        p0, p1, p2 = self.tri_corners(ids)
        n = np.cross(p1 - p0, p2 - p0)
        if normalize:
            ln = np.linalg.norm(n, axis=-1, keepdims=True)
            with np.errstate(divide="ignore", invalid="ignore"):
                n = np.where(ln > 0, n / ln, 0.0)
        return n

    def tri_areas(self, ids):
        p0, p1, p2 = self.tri_corners(ids)
        return 0.5 * np.linalg.norm(np.cross(p1 - p0, p2 - p0), axis=-1)

    def vertex_normal(self, v):
        ts = self._vertex_tris[v]
        if not ts:
            return np.zeros(3)
        n = self.tri_normals(np.asarray(ts), normalize=False).sum(axis=0)
        ln = np.linalg.norm(n)
        return n / ln if ln > 0 else n

    def bbox(self):
        vids = self.live_vertices()
        if len(vids) == 0:
            return np.zeros(3), np.zeros(3)
        pts = self.vertices[vids]
        return pts.min(axis=0), pts.max(axis=0)

    def median_edge_length(self, tri_ids=None):
        if tri_ids is None:
            keys = list(self._edge_tris.keys())
        else:
            keys = sorted({e for t in tri_ids for e in self.tri_edges(t)})
        if not keys:
            return 0.0
        arr = np.asarray(keys)
        d = np.linalg.norm(self.vertices[arr[:, 0]] - self.vertices[arr[:, 1]], axis=1)
        return float(np.median(d))

    def tri_edges(self, t):
        i, j, k = self.tris[t]
        return (edge_key(int(i), int(j)), edge_key(int(j), int(k)), edge_key(int(k), int(i)))

    def opposing_vertices(self, e):
        """Third vertices of the triangles incident to edge e."""
        out = []
        for t in self._edge_tris.get(e, ()):
            for x in self.tris[t]:
                if int(x) not in e:
                    out.append(int(x))
        return out

    # -- low-level edits ---------------------------------------------------

    def add_vertex(self, pos):
        self._grow_vertices(1)
        v = self._nv
        self.vertices[v] = pos
        self.v_alive[v] = True
        self._vertex_tris.append([])
        self._nv += 1
        self.generation += 1
        return v

    def add_triangle(self, i, j, k):
        if i == j or j == k or k == i:
            raise TopologyError("degenerate triangle (%d,%d,%d)" % (i, j, k))
        for v in (i, j, k):
            if not self.v_alive[v]:
                raise TopologyError("dead vertex %d" % v)
        keys = [edge_key(i, j), edge_key(j, k), edge_key(k, i)]
        for key in keys:
            if len(self._edge_tris.get(key, ())) >= 2:
                raise TopologyError("edge %s already has two triangles" % (key,),
                                    code="non-manifold-edge")
        self._grow_tris(1)
        t = self._nt
        self.tris[t] = (i, j, k)
        self.t_alive[t] = True
        self._nt += 1
        for key in keys:
            self._edge_tris.setdefault(key, []).append(t)
        for v in (i, j, k):
            self._vertex_tris[v].append(t)
        self.generation += 1
        return t

    def _detach_triangle(self, t):
        i, j, k = (int(x) for x in self.tris[t])
        for key in (edge_key(i, j), edge_key(j, k), edge_key(k, i)):
            lst = self._edge_tris.get(key)
            if lst is not None and t in lst:
                lst.remove(t)
                if not lst:
                    del self._edge_tris[key]
        for v in (i, j, k):
            if t in self._vertex_tris[v]:
                self._vertex_tris[v].remove(t)
        self.t_alive[t] = False

    def remove_triangle(self, t, kill_orphans=True):
        if not self.t_alive[t]:
            return
        verts = [int(x) for x in self.tris[t]]
        self._detach_triangle(t)
        if kill_orphans:
            for v in verts:
                if not self._vertex_tris[v]:
                    self.v_alive[v] = False
        self.generation += 1

    def set_position(self, v, pos):
        self.vertices[v] = pos
        self.generation += 1

    def set_positions(self, vids, pts):
        self.vertices[np.asarray(vids, dtype=np.int64)] = pts
        self.generation += 1

    def flip_triangles(self, tri_ids):
        """Reverse the winding (and hence normals) of the given triangles."""
        ids = np.asarray(tri_ids, dtype=np.int64)
        self.tris[ids] = self.tris[ids][:, ::-1]
        self.generation += 1

    # -- the three local operators -----------------------------------------

    def _directed_in(self, t, a, b):
        """True if triangle t traverses the directed edge a -> b."""
        i, j, k = (int(x) for x in self.tris[t])
        return (i, j) == (a, b) or (j, k) == (a, b) or (k, i) == (a, b)

    def split_edge(self, e, pos) -> SplitResult:
        """Split edge e at pos: 2 triangles -> 4 (interior) or 1 -> 2
        (boundary). Feature tags and bindings are inherited."""
        ts = self._edge_tris.get(e)
        if not ts:
            raise InvalidEdgeError("edge %s is not live" % (e,))
        a, b = e
        old = list(ts)
        m = self.add_vertex(pos)
        created = []
        removed = []
        for t in old:
            c = [int(x) for x in self.tris[t] if int(x) not in e][0]
            if self._directed_in(t, a, b):
                pieces = ((a, m, c), (m, b, c))
            else:
                pieces = ((b, m, c), (m, a, c))
            self.remove_triangle(t, kill_orphans=False)
            removed.append(t)
            for tri in pieces:
                created.append(self.add_triangle(*tri))
        self.constraints.on_split(e, a, b, m)
        return SplitResult(new_vertex=m, created=created, removed=removed)

    def collapse_edge(self, e, keep_pos) -> CollapseResult:
        """Collapse edge e to a single vertex at keep_pos.

        Preconditions: the link condition holds and no surviving triangle
        normal rotates by more than 90 degrees. Constraint gating is the
        caller's job.
        """
        ts = self._edge_tris.get(e)
        if not ts:
            raise InvalidEdgeError("edge %s is not live" % (e,))
        a, b = e
        opposing = set(self.opposing_vertices(e))
        shared = self.neighbors(a) & self.neighbors(b)
        if shared != opposing:
            raise TopologyError("link condition fails for %s" % (e,),
                                code="link-condition")

        dead = list(ts)
        survivors = [t for t in set(self._vertex_tris[a]) | set(self._vertex_tris[b])
                     if t not in dead]
        # normal-flip guard: compare each surviving triangle's normal before
        # and after the merge
        old_pts = {v: self.vertices[v].copy() for v in (a, b)}
        keep_pos = np.asarray(keep_pos, dtype=np.float64)

        def tri_normal_at(t, merged):
            pts = []
            for x in self.tris[t]:
                x = int(x)
                if merged and x in (a, b):
                    pts.append(keep_pos)
                else:
                    pts.append(self.vertices[x])
            return np.cross(pts[1] - pts[0], pts[2] - pts[0])

        for t in survivors:
            n0 = tri_normal_at(t, False)
            n1 = tri_normal_at(t, True)
            ln1 = np.linalg.norm(n1)
            if ln1 == 0.0 or np.dot(n0, n1) < 0.0:
                raise GeometryError("collapse of %s flips triangle %d" % (e, t),
                                    code="normal-flip")

        for t in dead:
            self._detach_triangle(t)
        rewired = [t for t in survivors if b in (int(x) for x in self.tris[t])]
        for t in rewired:
            i, j, k = (int(x) for x in self.tris[t])
            for key in (edge_key(i, j), edge_key(j, k), edge_key(k, i)):
                if b in key:
                    lst = self._edge_tris.get(key)
                    if lst is not None and t in lst:
                        lst.remove(t)
                        if not lst:
                            del self._edge_tris[key]
            tri = [a if x == b else x for x in (i, j, k)]
            self.tris[t] = tri
            for key in (edge_key(tri[0], tri[1]), edge_key(tri[1], tri[2]),
                        edge_key(tri[2], tri[0])):
                if a in key:
                    lst = self._edge_tris.setdefault(key, [])
                    if t not in lst:
                        lst.append(t)
            self._vertex_tris[b].remove(t)
            self._vertex_tris[a].append(t)

        self.vertices[a] = keep_pos
        self.v_alive[b] = False
        self._vertex_tris[b] = []
        # orphan cleanup around the removed triangles
        for t in dead:
            for x in opposing | {a}:
                if not self._vertex_tris[x]:
                    self.v_alive[x] = False
        self.constraints.on_collapse(e, removed=b, survivor=a)
        self.generation += 1
        return CollapseResult(survivor=a, removed=dead, rewired=rewired)

    def flip_edge(self, e):
        """Re-diagonalize the two triangles of interior edge e in place.

        Returns the EdgeKey of the new diagonal. Triangle ids are reused.
        """
        ts = self._edge_tris.get(e)
        if not ts:
            raise InvalidEdgeError("edge %s is not live" % (e,))
        if len(ts) != 2:
            raise TopologyError("cannot flip boundary edge %s" % (e,),
                                code="boundary-edge")
        t1, t2 = ts
        a, b = e
        if not self._directed_in(t1, a, b):
            t1, t2 = t2, t1
        # t1 traverses a->b with opposite c; t2 traverses b->a with opposite d
        c = [int(x) for x in self.tris[t1] if int(x) not in e][0]
        d = [int(x) for x in self.tris[t2] if int(x) not in e][0]
        new_e = edge_key(c, d)
        if new_e in self._edge_tris:
            raise TopologyError("flip would duplicate edge %s" % (new_e,),
                                code="duplicate-edge")
        va, vb, vc, vd = (self.vertices[x] for x in (a, b, c, d))
        n_old = np.cross(vb - va, vc - va) + np.cross(va - vb, vd - vb)
        for tri in ((va, vd, vc), (vd, vb, vc)):
            n_new = np.cross(tri[1] - tri[0], tri[2] - tri[0])
            if np.linalg.norm(n_new) == 0.0 or np.dot(n_new, n_old) <= 0.0:
                raise GeometryError("flip of %s inverts a triangle" % (e,),
                                    code="inverted")
        # rewire in place: t1 := (a,d,c), t2 := (d,b,c)
        del self._edge_tris[e]
        kbc = edge_key(b, c)
        lst = self._edge_tris[kbc]
        lst[lst.index(t1)] = t2
        kad = edge_key(a, d)
        lst = self._edge_tris[kad]
        lst[lst.index(t2)] = t1
        self._edge_tris[new_e] = [t1, t2]
        self.tris[t1] = (a, d, c)
        self.tris[t2] = (d, b, c)
        self._vertex_tris[b].remove(t1)
        self._vertex_tris[d].append(t1)
        self._vertex_tris[a].remove(t2)
        self._vertex_tris[c].append(t2)
        self.generation += 1
        return new_e

    # -- boundary and topology queries --------------------------------------

    def _boundary_successor(self, u, v, t):
        """Next directed boundary edge after u->v (owned by t), staying
        within the triangle fan at v so bowties are handled."""
        while True:
            w = [int(x) for x in self.tris[t] if int(x) not in (u, v)][0]
            key = edge_key(v, w)
            ts = self._edge_tris[key]
            if len(ts) == 1:
                return v, w, t
            t = ts[0] if ts[1] == t else ts[1]
            u = w

    def boundary_loops(self, source=None):
        """All boundary loops, each ordered with the interior to the left.

        Every boundary edge appears in exactly one loop; bowtie vertices may
        appear in several loops (or twice in one).
        """
        directed = {}
        for e, ts in self._edge_tris.items():
            if len(ts) != 1:
                continue
            t = ts[0]
            a, b = e
            if self._directed_in(t, a, b):
                directed[(a, b)] = t
            else:
                directed[(b, a)] = t
        loops = []
        seen = set()
        for start in sorted(directed):
            if start in seen:
                continue
            u, v = start
            t = directed[start]
            cycle = [u]
            seen.add((u, v))
            while True:
                nu, nv, nt = self._boundary_successor(u, v, t)
                if (nu, nv) == start:
                    break
                cycle.append(nu)
                seen.add((nu, nv))
                u, v, t = nu, nv, directed[(nu, nv)]
            # canonical start at smallest vertex id
            k = cycle.index(min(cycle))
            cycle = cycle[k:] + cycle[:k]
            loops.append(BoundaryLoop(mesh=self, vertices=cycle, source=source))
        return loops

    def is_bowtie(self, v) -> bool:
        """True if the live triangles at v form more than one edge-connected
        fan."""
        ts = self._vertex_tris[v]
        if len(ts) <= 1:
            return False
        remaining = set(ts)
        stack = [next(iter(remaining))]
        remaining.discard(stack[0])
        while stack:
            t = stack.pop()
            i, j, k = (int(x) for x in self.tris[t])
            for a, b in ((i, j), (j, k), (k, i)):
                if v not in (a, b):
                    continue
                for t2 in self._edge_tris[edge_key(a, b)]:
                    if t2 in remaining:
                        remaining.discard(t2)
                        stack.append(t2)
        return bool(remaining)

    def one_ring(self, v):
        """(vertex ids, triangle ids) immediately incident to v."""
        ts = sorted(self._vertex_tris[v])
        vs = sorted(self.neighbors(v))
        return vs, ts

    def euler_characteristic(self) -> int:
        return self.n_vertices - len(self._edge_tris) + self.n_triangles

    def connected_components(self, tri_ids=None):
        """Edge-connected components of live triangles, as sorted id arrays."""
        if tri_ids is None:
            tri_ids = self.live_triangles()
        pool = set(int(t) for t in tri_ids)
        comps = []
        while pool:
            seed = min(pool)
            comp = [seed]
            pool.discard(seed)
            stack = [seed]
            while stack:
                t = stack.pop()
                for e in self.tri_edges(t):
                    for t2 in self._edge_tris[e]:
                        if t2 in pool:
                            pool.discard(t2)
                            comp.append(t2)
                            stack.append(t2)
            comps.append(np.asarray(sorted(comp), dtype=np.int64))
        return comps

    def validate(self):
        """Diagnostics list; empty means the mesh is consistent."""
        issues = []
        live = self.live_triangles()
        for t in live:
            i, j, k = (int(x) for x in self.tris[t])
            if i == j or j == k or k == i:
                issues.append("degenerate triangle %d (%d,%d,%d)" % (t, i, j, k))
                continue
            for v in (i, j, k):
                if v >= self._nv or not self.v_alive[v]:
                    issues.append("triangle %d references dead vertex %d" % (t, v))
        # rebuild adjacency and compare
        rebuilt = {}
        for t in live:
            i, j, k = (int(x) for x in self.tris[t])
            for a, b in ((i, j), (j, k), (k, i)):
                rebuilt.setdefault(edge_key(a, b), []).append(int(t))
        for e, ts in rebuilt.items():
            if len(ts) > 2:
                issues.append("non-manifold edge %s with %d triangles" % (e, len(ts)))
            elif len(ts) == 2:
                a, b = e
                d0 = self._directed_in(ts[0], a, b)
                d1 = self._directed_in(ts[1], a, b)
                if d0 == d1:
                    issues.append("orientation conflict across edge %s" % (e,))
        mine = {e: sorted(ts) for e, ts in self._edge_tris.items()}
        theirs = {e: sorted(ts) for e, ts in rebuilt.items()}
        if mine != theirs:
            drift = set(mine) ^ set(theirs)
            issues.append("adjacency drift on %d edges" % max(len(drift), 1))
        for v in self.live_vertices():
            for t in self._vertex_tris[v]:
                if not self.t_alive[t]:
                    issues.append("vertex %d lists dead triangle %d" % (v, t))
        return issues

    # -- whole-mesh helpers --------------------------------------------------

    def copy(self):
        m = TriMesh()
        m.vertices = self.vertices[: self._nv].copy()
        m.tris = self.tris[: self._nt].copy()
        m.v_alive = self.v_alive[: self._nv].copy()
        m.t_alive = self.t_alive[: self._nt].copy()
        m._nv = self._nv
        m._nt = self._nt
        m._edge_tris = {e: list(ts) for e, ts in self._edge_tris.items()}
        m._vertex_tris = [list(ts) for ts in self._vertex_tris]
        m.generation = self.generation
        m.constraints = self.constraints.copy()
        return m

    def append_mesh(self, other):
        """Append another mesh's live elements; returns (vmap, tmap) arrays
        mapping the other mesh's ids into this mesh."""
        vmap = np.full(other._nv, -1, dtype=np.int64)
        tmap = np.full(other._nt, -1, dtype=np.int64)
        for v in other.live_vertices():
            vmap[v] = self.add_vertex(other.vertices[v])
        for t in other.live_triangles():
            i, j, k = (vmap[int(x)] for x in other.tris[t])
            tmap[t] = self.add_triangle(int(i), int(j), int(k))
        merged = other.constraints.remapped(vmap)
        pl_off = len(self.constraints.polylines)
        self.constraints.polylines.extend(merged.polylines)
        tgt_map = {}
        for tid, tgt in merged.surface_targets.items():
            tgt_map[tid] = self.constraints.add_surface_target(tgt)
        for e, pid in merged.feature_edges.items():
            self.constraints.add_feature_edge(e, None if pid is None else pid + pl_off)
        for v in merged._bindings:
            bind = merged._bindings[v]
            if bind.kind == "polyline":
                bind = VertexBinding("polyline", bind.ref + pl_off)
            elif bind.kind == "surface":
                bind = VertexBinding("surface", tgt_map[bind.ref])
            self.constraints.set_binding(v, bind)
        return vmap, tmap

    def compacted(self):
        """Dense copy without dead slots; returns (mesh, vmap, tmap)."""
        m = TriMesh()
        vids = self.live_vertices()
        # drop vertices not referenced by any live triangle
        used = np.zeros(self._nv, dtype=bool)
        live = self.live_triangles()
        for t in live:
            used[self.tris[t]] = True
        vids = np.nonzero(used & self.v_alive[: self._nv])[0]
        vmap = np.full(self._nv, -1, dtype=np.int64)
        vmap[vids] = np.arange(len(vids))
        tmap = np.full(self._nt, -1, dtype=np.int64)
        tmap[live] = np.arange(len(live))
        tris = vmap[self.tris[live]]
        m2 = TriMesh.from_arrays(self.vertices[vids], tris)
        m2.constraints = self.constraints.remapped(vmap)
        return m2, vmap, tmap

    def volume(self) -> float:
        """Signed volume by the divergence theorem (closed, oriented mesh)."""
        ids = self.live_triangles()
        if len(ids) == 0:
            return 0.0
        p0, p1, p2 = self.tri_corners(ids)
        return float(np.einsum("ij,ij->i", p0, np.cross(p1, p2)).sum() / 6.0)
