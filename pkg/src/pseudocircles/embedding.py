"""Combinatorial embeddings of multigraphs in closed orientable surfaces.

A multigraph together with a cyclic order of edge ends around every
vertex determines a unique cellular embedding in a closed orientable
surface.  This module stores that data, traces the facial walks,
computes the genus, and provides the editing operations the rest of the
package is built on.

Encoding.  Edge ends ("darts") are integers: edge e contributes dart
2*e at its first endpoint and 2*e + 1 at its second.  The partner of a
dart is obtained by flipping the lowest bit.  A rotation is the tuple
of darts around one vertex; the face successor of a dart d is the
rotation successor of twin(d) at the head of d.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def dart(edge: int, end: int) -> int:
    """Dart identifier for the given end (0 or 1) of an edge."""
    return 2 * edge + end


def twin(d: int) -> int:
    """The dart at the other end of the same edge."""
    return d ^ 1


def dart_edge(d: int) -> int:
    return d >> 1


def dart_end(d: int) -> int:
    return d & 1


@dataclass(frozen=True)
class FacialWalk:
    """One closed walk of the face tracing, rotated so its least dart is first."""

    darts: tuple[int, ...]

    @staticmethod
    def from_cycle(darts: Sequence[int]) -> "FacialWalk":
        k = min(range(len(darts)), key=darts.__getitem__)
        return FacialWalk(tuple(darts[k:]) + tuple(darts[:k]))

    def __len__(self) -> int:
        return len(self.darts)


class EmbeddedGraph:
    """Multigraph with a rotation system; loops and parallel edges allowed.

    Instances are treated as immutable: every editing operation returns
    a new graph.  Validation is separate from construction so malformed
    inputs can still be inspected.
    """

    __slots__ = (
        "vertex_count",
        "edges",
        "rotations",
        "_walks",
        "_face_of",
        "__weakref__",
    )

    def __init__(
        self,
        vertex_count: int,
        edges: Iterable[tuple[int, int]],
        rotations: Iterable[Sequence[int]],
    ) -> None:
        self.vertex_count = int(vertex_count)
        self.edges: tuple[tuple[int, int], ...] = tuple(
            (int(u), int(v)) for u, v in edges
        )
        self.rotations: tuple[tuple[int, ...], ...] = tuple(
            tuple(int(d) for d in rot) for rot in rotations
        )
        self._walks: tuple[FacialWalk, ...] | None = None
        self._face_of: dict[int, int] | None = None

    def __repr__(self) -> str:
        return (
            f"EmbeddedGraph(vertices={self.vertex_count}, "
            f"edges={len(self.edges)})"
        )

    def dart_tail(self, d: int) -> int:
        """Vertex the dart is attached to."""
        return self.edges[d >> 1][d & 1]

    def dart_head(self, d: int) -> int:
        """Vertex at the far end of the dart's edge."""
        return self.edges[d >> 1][1 - (d & 1)]

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def first_violation(self) -> str | None:
        """Description of the first well-formedness failure, or None."""
        if self.vertex_count < 0:
            return "negative vertex count"
        if len(self.rotations) != self.vertex_count:
            return (
                f"{len(self.rotations)} rotations given for "
                f"{self.vertex_count} vertices"
            )
        for e, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                return f"edge {e} has an endpoint out of range"
        n_darts = 2 * len(self.edges)
        at: dict[int, int] = {}
        for v, rot in enumerate(self.rotations):
            for d in rot:
                if not 0 <= d < n_darts:
                    return f"dart {d} at vertex {v} is out of range"
                if d in at:
                    return f"dart {d} appears more than once"
                at[d] = v
        for d in range(n_darts):
            home = self.edges[d >> 1][d & 1]
            if d not in at:
                return f"dart {d} missing from the rotation at vertex {home}"
            if at[d] != home:
                return f"dart {d} placed at vertex {at[d]}, expected {home}"
        return None

    def validate(self) -> None:
        msg = self.first_violation()
        if msg is not None:
            raise ValueError(msg)

    def facial_walks(self) -> tuple[FacialWalk, ...]:
        """All facial walks, each starting at its least dart, sorted."""
        if self._walks is None:
            n = 2 * len(self.edges)
            rot_next = [0] * n
            for rot in self.rotations:
                for i, d in enumerate(rot):
                    rot_next[d] = rot[(i + 1) % len(rot)]
            seen = [False] * n
            walks = []
            # orbits are disjoint, so scanning upward starts each walk at
            # its own least dart and yields the walks already sorted
            for start in range(n):
                if seen[start]:
                    continue
                walk = []
                d = start
                while not seen[d]:
                    seen[d] = True
                    walk.append(d)
                    d = rot_next[d ^ 1]
                walks.append(FacialWalk(tuple(walk)))
            self._walks = tuple(walks)
        return self._walks

    def face_of_dart(self, d: int) -> int:
        """Index into facial_walks() of the walk containing d."""
        if self._face_of is None:
            table: dict[int, int] = {}
            for i, w in enumerate(self.facial_walks()):
                for x in w.darts:
                    table[x] = i
            self._face_of = table
        return self._face_of[d]

    def is_connected(self) -> bool:
        if self.vertex_count <= 1:
            return True
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.vertex_count

    def genus(self) -> int:
        """Genus of the surface traced out by the rotation system.

        Defined for connected graphs only.  An edgeless vertex counts as
        a sphere.
        """
        if not self.is_connected():
            raise ValueError("genus is defined for connected graphs only")
        n_faces = len(self.facial_walks()) if self.edges else 1
        chi = self.vertex_count - len(self.edges) + n_faces
        assert chi % 2 == 0, "odd Euler characteristic on a closed surface"
        return (2 - chi) // 2


def sub_embedding(
    g: EmbeddedGraph, keep: Iterable[int]
) -> tuple[EmbeddedGraph, dict[int, int]]:
    """Embedding induced on an edge subset.

    Every host vertex is retained, including those left isolated.
    Returns the new graph and the map from new edge ids to host ids.
    """
    kept = sorted(set(keep))
    new_of = {e: i for i, e in enumerate(kept)}
    edges = tuple(g.edges[e] for e in kept)
    rotations = tuple(
        tuple(2 * new_of[d >> 1] + (d & 1) for d in rot if d >> 1 in new_of)
        for rot in g.rotations
    )
    return EmbeddedGraph(g.vertex_count, edges, rotations), {
        i: e for e, i in new_of.items()
    }


def subgraph_vertices(g: EmbeddedGraph, keep: Iterable[int]) -> frozenset[int]:
    """Endpoints of the kept edges."""
    return frozenset(v for e in keep for v in g.edges[e])


def _dart_positions(g: EmbeddedGraph) -> dict[int, tuple[int, int]]:
    pos: dict[int, tuple[int, int]] = {}
    for v, rot in enumerate(g.rotations):
        for i, d in enumerate(rot):
            pos[d] = (v, i)
    return pos


def subgraph_facial_walks(
    g: EmbeddedGraph, keep: Iterable[int]
) -> tuple[FacialWalk, ...]:
    """Facial walks of the edge subgraph, in host dart labels.

    After entering a vertex along d the walk leaves along the first kept
    dart after twin(d) in the rotation there, so no re-indexing of the
    host is involved.
    """
    kept = frozenset(keep)
    pos = _dart_positions(g)
    all_darts = sorted(d for e in kept for d in (2 * e, 2 * e + 1))

    def induced_next(d: int) -> int:
        v, i = pos[d ^ 1]
        rot = g.rotations[v]
        k = (i + 1) % len(rot)
        while rot[k] >> 1 not in kept:
            k = (k + 1) % len(rot)
        return rot[k]

    seen: set[int] = set()
    walks = []
    for start in all_darts:
        if start in seen:
            continue
        walk = []
        d = start
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = induced_next(d)
        walks.append(FacialWalk(tuple(walk)))
    return tuple(walks)


def subgraph_components(
    g: EmbeddedGraph, keep: Iterable[int]
) -> tuple[frozenset[int], ...]:
    """Connected components of the edge subgraph, as edge sets."""
    kept = sorted(set(keep))
    by_vertex: dict[int, list[int]] = {}
    for e in kept:
        for v in g.edges[e]:
            by_vertex.setdefault(v, []).append(e)
    comps = []
    unseen = set(kept)
    for seed in kept:
        if seed not in unseen:
            continue
        comp = {seed}
        unseen.discard(seed)
        stack = [seed]
        while stack:
            e = stack.pop()
            for v in g.edges[e]:
                for f in by_vertex[v]:
                    if f in unseen:
                        unseen.discard(f)
                        comp.add(f)
                        stack.append(f)
        comps.append(frozenset(comp))
    return tuple(comps)


def subgraph_genus(g: EmbeddedGraph, keep: Iterable[int]) -> int:
    """Genus of the surface the kept edges trace inside the host.

    The kept subgraph must be connected.
    """
    kept = frozenset(keep)
    if not kept:
        raise ValueError("genus of an empty edge set is undefined")
    if len(subgraph_components(g, kept)) != 1:
        raise ValueError("kept edges do not form a connected subgraph")
    n_v = len(subgraph_vertices(g, kept))
    n_w = len(subgraph_facial_walks(g, kept))
    chi = n_v - len(kept) + n_w
    assert chi % 2 == 0, "odd Euler characteristic on a closed surface"
    return (2 - chi) // 2


def add_path(
    g: EmbeddedGraph,
    end1: tuple[int, int],
    end2: tuple[int, int],
    length: int,
) -> tuple[EmbeddedGraph, tuple[int, ...]]:
    """Attach a path of the given edge count between two face corners.

    Each endpoint is (vertex, slot); the new dart is inserted before
    that slot of the vertex's current rotation, so the path lands in the
    corner just before it.  Both slots refer to the rotations as they
    are now, even when the two endpoints name the same vertex.  The
    length - 1 interior vertices are new.
    """
    if length < 1:
        raise ValueError("path length must be at least 1")
    for v, s in (end1, end2):
        if not 0 <= v < g.vertex_count:
            raise ValueError(f"vertex {v} out of range")
        if not 0 <= s < max(1, len(g.rotations[v])):
            raise ValueError(f"slot {s} out of range at vertex {v}")
    v1, s1 = end1
    v2, s2 = end2
    e0 = len(g.edges)
    n0 = g.vertex_count
    new_edge_ids = tuple(range(e0, e0 + length))
    chain = [v1, *range(n0, n0 + length - 1), v2]
    edges = list(g.edges)
    edges.extend((chain[i], chain[i + 1]) for i in range(length))
    pending: dict[int, list[tuple[int, int]]] = {}
    pending.setdefault(v1, []).append((s1, dart(e0, 0)))
    pending.setdefault(v2, []).append((s2, dart(e0 + length - 1, 1)))
    rots: list[tuple[int, ...]] = []
    for v in range(n0):
        rot = g.rotations[v]
        ins = pending.get(v, [])
        if not rot:
            rots.append(tuple(d for _, d in ins))
            continue
        parts: list[int] = []
        for i, old in enumerate(rot):
            parts.extend(d for s, d in ins if s == i)
            parts.append(old)
        rots.append(tuple(parts))
    for i in range(length - 1):
        rots.append((dart(e0 + i, 1), dart(e0 + i + 1, 0)))
    return EmbeddedGraph(n0 + length - 1, edges, rots), new_edge_ids


def delete_edge_pruning(
    g: EmbeddedGraph, e: int
) -> tuple[EmbeddedGraph, dict[int, int], dict[int, int]]:
    """Delete edge e, also dropping any endpoint whose degree was 1.

    Returns the new graph and the vertex and edge maps from new ids to
    old ones.
    """
    if not 0 <= e < len(g.edges):
        raise ValueError(f"edge {e} out of range")
    drop = {w for w in g.edges[e] if len(g.rotations[w]) == 1}
    keep_v = [w for w in range(g.vertex_count) if w not in drop]
    v_new = {w: i for i, w in enumerate(keep_v)}
    keep_e = [f for f in range(len(g.edges)) if f != e]
    e_new = {f: i for i, f in enumerate(keep_e)}
    edges = tuple(
        (v_new[g.edges[f][0]], v_new[g.edges[f][1]]) for f in keep_e
    )
    rotations = tuple(
        tuple(2 * e_new[d >> 1] + (d & 1) for d in g.rotations[w] if d >> 1 != e)
        for w in keep_v
    )
    g2 = EmbeddedGraph(len(keep_v), edges, rotations)
    return g2, {i: w for w, i in v_new.items()}, {i: f for f, i in e_new.items()}


def corners_along_walk(
    g: EmbeddedGraph,
    walk: FacialWalk,
    interior_edges: Iterable[int],
) -> list[list[int]]:
    """Darts inside each corner of the walk, in visit order.

    Visit i owns the corner at head(walk[i]) running from just after
    twin(walk[i]) to walk[i + 1] in the rotation there.  Every dart in
    that span must belong to interior_edges; anything else means the
    walk does not bound the claimed face.
    """
    interior = frozenset(interior_edges)
    ds = walk.darts
    if not ds:
        raise ValueError("empty walk has no corners")
    if any(d >> 1 in interior for d in ds):
        raise ValueError("walk edges cannot be interior")
    out: list[list[int]] = []
    for i, d in enumerate(ds):
        x = g.dart_head(d)
        nxt = ds[(i + 1) % len(ds)]
        if g.dart_tail(nxt) != x:
            raise ValueError(f"walk is not closed at visit {i}")
        rot = g.rotations[x]
        k = (rot.index(d ^ 1) + 1) % len(rot)
        corner: list[int] = []
        while rot[k] != nxt:
            dd = rot[k]
            if dd >> 1 not in interior:
                raise ValueError(
                    f"dart {dd} at vertex {x} is neither interior nor the "
                    f"walk successor"
                )
            corner.append(dd)
            k = (k + 1) % len(rot)
        out.append(corner)
    return out


@dataclass(frozen=True)
class CollapsedFace:
    """A face interior turned into a closed surface by collapsing its
    boundary walk to a single point.

    new_vertex is the collapse point; vertex_map covers only the
    interior vertices, edge_map sends new edge ids to host ids.
    """

    graph: EmbeddedGraph
    new_vertex: int
    edge_map: dict[int, int]
    vertex_map: dict[int, int]


def contract_walk_to_point(
    g: EmbeddedGraph,
    boundary_walk: FacialWalk,
    interior_edges: Iterable[int],
) -> CollapsedFace:
    """Collapse a facial walk to one vertex, keeping the face interior.

    boundary_walk must bound a face of the subgraph it traces inside g,
    and interior_edges must be exactly the host edges drawn in that
    face.  The collapse point gets id 0; interior vertices follow in
    host order.  With no interior edges the result is a lone vertex.
    """
    interior = frozenset(interior_edges)
    corners = corners_along_walk(g, boundary_walk, interior)
    walk_vertices = {g.dart_tail(d) for d in boundary_walk.darts}
    int_verts = sorted(
        {v for e in interior for v in g.edges[e]} - walk_vertices
    )
    for v in int_verts:
        for d in g.rotations[v]:
            if d >> 1 not in interior:
                raise ValueError(
                    f"vertex {v} inside the face has a non-interior edge"
                )
    vid = {v: i + 1 for i, v in enumerate(int_verts)}
    kept = sorted(interior)
    eid = {e: i for i, e in enumerate(kept)}

    def map_dart(d: int) -> int:
        return 2 * eid[d >> 1] + (d & 1)

    def map_vert(v: int) -> int:
        return 0 if v in walk_vertices else vid[v]

    edges = tuple(
        (map_vert(g.edges[e][0]), map_vert(g.edges[e][1])) for e in kept
    )
    rots = [tuple(map_dart(d) for corner in corners for d in corner)]
    rots.extend(
        tuple(map_dart(d) for d in g.rotations[v]) for v in int_verts
    )
    graph = EmbeddedGraph(1 + len(int_verts), edges, rots)
    return CollapsedFace(
        graph,
        0,
        {i: e for e, i in eid.items()},
        {vid[v]: v for v in int_verts},
    )
