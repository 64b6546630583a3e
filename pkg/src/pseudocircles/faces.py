"""Face structure of an edge subgraph drawn inside a host embedding.

Deleting the host edges outside the subgraph merges host faces into
regions.  Each region, cut along the subgraph, is a compact surface
whose boundary circles are facial walks of the subgraph; its genus and
the number of its boundary pieces drive everything the witness
construction does.  Genus and boundary counts are recovered from an
exact cell count, so all arithmetic here is integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from pseudocircles.embedding import (
    EmbeddedGraph,
    FacialWalk,
    subgraph_facial_walks,
    subgraph_genus,
    subgraph_vertices,
)


@dataclass(frozen=True)
class Face:
    """One region of the host left free by the subgraph.

    walks are the positive-length subgraph walks bounding the region,
    punctures the isolated subgraph vertices inside it.  degeneracy is
    the number of boundary pieces minus one, so a disk, a handle, or
    any region met along a single circle all have degeneracy zero.
    """

    walks: tuple[FacialWalk, ...]
    genus: int
    degeneracy: int
    host_faces: tuple[int, ...]
    interior_edges: tuple[int, ...]
    interior_vertices: tuple[int, ...]
    punctures: tuple[int, ...]

    @property
    def boundary_pieces(self) -> int:
        return len(self.walks) + len(self.punctures)


def face_structure(
    g: EmbeddedGraph,
    keep: Iterable[int],
    extra_vertices: Iterable[int] = (),
) -> tuple[Face, ...]:
    """Faces of the subgraph on the kept edges, inside the host g.

    extra_vertices join the subgraph as vertices even when none of
    their edges are kept; each such vertex punctures the region it lies
    in.  Regions are ordered by their least host face index.
    """
    kept = frozenset(keep)
    extras = frozenset(extra_vertices)
    if not kept and not extras:
        raise ValueError("subgraph has no edges and no vertices")
    if not g.edges:
        raise ValueError("host has no edges, so no faces to merge")
    for e in kept:
        if not 0 <= e < len(g.edges):
            raise ValueError(f"kept edge {e} out of range")
    for v in extras:
        if not 0 <= v < g.vertex_count:
            raise ValueError(f"extra vertex {v} out of range")
        if not g.rotations[v]:
            raise ValueError(f"extra vertex {v} is isolated in the host")

    host_walks = g.facial_walks()
    parent = list(range(len(host_walks)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    deleted = [e for e in range(len(g.edges)) if e not in kept]
    for e in deleted:
        a = find(g.face_of_dart(2 * e))
        b = find(g.face_of_dart(2 * e + 1))
        if a != b:
            parent[a] = b

    sub_verts = subgraph_vertices(g, kept) | extras

    def region_at_vertex(v: int) -> int:
        # with every edge at v deleted, all faces around v are glued
        return find(g.face_of_dart(g.rotations[v][0]))

    host_faces: dict[int, list[int]] = {}
    for i in range(len(host_walks)):
        host_faces.setdefault(find(i), []).append(i)
    interior_edges: dict[int, list[int]] = {r: [] for r in host_faces}
    for e in deleted:
        interior_edges[find(g.face_of_dart(2 * e))].append(e)
    interior_vertices: dict[int, list[int]] = {r: [] for r in host_faces}
    for v in range(g.vertex_count):
        if v not in sub_verts:
            if not g.rotations[v]:
                raise ValueError(f"host vertex {v} is isolated")
            interior_vertices[region_at_vertex(v)].append(v)
    punctures: dict[int, list[int]] = {r: [] for r in host_faces}
    for v in sorted(extras):
        if all(d >> 1 not in kept for d in g.rotations[v]):
            punctures[region_at_vertex(v)].append(v)
    walks: dict[int, list[FacialWalk]] = {r: [] for r in host_faces}
    for w in subgraph_facial_walks(g, kept):
        walks[find(g.face_of_dart(w.darts[0]))].append(w)

    faces = []
    for r in sorted(host_faces, key=lambda r: min(host_faces[r])):
        n_inner = len(interior_vertices[r]) + len(punctures[r])
        chi = n_inner - len(interior_edges[r]) + len(host_faces[r])
        b = len(walks[r])
        rest = 2 - b - chi
        assert rest % 2 == 0, "region surface has odd Euler characteristic"
        genus = rest // 2
        assert genus >= 0, "region closed off with negative genus"
        pieces = b + len(punctures[r])
        assert pieces >= 1, "region with no boundary and no puncture"
        faces.append(
            Face(
                walks=tuple(sorted(walks[r], key=lambda w: w.darts)),
                genus=genus,
                degeneracy=pieces - 1,
                host_faces=tuple(sorted(host_faces[r])),
                interior_edges=tuple(sorted(interior_edges[r])),
                interior_vertices=tuple(sorted(interior_vertices[r])),
                punctures=tuple(punctures[r]),
            )
        )
    return tuple(faces)


def euler_defect(
    g: EmbeddedGraph,
    keep: Iterable[int],
    extra_vertices: Iterable[int] = (),
) -> int:
    """Host genus minus subgraph genus minus the face contributions.

    Zero exactly when the genus of the host splits into the genus of
    the subgraph plus, per face, its genus and degeneracy.  The kept
    subgraph must be connected; a single extra vertex with no kept
    edges stands in for it as a genus-zero subgraph.
    """
    kept = frozenset(keep)
    extras = frozenset(extra_vertices)
    if kept:
        if not extras <= subgraph_vertices(g, kept):
            raise ValueError("extra vertices must lie on the kept edges")
        g_sub = subgraph_genus(g, kept)
    else:
        if len(extras) != 1:
            raise ValueError("without edges the subgraph must be one vertex")
        g_sub = 0
    faces = face_structure(g, kept, extras)
    return g.genus() - g_sub - sum(f.genus + f.degeneracy for f in faces)


def find_degenerate_face(faces: Iterable[Face]) -> Face | None:
    """First face met along more than one boundary piece, if any."""
    for f in faces:
        if f.degeneracy > 0:
            return f
    return None


def find_positive_genus_face(faces: Iterable[Face]) -> Face | None:
    """First face that is not a punctured sphere, if any."""
    for f in faces:
        if f.genus > 0:
            return f
    return None
