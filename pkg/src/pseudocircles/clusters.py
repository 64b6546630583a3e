"""Clusters: a host embedding whose edges are dealt out to colored
members around a shared anchor.

The anchor is one of three things: a distinguished edge color, a set of
edges outside every member (color -1), or a bare vertex.  Every member
must be connected and must touch the anchor.  The host graph IS the
union of anchor and members, so its genus is the genus of the union.

The text format is line based:

    V <vertices>
    E <edges>
    edge <id> <tail> <head> <color>
    rot <vertex> <edge>.<end> ...
    anchor <color>            or: anchor vertex <v>

Edge and rot lines appear in id order, rotations are stored with their
least dart first, and '#' starts a comment.  Serializing what was
parsed reproduces a canonical file byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from pseudocircles.embedding import EmbeddedGraph, subgraph_components
from pseudocircles.homology import Trail


@dataclass(frozen=True)
class Cluster:
    """Host embedding plus an edge coloring and an anchor designation.

    colors[e] is the member owning edge e, or -1 for an edge of a
    standalone anchor.  Exactly one of anchor_color and anchor_vertex
    is set; anchor_color may name a member or be -1.
    """

    host: EmbeddedGraph
    colors: tuple[int, ...]
    anchor_color: int | None = None
    anchor_vertex: int | None = None

    def members(self) -> dict[int, frozenset[int]]:
        out: dict[int, set[int]] = {}
        for e, c in enumerate(self.colors):
            if c >= 0:
                out.setdefault(c, set()).add(e)
        return {c: frozenset(s) for c, s in sorted(out.items())}

    def anchor_edges(self) -> frozenset[int]:
        if self.anchor_vertex is not None:
            return frozenset()
        if self.anchor_color == -1:
            return frozenset(
                e for e, c in enumerate(self.colors) if c == -1
            )
        return frozenset(
            e for e, c in enumerate(self.colors) if c == self.anchor_color
        )

    def anchor_vertices(self) -> frozenset[int]:
        if self.anchor_vertex is not None:
            return frozenset({self.anchor_vertex})
        return frozenset(
            v for e in self.anchor_edges() for v in self.host.edges[e]
        )

    def color_of(self, edge: int) -> int:
        return self.colors[edge]

    def edges_of_colors(self, colors: Iterable[int]) -> frozenset[int]:
        wanted = set(colors)
        return frozenset(
            e for e, c in enumerate(self.colors) if c in wanted
        )

    def first_violation(self) -> str | None:
        host_bad = self.host.first_violation()
        if host_bad is not None:
            return f"host: {host_bad}"
        if len(self.colors) != len(self.host.edges):
            return "one color per edge required"
        if (self.anchor_color is None) == (self.anchor_vertex is None):
            return "exactly one anchor designation required"
        if self.anchor_vertex is not None:
            if not 0 <= self.anchor_vertex < self.host.vertex_count:
                return f"anchor vertex {self.anchor_vertex} out of range"
            if any(c == -1 for c in self.colors):
                return "vertex anchor leaves no room for color -1 edges"
        else:
            if self.anchor_color != -1 and self.anchor_color not in set(
                self.colors
            ):
                return f"anchor color {self.anchor_color} has no edges"
            if self.anchor_color != -1 and any(
                c == -1 for c in self.colors
            ):
                return "edges colored -1 but the anchor is a member"
        members = self.members()
        if not members and self.anchor_color is not None:
            if self.anchor_color == -1 and not self.anchor_edges():
                return "cluster has no edges at all"
        for c, edges in members.items():
            if len(subgraph_components(self.host, edges)) != 1:
                return f"member {c} is not connected"
        anchor = self.anchor_edges()
        if anchor and len(subgraph_components(self.host, anchor)) != 1:
            return "anchor is not connected"
        touch = self.anchor_vertices()
        if not touch:
            return "anchor is empty"
        for c, edges in members.items():
            if self.anchor_color == c:
                continue
            verts = {v for e in edges for v in self.host.edges[e]}
            if not verts & touch:
                return f"member {c} never meets the anchor"
        return None

    def validate(self) -> None:
        msg = self.first_violation()
        if msg is not None:
            raise ValueError(msg)


def canonical_decomposition(
    c: Cluster, walk: Iterable[int]
) -> tuple[Trail, ...]:
    """Maximal single-color runs of a closed walk, in a fixed phase.

    The walk is rotated to start at a color change whose first dart is
    least; a walk in one color starts at its least dart instead.
    """
    darts = tuple(walk)
    if not darts:
        raise ValueError("empty walk has no decomposition")
    g = c.host
    n = len(darts)
    cols = [c.colors[d >> 1] for d in darts]
    breaks = [i for i in range(n) if cols[i] != cols[i - 1]]
    if breaks:
        i0 = min(breaks, key=lambda i: darts[i])
    else:
        i0 = min(range(n), key=lambda i: darts[i])
    darts = darts[i0:] + darts[:i0]
    cols = cols[i0:] + cols[:i0]
    trails: list[Trail] = []
    run_start = 0
    for i in range(1, n + 1):
        if i == n or cols[i] != cols[i - 1]:
            piece = darts[run_start:i]
            trails.append(Trail(g.dart_tail(piece[0]), piece))
            run_start = i
    return tuple(trails)


def cycle_rank(c: Cluster, walk: Iterable[int]) -> int:
    """Number of color runs around the closed walk."""
    return len(canonical_decomposition(c, walk))


def merge_into_anchor(c: Cluster, colors: Iterable[int]) -> Cluster:
    """Fold the named members into the anchor.

    A color anchor must be named along with the members it absorbs; a
    vertex anchor absorbing members turns into an edge anchor.  Naming
    nothing returns the cluster unchanged.
    """
    wanted = set(colors)
    unknown = wanted - set(c.members())
    if unknown:
        raise ValueError(f"no members with colors {sorted(unknown)}")
    if not wanted:
        return c
    if c.anchor_color is not None and c.anchor_color >= 0:
        if c.anchor_color not in wanted:
            raise ValueError("a member anchor must be merged with itself")
        target = c.anchor_color
        new_colors = tuple(
            target if x in wanted else x for x in c.colors
        )
        return Cluster(c.host, new_colors, anchor_color=target)
    new_colors = tuple(-1 if x in wanted else x for x in c.colors)
    return Cluster(c.host, new_colors, anchor_color=-1)


def _spell_dart(d: int) -> str:
    return f"{d >> 1}.{d & 1}"


def _read_dart(token: str, n_edges: int) -> int:
    parts = token.split(".")
    if len(parts) != 2 or not parts[0].isdigit() or parts[1] not in ("0", "1"):
        raise ValueError(f"bad dart {token!r}")
    e = int(parts[0])
    if not 0 <= e < n_edges:
        raise ValueError(f"dart {token!r} names an edge out of range")
    return 2 * e + int(parts[1])


def serialize_cluster(c: Cluster) -> str:
    """Canonical text form; see the module docstring for the layout."""
    lines = [f"V {c.host.vertex_count}", f"E {len(c.host.edges)}"]
    for e, (u, v) in enumerate(c.host.edges):
        lines.append(f"edge {e} {u} {v} {c.colors[e]}")
    for v, rot in enumerate(c.host.rotations):
        if rot:
            k = min(range(len(rot)), key=rot.__getitem__)
            rot = rot[k:] + rot[:k]
        lines.append(" ".join(["rot", str(v), *map(_spell_dart, rot)]))
    if c.anchor_vertex is not None:
        lines.append(f"anchor vertex {c.anchor_vertex}")
    else:
        lines.append(f"anchor {c.anchor_color}")
    return "".join(line + "\n" for line in lines)


def parse_cluster(text: str) -> Cluster:
    """Inverse of serialize_cluster; checks layout, not cluster validity."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if len(rows) < 2 or rows[0][0] != "V" or rows[1][0] != "E":
        raise ValueError("file must open with V and E counts")
    try:
        n_v = int(rows[0][1])
        n_e = int(rows[1][1])
    except (IndexError, ValueError):
        raise ValueError("unreadable V or E count") from None
    at = 2
    edges: list[tuple[int, int]] = []
    colors: list[int] = []
    for e in range(n_e):
        if at >= len(rows) or rows[at][0] != "edge":
            raise ValueError(f"expected edge line {e}")
        row = rows[at]
        if len(row) != 5 or int(row[1]) != e:
            raise ValueError(f"edge line {e} malformed")
        u, v, col = int(row[2]), int(row[3]), int(row[4])
        if not (0 <= u < n_v and 0 <= v < n_v):
            raise ValueError(f"edge {e} endpoint out of range")
        if col < -1:
            raise ValueError(f"edge {e} color below -1")
        edges.append((u, v))
        colors.append(col)
        at += 1
    rotations: list[tuple[int, ...]] = []
    for v in range(n_v):
        if at >= len(rows) or rows[at][0] != "rot":
            raise ValueError(f"expected rot line for vertex {v}")
        row = rows[at]
        if len(row) < 2 or int(row[1]) != v:
            raise ValueError(f"rot line for vertex {v} malformed")
        rotations.append(tuple(_read_dart(t, n_e) for t in row[2:]))
        at += 1
    if at >= len(rows) or rows[at][0] != "anchor":
        raise ValueError("anchor line missing")
    row = rows[at]
    if len(row) == 3 and row[1] == "vertex":
        anchor = Cluster(
            EmbeddedGraph(n_v, edges, rotations),
            tuple(colors),
            anchor_vertex=int(row[2]),
        )
    elif len(row) == 2:
        anchor = Cluster(
            EmbeddedGraph(n_v, edges, rotations),
            tuple(colors),
            anchor_color=int(row[1]),
        )
    else:
        raise ValueError("anchor line malformed")
    if at + 1 != len(rows):
        raise ValueError("trailing content after the anchor line")
    bad = anchor.host.first_violation()
    if bad is not None:
        raise ValueError(f"host: {bad}")
    return anchor
