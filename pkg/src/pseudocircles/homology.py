"""Mod-2 cycle space of an embedded graph.

Edge sets are packed into integers, one bit per edge id.  A closed walk
is a boundary exactly when its bit vector lies in the span of the face
boundary vectors; every other closed walk stays connected after the
surface is cut along it.  The span is kept in row echelon form, so
membership is a handful of xors.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Callable, Iterable

from pseudocircles.embedding import EmbeddedGraph


@dataclass(frozen=True)
class Trail:
    """Walk that never repeats an edge; may repeat vertices.

    An explicit start vertex keeps zero-length trails expressible.
    """

    start: int
    darts: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.darts)


def trail_end(g: EmbeddedGraph, t: Trail) -> int:
    return g.dart_head(t.darts[-1]) if t.darts else t.start


def reverse_trail(g: EmbeddedGraph, t: Trail) -> Trail:
    return Trail(trail_end(g, t), tuple(d ^ 1 for d in reversed(t.darts)))


def validate_trail(g: EmbeddedGraph, t: Trail) -> None:
    if not 0 <= t.start < g.vertex_count:
        raise ValueError(f"trail start {t.start} out of range")
    at = t.start
    used = set()
    for d in t.darts:
        if g.dart_tail(d) != at:
            raise ValueError(f"dart {d} does not continue the trail at {at}")
        if d >> 1 in used:
            raise ValueError(f"edge {d >> 1} repeated along the trail")
        used.add(d >> 1)
        at = g.dart_head(d)


def chain_vector(darts: Iterable[int]) -> int:
    """Bit vector of the edges covered an odd number of times."""
    v = 0
    for d in darts:
        v ^= 1 << (d >> 1)
    return v


def _reduce(vec: int, rows: tuple[int, ...]) -> int:
    for r in rows:
        lead = 1 << (r.bit_length() - 1)
        if vec & lead:
            vec ^= r
    return vec


_basis_cache: "weakref.WeakKeyDictionary[EmbeddedGraph, tuple[int, ...]]" = (
    weakref.WeakKeyDictionary()
)


def boundary_basis(g: EmbeddedGraph) -> tuple[int, ...]:
    """Row echelon basis of the face boundary space.

    On a connected host its size is one less than the face count.
    """
    cached = _basis_cache.get(g)
    if cached is not None:
        return cached
    rows: list[int] = []
    for w in g.facial_walks():
        vec = _reduce(chain_vector(w.darts), tuple(rows))
        if vec:
            rows.append(vec)
            rows.sort(reverse=True)
    basis = tuple(rows)
    _basis_cache[g] = basis
    return basis


def is_nonseparating(g: EmbeddedGraph, vec: int) -> bool:
    """Whether cutting along the given edge chain leaves one piece.

    Boundaries, the zero chain included, separate; everything outside
    the span of the face boundaries does not.
    """
    return _reduce(vec, boundary_basis(g)) != 0


def find_nonseparating_cycle(g: EmbeddedGraph) -> tuple[int, ...]:
    """Some simple non-separating cycle, as a closed dart sequence.

    Scans the fundamental cycles of a breadth-first spanning tree grown
    from vertex 0, taking edges in increasing id order, and returns the
    first non-separating one.  Raises if the surface is a sphere, where
    none exists.
    """
    if not g.is_connected():
        raise ValueError("host must be connected")
    parent_dart: dict[int, int] = {0: -1}
    tree_edges: set[int] = set()
    queue = [0]
    while queue:
        x = queue.pop(0)
        for d in sorted(g.rotations[x]):
            y = g.dart_head(d)
            if y not in parent_dart:
                parent_dart[y] = d
                tree_edges.add(d >> 1)
                queue.append(y)

    def path_from_root(v: int) -> list[int]:
        darts = []
        while parent_dart[v] != -1:
            d = parent_dart[v]
            darts.append(d)
            v = g.dart_tail(d)
        darts.reverse()
        return darts

    for e in range(len(g.edges)):
        if e in tree_edges:
            continue
        a, b = g.edges[e]
        pa = path_from_root(a)
        pb = path_from_root(b)
        shared = 0
        while shared < len(pa) and shared < len(pb) and pa[shared] == pb[shared]:
            shared += 1
        cycle = (
            tuple(d ^ 1 for d in reversed(pa[shared:]))
            + tuple(pb[shared:])
            + (2 * e + 1,)
        )
        if is_nonseparating(g, chain_vector(cycle)):
            return cycle
    raise ValueError("graph has no non-separating cycle")


def _closed_walk_check(g: EmbeddedGraph, darts: tuple[int, ...]) -> None:
    if not darts:
        raise ValueError("empty walk")
    for i, d in enumerate(darts):
        if g.dart_head(d) != g.dart_tail(darts[(i + 1) % len(darts)]):
            raise ValueError(f"walk breaks after position {i}")


def nonseparating_subcycle(
    g: EmbeddedGraph, walk: tuple[int, ...]
) -> tuple[int, ...]:
    """Simple non-separating cycle inside a non-separating closed walk.

    Splits the walk at a repeated vertex; one of the two pieces must
    again be non-separating, since boundaries are closed under sums.
    """
    walk = tuple(walk)
    _closed_walk_check(g, walk)
    if not is_nonseparating(g, chain_vector(walk)):
        raise ValueError("walk is a boundary, no such subcycle")
    while True:
        tails = [g.dart_tail(d) for d in walk]
        first_at: dict[int, int] = {}
        split = None
        for j, v in enumerate(tails):
            if v in first_at:
                split = (first_at[v], j)
                break
            first_at[v] = j
        if split is None:
            return walk
        i, j = split
        inner = walk[i:j]
        outer = walk[:i] + walk[j:]
        if inner and is_nonseparating(g, chain_vector(inner)):
            walk = inner
        else:
            walk = outer


def three_trail_select(
    g: EmbeddedGraph,
    t1: Trail,
    t2: Trail,
    t3: Trail,
    rank: Callable[[tuple[int, ...]], int] | None = None,
) -> tuple[int, ...]:
    """Reroute a non-separating closed walk through a third trail.

    All three trails must share both endpoints and t1 joined to the
    reverse of t2 must be non-separating.  Then at least one of (t1,
    reverse t3) and (t3, reverse t2) is non-separating, because their
    chain vectors sum to the original.  Returns the chosen closed walk;
    with both usable, a rank function picks the smaller, ties and the
    default going to the first.
    """
    if len({t1.start, t2.start, t3.start}) != 1:
        raise ValueError("trails must share their start")
    if len({trail_end(g, t1), trail_end(g, t2), trail_end(g, t3)}) != 1:
        raise ValueError("trails must share their end")
    base = t1.darts + reverse_trail(g, t2).darts
    if not is_nonseparating(g, chain_vector(base)):
        raise ValueError("the walk being rerouted must be non-separating")
    first = t1.darts + reverse_trail(g, t3).darts
    second = t3.darts + reverse_trail(g, t2).darts
    usable = [w for w in (first, second) if is_nonseparating(g, chain_vector(w))]
    assert usable, "chain additivity guarantees a non-separating reroute"
    if len(usable) == 2 and rank is not None and rank(second) < rank(first):
        return second
    return usable[0]
