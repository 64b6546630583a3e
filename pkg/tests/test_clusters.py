"""Colored edge clusters: validity, trail decomposition, merging, file IO."""

from __future__ import annotations

import random

import pytest

from pseudocircles.embedding import EmbeddedGraph
from pseudocircles.clusters import (
    Cluster,
    canonical_decomposition,
    cycle_rank,
    merge_into_anchor,
    parse_cluster,
    serialize_cluster,
)


def torus_two_loops() -> Cluster:
    host = EmbeddedGraph(1, [(0, 0), (0, 0)], [(0, 2, 1, 3)])
    return Cluster(host, (-1, 0), anchor_color=-1)


def square_two_members() -> Cluster:
    host = EmbeddedGraph(
        4,
        [(0, 1), (1, 2), (2, 3), (3, 0)],
        [(0, 7), (1, 2), (3, 4), (5, 6)],
    )
    return Cluster(host, (0, 0, 1, 1), anchor_vertex=0)


def test_basic_cluster_accepted() -> None:
    c = torus_two_loops()
    assert c.first_violation() is None
    assert c.members() == {0: frozenset({1})}
    assert c.anchor_edges() == frozenset({0})
    assert c.anchor_vertices() == frozenset({0})


def test_vertex_anchor_accepted() -> None:
    c = square_two_members()
    c.validate()
    assert c.members() == {0: frozenset({0, 1}), 1: frozenset({2, 3})}
    assert c.anchor_edges() == frozenset()
    assert c.anchor_vertices() == frozenset({0})


def test_color_anchor_is_also_a_member() -> None:
    host = EmbeddedGraph(1, [(0, 0), (0, 0)], [(0, 2, 1, 3)])
    c = Cluster(host, (0, 1), anchor_color=0)
    c.validate()
    assert set(c.members()) == {0, 1}
    assert c.anchor_edges() == frozenset({0})


def test_disconnected_member_rejected() -> None:
    host = EmbeddedGraph(
        4,
        [(0, 1), (1, 2), (2, 3), (3, 0)],
        [(0, 7), (1, 2), (3, 4), (5, 6)],
    )
    c = Cluster(host, (-1, 0, 0, 0), anchor_color=-1)
    assert c.first_violation() is None
    bad = Cluster(host, (0, -1, 0, -1), anchor_color=-1)
    msg = bad.first_violation()
    assert msg is not None and "member" in msg


def test_member_missing_anchor_vertex_rejected() -> None:
    host = EmbeddedGraph(3, [(0, 1), (1, 2)], [(0,), (1, 2), (3,)])
    bad = Cluster(host, (0, 1), anchor_vertex=0)
    msg = bad.first_violation()
    assert msg is not None and "anchor" in msg


def test_member_missing_anchor_edge_contact_rejected() -> None:
    host = EmbeddedGraph(3, [(0, 1), (1, 2)], [(0,), (1, 2), (3,)])
    ok = Cluster(host, (-1, 0), anchor_color=-1)
    assert ok.first_violation() is None
    host2 = EmbeddedGraph(
        4, [(0, 1), (1, 2), (2, 3)], [(0,), (1, 2), (3, 4), (5,)]
    )
    bad = Cluster(host2, (-1, 0, 1), anchor_color=-1)
    msg = bad.first_violation()
    assert msg is not None and "anchor" in msg


def test_unassigned_edge_rejected() -> None:
    host = EmbeddedGraph(1, [(0, 0), (0, 0)], [(0, 2, 1, 3)])
    bad = Cluster(host, (-1, 0), anchor_color=0)
    assert bad.first_violation() is not None


def test_decomposition_two_runs() -> None:
    c = square_two_members()
    trails = canonical_decomposition(c, (0, 2, 4, 6))
    assert len(trails) == 2
    assert trails[0].start == 0
    assert trails[0].darts == (0, 2)
    assert trails[1].darts == (4, 6)
    assert cycle_rank(c, (0, 2, 4, 6)) == 2


def test_decomposition_single_color_starts_at_least_dart() -> None:
    host = EmbeddedGraph(
        4,
        [(0, 1), (1, 2), (2, 3), (3, 0)],
        [(0, 7), (1, 2), (3, 4), (5, 6)],
    )
    c = Cluster(host, (0, 0, 0, 0), anchor_vertex=0)
    trails = canonical_decomposition(c, (4, 6, 0, 2))
    assert len(trails) == 1
    assert trails[0].darts == (0, 2, 4, 6)
    assert cycle_rank(c, (4, 6, 0, 2)) == 1


def test_decomposition_rotation_invariance() -> None:
    c = square_two_members()
    rotations = [(0, 2, 4, 6), (2, 4, 6, 0), (4, 6, 0, 2), (6, 0, 2, 4)]
    seen = {tuple(t.darts for t in canonical_decomposition(c, w)) for w in rotations}
    assert len(seen) == 1


def test_merge_into_vertex_anchor_grows_edge_anchor() -> None:
    c = square_two_members()
    merged = merge_into_anchor(c, {1})
    merged.validate()
    assert merged.anchor_edges() == frozenset({2, 3})
    assert merged.anchor_vertices() == frozenset({0, 2, 3})
    assert merged.members() == {0: frozenset({0, 1})}


def test_merge_identity_when_nothing_named() -> None:
    c = torus_two_loops()
    merged = merge_into_anchor(c, set())
    assert merged.colors == c.colors
    assert merged.anchor_edges() == c.anchor_edges()


def test_merge_color_anchor_requires_self() -> None:
    host = EmbeddedGraph(1, [(0, 0), (0, 0), (0, 0)], [(0, 2, 4, 1, 3, 5)])
    c = Cluster(host, (0, 1, 2), anchor_color=0)
    with pytest.raises(ValueError):
        merge_into_anchor(c, {1})
    merged = merge_into_anchor(c, {0, 1})
    merged.validate()
    assert merged.anchor_edges() == frozenset({0, 1})
    assert set(merged.members()) == {0, 2}


def test_serialize_round_trip_is_byte_identical() -> None:
    c = torus_two_loops()
    text = serialize_cluster(c)
    again = parse_cluster(text)
    assert serialize_cluster(again) == text
    assert again.colors == c.colors
    assert again.anchor_color == c.anchor_color
    assert again.host.rotations == c.host.rotations


def test_serialized_form_is_stable() -> None:
    text = serialize_cluster(torus_two_loops())
    assert text == (
        "V 1\n"
        "E 2\n"
        "edge 0 0 0 -1\n"
        "edge 1 0 0 0\n"
        "rot 0 0.0 1.0 0.1 1.1\n"
        "anchor -1\n"
    )


def test_serialize_vertex_anchor_form() -> None:
    text = serialize_cluster(square_two_members())
    assert text.endswith("anchor vertex 0\n")
    c = parse_cluster(text)
    assert c.anchor_vertex == 0
    assert c.anchor_color is None


def test_parse_ignores_comments_and_blanks() -> None:
    text = (
        "# two loops on a torus\n"
        "V 1\n"
        "\n"
        "E 2\n"
        "edge 0 0 0 -1\n"
        "edge 1 0 0 0   # the member\n"
        "rot 0 0.0 1.0 0.1 1.1\n"
        "anchor -1\n"
    )
    c = parse_cluster(text)
    assert c.colors == (-1, 0)


def test_parse_rejects_malformed_input() -> None:
    good = serialize_cluster(torus_two_loops())
    for breakage in (
        good.replace("0.1", "0:1"),
        good.replace("anchor -1\n", ""),
        good.replace("E 2", "E 3"),
        good.replace("edge 1", "edge 2"),
        good + "anchor -1\n",
    ):
        with pytest.raises(ValueError):
            parse_cluster(breakage)


def test_serialize_normalizes_rotation_start() -> None:
    host = EmbeddedGraph(1, [(0, 0), (0, 0)], [(1, 3, 0, 2)])
    c = Cluster(host, (-1, 0), anchor_color=-1)
    text = serialize_cluster(c)
    assert "rot 0 0.0 1.0 0.1 1.1\n" in text
    assert serialize_cluster(parse_cluster(text)) == text


def test_random_clusters_round_trip() -> None:
    rng = random.Random(53)
    done = 0
    while done < 100:
        c = _random_cluster(rng)
        if c is None:
            continue
        text = serialize_cluster(c)
        again = parse_cluster(text)
        assert serialize_cluster(again) == text
        assert again.colors == c.colors
        done += 1


# helpers


def _random_cluster(rng: random.Random) -> Cluster | None:
    n = rng.randrange(1, 5)
    m = rng.randrange(1, 8)
    edges = [(rng.randrange(n), rng.randrange(n)) for _ in range(m)]
    rots: list[list[int]] = [[] for _ in range(n)]
    for e, (u, v) in enumerate(edges):
        rots[u].append(2 * e)
        rots[v].append(2 * e + 1)
    for r in rots:
        rng.shuffle(r)
    host = EmbeddedGraph(n, edges, [tuple(r) for r in rots])
    colors = tuple(rng.randrange(-1, 3) for _ in range(m))
    if rng.random() < 0.5:
        c = Cluster(host, colors, anchor_color=-1)
    else:
        c = Cluster(
            host,
            tuple(max(x, 0) for x in colors),
            anchor_vertex=rng.randrange(n),
        )
    # round-tripping needs no validity, only well-formed ids
    return c
