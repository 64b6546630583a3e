"""Pseudocircle arrangements on closed orientable surfaces.

Rotation-system embeddings, face structure of edge subgraphs, mod-2
homology helpers, colored edge clusters, and the construction of small
subarrangements witnessing non-embeddability into a given genus.
"""

from pseudocircles.embedding import (
    EmbeddedGraph,
    FacialWalk,
    add_path,
    contract_walk_to_point,
    dart,
    delete_edge_pruning,
    sub_embedding,
    subgraph_facial_walks,
    subgraph_genus,
    twin,
)

__all__ = [
    "EmbeddedGraph",
    "FacialWalk",
    "add_path",
    "contract_walk_to_point",
    "dart",
    "delete_edge_pruning",
    "sub_embedding",
    "subgraph_facial_walks",
    "subgraph_genus",
    "twin",
]
