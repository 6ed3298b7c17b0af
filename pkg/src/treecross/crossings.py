"""Exact crossing detection and counting for a tree under an arrangement.

Two placed edges cross when their position intervals interleave; pairs
that share a vertex never count. The relative count divides by the number
of vertex-disjoint pairs and is reported as absent (None) when that
number is zero, which happens exactly for star trees.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .graph_core import EdgeSpan, LabeledTree, LinearArrangement, c_max


@dataclass(frozen=True)
class CrossingCount:
    """Crossing totals for one (tree, arrangement) pair."""

    total: int
    per_edge: Mapping[tuple[int, int], int]
    relative: Optional[float]


def edges_cross(span1: EdgeSpan, span2: EdgeSpan) -> bool:
    """Whether two spans over four distinct positions interleave."""
    assert len({span1.start, span1.end, span2.start, span2.end}) == 4, (
        "edges_cross expects vertex-disjoint placements"
    )
    s1, e1, s2, e2 = span1.start, span1.end, span2.start, span2.end
    return (s1 < s2 < e1 < e2) or (s2 < s1 < e2 < e1)


def count_crossings(tree: LabeledTree, arr: LinearArrangement) -> CrossingCount:
    """Count interleaving vertex-disjoint edge pairs under the arrangement."""
    pos = arr.positions
    edges = tree.edges
    spans = []
    for u, v in edges:
        pu, pv = pos[u - 1], pos[v - 1]
        spans.append((pu, pv) if pu < pv else (pv, pu))
    per_edge = {e: 0 for e in edges}
    total = 0
    for i in range(len(edges)):
        u1, v1 = edges[i]
        s1, e1 = spans[i]
        for j in range(i + 1, len(edges)):
            u2, v2 = edges[j]
            if u2 == u1 or u2 == v1 or v2 == u1 or v2 == v1:
                continue
            s2, e2 = spans[j]
            if (s1 < s2 < e1 < e2) or (s2 < s1 < e2 < e1):
                total += 1
                per_edge[edges[i]] += 1
                per_edge[edges[j]] += 1
    potential = c_max(tree)
    relative = total / potential if potential > 0 else None
    return CrossingCount(total=total, per_edge=per_edge, relative=relative)


def count_crossings_identity(edge_list, cap: Optional[int] = None) -> int:
    """Crossing count for raw (u, v) pairs with positions equal to labels.

    With ``cap`` set, returns early once the count exceeds it (the exact
    value is then irrelevant to callers that only threshold). Used by the
    samplers, where the arrangement is the identity by construction.
    """
    total = 0
    m = len(edge_list)
    for i in range(m):
        u1, v1 = edge_list[i]
        s1, e1 = (u1, v1) if u1 < v1 else (v1, u1)
        for j in range(i + 1, m):
            u2, v2 = edge_list[j]
            if u2 == u1 or u2 == v1 or v2 == u1 or v2 == v1:
                continue
            s2, e2 = (u2, v2) if u2 < v2 else (v2, u2)
            if (s1 < s2 < e1 < e2) or (s2 < s1 < e2 < e1):
                total += 1
                if cap is not None and total > cap:
                    return total
    return total
