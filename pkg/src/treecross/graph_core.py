"""Labeled trees, linear arrangements, and their basic statistics.

Vertices are integers 1..n. A linear arrangement assigns every vertex a
distinct position in 1..n; edge lengths, spans, the total dependency
length and the number of potentially crossing edge pairs all derive from
these two objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator


class ValidationError(ValueError):
    """Raised when a tree, arrangement or input file violates its contract."""


@dataclass(frozen=True)
class LabeledTree:
    """Tree on vertices 1..n, edges stored as sorted (u, v) pairs with u < v.

    Construct through :func:`build_tree`, which normalizes and validates.
    Instances are immutable and safe to share across workers.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def degrees(self) -> list[int]:
        """Degree of each vertex; index 0 is unused padding."""
        deg = [0] * (self.n + 1)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in set(self.edges)


@dataclass(frozen=True)
class LinearArrangement:
    """Bijection from vertices 1..n to positions 1..n.

    ``positions[v - 1]`` is the position of vertex v.
    """

    positions: tuple[int, ...]

    def __post_init__(self):
        n = len(self.positions)
        if sorted(self.positions) != list(range(1, n + 1)):
            raise ValidationError(
                f"arrangement is not a bijection onto 1..{n}: {self.positions}"
            )

    @property
    def n(self) -> int:
        return len(self.positions)

    def position(self, v: int) -> int:
        return self.positions[v - 1]

    def reversed(self) -> "LinearArrangement":
        """Mirror image: position p becomes n + 1 - p."""
        n = self.n
        return LinearArrangement(tuple(n + 1 - p for p in self.positions))


@dataclass(frozen=True)
class EdgeSpan:
    """Placed edge: start < end positions and length = end - start."""

    start: int
    end: int
    length: int = field(init=False)

    def __post_init__(self):
        if not self.start < self.end:
            raise ValidationError(f"span start {self.start} must precede end {self.end}")
        object.__setattr__(self, "length", self.end - self.start)


def build_tree(n: int, edges: Iterable[tuple[int, int]]) -> LabeledTree:
    """Validate and normalize an edge list into a LabeledTree.

    Checks, each with its own error message: vertex count, edge count
    (n - 1), vertex ids in range, no self-loops, no duplicate edges,
    connectivity.
    """
    if n < 1:
        raise ValidationError(f"vertex count must be >= 1, got {n}")
    normalized = []
    for u, v in edges:
        if not (1 <= u <= n) or not (1 <= v <= n):
            raise ValidationError(f"edge ({u}, {v}) has a vertex outside 1..{n}")
        if u == v:
            raise ValidationError(f"self-loop at vertex {u}")
        normalized.append((u, v) if u < v else (v, u))
    if len(normalized) != n - 1:
        raise ValidationError(f"a tree on {n} vertices needs {n - 1} edges, got {len(normalized)}")
    if len(set(normalized)) != len(normalized):
        seen = set()
        for e in normalized:
            if e in seen:
                raise ValidationError(f"duplicate edge {e}")
            seen.add(e)
    # n - 1 distinct edges: connected iff acyclic; union-find detects both.
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in normalized:
        ru, rv = find(u), find(v)
        if ru == rv:
            raise ValidationError(f"edges do not form a tree: cycle through edge ({u}, {v})")
        parent[ru] = rv
    return LabeledTree(n=n, edges=tuple(sorted(normalized)))


def identity_positions(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def edge_span(tree: LabeledTree, arr: LinearArrangement, edge: tuple[int, int]) -> EdgeSpan:
    """Span of one tree edge under an arrangement."""
    u, v = edge
    if not tree.has_edge(u, v):
        raise ValidationError(f"edge ({u}, {v}) is not in the tree")
    pu, pv = arr.position(u), arr.position(v)
    return EdgeSpan(start=min(pu, pv), end=max(pu, pv))


def total_length(tree: LabeledTree, arr: LinearArrangement) -> int:
    """Sum of edge lengths under the arrangement."""
    pos = arr.positions
    return sum(abs(pos[u - 1] - pos[v - 1]) for u, v in tree.edges)


def degree_second_moment(tree: LabeledTree) -> float:
    """Mean of squared vertex degrees."""
    deg = tree.degrees()
    return sum(k * k for k in deg) / tree.n


def c_max(tree: LabeledTree) -> int:
    """Number of vertex-disjoint edge pairs, from the degree sequence.

    Equals n/2 * (n - 1 - mean squared degree). Computed in integer
    arithmetic; n(n-1) - sum(k^2) is always even because sum(k^2) has the
    parity of sum(k) = 2(n-1).
    """
    deg = tree.degrees()
    sum_sq = sum(k * k for k in deg)
    twice = tree.n * (tree.n - 1) - sum_sq
    value = twice // 2
    float_route = (tree.n / 2.0) * (tree.n - 1 - sum_sq / tree.n)
    if abs(float_route - value) > 1e-9 or twice % 2 != 0:
        raise AssertionError(f"potential crossing count is not integral: {float_route}")
    return value


def disjoint_edge_pairs(tree: LabeledTree) -> int:
    """Count vertex-disjoint edge pairs by explicit enumeration.

    Independent O(m^2) cross-check for :func:`c_max`.
    """
    edges = tree.edges
    count = 0
    for i in range(len(edges)):
        u1, v1 = edges[i]
        for j in range(i + 1, len(edges)):
            u2, v2 = edges[j]
            if u2 != u1 and u2 != v1 and v2 != u1 and v2 != v1:
                count += 1
    return count


# ---------------------------------------------------------------------------
# Edge-list text format
#
# One tree per file: first non-comment line holds n, followed by n - 1 lines
# "u v" (1-indexed). Lines starting with '#' are comments. An arrangement
# file holds a single line of n positions, the i-th giving the position of
# vertex i; a missing arrangement file means the identity arrangement.


def _data_lines(path: str | Path) -> Iterator[tuple[int, str]]:
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            yield lineno, line


def _parse_tree_block(path: str | Path, lines: list[tuple[int, str]]) -> LabeledTree:
    lineno, header = lines[0]
    try:
        n = int(header)
    except ValueError:
        raise ValidationError(f"{path}:{lineno}: expected vertex count, got {header!r}") from None
    edges = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ValidationError(f"{path}:{lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValidationError(f"{path}:{lineno}: non-integer vertex id in {line!r}") from None
        edges.append((u, v))
    try:
        return build_tree(n, edges)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from None


def read_tree(path: str | Path) -> LabeledTree:
    """Read a single tree from an edge-list file."""
    lines = list(_data_lines(path))
    if not lines:
        raise ValidationError(f"{path}: empty edge-list file")
    try:
        n = int(lines[0][1])
    except ValueError:
        raise ValidationError(f"{path}:{lines[0][0]}: expected vertex count, got {lines[0][1]!r}") from None
    expected = 1 + max(n - 1, 0)
    if len(lines) > expected:
        lineno, extra = lines[expected]
        raise ValidationError(f"{path}:{lineno}: trailing content {extra!r} after the tree")
    return _parse_tree_block(path, lines)


def iter_trees(path: str | Path) -> Iterator[LabeledTree]:
    """Read consecutive tree blocks from a stream written by the sampler CLI.

    Blocks have the same layout as single-tree files; each block's header
    line announces its own vertex count.
    """
    lines = list(_data_lines(path))
    i = 0
    while i < len(lines):
        try:
            n = int(lines[i][1])
        except ValueError:
            raise ValidationError(
                f"{path}:{lines[i][0]}: expected vertex count, got {lines[i][1]!r}"
            ) from None
        block = lines[i : i + max(n, 1)]
        yield _parse_tree_block(path, block)
        i += max(n, 1)


def read_arrangement(path: str | Path, n: int) -> LinearArrangement:
    """Read an arrangement file for a tree on n vertices."""
    lines = list(_data_lines(path))
    if len(lines) != 1:
        raise ValidationError(f"{path}: expected a single line of {n} positions")
    lineno, line = lines[0]
    parts = line.split()
    if len(parts) != n:
        raise ValidationError(f"{path}:{lineno}: expected {n} positions, got {len(parts)}")
    try:
        positions = tuple(int(p) for p in parts)
    except ValueError:
        raise ValidationError(f"{path}:{lineno}: non-integer position in {line!r}") from None
    try:
        return LinearArrangement(positions)
    except ValidationError as exc:
        raise ValidationError(f"{path}:{lineno}: {exc}") from None


def format_tree(tree: LabeledTree, comments: Iterable[str] = ()) -> str:
    """Serialize a tree in the edge-list format, with optional comment lines."""
    out = [f"# {c}" for c in comments]
    out.append(str(tree.n))
    out.extend(f"{u} {v}" for u, v in tree.edges)
    return "\n".join(out) + "\n"
