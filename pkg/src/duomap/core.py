"""Instance and solution vocabulary for consecutive bipartite matching.

Nodes are 1-based on both sides: ``a_1..a_nA`` and ``b_1..b_nB``.  An edge
``(i, j)`` joins ``a_i`` to ``b_j``.  For a string pair the graph has one node
per duo, and an edge wherever the duo of ``X`` at ``i`` equals the duo of
``Y`` at ``j``.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from typing import Iterable, Iterator, NamedTuple

from .errors import InvalidMatching, PermutationMismatch

__all__ = [
    "Edge",
    "Streak",
    "Node",
    "DuoGraph",
    "ConsecutiveMatching",
    "build_from_strings",
    "edges_overlap",
    "compatible",
    "is_valid",
    "decompose_streaks",
    "close_set",
    "overlap_set",
    "graph_streaks",
    "conflict_masks",
]


class Edge(NamedTuple):
    i: int
    j: int


class Streak(NamedTuple):
    """Run of edges ``(p+1, q+1), ..., (p+len, q+len)``."""

    p: int
    q: int
    len: int

    def edges(self) -> list[Edge]:
        return [Edge(self.p + d, self.q + d) for d in range(1, self.len + 1)]


# ("a", i) or ("b", j)
Node = tuple[str, int]


class DuoGraph:
    """Bipartite graph with per-node adjacency and O(1) edge membership.

    Duplicate edges are dropped silently.  Treat instances as immutable.
    """

    __slots__ = ("n_a", "n_b", "edges", "edge_list", "by_a", "by_b")

    def __init__(self, n_a: int, n_b: int, edges: Iterable[tuple[int, int]] = ()):
        if n_a < 0 or n_b < 0:
            raise ValueError("node counts must be non-negative")
        edge_set = set()
        for i, j in edges:
            if not (1 <= i <= n_a and 1 <= j <= n_b):
                raise IndexError(f"edge ({i}, {j}) outside 1..{n_a} x 1..{n_b}")
            edge_set.add(Edge(i, j))
        self.n_a = n_a
        self.n_b = n_b
        self.edges: frozenset[Edge] = frozenset(edge_set)
        self.edge_list: tuple[Edge, ...] = tuple(sorted(edge_set))
        by_a: list[list[Edge]] = [[] for _ in range(n_a + 2)]
        by_b: list[list[Edge]] = [[] for _ in range(n_b + 2)]
        for e in self.edge_list:
            by_a[e.i].append(e)
            by_b[e.j].append(e)
        # index 0 and n+1 stay empty so neighbour lookups need no bounds checks
        self.by_a: tuple[tuple[Edge, ...], ...] = tuple(map(tuple, by_a))
        self.by_b: tuple[tuple[Edge, ...], ...] = tuple(map(tuple, by_b))

    def __contains__(self, e: object) -> bool:
        return e in self.edges

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edge_list)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DuoGraph):
            return NotImplemented
        return (self.n_a, self.n_b, self.edges) == (other.n_a, other.n_b, other.edges)

    def __hash__(self) -> int:
        return hash((self.n_a, self.n_b, self.edges))

    def __repr__(self) -> str:
        return f"DuoGraph(n_a={self.n_a}, n_b={self.n_b}, edges={list(self.edge_list)!r})"

    def edges_at(self, node: Node) -> tuple[Edge, ...]:
        side, k = node
        lists = self.by_a if side == "a" else self.by_b
        if 0 <= k < len(lists):
            return lists[k]
        return ()

    def without(self, removed: Iterable[tuple[int, int]]) -> DuoGraph:
        gone = set(removed)
        return DuoGraph(self.n_a, self.n_b, (e for e in self.edge_list if e not in gone))

    def subgraph(self, kept: Iterable[tuple[int, int]]) -> DuoGraph:
        return DuoGraph(self.n_a, self.n_b, kept)

    def fingerprint(self) -> str:
        h = hashlib.sha256(f"mcbm {self.n_a} {self.n_b} {len(self.edge_list)}\n".encode())
        for i, j in self.edge_list:
            h.update(f"{i} {j}\n".encode())
        return h.hexdigest()[:16]


class ConsecutiveMatching:
    """A set of edges with per-side occupancy lookups.

    Construction does not check validity; use :func:`is_valid`.
    """

    __slots__ = ("edges", "mate_a", "mate_b")

    def __init__(self, edges: Iterable[tuple[int, int]] = ()):
        self.edges: frozenset[Edge] = frozenset(Edge(*e) for e in edges)
        self.mate_a: dict[int, int] = {}
        self.mate_b: dict[int, int] = {}
        for i, j in self.edges:
            self.mate_a[i] = j
            self.mate_b[j] = i

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(sorted(self.edges))

    def __contains__(self, e: object) -> bool:
        return e in self.edges

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ConsecutiveMatching):
            return self.edges == other.edges
        if isinstance(other, (set, frozenset)):
            return self.edges == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.edges)

    def __repr__(self) -> str:
        return f"ConsecutiveMatching({sorted(self.edges)!r})"

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def union(self, other: Iterable[tuple[int, int]]) -> ConsecutiveMatching:
        return ConsecutiveMatching(self.edges | {Edge(*e) for e in other})


def build_from_strings(x: str, y: str) -> DuoGraph:
    """Duo graph of two strings; ``y`` must be a letter permutation of ``x``."""
    if len(x) != len(y):
        raise PermutationMismatch(f"lengths differ: {len(x)} != {len(y)}")
    if len(x) < 1:
        raise PermutationMismatch("strings must be non-empty")
    if Counter(x) != Counter(y):
        raise PermutationMismatch("strings are not letter permutations of each other")
    n = len(x) - 1
    where: dict[str, list[int]] = {}
    for j in range(n):
        where.setdefault(y[j : j + 2], []).append(j + 1)
    edges = []
    for i in range(n):
        for j in where.get(x[i : i + 2], ()):
            edges.append((i + 1, j))
    return DuoGraph(n, n, edges)


def edges_overlap(e: tuple[int, int], f: tuple[int, int]) -> bool:
    return abs(e[0] - f[0]) <= 1 or abs(e[1] - f[1]) <= 1


def compatible(e: tuple[int, int], f: tuple[int, int]) -> bool:
    """True iff the distinct edges ``e`` and ``f`` may share a consecutive matching."""
    di = f[0] - e[0]
    dj = f[1] - e[1]
    if abs(di) > 1 and abs(dj) > 1:
        return True
    return di == dj and (di == 1 or di == -1)


def _as_edges(m) -> frozenset[Edge]:
    if isinstance(m, ConsecutiveMatching):
        return m.edges
    return frozenset(Edge(*e) for e in m)


def _consecutive(edges: frozenset[Edge]) -> bool:
    if len({e.i for e in edges}) != len(edges) or len({e.j for e in edges}) != len(edges):
        return False
    # only edges within distance 1 on the A side or on the B side can conflict
    at_a = {e.i: e for e in edges}
    at_b = {e.j: e for e in edges}
    for e in edges:
        for f in (at_a.get(e.i + 1), at_b.get(e.j + 1)):
            if f is not None and not compatible(e, f):
                return False
    return True


def is_valid(m: ConsecutiveMatching | Iterable[tuple[int, int]], g: DuoGraph) -> bool:
    edges = _as_edges(m)
    return edges <= g.edges and _consecutive(edges)


def decompose_streaks(m: ConsecutiveMatching | Iterable[tuple[int, int]]) -> list[Streak]:
    """Split a consecutive matching into its maximal streaks, sorted by ``p``."""
    edges = _as_edges(m)
    if not _consecutive(edges):
        raise InvalidMatching("edge set is not a consecutive matching")
    ordered = sorted(edges)
    streaks: list[Streak] = []
    start = None
    length = 0
    prev = None
    for e in ordered:
        if prev is not None and e.i == prev.i + 1 and e.j == prev.j + 1:
            length += 1
        else:
            if start is not None:
                streaks.append(Streak(start.i - 1, start.j - 1, length))
            start, length = e, 1
        prev = e
    if start is not None:
        streaks.append(Streak(start.i - 1, start.j - 1, length))
    return streaks


def close_set(e: tuple[int, int], g: DuoGraph) -> frozenset[Node]:
    """Existing nodes within distance 1 of either endpoint of ``e``."""
    i, j = e
    nodes = {("a", k) for k in (i - 1, i, i + 1) if 1 <= k <= g.n_a}
    nodes |= {("b", k) for k in (j - 1, j, j + 1) if 1 <= k <= g.n_b}
    return frozenset(nodes)


def overlap_set(e: tuple[int, int], g: DuoGraph) -> set[Edge]:
    out: set[Edge] = set()
    for node in close_set(e, g):
        out.update(g.edges_at(node))
    return out


def graph_streaks(edges: Iterable[tuple[int, int]]) -> list[Streak]:
    """Maximal diagonal runs of an arbitrary edge set, recomputed from scratch."""
    present = {Edge(*e) for e in edges}
    out = []
    for e in sorted(present):
        if (e.i - 1, e.j - 1) in present:
            continue
        length = 1
        while (e.i + length, e.j + length) in present:
            length += 1
        out.append(Streak(e.i - 1, e.j - 1, length))
    return out


def conflict_masks(g: DuoGraph) -> list[int]:
    """Bit ``l`` of entry ``k`` is set iff edges ``k`` and ``l`` of ``g.edge_list`` clash."""
    rank = {e: k for k, e in enumerate(g.edge_list)}
    masks = [0] * len(rank)
    for k, e in enumerate(g.edge_list):
        m = 0
        for f in overlap_set(e, g):
            if f != e and not compatible(e, f):
                m |= 1 << rank[f]
        masks[k] = m
    return masks
