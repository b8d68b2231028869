"""3-approximation for graphs without streaks of two or more edges.

Neighbouring nodes ``(1,2), (3,4), ...`` on each side are merged, a maximum
ordinary matching is found on the merged graph, each merged edge is projected
back to one original witness, and a pruning pass drops witnesses that would
sit next to an already kept edge.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .core import ConsecutiveMatching, DuoGraph, Edge
from .errors import PreconditionViolated

__all__ = [
    "MergedGraph",
    "build_merged",
    "hopcroft_karp",
    "max_bipartite_matching",
    "project_and_prune",
    "approx3_phase2",
]


def merged_index(k: int) -> int:
    """Merged node covering original node ``k`` (both 1-based)."""
    return (k + 1) // 2


@dataclass
class MergedGraph:
    n_a: int
    n_b: int
    witnesses: dict[tuple[int, int], list[Edge]] = field(default_factory=dict)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.witnesses)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n_a + 1)]
        for ta, tb in self.edges:
            adj[ta].append(tb)
        return adj


def build_merged(g: DuoGraph) -> MergedGraph:
    h = MergedGraph((g.n_a + 1) // 2, (g.n_b + 1) // 2)
    for e in g.edge_list:
        h.witnesses.setdefault((merged_index(e.i), merged_index(e.j)), []).append(e)
    return h


def hopcroft_karp(n_left: int, n_right: int, adj: list[list[int]]) -> dict[int, int]:
    """Maximum-cardinality matching; ``adj[u]`` lists right neighbours of left node ``u``.

    Nodes are 1-based.  Returns a left-to-right mate map.
    """
    inf = n_left + n_right + 2
    mate_l = [0] * (n_left + 1)
    mate_r = [0] * (n_right + 1)
    dist = [0] * (n_left + 1)

    def bfs() -> bool:
        q = deque()
        for u in range(1, n_left + 1):
            if mate_l[u] == 0:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = inf
        found = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = mate_r[v]
                if w == 0:
                    found = True
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def augment(root: int) -> bool:
        # iterative DFS along the BFS layering
        stack = [(root, iter(adj[root]))]
        path: list[tuple[int, int]] = []
        while stack:
            u, it = stack[-1]
            advanced = False
            for v in it:
                w = mate_r[v]
                if w == 0:
                    path.append((u, v))
                    for pu, pv in path:
                        mate_l[pu] = pv
                        mate_r[pv] = pu
                    return True
                if dist[w] == dist[u] + 1:
                    path.append((u, v))
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                dist[u] = inf
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for u in range(1, n_left + 1):
            if mate_l[u] == 0:
                augment(u)
    return {u: mate_l[u] for u in range(1, n_left + 1) if mate_l[u]}


def max_bipartite_matching(h: MergedGraph) -> set[tuple[int, int]]:
    mates = hopcroft_karp(h.n_a, h.n_b, h.adjacency())
    return set(mates.items())


def project_and_prune(
    m_prime: set[tuple[int, int]], h: MergedGraph, stats: dict | None = None
) -> ConsecutiveMatching:
    """Replace merged edges by witnesses and drop neighbours of kept edges.

    Each merged edge contributes its lexicographically smallest witness.
    Witnesses are processed in lexicographic order; a kept edge ``(i, j)``
    evicts surviving witnesses ending in ``a_{i-1}, a_{i+1}, b_{j-1}, b_{j+1}``.
    ``stats["max_evicted"]`` records the most evictions caused by one edge.
    """
    chosen = sorted(min(h.witnesses[f]) for f in m_prime)
    at_a = {e.i: e for e in chosen}
    at_b = {e.j: e for e in chosen}
    alive = set(chosen)
    kept = []
    max_evicted = 0
    for e in chosen:
        if e not in alive:
            continue
        evicted = set()
        for f in (at_a.get(e.i - 1), at_a.get(e.i + 1), at_b.get(e.j - 1), at_b.get(e.j + 1)):
            if f is not None and f in alive:
                evicted.add(f)
        alive -= evicted
        max_evicted = max(max_evicted, len(evicted))
        kept.append(e)
    if stats is not None:
        stats["max_evicted"] = max_evicted
        stats["merged_matching"] = len(chosen)
    return ConsecutiveMatching(kept)


def approx3_phase2(g: DuoGraph, stats: dict | None = None) -> ConsecutiveMatching:
    for e in g.edge_list:
        if (e.i + 1, e.j + 1) in g.edges:
            raise PreconditionViolated(f"graph has a streak of length >= 2 starting at {e}")
    h = build_merged(g)
    return project_and_prune(max_bipartite_matching(h), h, stats)
