"""Local improvement by single additions and one-for-two swaps.

``local_improvements_reference`` is the direct quadratic-per-step search and
serves as a differential baseline.  ``FastLocalSearch`` is the queue-driven
version: edges are re-examined only after something near them changes, and
swap partners are looked up in per-node lists of edges blocked by exactly one
solution edge.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .core import ConsecutiveMatching, DuoGraph, Edge, compatible

__all__ = [
    "CandidateQueue",
    "SingleConflictLists",
    "FastLocalSearch",
    "local_improvements_reference",
    "fast_local_improvements",
    "try_adding_pair_with",
    "PARTNER_SCAN_CAP",
]

# at most 3 entries of a list can clash with e itself (see try_adding_pair_with)
PARTNER_SCAN_CAP = 4


def local_improvements_reference(g: DuoGraph) -> ConsecutiveMatching:
    alg: set[Edge] = set()
    edges = g.edge_list

    def blockers(e: Edge) -> list[Edge]:
        return [f for f in alg if not compatible(e, f)]

    while True:
        before = len(alg)
        for e in edges:
            if e not in alg and not blockers(e):
                alg.add(e)
                break
        swapped = False
        for e_del in sorted(alg):
            # edges whose only obstacle is e_del
            freed = [e for e in edges if e not in alg and set(blockers(e)) <= {e_del}]
            for a in range(len(freed)):
                for b in range(a + 1, len(freed)):
                    if compatible(freed[a], freed[b]):
                        alg.discard(e_del)
                        alg.update((freed[a], freed[b]))
                        swapped = True
                        break
                if swapped:
                    break
            if swapped:
                break
        if len(alg) == before:
            return ConsecutiveMatching(alg)


class CandidateQueue:
    """FIFO of edges that never holds the same edge twice."""

    def __init__(self) -> None:
        self._q: deque[Edge] = deque()
        self._queued: set[Edge] = set()
        self.enqueues = 0

    def __len__(self) -> int:
        return len(self._q)

    def __contains__(self, e: object) -> bool:
        return e in self._queued

    def push(self, e: Edge) -> None:
        if e not in self._queued:
            self._queued.add(e)
            self._q.append(e)
            self.enqueues += 1

    def pop(self) -> Edge:
        e = self._q.popleft()
        self._queued.discard(e)
        return e


class SingleConflictLists:
    """For every node, the non-solution edges there with exactly one blocker.

    Dicts stand in for the linked lists: O(1) insert and delete, stable
    iteration order.
    """

    def __init__(self) -> None:
        self._lists: dict[tuple[str, int], dict[Edge, None]] = {}

    def place(self, e: Edge, member: bool) -> None:
        for node in (("a", e.i), ("b", e.j)):
            lst = self._lists.get(node)
            if member:
                if lst is None:
                    lst = self._lists[node] = {}
                lst[e] = None
            elif lst is not None:
                lst.pop(e, None)

    def at(self, node: tuple[str, int]) -> Iterable[Edge]:
        return self._lists.get(node, {})

    def members(self) -> set[Edge]:
        return {e for lst in self._lists.values() for e in lst}


class FastLocalSearch:
    """Mutable search state over a fixed graph.

    Counting is by *conflicts*: a solution edge blocks ``e`` when the two are
    not compatible.  A streak neighbour of ``e`` overlaps it without blocking.
    """

    def __init__(self, g: DuoGraph, start: Iterable[tuple[int, int]] = ()):
        self.g = g
        self.alg_a: dict[int, Edge] = {}
        self.alg_b: dict[int, Edge] = {}
        self.queue = CandidateQueue()
        self.single = SingleConflictLists()
        self.growths = 0
        self.swaps = 0
        self.max_partner_scan = 0
        self.cap_exhausted = 0
        for e in start:
            e = Edge(*e)
            self.alg_a[e.i] = e
            self.alg_b[e.j] = e
        for e in g.edge_list:
            self._recount(e)

    @property
    def solution(self) -> ConsecutiveMatching:
        return ConsecutiveMatching(self.alg_a.values())

    def in_alg(self, e: Edge) -> bool:
        return self.alg_a.get(e.i) == e

    def _near_alg(self, e: Edge) -> set[Edge]:
        a, b = self.alg_a, self.alg_b
        near = set()
        for k in (e.i - 1, e.i, e.i + 1):
            f = a.get(k)
            if f is not None:
                near.add(f)
        for k in (e.j - 1, e.j, e.j + 1):
            f = b.get(k)
            if f is not None:
                near.add(f)
        near.discard(e)
        return near

    def blockers(self, e: Edge) -> list[Edge]:
        return [f for f in self._near_alg(e) if not compatible(e, f)]

    def _recount(self, e: Edge) -> None:
        member = not self.in_alg(e) and len(self.blockers(e)) == 1
        self.single.place(e, member)

    def overlap(self, e: Edge) -> dict[Edge, None]:
        """Edges ending in ``Close(e)``, deduplicated, in adjacency-list order."""
        g = self.g
        out: dict[Edge, None] = {}
        for k in (e.i - 1, e.i, e.i + 1):
            if 0 <= k < len(g.by_a):
                out.update(dict.fromkeys(g.by_a[k]))
        for k in (e.j - 1, e.j, e.j + 1):
            if 0 <= k < len(g.by_b):
                out.update(dict.fromkeys(g.by_b[k]))
        return out

    def enqueue(self, edges: Iterable[Edge]) -> None:
        for f in edges:
            self.queue.push(f)
            self._recount(f)

    def _add(self, e: Edge) -> None:
        self.alg_a[e.i] = e
        self.alg_b[e.j] = e

    def _drop(self, e: Edge) -> None:
        del self.alg_a[e.i]
        del self.alg_b[e.j]

    def _fits_after_swap(self, e: Edge, e_del: Edge, other: Edge) -> bool:
        if other == e or not compatible(e, other):
            return False
        return all(f == e_del for f in self.blockers(other))

    def _swap(self, e: Edge, other: Edge, e_del: Edge) -> None:
        self._drop(e_del)
        self._add(e)
        self._add(other)
        self.growths += 1
        self.swaps += 1
        self.enqueue({**self.overlap(e), **self.overlap(other), **self.overlap(e_del)})

    def try_adding_pair_with(self, e: Edge) -> bool:
        """Swap the single blocker of ``e`` for ``e`` plus one partner edge.

        Streak neighbours of ``e`` are tried first.  Any other partner has an
        endpoint in ``Close(e_del)`` outside ``Close(e)``, so it sits in one of
        those nodes' single-conflict lists.  Entries blocked by a different
        solution edge are skipped; among the rest, at most 3 can clash with
        ``e``, so the scan of each list stops after ``PARTNER_SCAN_CAP``.
        """
        e = Edge(*e)
        (e_del,) = self.blockers(e)
        g = self.g
        for other in ((e.i - 1, e.j - 1), (e.i + 1, e.j + 1)):
            if other in g.edges and not self.in_alg(Edge(*other)):
                other = Edge(*other)
                if self._fits_after_swap(e, e_del, other):
                    self._swap(e, other, e_del)
                    return True
        near_e = {("a", e.i - 1), ("a", e.i), ("a", e.i + 1), ("b", e.j - 1), ("b", e.j), ("b", e.j + 1)}
        for node in (
            ("a", e_del.i - 1), ("a", e_del.i), ("a", e_del.i + 1),
            ("b", e_del.j - 1), ("b", e_del.j), ("b", e_del.j + 1),
        ):
            if node in near_e:
                continue
            inspected = 0
            for other in self.single.at(node):
                if self.blockers(other) != [e_del]:
                    continue
                if inspected == PARTNER_SCAN_CAP:
                    self.cap_exhausted += 1
                    break
                inspected += 1
                self.max_partner_scan = max(self.max_partner_scan, inspected)
                if compatible(e, other):
                    self._swap(e, other, e_del)
                    return True
        return False

    def run(self) -> ConsecutiveMatching:
        self.enqueue(self.g.edge_list)
        while self.queue:
            e = self.queue.pop()
            if self.in_alg(e):
                continue
            blocking = self.blockers(e)
            if len(blocking) > 1:
                continue
            if not blocking:
                self._add(e)
                self.growths += 1
                self.enqueue(self.overlap(e))
                continue
            self.try_adding_pair_with(e)
        return self.solution


def fast_local_improvements(g: DuoGraph, stats: dict | None = None) -> ConsecutiveMatching:
    state = FastLocalSearch(g)
    result = state.run()
    if stats is not None:
        stats.update(
            enqueues=state.queue.enqueues,
            growths=state.growths,
            swaps=state.swaps,
            max_partner_scan=state.max_partner_scan,
            cap_exhausted=state.cap_exhausted,
        )
    return result


def try_adding_pair_with(e: tuple[int, int], state: FastLocalSearch) -> bool:
    return state.try_adding_pair_with(Edge(*e))
