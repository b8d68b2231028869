"""Greedy longest-streak selection with incremental streak maintenance.

The index keeps every live edge in a doubly linked run along its diagonal and
groups runs by length.  Removing an edge shrinks or splits its run and moves
the result between groups, so the whole greedy phase touches each edge a
bounded number of times.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterator

from .core import ConsecutiveMatching, DuoGraph, Edge, Streak, graph_streaks
from .errors import EdgeAlreadyRemoved

__all__ = ["StreakIndex", "GreedyStep", "GreedyTrace", "greedy", "initial_streak_scan", "remove_edge"]


class _Run:
    __slots__ = ("uid", "first", "last", "size")

    def __init__(self, uid: int, first: int, last: int, size: int):
        self.uid = uid
        self.first = first
        self.last = last
        self.size = size


class StreakIndex:
    """Live streaks of a shrinking edge set, grouped by length.

    Edges are addressed by their rank in lexicographic order.  ``groups[s]``
    maps run ids to the live runs of length ``s``; a per-length heap keyed by
    ``(p, q)`` answers "smallest longest streak" queries with lazy deletion.
    """

    def __init__(self, g: DuoGraph):
        self.graph = g
        self.edges: tuple[Edge, ...] = g.edge_list
        m = len(self.edges)
        self.id_of: dict[Edge, int] = {e: k for k, e in enumerate(self.edges)}
        self.pred = [-1] * m
        self.succ = [-1] * m
        self.owner: list[_Run | None] = [None] * m
        self.live = bytearray(b"\x01") * m
        max_len = min(g.n_a, g.n_b)
        self.groups: list[dict[int, _Run]] = [{} for _ in range(max_len + 1)]
        self._heaps: list[list] = [[] for _ in range(max_len + 1)]
        self._top = max_len
        self._next_uid = 0
        self.removals = 0
        self.relocations = 0
        self.relabels = 0

    # group bookkeeping

    def _new_run(self, first: int, last: int, size: int) -> _Run:
        run = _Run(self._next_uid, first, last, size)
        self._next_uid += 1
        return run

    def _enter(self, run: _Run) -> None:
        self.groups[run.size][run.uid] = run
        e = self.edges[run.first]
        heapq.heappush(self._heaps[run.size], (e.i, e.j, run.uid, run))
        if run.size > self._top:
            self._top = run.size

    def _leave(self, run: _Run) -> None:
        del self.groups[run.size][run.uid]

    def _is_current(self, entry: tuple, size: int) -> bool:
        i, j, uid, run = entry
        if self.groups[size].get(uid) is not run:
            return False
        e = self.edges[run.first]
        return e.i == i and e.j == j

    # queries

    def is_live(self, e: tuple[int, int]) -> bool:
        k = self.id_of.get(e)
        return k is not None and bool(self.live[k])

    def streak(self, run: _Run) -> Streak:
        e = self.edges[run.first]
        return Streak(e.i - 1, e.j - 1, run.size)

    def streaks(self) -> list[Streak]:
        out = [self.streak(r) for grp in self.groups for r in grp.values()]
        out.sort()
        return out

    def group(self, size: int) -> list[Streak]:
        if not 0 < size < len(self.groups):
            return []
        return sorted(self.streak(r) for r in self.groups[size].values())

    def live_edges(self) -> list[Edge]:
        return [e for k, e in enumerate(self.edges) if self.live[k]]

    def run_edges(self, run: _Run) -> Iterator[int]:
        k = run.first
        while k != -1:
            yield k
            if k == run.last:
                return
            k = self.succ[k]

    def longest(self) -> Streak | None:
        """Longest live streak; ties go to the smallest ``(p, q)``."""
        while self._top > 0 and not self.groups[self._top]:
            self._top -= 1
        if self._top == 0:
            return None
        heap = self._heaps[self._top]
        while not self._is_current(heap[0], self._top):
            heapq.heappop(heap)
        return self.streak(heap[0][3])

    # mutation

    def remove_edge(self, e: tuple[int, int]) -> None:
        k = self.id_of.get(e)
        if k is None or not self.live[k]:
            raise EdgeAlreadyRemoved(e)
        self.live[k] = 0
        self.removals += 1
        run = self.owner[k]
        self.owner[k] = None
        pr, sc = self.pred[k], self.succ[k]
        if pr >= 0:
            self.succ[pr] = -1
        if sc >= 0:
            self.pred[sc] = -1
        self.pred[k] = self.succ[k] = -1
        self._leave(run)

        if pr < 0 and sc < 0:
            return
        if pr < 0 or sc < 0:
            if pr < 0:
                run.first = sc
            else:
                run.last = pr
            run.size -= 1
            self._enter(run)
            self.relocations += 1
            return

        edges = self.edges
        left = edges[pr].i - edges[run.first].i + 1
        right = edges[run.last].i - edges[sc].i + 1
        # the shorter piece gets a fresh run and its edges are re-pointed
        if left >= right:
            piece = self._new_run(sc, run.last, right)
            run.last = pr
            run.size = left
        else:
            piece = self._new_run(run.first, pr, left)
            run.first = sc
            run.size = right
        for t in self.run_edges(piece):
            self.owner[t] = piece
            self.relabels += 1
        self._enter(run)
        self._enter(piece)
        self.relocations += 2


def initial_streak_scan(g: DuoGraph) -> StreakIndex:
    idx = StreakIndex(g)
    id_of = idx.id_of
    # edge_list is in (i, j) order, so a predecessor always precedes its successor
    for k, e in enumerate(idx.edges):
        p = id_of.get((e.i - 1, e.j - 1))
        if p is not None:
            idx.pred[k] = p
            idx.succ[p] = k
            run = idx.owner[p]
            run.last = k
            run.size += 1
        else:
            run = idx._new_run(k, k, 1)
        idx.owner[k] = run
    seen = set()
    for run in idx.owner:
        if run.uid not in seen:
            seen.add(run.uid)
            idx._enter(run)
    return idx


def remove_edge(idx: StreakIndex, e: tuple[int, int]) -> None:
    idx.remove_edge(e)


@dataclass(frozen=True)
class GreedyStep:
    step: int
    streak: Streak
    removed: frozenset[Edge]


@dataclass
class GreedyTrace:
    steps: list[GreedyStep] = field(default_factory=list)
    removals: int = 0
    relocations: int = 0
    relabels: int = 0

    def __iter__(self) -> Iterator[GreedyStep]:
        return iter(self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def streaks(self) -> list[Streak]:
        return [s.streak for s in self.steps]


def greedy(g: DuoGraph, k: int, check: bool = False) -> tuple[ConsecutiveMatching, DuoGraph, GreedyTrace]:
    """Repeatedly take a longest live streak of length at least ``k``.

    Taking a streak deletes it and every edge overlapping it.  Returns the
    chosen edges, the residual graph of surviving edges, and the step trace.
    With ``check`` set, each choice is re-verified against a from-scratch
    streak computation.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    idx = initial_streak_scan(g)
    trace = GreedyTrace()
    chosen: list[Edge] = []
    by_a, by_b = g.by_a, g.by_b
    while True:
        s = idx.longest()
        if s is None or s.len < k:
            break
        if check:
            _check_choice(idx, s)
        removed = []
        for a in range(s.p, s.p + s.len + 2):
            for e in by_a[a]:
                if idx.is_live(e):
                    idx.remove_edge(e)
                    removed.append(e)
        for b in range(s.q, s.q + s.len + 2):
            for e in by_b[b]:
                if idx.is_live(e):
                    idx.remove_edge(e)
                    removed.append(e)
        chosen.extend(s.edges())
        trace.steps.append(GreedyStep(len(trace.steps) + 1, s, frozenset(removed)))
    trace.removals = idx.removals
    trace.relocations = idx.relocations
    trace.relabels = idx.relabels
    residual = DuoGraph(g.n_a, g.n_b, idx.live_edges())
    return ConsecutiveMatching(chosen), residual, trace


def _check_choice(idx: StreakIndex, s: Streak) -> None:
    fresh = graph_streaks(idx.live_edges())
    best = max(r.len for r in fresh)
    first = min(r for r in fresh if r.len == best)
    assert s == first, f"greedy picked {s}, fresh scan says {first}"
