"""Bounded-size improvement search.

A move adds up to ``t`` edges and removes fewer solution edges than it adds.
For a fixed set of additions the cheapest legal removal is forced: exactly
the solution edges that clash with some added edge.  Removing anything else
never makes the result valid where it was not, so the search enumerates
addition sets only.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable

from .core import ConsecutiveMatching, DuoGraph, Edge, conflict_masks

__all__ = ["ImprovementMove", "find_move", "bounded_size_improvements", "candidate_envelope"]


@dataclass(frozen=True)
class ImprovementMove:
    add: frozenset[Edge]
    remove: frozenset[Edge]

    def apply(self, alg: Iterable[Edge]) -> set[Edge]:
        return (set(alg) - self.remove) | self.add


def candidate_envelope(m: int, t: int) -> int:
    """Number of edge subsets of size 1..t; caps the candidates of one search."""
    return sum(comb(m, s) for s in range(1, t + 1))


def find_move(
    g: DuoGraph,
    t: int,
    alg: Iterable[tuple[int, int]],
    stats: dict | None = None,
    _masks: list[int] | None = None,
) -> ImprovementMove | None:
    """First improving move, scanning addition sets by size then lexicographically.

    Addition sets containing two clashing edges are skipped without being
    counted.  ``stats["candidates"]`` accumulates the number of consistent
    addition sets whose forced removal was evaluated.
    """
    edges = g.edge_list
    masks = conflict_masks(g) if _masks is None else _masks
    alg_set = {Edge(*e) for e in alg}
    alg_mask = 0
    for k, e in enumerate(edges):
        if e in alg_set:
            alg_mask |= 1 << k
    free = [k for k in range(len(edges)) if not alg_mask >> k & 1]
    counted = 0

    def search(size: int, start: int, chosen: list[int], blocked: int, removed: int):
        nonlocal counted
        if len(chosen) == size:
            counted += 1
            return chosen[:] if removed.bit_count() < size else None
        need = size - len(chosen)
        for pos in range(start, len(free) - need + 1):
            k = free[pos]
            if blocked >> k & 1:
                continue
            r = removed | (masks[k] & alg_mask)
            # removals only grow as edges are added
            if r.bit_count() >= size:
                continue
            chosen.append(k)
            hit = search(size, pos + 1, chosen, blocked | masks[k], r)
            chosen.pop()
            if hit is not None:
                return hit
        return None

    try:
        for size in range(1, t + 1):
            if size > len(free):
                break
            hit = search(size, 0, [], 0, 0)
            if hit is not None:
                add = frozenset(edges[k] for k in hit)
                removal = 0
                for k in hit:
                    removal |= masks[k] & alg_mask
                remove = frozenset(edges[k] for k in range(len(edges)) if removal >> k & 1)
                return ImprovementMove(add, remove)
        return None
    finally:
        if stats is not None:
            stats["candidates"] = stats.get("candidates", 0) + counted


def bounded_size_improvements(
    g: DuoGraph,
    t: int,
    start: Iterable[tuple[int, int]] = (),
    stats: dict | None = None,
) -> ConsecutiveMatching:
    if t < 1:
        raise ValueError("t must be at least 1")
    masks = conflict_masks(g)
    alg = {Edge(*e) for e in start}
    moves = 0
    while True:
        move = find_move(g, t, alg, stats, _masks=masks)
        if move is None:
            break
        alg = move.apply(alg)
        moves += 1
    if stats is not None:
        stats["moves"] = stats.get("moves", 0) + moves
    return ConsecutiveMatching(alg)
