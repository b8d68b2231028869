"""Exact solvers for small instances, used to check the approximations."""

from __future__ import annotations

from typing import Iterable

from .core import ConsecutiveMatching, DuoGraph, Edge, conflict_masks
from .errors import InstanceTooLarge

__all__ = ["DEFAULT_CAP", "exact_opt", "audit_local_optimum"]

DEFAULT_CAP = 24


def _guard(g: DuoGraph, cap: int) -> None:
    if len(g) > cap:
        raise InstanceTooLarge(f"{len(g)} edges exceeds the oracle cap of {cap}")


def exact_opt(g: DuoGraph, cap: int = DEFAULT_CAP) -> ConsecutiveMatching:
    """Maximum consecutive matching by branch and bound.

    Edges are branched in lexicographic order, include before exclude, and the
    incumbent is replaced only on strict improvement, so among optimal
    solutions the lexicographically smallest is returned.
    """
    _guard(g, cap)
    edges = g.edge_list
    masks = conflict_masks(g)
    best: list[int] = []
    chosen: list[int] = []

    def dfs(cand: int) -> None:
        nonlocal best
        if len(chosen) + cand.bit_count() <= len(best):
            return
        if not cand:
            best = chosen[:]
            return
        low = cand & -cand
        k = low.bit_length() - 1
        chosen.append(k)
        dfs(cand & ~low & ~masks[k])
        chosen.pop()
        dfs(cand & ~low)

    dfs((1 << len(edges)) - 1)
    return ConsecutiveMatching(edges[k] for k in best)


def audit_local_optimum(
    g: DuoGraph, alg: Iterable[tuple[int, int]], t: int, cap: int = DEFAULT_CAP
) -> bool:
    """True iff no move adding at most ``t`` edges and removing fewer improves ``alg``.

    Such a move exists exactly when some valid solution is larger than
    ``alg`` and contains at most ``t`` edges from outside it; the search
    looks for that solution directly.
    """
    _guard(g, cap)
    edges = g.edge_list
    masks = conflict_masks(g)
    alg_set = {Edge(*e) for e in alg}
    target = len(alg_set)
    inside = 0
    for k, e in enumerate(edges):
        if e in alg_set:
            inside |= 1 << k

    def better_exists(cand: int, size: int, fresh: int) -> bool:
        if size > target:
            return True
        budget = t - fresh
        reachable = (cand & inside).bit_count() + min(budget, (cand & ~inside).bit_count())
        if size + reachable <= target:
            return False
        low = cand & -cand
        k = low.bit_length() - 1
        new = not inside >> k & 1
        if (not new or budget > 0) and better_exists(cand & ~low & ~masks[k], size + 1, fresh + new):
            return True
        return better_exists(cand & ~low, size, fresh)

    return not better_exists((1 << len(edges)) - 1, 0, 0)
