"""End-to-end solvers: a greedy streak phase followed by a residual phase."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .bounded import bounded_size_improvements, candidate_envelope
from .core import ConsecutiveMatching, DuoGraph, is_valid
from .errors import EpsilonOutOfRange, SizeGuardExceeded
from .greedy import GreedyTrace, greedy
from .local_search import fast_local_improvements
from .matching import approx3_phase2

__all__ = [
    "PipelineReport",
    "DEFAULT_BUDGET",
    "ALGORITHMS",
    "eps_parameters",
    "approx4",
    "approx3",
    "approx267",
    "approx_eps",
    "run_algorithm",
]

DEFAULT_BUDGET = 10**9


@dataclass
class PipelineReport:
    algorithm: str
    guarantee: Fraction
    solution: ConsecutiveMatching
    greedy_part: ConsecutiveMatching
    second_part: ConsecutiveMatching
    timings_ms: dict[str, float]
    fingerprint: str
    params: dict = field(default_factory=dict)
    trace: GreedyTrace | None = None
    stats: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.solution)

    @property
    def phase_sizes(self) -> tuple[int, int]:
        return len(self.greedy_part), len(self.second_part)


def _compose(name, guarantee, g, k, second, params) -> PipelineReport:
    t0 = time.perf_counter()
    first, residual, trace = greedy(g, k)
    t1 = time.perf_counter()
    stats: dict = {}
    rest = second(residual, stats) if second is not None else ConsecutiveMatching()
    t2 = time.perf_counter()

    # the residual holds no edge overlapping a greedy streak
    assert not any(_touches(e, first) for e in rest.edges)
    solution = first.union(rest.edges)
    assert is_valid(solution, g), "combined solution is not a consecutive matching"
    return PipelineReport(
        algorithm=name,
        guarantee=guarantee,
        solution=solution,
        greedy_part=first,
        second_part=rest,
        timings_ms={"phase1": (t1 - t0) * 1e3, "phase2": (t2 - t1) * 1e3},
        fingerprint=g.fingerprint(),
        params={"k": k, **params},
        trace=trace,
        stats=stats,
    )


def _touches(e, m: ConsecutiveMatching) -> bool:
    return any(d in m.mate_a for d in (e[0] - 1, e[0], e[0] + 1)) or any(
        d in m.mate_b for d in (e[1] - 1, e[1], e[1] + 1)
    )


def approx4(g: DuoGraph) -> PipelineReport:
    return _compose("approx4", Fraction(4), g, 1, None, {})


def approx3(g: DuoGraph) -> PipelineReport:
    return _compose("approx3", Fraction(3), g, 2, approx3_phase2, {})


def approx267(g: DuoGraph) -> PipelineReport:
    return _compose("approx267", Fraction(8, 3), g, 3, fast_local_improvements, {})


def _as_fraction(epsilon) -> Fraction:
    if isinstance(epsilon, float):
        # decimal literal, so 0.1 means 1/10
        return Fraction(repr(epsilon))
    return Fraction(epsilon)


def eps_parameters(epsilon) -> tuple[int, int]:
    """Greedy threshold ``k`` and move size ``t`` for a target ratio of ``2 + epsilon``."""
    eps = _as_fraction(epsilon)
    if eps <= 0:
        raise EpsilonOutOfRange(f"epsilon must be positive, got {epsilon}")
    k = max(1, ceil(2 / eps))
    t = ceil(4 / eps) + 1
    return k, t


def approx_eps(g: DuoGraph, epsilon, budget: int = DEFAULT_BUDGET) -> PipelineReport:
    """Greedy with ``k = ceil(2/eps)`` then bounded improvements with ``t = ceil(4/eps) + 1``.

    Raises ``SizeGuardExceeded`` before the second phase when the projected
    candidate count (one full scan per possible growth step) is over ``budget``.
    """
    eps = _as_fraction(epsilon)
    k, t = eps_parameters(eps)

    def second(residual: DuoGraph, stats: dict) -> ConsecutiveMatching:
        steps = min(residual.n_a, residual.n_b, len(residual)) + 1
        projected = steps * candidate_envelope(len(residual), t)
        stats["projected_candidates"] = projected
        if projected > budget:
            raise SizeGuardExceeded(
                f"projected {projected} candidate evaluations exceeds budget {budget}"
            )
        return bounded_size_improvements(residual, t, (), stats)

    return _compose("eps", 2 + eps, g, k, second, {"t": t, "epsilon": eps})


ALGORITHMS = ("approx4", "approx3", "approx267", "eps")


def run_algorithm(name: str, g: DuoGraph, epsilon=None, budget: int = DEFAULT_BUDGET) -> PipelineReport:
    if name == "approx4":
        return approx4(g)
    if name == "approx3":
        return approx3(g)
    if name == "approx267":
        return approx267(g)
    if name == "eps":
        if epsilon is None:
            raise EpsilonOutOfRange("algorithm 'eps' needs an epsilon")
        return approx_eps(g, epsilon, budget)
    raise ValueError(f"unknown algorithm {name!r}")
