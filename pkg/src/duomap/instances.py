"""Instance files, generators, letter mappings and report serialization.

Two text formats are read and written::

    mpsm            mcbm nA nB m
    <X>             i j
    <Y>             ...            (m lines, 1-based)
"""

from __future__ import annotations

import json
import random
import string
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import NamedTuple, Union

from .core import ConsecutiveMatching, DuoGraph, build_from_strings, decompose_streaks, is_valid
from .errors import InvalidMatching, ParseError, PermutationMismatch

__all__ = [
    "MPSMInstance",
    "LetterMapping",
    "extract_letter_mapping",
    "mcsp_pieces",
    "parse_instance",
    "serialize_instance",
    "load_instance",
    "as_graph",
    "gen_mcsp_instance",
    "gen_random_graph",
    "gen_staircase_graph",
    "FORMAT_VERSION",
    "report_dict",
    "CSV_FIELDS",
]

ALPHABET = string.ascii_lowercase + string.ascii_uppercase + string.digits
FORMAT_VERSION = 1


class MPSMInstance(NamedTuple):
    x: str
    y: str


Instance = Union[MPSMInstance, DuoGraph]


@dataclass(frozen=True)
class LetterMapping:
    """``targets[p - 1]`` is the Y-position that X-position ``p`` maps to."""

    targets: tuple[int, ...]

    def __call__(self, p: int) -> int:
        return self.targets[p - 1]

    def __len__(self) -> int:
        return len(self.targets)

    def is_bijection(self) -> bool:
        return sorted(self.targets) == list(range(1, len(self.targets) + 1))

    def preserves_letters(self, x: str, y: str) -> bool:
        return all(x[p] == y[t - 1] for p, t in enumerate(self.targets))

    def preserved_duos(self) -> int:
        t = self.targets
        return sum(1 for p in range(len(t) - 1) if t[p + 1] == t[p] + 1)


def extract_letter_mapping(x: str, y: str, m: ConsecutiveMatching) -> LetterMapping:
    """Letter mapping that keeps every duo of the matching.

    Each streak pins a block of consecutive letters; the rest are paired per
    character in ascending position order on both sides.
    """
    g = build_from_strings(x, y)
    if not is_valid(m, g):
        raise InvalidMatching("matching is not valid on the duo graph of the strings")
    n = len(x)
    targets = [0] * (n + 1)
    used_y = [False] * (n + 1)
    for s in decompose_streaks(m):
        for d in range(1, s.len + 2):
            p, q = s.p + d, s.q + d
            # non-overlapping streaks have letter blocks at distance >= 1
            assert targets[p] == 0 and not used_y[q], "streak letter blocks overlap"
            targets[p] = q
            used_y[q] = True
    free_y: dict[str, list[int]] = {}
    for q in range(n, 0, -1):
        if not used_y[q]:
            free_y.setdefault(y[q - 1], []).append(q)
    for p in range(1, n + 1):
        if targets[p] == 0:
            targets[p] = free_y[x[p - 1]].pop()
    return LetterMapping(tuple(targets[1:]))


def mcsp_pieces(x: str, mapping: LetterMapping) -> int:
    """Blocks of X that move as one piece under ``mapping``."""
    if len(mapping) != len(x):
        raise ValueError("mapping length differs from the string length")
    t = mapping.targets
    return 1 + sum(1 for p in range(len(t) - 1) if t[p + 1] != t[p] + 1)


# file formats


def parse_instance(data: bytes | str) -> Instance:
    if isinstance(data, bytes):
        data = data.decode("latin-1")
    lines = data.splitlines()
    if not lines:
        raise ParseError("empty input")
    head = lines[0].split()
    if not head:
        raise ParseError("missing header")
    kind = head[0].lower()
    if kind == "mpsm":
        return _parse_mpsm(head, lines[1:])
    if kind == "mcbm":
        return _parse_mcbm(head, lines[1:])
    raise ParseError(f"unknown instance kind {head[0]!r}")


def _parse_mpsm(head: list[str], body: list[str]) -> MPSMInstance:
    if len(head) != 1:
        raise ParseError("malformed mpsm header")
    while body and body[-1] == "":
        body = body[:-1]
    if len(body) != 2:
        raise ParseError(f"mpsm instance needs exactly two string lines, got {len(body)}")
    x, y = body
    try:
        build_from_strings(x, y)
    except PermutationMismatch as exc:
        raise ParseError(str(exc)) from exc
    return MPSMInstance(x, y)


def _parse_mcbm(head: list[str], body: list[str]) -> DuoGraph:
    try:
        n_a, n_b, m = (int(v) for v in head[1:])
    except ValueError:
        raise ParseError("mcbm header must be 'mcbm nA nB m'") from None
    if min(n_a, n_b, m) < 0:
        raise ParseError("negative count in header")
    rows = [line for line in body if line.strip()]
    if len(rows) != m:
        raise ParseError(f"header announces {m} edges, found {len(rows)}")
    edges = []
    for lineno, line in enumerate(rows, start=2):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'i j'")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer index") from None
        if not (1 <= i <= n_a and 1 <= j <= n_b):
            raise ParseError(f"line {lineno}: edge ({i}, {j}) out of range")
        edges.append((i, j))
    return DuoGraph(n_a, n_b, edges)


def serialize_instance(inst: Instance) -> str:
    if isinstance(inst, MPSMInstance):
        return f"mpsm\n{inst.x}\n{inst.y}\n"
    lines = [f"mcbm {inst.n_a} {inst.n_b} {len(inst)}"]
    lines.extend(f"{i} {j}" for i, j in inst.edge_list)
    return "\n".join(lines) + "\n"


def load_instance(path: str | Path) -> Instance:
    return parse_instance(Path(path).read_bytes())


def as_graph(inst: Instance) -> DuoGraph:
    if isinstance(inst, MPSMInstance):
        return build_from_strings(inst.x, inst.y)
    return inst


# generators


def gen_mcsp_instance(n: int, blocks: int, sigma: int, seed: int) -> MPSMInstance:
    """Random X, and Y made by cutting X into ``blocks`` pieces and shuffling them."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 1 <= blocks <= n:
        raise ValueError("blocks must lie in 1..n")
    if not 1 <= sigma <= len(ALPHABET):
        raise ValueError(f"alphabet size must lie in 1..{len(ALPHABET)}")
    rng = random.Random(seed)
    letters = ALPHABET[:sigma]
    x = "".join(rng.choice(letters) for _ in range(n))
    cuts = sorted(rng.sample(range(1, n), blocks - 1))
    bounds = [0, *cuts, n]
    pieces = [x[a:b] for a, b in zip(bounds, bounds[1:])]
    rng.shuffle(pieces)
    return MPSMInstance(x, "".join(pieces))


def gen_random_graph(n_a: int, n_b: int, p: float, seed: int) -> DuoGraph:
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    if n_a < 0 or n_b < 0:
        raise ValueError("node counts must be non-negative")
    rng = random.Random(seed)
    edges = [(i, j) for i in range(1, n_a + 1) for j in range(1, n_b + 1) if rng.random() < p]
    return DuoGraph(n_a, n_b, edges)


def gen_staircase_graph(
    n: int, seed: int, streaks: int | None = None, max_len: int = 8, noise: float = 2.0
) -> DuoGraph:
    """Square graph built from random diagonal runs plus scattered single edges.

    ``streaks`` defaults to ``n`` runs of length 1..max_len; ``noise`` is the
    number of extra isolated edges per node.  Edge count grows linearly in n.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(seed)
    count = n if streaks is None else streaks
    edges = set()
    for _ in range(count):
        length = rng.randint(1, min(max_len, n))
        i0 = rng.randint(1, n - length + 1)
        j0 = rng.randint(1, n - length + 1)
        edges.update((i0 + d, j0 + d) for d in range(length))
    for _ in range(int(noise * n)):
        edges.add((rng.randint(1, n), rng.randint(1, n)))
    return DuoGraph(n, n, edges)


# reports

CSV_FIELDS = [
    "instance",
    "generator",
    "seed",
    "n_a",
    "n_b",
    "edges",
    "algorithm",
    "epsilon",
    "k",
    "t",
    "guarantee",
    "size",
    "opt",
    "ratio",
    "within_guarantee",
    "error",
    "phase1_ms",
    "phase2_ms",
]

TIMING_FIELDS = ("phase1_ms", "phase2_ms")


def report_dict(report, mapping: LetterMapping | None = None, pieces: int | None = None) -> dict:
    """JSON-ready view of a pipeline report."""
    out: dict = {
        "format_version": FORMAT_VERSION,
        "algorithm": report.algorithm,
    }
    eps = report.params.get("epsilon")
    if eps is not None:
        out["epsilon"] = float(eps)
    out.update(
        size=report.size,
        guarantee=str(report.guarantee),
        edges=[[e.i, e.j] for e in report.solution.sorted_edges()],
        params={k: (str(v) if isinstance(v, Fraction) else v) for k, v in report.params.items()},
        phase_sizes=list(report.phase_sizes),
        fingerprint=report.fingerprint,
    )
    if mapping is not None:
        out["mapping"] = list(mapping.targets)
    if pieces is not None:
        out["pieces"] = pieces
    out["timings_ms"] = dict(report.timings_ms)
    return out


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
