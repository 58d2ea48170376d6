"""Built-in spaces and extension rules: chain recursion, grid alignment, quadric cone."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import kernels
from .engine import ExtensionRule
from .errors import GluingConflict, IndexOutOfRange, NotPrime, RuleDomainError
from .rings import PrimeField, is_prime
from .sheaf import Section
from .topology import Base, Topology, generate_topology

MAX_QUADRIC_PRIME = 13


# chain [n] = {0, ..., n}

def chain_space(n: int) -> Topology:
    if n < 0:
        raise ValueError("n must be non-negative")
    return generate_topology(Base(n + 1, [range(i + 1) for i in range(n + 1)]))


def _chain_step(current, target, ctx):
    start, inc = ctx
    out = {}
    for i in sorted(target - current.domain):
        prev = out.get(i - 1, current.get(i - 1))
        if i == 0:
            out[i] = start
        elif prev is None:
            raise RuleDomainError(f"point {i - 1} has no value yet")
        else:
            out[i] = prev + inc
    return out


def chain_rule(start=0, increment=1) -> ExtensionRule:
    """``s(0) = start`` and ``s(i) = s(i-1) + increment``."""
    return ExtensionRule(_chain_step, (start, increment), "chain")


# staircase [m] x [n]

def grid_index(i: int, j: int, m: int) -> int:
    """Point id of cell ``(i, j)``; ``i`` varies fastest."""
    return j * (m + 1) + i


def staircase_space(m: int, n: int) -> Topology:
    """Grid ``[m] x [n]`` whose base is the lower-left rectangles; opens are staircases."""
    if m < 0 or n < 0:
        raise ValueError("grid extents must be non-negative")
    rects = [
        [grid_index(k, l, m) for k in range(i + 1) for l in range(j + 1)]
        for i in range(m + 1)
        for j in range(n + 1)
    ]
    labels = tuple((i, j) for j in range(n + 1) for i in range(m + 1))
    return generate_topology(Base((m + 1) * (n + 1), rects), labels=labels)


@dataclass(frozen=True)
class GridCost:
    """Cost ``c(i, j)`` for every cell of ``[m] x [n]``."""

    m: int
    n: int
    c: tuple

    def __init__(self, c):
        rows = tuple(tuple(r) for r in c)
        if not rows or any(len(r) != len(rows[0]) for r in rows) or not rows[0]:
            raise ValueError("cost table must be a non-empty rectangle")
        object.__setattr__(self, "c", rows)
        object.__setattr__(self, "m", len(rows) - 1)
        object.__setattr__(self, "n", len(rows[0]) - 1)

    def __call__(self, i, j):
        return self.c[i][j]


@dataclass(frozen=True)
class AlignmentScoring:
    seq_a: str
    seq_b: str
    match: object = 0
    mismatch: object = 1
    gap: object = 1

    @property
    def m(self):
        return len(self.seq_a)

    @property
    def n(self):
        return len(self.seq_b)


def _grid_predecessors(i, j, moves):
    for di, dj in moves:
        if i - di >= 0 and j - dj >= 0:
            yield i - di, j - dj


def _nw_step(current, target, ctx):
    m, move_cost = ctx
    out = {}
    for x in sorted(target - current.domain):
        j, i = divmod(x, m + 1)
        if i == 0 and j == 0:
            out[x] = 0
            continue
        terms = []
        for pi, pj in _grid_predecessors(i, j, ((1, 0), (0, 1), (1, 1))):
            px = grid_index(pi, pj, m)
            pv = out.get(px, current.get(px))
            if pv is None:
                raise RuleDomainError(f"cell {(pi, pj)} needed for {(i, j)} has no value")
            terms.append(pv + move_cost(pi, pj, i, j))
        out[x] = min(terms)
    return out


def nw_rule(cost: GridCost) -> ExtensionRule:
    """Min over the three predecessors, each paying the cost of the cell it leaves."""
    return ExtensionRule(_nw_step, (cost.m, lambda pi, pj, i, j: cost(pi, pj)), "nw")


def alignment_cost(s: AlignmentScoring, m: int | None = None, n: int | None = None) -> GridCost:
    """Pairing costs ``c(i, j)`` for symbol ``i`` of ``seq_a`` against symbol ``j`` of ``seq_b``.

    The last row and column are never left diagonally and hold zero.
    """
    m = s.m if m is None else m
    n = s.n if n is None else n
    if len(s.seq_a) < m or len(s.seq_b) < n:
        raise IndexOutOfRange(f"sequences of lengths {s.m}, {s.n} do not cover a {m} x {n} grid")
    zero = s.match - s.match
    return GridCost([
        [(s.match if s.seq_a[i] == s.seq_b[j] else s.mismatch) if i < m and j < n else zero
         for j in range(n + 1)]
        for i in range(m + 1)
    ])


def nw_rule_scored(s: AlignmentScoring) -> ExtensionRule:
    """Global alignment with linear gaps: indels cost ``gap``, pairs use :func:`alignment_cost`."""
    cost = alignment_cost(s)

    def move_cost(pi, pj, i, j):
        return cost(pi, pj) if (pi, pj) == (i - 1, j - 1) else s.gap

    return ExtensionRule(_nw_step, (cost.m, move_cost), "nw-scored")


def grid_table(section: Section, m: int, n: int) -> list[list]:
    return [[section[grid_index(i, j, m)] for j in range(n + 1)] for i in range(m + 1)]


def nw_table(cost: GridCost) -> np.ndarray:
    """Direct float table fill of the source-cost recurrence (no sheaf machinery)."""
    return kernels.nw_fill(np.asarray(cost.c, dtype=np.float64))


def nw_scored_table(s: AlignmentScoring) -> np.ndarray:
    diag = np.array(
        [[float(s.match if a == b else s.mismatch) for b in s.seq_b] for a in s.seq_a],
        dtype=np.float64,
    ).reshape(s.m, s.n)
    return kernels.nw_fill_scored(diag, float(s.gap))


def traceback(table, s: AlignmentScoring) -> tuple[str, str]:
    """One optimal alignment read back from a finished score table.

    Ties prefer a diagonal move, then a gap in ``seq_b``, then a gap in ``seq_a``.
    """
    i, j = s.m, s.n
    top, bottom = [], []
    while i or j:
        here = table[i][j]
        if i and j:
            pair = s.match if s.seq_a[i - 1] == s.seq_b[j - 1] else s.mismatch
            if table[i - 1][j - 1] + pair == here:
                top.append(s.seq_a[i - 1])
                bottom.append(s.seq_b[j - 1])
                i, j = i - 1, j - 1
                continue
        if i and table[i - 1][j] + s.gap == here:
            top.append(s.seq_a[i - 1])
            bottom.append("-")
            i -= 1
        else:
            top.append("-")
            bottom.append(s.seq_b[j - 1])
            j -= 1
    return "".join(reversed(top)), "".join(reversed(bottom))


# quadric cone x1*x4 = x2*x3 over F_p

class QuadricPoint(NamedTuple):
    x1: int
    x2: int
    x3: int
    x4: int


def quadric_points(p: int) -> list[QuadricPoint]:
    return [
        QuadricPoint(*x)
        for x in itertools.product(range(p), repeat=4)
        if (x[0] * x[3] - x[1] * x[2]) % p == 0
    ]


def quadric_opens(points: Sequence[QuadricPoint]) -> dict[str, frozenset]:
    d2 = frozenset(k for k, q in enumerate(points) if q.x2)
    d4 = frozenset(k for k, q in enumerate(points) if q.x4)
    return {"X": frozenset(range(len(points))), "D2": d2, "D4": d4, "D24": d2 & d4, "U": d2 | d4}


def quadric_space(p: int) -> tuple[Topology, list[QuadricPoint]]:
    """Quadric over ``F_p`` with the topology generated by ``X, D(x2), D(x4), D(x2) & D(x4)``."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p > MAX_QUADRIC_PRIME:
        raise ValueError(f"p must be at most {MAX_QUADRIC_PRIME}")
    points = quadric_points(p)
    o = quadric_opens(points)
    t = generate_topology(Base(len(points), [o["X"], o["D2"], o["D4"], o["D24"]]), labels=tuple(points))
    return t, points


def _quadric_value(q: QuadricPoint, field: PrimeField, f, default):
    via2 = f(field.div(q.x1, q.x2)) if q.x2 else None
    via4 = f(field.div(q.x3, q.x4)) if q.x4 else None
    if via2 is not None and via4 is not None and via2 != via4:
        raise GluingConflict(f"{tuple(q)}: quotient formulas give {via2} and {via4}")
    if via2 is not None:
        return via2
    if via4 is not None:
        return via4
    return default


def _quadric_step(current, target, ctx):
    points, field, f, default = ctx
    return {x: _quadric_value(points[x], field, f, default) for x in target - current.domain}


def quadric_rule(points: Sequence[QuadricPoint], p: int, f: Callable[[int], int] | None = None,
                 default: int = 1) -> ExtensionRule:
    """``f(x1/x2)`` where ``x2 != 0``, ``f(x3/x4)`` where ``x4 != 0``, ``default`` elsewhere."""
    field = PrimeField(p)
    f = f or (lambda v: v)
    table = tuple(field.coerce(f(v)) for v in range(p))
    return ExtensionRule(_quadric_step, (tuple(points), field, table.__getitem__, field.coerce(default)),
                         "quadric", field)


def quadric_sections(points: Sequence[QuadricPoint], p: int, f: Callable[[int], int] | None = None):
    """The two local sections ``f(x1/x2)`` on ``D(x2)`` and ``f(x3/x4)`` on ``D(x4)``."""
    field = PrimeField(p)
    f = f or (lambda v: v)
    o = quadric_opens(points)
    s2 = Section({k: field.coerce(f(field.div(points[k].x1, points[k].x2))) for k in o["D2"]})
    s4 = Section({k: field.coerce(f(field.div(points[k].x3, points[k].x4))) for k in o["D4"]})
    return (o["D2"], s2), (o["D4"], s4)


def parse_field_map(text: str, p: int) -> Callable[[int], int]:
    """``identity``, ``power:K`` (x -> x**K) or ``table:v0,v1,...`` (one value per element)."""
    text = text.strip()
    if text == "identity":
        return lambda v: v % p
    kind, _, arg = text.partition(":")
    if kind == "power":
        k = int(arg)
        if k < 0:
            raise ValueError("power must be non-negative")
        return lambda v: pow(v, k, p)
    if kind == "table":
        vals = [int(v) % p for v in arg.split(",")]
        if len(vals) != p:
            raise ValueError(f"table needs {p} entries, got {len(vals)}")
        return vals.__getitem__
    raise ValueError(f"unknown field map {text!r}")


def parse_cost_table(text: str) -> GridCost:
    """Rows of space-separated decimals, row ``i`` holding ``c(i, 0..n)``; exact rationals."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append([Fraction(tok) for tok in line.split()])
    return GridCost(rows)
