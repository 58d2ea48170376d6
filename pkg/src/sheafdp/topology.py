"""Finite topological spaces generated from bases.

Opens are ``frozenset`` objects of point indices. A :class:`Topology` keeps
them deduplicated in canonical order (cardinality first, then the sorted
member list), together with a packed bit-row copy used by the kernels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

from . import kernels
from ._bits import row_to_set, sets_to_rows, to_mask
from .errors import InvalidBase, LatticeTooLarge, NoExtension

OpenSet = frozenset
DEFAULT_MAX_OPENS = 1_000_000


def canonical_key(members) -> tuple:
    """Sort key of the canonical total order on opens."""
    return (len(members), tuple(sorted(members)))


@dataclass(frozen=True)
class Base:
    point_count: int
    elements: tuple

    def __init__(self, point_count: int, elements: Iterable[Iterable[int]] = ()):
        object.__setattr__(self, "point_count", int(point_count))
        object.__setattr__(self, "elements", tuple(frozenset(e) for e in elements))


@dataclass(frozen=True)
class Violation:
    """A failed structural check together with a witness."""

    kind: str
    message: str
    witness: tuple = ()

    def __str__(self):
        return f"{self.kind}: {self.message}"


def validate_base(b: Base) -> list[Violation]:
    """Check coverage and the pointwise intersection property of a base."""
    out = []
    universe = frozenset(range(b.point_count))
    for k, e in enumerate(b.elements):
        stray = sorted(e - universe)
        if stray:
            out.append(Violation("range", f"element {k} has points outside [0, {b.point_count}): {stray}", (k, stray[0])))
    covered = frozenset().union(*b.elements) if b.elements else frozenset()
    for x in sorted(universe - covered):
        out.append(Violation("cover", f"point {x} uncovered", (x,)))
    elements = list(dict.fromkeys(b.elements))
    masks = [to_mask(e) for e in elements]
    present = set(masks)
    for (u1, m1), (u2, m2) in itertools.combinations(zip(elements, masks), 2):
        inter = m1 & m2
        if inter in present:
            continue
        # points of the intersection reachable through base elements inside it
        inner = 0
        for m3 in masks:
            if m3 & ~inter == 0:
                inner |= m3
        missing = inter & ~inner
        if missing:
            x = (missing & -missing).bit_length() - 1
            out.append(Violation(
                "intersection",
                f"point {x} of {sorted(u1)} & {sorted(u2)} lies in no base element inside the intersection",
                (sorted(u1), sorted(u2), x),
            ))
    return out


@dataclass(frozen=True, eq=False)
class Topology:
    point_count: int
    opens: tuple
    labels: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {u: k for k, u in enumerate(self.opens)})

    def __eq__(self, other):
        if not isinstance(other, Topology):
            return NotImplemented
        return self.point_count == other.point_count and self.opens == other.opens

    def __hash__(self):
        return hash((self.point_count, self.opens))

    def __len__(self):
        return len(self.opens)

    def __contains__(self, u):
        return frozenset(u) in self._index

    @property
    def points(self) -> frozenset:
        return frozenset(range(self.point_count))

    @property
    def empty(self) -> frozenset:
        return self.opens[0]

    @property
    def full(self) -> frozenset:
        return self.opens[-1]

    def index(self, u) -> int:
        try:
            return self._index[frozenset(u)]
        except KeyError:
            raise KeyError(f"{sorted(u)} is not open") from None

    def label(self, x):
        return self.labels[x] if self.labels is not None else x

    @cached_property
    def masks(self) -> np.ndarray:
        return sets_to_rows(self.opens, self.point_count)

    @cached_property
    def cards(self) -> np.ndarray:
        return np.array([len(u) for u in self.opens], dtype=np.int64)

    @cached_property
    def inclusion_order(self) -> np.ndarray:
        """Boolean matrix; ``[i, j]`` is True iff ``opens[i] <= opens[j]``."""
        return kernels.subset_matrix(self.masks)

    def minimal_neighborhood(self, x: int) -> frozenset:
        """Intersection of all opens containing ``x``."""
        word, bit = divmod(x, 64)
        hit = (self.masks[:, word] >> np.uint64(bit)) & np.uint64(1)
        rows = self.masks[hit.astype(bool)]
        if rows.shape[0] == 0:
            raise KeyError(f"point {x} is in no open")
        return row_to_set(np.bitwise_and.reduce(rows, axis=0))


def _from_opens(point_count, opens, labels=None) -> Topology:
    return Topology(point_count, tuple(sorted(set(opens), key=canonical_key)), labels)


def generate_topology(b: Base, max_opens: int = DEFAULT_MAX_OPENS, labels=None) -> Topology:
    """All unions of subfamilies of the base elements, canonically ordered."""
    violations = validate_base(b)
    if violations:
        raise InvalidBase(violations)
    elements = sorted(set(b.elements), key=canonical_key)
    base_rows = sets_to_rows(elements, b.point_count)
    rows, ok = kernels.union_closure(base_rows, max_opens)
    if not ok:
        raise LatticeTooLarge(f"more than {max_opens} opens")
    opens = [row_to_set(r) for r in rows]
    return _from_opens(b.point_count, opens, labels)


def from_opens(point_count: int, opens: Iterable[Iterable[int]], labels=None) -> Topology:
    """Regenerate a topology using a full collection of opens as the base."""
    return generate_topology(Base(point_count, opens), labels=labels)


def minimal_open_supersets(t: Topology, u) -> list[frozenset]:
    u = frozenset(u)
    if u == t.full:
        raise NoExtension(f"{sorted(u)} is the whole space")
    k = t.index(u)
    idx = kernels.minimal_supersets(t.masks, t.cards, k)
    return [t.opens[j] for j in idx]


def check_minimal_extension_property(t: Topology) -> list[Violation]:
    """Distinct minimal supersets of any open must intersect in that open."""
    out = []
    for u in t.opens[:-1]:
        for a, b in itertools.combinations(minimal_open_supersets(t, u), 2):
            if a & b != u:
                out.append(Violation(
                    "minimal-extension",
                    f"{sorted(a)} & {sorted(b)} != {sorted(u)}",
                    (sorted(u), sorted(a), sorted(b)),
                ))
    return out


def subspace_topology(t: Topology, y: Iterable[int]) -> Topology:
    """Opens ``y & U``; points are renumbered to ``0..len(y)-1`` in sorted order."""
    y = sorted(set(y))
    stray = [x for x in y if not 0 <= x < t.point_count]
    if stray:
        raise ValueError(f"points {stray} are not in the space")
    renumber = {x: k for k, x in enumerate(y)}
    ys = frozenset(y)
    opens = {frozenset(renumber[x] for x in u & ys) for u in t.opens}
    labels = tuple(t.label(x) for x in y) if t.labels is not None else None
    return _from_opens(len(y), opens, labels)


def is_noetherian(t: Topology) -> bool:
    """Verify the ascending chain condition on the open-set lattice.

    Every covering step must move forward in the canonical order, which makes
    the cover graph acyclic; the longest strictly ascending chain is then
    bounded by the number of opens, so every ascending chain stabilises.
    """
    height = [1] * len(t)
    for k, u in enumerate(t.opens[:-1]):
        for v in minimal_open_supersets(t, u):
            j = t.index(v)
            if j <= k:
                return False
            height[j] = max(height[j], height[k] + 1)
    return max(height) <= min(len(t), t.point_count + 1)
