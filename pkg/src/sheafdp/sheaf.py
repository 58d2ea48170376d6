"""The sheaf of ring-valued functions on a finite space.

A :class:`Section` is a total map from the points of one open set to ring
values. Restriction is literal function restriction, so the presheaf laws
and both sheaf axioms hold by construction; the functions below expose them
as checks so they can be exercised on arbitrary topologies.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .errors import (
    CoverMismatch,
    DomainMismatch,
    IncompatibleSections,
    NotASubset,
    PointNotInDomain,
)
from .rings import INTEGERS, Ring
from .topology import Topology, Violation

EXHAUSTIVE_LIMIT = 4096
MORPHISM_SAMPLES = 256


class Section:
    """Immutable assignment of values to the points of an open set."""

    __slots__ = ("_values", "_domain")

    def __init__(self, values: Mapping[int, object] = ()):
        self._values = dict(values)
        self._domain = frozenset(self._values)

    @classmethod
    def constant(cls, domain, value):
        return cls({x: value for x in domain})

    @property
    def domain(self) -> frozenset:
        return self._domain

    def __getitem__(self, x):
        try:
            return self._values[x]
        except KeyError:
            raise PointNotInDomain(f"point {x} not in domain") from None

    def get(self, x, default=None):
        return self._values.get(x, default)

    def items(self):
        """``(point, value)`` pairs in point order."""
        return sorted(self._values.items())

    def as_dict(self) -> dict:
        return dict(self._values)

    def __len__(self):
        return len(self._values)

    def __iter__(self):
        return iter(sorted(self._values))

    def __eq__(self, other):
        if not isinstance(other, Section):
            return NotImplemented
        return self._values == other._values

    def __hash__(self):
        return hash(frozenset(self._values.items()))

    def __repr__(self):
        body = ", ".join(f"{k}: {v!r}" for k, v in self.items())
        return f"Section({{{body}}})"

    def equals(self, other: "Section", ring: Ring = INTEGERS) -> bool:
        return self.domain == other.domain and all(ring.eq(v, other[x]) for x, v in self._values.items())


EMPTY = Section()


def restrict(s: Section, v) -> Section:
    v = frozenset(v)
    if not v <= s.domain:
        raise NotASubset(f"{sorted(v - s.domain)} not in section domain")
    return Section({x: s[x] for x in v})


def sections_equal_on_cover(sigma: Section, tau: Section, cover, ring: Ring = INTEGERS) -> bool:
    cover = [frozenset(u) for u in cover]
    union = frozenset().union(*cover)
    if sigma.domain != tau.domain:
        raise DomainMismatch("sections have different domains")
    if union != sigma.domain:
        raise CoverMismatch(f"cover union {sorted(union)} != domain {sorted(sigma.domain)}")
    return all(restrict(sigma, u).equals(restrict(tau, u), ring) for u in cover)


def glue(cover_sections: Iterable[tuple], ring: Ring = INTEGERS) -> Section:
    """Assemble pairwise compatible local sections into one section on the union.

    Each item is ``(open_set, section)``. Raises :class:`IncompatibleSections`
    with the first conflicting point found.
    """
    merged: dict = {}
    for u, s in cover_sections:
        if frozenset(u) != s.domain:
            raise DomainMismatch(f"section domain {sorted(s.domain)} != paired open {sorted(u)}")
        for x, v in s.items():
            if x in merged:
                if not ring.eq(merged[x], v):
                    raise IncompatibleSections(x, merged[x], v)
            else:
                merged[x] = v
    return Section(merged)


@dataclass(frozen=True)
class Germ:
    point: int
    value_on_min_nbhd: Section

    @property
    def neighborhood(self) -> frozenset:
        return self.value_on_min_nbhd.domain


def germ_at(s: Section, x: int, t: Topology) -> Germ:
    if x not in s.domain:
        raise PointNotInDomain(f"point {x} not in section domain")
    return Germ(x, restrict(s, t.minimal_neighborhood(x)))


def section_ring_ops(sigma: Section, tau: Section | None, op: str, ring: Ring = INTEGERS) -> Section:
    if op == "neg":
        return Section({x: ring.neg(v) for x, v in sigma.items()})
    if tau is None or sigma.domain != tau.domain:
        raise DomainMismatch("binary ring operations need sections on the same open")
    if op == "add":
        f = ring.add
    elif op == "mul":
        f = ring.mul
    else:
        raise ValueError(f"unknown operation {op!r}")
    return Section({x: f(v, tau[x]) for x, v in sigma.items()})


def zero_section(domain, ring: Ring = INTEGERS) -> Section:
    return Section.constant(domain, ring.zero)


def one_section(domain, ring: Ring = INTEGERS) -> Section:
    return Section.constant(domain, ring.one)


@dataclass(frozen=True)
class SheafMorphism:
    """Per-open maps ``phi(U, section) -> section`` between two carriers."""

    source: Ring
    target: Ring
    phi: Callable[[frozenset, Section], Section]

    def __call__(self, u, s: Section) -> Section:
        return self.phi(frozenset(u), s)

    @classmethod
    def pointwise(cls, fn, source: Ring, target: Ring | None = None):
        return cls(source, target or source, lambda u, s: Section({x: fn(v) for x, v in s.items()}))

    @classmethod
    def identity(cls, ring: Ring):
        return cls(ring, ring, lambda u, s: s)


def sections_over(domain, ring: Ring, rng: random.Random,
                  limit: int = EXHAUSTIVE_LIMIT, samples: int = MORPHISM_SAMPLES):
    """Every section over ``domain`` when that is at most ``limit`` of them, else a random sample."""
    pts = sorted(domain)
    elems = ring.elements()
    if elems is not None and len(elems) ** len(pts) <= limit:
        for combo in itertools.product(elems, repeat=len(pts)):
            yield Section(zip(pts, combo))
        return
    for _ in range(samples):
        yield Section({x: ring.random(rng) for x in pts})


@dataclass(frozen=True)
class MorphismViolation:
    smaller: frozenset
    larger: frozenset
    section: Section

    def __str__(self):
        return f"square fails for {sorted(self.smaller)} <= {sorted(self.larger)} at {self.section!r}"


def check_morphism(m: SheafMorphism, t: Topology, seed: int = 0) -> list[MorphismViolation]:
    rng = random.Random(seed)
    out = []
    order = t.inclusion_order
    for j, v in enumerate(t.opens):
        for s in sections_over(v, m.source, rng):
            image = m(v, s)
            for i, u in enumerate(t.opens):
                if order[i, j] and not restrict(image, u).equals(m(u, restrict(s, u)), m.target):
                    out.append(MorphismViolation(u, v, s))
    return out


def random_section(domain, ring: Ring, rng: random.Random) -> Section:
    return Section({x: ring.random(rng) for x in sorted(domain)})


def random_cover(t: Topology, u, rng: random.Random) -> list[frozenset]:
    """A random family of opens inside ``u`` whose union is ``u``."""
    u = frozenset(u)
    inside = [v for v in t.opens if v <= u]
    cover = [v for v in inside if rng.random() < 0.3]
    covered = frozenset().union(*cover)
    for x in sorted(u - covered):
        if x not in covered:
            nb = t.minimal_neighborhood(x)
            cover.append(nb)
            covered |= nb
    return cover


def check_sheaf_axioms(t: Topology, ring: Ring, rng: random.Random, samples: int = 4) -> list[Violation]:
    """Exercise the presheaf laws and both sheaf axioms on random data over ``t``."""
    out = []
    order = t.inclusion_order
    opens = t.opens
    if restrict(EMPTY, frozenset()) != EMPTY:
        out.append(Violation("empty", "F(empty) is not the one-element ring"))
    for k, u in enumerate(opens):
        for _ in range(samples):
            s = random_section(u, ring, rng)
            if restrict(s, u) != s:
                out.append(Violation("identity", f"restriction to {sorted(u)} is not the identity", (sorted(u),)))
            subs = [opens[i] for i in range(len(opens)) if order[i, k]]
            v = rng.choice(subs)
            w = rng.choice([x for x in subs if x <= v])
            if restrict(restrict(s, v), w) != restrict(s, w):
                out.append(Violation("composition", f"{sorted(w)} <= {sorted(v)} <= {sorted(u)}", (sorted(w), sorted(v), sorted(u))))
            cover = random_cover(t, u, rng)
            tau = random_section(u, ring, rng) if rng.random() < 0.5 else \
                Section({**s.as_dict(), **({rng.choice(sorted(u)): ring.random(rng)} if u else {})})
            if sections_equal_on_cover(s, tau, cover, ring) != s.equals(tau, ring):
                out.append(Violation("uniqueness", f"cover of {sorted(u)} does not separate sections", (sorted(u),)))
            pieces = [(c, restrict(s, c)) for c in cover]
            glued = glue(pieces, ring)
            if not glued.equals(s, ring):
                out.append(Violation("gluing", f"round trip over {sorted(u)} changed the section", (sorted(u),)))
            if any(not restrict(glued, c).equals(p, ring) for c, p in pieces):
                out.append(Violation("glue-restrict", f"glued section over {sorted(u)} misses a piece", (sorted(u),)))
    return out
