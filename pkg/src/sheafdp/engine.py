"""Sheaf computation: grow a section from the empty set to the whole space.

Each step takes the region covered so far, picks one minimal open superset
of it (according to a scheduling policy), asks an extension rule for the
values on the new points and records the step in a trace.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

from .errors import InvalidSchedule, NonDeterministicReplay, RuleDomainError, TraceCorrupt
from .rings import INTEGERS, Ring
from .sheaf import EMPTY, Section
from .topology import Topology, minimal_open_supersets


@dataclass(frozen=True)
class ExtensionRule:
    """Produces values for ``target - current.domain``.

    ``fn(current, target, context)`` must return a mapping covering exactly the
    new points and must be pure.
    """

    fn: Callable[[Section, frozenset, Any], Mapping[int, Any]]
    context: Any = None
    name: str = "rule"
    ring: Ring = INTEGERS

    def extend(self, current: Section, target) -> dict:
        return dict(self.fn(current, frozenset(target), self.context))


def as_rule(rule) -> ExtensionRule:
    if isinstance(rule, ExtensionRule):
        return rule
    return ExtensionRule(lambda cur, tgt, _ctx: rule(cur, tgt), name=getattr(rule, "__name__", "rule"))


def constant_rule(value=0, ring: Ring = INTEGERS) -> ExtensionRule:
    return ExtensionRule(lambda cur, tgt, v: {x: v for x in tgt - cur.domain}, value, "constant", ring)


class Canonical:
    """Always take the first candidate in the topology's canonical order."""

    def choose(self, t: Topology, candidates):
        return candidates[0]

    def __repr__(self):
        return "Canonical()"


class Explicit:
    """Caller-supplied total order on all opens of a topology."""

    def __init__(self, order: Sequence, t: Topology | None = None):
        self.order = [frozenset(u) for u in order]
        self.rank = {u: k for k, u in enumerate(self.order)}
        if len(self.rank) != len(self.order):
            raise InvalidSchedule("explicit order lists an open twice")
        if t is not None:
            self.validate(t)

    def validate(self, t: Topology):
        if set(self.rank) != set(t.opens):
            raise InvalidSchedule("explicit order must rank every open of the topology exactly once")

    def choose(self, t: Topology, candidates):
        self.validate(t)
        return min(candidates, key=self.rank.__getitem__)


CANONICAL = Canonical()


@dataclass(frozen=True)
class Step:
    previous: frozenset
    chosen: frozenset
    assigned: tuple  # ((point, value), ...) sorted by point


@dataclass(frozen=True)
class ComputationTrace:
    steps: tuple
    result: Section
    ring: Ring = field(default=INTEGERS, compare=False)

    def __len__(self):
        return len(self.steps)

    def format(self) -> str:
        return format_trace(self)


def _check_assignment(new, current: Section, target: frozenset):
    expected = target - current.domain
    got = frozenset(new)
    if got != expected:
        extra = sorted(got - expected)
        missing = sorted(expected - got)
        raise RuleDomainError(
            f"rule assigned wrong points for {sorted(target)}: extra={extra} missing={missing}"
        )


def extend_section(current: Section, target, rule: ExtensionRule) -> Section:
    """One inductive step; the new section restricts to ``current``."""
    target = frozenset(target)
    new = rule.extend(current, target)
    _check_assignment(new, current, target)
    merged = current.as_dict()
    merged.update(new)
    return Section(merged)


def run(t: Topology, rule, policy=CANONICAL, verify: bool = False) -> ComputationTrace:
    """Compute a global section of ``t`` starting from the empty section.

    With ``verify=True`` every step is recomputed from the recorded state and a
    divergence raises :class:`NonDeterministicReplay`.
    """
    rule = as_rule(rule)
    current = EMPTY
    covered = t.empty
    steps = []
    while covered != t.full:
        if len(steps) > len(t):
            raise RuntimeError("computation failed to terminate")  # pragma: no cover
        candidates = minimal_open_supersets(t, covered)
        chosen = policy.choose(t, candidates)
        new = rule.extend(current, chosen)
        _check_assignment(new, current, chosen)
        # new points are disjoint from the covered region, so gluing the
        # accumulated section with the extension cannot conflict
        assert not current.domain & new.keys()
        merged = current.as_dict()
        merged.update(new)
        nxt = Section(merged)
        steps.append(Step(covered, chosen, tuple(sorted(new.items()))))
        current = nxt
        covered = covered | chosen
    trace = ComputationTrace(tuple(steps), current, rule.ring)
    if verify:
        _verify_replay(trace, rule)
    return trace


def _verify_replay(trace: ComputationTrace, rule: ExtensionRule):
    current = EMPTY
    for k, step in enumerate(trace.steps, 1):
        again = rule.extend(current, step.chosen)
        if tuple(sorted(again.items())) != step.assigned:
            raise NonDeterministicReplay(f"step {k}: rule returned different values on replay")
        merged = current.as_dict()
        merged.update(again)
        current = Section(merged)


def replay(trace: ComputationTrace, t: Topology) -> Section:
    """Rebuild the result from the recorded assignments alone."""
    values: dict = {}
    covered = t.empty
    for k, step in enumerate(trace.steps, 1):
        if step.previous != covered:
            raise TraceCorrupt(f"step {k}: previous region {sorted(step.previous)} does not chain")
        if step.chosen not in t:
            raise TraceCorrupt(f"step {k}: {sorted(step.chosen)} is not open")
        if not covered < step.chosen:
            raise TraceCorrupt(f"step {k}: step does not enlarge the covered region")
        points = [x for x, _ in step.assigned]
        collide = sorted(x for x in points if x in values) or sorted({x for x in points if points.count(x) > 1})
        if collide:
            raise TraceCorrupt(f"step {k}: point {collide[0]} assigned twice")
        if frozenset(points) != step.chosen - covered:
            raise TraceCorrupt(f"step {k}: assignments do not match the new points")
        values.update(step.assigned)
        covered = step.chosen
    if covered != t.full:
        raise TraceCorrupt("trace does not reach the whole space")
    result = Section(values)
    if result != trace.result:
        raise TraceCorrupt("replayed section differs from recorded result")
    return result


def _path_within(t: Topology, start: frozenset, section: Section, stop: frozenset, rule: ExtensionRule) -> Section:
    """Extend canonically from ``start`` through opens inside ``stop`` until reaching ``stop``."""
    covered = start
    while covered != stop:
        cand = [v for v in minimal_open_supersets(t, covered) if v <= stop]
        section = extend_section(section, cand[0], rule)
        covered = cand[0]
    return section


@dataclass(frozen=True)
class OrderViolation:
    base: frozenset
    first: frozenset
    second: frozenset
    point: int
    values: tuple

    def __str__(self):
        return (f"from {sorted(self.base)}: via {sorted(self.first)} vs {sorted(self.second)} "
                f"point {self.point} gets {self.values[0]!r} vs {self.values[1]!r}")


def verify_well_definedness(t: Topology, rule) -> list[OrderViolation]:
    """Compare both extension orders at every branching point of the lattice.

    The section on each open is the one reached canonically from the empty
    section within that open.
    """
    rule = as_rule(rule)
    out = []
    for base in t.opens[:-1]:
        cands = minimal_open_supersets(t, base)
        if len(cands) < 2:
            continue
        start = _path_within(t, t.empty, EMPTY, base, rule)
        for i, u in enumerate(cands):
            for v in cands[i + 1:]:
                top = u | v
                if top not in t:
                    continue
                via_u = _path_within(t, u, extend_section(start, u, rule), top, rule)
                via_v = _path_within(t, v, extend_section(start, v, rule), top, rule)
                for x in sorted(top):
                    if not rule.ring.eq(via_u[x], via_v[x]):
                        out.append(OrderViolation(base, u, v, x, (via_u[x], via_v[x])))
                        break
    return out


def _ids(s) -> str:
    return "{" + ",".join(str(x) for x in sorted(s)) + "}"


def format_trace(trace: ComputationTrace, fmt: Callable | None = None) -> str:
    fmt = fmt or trace.ring.format
    lines = []
    for k, step in enumerate(trace.steps, 1):
        assign = ", ".join(f"{x}={fmt(v)}" for x, v in step.assigned)
        lines.append(f"step {k}: U'={_ids(step.previous)} -> U={_ids(step.chosen)}; assign {assign}")
    lines.append(format_result(trace.result, fmt))
    return "\n".join(lines) + "\n"


def format_result(section: Section, fmt: Callable = str) -> str:
    body = ", ".join(f"{x}={fmt(v)}" for x, v in section.items())
    return f"result: {body}".rstrip()


_STEP = re.compile(r"^step (\d+): U'=\{([\d,]*)\} -> U=\{([\d,]*)\}; assign (.*)$")


def _parse_ids(text):
    return frozenset(int(x) for x in text.split(",") if x)


def _parse_pairs(text, ring):
    pairs = []
    for item in filter(None, (p.strip() for p in text.split(","))):
        x, _, v = item.partition("=")
        pairs.append((int(x), ring.parse(v)))
    return pairs


def parse_trace(text: str, ring: Ring = INTEGERS) -> ComputationTrace:
    steps = []
    result = None
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if line.startswith("result:"):
            result = Section(_parse_pairs(line[len("result:"):], ring))
            continue
        m = _STEP.match(line)
        if m is None or int(m.group(1)) != len(steps) + 1:
            raise TraceCorrupt(f"line {n}: not a trace step")
        steps.append(Step(_parse_ids(m.group(2)), _parse_ids(m.group(3)), tuple(_parse_pairs(m.group(4), ring))))
    if result is None:
        raise TraceCorrupt("missing result line")
    return ComputationTrace(tuple(steps), result, ring)
