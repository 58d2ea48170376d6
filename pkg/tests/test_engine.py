import dataclasses
import itertools
import random

import pytest
from hypothesis import given, strategies as st

from sheafdp.engine import (
    Explicit,
    ExtensionRule,
    constant_rule,
    format_trace,
    parse_trace,
    replay,
    run,
    verify_well_definedness,
)
from sheafdp.errors import InvalidSchedule, NonDeterministicReplay, RuleDomainError, TraceCorrupt
from sheafdp.examples import (
    AlignmentScoring,
    chain_rule,
    chain_space,
    grid_table,
    nw_rule_scored,
    staircase_space,
)
from sheafdp.sheaf import restrict
from sheafdp.topology import Base, generate_topology

from conftest import random_valid_base
import oracles


def count_rule():
    """Each new point gets the number of points already assigned: depends on arrival order."""
    return ExtensionRule(lambda cur, tgt, _: {x: len(cur) for x in tgt - cur.domain}, name="count")


def test_chain_closed_form():
    trace = run(chain_space(7), chain_rule())
    assert [trace.result[i] for i in range(8)] == list(range(8))
    assert [sorted(s.chosen) for s in trace.steps] == [list(range(i + 1)) for i in range(8)]


def test_one_point_space():
    t = generate_topology(Base(1, [{0}]))
    trace = run(t, constant_rule(42))
    assert len(trace) == 1 and trace.result.as_dict() == {0: 42}


def test_zero_point_space():
    t = generate_topology(Base(0, []))
    trace = run(t, constant_rule(0))
    assert trace.steps == () and len(trace.result) == 0
    assert format_trace(trace) == "result:\n"
    assert len(replay(trace, t)) == 0


def test_staircase_unit_costs_match_oracle():
    s = AlignmentScoring("AB", "BA", 0, 1, 1)
    trace = run(staircase_space(2, 2), nw_rule_scored(s))
    table = grid_table(trace.result, 2, 2)
    assert table[2][2] == oracles.best_alignment_score("AB", "BA", 0, 1, 1)


def test_rule_domain_error():
    bad = ExtensionRule(lambda cur, tgt, _: {x: 0 for x in tgt})  # reassigns old points
    with pytest.raises(RuleDomainError):
        run(chain_space(2), bad)
    short = ExtensionRule(lambda cur, tgt, _: {})
    with pytest.raises(RuleDomainError):
        run(chain_space(2), short)


def test_impure_rule_detected_on_verify():
    calls = itertools.count()
    impure = ExtensionRule(lambda cur, tgt, _: {x: next(calls) for x in tgt - cur.domain})
    with pytest.raises(NonDeterministicReplay):
        run(chain_space(3), impure, verify=True)


def test_plain_callable_rule():
    trace = run(chain_space(2), lambda cur, tgt: {x: 1 for x in tgt - cur.domain})
    assert trace.result.as_dict() == {0: 1, 1: 1, 2: 1}


def test_explicit_policy_changes_schedule():
    t = staircase_space(1, 1)
    canonical = run(t, constant_rule(0))
    reverse = Explicit(reversed(t.opens), t)
    other = run(t, constant_rule(0), reverse)
    assert canonical.steps[1].chosen != other.steps[1].chosen
    assert canonical.result == other.result


def test_explicit_policy_must_be_total():
    t = chain_space(2)
    with pytest.raises(InvalidSchedule):
        Explicit(t.opens[:-1], t)
    with pytest.raises(InvalidSchedule):
        Explicit(list(t.opens) + [t.opens[0]])


def test_trace_invariants_on_staircase():
    t = staircase_space(3, 2)
    trace = run(t, nw_rule_scored(AlignmentScoring("ABA", "BB")))
    assert trace.steps[0].previous == frozenset()
    assert trace.steps[-1].chosen == t.full
    for a, b in zip(trace.steps, trace.steps[1:]):
        assert a.chosen < b.chosen and b.previous == a.chosen
    for step in trace.steps:
        assert len(step.chosen - step.previous) == 1
        assert restrict(trace.result, step.chosen).as_dict() == {
            **restrict(trace.result, step.previous).as_dict(), **dict(step.assigned)}


def test_repeat_runs_identical():
    t = staircase_space(2, 3)
    rule = nw_rule_scored(AlignmentScoring("AB", "BAB"))
    assert format_trace(run(t, rule)) == format_trace(run(t, rule))


def test_trace_format_golden():
    text = format_trace(run(chain_space(2), chain_rule()))
    assert text == (
        "step 1: U'={} -> U={0}; assign 0=0\n"
        "step 2: U'={0} -> U={0,1}; assign 1=1\n"
        "step 3: U'={0,1} -> U={0,1,2}; assign 2=2\n"
        "result: 0=0, 1=1, 2=2\n"
    )


def test_trace_text_round_trip():
    t = staircase_space(2, 1)
    trace = run(t, nw_rule_scored(AlignmentScoring("AB", "B")))
    again = parse_trace(format_trace(trace))
    assert again.steps == trace.steps and again.result == trace.result
    assert replay(again, t) == trace.result


def test_replay_detects_collision():
    t = chain_space(3)
    trace = run(t, chain_rule())
    steps = list(trace.steps)
    steps[2] = dataclasses.replace(steps[2], assigned=((1, 5), (2, 2)))
    with pytest.raises(TraceCorrupt):
        replay(dataclasses.replace(trace, steps=tuple(steps)), t)


def test_replay_detects_collision_in_text():
    t = chain_space(2)
    text = format_trace(run(t, chain_rule())).replace("assign 2=2", "assign 2=2, 2=3")
    with pytest.raises(TraceCorrupt):
        replay(parse_trace(text), t)


def test_replay_detects_broken_chain_and_truncation():
    t = chain_space(3)
    trace = run(t, chain_rule())
    with pytest.raises(TraceCorrupt):
        replay(dataclasses.replace(trace, steps=trace.steps[1:]), t)
    with pytest.raises(TraceCorrupt):
        replay(dataclasses.replace(trace, steps=trace.steps[:-1]), t)


def test_parse_rejects_garbage():
    with pytest.raises(TraceCorrupt):
        parse_trace("step 1: nonsense\nresult:\n")
    with pytest.raises(TraceCorrupt):
        parse_trace("step 1: U'={} -> U={0}; assign 0=0\n")


def test_well_definedness_nw():
    rule = nw_rule_scored(AlignmentScoring("ABB", "BA"))
    assert verify_well_definedness(staircase_space(3, 2), rule) == []


def test_well_definedness_count_rule_fails():
    found = verify_well_definedness(staircase_space(1, 1), count_rule())
    assert found and found[0].base == frozenset({0})


def test_well_definedness_chain_trivial():
    assert verify_well_definedness(chain_space(5), count_rule()) == []


@given(st.integers(0, 10_000))
def test_reaches_global_section(seed):
    n, base = random_valid_base(random.Random(seed), 8)
    t = generate_topology(Base(n, base))
    trace = run(t, constant_rule(0))
    assert trace.result.domain == t.full
    assert len(trace) <= len(t)
    assert replay(trace, t) == trace.result
    assert verify_well_definedness(t, constant_rule(0)) == []
