"""Execution model: schedules, crash budgets, runs, indistinguishability."""

import json
import math

import pytest

from rcons.model import (BudgetSpec, Crash, ModelError, Step, crash_suffix,
                         format_schedule, indistinguishable, once_schedules,
                         parse_schedule, schedule_within_budget, trace_json,
                         trace_lines, within_budget)
from rcons.protocols import recoverable_tnn, wait_free_tnn


def test_parse_and_format_round_trip():
    text = "p0,p1,c1,p0"
    events = parse_schedule(text, 2)
    assert events == (Step(0), Step(1), Crash(1), Step(0))
    assert format_schedule(events) == text


def test_parse_schedule_rejects_bad_tokens():
    with pytest.raises(ModelError):
        parse_schedule("p0,x1", 2)
    with pytest.raises(ModelError):
        parse_schedule("p2", 2)
    assert parse_schedule("", 2) == ()


def test_budget_whole_vs_prefix_variant():
    # one crash by process 1 before process 0 has taken a step: fine for
    # the whole-execution budget, rejected by the every-prefix budget
    events = parse_schedule("p1,c1,p0", 2)
    assert schedule_within_budget(events, 2, BudgetSpec(z=1, variant="E"))
    assert not schedule_within_budget(events, 2,
                                      BudgetSpec(z=1, variant="E_star"))


def test_budget_accepts_crash_after_step():
    events = parse_schedule("p0,c1,p1", 2)
    assert schedule_within_budget(events, 2, BudgetSpec(z=1, variant="E_star"))


def test_budget_process_zero_never_crashes():
    events = parse_schedule("p1,c0", 2)
    for variant in ("E", "E_star"):
        assert not schedule_within_budget(events, 2,
                                          BudgetSpec(z=1, variant=variant))


def test_budget_scales_with_multiplier():
    # three crashes by process 1 after one step by process 0: allowance
    # is z*n*steps = 2z, so z=1 rejects and z=2 accepts
    events = parse_schedule("p0,c1,c1,c1", 2)
    assert not schedule_within_budget(events, 2, BudgetSpec(z=1))
    assert schedule_within_budget(events, 2, BudgetSpec(z=2))


def test_budget_spec_validation():
    with pytest.raises(ModelError):
        BudgetSpec(z=0)
    with pytest.raises(ModelError):
        BudgetSpec(variant="weekly")


def test_within_budget_on_execution():
    system = recoverable_tnn(5, 2, "01")
    execution = system.run(system.initial_configuration(),
                           parse_schedule("p0,c1,p1", 2))
    assert within_budget(execution, BudgetSpec(z=1))


def test_once_schedules_small_instance():
    assert set(once_schedules([0, 2])) == {
        (), (0,), (2,), (0, 2), (2, 0)}


def test_once_schedules_counts():
    # sum over i of C(k,i) * i! for k = 0..6
    expected = [1, 2, 5, 16, 65, 326, 1957]
    for k, want in enumerate(expected):
        got = len(once_schedules(range(k)))
        formula = sum(math.comb(k, i) * math.factorial(i)
                      for i in range(k + 1))
        assert got == want == formula


def test_crash_suffix():
    assert crash_suffix(1, 3) == (Crash(1), Crash(2))
    assert crash_suffix(2, 3) == (Crash(2),)
    with pytest.raises(ModelError):
        crash_suffix(0, 3)
    with pytest.raises(ModelError):
        crash_suffix(3, 3)


def test_crash_resets_process_but_not_object():
    system = recoverable_tnn(5, 2, "01")
    c0 = system.initial_configuration()
    c1, _, _ = system.apply_event(c0, Step(0))       # probe, now poised to vote
    assert c1.proc_states[0] != c0.proc_states[0]
    c2, rec, decision = system.apply_event(c1, Crash(0))
    assert c2.proc_states[0] == c0.proc_states[0]
    assert c2.obj_values == c1.obj_values
    assert rec.op is None and decision is None


def test_decided_process_steps_are_noops():
    system = wait_free_tnn(5, 2, "10")
    execution = system.run(system.initial_configuration(),
                           parse_schedule("p0,p0,p0", 2))
    assert execution.decisions == ((0, 0, "1"),)
    assert execution.configs[1] == execution.configs[3]


def test_run_records_trace_and_decisions():
    system = recoverable_tnn(5, 2, "01")
    execution = system.run(system.initial_configuration(),
                           parse_schedule("p0,p0,c1,p1", 2))
    names = [t.name for t in system.obj_types]
    assert trace_lines(execution, names) == [
        "step 0 obj=tnn:5,2 op=op_R resp=s",
        "step 0 obj=tnn:5,2 op=op_0 resp=0",
        "crash 1",
        "step 1 obj=tnn:5,2 op=op_R resp=s_{0,1}",
    ]
    assert execution.decided_values() == {"0"}
    doc = json.loads(trace_json(execution, names))
    assert doc["schedule"] == "p0,p0,c1,p1"
    assert doc["final_values"] == ["s_{0,1}"]
    assert doc["decisions"] == [
        {"event": 1, "proc": 0, "value": "0"},
        {"event": 3, "proc": 1, "value": "0"},
    ]


def test_run_is_deterministic():
    system = recoverable_tnn(5, 2, "011")
    schedule = parse_schedule("p0,p1,p2,c2,p2,p0", 3)
    a = system.run(system.initial_configuration(), schedule)
    b = system.run(system.initial_configuration(), schedule)
    assert a.configs == b.configs
    assert a.records == b.records
    assert a.decisions == b.decisions


def test_apply_event_rejects_bad_process():
    system = recoverable_tnn(5, 2, "01")
    with pytest.raises(ModelError):
        system.apply_event(system.initial_configuration(), Step(5))


def test_indistinguishable():
    system = recoverable_tnn(5, 2, "01")
    c0 = system.initial_configuration()
    c1, _, _ = system.apply_event(c0, Step(1))
    # process 0 and the object look the same; process 1 differs
    assert indistinguishable(c0, c1, [0], [])
    assert not indistinguishable(c0, c1, [0, 1], [0])
    c2, _, _ = system.apply_event(c1, Crash(1))
    assert indistinguishable(c0, c2, [0, 1], [0])


def test_indistinguishable_rejects_layout_mismatch():
    a = recoverable_tnn(5, 2, "01").initial_configuration()
    b = recoverable_tnn(5, 2, "011").initial_configuration()
    with pytest.raises(ModelError):
        indistinguishable(a, b, [0], [0])


def test_poised():
    system = recoverable_tnn(5, 2, "01")
    config = system.initial_configuration()
    assert system.poised(config, 0) == (0, "op_R")
    config, _, _ = system.apply_event(config, Step(0))
    assert system.poised(config, 0) == (0, "op_0")
    config, _, _ = system.apply_event(config, Step(0))
    assert system.poised(config, 0) is None  # decided
