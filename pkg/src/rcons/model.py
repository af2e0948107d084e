"""Crash-recovery executions over shared objects.

A configuration holds one local state per process and one value per
shared object.  Events are process steps and crashes; a crash resets the
process to its initial state while every object keeps its value.  A step
atomically applies the process's pending operation, feeds the response
back, and installs the new local state (which may be a decision).

Decisions are additionally recorded in an append-only per-execution log,
so agreement and validity checks survive a crash that resets a process
which had already decided.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .objtypes import apply


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class Step:
    proc: int


@dataclass(frozen=True)
class Crash:
    proc: int


Event = Step | Crash


@dataclass(frozen=True)
class ProcState:
    """Local state of one process: the program's state record plus the
    decided value once an output state was reached."""
    state: object
    decided: str | None = None


@dataclass(frozen=True)
class Configuration:
    proc_states: tuple
    obj_values: tuple

    @property
    def n(self):
        return len(self.proc_states)

    def key(self):
        return (self.proc_states, self.obj_values)


@dataclass(frozen=True)
class StepRecord:
    """What one step did: (object index, op, response) or a no op."""
    obj: int | None = None
    op: str | None = None
    response: str | None = None


@dataclass
class Execution:
    start: Configuration
    events: tuple
    configs: tuple          # start plus one configuration per event
    records: tuple          # one StepRecord per event (crashes get no-ops)
    decisions: tuple        # append-only (event index, proc, value) log

    @property
    def final(self) -> Configuration:
        return self.configs[-1]

    def schedule(self):
        return self.events

    def decided_values(self):
        return {v for (_k, _p, v) in self.decisions}


class System:
    """Binds programs, inputs, and object types; steps configurations.

    Programs follow a small state-machine protocol:
      initial_state(input) -> state
      next_action(state)   -> (obj index, op label) or None for a no op
      on_response(state, response) -> state or Decide(value)
    """

    def __init__(self, programs, inputs, obj_types, obj_initials):
        if len(programs) != len(inputs):
            raise ModelError("one input per program required")
        for val, typ in zip(obj_initials, obj_types):
            if val not in typ.values:
                raise ModelError(f"initial value {val!r} not in {typ.name}")
        self.programs = tuple(programs)
        self.inputs = tuple(inputs)
        self.obj_types = tuple(obj_types)
        self.obj_initials = tuple(obj_initials)

    @property
    def n(self):
        return len(self.programs)

    def initial_proc_state(self, i) -> ProcState:
        return ProcState(self.programs[i].initial_state(self.inputs[i]))

    def initial_configuration(self) -> Configuration:
        return Configuration(
            tuple(self.initial_proc_state(i) for i in range(self.n)),
            self.obj_initials,
        )

    def apply_event(self, config: Configuration, event: Event):
        """Returns (next configuration, StepRecord, decision or None)."""
        i = event.proc
        if not 0 <= i < config.n:
            raise ModelError(f"process index {i} out of range")
        if isinstance(event, Crash):
            states = list(config.proc_states)
            states[i] = self.initial_proc_state(i)
            return Configuration(tuple(states), config.obj_values), \
                StepRecord(), None
        ps = config.proc_states[i]
        if ps.decided is not None:
            return config, StepRecord(), None
        action = self.programs[i].next_action(ps.state)
        if action is None:
            return config, StepRecord(), None
        obj, op = action
        new_val, resp = apply(self.obj_types[obj], config.obj_values[obj], op)
        outcome = self.programs[i].on_response(ps.state, resp)
        states = list(config.proc_states)
        decision = None
        if isinstance(outcome, Decide):
            states[i] = ProcState(("decided", outcome.value), outcome.value)
            decision = outcome.value
        else:
            states[i] = ProcState(outcome)
        values = list(config.obj_values)
        values[obj] = new_val
        return Configuration(tuple(states), tuple(values)), \
            StepRecord(obj, op, resp), decision

    def run(self, config: Configuration, schedule) -> Execution:
        configs = [config]
        records = []
        decisions = []
        for k, event in enumerate(schedule):
            nxt, rec, decision = self.apply_event(configs[-1], event)
            configs.append(nxt)
            records.append(rec)
            if decision is not None:
                decisions.append((k, event.proc, decision))
        return Execution(config, tuple(schedule), tuple(configs),
                         tuple(records), tuple(decisions))

    def poised(self, config: Configuration, i: int):
        """The (obj, op) the process would apply next, or None."""
        ps = config.proc_states[i]
        if ps.decided is not None:
            return None
        return self.programs[i].next_action(ps.state)


@dataclass(frozen=True)
class Decide:
    value: str


# ---------------------------------------------------------------------------
# Schedules
# ---------------------------------------------------------------------------

def once_schedules(procs):
    """All crash-free schedules using each given process at most once,
    as tuples of process indices (the empty schedule included)."""
    procs = sorted(procs)
    out = []
    for k in range(len(procs) + 1):
        out.extend(itertools.permutations(procs, k))
    return out


def crash_suffix(k: int, n: int):
    """The schedule crashing processes k through n-1 in order."""
    if not 1 <= k <= n - 1:
        raise ModelError(f"crash suffix start {k} out of range for n={n}")
    return tuple(Crash(i) for i in range(k, n))


def parse_schedule(text: str, n: int):
    """Parse "p0,p1,c1,p0" into events."""
    events = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        kind, idx = tok[0], tok[1:]
        if kind not in "pc" or not idx.isdigit():
            raise ModelError(f"bad schedule token {tok!r}")
        i = int(idx)
        if i >= n:
            raise ModelError(f"token {tok!r}: process index out of range")
        events.append(Step(i) if kind == "p" else Crash(i))
    return tuple(events)


def format_schedule(events):
    return ",".join(
        ("p%d" if isinstance(e, Step) else "c%d") % e.proc for e in events)


# ---------------------------------------------------------------------------
# Crash budgets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BudgetSpec:
    """Crash budget: process i may crash at most z*n times the steps
    collectively taken by processes 0..i-1 — over the whole execution
    (variant "E") or in every prefix (variant "E_star").  Process 0
    never crashes."""
    z: int = 1
    variant: str = "E_star"

    def __post_init__(self):
        if self.z < 1:
            raise ModelError("budget multiplier z must be >= 1")
        if self.variant not in ("E", "E_star"):
            raise ModelError(f"unknown budget variant {self.variant!r}")


def schedule_within_budget(events, n: int, spec: BudgetSpec) -> bool:
    """Budget membership of a schedule with n processes; only the event
    sequence matters, not object contents."""
    steps = [0] * n
    crashes = [0] * n
    below = [0] * n  # running sum of steps by processes < i

    def ok_now():
        return all(crashes[i] <= spec.z * n * below[i] for i in range(1, n))

    for event in events:
        if isinstance(event, Crash):
            if event.proc == 0:
                return False
            crashes[event.proc] += 1
            if spec.variant == "E_star" and not ok_now():
                return False
        else:
            steps[event.proc] += 1
            for i in range(event.proc + 1, n):
                below[i] += 1
    return ok_now()


def within_budget(execution: Execution, spec: BudgetSpec) -> bool:
    return schedule_within_budget(execution.events, execution.start.n, spec)


# ---------------------------------------------------------------------------
# Indistinguishability
# ---------------------------------------------------------------------------

def indistinguishable(c1: Configuration, c2: Configuration, procs,
                      objs) -> bool:
    """True iff the given processes have equal local states and the given
    objects equal values across the two configurations."""
    if c1.n != c2.n or len(c1.obj_values) != len(c2.obj_values):
        raise ModelError("configurations have different layouts")
    return (all(c1.proc_states[i] == c2.proc_states[i] for i in procs)
            and all(c1.obj_values[o] == c2.obj_values[o] for o in objs))


# ---------------------------------------------------------------------------
# Trace export
# ---------------------------------------------------------------------------

def trace_lines(execution: Execution, obj_names):
    lines = []
    for event, rec in zip(execution.events, execution.records):
        if isinstance(event, Crash):
            lines.append(f"crash {event.proc}")
        elif rec.op is None:
            lines.append(f"step {event.proc} noop")
        else:
            lines.append(f"step {event.proc} obj={obj_names[rec.obj]} "
                         f"op={rec.op} resp={rec.response}")
    return lines


def trace_json(execution: Execution, obj_names) -> str:
    doc = {
        "schedule": format_schedule(execution.events),
        "events": trace_lines(execution, obj_names),
        "decisions": [
            {"event": k, "proc": p, "value": v}
            for (k, p, v) in execution.decisions
        ],
        "final_values": list(execution.final.obj_values),
    }
    return json.dumps(doc, sort_keys=True, indent=2)
