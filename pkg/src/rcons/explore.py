"""Exhaustive bounded exploration of protocol executions.

check_consensus walks every execution within the bounds in canonical
event order (steps by ascending process index, then crashes), pruning
revisited (configuration, crash-count vector) nodes, and reports the
first agreement, validity, or bounded-liveness violation.

Valency combines two searches.  Bivalence is certified by exhibiting a
deciding in-budget continuation per value.  Exact univalence is
certified on the full configuration graph with budgets ignored: that
graph is finite, so if only one decision value is reachable there, no
budget-respecting continuation can decide anything else.  When neither
certificate is obtained the verdict is unknown.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .model import (BudgetSpec, Configuration, Crash, Execution, Step,
                    format_schedule)


@dataclass(frozen=True)
class ExploreBounds:
    max_events: int = 24
    max_crashes_per_process: int = 2
    budget: BudgetSpec = field(default_factory=BudgetSpec)
    solo_cap: int = 4

    def __post_init__(self):
        if self.max_events < 1:
            raise ValueError("max_events must be >= 1")
        if self.max_crashes_per_process < 0:
            raise ValueError("crash cap must be >= 0")


@dataclass(frozen=True)
class Verdict:
    status: str                   # ok | violation | inconclusive
    kind: str | None = None       # agreement | validity | bounded-liveness
    trace: tuple | None = None    # event sequence reproducing the violation
    frontier: int = 0

    def to_json(self) -> str:
        doc = {"status": self.status}
        if self.kind is not None:
            doc["kind"] = self.kind
        if self.trace is not None:
            doc["trace"] = format_schedule(self.trace)
        if self.status == "inconclusive":
            doc["frontier"] = self.frontier
        return json.dumps(doc, sort_keys=True)


@dataclass(frozen=True)
class ValencyReport:
    verdict: str                  # bivalent | univalent | unknown
    value: str | None = None      # the value, for univalent verdicts
    witnesses: dict = field(default_factory=dict)  # value -> event tuple

    def to_json(self) -> str:
        doc = {"verdict": self.verdict}
        if self.value is not None:
            doc["value"] = self.value
        doc["witnesses"] = {v: format_schedule(t)
                            for v, t in sorted(self.witnesses.items())}
        return json.dumps(doc, sort_keys=True)


class _Counts:
    """Step/crash bookkeeping for prefix budget checks."""

    __slots__ = ("steps", "crashes", "below")

    def __init__(self, n):
        self.steps = [0] * n
        self.crashes = [0] * n
        self.below = [0] * n   # steps by processes with smaller index

    def copy(self):
        c = _Counts(len(self.steps))
        c.steps = self.steps[:]
        c.crashes = self.crashes[:]
        c.below = self.below[:]
        return c

    def key(self):
        return (tuple(self.steps), tuple(self.crashes))

    def total(self):
        return sum(self.steps) + sum(self.crashes)

    def crash_allowed(self, i, budget: BudgetSpec, n):
        if i == 0:
            return False
        return self.crashes[i] + 1 <= budget.z * n * self.below[i]

    def add(self, event):
        if isinstance(event, Crash):
            self.crashes[event.proc] += 1
        else:
            self.steps[event.proc] += 1
            for j in range(event.proc + 1, len(self.below)):
                self.below[j] += 1


def _all_decided(config: Configuration):
    return all(ps.decided is not None for ps in config.proc_states)


def _solo_decides(system, config, i, cap):
    """Does process i decide within cap crash-free solo steps?"""
    for _ in range(cap):
        if config.proc_states[i].decided is not None:
            return True
        config, _, _ = system.apply_event(config, Step(i))
    return config.proc_states[i].decided is not None


# ---------------------------------------------------------------------------
# Consensus verification
# ---------------------------------------------------------------------------

def check_consensus(system, bounds: ExploreBounds,
                    start: Configuration | None = None) -> Verdict:
    """Explore every bounded, budget-respecting execution and check
    agreement, validity, and the bounded-liveness surrogate."""
    n = system.n
    config = start if start is not None else system.initial_configuration()
    inputs = set(system.inputs)
    visited = set()
    frontier = 0

    def walk(config, counts, decided, events):
        nonlocal frontier
        # decision checks come before dedup: the same node can be reached
        # with different decision logs
        if len(decided) > 1:
            return Verdict("violation", "agreement", tuple(events))
        if any(v not in inputs for v in decided):
            return Verdict("violation", "validity", tuple(events))
        # the log is part of the key: a subtree that only decides v is a
        # violation under a {v-bar} log but not under a {v} log
        key = (config.key(), tuple(counts.crashes), decided)
        if key in visited:
            return None
        visited.add(key)
        for i in range(n):
            if config.proc_states[i].decided is None \
                    and not _solo_decides(system, config, i, bounds.solo_cap):
                return Verdict("violation", "bounded-liveness", tuple(events))
        if counts.total() >= bounds.max_events:
            if not _all_decided(config):
                frontier += 1
            return None
        children = [Step(i) for i in range(n)]
        children += [
            Crash(i) for i in range(n)
            if counts.crashes[i] < bounds.max_crashes_per_process
            and counts.crash_allowed(i, bounds.budget, n)
        ]
        for event in children:
            nxt, _, decision = system.apply_event(config, event)
            sub_counts = counts.copy()
            sub_counts.add(event)
            sub_decided = decided | {decision} if decision is not None \
                else decided
            events.append(event)
            verdict = walk(nxt, sub_counts, sub_decided, events)
            events.pop()
            if verdict is not None:
                return verdict
        return None

    verdict = walk(config, _Counts(n), frozenset(), [])
    if verdict is not None:
        return verdict
    if frontier:
        return Verdict("inconclusive", frontier=frontier)
    return Verdict("ok")


def replay(system, start: Configuration, events) -> Execution:
    """Re-run a verdict trace from its start configuration."""
    return system.run(start, events)


# ---------------------------------------------------------------------------
# Valency
# ---------------------------------------------------------------------------

def _reachable_decisions(system, config, crashes, crash_cap, memo):
    """Decision values reachable from config by ANY event sequence that
    respects the per-process crash cap, with the budget ignored.  The
    (configuration, crash-count) graph is finite, so this is an exact
    over-approximation of every budget-restricted search."""
    k = (config.key(), tuple(crashes))
    if k in memo:
        return memo[k]
    found = set()
    seen = {k}
    stack = [(config, tuple(crashes))]
    while stack:
        c, cr = stack.pop()
        for i in range(system.n):
            events = [Step(i)]
            if cr[i] < crash_cap:
                events.append(Crash(i))
            for event in events:
                nxt, _, decision = system.apply_event(c, event)
                if decision is not None:
                    found.add(decision)
                ncr = cr
                if isinstance(event, Crash):
                    ncr = cr[:i] + (cr[i] + 1,) + cr[i + 1:]
                nk = (nxt.key(), ncr)
                if nk not in seen:
                    seen.add(nk)
                    stack.append((nxt, ncr))
    memo[k] = found
    return found


class _ValencyEngine:
    """Shared machinery for valency queries against one system."""

    def __init__(self, system, bounds: ExploreBounds):
        self.system = system
        self.bounds = bounds
        self._over_memo = {}

    def _budget_search(self, config, counts, base_decided):
        """Deciding witnesses per value over in-budget continuations of
        at most max_events total events (counts included)."""
        witnesses = {v: () for v in base_decided}
        visited = set()
        n = self.system.n

        def walk(config, counts, events):
            if len(witnesses) > 1:
                return
            key = (config.key(), counts.key())
            if key in visited:
                return
            visited.add(key)
            if counts.total() >= self.bounds.max_events:
                return
            for i in range(n):
                events_here = [Step(i)]
                if counts.crashes[i] < self.bounds.max_crashes_per_process \
                        and counts.crash_allowed(i, self.bounds.budget, n):
                    events_here.append(Crash(i))
                for event in events_here:
                    nxt, _, decision = self.system.apply_event(config, event)
                    sub = counts.copy()
                    sub.add(event)
                    events.append(event)
                    if decision is not None and decision not in witnesses:
                        witnesses[decision] = tuple(events)
                    walk(nxt, sub, events)
                    events.pop()
                    if len(witnesses) > 1:
                        return

        walk(config, counts, [])
        return witnesses

    def valency(self, config, decided_log=(), counts=None) -> ValencyReport:
        base = frozenset(decided_log)
        counts = counts.copy() if counts is not None \
            else _Counts(self.system.n)
        over = _reachable_decisions(
            self.system, config, counts.crashes,
            self.bounds.max_crashes_per_process, self._over_memo) | base
        if len(over) == 1:
            (v,) = over
            return ValencyReport("univalent", value=v)
        witnesses = self._budget_search(config, counts, base)
        if len(witnesses) > 1:
            return ValencyReport("bivalent", witnesses=dict(witnesses))
        return ValencyReport("unknown", witnesses=dict(witnesses))


def valency(system, config, decided_log=(),
            bounds: ExploreBounds | None = None) -> ValencyReport:
    """Valency of a configuration with respect to the prefix-checked
    crash budget, relative to an already-accumulated decision log."""
    return _ValencyEngine(system, bounds or ExploreBounds()) \
        .valency(config, decided_log)


# ---------------------------------------------------------------------------
# Critical executions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CriticalReport:
    events: tuple                 # the critical execution's schedule
    config: Configuration
    teams: tuple                  # (team-0 processes, team-1 processes)

    def to_json(self) -> str:
        return json.dumps({
            "schedule": format_schedule(self.events),
            "team0": sorted(self.teams[0]),
            "team1": sorted(self.teams[1]),
        }, sort_keys=True)


def find_critical(system, bounds: ExploreBounds,
                  start: Configuration | None = None):
    """Breadth-first search for an in-budget execution that is bivalent
    while every in-budget one-event extension is exactly univalent.

    Returns a CriticalReport with each process's team (the value its
    next step commits to), or None if the bounds are exhausted without
    an exact certificate.
    """
    n = system.n
    config = start if start is not None else system.initial_configuration()
    engine = _ValencyEngine(system, bounds)
    root = engine.valency(config)
    if root.verdict != "bivalent":
        raise ValueError(f"start configuration is not bivalent "
                         f"(verdict: {root.verdict})")

    seen = {(config.key(), _Counts(n).key(), frozenset())}
    queue = [(config, _Counts(n), frozenset(), ())]
    while queue:
        next_queue = []
        for cfg, counts, decided, events in queue:
            report = engine.valency(cfg, decided, counts)
            if report.verdict == "bivalent":
                teams = ([], [])
                critical = True
                for i in range(n):
                    ext = _extension_valency(system, engine, cfg, counts,
                                             decided, Step(i))
                    side = {"0": 0, "1": 1}.get(ext.value)
                    if ext.verdict != "univalent" or side is None:
                        critical = False
                        break
                    teams[side].append(i)
                if critical:
                    for i in range(n):
                        if counts.crashes[i] >= bounds.max_crashes_per_process \
                                or not counts.crash_allowed(i, bounds.budget, n):
                            continue
                        ext = _extension_valency(system, engine, cfg, counts,
                                                 decided, Crash(i))
                        if ext.verdict != "univalent":
                            critical = False
                            break
                if critical:
                    return CriticalReport(events, cfg,
                                          (tuple(teams[0]), tuple(teams[1])))
            elif report.verdict == "univalent":
                continue          # extensions stay univalent; dead end
            if counts.total() >= bounds.max_events:
                continue
            children = [Step(i) for i in range(n)]
            children += [Crash(i) for i in range(n)
                         if counts.crashes[i] < bounds.max_crashes_per_process
                         and counts.crash_allowed(i, bounds.budget, n)]
            for event in children:
                nxt, _, decision = system.apply_event(cfg, event)
                sub = counts.copy()
                sub.add(event)
                sub_decided = decided | {decision} if decision is not None \
                    else decided
                key = (nxt.key(), sub.key(), sub_decided)
                if key in seen:
                    continue
                seen.add(key)
                next_queue.append((nxt, sub, sub_decided, events + (event,)))
        queue = next_queue
    return None


def _extension_valency(system, engine, config, counts, decided, event):
    nxt, _, decision = system.apply_event(config, event)
    sub = counts.copy()
    sub.add(event)
    sub_decided = decided | {decision} if decision is not None else decided
    return engine.valency(nxt, sub_decided, sub)
