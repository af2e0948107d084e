"""Brute-force type characterization.

Both deciders search all (initial value, team partition, per-process
operation) candidates in a fixed canonical order — values
lexicographically, partitions by bitmask with process 0 pinned to team
0, operation tuples lexicographically — so the first witness found is
reproducible byte for byte.

The hot path caches, per (value, operation tuple), the response/value
sets reachable from each possible first process, so the partition loop
only merges precomputed sets.  ``verify_discerning`` and
``verify_recording`` are deliberately independent second passes that
re-enumerate schedules straight from the definitions without any
caching.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .model import once_schedules
from .objtypes import ObjectType, apply


class SearchSpaceError(RuntimeError):
    """The candidate space exceeds the configured application cap."""


@dataclass(frozen=True)
class Witness:
    """A certificate for a decider result, re-verifiable independently."""
    u: str
    team0: frozenset
    team1: frozenset
    ops: tuple

    def __post_init__(self):
        n = len(self.ops)
        if self.team0 & self.team1:
            raise ValueError("teams must be disjoint")
        if not self.team0 or not self.team1:
            raise ValueError("teams must be nonempty")
        if self.team0 | self.team1 != set(range(n)):
            raise ValueError("teams must cover all processes")

    @property
    def n(self):
        return len(self.ops)

    def team_of(self, i):
        return 0 if i in self.team0 else 1

    def swapped(self) -> "Witness":
        return Witness(self.u, self.team1, self.team0, self.ops)

    def to_json(self) -> str:
        return json.dumps({
            "u": self.u,
            "team0": sorted(self.team0),
            "team1": sorted(self.team1),
            "ops": list(self.ops),
        }, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Witness":
        doc = json.loads(text)
        return cls(doc["u"], frozenset(doc["team0"]), frozenset(doc["team1"]),
                   tuple(doc["ops"]))


# ---------------------------------------------------------------------------
# Definition-level set computations
# ---------------------------------------------------------------------------

def _final_and_responses(obj_type, u, ops, schedule):
    """Apply ops[i] for each i in the schedule starting at u; returns
    (final value, {i: response})."""
    value = u
    responses = {}
    for i in schedule:
        value, responses[i] = apply(obj_type, value, ops[i])
    return value, responses


def u_sets(obj_type: ObjectType, w: Witness):
    """Team-reachable final values: U_x collects the object value after
    every nonempty once-per-process schedule whose first process is on
    team x."""
    out = (set(), set())
    for schedule in once_schedules(range(w.n)):
        if not schedule:
            continue
        value, _ = _final_and_responses(obj_type, w.u, w.ops, schedule)
        out[w.team_of(schedule[0])].add(value)
    return out


def r_sets(obj_type: ObjectType, w: Witness, j: int):
    """Per-process discerning sets: R_{x,j} collects (response of
    process j's operation, final object value) over once-per-process
    schedules containing j whose first process is on team x."""
    out = (set(), set())
    for schedule in once_schedules(range(w.n)):
        if j not in schedule:
            continue
        value, responses = _final_and_responses(obj_type, w.u, w.ops, schedule)
        out[w.team_of(schedule[0])].add((responses[j], value))
    return out


def verify_discerning(obj_type: ObjectType, w: Witness) -> bool:
    """Independent check: every process's two R-sets are disjoint."""
    return all(not (set.intersection(*r_sets(obj_type, w, j)))
               for j in range(w.n))


def verify_recording(obj_type: ObjectType, w: Witness) -> bool:
    """Independent check: disjoint U-sets, and the start value is only
    team-x-reachable when the other team is a singleton."""
    u0, u1 = u_sets(obj_type, w)
    if u0 & u1:
        return False
    if w.u in u0 and len(w.team1) != 1:
        return False
    if w.u in u1 and len(w.team0) != 1:
        return False
    return True


# ---------------------------------------------------------------------------
# Canonical-order search
# ---------------------------------------------------------------------------

DEFAULT_APPLICATION_CAP = 10**9


def _search_space(obj_type, n):
    n_sched = len(once_schedules(range(n)))
    return (len(obj_type.values) * 2 ** (n - 1)
            * len(obj_type.operations) ** n * n_sched)


def _guard(obj_type, n, cap):
    size = _search_space(obj_type, n)
    if size > cap:
        raise SearchSpaceError(
            f"search space of {size} elementary applications exceeds the "
            f"cap of {cap}")


def _partitions(n):
    """Team partitions as frozensets, process 0 pinned to team 0,
    ordered by the bitmask of the remaining processes."""
    for mask in range(1, 2 ** (n - 1)):
        team1 = frozenset(i for i in range(1, n) if mask >> (i - 1) & 1)
        yield frozenset(range(n)) - team1, team1


class _FirstProcSets:
    """Per (u, ops): for each possible first process f, the final values
    and per-process (response, final value) pairs over all schedules
    starting with f.  Computed once by walking the schedule tree so that
    shared prefixes cost one application."""

    def __init__(self, obj_type, u, ops, n):
        self.finals = [set() for _ in range(n)]
        self.pairs = [[set() for _ in range(n)] for _ in range(n)]
        procs = range(n)

        def walk(first, value, responses, used):
            self.finals[first].add(value)
            for i, r in responses:
                self.pairs[first][i].add((r, value))
            for i in procs:
                if i in used:
                    continue
                nxt, resp = apply(obj_type, value, ops[i])
                walk(first, nxt, responses + ((i, resp),), used | {i})

        for f in procs:
            nxt, resp = apply(obj_type, u, ops[f])
            walk(f, nxt, ((f, resp),), {f})

    def union_finals(self, team):
        out = set()
        for f in team:
            out |= self.finals[f]
        return out

    def union_pairs(self, team, j):
        out = set()
        for f in team:
            out |= self.pairs[f][j]
        return out


def _search(obj_type, n, check, cap):
    _guard(obj_type, n, cap)
    values = sorted(obj_type.values)
    op_tuples = list(itertools.product(sorted(obj_type.operations), repeat=n))
    for u in values:
        cache = {}
        for team0, team1 in _partitions(n):
            for ops in op_tuples:
                sets = cache.get(ops)
                if sets is None:
                    sets = cache[ops] = _FirstProcSets(obj_type, u, ops, n)
                if check(sets, team0, team1, u):
                    return Witness(u, team0, team1, ops)
    return None


def is_n_discerning(obj_type: ObjectType, n: int,
                    cap: int = DEFAULT_APPLICATION_CAP):
    """First canonical witness whose R-sets are disjoint for every
    process, or None if the type is not n-discerning."""
    if n < 2:
        raise ValueError("n must be >= 2")

    def check(sets, team0, team1, _u):
        return all(
            not (sets.union_pairs(team0, j) & sets.union_pairs(team1, j))
            for j in range(n))

    return _search(obj_type, n, check, cap)


def is_n_recording(obj_type: ObjectType, n: int,
                   cap: int = DEFAULT_APPLICATION_CAP):
    """First canonical witness with disjoint U-sets satisfying the
    singleton condition for a team-reachable start value, or None."""
    if n < 2:
        raise ValueError("n must be >= 2")

    def check(sets, team0, team1, u):
        u0 = sets.union_finals(team0)
        u1 = sets.union_finals(team1)
        if u0 & u1:
            return False
        if u in u0 and len(team1) != 1:
            return False
        if u in u1 and len(team0) != 1:
            return False
        return True

    return _search(obj_type, n, check, cap)


# ---------------------------------------------------------------------------
# Configuration classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OverlapPair:
    """Two schedules, one per team, driving the object to one value:
    process i's schedule i,R_i and process j's schedule j,R_j."""
    proc0: int
    rest0: tuple
    proc1: int
    rest1: tuple
    value: str


@dataclass(frozen=True)
class ConfigClassification:
    labels: tuple                # subset of "recording", "hiding(v)", "overlap"
    u0: frozenset
    u1: frozenset
    hiding_value: int | None = None
    overlap: OverlapPair | None = None

    def to_json(self) -> str:
        doc = {"labels": list(self.labels),
               "U0": sorted(self.u0), "U1": sorted(self.u1)}
        if self.hiding_value is not None:
            doc["hiding_value"] = self.hiding_value
        if self.overlap is not None:
            o = self.overlap
            doc["overlap"] = {"proc0": o.proc0, "rest0": list(o.rest0),
                              "proc1": o.proc1, "rest1": list(o.rest1),
                              "value": o.value}
        return json.dumps(doc, sort_keys=True)


def classify_value(obj_type: ObjectType, value: str, teams,
                   poised_ops) -> ConfigClassification:
    """Classify an object value under poised operations and a team
    partition: overlapping team-reachable value sets, or disjoint sets
    that hide a team and/or record which team moved first."""
    team0, team1 = (frozenset(t) for t in teams)
    n = len(poised_ops)
    if team0 & team1 or not team0 or not team1 \
            or team0 | team1 != set(range(n)):
        raise ValueError("teams must partition all processes, both nonempty")
    finals = {}  # schedule -> final value, schedules in lexicographic order
    for schedule in once_schedules(range(n)):
        if schedule:
            v, _ = _final_and_responses(obj_type, value, poised_ops, schedule)
            finals[schedule] = v
    u0 = frozenset(v for s, v in finals.items() if s[0] in team0)
    u1 = frozenset(v for s, v in finals.items() if s[0] in team1)
    if u0 & u1:
        overlap = None
        for s0, v0 in finals.items():
            if s0[0] not in team0:
                continue
            for s1, v1 in finals.items():
                if s1[0] in team1 and v1 == v0:
                    overlap = OverlapPair(s0[0], s0[1:], s1[0], s1[1:], v0)
                    break
            if overlap:
                break
        return ConfigClassification(("overlap",), u0, u1, overlap=overlap)
    labels = []
    hiding = None
    if value in u0:
        hiding = 0
    elif value in u1:
        hiding = 1
    if hiding is not None:
        labels.append(f"hiding({hiding})")
    recording = (value not in u0 and value not in u1) \
        or (value in u0 and len(team1) == 1) \
        or (value in u1 and len(team0) == 1)
    if recording:
        labels.append("recording")
    return ConfigClassification(tuple(labels), u0, u1, hiding_value=hiding)


def classify_configuration(system, config, obj_index, teams
                           ) -> ConfigClassification:
    """Classify a protocol configuration in which every process is
    poised to apply an operation to the same object."""
    poised_ops = []
    for i in range(config.n):
        action = system.poised(config, i)
        if action is None or action[0] != obj_index:
            raise ValueError(
                f"process {i} is not poised to access object {obj_index}")
        poised_ops.append(action[1])
    return classify_value(system.obj_types[obj_index],
                          config.obj_values[obj_index], teams,
                          tuple(poised_ops))
