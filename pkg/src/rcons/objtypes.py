"""Finite deterministic shared-object types.

A type is a total transition table ``delta: (value, operation) -> (next
value, response)`` over finite label sets.  Values, operations, and
responses are opaque strings; responses live in their own namespace even
when a response happens to share its text with a value label.

The built-in zoo covers read/write registers, test-and-set,
compare-and-swap, and the ``tnn`` family of non-readable types whose
recovery-read operation breaks once the object has absorbed too many
votes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


class TypeError_(ValueError):
    """Raised for malformed type definitions or unknown labels."""


VOTE_OPS = ("op_0", "op_1")
RECOVERY_READ = "op_R"
BOTTOM = "bot"
START = "s"
DEAD = "s_bot"


def tnn_value(x: int, i: int) -> str:
    """Label of the i-th vote-chain value on branch x."""
    return "s_{%d,%d}" % (x, i)


def parse_tnn_value(label: str):
    """Inverse of tnn_value; returns (x, i) or None for s / s_bot."""
    if not (label.startswith("s_{") and label.endswith("}")):
        return None
    x, i = label[3:-1].split(",")
    return int(x), int(i)


@dataclass(frozen=True)
class ObjectType:
    """A finite deterministic sequential specification.

    ``delta`` maps every (value, operation) pair to exactly one
    (next value, response) pair.  Instances are validated on
    construction and immutable afterwards.
    """

    name: str
    values: frozenset
    operations: frozenset
    delta: dict = field(compare=False)
    initial_hint: str | None = None

    def __post_init__(self):
        for v in self.values:
            for op in self.operations:
                if (v, op) not in self.delta:
                    raise TypeError_(
                        f"{self.name}: delta missing entry ({v!r}, {op!r})")
        if len(self.delta) != len(self.values) * len(self.operations):
            extra = set(self.delta) - {
                (v, op) for v in self.values for op in self.operations}
            raise TypeError_(f"{self.name}: delta has extra entries {extra}")
        for (v, op), (nxt, _resp) in self.delta.items():
            if nxt not in self.values:
                raise TypeError_(
                    f"{self.name}: delta({v!r}, {op!r}) leaves the value set "
                    f"({nxt!r})")
        if self.initial_hint is not None and self.initial_hint not in self.values:
            raise TypeError_(f"{self.name}: unknown initial value "
                             f"{self.initial_hint!r}")

    @property
    def responses(self) -> frozenset:
        return frozenset(r for (_v, r) in self.delta.values())

    def __hash__(self):
        return hash((self.name, self.values, self.operations))


def apply(obj_type: ObjectType, value: str, op: str):
    """Apply one operation; returns (next value, response).  Pure."""
    if value not in obj_type.values:
        raise TypeError_(f"{obj_type.name}: unknown value {value!r}")
    if op not in obj_type.operations:
        raise TypeError_(f"{obj_type.name}: unknown operation {op!r}")
    return obj_type.delta[(value, op)]


def is_readable(obj_type: ObjectType):
    """Return the least operation that reads every value in place, if any.

    A read must leave the value unchanged and respond with the value's
    own label.
    """
    for op in sorted(obj_type.operations):
        if all(obj_type.delta[(v, op)] == (v, v) for v in obj_type.values):
            return op
    return None


# ---------------------------------------------------------------------------
# Built-in zoo
# ---------------------------------------------------------------------------

def make_tnn(n: int, n_prime: int) -> ObjectType:
    """The 2n-value vote-chain type with a recovery read that is only
    safe for the first ``n_prime`` chain positions.

    From the start value ``s``, op_x records the first vote x and every
    further vote (by either op_0 or op_1) advances the chain, echoing
    the first vote, until the n-th vote lands on the dead value.  op_R
    reads s and the first ``n_prime`` chain values in place; deeper
    chain values make it return ``bot`` and kill the object.
    """
    if not (n > n_prime >= 1):
        raise TypeError_(f"require n > n' >= 1, got n={n}, n'={n_prime}")
    values = {START, DEAD}
    delta = {}
    delta[(START, RECOVERY_READ)] = (START, START)
    for x in (0, 1):
        delta[(START, VOTE_OPS[x])] = (tnn_value(x, 1), str(x))
    for x in (0, 1):
        for i in range(1, n):
            v = tnn_value(x, i)
            values.add(v)
            nxt = tnn_value(x, i + 1) if i < n - 1 else DEAD
            for op in VOTE_OPS:
                delta[(v, op)] = (nxt, str(x))
            if i <= n_prime:
                delta[(v, RECOVERY_READ)] = (v, v)
            else:
                delta[(v, RECOVERY_READ)] = (DEAD, BOTTOM)
    for op in VOTE_OPS + (RECOVERY_READ,):
        delta[(DEAD, op)] = (DEAD, BOTTOM)
    return ObjectType(
        name=f"tnn:{n},{n_prime}",
        values=frozenset(values),
        operations=frozenset(VOTE_OPS + (RECOVERY_READ,)),
        delta=delta,
        initial_hint=START,
    )


def make_register(domain) -> ObjectType:
    """Read/write register over a finite value domain.  Writes answer "ok"."""
    domain = frozenset(domain)
    if not domain:
        raise TypeError_("register domain must be nonempty")
    delta = {}
    for v in domain:
        delta[(v, "Read")] = (v, v)
        for w in domain:
            delta[(v, f"write_{w}")] = (w, "ok")
    return ObjectType(
        name="register:%d" % len(domain),
        values=domain,
        operations=frozenset({"Read"} | {f"write_{w}" for w in domain}),
        delta=delta,
        initial_hint=min(domain),
    )


def make_test_and_set() -> ObjectType:
    delta = {
        ("0", "TAS"): ("1", "0"),
        ("1", "TAS"): ("1", "1"),
        ("0", "Read"): ("0", "0"),
        ("1", "Read"): ("1", "1"),
    }
    return ObjectType(
        name="tas",
        values=frozenset({"0", "1"}),
        operations=frozenset({"TAS", "Read"}),
        delta=delta,
        initial_hint="0",
    )


def make_cas(domain) -> ObjectType:
    """Compare-and-swap over a finite domain; CAS(a,b) responds with the
    old value and swaps to b only when the old value equals a."""
    domain = frozenset(domain)
    if not domain:
        raise TypeError_("cas domain must be nonempty")
    delta = {}
    for v in domain:
        delta[(v, "Read")] = (v, v)
        for a in domain:
            for b in domain:
                delta[(v, f"CAS({a},{b})")] = (b if v == a else v, v)
    ops = {"Read"} | {f"CAS({a},{b})" for a in domain for b in domain}
    return ObjectType(
        name="cas:%d" % len(domain),
        values=domain,
        operations=frozenset(ops),
        delta=delta,
        initial_hint=min(domain),
    )


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def type_to_json(obj_type: ObjectType) -> str:
    """Canonical JSON form: delta keyed operation -> value -> entry,
    keys sorted lexicographically."""
    doc = {
        "name": obj_type.name,
        "values": sorted(obj_type.values),
        "operations": sorted(obj_type.operations),
        "delta": {
            op: {
                v: {"next": obj_type.delta[(v, op)][0],
                    "response": obj_type.delta[(v, op)][1]}
                for v in sorted(obj_type.values)
            }
            for op in sorted(obj_type.operations)
        },
    }
    if obj_type.initial_hint is not None:
        doc["initial"] = obj_type.initial_hint
    return json.dumps(doc, sort_keys=True, indent=2)


def type_from_json(text: str) -> ObjectType:
    """Parse a JSON type definition, reporting the first schema violation."""
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise TypeError_("top level: expected an object")
    for key, kind in (("name", str), ("values", list), ("operations", list),
                      ("delta", dict)):
        if key not in doc:
            raise TypeError_(f"top level: missing field {key!r}")
        if not isinstance(doc[key], kind):
            raise TypeError_(f"{key}: expected {kind.__name__}")
    values = doc["values"]
    operations = doc["operations"]
    for i, v in enumerate(values):
        if not isinstance(v, str):
            raise TypeError_(f"values[{i}]: expected string")
    for i, op in enumerate(operations):
        if not isinstance(op, str):
            raise TypeError_(f"operations[{i}]: expected string")
    delta = {}
    for op in operations:
        if op not in doc["delta"]:
            raise TypeError_(f"delta: missing operation {op!r}")
        row = doc["delta"][op]
        if not isinstance(row, dict):
            raise TypeError_(f"delta[{op!r}]: expected object")
        for v in values:
            if v not in row:
                raise TypeError_(f"delta[{op!r}]: missing value {v!r}")
            cell = row[v]
            if (not isinstance(cell, dict) or "next" not in cell
                    or "response" not in cell):
                raise TypeError_(
                    f"delta[{op!r}][{v!r}]: expected {{next, response}}")
            delta[(v, op)] = (cell["next"], cell["response"])
    initial = doc.get("initial")
    if initial is not None and initial not in values:
        raise TypeError_(f"initial: {initial!r} not in values")
    return ObjectType(
        name=doc["name"],
        values=frozenset(values),
        operations=frozenset(operations),
        delta=delta,
        initial_hint=initial,
    )


def builtin_type(spec: str) -> ObjectType:
    """Resolve a builtin type spec: tnn:n,n' | register:k | tas | cas:k."""
    head, _, arg = spec.partition(":")
    if head == "tas":
        return make_test_and_set()
    if head == "tnn":
        try:
            n, n_prime = (int(p) for p in arg.split(","))
        except ValueError:
            raise TypeError_(f"bad tnn parameters {arg!r}, want tnn:n,n'")
        return make_tnn(n, n_prime)
    if head in ("register", "cas"):
        try:
            k = int(arg)
        except ValueError:
            raise TypeError_(f"bad domain size {arg!r} for {head}")
        if k < 1:
            raise TypeError_("domain size must be >= 1")
        domain = ["bot"] + [str(i) for i in range(k - 1)]
        maker = make_register if head == "register" else make_cas
        return maker(domain[:k])
    raise TypeError_(f"unknown builtin type {spec!r}")
