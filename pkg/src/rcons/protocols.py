"""Built-in consensus protocols over a shared vote-chain object.

Both protocols use a single object of the ``tnn`` family, initially at
the start value.

Wait-free protocol: each process applies its vote operation once and
decides the response.  Correct for up to n crash-free processes.

Recoverable protocol: each process first applies the recovery read.  A
chain-value response decides its branch; a ``bot`` response decides
"0"; the start value makes the process vote and decide the response.
Intended for up to n' processes, but deliberately instantiable with
more so the explorer can exhibit the breakdown.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Decide, ModelError, System
from .objtypes import BOTTOM, START, make_tnn, parse_tnn_value


class VoteOnceProgram:
    """Apply op_x once, decide the response."""

    def __init__(self, x):
        if x not in ("0", "1"):
            raise ModelError(f"input must be binary, got {x!r}")
        self.x = x

    def initial_state(self, x):
        return "vote"

    def next_action(self, state):
        if state == "vote":
            return (0, f"op_{self.x}")
        return None

    def on_response(self, state, response):
        return Decide(response)


class RecoverableVoteProgram:
    """Recovery-read first; decide from the response when possible,
    otherwise vote and decide the response."""

    def __init__(self, x):
        if x not in ("0", "1"):
            raise ModelError(f"input must be binary, got {x!r}")
        self.x = x

    def initial_state(self, x):
        return "probe"

    def next_action(self, state):
        if state == "probe":
            return (0, "op_R")
        if state == "vote":
            return (0, f"op_{self.x}")
        return None

    def on_response(self, state, response):
        if state == "probe":
            if response == START:
                return "vote"
            if response == BOTTOM:
                return Decide("0")
            chain = parse_tnn_value(response)
            if chain is None:
                raise ModelError(f"unexpected recovery response {response!r}")
            return Decide(str(chain[0]))
        return Decide(response)


@dataclass(frozen=True)
class ProtocolSpec:
    name: str
    n: int
    n_prime: int
    inputs: tuple


def wait_free_tnn(n: int, n_prime: int, inputs) -> System:
    inputs = tuple(str(x) for x in inputs)
    obj = make_tnn(n, n_prime)
    return System([VoteOnceProgram(x) for x in inputs], inputs,
                  [obj], [START])


def recoverable_tnn(n: int, n_prime: int, inputs) -> System:
    inputs = tuple(str(x) for x in inputs)
    obj = make_tnn(n, n_prime)
    return System([RecoverableVoteProgram(x) for x in inputs], inputs,
                  [obj], [START])


PROTOCOLS = {
    "wait-free-tnn": wait_free_tnn,
    "recoverable-tnn": recoverable_tnn,
}


def make_protocol(name: str, n: int, n_prime: int, inputs) -> System:
    if name not in PROTOCOLS:
        raise ModelError(f"unknown protocol {name!r}; "
                         f"choose from {sorted(PROTOCOLS)}")
    return PROTOCOLS[name](n, n_prime, inputs)
