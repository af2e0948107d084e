"""The two builtin vote-chain consensus protocols."""

import itertools

import pytest

from rcons.model import ModelError, parse_schedule
from rcons.protocols import (PROTOCOLS, make_protocol, recoverable_tnn,
                             wait_free_tnn)


def run_schedule(system, text):
    return system.run(system.initial_configuration(),
                      parse_schedule(text, system.n))


def test_input_validation():
    with pytest.raises(ModelError):
        wait_free_tnn(5, 2, "02")
    with pytest.raises(ModelError):
        recoverable_tnn(5, 2, "2")


def test_make_protocol():
    assert set(PROTOCOLS) == {"wait-free-tnn", "recoverable-tnn"}
    system = make_protocol("wait-free-tnn", 5, 2, "01")
    assert system.n == 2
    with pytest.raises(ModelError):
        make_protocol("nope", 5, 2, "01")


def test_wait_free_decides_first_voter_value():
    # crash-free: everyone decides the input of whoever voted first
    for inputs in itertools.product("01", repeat=3):
        system = wait_free_tnn(3, 1, inputs)
        for order in itertools.permutations(range(3)):
            text = ",".join(f"p{i}" for i in order)
            execution = run_schedule(system, text)
            assert execution.decided_values() == {inputs[order[0]]}


def test_wait_free_decides_in_one_step():
    system = wait_free_tnn(5, 2, "10101")
    execution = run_schedule(system, "p3")
    assert execution.decisions == ((0, 3, "0"),)


def test_recoverable_vote_path():
    # probe sees the start value, vote, decide the response
    system = recoverable_tnn(5, 2, "10")
    execution = run_schedule(system, "p0,p0")
    assert execution.decisions == ((1, 0, "1"),)


def test_recoverable_probe_decides_from_chain_value():
    system = recoverable_tnn(5, 2, "10")
    execution = run_schedule(system, "p0,p0,p1")
    # process 1's probe reads s_{1,1} and adopts branch 1 in one step
    assert execution.decided_values() == {"1"}


def test_recoverable_crash_then_reprobe_agrees():
    system = recoverable_tnn(5, 2, "01")
    execution = run_schedule(system, "p1,p1,c1,p1,p0")
    assert execution.decided_values() == {"1"}


def test_recoverable_broken_probe_defaults_to_zero():
    # three probes at the start value, then three votes push the chain
    # to depth 3 where the recovery read returns bot and decides 0
    system = recoverable_tnn(5, 2, "111")
    execution = run_schedule(system, "p0,p1,p2,p0,p1,p2,c0,p0")
    assert execution.final.obj_values == ("s_bot",)
    assert execution.decided_values() == {"1", "0"}


def test_recoverable_safe_depth_agrees():
    # only two pre-probed voters: the chain stays within the safe depth
    system = recoverable_tnn(5, 2, "11")
    execution = run_schedule(system, "p0,p1,p0,p1,c1,p1")
    assert execution.decided_values() == {"1"}
