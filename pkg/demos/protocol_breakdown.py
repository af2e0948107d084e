"""Exploring the vote-chain protocols.

Verifies the recoverable protocol at its supported process count, then
exhibits exactly how it breaks one process beyond it, and finishes with
a critical-execution search.
"""

from rcons import (BudgetSpec, ExploreBounds, check_consensus,
                   classify_configuration, find_critical, format_schedule,
                   recoverable_tnn, replay, trace_lines, valency,
                   wait_free_tnn)


def main():
    crash_free = ExploreBounds(max_events=12, max_crashes_per_process=0)
    crashy = ExploreBounds(max_events=24, max_crashes_per_process=2,
                           budget=BudgetSpec(z=1))

    print("Wait-free protocol, 5 processes, no crashes:")
    for bits in range(32):
        inputs = format(bits, "05b")
        verdict = check_consensus(wait_free_tnn(5, 2, inputs), crash_free)
        assert verdict.status == "ok"
    print("  ok for all 32 input vectors")

    print("\nRecoverable protocol, 2 processes, crashes within budget:")
    for inputs in ("00", "01", "10", "11"):
        verdict = check_consensus(recoverable_tnn(5, 2, inputs), crashy)
        assert verdict.status == "ok"
    print("  ok for all 4 input vectors")

    print("\nRecoverable protocol, 3 processes (one too many):")
    bounds = ExploreBounds(max_events=10, max_crashes_per_process=1)
    system = recoverable_tnn(5, 2, "001")
    verdict = check_consensus(system, bounds)
    print(f"  {verdict.status} ({verdict.kind}), "
          f"trace {format_schedule(verdict.trace)}")
    execution = replay(system, system.initial_configuration(), verdict.trace)
    for line in trace_lines(execution, ["chain"]):
        print(f"    {line}")
    print(f"  decisions: {sorted(execution.decided_values())}")
    print("  Three probes pass before any vote, so three votes push the "
          "chain past the safe depth; the re-probe then reads bot and "
          "defaults to 0 against an earlier 1.")

    print("\nValency of the 2-process recoverable protocol with mixed "
          "inputs:")
    system = recoverable_tnn(5, 2, "01")
    report = valency(system, system.initial_configuration(), bounds=crashy)
    print(f"  initial configuration: {report.verdict}")

    critical = find_critical(system, crashy)
    print(f"  critical execution: {format_schedule(critical.events)} "
          f"teams {critical.teams}")
    labels = classify_configuration(system, critical.config, 0,
                                    critical.teams)
    print(f"  classification of the shared object there: "
          f"{list(labels.labels)} with U0={sorted(labels.u0)} "
          f"U1={sorted(labels.u1)}")


if __name__ == "__main__":
    main()
