"""Crash budgets and once-per-process schedules.

Shows the two budget variants disagreeing on an early crash, how the
allowance grows with steps, and the growth of the once-per-process
schedule sets.
"""

from rcons import (BudgetSpec, Step, format_schedule, once_schedules,
                   parse_schedule, schedule_within_budget)


def verdicts(text, n):
    events = parse_schedule(text, n)
    whole = schedule_within_budget(events, n, BudgetSpec(z=1, variant="E"))
    prefix = schedule_within_budget(events, n,
                                    BudgetSpec(z=1, variant="E_star"))
    print(f"  {text:16s} whole-run: {whole!s:5s} every-prefix: {prefix}")


def main():
    print("Budget verdicts with 2 processes, multiplier z=1")
    print("(process i may crash at most z*n times the steps taken by "
          "lower-indexed processes; process 0 never crashes):")
    verdicts("p0,c1,p1", 2)
    verdicts("p1,c1,p0", 2)
    verdicts("p0,c1,c1,p1", 2)
    verdicts("p0,c1,c1,c1", 2)
    verdicts("p1,c0", 2)

    print("\nThe early crash p1,c1,p0 is the interesting row: the crash "
          "debt is repaid by p0's later step, which the whole-run "
          "variant accepts and the every-prefix variant does not.")

    print("\nOnce-per-process schedules over processes {0, 2}:")
    for schedule in once_schedules([0, 2]):
        text = format_schedule(tuple(Step(i) for i in schedule))
        print(f"  {text or '<empty>'}")

    print("\nSchedule-set sizes for k = 0..6 processes:")
    print(" ", [len(once_schedules(range(k))) for k in range(7)])


if __name__ == "__main__":
    main()
