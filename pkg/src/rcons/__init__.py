"""Finite shared-object types, crash-recovery executions, and
brute-force consensus-power characterization."""

from .characterize import (ConfigClassification, SearchSpaceError, Witness,
                           classify_configuration, classify_value,
                           is_n_discerning, is_n_recording, r_sets, u_sets,
                           verify_discerning, verify_recording)
from .explore import (CriticalReport, ExploreBounds, ValencyReport, Verdict,
                      check_consensus, find_critical, replay, valency)
from .model import (BudgetSpec, Configuration, Crash, Event, Execution,
                    ModelError, Step, System, crash_suffix, format_schedule,
                    indistinguishable, once_schedules, parse_schedule,
                    schedule_within_budget, trace_json, trace_lines,
                    within_budget)
from .objtypes import (ObjectType, TypeError_, apply, builtin_type,
                       is_readable, make_cas, make_register,
                       make_test_and_set, make_tnn, type_from_json,
                       type_to_json)
from .protocols import (make_protocol, recoverable_tnn, wait_free_tnn)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
