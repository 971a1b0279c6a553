"""bsig: exact calculus of binary signals over continuous time.

Core pieces: binary step functions with rational breakpoints (stepfn),
inertial delay buffers with separate rise/fall delays (buffer), a comparison
harness for an alternative published delay condition (litcmp), and text /
VCD serialization (waveio).
"""

from .stepfn import (
    ConstructionError,
    DomainError,
    Interval,
    IntervalSet,
    LeqResult,
    ParameterError,
    StepFn,
    Time,
    and_,
    as_time,
    canonical,
    constant,
    derivative,
    from_changes,
    indicator,
    interval,
    is_signal,
    left_limit,
    leq,
    not_,
    one_set,
    or_,
    parse_interval,
    point_interval,
    pointwise,
    any_over_offsets,
    difference_set,
    pick_point,
    require_signal,
    right_continuous_runs,
    semi_derivatives,
    shift,
    Signal,
    switch_points,
    violation_set,
    window,
    window_exists_all,
    xor,
)
from .buffer import (
    AutomatonState,
    DelayParams,
    DetParams,
    Report,
    SamplePolicy,
    TraceEvent,
    Violation,
    automaton_trace,
    check_inertia,
    check_stability,
    didb_simulate,
    didb_verify,
    nidb_sample,
    nidb_verify,
)
from .litcmp import (
    check_fixture,
    CLAIMS,
    counterexample,
    Fixture,
    fixture_ok,
    fuzz_claims,
    FuzzConfig,
    FuzzReport,
    lit_verify,
    Refutation,
)
from .waveio import (
    BsigDocument,
    GenConfig,
    ParseError,
    export_vcd,
    parse_bsig,
    parse_report,
    random_signal,
    summarize_report,
    write_bsig,
    write_report,
)

__version__ = "0.1.0"

__all__ = [
    "AutomatonState",
    "BsigDocument",
    "CLAIMS",
    "ConstructionError",
    "DelayParams",
    "DetParams",
    "DomainError",
    "Fixture",
    "FuzzConfig",
    "FuzzReport",
    "GenConfig",
    "Interval",
    "IntervalSet",
    "LeqResult",
    "ParameterError",
    "ParseError",
    "Refutation",
    "Report",
    "SamplePolicy",
    "Signal",
    "StepFn",
    "Time",
    "TraceEvent",
    "Violation",
    "and_",
    "any_over_offsets",
    "as_time",
    "automaton_trace",
    "canonical",
    "check_fixture",
    "check_inertia",
    "check_stability",
    "constant",
    "counterexample",
    "derivative",
    "didb_simulate",
    "didb_verify",
    "difference_set",
    "export_vcd",
    "fixture_ok",
    "from_changes",
    "fuzz_claims",
    "indicator",
    "interval",
    "is_signal",
    "left_limit",
    "leq",
    "lit_verify",
    "nidb_sample",
    "nidb_verify",
    "not_",
    "one_set",
    "or_",
    "parse_bsig",
    "parse_interval",
    "parse_report",
    "pick_point",
    "point_interval",
    "pointwise",
    "random_signal",
    "require_signal",
    "right_continuous_runs",
    "semi_derivatives",
    "shift",
    "summarize_report",
    "switch_points",
    "violation_set",
    "window",
    "window_exists_all",
    "write_bsig",
    "write_report",
    "xor",
]
