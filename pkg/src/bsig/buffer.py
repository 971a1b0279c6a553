"""Inertial delay buffers with separate rise and fall delays.

A buffer couples an input signal i to an output signal o, both binary and
right-continuous. The output may rise at t only after the input has held 1
throughout a lookback window [t-d, t); falls are symmetric over held-0
windows. With a delay band (d_min, d_max) per edge the switch is forbidden
before the min window fills, optional while only windows between min and max
fill, and forced once the max window fills. The deterministic buffer is the
min = max special case, and its output is then unique.

Everything here is exact: verdicts come from deciding pointwise orderings of
step functions symbolically, never from sampling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from random import Random
from typing import Optional, Union

from .stepfn import (
    ConstructionError,
    DomainError,
    Interval,
    IntervalSet,
    ParameterError,
    StepFn,
    TimeLike,
    and_,
    as_time,
    constant,
    derivative,
    difference_set,
    from_changes,
    left_limit,
    not_,
    one_set,
    or_,
    pick_point,
    require_signal,
    right_continuous_runs,
    semi_derivatives,
    switch_points,
    violation_set,
    window,
)

__all__ = [
    "AutomatonState",
    "DelayParams",
    "DetParams",
    "Report",
    "SamplePolicy",
    "TraceEvent",
    "Violation",
    "automaton_trace",
    "check_inertia",
    "check_stability",
    "didb_simulate",
    "didb_verify",
    "nidb_sample",
    "nidb_verify",
]


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DetParams:
    """Deterministic delay pair: exact rise delay d_r and fall delay d_f."""

    d_r: Fraction
    d_f: Fraction

    def __post_init__(self):
        object.__setattr__(self, "d_r", as_time(self.d_r))
        object.__setattr__(self, "d_f", as_time(self.d_f))
        if self.d_r <= 0 or self.d_f <= 0:
            raise ParameterError(f"delays must be positive, got ({self.d_r}, {self.d_f})")


@dataclass(frozen=True)
class DelayParams:
    """Delay bands: rise delay in [d_r_min, d_r_max], fall in [d_f_min, d_f_max]."""

    d_r_min: Fraction
    d_r_max: Fraction
    d_f_min: Fraction
    d_f_max: Fraction

    def __post_init__(self):
        for name in ("d_r_min", "d_r_max", "d_f_min", "d_f_max"):
            object.__setattr__(self, name, as_time(getattr(self, name)))
        if not (0 < self.d_r_min <= self.d_r_max):
            raise ParameterError(
                f"need 0 < d_r_min <= d_r_max, got ({self.d_r_min}, {self.d_r_max})"
            )
        if not (0 < self.d_f_min <= self.d_f_max):
            raise ParameterError(
                f"need 0 < d_f_min <= d_f_max, got ({self.d_f_min}, {self.d_f_max})"
            )

    def deterministic(self) -> bool:
        return self.d_r_min == self.d_r_max and self.d_f_min == self.d_f_max

    def det(self) -> DetParams:
        if not self.deterministic():
            raise ParameterError(f"{self} has non-degenerate delay bands")
        return DetParams(self.d_r_min, self.d_f_min)


def _det_params(p: Union[DetParams, DelayParams]) -> DetParams:
    if isinstance(p, DetParams):
        return p
    if isinstance(p, DelayParams):
        return p.det()
    raise ParameterError(f"expected delay parameters, got {p!r}")


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    """One refuted clause instance: the bit values observed at the witness.

    The witness is a single time for pointwise clauses; checkers that search
    a whole window report the searched interval instead.
    """

    witness: Union[Fraction, Interval]
    lhs: int
    rhs: int
    clause: str


@dataclass(frozen=True)
class Report:
    """Verdict of one conformance condition; FAIL iff violations is nonempty."""

    condition: str
    verdict: str
    violations: tuple[Violation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "violations", tuple(self.violations))
        if self.verdict not in ("PASS", "FAIL"):
            raise ConstructionError(f"bad verdict {self.verdict!r}")
        if (self.verdict == "FAIL") != bool(self.violations):
            raise ConstructionError("verdict FAIL iff violations nonempty")

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"


def _report(condition: str, violations: list[Violation]) -> Report:
    return Report(condition, "FAIL" if violations else "PASS", tuple(violations))


def _leq_clause(clause: str, lhs: StepFn, rhs: StepFn) -> list[Violation]:
    """All maximal regions where lhs <= rhs fails on t >= 0, one entry each."""
    return [
        Violation(pick_point(iv), 1, 0, clause) for iv in violation_set(lhs, rhs)
    ]


def _eq_clause(clause: str, lhs: StepFn, rhs: StepFn) -> list[Violation]:
    out = []
    for iv in difference_set(lhs, rhs):
        w = pick_point(iv)
        out.append(Violation(w, lhs.eval(w), rhs.eval(w), clause))
    return out


def _null_before(clause: str, o: StepFn, bound: Fraction) -> list[Violation]:
    """Violations of: o(t) = 0 for all t in [0, bound)."""
    region = IntervalSet((Interval(Fraction(0), True, bound, False),))
    return [
        Violation(pick_point(iv), 1, 0, clause)
        for iv in one_set(o).intersect(region)
    ]


# ---------------------------------------------------------------------------
# Deterministic buffer
# ---------------------------------------------------------------------------


def _enabling_windows(i: StepFn, d_r: Fraction, d_f: Fraction) -> tuple[StepFn, StepFn]:
    """(rise enable, fall enable): input held 1 resp. 0 through [t-d, t)."""
    return window("all", i, d_r, "co"), window("all", not_(i), d_f, "co")


def didb_simulate(i: StepFn, p: Union[DetParams, DelayParams]) -> StepFn:
    """The unique output of the deterministic buffer for input i.

    o toggles exactly when its current value disagrees with a freshly filled
    held-input window. The 1-runs of the window functions cover precisely the
    instants where each toggle is enabled, and toggles can only happen at
    their starting points, so a single sweep over those starts suffices.
    """
    p = _det_params(p)
    require_signal(i, "input")
    wr, wf = _enabling_windows(i, p.d_r, p.d_f)
    events: list[tuple[Fraction, int]] = []
    for target, w in ((1, wr), (0, wf)):
        for iv in one_set(w):
            if iv.lo is not None:
                events.append((iv.lo, target))
    cur = 0
    changes: list[tuple[Fraction, int]] = []
    for t, target in sorted(events):
        if target != cur:
            changes.append((t, target))
            cur = target
    return from_changes(changes)


def didb_verify(
    i: StepFn, o: StepFn, p: Union[DetParams, DelayParams], form: str = "all"
) -> Report:
    """Check an (i, o) pair against the deterministic buffer conditions.

    Forms a-d are four equivalent phrasings of the same behaviour (switch
    equations, derivative equation, implication form, tautology form); 'all'
    runs the four and insists their verdicts agree. Every form also requires
    o to be null before the rise delay.
    """
    p = _det_params(p)
    require_signal(i, "input")
    require_signal(o, "output")
    if form == "all":
        reports = [didb_verify(i, o, p, f) for f in "abcd"]
        verdicts = {r.verdict for r in reports}
        if len(verdicts) != 1:
            raise RuntimeError(
                "equivalent deterministic-buffer forms disagree: "
                + ", ".join(f"{r.condition}={r.verdict}" for r in reports)
            )
        merged: list[Violation] = []
        seen_init = False
        for r in reports:
            for v in r.violations:
                if v.clause.startswith("init"):
                    if seen_init:
                        continue
                    seen_init = True
                merged.append(v)
        return _report("4.3all", merged)
    if form not in ("a", "b", "c", "d"):
        raise ParameterError(f"unknown form {form!r}")

    prev = left_limit(o)
    rise_o, fall_o = semi_derivatives(o)
    wr, wf = _enabling_windows(i, p.d_r, p.d_f)
    enable_r = and_(not_(prev), wr)
    enable_f = and_(prev, wf)

    violations = _null_before("init: output not null before rise delay", o, p.d_r)
    if form == "a":
        violations += _eq_clause("4.3a.rise: o(t-0)'*o(t) = o(t-0)'*held1", rise_o, enable_r)
        violations += _eq_clause("4.3a.fall: o(t-0)*o(t)' = o(t-0)*held0", fall_o, enable_f)
        return _report("4.3a", violations)
    if form == "b":
        violations += _eq_clause(
            "4.3b: Do = o(t-0)'*held1 + o(t-0)*held0",
            derivative(o),
            or_(enable_r, enable_f),
        )
        return _report("4.3b", violations)
    if form == "c":
        violations += _leq_clause("4.3c.rise: o(t-0)'*held1 <= o(t)", enable_r, o)
        violations += _leq_clause("4.3c.fall: o(t-0)*held0 <= o(t)'", enable_f, not_(o))
        violations += _leq_clause(
            "4.3c.hold: neither enabled => o holds",
            and_(not_(enable_r), not_(enable_f)),
            or_(and_(not_(prev), not_(o)), and_(prev, o)),
        )
        return _report("4.3c", violations)
    # form d: the four-way case split is exhaustive
    big = or_(
        or_(and_(and_(not_(prev), o), wr), and_(and_(prev, not_(o)), wf)),
        or_(
            and_(and_(not_(prev), not_(o)), not_(wr)),
            and_(and_(prev, o), not_(wf)),
        ),
    )
    violations += _eq_clause("4.3d: case split covers every t", big, constant(1))
    return _report("4.3d", violations)


# ---------------------------------------------------------------------------
# Non-deterministic buffer
# ---------------------------------------------------------------------------


def nidb_verify(i: StepFn, o: StepFn, p: DelayParams, form: str = "a") -> Report:
    """Check an (i, o) pair against the banded-delay buffer conditions.

    Form a bounds the rise and fall semi-derivatives of o separately between
    the max-window (forcing) and min-window (permission) enables; form b
    states the same two-sided bound on the full derivative. The two forms are
    equivalent. Both also require o to be null before d_r_min.
    """
    if not isinstance(p, DelayParams):
        raise ParameterError(f"expected DelayParams, got {p!r}")
    if form not in ("a", "b"):
        raise ParameterError(f"unknown form {form!r}")
    require_signal(i, "input")
    require_signal(o, "output")

    prev = left_limit(o)
    rise_o, fall_o = semi_derivatives(o)
    wmax_r = window("all", i, p.d_r_max, "co")
    wmin_r = window("all", i, p.d_r_min, "co")
    wmax_f = window("all", not_(i), p.d_f_max, "co")
    wmin_f = window("all", not_(i), p.d_f_min, "co")

    violations = _null_before("init: output not null before d_r_min", o, p.d_r_min)
    if form == "a":
        violations += _leq_clause(
            "4.1a.rise-lower: o(t-0)'*held1(max) <= o(t-0)'*o(t)",
            and_(not_(prev), wmax_r),
            rise_o,
        )
        violations += _leq_clause(
            "4.1a.rise-upper: o(t-0)'*o(t) <= o(t-0)'*held1(min)",
            rise_o,
            and_(not_(prev), wmin_r),
        )
        violations += _leq_clause(
            "4.1a.fall-lower: o(t-0)*held0(max) <= o(t-0)*o(t)'",
            and_(prev, wmax_f),
            fall_o,
        )
        violations += _leq_clause(
            "4.1a.fall-upper: o(t-0)*o(t)' <= o(t-0)*held0(min)",
            fall_o,
            and_(prev, wmin_f),
        )
        return _report("4.1a", violations)
    violations += _leq_clause(
        "4.1b.lower: max-window enables <= Do",
        or_(and_(not_(prev), wmax_r), and_(prev, wmax_f)),
        derivative(o),
    )
    violations += _leq_clause(
        "4.1b.upper: Do <= min-window enables",
        derivative(o),
        or_(and_(not_(prev), wmin_r), and_(prev, wmin_f)),
    )
    return _report("4.1b", violations)


# ---------------------------------------------------------------------------
# Sampling admissible outputs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SamplePolicy:
    """How to pick each episode's delay inside [min, max].

    eager = always min, lazy = always max, random = uniform choice from the
    grid multiples of 1/granularity inside the band plus both endpoints.
    """

    kind: str
    seed: Optional[int] = None
    granularity: int = 16

    def __post_init__(self):
        if self.kind not in ("eager", "lazy", "random"):
            raise ParameterError(f"unknown sample policy {self.kind!r}")
        if self.kind == "random":
            if self.seed is None:
                raise ParameterError("random policy needs a seed")
            if self.granularity < 1:
                raise ParameterError(f"granularity must be >= 1, got {self.granularity}")

    @staticmethod
    def eager() -> "SamplePolicy":
        return SamplePolicy("eager")

    @staticmethod
    def lazy() -> "SamplePolicy":
        return SamplePolicy("lazy")

    @staticmethod
    def random(seed: int, granularity: int = 16) -> "SamplePolicy":
        return SamplePolicy("random", seed, granularity)


def _draw_delay(policy: SamplePolicy, rng: Optional[Random], lo: Fraction, hi: Fraction) -> Fraction:
    if policy.kind == "eager":
        return lo
    if policy.kind == "lazy":
        return hi
    g = policy.granularity
    first = -((-lo * g) // 1)  # ceil(lo*g) as a Fraction with denominator 1
    last = (hi * g) // 1
    candidates = {lo, hi}
    k = first
    while k <= last:
        candidates.add(Fraction(int(k), g))
        k += 1
    return rng.choice(sorted(candidates))


def nidb_sample(i: StepFn, p: DelayParams, policy: SamplePolicy) -> StepFn:
    """One admissible output of the banded-delay buffer for input i.

    Walks the constant runs of i in order. Each run whose value disagrees
    with the current output opens an episode: a delay is drawn from the band
    and the output switches at run start + delay, unless the run ends first,
    which cancels the pending switch. Episodes whose run outlives the max
    delay always switch because the drawn delay never exceeds it.

    The result is checked against nidb_verify before being returned.
    """
    if not isinstance(p, DelayParams):
        raise ParameterError(f"expected DelayParams, got {p!r}")
    require_signal(i, "input")
    rng = Random(policy.seed) if policy.kind == "random" else None
    cur = 0
    changes: list[tuple[Fraction, int]] = []
    for start, end, value in right_continuous_runs(i):
        if value == cur or start is None:
            continue
        lo, hi = (p.d_r_min, p.d_r_max) if value == 1 else (p.d_f_min, p.d_f_max)
        delay = _draw_delay(policy, rng, lo, hi)
        if end is None or delay <= end - start:
            changes.append((start + delay, value))
            cur = value
    out = from_changes(changes)
    report = nidb_verify(i, out, p, "a")
    if not report.passed:  # sampler bug, not a property of the input
        raise RuntimeError(f"sampled output failed conformance: {report}")
    return out


# ---------------------------------------------------------------------------
# State traces and consistency checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AutomatonState:
    """Joint (input, output) bit pair; stable iff the bits agree."""

    i_bit: int
    o_bit: int
    stable: bool = field(init=False)

    def __post_init__(self):
        if self.i_bit not in (0, 1) or self.o_bit not in (0, 1):
            raise ConstructionError(f"bad state bits ({self.i_bit}, {self.o_bit})")
        object.__setattr__(self, "stable", self.i_bit == self.o_bit)


@dataclass(frozen=True)
class TraceEvent:
    time: Fraction
    state: AutomatonState


def automaton_trace(i: StepFn, o: StepFn) -> list[TraceEvent]:
    """The joint state trajectory of a pair, one event per state change.

    The implicit starting state is (0, 0); an event at t = 0 appears only if
    the pair is already elsewhere at time 0.
    """
    require_signal(i, "input")
    require_signal(o, "output")
    prev = AutomatonState(0, 0)
    events: list[TraceEvent] = []
    for t in sorted(set(switch_points(i)) | set(switch_points(o))):
        state = AutomatonState(i.eval(t), o.eval(t))
        if state != prev:
            events.append(TraceEvent(t, state))
            prev = state
    return events


def check_stability(i: StepFn, o: StepFn, p: DelayParams) -> Report:
    """No output switch while the pair sits in a stable state.

    On each maximal constant run of i, once o agrees with i the output must
    hold that value through the run, including at the run's right end: an
    output switch may lag an input switch but never coincide with the end of
    a stable stretch. Delay bounds do not enter the property; p is validated
    and otherwise unused.
    """
    if not isinstance(p, (DelayParams, DetParams)):
        raise ParameterError(f"expected delay parameters, got {p!r}")
    require_signal(i, "input")
    require_signal(o, "output")
    o_switches = switch_points(o)
    violations: list[Violation] = []
    for start, end, value in right_continuous_runs(i):
        lo = Fraction(0) if start is None else max(start, Fraction(0))
        if end is not None and end <= lo:
            continue
        # first instant in [lo, end) where o agrees with the run's value
        if o.eval(lo) == value:
            agree = lo
        else:
            agree = None
            for t in o_switches:
                if t > lo and (end is None or t < end) and o.eval(t) == value:
                    agree = t
                    break
        if agree is None:
            continue
        for t in o_switches:
            if t > agree and (end is None or t <= end):
                violations.append(
                    Violation(
                        t,
                        o.eval(t),
                        value,
                        f"3.4: output leaves stable state at {t} while input "
                        f"holds {value}",
                    )
                )
                break
    return _report("3.4", violations)


def check_inertia(i: StepFn, p: Union[DetParams, DelayParams]) -> Report:
    """Deterministic-buffer output switches are backed by long-enough runs.

    Simulates the buffer and checks every output rise sits at the far edge of
    an input 1-run of length >= d_r (falls symmetric over 0-runs); when every
    1-run is shorter than d_r the output must be constant 0.
    """
    p = _det_params(p)
    require_signal(i, "input")
    o = didb_simulate(i, p)
    rise_o, fall_o = semi_derivatives(o)
    ones = list(one_set(i))
    zeros = list(one_set(not_(i)))
    violations: list[Violation] = []

    def backed(t: Fraction, runs: list[Interval], d: Fraction) -> bool:
        for iv in runs:
            if (iv.lo is None or iv.lo <= t - d) and (iv.hi is None or t <= iv.hi):
                return True
        return False

    for iv in one_set(rise_o):
        t = iv.lo
        if not backed(t, ones, p.d_r):
            violations.append(
                Violation(t, 1, 0, f"3.5.rise: rise at {t} without a held-1 run of length {p.d_r}")
            )
    for iv in one_set(fall_o):
        t = iv.lo
        if not backed(t, zeros, p.d_f):
            violations.append(
                Violation(t, 1, 0, f"3.5.fall: fall at {t} without a held-0 run of length {p.d_f}")
            )
    all_short = all(
        iv.lo is not None and iv.hi is not None and iv.hi - iv.lo < p.d_r for iv in ones
    )
    if all_short and o != constant(0):
        t = switch_points(o)[0]
        violations.append(
            Violation(t, 1, 0, f"3.5.null: every 1-run shorter than {p.d_r} yet output switches at {t}")
        )
    return _report("3.5", violations)
