"""Exact binary step functions on the rational line.

A StepFn is a function R -> {0,1} with finitely many breakpoints. The value
AT a breakpoint is independent from the value on the open interval after it,
which is what lets the same type hold right-continuous signals, their left
limits and their derivatives (spikes at isolated points). All times are
exact rationals; nothing in this module rounds.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

Time = Fraction
TimeLike = Union[Fraction, int, str]


class ConstructionError(ValueError):
    """Malformed step-function description (non-increasing times, bad bits)."""


class ParameterError(ValueError):
    """Out-of-range operation parameter (e.g. non-positive window width)."""


class DomainError(ValueError):
    """An operation needed a signal but got a general step function."""


def as_time(value: TimeLike) -> Fraction:
    """Coerce to an exact rational time.

    Accepts Fraction, int, and strings 'p/q' or exact decimals like '0.75'.
    Floats are rejected: binary floats would silently break exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ConstructionError(f"cannot interpret {value!r} as a time")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ConstructionError(f"bad time literal {value!r}") from exc
    raise ConstructionError(f"cannot interpret {value!r} as a time")


def _bit(value) -> int:
    if value is True or value is False:
        return int(value)
    if value in (0, 1):
        return int(value)
    raise ConstructionError(f"bit must be 0 or 1, got {value!r}")


# ---------------------------------------------------------------------------
# Intervals and interval sets
#
# Internally every endpoint maps to a "slot", a point of the line with an
# infinitesimal offset: (t,-1) just below t, (t,0) at t, (t,+1) just above.
# Slots order lexicographically and make union/complement/adjacency of
# intervals with mixed open/closed ends purely combinatorial.
# ---------------------------------------------------------------------------

_MINUS_INF = (0,)
_PLUS_INF = (2,)


def _slot(t: Fraction, eps: int):
    return (1, t, eps)


def _succ(slot):
    # only end slots (eps in {-1,0}) ever need a successor
    _, t, eps = slot
    return (1, t, eps + 1)


def _pred(slot):
    # only start slots (eps in {0,+1}) ever need a predecessor
    _, t, eps = slot
    return (1, t, eps - 1)


@dataclass(frozen=True)
class Interval:
    """One interval with open/closed endpoint flags; None bound = unbounded."""

    lo: Optional[Fraction]
    lo_closed: bool
    hi: Optional[Fraction]
    hi_closed: bool

    def __post_init__(self):
        if self.lo is None and self.lo_closed:
            raise ConstructionError("unbounded lower end cannot be closed")
        if self.hi is None and self.hi_closed:
            raise ConstructionError("unbounded upper end cannot be closed")
        if self.lo is not None and self.hi is not None:
            if self.lo > self.hi:
                raise ConstructionError(f"empty interval: lo={self.lo} > hi={self.hi}")
            if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
                raise ConstructionError("degenerate interval must be closed on both ends")

    @property
    def degenerate(self) -> bool:
        return self.lo is not None and self.lo == self.hi

    def contains(self, t: Fraction) -> bool:
        if self.lo is not None and (t < self.lo or (t == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (t > self.hi or (t == self.hi and not self.hi_closed)):
            return False
        return True

    def _start_slot(self):
        if self.lo is None:
            return _MINUS_INF
        return _slot(self.lo, 0 if self.lo_closed else 1)

    def _end_slot(self):
        if self.hi is None:
            return _PLUS_INF
        return _slot(self.hi, 0 if self.hi_closed else -1)

    def __str__(self) -> str:
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"{'[' if self.lo_closed else '('}{lo}, {hi}{']' if self.hi_closed else ')'}"


def interval(lo, lo_closed, hi, hi_closed) -> Interval:
    """Interval constructor that coerces endpoint times ('1/2', ints, ...)."""
    return Interval(
        None if lo is None else as_time(lo),
        lo_closed,
        None if hi is None else as_time(hi),
        hi_closed,
    )


def point_interval(t) -> Interval:
    t = as_time(t)
    return Interval(t, True, t, True)


def parse_interval(text: str) -> Interval:
    """Inverse of Interval.__str__ ('[0, 1)', '(-inf, 3]', '[2, 2]')."""
    s = text.strip()
    if len(s) < 2 or s[0] not in "([" or s[-1] not in ")]":
        raise ConstructionError(f"bad interval literal {text!r}")
    body = s[1:-1].split(",")
    if len(body) != 2:
        raise ConstructionError(f"bad interval literal {text!r}")
    lo_s, hi_s = body[0].strip(), body[1].strip()
    lo = None if lo_s == "-inf" else as_time(lo_s)
    hi = None if hi_s == "inf" else as_time(hi_s)
    return Interval(lo, s[0] == "[", hi, s[-1] == "]")


def _interval_from_slots(start, end) -> Interval:
    if start == _MINUS_INF:
        lo, lo_closed = None, False
    else:
        _, t, eps = start
        lo, lo_closed = t, eps == 0
    if end == _PLUS_INF:
        hi, hi_closed = None, False
    else:
        _, t, eps = end
        hi, hi_closed = t, eps == 0
    return Interval(lo, lo_closed, hi, hi_closed)


@dataclass(frozen=True)
class IntervalSet:
    """Disjoint, sorted, maximal intervals (no two can be merged)."""

    intervals: tuple[Interval, ...] = ()

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @staticmethod
    def union_of(items: Iterable[Interval]) -> "IntervalSet":
        slots = sorted((iv._start_slot(), iv._end_slot()) for iv in items)
        merged: list[list] = []
        for start, end in slots:
            if merged:
                cur_start, cur_end = merged[-1]
                # adjacency counts: (a,b) next to [b,c) has nothing between
                if start <= (cur_end if cur_end == _PLUS_INF else _succ(cur_end)):
                    if end > cur_end:
                        merged[-1][1] = end
                    continue
            merged.append([start, end])
        return IntervalSet(tuple(_interval_from_slots(s, e) for s, e in merged))

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet.union_of([*self.intervals, *other.intervals])

    def complement(self) -> "IntervalSet":
        gaps = []
        cursor = _MINUS_INF
        for iv in self.intervals:
            start = iv._start_slot()
            if start != _MINUS_INF:
                lo_slot = cursor if cursor == _MINUS_INF else _succ(cursor)
                hi_slot = _pred(start)
                if lo_slot <= hi_slot:
                    gaps.append(_interval_from_slots(lo_slot, hi_slot))
            cursor = iv._end_slot()
        if cursor == _MINUS_INF:
            gaps.append(_interval_from_slots(_MINUS_INF, _PLUS_INF))
        elif cursor != _PLUS_INF:
            gaps.append(_interval_from_slots(_succ(cursor), _PLUS_INF))
        return IntervalSet(tuple(gaps))

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        return self.complement().union(other.complement()).complement()

    def contains(self, t: Fraction) -> bool:
        return any(iv.contains(t) for iv in self.intervals)

    def __str__(self) -> str:
        if not self.intervals:
            return "empty"
        return " u ".join(str(iv) for iv in self.intervals)


# ---------------------------------------------------------------------------
# StepFn
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StepFn:
    """Binary step function: value `before` on (-inf, u_1), then for each
    breakpoint u_k an independent point value v_k and interval value w_k on
    (u_k, u_{k+1}) (w_n extends to +inf).

    The representation is canonical: a breakpoint is present only if its
    point value differs from one of the neighbouring interval values, so
    pointwise-equal functions compare equal as dataclasses.
    """

    before: int
    times: tuple[Fraction, ...] = ()
    point_values: tuple[int, ...] = ()
    interval_values: tuple[int, ...] = ()

    def __post_init__(self):
        _bit(self.before)
        n = len(self.times)
        if len(self.point_values) != n or len(self.interval_values) != n:
            raise ConstructionError("times/point_values/interval_values lengths differ")
        prev_t = None
        prev_w = self.before
        for t, v, w in zip(self.times, self.point_values, self.interval_values):
            if not isinstance(t, Fraction):
                raise ConstructionError(f"breakpoint {t!r} is not an exact rational")
            _bit(v)
            _bit(w)
            if prev_t is not None and t <= prev_t:
                raise ConstructionError(f"breakpoints not strictly increasing at {t}")
            if v == prev_w and v == w:
                raise ConstructionError(f"removable breakpoint at {t}: representation not canonical")
            prev_t, prev_w = t, w

    # -- evaluation ---------------------------------------------------------

    def eval(self, t: TimeLike) -> int:
        t = as_time(t)
        i = bisect_left(self.times, t)
        if i < len(self.times) and self.times[i] == t:
            return self.point_values[i]
        if i == 0:
            return self.before
        return self.interval_values[i - 1]

    def value_after(self, t: TimeLike) -> int:
        """Value on (t, t+eps) for small eps."""
        t = as_time(t)
        i = bisect_right(self.times, t)
        if i == 0:
            return self.before
        return self.interval_values[i - 1]

    @property
    def is_constant(self) -> bool:
        return not self.times

    def __str__(self) -> str:
        return f"ones: {one_set(self)}"

    # piece iterator: (start_slot, end_slot, value) covering the whole line
    def _pieces(self):
        if not self.times:
            yield _MINUS_INF, _PLUS_INF, self.before
            return
        yield _MINUS_INF, _slot(self.times[0], -1), self.before
        n = len(self.times)
        for k in range(n):
            u = self.times[k]
            yield _slot(u, 0), _slot(u, 0), self.point_values[k]
            if k + 1 < n:
                yield _slot(u, 1), _slot(self.times[k + 1], -1), self.interval_values[k]
            else:
                yield _slot(u, 1), _PLUS_INF, self.interval_values[k]

    # sugar used internally and by tests; the public op is pointwise()
    def __invert__(self) -> "StepFn":
        return pointwise("not", self)

    def __and__(self, other: "StepFn") -> "StepFn":
        return pointwise("and", self, other)

    def __or__(self, other: "StepFn") -> "StepFn":
        return pointwise("or", self, other)

    def __xor__(self, other: "StepFn") -> "StepFn":
        return pointwise("xor", self, other)


def canonical(before, pieces: Iterable[tuple]) -> StepFn:
    """Build the canonical StepFn for `before` plus (time, point, interval)
    triples with strictly increasing times. Removable breakpoints are elided.
    """
    before = _bit(before)
    times: list[Fraction] = []
    pvals: list[int] = []
    ivals: list[int] = []
    prev_w = before
    prev_t = None
    for raw_t, raw_v, raw_w in pieces:
        t, v, w = as_time(raw_t), _bit(raw_v), _bit(raw_w)
        if prev_t is not None and t <= prev_t:
            raise ConstructionError(f"breakpoint times not strictly increasing at {t}")
        prev_t = t
        if v == prev_w and v == w:
            continue
        times.append(t)
        pvals.append(v)
        ivals.append(w)
        prev_w = w
    return StepFn(before, tuple(times), tuple(pvals), tuple(ivals))


def constant(bit) -> StepFn:
    return StepFn(_bit(bit))


def from_changes(changes: Iterable[tuple], before=0) -> StepFn:
    """Right-continuous function from (time, new value) change points."""
    return canonical(before, [(t, b, b) for t, b in changes])


_BIT_OPS = {
    "not": lambda a, b: 1 - a,
    "and": lambda a, b: a & b,
    "or": lambda a, b: a | b,
    "xor": lambda a, b: a ^ b,
    "leq": lambda a, b: (1 - a) | b,  # pointwise implication a <= b
}


def pointwise(op: str, f: StepFn, g: Optional[StepFn] = None) -> StepFn:
    if op not in _BIT_OPS:
        raise ParameterError(f"unknown pointwise op {op!r}")
    fn = _BIT_OPS[op]
    if op == "not":
        if g is not None:
            raise ParameterError("'not' takes a single operand")
        return canonical(
            fn(f.before, 0),
            [
                (t, fn(v, 0), fn(w, 0))
                for t, v, w in zip(f.times, f.point_values, f.interval_values)
            ],
        )
    if g is None:
        raise ParameterError(f"{op!r} needs two operands")
    merged = sorted(set(f.times) | set(g.times))
    pieces = [
        (t, fn(f.eval(t), g.eval(t)), fn(f.value_after(t), g.value_after(t)))
        for t in merged
    ]
    return canonical(fn(f.before, g.before), pieces)


def not_(f: StepFn) -> StepFn:
    return pointwise("not", f)


def and_(f: StepFn, g: StepFn) -> StepFn:
    return pointwise("and", f, g)


def or_(f: StepFn, g: StepFn) -> StepFn:
    return pointwise("or", f, g)


def xor(f: StepFn, g: StepFn) -> StepFn:
    return pointwise("xor", f, g)


def shift(f: StepFn, delta: TimeLike) -> StepFn:
    """Translate in time: result(t) = f(t - delta)."""
    delta = as_time(delta)
    return StepFn(
        f.before,
        tuple(t + delta for t in f.times),
        f.point_values,
        f.interval_values,
    )


# ---------------------------------------------------------------------------
# Left limit and derivatives
# ---------------------------------------------------------------------------


def left_limit(f: StepFn) -> StepFn:
    """x(t-0): interval values are kept, the value at each breakpoint becomes
    the value of the open interval immediately to its left."""
    pieces = []
    prev_w = f.before
    for t, w in zip(f.times, f.interval_values):
        pieces.append((t, prev_w, w))
        prev_w = w
    return canonical(f.before, pieces)


def derivative(f: StepFn) -> StepFn:
    """Dx(t) = x(t-0) xor x(t); 1 exactly where the function just switched."""
    return xor(left_limit(f), f)


def semi_derivatives(f: StepFn) -> tuple[StepFn, StepFn]:
    """(rise, fall) = (x(t-0)'*x(t), x(t-0)*x(t)'); rise|fall = Dx, disjoint."""
    prev = left_limit(f)
    return and_(not_(prev), f), and_(prev, not_(f))


# ---------------------------------------------------------------------------
# One-sets and indicators
# ---------------------------------------------------------------------------


def one_set(f: StepFn) -> IntervalSet:
    """The exact set {t : f(t) = 1}."""
    return IntervalSet.union_of(
        _interval_from_slots(s, e) for s, e, value in f._pieces() if value == 1
    )


def indicator(s: IntervalSet) -> StepFn:
    """Characteristic function of an interval set; inverse of one_set."""
    finite: set[Fraction] = set()
    for iv in s:
        if iv.lo is not None:
            finite.add(iv.lo)
        if iv.hi is not None:
            finite.add(iv.hi)
    times = sorted(finite)
    if not times:
        return constant(0 if s.is_empty else 1)
    before = 1 if s.contains(times[0] - 1) else 0
    pieces = []
    for k, t in enumerate(times):
        probe = (t + times[k + 1]) / 2 if k + 1 < len(times) else t + 1
        pieces.append((t, 1 if s.contains(t) else 0, 1 if s.contains(probe) else 0))
    return canonical(before, pieces)


# ---------------------------------------------------------------------------
# Sliding-window operators
# ---------------------------------------------------------------------------

WINDOW_KINDS = ("co", "oo", "oc")  # [t-d,t), (t-d,t), (t-d,t]
WINDOW_MODES = ("all", "any")


def _dilate(iv: Interval, d: Fraction, kind: str) -> Interval:
    """{t : the width-d window at t meets iv}.

    Closure rules fall out of the window shape: a CO window [t-d,t) never
    reaches its own right end, so the dilated interval opens at iv.lo and
    keeps iv's upper closure at iv.hi+d; OO opens both ends; OC mirrors CO.
    """
    hi = None if iv.hi is None else iv.hi + d
    if kind == "co":
        return Interval(iv.lo, False, hi, iv.hi_closed if hi is not None else False)
    if kind == "oo":
        return Interval(iv.lo, False, hi, False)
    if kind == "oc":
        return Interval(iv.lo, iv.lo_closed if iv.lo is not None else False, hi, False)
    raise ParameterError(f"unknown window kind {kind!r}")


def window(mode: str, f: StepFn, d: TimeLike, kind: str = "co") -> StepFn:
    """Pointwise inf ('all') or sup ('any') of f over the sliding window
    ending at t: 'co' = [t-d,t), 'oo' = (t-d,t), 'oc' = (t-d,t].

    Mode 'all' is computed exactly by dilating the 0-set of f; mode 'any' by
    the duality any(f) = not(all(not f)).
    """
    d = as_time(d)
    if d <= 0:
        raise ParameterError(f"window width must be positive, got {d}")
    if kind not in WINDOW_KINDS:
        raise ParameterError(f"unknown window kind {kind!r}")
    if mode == "any":
        return not_(window("all", not_(f), d, kind))
    if mode != "all":
        raise ParameterError(f"unknown window mode {mode!r}")
    zeros = one_set(not_(f))
    dilated = IntervalSet.union_of(_dilate(iv, d, kind) for iv in zeros)
    return indicator(dilated.complement())


def window_exists_all(f: StepFn, a: TimeLike, b: TimeLike, kind: str = "co") -> StepFn:
    """1 at t iff some start t' in [t-a, t-b] has f identically 1 on the
    window from t' to t. Window-ALL is monotone in the start point, so the
    best start is t-b and the whole thing reduces to window('all', f, b).
    """
    a, b = as_time(a), as_time(b)
    if not (0 < b <= a):
        raise ParameterError(f"need 0 < b <= a, got a={a}, b={b}")
    return window("all", f, b, kind)


def _minkowski_sum(a: Interval, b: Interval) -> Interval:
    """{x + y : x in a, y in b}; an endpoint of the sum is attained iff both
    contributing endpoints are."""
    if a.lo is None or b.lo is None:
        lo, lo_closed = None, False
    else:
        lo, lo_closed = a.lo + b.lo, a.lo_closed and b.lo_closed
    if a.hi is None or b.hi is None:
        hi, hi_closed = None, False
    else:
        hi, hi_closed = a.hi + b.hi, a.hi_closed and b.hi_closed
    return Interval(lo, lo_closed, hi, hi_closed)


def any_over_offsets(
    f: StepFn, lo: TimeLike, hi: TimeLike, lo_closed: bool = True, hi_closed: bool = True
) -> StepFn:
    """g(t) = 1 iff f(t + delta) = 1 for some delta in the offset interval.

    Looking ahead by delta in <lo, hi> means t sees the 1-interval I exactly
    when t lies in I shifted back by the offsets, so the result's 1-set is the
    union of Minkowski sums I + <-hi, -lo>.
    """
    lo, hi = as_time(lo), as_time(hi)
    offsets = Interval(-hi, hi_closed, -lo, lo_closed)
    shifted = IntervalSet.union_of(
        _minkowski_sum(iv, offsets) for iv in one_set(f)
    )
    return indicator(shifted)


# ---------------------------------------------------------------------------
# Ordering and signal predicates
# ---------------------------------------------------------------------------

NONNEG = IntervalSet((Interval(Fraction(0), True, None, False),))


@dataclass(frozen=True)
class LeqResult:
    ok: bool
    witness: Optional[Fraction] = None
    witness_interval: Optional[Interval] = None
    lhs: Optional[int] = None
    rhs: Optional[int] = None


def pick_point(iv: Interval) -> Fraction:
    """A concrete witness inside an interval: closed lower end itself,
    else the midpoint, else lower end + 1 when unbounded above."""
    if iv.lo is None:
        return iv.hi - 1 if iv.hi is not None else Fraction(0)
    if iv.lo_closed:
        return iv.lo
    if iv.hi is None:
        return iv.lo + 1
    return (iv.lo + iv.hi) / 2


def violation_set(lhs: StepFn, rhs: StepFn) -> IntervalSet:
    """Where lhs(t) <= rhs(t) fails, restricted to t >= 0."""
    return one_set(and_(lhs, not_(rhs))).intersect(NONNEG)


def difference_set(f: StepFn, g: StepFn) -> IntervalSet:
    """Where f(t) != g(t), restricted to t >= 0."""
    return one_set(xor(f, g)).intersect(NONNEG)


def leq(f: StepFn, g: StepFn) -> LeqResult:
    """Decide f(t) <= g(t) for every t >= 0, exactly.

    On failure the least witness is reported: the violating interval's lower
    end when closed, otherwise an interior point (midpoint, or lo+1 when
    unbounded).
    """
    bad = violation_set(f, g)
    if bad.is_empty:
        return LeqResult(True)
    first = bad.intervals[0]
    w = pick_point(first)
    return LeqResult(False, w, first, f.eval(w), g.eval(w))


def is_signal(f: StepFn) -> tuple[bool, Optional[str]]:
    """A signal is null before 0, right-continuous, piecewise constant with
    finitely many breakpoints. Returns (ok, reason of first violated clause).
    """
    if f.before != 0:
        return False, "value 1 before the first breakpoint"
    for t, v, w in zip(f.times, f.point_values, f.interval_values):
        if t < 0:
            return False, f"breakpoint at {t} is negative"
        if v != w:
            return False, f"not right-continuous at {t}"
    return True, None


def require_signal(f: StepFn, role: str = "input") -> None:
    ok, reason = is_signal(f)
    if not ok:
        raise DomainError(f"{role} is not a signal: {reason}")


# nominal alias: a StepFn accepted by require_signal
Signal = StepFn


def switch_points(x: StepFn) -> tuple[Fraction, ...]:
    """The minimal switching set of a signal: support of its derivative."""
    require_signal(x)
    spikes = one_set(derivative(x))
    points = []
    for iv in spikes:
        if not iv.degenerate:  # cannot happen for signals
            raise DomainError(f"derivative support contains interval {iv}")
        points.append(iv.lo)
    return tuple(points)


def right_continuous_runs(f: StepFn) -> list[tuple[Optional[Fraction], Optional[Fraction], int]]:
    """Maximal constant runs [start, end) of a right-continuous StepFn as
    (start, end, value), start None for the initial unbounded run and end
    None for the final one."""
    for t, v, w in zip(f.times, f.point_values, f.interval_values):
        if v != w:
            raise DomainError(f"not right-continuous at {t}")
    if not f.times:
        return [(None, None, f.before)]
    runs: list[tuple[Optional[Fraction], Optional[Fraction], int]] = []
    runs.append((None, f.times[0], f.before))
    for k, t in enumerate(f.times):
        end = f.times[k + 1] if k + 1 < len(f.times) else None
        runs.append((t, end, f.interval_values[k]))
    return runs
