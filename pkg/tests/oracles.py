"""Independent reference implementations used to cross-check the symbolic
operators. Everything here works by finite sampling of piecewise-constant
functions (representative points per piece) or by literal quantifier
evaluation, never by reusing the interval-set machinery under test.
"""

from fractions import Fraction

from bsig import StepFn

# ---------------------------------------------------------------------------
# Sampling helpers
# ---------------------------------------------------------------------------


def sample_points(lo, lo_closed, hi, hi_closed, breakpoints):
    """Finitely many points meeting every piece of f inside the interval
    <lo, hi>, given f's breakpoints. Unbounded ends are None."""
    inner = sorted({t for t in breakpoints
                    if (lo is None or lo < t or (lo == t and lo_closed))
                    and (hi is None or t < hi or (t == hi and hi_closed))})
    anchors = []
    if lo is not None:
        anchors.append(lo)
    anchors.extend(inner)
    if hi is not None:
        anchors.append(hi)
    pts = set()
    if lo is not None and lo_closed:
        pts.add(lo)
    if hi is not None and hi_closed:
        pts.add(hi)
    pts.update(inner)
    # one interior point per gap between consecutive anchors
    for a, b in zip(anchors, anchors[1:]):
        if a < b:
            pts.add(Fraction(a + b, 2))
    # reach past unbounded ends
    if lo is None:
        first = anchors[0] if anchors else Fraction(0)
        pts.add(first - 1)
    if hi is None:
        last = anchors[-1] if anchors else Fraction(0)
        pts.add(last + 1)
    # drop points outside the interval (closed endpoints already handled)
    keep = []
    for t in pts:
        if lo is not None and (t < lo or (t == lo and not lo_closed)):
            continue
        if hi is not None and (t > hi or (t == hi and not hi_closed)):
            continue
        keep.append(t)
    return sorted(keep)


def left_limit_at(f: StepFn, t: Fraction) -> int:
    """f(t-0) computed by evaluating just left of t, clear of breakpoints."""
    smaller = [u for u in f.times if u < t]
    gap = min((t - u for u in smaller), default=Fraction(1))
    return f.eval(t - gap / 2)


def edges(x: StepFn):
    """(rise times, fall times) straight off the representation; valid for
    right-continuous x."""
    rises, falls = [], []
    value = x.before
    for t, v in zip(x.times, x.point_values):
        if v != value:
            (rises if v == 1 else falls).append(t)
        value = v
    return rises, falls


# ---------------------------------------------------------------------------
# Operator oracles
# ---------------------------------------------------------------------------

_WINDOW_SHAPES = {"co": (True, False), "oo": (False, False), "oc": (False, True)}


def window_at(mode: str, f: StepFn, d: Fraction, kind: str, t: Fraction) -> int:
    """Window-ALL/ANY of f over the width-d window ending at t, by sampling."""
    lo_closed, hi_closed = _WINDOW_SHAPES[kind]
    pts = sample_points(t - d, lo_closed, t, hi_closed, f.times)
    values = [f.eval(p) for p in pts]
    if mode == "all":
        return 1 if all(v == 1 for v in values) else 0
    return 1 if any(v == 1 for v in values) else 0


def exists_all_at(f: StepFn, a: Fraction, b: Fraction, kind: str, t: Fraction) -> int:
    """1 iff some start t' in [t-a, t-b] has f identically 1 on the window
    from t' to t of the given kind (two-level quantifier, literal)."""
    lo_closed, hi_closed = _WINDOW_SHAPES[kind]
    for start in sample_points(t - a, True, t - b, True, f.times):
        pts = sample_points(start, lo_closed, t, hi_closed, f.times)
        if all(f.eval(p) == 1 for p in pts):
            return 1
    return 0


def any_over_offsets_at(f, lo, hi, lo_closed, hi_closed, t):
    pts = sample_points(t + lo, lo_closed, t + hi, hi_closed, f.times)
    return 1 if any(f.eval(p) == 1 for p in pts) else 0


def probe_grid(fs, pad=Fraction(2), step=None):
    """A dense grid covering all breakpoints of the given functions: from
    min-pad to max+pad at the requested step (default min gap / 4), plus the
    breakpoints themselves and 0."""
    bps = sorted({t for f in fs for t in f.times})
    if not bps:
        return [Fraction(k, 4) for k in range(-4, 9)]
    if step is None:
        gaps = [b - a for a, b in zip(bps, bps[1:]) if b > a]
        step = min(gaps, default=Fraction(1)) / 4
    t = bps[0] - pad
    end = bps[-1] + pad
    out = {Fraction(0), *bps}
    while t <= end:
        out.add(t)
        t += step
    return sorted(out)


# ---------------------------------------------------------------------------
# Deterministic buffer recursion on a grid
# ---------------------------------------------------------------------------


def didb_grid(i: StepFn, d_r: Fraction, d_f: Fraction, step: Fraction) -> StepFn:
    """The switching recursion evaluated literally on a time grid.

    Exact whenever i's breakpoints and both delays are multiples of step:
    all signals involved are then constant between grid points, so checking
    held windows at grid points only is enough.
    """
    from bsig import from_changes

    assert (d_r / step).denominator == 1 and (d_f / step).denominator == 1
    assert all((t / step).denominator == 1 for t in i.times)
    horizon = (max(i.times) if i.times else Fraction(0)) + d_r + d_f + 1
    nr = int(d_r / step)
    nf = int(d_f / step)
    n = int(horizon / step) + 1
    i_vals = [i.eval(k * step) for k in range(n)]
    o_vals = [0] * n
    for k in range(1, n):
        prev = o_vals[k - 1]
        if prev == 0 and k - nr >= 0 and all(v == 1 for v in i_vals[k - nr:k]):
            o_vals[k] = 1
        elif prev == 1 and k - nf >= 0 and all(v == 0 for v in i_vals[k - nf:k]):
            o_vals[k] = 0
        else:
            o_vals[k] = prev
    changes = []
    cur = 0
    for k in range(n):
        if o_vals[k] != cur:
            changes.append((k * step, o_vals[k]))
            cur = o_vals[k]
    return from_changes(changes)


# ---------------------------------------------------------------------------
# Event-anchored condition oracles (literal quantifiers)
# ---------------------------------------------------------------------------


def lit_b_rise_at(i: StepFn, d_min, d_max, t) -> int:
    """Exists t' in [t-d_max, t-d_min] with i(t'-0) = 0 and i = 1 on [t', t)."""
    for start in sample_points(t - d_max, True, t - d_min, True, i.times):
        if left_limit_at(i, start) != 0:
            continue
        pts = sample_points(start, True, t, False, i.times)
        if all(i.eval(p) == 1 for p in pts):
            return 1
    return 0


def lit_b_fall_at(i: StepFn, d_min, d_max, t) -> int:
    for start in sample_points(t - d_max, True, t - d_min, True, i.times):
        if left_limit_at(i, start) != 1:
            continue
        pts = sample_points(start, True, t, False, i.times)
        if all(i.eval(p) == 0 for p in pts):
            return 1
    return 0


def lit_b_verdict(i: StepFn, o: StepFn, p) -> str:
    rises, falls = edges(o)
    for t in rises:
        if t >= 0 and not lit_b_rise_at(i, p.d_r_min, p.d_r_max, t):
            return "FAIL"
    for t in falls:
        if t >= 0 and not lit_b_fall_at(i, p.d_f_min, p.d_f_max, t):
            return "FAIL"
    return "PASS"


def lit_c_verdict(i: StepFn, o: StepFn, p) -> str:
    """Every input edge answered by a reverse input edge in the open future
    window or a matching output edge in the closed delay window."""
    ri, fi = edges(i)
    ro, fo = edges(o)

    def answered(t, d_min, d_max, reverse_edges, out_edges):
        if any(t < u < t + d_max for u in reverse_edges):
            return True
        return any(t + d_min <= u <= t + d_max for u in out_edges)

    for t in ri:
        if t >= 0 and not answered(t, p.d_r_min, p.d_r_max, fi, ro):
            return "FAIL"
    for t in fi:
        if t >= 0 and not answered(t, p.d_f_min, p.d_f_max, ri, fo):
            return "FAIL"
    return "PASS"
