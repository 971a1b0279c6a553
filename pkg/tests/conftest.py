from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from bsig import DelayParams, DetParams, StepFn, canonical, from_changes

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def chi(*changes):
    """Right-continuous function from (time, bit) change points."""
    return from_changes([(Fraction(t), b) for t, b in changes])


# small exact rationals keep interval arithmetic readable in failures
fractions_st = st.fractions(min_value=-8, max_value=16, max_denominator=8)
nonneg_fractions_st = st.fractions(min_value=0, max_value=16, max_denominator=8)
pos_fractions_st = st.fractions(min_value=Fraction(1, 8), max_value=4, max_denominator=8)
bits_st = st.integers(min_value=0, max_value=1)


@st.composite
def stepfns(draw, min_points=0, max_points=6, signal=False):
    """General StepFn (independent point/interval values), or a signal when
    signal=True (nonnegative breakpoints, right-continuous, null before)."""
    base = nonneg_fractions_st if signal else fractions_st
    times = sorted(draw(st.sets(base, min_size=min_points, max_size=max_points)))
    before = 0 if signal else draw(bits_st)
    pieces = []
    for t in times:
        v = draw(bits_st)
        w = v if signal else draw(bits_st)
        pieces.append((t, v, w))
    return canonical(before, pieces)


def signals(min_points=0, max_points=6):
    return stepfns(min_points=min_points, max_points=max_points, signal=True)


@st.composite
def delay_params(draw, granularity=4, max_delay=3):
    def pair():
        a = Fraction(draw(st.integers(1, granularity * max_delay)), granularity)
        b = Fraction(draw(st.integers(1, granularity * max_delay)), granularity)
        return min(a, b), max(a, b)

    r = pair()
    f = pair()
    return DelayParams(r[0], r[1], f[0], f[1])


@st.composite
def det_params(draw, granularity=4, max_delay=3):
    g = st.integers(1, granularity * max_delay)
    return DetParams(
        Fraction(draw(g), granularity), Fraction(draw(g), granularity)
    )


@pytest.fixture
def x_210() -> StepFn:
    """The worked two-pulse example: 1 on [0,1) and [2,3)."""
    return chi((0, 1), (1, 0), (2, 1), (3, 0))
