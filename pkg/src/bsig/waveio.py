"""Waveform and report persistence plus seeded signal generation.

The native `.bsig` text format carries exact rational change times, so round
trips are bit-exact; VCD export is lossy at isolated points (widened by one
tick) and exists only for external waveform viewers. Reports serialize with
rationals as strings so no consumer ever sees floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from random import Random
from typing import Optional, Union

from .buffer import DelayParams, Report, Violation
from .stepfn import (
    Interval,
    ParameterError,
    StepFn,
    as_time,
    from_changes,
    parse_interval,
    require_signal,
    switch_points,
)

__all__ = [
    "BsigDocument",
    "GenConfig",
    "ParseError",
    "export_vcd",
    "parse_bsig",
    "parse_report",
    "random_signal",
    "summarize_report",
    "write_bsig",
    "write_report",
]


class ParseError(ValueError):
    """Malformed `.bsig` text; carries the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def format_time(t: Fraction) -> str:
    return str(t)


# ---------------------------------------------------------------------------
# .bsig documents
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BsigDocument:
    """Parsed model of a `.bsig` file: header plus ordered change points.

    The signal is 0 before the first entry; each entry (t, b) switches the
    value to b from t on.
    """

    entries: tuple[tuple[Fraction, int], ...] = ()
    version: int = 1
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple((t, b) for t, b in self.entries))
        prev = None
        for t, b in self.entries:
            if not isinstance(t, Fraction):
                raise ParameterError(f"entry time {t!r} is not an exact rational")
            if b not in (0, 1):
                raise ParameterError(f"entry bit {b!r} not in {{0, 1}}")
            if t < 0:
                raise ParameterError(f"entry time {t} is negative")
            if prev is not None and t <= prev:
                raise ParameterError(f"entry times not strictly increasing at {t}")
            prev = t

    @staticmethod
    def from_signal(x: StepFn, name: Optional[str] = None) -> "BsigDocument":
        require_signal(x, "waveform")
        return BsigDocument(
            tuple((t, x.eval(t)) for t in switch_points(x)), 1, name
        )

    def to_signal(self) -> StepFn:
        return from_changes(self.entries)

    def to_text(self) -> str:
        lines = [f"# bsig {self.version}"]
        if self.name is not None:
            lines.append(f"# name: {self.name}")
        for t, b in self.entries:
            lines.append(f"{format_time(t)} {b}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def parse(text: str) -> "BsigDocument":
        version = 1
        name = None
        entries: list[tuple[Fraction, int]] = []
        prev: Optional[Fraction] = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("bsig "):
                    try:
                        version = int(body[5:].strip())
                    except ValueError:
                        raise ParseError(lineno, f"bad version comment {raw!r}")
                elif body.startswith("name:"):
                    name = body[5:].strip()
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(lineno, f"expected '<time> <bit>', got {raw!r}")
            try:
                t = as_time(parts[0])
            except ValueError as exc:
                raise ParseError(lineno, str(exc))
            if parts[1] not in ("0", "1"):
                raise ParseError(lineno, f"bit must be 0 or 1, got {parts[1]!r}")
            if t < 0:
                raise ParseError(lineno, f"negative time {t}")
            if prev is not None and t <= prev:
                raise ParseError(lineno, f"times not strictly increasing at {t}")
            entries.append((t, int(parts[1])))
            prev = t
        return BsigDocument(tuple(entries), version, name)


def parse_bsig(text: str) -> StepFn:
    """Signal from `.bsig` text; canonicalizes redundant entries away."""
    return BsigDocument.parse(text).to_signal()


def write_bsig(x: StepFn, name: Optional[str] = None) -> str:
    """`.bsig` text for a signal; inverse of parse_bsig."""
    return BsigDocument.from_signal(x, name).to_text()


# ---------------------------------------------------------------------------
# VCD export
# ---------------------------------------------------------------------------


def export_vcd(named: list[tuple[str, StepFn]]) -> str:
    """Value-change-dump text for external waveform viewers.

    All breakpoints are scaled by the least common multiple of their
    denominators so ticks are integers and relative gaps survive exactly; the
    scale (and tick offset, when negative times occur) is recorded in the
    header comment. An isolated point value v_k != w_k becomes a change at
    its tick reverted at the next tick, widening the point by one tick; a
    genuine change at that next tick wins over the revert.
    """
    names = [n for n, _ in named]
    if len(set(names)) != len(names):
        raise ParameterError("signal names must be unique")
    for n in names:
        if not n.isidentifier():
            raise ParameterError(f"name {n!r} is not identifier-safe")

    denoms = [t.denominator for _, f in named for t in f.times]
    scale = lcm(*denoms) if denoms else 1
    all_ticks = [int(t * scale) for _, f in named for t in f.times]
    offset = -min(all_ticks) if all_ticks and min(all_ticks) < 0 else 0

    ids = {n: chr(33 + k) for k, (n, _) in enumerate(named)}
    changes: dict[int, dict[str, int]] = {}
    initial: dict[str, int] = {}
    for n, f in named:
        initial[n] = f.before
        per: dict[int, int] = {}
        for t, v, w in zip(f.times, f.point_values, f.interval_values):
            tick = int(t * scale) + offset
            per[tick] = v
            per[tick + 1] = w  # revert (or be overwritten by the next change)
        running = f.before
        for tick in sorted(per):
            if per[tick] != running:
                changes.setdefault(tick, {})[n] = per[tick]
                running = per[tick]

    lines = [
        "$comment",
        f"scale: {scale} ticks per time unit; tick offset: {offset}",
        "isolated point values are widened to one tick",
        "$end",
        "$timescale 1 s $end",
        "$scope module top $end",
    ]
    for n, _ in named:
        lines.append(f"$var wire 1 {ids[n]} {n} $end")
    lines += ["$upscope $end", "$enddefinitions $end", "$dumpvars"]
    for n, _ in named:
        lines.append(f"{initial[n]}{ids[n]}")
    lines.append("$end")
    for tick in sorted(changes):
        lines.append(f"#{tick}")
        for n, _ in named:
            if n in changes[tick]:
                lines.append(f"{changes[tick][n]}{ids[n]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Random signals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GenConfig:
    """Bounds for the seeded signal generator: switch times are multiples of
    1/granularity inside [0, horizon], at most max_switches of them."""

    horizon: Fraction = Fraction(8)
    max_switches: int = 6
    granularity: int = 4
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "horizon", as_time(self.horizon))
        if self.horizon < 0:
            raise ParameterError(f"horizon must be >= 0, got {self.horizon}")
        if self.max_switches < 0:
            raise ParameterError(f"max_switches must be >= 0, got {self.max_switches}")
        if self.granularity < 1:
            raise ParameterError(f"granularity must be >= 1, got {self.granularity}")


def random_signal(cfg: GenConfig) -> StepFn:
    """Deterministic-in-seed random signal within the config's bounds."""
    rng = Random(cfg.seed)
    grid = [Fraction(k, cfg.granularity) for k in range(int(cfg.horizon * cfg.granularity) + 1)]
    n = rng.randint(0, min(cfg.max_switches, len(grid)))
    times = sorted(rng.sample(grid, n))
    return from_changes((t, 1 - (k % 2)) for k, t in enumerate(times))


# ---------------------------------------------------------------------------
# Report serialization
# ---------------------------------------------------------------------------


def _witness_str(w: Union[Fraction, Interval]) -> str:
    return str(w)


def _witness_parse(s: str) -> Union[Fraction, Interval]:
    if s and s[0] in "([":
        return parse_interval(s)
    return as_time(s)


def _report_doc(r: Report) -> dict:
    return {
        "kind": "report",
        "verdict": r.verdict.lower(),
        "condition": r.condition,
        "violations": [
            {
                "witness": _witness_str(v.witness),
                "lhs": v.lhs,
                "rhs": v.rhs,
                "clause": v.clause,
            }
            for v in r.violations
        ],
    }


def _report_from_doc(doc: dict) -> Report:
    return Report(
        doc["condition"],
        doc["verdict"].upper(),
        tuple(
            Violation(_witness_parse(v["witness"]), v["lhs"], v["rhs"], v["clause"])
            for v in doc["violations"]
        ),
    )


def write_report(r) -> str:
    """Machine-readable JSON document for a Report or a FuzzReport."""
    from .litcmp import FuzzReport  # lazy: litcmp imports this module

    if isinstance(r, Report):
        doc = _report_doc(r)
    elif isinstance(r, FuzzReport):
        doc = _fuzz_doc(r)
    else:
        raise ParameterError(f"cannot serialize {r!r}")
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def summarize_report(r) -> str:
    """Human text: verdict line plus one line per violation."""
    from .litcmp import FuzzReport

    if isinstance(r, Report):
        lines = [f"{r.condition}: {r.verdict}"]
        for v in r.violations:
            lines.append(f"  witness {_witness_str(v.witness)}: lhs={v.lhs} rhs={v.rhs}  [{v.clause}]")
        return "\n".join(lines) + "\n"
    if isinstance(r, FuzzReport):
        lines = [f"fuzz: {r.config.trials} trials, seed {r.config.seed}: "
                 f"{'PASS' if r.passed else 'FAIL'}"]
        for claim in sorted(r.confirmations):
            lines.append(f"  {claim}: {r.confirmations[claim]} confirmations")
        lines.append(f"  strictness examples: {r.strictness_examples}")
        for ref in r.refutations:
            lines.append(f"  REFUTED {ref.claim} on {ref.fixture.name}: {ref.detail}")
        return "\n".join(lines) + "\n"
    raise ParameterError(f"cannot summarize {r!r}")


def parse_report(text: str):
    """Inverse of write_report for both document kinds."""
    doc = json.loads(text)
    if doc.get("kind") == "report":
        return _report_from_doc(doc)
    if doc.get("kind") == "fuzz-report":
        return _fuzz_from_doc(doc)
    raise ParameterError(f"unknown report kind {doc.get('kind')!r}")


def _fuzz_doc(r) -> dict:
    return {
        "kind": "fuzz-report",
        "config": {
            "trials": r.config.trials,
            "seed": r.config.seed,
            "horizon": str(r.config.horizon),
            "max_switches": r.config.max_switches,
            "granularity": r.config.granularity,
            "delay_granularity": r.config.delay_granularity,
            "max_delay": str(r.config.max_delay),
        },
        "confirmations": dict(sorted(r.confirmations.items())),
        "strictness_examples": r.strictness_examples,
        "refutations": [
            {
                "claim": ref.claim,
                "name": ref.fixture.name,
                "i": write_bsig(ref.fixture.i),
                "o": write_bsig(ref.fixture.o),
                "p": [
                    str(ref.fixture.p.d_r_min),
                    str(ref.fixture.p.d_r_max),
                    str(ref.fixture.p.d_f_min),
                    str(ref.fixture.p.d_f_max),
                ],
                "expected": dict(sorted(ref.fixture.expected.items())),
                "detail": ref.detail,
            }
            for ref in r.refutations
        ],
    }


def _fuzz_from_doc(doc: dict):
    from .litcmp import Fixture, FuzzConfig, FuzzReport, Refutation

    c = doc["config"]
    config = FuzzConfig(
        trials=c["trials"],
        seed=c["seed"],
        horizon=as_time(c["horizon"]),
        max_switches=c["max_switches"],
        granularity=c["granularity"],
        delay_granularity=c["delay_granularity"],
        max_delay=as_time(c["max_delay"]),
    )
    refutations = tuple(
        Refutation(
            ref["claim"],
            Fixture(
                ref["name"],
                parse_bsig(ref["i"]),
                parse_bsig(ref["o"]),
                DelayParams(*[as_time(x) for x in ref["p"]]),
                dict(ref["expected"]),
            ),
            ref["detail"],
        )
        for ref in doc["refutations"]
    )
    return FuzzReport(
        config=config,
        confirmations=dict(doc["confirmations"]),
        refutations=refutations,
        strictness_examples=doc["strictness_examples"],
    )
