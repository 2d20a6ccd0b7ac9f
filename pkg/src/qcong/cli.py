"""``qcong verify <check-id> ...``: enumerate cases, run them, report."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Sequence

from .errors import EmptySelection
from .numthy import is_prime
from .verifier import CheckCase, CheckId, CheckReport, Strategy, run_check

EXIT_OK, EXIT_FAILURES, EXIT_USAGE = 0, 1, 2

# command-line names; "thm1" is the only one that differs from the enum value
CHECK_NAMES = {
    "thm1": CheckId.THM1_EQ15, "thm2": CheckId.THM2, "thm3": CheckId.THM3,
    "eq13": CheckId.EQ13, "eq14": CheckId.EQ14, "eq42": CheckId.EQ42,
    "whipple": CheckId.WHIPPLE, "lemma_s2": CheckId.LEMMA_S2,
    "fact_ident": CheckId.FACT_IDENT, "num_modp3": CheckId.NUM_MODP3,
    "num_modp2": CheckId.NUM_MODP2, "num_conj_8": CheckId.NUM_CONJ_8,
    "num_conj_16": CheckId.NUM_CONJ_16, "limit_bridge": CheckId.LIMIT_BRIDGE,
}

# Default ranges reproduce the acceptance grids.
DEFAULTS: dict[CheckId, dict[str, tuple[int, int]]] = {
    CheckId.THM1_EQ15: {"n": (3, 25)},
    CheckId.THM2: {"m": (1, 5), "n": (3, 9)},
    CheckId.THM3: {"m": (1, 5), "n": (3, 9)},
    CheckId.EQ13: {"n": (3, 25)},
    CheckId.EQ14: {"n": (3, 25)},
    CheckId.EQ42: {"n": (3, 25)},
    CheckId.WHIPPLE: {"n": (3, 25)},
    CheckId.LEMMA_S2: {"n": (3, 15)},
    CheckId.FACT_IDENT: {"n": (3, 25)},
    CheckId.NUM_MODP3: {"p": (3, 199)},
    CheckId.NUM_MODP2: {"p": (3, 99), "r": (1, 2)},
    CheckId.NUM_CONJ_8: {"p": (3, 50), "m": (1, 9)},
    CheckId.NUM_CONJ_16: {"p": (3, 50), "m": (1, 9)},
    CheckId.LIMIT_BRIDGE: {"n": (3, 13)},
}
PRIME_PARAMS = {CheckId.LIMIT_BRIDGE: "n"}
MAX_PRIME_POWER = 250  # NUM_MODP2 uses p^r < 250


@dataclass
class RunConfig:
    checks: list[CheckId]
    ranges: dict[str, tuple[int, int]] = field(default_factory=dict)
    strategy: Strategy = Strategy.BOTH
    fmt: str = "text"
    jobs: int = 1
    out: str | None = None
    mode: str = "roots"
    max_mn: int | None = None

    def __post_init__(self):
        if self.jobs < 1:
            raise ValueError("worker count must be at least 1")


def parse_range(text: str) -> tuple[int, int]:
    """``"A..B"`` or ``"A"`` -> ``(A, B)``."""
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi) if sep else int(lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return a, b


def _values(name: str, bounds: tuple[int, int], check: CheckId) -> list[int]:
    lo, hi = bounds
    vals = range(lo, hi + 1)
    if name in ("n", "m"):
        vals = [v for v in vals if v % 2 and v >= (3 if name == "n" else 1)]
    elif name == "p":
        vals = [v for v in vals if v > 2 and is_prime(v)]
    elif name == "r":
        vals = [v for v in vals if v >= 1]
    if PRIME_PARAMS.get(check) == name:
        vals = [v for v in vals if is_prime(v)]
    return list(vals)


def enumerate_cases(config: RunConfig) -> list[CheckCase]:
    """Cases in check-id order, then parameters ascending (lexicographic in the
    parameter names' sorted order)."""
    cases = []
    for check in sorted(set(config.checks), key=lambda c: c.value):
        names = sorted(DEFAULTS[check])
        grids = [_values(nm, config.ranges.get(nm, DEFAULTS[check][nm]), check) for nm in names]
        combos: list[dict] = [{}]
        for nm, vals in zip(names, grids):
            combos = [dict(c, **{nm: v}) for c in combos for v in vals]
        for params in combos:
            if check == CheckId.NUM_MODP2 and params["p"] ** params["r"] >= MAX_PRIME_POWER:
                continue
            if config.max_mn is not None and "m" in params and "n" in params \
                    and params["m"] * params["n"] > config.max_mn:
                continue
            cases.append(CheckCase(check, params))
    if not cases:
        raise EmptySelection("no cases survive the parameter filters")
    return cases


def _status_counts(reports: Sequence[CheckReport]) -> dict[str, int]:
    counts = {"pass": 0, "fail": 0, "skipped": 0, "error": 0}
    for r in reports:
        counts[r.status] += 1
    return counts


def render_report(reports: Sequence[CheckReport], fmt: str = "text") -> str:
    counts = _status_counts(reports)
    if fmt == "json":
        doc = {"version": 1, "cases": [r.to_record() for r in reports], "summary": counts}
        return json.dumps(doc, indent=2, ensure_ascii=False)
    rows = []
    for r in reports:
        params = " ".join(f"{k}={v}" for k, v in r.case.params.items())
        mult = "-" if r.multiplicity is None else str(r.multiplicity)
        agree = {None: "-", True: "agree", False: "DISAGREE"}[r.strategy_agreement]
        notes = "; ".join(r.notes)
        rows.append((r.case.check_id.value, params, r.status.upper(), f"mult={mult}",
                     r.strategy, agree, f"{r.elapsed_ms:.1f}ms", notes))
    lines = []
    if rows:
        widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]) - 1)]
        for row in rows:
            cells = [c.ljust(w) for c, w in zip(row, widths)]
            lines.append("  ".join(cells + [row[-1]]).rstrip())
    summary = f"{len(reports)} cases"
    if reports:
        summary += ": " + ", ".join(f"{v} {k}" for k, v in counts.items())
    lines.append(summary)
    return "\n".join(lines)


def execute(cases: Sequence[CheckCase], strategy, jobs: int = 1, mode: str = "roots") -> list[CheckReport]:
    """Run cases; results come back in input order whatever the worker count."""
    work = partial(run_check, strategy=Strategy(strategy).value, thm3_mode=mode)
    if jobs <= 1 or len(cases) <= 1:
        return [work(c) for c in cases]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(work, cases, chunksize=1))


def run(config: RunConfig) -> int:
    cases = enumerate_cases(config)
    reports = execute(cases, config.strategy, config.jobs, config.mode)
    text = render_report(reports, config.fmt)
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    bad = any(r.status in ("fail", "error") for r in reports)
    return EXIT_FAILURES if bad else EXIT_OK


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("QCONG_JOBS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcong", description="Verify q-supercongruences exactly.")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run one check (or all) over a parameter grid")
    v.add_argument("check", help="check id (" + ", ".join(CHECK_NAMES) + ") or 'all'")
    v.add_argument("--n", type=parse_range, metavar="A..B")
    v.add_argument("--m", type=parse_range, metavar="A..B")
    v.add_argument("--p", type=parse_range, metavar="A..B")
    v.add_argument("--r", type=parse_range, metavar="K", help="exponent r, or a range A..B")
    v.add_argument("--max-mn", type=int, default=None, help="drop (m, n) pairs with m*n above this")
    v.add_argument("--strategy", choices=[s.value for s in Strategy], default="both")
    v.add_argument("--mode", choices=["roots", "division", "both"], default="roots",
                   help="verification mode for thm3")
    v.add_argument("--format", choices=["text", "json"], default="text", dest="fmt")
    v.add_argument("--jobs", type=int, default=None, help="worker processes (default $QCONG_JOBS or 1)")
    v.add_argument("--out", default=None, help="write the report here instead of stdout")
    return parser


def _resolve_check(name: str) -> list[CheckId]:
    if name.lower() == "all":
        return list(CheckId)
    if name.lower() in CHECK_NAMES:
        return [CHECK_NAMES[name.lower()]]
    try:
        return [CheckId(name.upper())]
    except ValueError:
        raise EmptySelection(f"unknown check id {name!r}") from None


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        checks = _resolve_check(args.check)
        jobs = args.jobs if args.jobs is not None else _default_jobs()
        ranges = {k: getattr(args, k) for k in ("n", "m", "p", "r") if getattr(args, k)}
        config = RunConfig(checks, ranges, Strategy(args.strategy), args.fmt, jobs, args.out,
                           args.mode, args.max_mn)
        return run(config)
    except (EmptySelection, ValueError) as exc:
        print(f"qcong: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
