"""Command-line sweeps over the bounds, written as plot-ready CSV.

Every subcommand writes the same columns::

    kind,A,I,d,K,ball_mode,trials,seed,value,extra1,extra2,status

Unused columns are left empty. Settings resolve as flags, then an optional
``key=value`` config file, then defaults; the resolved settings are echoed
as ``#`` comment lines ahead of the header.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import bounds, oracles
from .errors import CapacityError, InvalidArgumentError

HEADER = ["kind", "A", "I", "d", "K", "ball_mode", "trials", "seed", "value", "extra1", "extra2", "status"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3

DEFAULTS = {
    "bound-c": {"A": "3:12:1", "I": "3:60:1", "d": "1:3:1"},
    "rhat": {"A": "3:50:1", "I": None, "d": "1:48:1"},
    "info-loss": {"A": "5:50:1", "I": None, "d": "1:48:1"},
    "verify": {"A": "3:5:1", "I": "2:5:1", "d": "1:2:1"},
}
COMMON_DEFAULTS = {"K": None, "ball_mode": "paper", "trials": 20_000, "seed": 0, "out": "-", "jobs": 1}
CONFIG_KEYS = ("A", "I", "d", "K", "ball_mode", "trials", "seed", "out", "jobs")


@dataclass(frozen=True)
class SweepSpec:
    subcommand: str
    A: range
    I: range | None
    d: range
    K: int | None
    ball_mode: str
    trials: int
    seed: int
    out: str
    jobs: int
    resolved: tuple[tuple[str, str], ...] = ()


def parse_range(text: str) -> range:
    """Inclusive ``start:stop:step`` (``start`` alone or ``start:stop`` also accepted)."""
    try:
        parts = [int(p) for p in str(text).split(":")]
    except ValueError:
        raise InvalidArgumentError(f"bad range {text!r}; expected start:stop:step") from None
    if len(parts) == 1:
        parts = [parts[0], parts[0], 1]
    elif len(parts) == 2:
        parts.append(1)
    if len(parts) != 3:
        raise InvalidArgumentError(f"bad range {text!r}; expected start:stop:step")
    start, stop, step = parts
    if step < 1:
        raise InvalidArgumentError(f"range step must be >= 1 in {text!r}")
    r = range(start, stop + 1, step)
    if len(r) == 0:
        raise InvalidArgumentError(f"range {text!r} is empty")
    return r


def read_config(path: str) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise InvalidArgumentError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.lstrip("-").replace("-", "_")
            if key not in CONFIG_KEYS:
                raise InvalidArgumentError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = value
    return out


def resolve_spec(args: argparse.Namespace) -> SweepSpec:
    config = read_config(args.config) if args.config else {}
    merged = {**COMMON_DEFAULTS, **DEFAULTS[args.command]}
    for key in CONFIG_KEYS:
        if key in config:
            merged[key] = config[key]
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
    try:
        K = None if merged["K"] in (None, "") else int(merged["K"])
        trials, seed, jobs = int(merged["trials"]), int(merged["seed"]), int(merged["jobs"])
    except ValueError as exc:
        raise InvalidArgumentError(str(exc)) from None
    if merged["ball_mode"] not in bounds.BALL_MODES:
        raise InvalidArgumentError(f"ball-mode must be one of {bounds.BALL_MODES}")
    if jobs < 1:
        raise InvalidArgumentError("jobs must be >= 1")
    resolved = tuple((k, "" if merged[k] is None else str(merged[k])) for k in CONFIG_KEYS)
    return SweepSpec(
        subcommand=args.command,
        A=parse_range(merged["A"]),
        I=parse_range(merged["I"]) if merged["I"] not in (None, "") else None,
        d=parse_range(merged["d"]),
        K=K,
        ball_mode=merged["ball_mode"],
        trials=trials,
        seed=seed,
        out=str(merged["out"]),
        jobs=jobs,
        resolved=resolved,
    )


def fmt(x) -> str:
    """Integers verbatim; floats rounded to 9 significant digits, shortest round-trip form."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    return repr(float(f"{float(x):.9g}"))


def _row(kind, A=None, I=None, d=None, K=None, ball_mode="", trials=None, seed=None,
         value=None, extra1=None, extra2=None, status="ok"):
    return [kind, fmt(A), fmt(I), fmt(d), fmt(K), ball_mode, fmt(trials), fmt(seed),
            fmt(value), fmt(extra1), fmt(extra2), status]


def _skipped(exc: Exception) -> str:
    return f"skipped: {exc}"


def bound_c_row(A: int, I: int, d: int) -> list[str]:
    try:
        value = bounds.pathology_probability_lower_bound(bounds.BoundParams(A, d, I=I))
    except InvalidArgumentError as exc:
        return _row("bound_c", A, I, d, status=_skipped(exc))
    return _row("bound_c", A, I, d, value=value)


def rhat_row(A: int, d: int) -> list[str]:
    try:
        rb = bounds.representable_upper_bound(A, d)
    except InvalidArgumentError as exc:
        return _row("rhat", A, d=d, status=_skipped(exc))
    return _row("rhat", A, d=d, value=rb.p_banned, extra1=rb.value, extra2=rb.fraction)


def info_loss_row(A: int, d: int, K: int | None, ball_mode: str) -> list[str]:
    try:
        params = bounds.BoundParams(A, d, K=K, ball_mode=ball_mode)
        res = bounds.info_loss_lower_bound(params)
    except InvalidArgumentError as exc:
        return _row("info_loss", A, d=d, K=K, ball_mode=ball_mode, status=_skipped(exc))
    return _row("info_loss", A, d=d, K=res.K, ball_mode=ball_mode,
                value=res.expectation_lb, extra1=res.scaled_lb)


def verify_rows(report: oracles.VerifyReport) -> list[list[str]]:
    rows = []
    for r in report.rows:
        status = r.status if r.status != "skipped" else f"skipped: {r.reason}"
        rows.append(_row(f"verify_{r.check}", r.A, r.I, r.d, trials=r.trials, seed=r.seed,
                         value=r.bound, extra1=r.oracle, extra2=r.slack, status=status))
    return rows


def _map(fn, items, jobs):
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda args: fn(*args), items))
    return [fn(*args) for args in items]


def run_bound_c(spec: SweepSpec) -> list[list[str]]:
    I_range = spec.I or range(3, 4)
    return _map(bound_c_row, [(A, I, d) for A in spec.A for I in I_range for d in spec.d], spec.jobs)


def run_rhat(spec: SweepSpec) -> list[list[str]]:
    return _map(rhat_row, [(A, d) for A in spec.A for d in spec.d], spec.jobs)


def run_info_loss(spec: SweepSpec) -> list[list[str]]:
    items = [(A, d, spec.K, spec.ball_mode) for A in spec.A for d in spec.d]
    return _map(info_loss_row, items, spec.jobs)


def run_verify(spec: SweepSpec) -> tuple[list[list[str]], oracles.VerifyReport]:
    I_range = spec.I or range(3, 4)
    grid = []
    for A in spec.A:
        for I in I_range:
            for d in spec.d:
                K = None if spec.K is None else min(spec.K, A * (A - 1) // 2)
                grid.append(bounds.BoundParams(A, d, I=I, K=K, ball_mode=spec.ball_mode))
    budget = oracles.Budget(trials=spec.trials, seed=spec.seed)
    report = oracles.verify_all(grid, budget, jobs=spec.jobs)
    return verify_rows(report), report


RUNNERS = {"bound-c": run_bound_c, "rhat": run_rhat, "info-loss": run_info_loss}


def render_csv(spec: SweepSpec, rows: list[list[str]]) -> str:
    buf = io.StringIO()
    for key, value in spec.resolved:
        buf.write(f"# {key}={value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    writer.writerows(rows)
    return buf.getvalue()


def write_output(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prefbounds",
        description="Sweep expressiveness bounds for d-dimensional Euclidean preference models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "bound-c": "lower bound on the probability a random profile is not d-Euclidean",
        "rhat": "upper bound on the fraction of preferences representable at once",
        "info-loss": "lower bound on expected adjacent-swap information loss",
        "verify": "check every bound against brute-force and Monte Carlo oracles",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--A", dest="A", metavar="a0:a1:step", help="number of alternatives")
        p.add_argument("--I", dest="I", metavar="i0:i1:step", help="number of individuals")
        p.add_argument("--d", dest="d", metavar="d0:d1:step", help="dimension")
        p.add_argument("--K", dest="K", type=int, help="truncation of the information-loss sum")
        p.add_argument("--ball-mode", dest="ball_mode", choices=bounds.BALL_MODES)
        p.add_argument("--trials", type=int, help="Monte Carlo trials per grid point")
        p.add_argument("--seed", type=int)
        p.add_argument("--out", help="output path, '-' for stdout")
        p.add_argument("--jobs", type=int, help="grid points evaluated concurrently")
        p.add_argument("--config", help="key=value file; flags take precedence")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = resolve_spec(args)
        if spec.subcommand == "verify":
            rows, report = run_verify(spec)
        else:
            rows, report = RUNNERS[spec.subcommand](spec), None
        write_output(spec.out, render_csv(spec, rows))
    except InvalidArgumentError as exc:
        print(f"prefbounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"prefbounds: capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except OSError as exc:
        print(f"prefbounds: cannot write {exc.filename or spec.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    if report is not None:
        print(report.summary(), file=sys.stderr)
        if not report.ok:
            return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
