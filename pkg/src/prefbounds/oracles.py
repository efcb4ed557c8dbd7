"""Brute-force and Monte Carlo ground truth for the bounds.

Nothing here calls the closed forms it is checked against: probabilities
come from enumerating or sampling profiles and running the detector, and
the 1-D count comes from sweeping an ideal point along a line.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import bounds
from .errors import CapacityError, DegeneracyError, InvalidArgumentError
from .pathology import DETECTOR_MAX_A, DETECTOR_MAX_I, circulant_mask, is_banned
from .perm import Preference, sample_positions

PROFILE_CAP = 10**7
ENUMERATION_MAX_A = 10
MC_CHUNK = 20_000


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    std_error: float
    trials: int
    seed: int | None
    hits: int = 0


def _all_positions(A: int) -> np.ndarray:
    """Position arrays of all ``A!`` permutations, shape ``(A!, A)``."""
    perms = np.array(list(itertools.permutations(range(A))), dtype=np.int8)
    pos = np.empty_like(perms)
    rows = np.arange(len(perms))[:, None]
    pos[rows, perms] = np.arange(A, dtype=np.int8)
    return pos


def exact_pathology_probability(A: int, I: int, k: int, cap: int = PROFILE_CAP) -> Fraction:
    """Exact fraction of ordered profiles ``(A!)**I`` that contain a size-``k`` pathology.

    Use ``float()`` on the result for the real value.
    """
    if A < 1 or I < 1:
        raise InvalidArgumentError(f"need A, I >= 1, got A={A}, I={I}")
    nperm = math.factorial(A)
    total = nperm**I
    if total > cap:
        raise CapacityError(f"(A!)^I = {total} profiles exceeds the cap {cap}")
    if k > min(A, I):
        return Fraction(0)
    pos = _all_positions(A)
    hits = 0
    # decode profile indices in mixed radix, chunk by chunk
    chunk = max(1, MC_CHUNK)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = np.empty((idx.size, I), dtype=np.int64)
        rem = idx
        for i in range(I - 1, -1, -1):
            digits[:, i] = rem % nperm
            rem = rem // nperm
        hits += int(circulant_mask(pos[digits], k).sum())
    return Fraction(hits, total)


def mc_pathology_probability(
    A: int,
    I: int,
    k: int,
    trials: int,
    seed: int | None = None,
    chunk: int = MC_CHUNK,
) -> McEstimate:
    """Monte Carlo estimate of the pathology probability; deterministic given ``seed``.

    Each chunk of trials draws from its own child stream of the root seed, so the
    result does not depend on how chunks are scheduled.
    """
    if trials < 1:
        raise InvalidArgumentError("trials must be >= 1")
    if A > DETECTOR_MAX_A or I > DETECTOR_MAX_I:
        raise CapacityError(
            f"detector capped at A <= {DETECTOR_MAX_A}, I <= {DETECTOR_MAX_I}; got A={A}, I={I}"
        )
    if k > min(A, I):
        return McEstimate(0.0, 0.0, trials, seed)
    nchunks = -(-trials // chunk)
    children = np.random.SeedSequence(seed).spawn(nchunks)
    hits = 0
    for c, child in enumerate(children):
        n = min(chunk, trials - c * chunk)
        positions = sample_positions(np.random.default_rng(child), (n, I), A)
        hits += int(circulant_mask(positions, k).sum())
    p = hits / trials
    return McEstimate(p, math.sqrt(p * (1 - p) / trials), trials, seed, hits)


def enumerate_banned_probability(A: int, d: int, max_alternatives: int = ENUMERATION_MAX_A) -> Fraction:
    """Exact fraction of all ``A!`` preferences for which :func:`is_banned` holds."""
    if A > max_alternatives:
        raise CapacityError(f"enumerating {A}! permutations exceeds the cap A <= {max_alternatives}")
    if A < 1:
        raise InvalidArgumentError("A must be >= 1")
    hits = sum(is_banned(Preference(p), d) for p in itertools.permutations(range(A)))
    return Fraction(hits, math.factorial(A))


def one_dim_distinct_orders(locations: Iterable[float]) -> int:
    """Number of distinct preferences induced by ideal points on a line.

    Orders change only where the ideal point crosses a midpoint between two
    locations, so one probe per cell between sorted midpoints covers them all.
    """
    x = np.asarray(list(locations), dtype=float)
    if x.size < 1:
        raise InvalidArgumentError("need at least one location")
    if np.unique(x).size != x.size:
        raise DegeneracyError("locations must be pairwise distinct; perturb them")
    if x.size == 1:
        return 1
    i, j = np.triu_indices(x.size, 1)
    mids = np.sort((x[i] + x[j]) / 2)
    if np.any(np.diff(mids) == 0):
        raise DegeneracyError("two pairs share a midpoint; perturb the locations")
    gaps = np.diff(mids)
    span = max(1.0, float(np.ptp(x)))
    probes = np.concatenate(([mids[0] - span], mids[:-1] + gaps / 2, [mids[-1] + span]))
    orders = {tuple(np.argsort(np.abs(x - w), kind="stable")) for w in probes}
    return len(orders)


@dataclass(frozen=True)
class Budget:
    """Caps and Monte Carlo settings for :func:`verify_all`."""

    trials: int = 20_000
    seed: int = 0
    profile_cap: int = PROFILE_CAP
    enumeration_max_a: int = 8
    one_dim_max_a: int = 8
    mc_max_a: int = 6
    mc_max_i: int = DETECTOR_MAX_I
    sigmas: float = 4.0
    tolerance: float = 1e-9


@dataclass(frozen=True)
class CheckRow:
    check: str
    A: int
    I: int | None
    d: int
    status: str  # "pass", "fail" or "skipped"
    bound: float | None = None
    oracle: float | None = None
    slack: float | None = None
    trials: int | None = None
    seed: int | None = None
    reason: str = ""


@dataclass
class VerifyReport:
    rows: list[CheckRow] = field(default_factory=list)

    @property
    def failures(self) -> list[CheckRow]:
        return [r for r in self.rows if r.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        counts = {s: sum(r.status == s for r in self.rows) for s in ("pass", "fail", "skipped")}
        lines = [f"{counts['pass']} passed, {counts['fail']} failed, {counts['skipped']} skipped"]
        for r in self.failures:
            lines.append(
                f"FAIL {r.check} A={r.A} I={r.I} d={r.d}: bound={r.bound} oracle={r.oracle} slack={r.slack}"
            )
        return "\n".join(lines)


def _point_seed(seed: int, A: int, I: int, d: int) -> int:
    # per grid point, so results do not depend on evaluation order
    return int(np.random.SeedSequence([seed, A, I, d]).generate_state(1)[0])


def check_pathology(params: bounds.BoundParams, budget: Budget) -> CheckRow:
    """Pathology bound against exhaustive enumeration, else Monte Carlo plus ``sigmas`` errors."""
    A, I, d = params.A, params.I, params.d
    try:
        params.check_pathology_bound()
    except InvalidArgumentError as exc:
        return CheckRow("pathology", A, I, d, "skipped", reason=str(exc))
    bound = bounds.pathology_probability_lower_bound(params)
    k = d + 2
    if math.factorial(A) ** I <= budget.profile_cap:
        exact = float(exact_pathology_probability(A, I, k, cap=budget.profile_cap))
        slack = exact - bound
        return CheckRow("pathology", A, I, d, "pass" if slack >= 0 else "fail", bound, exact, slack)
    if A > budget.mc_max_a or I > budget.mc_max_i or budget.trials < 1:
        return CheckRow("pathology", A, I, d, "skipped", bound, reason="beyond enumeration and Monte Carlo caps")
    seed = _point_seed(budget.seed, A, I, d)
    est = mc_pathology_probability(A, I, k, budget.trials, seed)
    slack = est.estimate + budget.sigmas * est.std_error - bound
    return CheckRow(
        "pathology", A, I, d, "pass" if slack >= 0 else "fail",
        bound, est.estimate, slack, trials=budget.trials, seed=seed,
    )


def check_banned(A: int, d: int, budget: Budget) -> CheckRow:
    """Banned-preference probability against full enumeration (equality within tolerance)."""
    if not 1 <= d < A - 1:
        return CheckRow("banned", A, None, d, "skipped", reason=f"needs 1 <= d < A-1, got d={d}, A={A}")
    if A > budget.enumeration_max_a:
        return CheckRow("banned", A, None, d, "skipped", reason=f"A > {budget.enumeration_max_a}")
    value = bounds.banned_probability(A, d)
    oracle = float(enumerate_banned_probability(A, d, max_alternatives=budget.enumeration_max_a))
    err = abs(value - oracle)
    return CheckRow("banned", A, None, d, "pass" if err <= budget.tolerance else "fail", value, oracle, -err)


def check_one_dim(A: int, budget: Budget) -> CheckRow:
    """ceil(rhat(A, 1)) against the number of orders realisable on a line."""
    if A < 3 or A > budget.one_dim_max_a:
        return CheckRow("one_dim", A, None, 1, "skipped", reason=f"needs 3 <= A <= {budget.one_dim_max_a}")
    rng = np.random.default_rng(_point_seed(budget.seed, A, 0, 1))
    locations = rng.uniform(0.0, 1.0, size=A)
    rhat = bounds.representable_upper_bound(A, 1).count
    oracle = one_dim_distinct_orders(locations)
    slack = rhat - oracle
    return CheckRow("one_dim", A, None, 1, "pass" if slack >= 0 else "fail", float(rhat), float(oracle), float(slack))


def check_info_loss(params: bounds.BoundParams) -> CheckRow:
    """Consistency of the information-loss bound.

    Terms lie in [0, 1], the sum lies in [0, A(A-1)/2], and at every ``k`` where
    the true ball is at least the power-law count, the true-ball term is no larger.
    """
    A, d, K = params.A, params.d, params.K
    if not d < A - 1:
        return CheckRow("info_loss", A, None, d, "skipped", reason=f"needs d < A-1, got d={d}, A={A}")
    res = bounds.info_loss_lower_bound(params)
    power_law = bounds.info_loss_lower_bound(bounds.BoundParams(A, d, K=K, ball_mode="paper"))
    exact = bounds.info_loss_lower_bound(bounds.BoundParams(A, d, K=K, ball_mode="exact"))
    margins = [min(t, 1.0 - t) for t in res.terms]
    margins.append(min(res.expectation_lb, params.max_swaps - res.expectation_lb))
    for k in range(K + 1):
        if bounds.ball_size(k, A, "exact") >= bounds.ball_size(k, A, "paper"):
            margins.append(power_law.terms[k] - exact.terms[k])
    slack = min(margins)
    status = "pass" if slack >= -1e-12 else "fail"
    return CheckRow("info_loss", A, None, d, status, res.expectation_lb, None, slack)


def plan_checks(grid: Iterable[bounds.BoundParams], budget: Budget) -> list[tuple]:
    """Ordered list of ``(check_function, args, (A, I, d))`` covering ``grid``.

    Pathology checks run per ``(A, I, d)``; the per-``(A, d)`` and per-``A``
    checks run once, at their first appearance in grid order.
    """
    tasks = []
    seen_ad: set[tuple[int, int]] = set()
    seen_a: set[int] = set()
    for params in grid:
        A, d = params.A, params.d
        if params.I is not None:
            tasks.append((check_pathology, (params, budget), (A, params.I, d)))
        if (A, d) not in seen_ad:
            seen_ad.add((A, d))
            tasks.append((check_banned, (A, d, budget), (A, None, d)))
            tasks.append((check_info_loss, (params,), (A, None, d)))
        if d == 1 and A not in seen_a:
            seen_a.add(A)
            tasks.append((check_one_dim, (A, budget), (A, None, 1)))
    return tasks


def _run_task(task) -> CheckRow:
    fn, args, (A, I, d) = task
    try:
        return fn(*args)
    except (CapacityError, InvalidArgumentError) as exc:
        return CheckRow(fn.__name__.removeprefix("check_"), A, I, d, "skipped", reason=str(exc))


def verify_all(
    grid: Iterable[bounds.BoundParams], budget: Budget | None = None, jobs: int = 1
) -> VerifyReport:
    """Run every applicable bound-vs-oracle check for each grid point.

    Failures are collected in the report, never raised. Rows come back in
    planning order whatever ``jobs`` is.
    """
    budget = budget or Budget()
    tasks = plan_checks(grid, budget)
    if jobs > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_run_task, tasks))
    else:
        rows = [_run_task(t) for t in tasks]
    return VerifyReport(rows)
