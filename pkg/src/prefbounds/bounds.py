"""Bounds on how much a d-dimensional Euclidean model can express.

Three quantities are evaluated here:

* a lower bound on the probability that a uniformly random profile contains
  a circulant pathology over ``d + 2`` alternatives (so is not d-Euclidean);
* the fraction of all ``A!`` preferences that must be banned to rule out
  those pathologies, and the resulting upper bound ``rhat`` on how many
  preferences can be represented at once;
* a lower bound on the expected number of adjacent swaps between a random
  preference and its nearest representable one.

Factorials, binomials and Stirling numbers are carried as natural logs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from scipy.special import gammaln, logsumexp

from .errors import InvalidArgumentError
from .permutohedron import ball_size_power_bound, exact_ball_size

BALL_MODES = ("paper", "exact")
# products shorter than this are summed term by term, longer ones go through mpmath
_DIRECT_PRODUCT_MAX = 5000


@dataclass(frozen=True)
class LogProb:
    """A probability held as its natural log."""

    log_value: float
    is_zero: bool = False

    @classmethod
    def from_log(cls, log_value: float) -> LogProb:
        if log_value > 1e-12:
            raise InvalidArgumentError(f"log probability {log_value} > 0")
        if log_value == -math.inf:
            return cls(-math.inf, True)
        return cls(min(log_value, 0.0))

    @classmethod
    def from_prob(cls, p: float) -> LogProb:
        if not -1e-12 <= p <= 1 + 1e-12:
            raise InvalidArgumentError(f"probability {p} outside [0, 1]")
        if p <= 0:
            return cls(-math.inf, True)
        return cls(math.log(min(p, 1.0)))

    @property
    def value(self) -> float:
        return 0.0 if self.is_zero else math.exp(self.log_value)

    def complement(self) -> float:
        """``1 - p`` without cancellation when ``p`` is close to 1."""
        return 1.0 if self.is_zero else -math.expm1(self.log_value)


@dataclass(frozen=True)
class BoundParams:
    """Parameters for bound evaluation.

    ``K`` defaults to ``A(A-1)/2``. ``assume_u_ge_r`` records the standing
    assumption that the profile already holds at least ``r`` unique
    preferences; the information-loss bound is only valid under it.
    """

    A: int
    d: int
    I: int | None = None
    K: int | None = None
    ball_mode: str = "paper"
    assume_u_ge_r: bool = True

    def __post_init__(self):
        if self.A < 1:
            raise InvalidArgumentError(f"need A >= 1, got A={self.A}")
        if self.d < 1:
            raise InvalidArgumentError(f"need d >= 1, got d={self.d}")
        if self.I is not None and self.I < 1:
            raise InvalidArgumentError(f"need I >= 1, got I={self.I}")
        if self.ball_mode not in BALL_MODES:
            raise InvalidArgumentError(f"ball_mode must be one of {BALL_MODES}, got {self.ball_mode!r}")
        if self.K is None:
            object.__setattr__(self, "K", self.max_swaps)

    @property
    def max_swaps(self) -> int:
        return self.A * (self.A - 1) // 2

    def check_pathology_bound(self) -> None:
        if self.I is None:
            raise InvalidArgumentError("pathology bound needs I")
        if not self.d < min(self.I, self.A - 1):
            raise InvalidArgumentError(
                f"violated d < min(I, A-1): d={self.d}, I={self.I}, A={self.A}"
            )

    def check_info_loss_bound(self) -> None:
        if not self.assume_u_ge_r:
            raise InvalidArgumentError("information-loss bound requires assume_u_ge_r (u >= r)")
        if not 0 <= self.K <= self.max_swaps:
            raise InvalidArgumentError(
                f"violated 0 <= K <= A(A-1)/2: K={self.K}, A(A-1)/2={self.max_swaps}"
            )


@lru_cache(maxsize=256)
def _stirling2_log_column(n_max: int, m: int) -> np.ndarray:
    # row[j] = log S(n, j) for j = 0..m, advanced one n at a time
    row = np.full(m + 1, -np.inf)
    row[0] = 0.0
    out = np.empty(n_max + 1)
    out[0] = row[m]
    log_j = np.log(np.arange(1, m + 1))
    for n in range(1, n_max + 1):
        new = np.full(m + 1, -np.inf)
        new[1:] = np.logaddexp(log_j + row[1:], row[:-1])
        row = new
        out[n] = row[m]
    return out


def stirling2_log(n: int, m: int) -> float:
    """Natural log of the Stirling number of the second kind ``S(n, m)``; ``-inf`` when it is 0."""
    if n < 0 or m < 0:
        raise InvalidArgumentError("n and m must be non-negative")
    if m > n:
        return -math.inf
    return float(_stirling2_log_column(n, m)[n])


def _log_comb(n: int, k) -> np.ndarray:
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def pathology_log_terms(params: BoundParams) -> np.ndarray:
    """Log of each summand ``B_k``, ``k = d+2 .. I``.

    ``B_k`` is the probability that exactly ``k`` individuals carry the
    rotations of one fixed circular order of ``d+2`` fixed alternatives (all of
    them covered) and nobody else carries any of those rotations.
    """
    params.check_pathology_bound()
    m, I = params.d + 2, params.I
    if I < m:
        return np.empty(0)
    ks = np.arange(m, I + 1)
    log_mfact = math.lgamma(m + 1)
    log_miss = math.log1p(-m / math.factorial(m))
    log_s = _stirling2_log_column(I, m)[m:]
    return _log_comb(I, ks) + log_s + log_mfact - ks * log_mfact + (I - ks) * log_miss


def pathology_probability_lower_bound(params: BoundParams) -> float:
    """Lower bound on the probability that a random profile is not d-Euclidean.

    ``1 - (1 - sum_k B_k) ** floor(A / (d+2))``, one independent chance per
    disjoint block of ``d+2`` alternatives.
    """
    log_terms = pathology_log_terms(params)
    if log_terms.size == 0:
        return 0.0
    s = float(np.exp(logsumexp(log_terms)))
    blocks = params.A // (params.d + 2)
    if s <= 0.5:
        log_miss = math.log1p(-s)
    else:
        miss = _pathology_miss(params.d + 2, params.I)
        if miss <= 0.0:
            return 1.0
        log_miss = math.log(miss)
    return min(1.0, max(0.0, -math.expm1(blocks * log_miss)))


def _pathology_miss(m: int, I: int) -> float:
    # 1 - sum_k B_k is the chance some of the m rotations goes uncovered:
    # sum_{j>=1} (-1)^(j+1) C(m, j) (1 - j/m!)^I. Cancellation is mild once
    # the sum exceeds one half.
    mf = math.factorial(m)
    terms = [(-1) ** (j + 1) * math.comb(m, j) * math.exp(I * math.log1p(-j / mf)) for j in range(1, m + 1)]
    return math.fsum(terms)


def _survival_ratios(A: int, d: int) -> list[tuple[int, int]]:
    # P(alternative n-1 is not in its window | earlier ones were not), as
    # prod_{k=d+n+1}^{A} (k-n) / (k-n+1), for n = 1 .. A-d-1
    ratios = []
    for n in range(1, A - d):
        num = den = 1
        for k in range(d + n + 1, A + 1):
            num *= k - n
            den *= k - n + 1
        ratios.append((num, den))
    return ratios


def banned_log_complement(A: int, d: int) -> float:
    """``log(1 - P(banned))``, summed from the per-step ratios."""
    if d < 1:
        raise InvalidArgumentError(f"need d >= 1, got d={d}")
    total = 0.0
    for n in range(1, A - d):
        k = np.arange(d + n + 1, A + 1, dtype=float)
        total += float(np.sum(np.log(k - n) - np.log(k - n + 1)))
    return total


def banned_probability(A: int, d: int) -> float:
    """Fraction of the ``A!`` preferences banned to exclude every size ``d+2`` pathology.

    Applies the law of total probability alternative by alternative: either
    alternative ``n-1`` lands in the top ``A-d-n`` positions, or it does not
    and the next alternative is tried. Zero when ``d >= A-1``.
    """
    if d < 1:
        raise InvalidArgumentError(f"need d >= 1, got d={d}")
    if d >= A - 1:
        return 0.0
    return min(1.0, max(0.0, -math.expm1(banned_log_complement(A, d))))


def banned_probability_exact(A: int, d: int) -> Fraction:
    """Same quantity as :func:`banned_probability`, as an exact rational."""
    if d < 1:
        raise InvalidArgumentError(f"need d >= 1, got d={d}")
    keep = Fraction(1)
    for num, den in _survival_ratios(A, d):
        keep *= Fraction(num, den)
    return 1 - keep


@dataclass(frozen=True)
class RepresentableBound:
    """Upper bound ``rhat`` on how many preferences a d-dimensional model holds at once."""

    A: int
    d: int
    p_banned: float
    log_fraction: float
    count: int

    @property
    def fraction(self) -> float:
        """``rhat / A!``."""
        return math.exp(self.log_fraction)

    @property
    def log_value(self) -> float:
        return self.log_fraction + math.lgamma(self.A + 1)

    @property
    def value(self) -> float:
        """``rhat`` as a float; exact whenever the integer count fits."""
        try:
            return float(self.count)
        except OverflowError:
            return math.inf


def representable_upper_bound(A: int, d: int) -> RepresentableBound:
    """``rhat = (1 - P(banned)) * A!`` in log space, plus its ceiling as an exact integer."""
    if A < 1:
        raise InvalidArgumentError(f"need A >= 1, got A={A}")
    p = banned_probability(A, d)
    log_keep = banned_log_complement(A, d)
    exact = (1 - banned_probability_exact(A, d)) * math.factorial(A)
    return RepresentableBound(A, d, p, log_keep, math.ceil(exact))


@lru_cache(maxsize=4096)
def _rhat_count(A: int, d: int) -> int:
    return representable_upper_bound(A, d).count


class FallingRatio:
    """``log((x - n)_r / (x)_r)`` for fixed integers ``x, r`` and varying ``n``.

    Uses ``(x-n)_r / (x)_r = (x-r)_n / (x)_n`` and multiplies over the shorter
    of ``n`` and ``r``; long products use high-precision log-gamma with the
    ``n``-independent terms computed once.
    """

    def __init__(self, x: int, r: int):
        if not 0 <= r <= x:
            raise InvalidArgumentError(f"need 0 <= r <= x; got x={x}, r={r}")
        self.x, self.r = x, r
        self._dps = len(str(x)) + 30
        self._const = None

    def _mp_const(self):
        if self._const is None:
            with mpmath.workdps(self._dps):
                self._const = mpmath.loggamma(self.x - self.r + 1) - mpmath.loggamma(self.x + 1)
        return self._const

    def log(self, n: int) -> float:
        x, r = self.x, self.r
        if n < 0 or r > x - n:
            raise InvalidArgumentError(f"need 0 <= n <= x - r; got x={x}, n={n}, r={r}")
        short, other = (n, r) if n <= r else (r, n)
        if short == 0:
            return 0.0
        # -log(1 - q) <= q / (1 - q); below this the ratio rounds to 1.0 anyway
        q = other / (x - short + 1)
        if q < 0.5 and short * q / (1 - q) < 1e-18:
            return -short * q
        if short <= _DIRECT_PRODUCT_MAX:
            # numerators formed exactly; huge x would swamp x - j - other in floats
            total = 0.0
            for j in range(short):
                q = other / (x - j)
                total += math.log1p(-q) if q < 0.5 else math.log((x - j - other) / (x - j))
            return total
        with mpmath.workdps(self._dps):
            val = mpmath.loggamma(x - n + 1) - mpmath.loggamma(x - n - r + 1) + self._mp_const()
            return float(val)


def log_falling_ratio(x: int, n: int, r: int) -> float:
    """``log((x - n)_r / (x)_r)`` for integers with ``0 <= n`` and ``r <= x - n``."""
    if n < 0 or r < 0 or r > x - n:
        raise InvalidArgumentError(f"need 0 <= n, 0 <= r <= x - n; got x={x}, n={n}, r={r}")
    return FallingRatio(x, r).log(n)


def ball_size(k: int, A: int, mode: str) -> int:
    """Number of vertices counted as reachable within ``k`` swaps under ``mode``."""
    if mode == "paper":
        return ball_size_power_bound(k, A)
    if mode == "exact":
        return exact_ball_size(k, A)
    raise InvalidArgumentError(f"ball_mode must be one of {BALL_MODES}, got {mode!r}")


@lru_cache(maxsize=1024)
def _falling_ratio(A: int, r: int) -> FallingRatio:
    return FallingRatio(math.factorial(A), r)


def _miss_probability(k: int, A: int, r: int, mode: str) -> float:
    # probability that none of r uniformly placed representable vertices is reachable
    total = math.factorial(A)
    n = ball_size(k, A, mode)
    if not r < total - n:
        return 0.0
    return math.exp(_falling_ratio(A, r).log(n))


def info_loss_cdf_bound(k: int, params: BoundParams) -> float:
    """Upper bound ``F(k)`` on ``P(d(pi, pi_hat) <= k)``.

    ``rhat`` representable vertices are scattered uniformly without
    replacement; ``F(k)`` is the chance that at least one lands among the
    vertices reachable within ``k`` swaps.
    """
    if k < 0:
        raise InvalidArgumentError(f"need k >= 0, got k={k}")
    A, d = params.A, params.d
    if d >= A - 1:
        return 1.0
    r = _rhat_count(A, d)
    return 1.0 - _miss_probability(k, A, r, params.ball_mode)


@dataclass(frozen=True)
class InfoLossBound:
    A: int
    d: int
    K: int
    mode: str
    expectation_lb: float
    scaled_lb: float
    rhat_used: int
    terms: tuple[float, ...] = field(repr=False, default=())


def info_loss_lower_bound(params: BoundParams) -> InfoLossBound:
    """Lower bound on the expected adjacent-swap distance to the nearest representable preference.

    Sums ``1 - F(k)`` over ``k = 0..K``. Returns a zero bound when
    ``d >= A-1`` since then every preference is representable.
    """
    params.check_info_loss_bound()
    A, d, K, mode = params.A, params.d, params.K, params.ball_mode
    total = math.factorial(A)
    if d >= A - 1:
        return InfoLossBound(A, d, K, mode, 0.0, 0.0, total, tuple([0.0] * (K + 1)))
    r = _rhat_count(A, d)
    terms = [0.0] * (K + 1)
    for k in range(K + 1):
        t = _miss_probability(k, A, r, mode)
        if t == 0.0:
            # reachable counts only grow with k, so later terms are no larger
            break
        terms[k] = t
    expectation = math.fsum(terms)
    max_swaps = params.max_swaps
    scaled = expectation / max_swaps if max_swaps else 0.0
    return InfoLossBound(A, d, K, mode, expectation, scaled, r, tuple(terms))


def sufficiency_threshold(A: int, I: int) -> int:
    """Conservative dimension ``min(I-1, A-1)`` at or above which every profile is d-Euclidean.

    The exact threshold is either ``min(I-1, A-1)`` or ``min(I, A-1)`` depending on
    ``A`` and ``I``; the smaller value is returned.
    """
    if A < 1 or I < 1:
        raise InvalidArgumentError(f"need A, I >= 1, got A={A}, I={I}")
    return min(I - 1, A - 1)
