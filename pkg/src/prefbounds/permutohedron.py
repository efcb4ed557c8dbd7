"""Adjacent-transposition graph on permutations and its ball sizes.

Exact ball sizes come from two independent routes: breadth-first search over
the graph (small ``A``) and the Mahonian numbers, i.e. the distribution of
inversion counts (any ``A``). The graph is vertex-transitive, so the ball
around the identity has the same size as every other ball.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import logsumexp

from .errors import CapacityError, InvalidArgumentError
from .perm import Preference, _as_preference

BFS_MAX_A = 7
# A! no longer fits a double above this, so the table switches to log space
LOG_SPACE_THRESHOLD = 170


def adjacent_neighbors(p) -> list[Preference]:
    """The ``A - 1`` preferences one adjacent swap away from ``p``."""
    p = _as_preference(p)
    r = list(p.ranking)
    out = []
    for i in range(len(r) - 1):
        q = r.copy()
        q[i], q[i + 1] = q[i + 1], q[i]
        out.append(Preference(tuple(q)))
    return out


def ball_sizes_bfs(num_alternatives: int, max_alternatives: int = BFS_MAX_A) -> list[int]:
    """Cumulative ball sizes around the identity, by BFS over all ``A!`` vertices.

    Entry ``k`` counts permutations within ``k`` adjacent swaps.
    """
    A = num_alternatives
    if A < 1:
        raise InvalidArgumentError("num_alternatives must be >= 1")
    if A > max_alternatives:
        raise CapacityError(f"BFS over {A}! vertices exceeds the cap A <= {max_alternatives}")
    start = tuple(range(A))
    dist = {start: 0}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for i in range(A - 1):
            nxt = list(cur)
            nxt[i], nxt[i + 1] = nxt[i + 1], nxt[i]
            nxt = tuple(nxt)
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                queue.append(nxt)
    layers = [0] * (max(dist.values()) + 1)
    for v in dist.values():
        layers[v] += 1
    return list(np.cumsum(layers).tolist())


@dataclass(frozen=True)
class MahonianTable:
    """Number of permutations of ``A`` elements at each Kendall distance from a reference.

    Exactly one of ``counts`` (exact integers) and ``log_counts`` (natural
    logs) is populated, depending on whether the table was built in log space.
    """

    A: int
    counts: tuple[int, ...] | None = None
    log_counts: np.ndarray | None = None

    @property
    def max_distance(self) -> int:
        return self.A * (self.A - 1) // 2

    @property
    def is_log(self) -> bool:
        return self.counts is None

    def cumulative(self) -> list[int]:
        """Exact ball sizes; entry ``k`` counts permutations within distance ``k``."""
        if self.counts is None:
            raise InvalidArgumentError(
                f"table for A={self.A} is in log space; use log_cumulative()"
            )
        out, total = [], 0
        for c in self.counts:
            total += c
            out.append(total)
        return out

    def log_cumulative(self) -> np.ndarray:
        if self.counts is not None:
            return np.array([math.log(c) for c in self.cumulative()])
        return np.logaddexp.accumulate(self.log_counts)

    def ball_size(self, k: int) -> int:
        """Exact number of permutations within ``k`` swaps (saturates at ``A!``)."""
        if k < 0:
            raise InvalidArgumentError("k must be >= 0")
        return self.cumulative()[min(k, self.max_distance)]


def _mahonian_exact(A: int) -> tuple[int, ...]:
    # T(n, j) = sum_{i=0}^{min(j, n-1)} T(n-1, j-i), via a sliding window sum
    row = [1]
    for n in range(2, A + 1):
        width = len(row) + n - 1
        new = [0] * width
        window = 0
        for j in range(width):
            if j < len(row):
                window += row[j]
            if j - n >= 0 and j - n < len(row):
                window -= row[j - n]
            new[j] = window
        row = new
    return tuple(row)


def _mahonian_log(A: int) -> np.ndarray:
    row = np.zeros(1)
    for n in range(2, A + 1):
        width = len(row) + n - 1
        # stack the n shifted copies of the previous row and log-sum-exp them
        shifted = np.full((n, width), -np.inf)
        for i in range(n):
            shifted[i, i : i + len(row)] = row
        row = logsumexp(shifted, axis=0)
    return row


def mahonian_counts(num_alternatives: int, log_threshold: int = LOG_SPACE_THRESHOLD) -> MahonianTable:
    """Distribution of inversion numbers over all permutations of ``A`` elements.

    Computed with exact integers when ``A <= log_threshold``, else in log space.
    """
    A = num_alternatives
    if A < 1:
        raise InvalidArgumentError("num_alternatives must be >= 1")
    if A <= log_threshold:
        return MahonianTable(A, counts=_mahonian_counts_cached(A))
    return MahonianTable(A, log_counts=_mahonian_log(A))


@lru_cache(maxsize=64)
def _mahonian_counts_cached(A: int) -> tuple[int, ...]:
    return _mahonian_exact(A)


@lru_cache(maxsize=64)
def _cumulative_cached(A: int) -> tuple[int, ...]:
    return tuple(MahonianTable(A, counts=_mahonian_counts_cached(A)).cumulative())


def exact_ball_size(k: int, num_alternatives: int) -> int:
    """True number of permutations within ``k`` adjacent swaps of a fixed one."""
    if k < 0:
        raise InvalidArgumentError("k must be >= 0")
    A = num_alternatives
    cum = _cumulative_cached(A)
    return cum[min(k, len(cum) - 1)]


def ball_size_power_bound(k: int, num_alternatives: int) -> int:
    """``min((A-1)**k, A!)`` computed without forming huge powers."""
    A = num_alternatives
    if A < 2:
        raise InvalidArgumentError("ball_size_power_bound needs A >= 2")
    if k < 0:
        raise InvalidArgumentError("k must be >= 0")
    cap = math.factorial(A)
    val = 1
    for _ in range(k):
        val *= A - 1
        if val >= cap:
            return cap
    return min(val, cap)
