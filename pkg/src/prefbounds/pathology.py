"""Circulant pathologies: construction, detection and the banned-preference event.

A circulant pathology of size ``k`` over alternatives ``c_0, ..., c_{k-1}``
is present in a profile when each cyclic rotation of that order appears as
some individual's restriction to those ``k`` alternatives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapacityError, InvalidArgumentError
from .perm import Profile, SubPreference, _as_preference

DETECTOR_MAX_A = 12
DETECTOR_MAX_I = 12
BATCH_MAX_K = 7


@dataclass(frozen=True)
class CircularPermutation:
    """An ordering of ``k >= 3`` alternatives on a circle, stored starting at its minimum."""

    alternatives: tuple[int, ...]

    def __post_init__(self):
        seq = tuple(int(a) for a in self.alternatives)
        if len(seq) < 3:
            raise InvalidArgumentError("a circular permutation needs k >= 3 alternatives")
        if len(set(seq)) != len(seq):
            raise InvalidArgumentError(f"circular permutation {seq} repeats an alternative")
        i = seq.index(min(seq))
        object.__setattr__(self, "alternatives", seq[i:] + seq[:i])

    def __len__(self):
        return len(self.alternatives)


def necessary_subpreferences(c: CircularPermutation) -> list[SubPreference]:
    """The ``k`` rotations of ``c`` read as linear orders, starting from the canonical one."""
    seq = c.alternatives
    return [SubPreference(seq[i:] + seq[:i]) for i in range(len(seq))]


def banned_subpreference(c: CircularPermutation) -> SubPreference:
    """The rotation that puts the minimum-index alternative on top."""
    return SubPreference(c.alternatives)


@dataclass(frozen=True)
class CirculantWitness:
    alternatives: tuple[int, ...]
    circular: CircularPermutation
    # (rotation, index of an individual whose restriction equals it)
    assignment: tuple[tuple[SubPreference, int], ...]


@dataclass(frozen=True)
class DetectionResult:
    found: bool
    witness: CirculantWitness | None = None

    def __bool__(self):
        return self.found


def _check_k(k: int, A: int, I: int) -> None:
    if not 3 <= k <= min(I, A):
        raise InvalidArgumentError(f"need 3 <= k <= min(I, A) = {min(I, A)}, got k={k}")


def contains_circulant(
    profile: Profile,
    k: int,
    max_alternatives: int = DETECTOR_MAX_A,
    max_individuals: int = DETECTOR_MAX_I,
) -> DetectionResult:
    """Search ``profile`` for a circulant pathology over exactly ``k`` alternatives."""
    A, I = profile.num_alternatives, profile.num_individuals
    _check_k(k, A, I)
    if A > max_alternatives or I > max_individuals:
        raise CapacityError(
            f"detector capped at A <= {max_alternatives}, I <= {max_individuals}; got A={A}, I={I}"
        )
    positions = [p.positions for p in profile.preferences]
    for subset in itertools.combinations(range(A), k):
        first_seen: dict[tuple[int, ...], int] = {}
        for i, pos in enumerate(positions):
            r = tuple(sorted(subset, key=pos.__getitem__))
            first_seen.setdefault(r, i)
        if len(first_seen) < k:
            continue
        classes: dict[tuple[int, ...], set[tuple[int, ...]]] = {}
        for r in first_seen:
            canon = CircularPermutation(r).alternatives
            seen = classes.setdefault(canon, set())
            seen.add(r)
            if len(seen) == k:
                circ = CircularPermutation(canon)
                assignment = tuple(
                    (s, first_seen[s.ordered_subset]) for s in necessary_subpreferences(circ)
                )
                return DetectionResult(True, CirculantWitness(subset, circ, assignment))
    return DetectionResult(False)


@lru_cache(maxsize=None)
def _batch_tables(k: int):
    # a local order is identified by which of the C(k, 2) pairs (i < j) it ranks i above j
    pairs = list(itertools.combinations(range(k), 2))
    perms = list(itertools.permutations(range(k)))
    lookup = np.full(1 << len(pairs), -1, dtype=np.int64)
    for idx, order in enumerate(perms):
        rank = {a: r for r, a in enumerate(order)}
        code = sum(1 << b for b, (i, j) in enumerate(pairs) if rank[i] < rank[j])
        lookup[code] = idx
    index = {order: i for i, order in enumerate(perms)}
    classes = []
    for rest in itertools.permutations(range(1, k)):
        cyc = (0,) + rest
        classes.append([index[cyc[i:] + cyc[:i]] for i in range(k)])
    return pairs, lookup, np.array(classes, dtype=np.int64), len(perms)


def circulant_mask(positions: np.ndarray, k: int, chunk: int = 20_000) -> np.ndarray:
    """Vectorised detector over a batch of profiles.

    ``positions`` has shape ``(N, I, A)``; entry ``[n, i, a]`` is the rank of
    alternative ``a`` for individual ``i`` in profile ``n``. Returns a boolean
    array of length ``N``.
    """
    positions = np.asarray(positions)
    N, I, A = positions.shape
    _check_k(k, A, I)
    if k > BATCH_MAX_K:
        raise CapacityError(f"batch detector supports k <= {BATCH_MAX_K}")
    pairs, lookup, classes, nperm = _batch_tables(k)
    out = np.zeros(N, dtype=bool)
    for start in range(0, N, chunk):
        block = positions[start : start + chunk]
        n = block.shape[0]
        above = {
            (a, b): (block[:, :, a] < block[:, :, b]).astype(np.int64)
            for a, b in itertools.combinations(range(A), 2)
        }
        rows = np.arange(n)[:, None]
        hit = np.zeros(n, dtype=bool)
        for subset in itertools.combinations(range(A), k):
            code = np.zeros((n, I), dtype=np.int64)
            for bit, (i, j) in enumerate(pairs):
                code |= above[subset[i], subset[j]] << bit
            present = np.zeros((n, nperm), dtype=bool)
            present[rows, lookup[code]] = True
            hit |= present[:, classes].all(axis=2).any(axis=1)
        out[start : start + n] = hit
    return out


def is_banned(p, d: int) -> bool:
    """Whether ``p`` puts some low-index alternative high enough to be banned.

    True iff for some ``n`` in ``1..A-d-1`` alternative ``n-1`` sits within the
    first ``A-d-n`` positions. Returns False when ``d >= A-1`` (no such ``n``).
    """
    p = _as_preference(p)
    if d < 1:
        raise InvalidArgumentError("d must be >= 1")
    A = p.num_alternatives
    pos = p.positions
    return any(pos[n - 1] < A - d - n for n in range(1, A - d))

