"""Preferences, profiles and the adjacent-swap (Kendall tau) metric.

Alternatives are 0-indexed integers. A preference is stored as a ranking:
``ranking[0]`` is the most-preferred alternative.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError

SeedLike = int | np.random.SeedSequence | np.random.Generator | None


@dataclass(frozen=True)
class Preference:
    """A strict order over ``A`` alternatives."""

    ranking: tuple[int, ...]

    def __post_init__(self):
        ranking = tuple(int(a) for a in self.ranking)
        if len(ranking) < 1:
            raise InvalidArgumentError("a preference needs at least one alternative")
        if sorted(ranking) != list(range(len(ranking))):
            raise InvalidArgumentError(
                f"ranking {ranking} is not a permutation of 0..{len(ranking) - 1}"
            )
        object.__setattr__(self, "ranking", ranking)

    @property
    def num_alternatives(self) -> int:
        return len(self.ranking)

    @property
    def positions(self) -> tuple[int, ...]:
        """``positions[a]`` is the rank (0 = top) of alternative ``a``."""
        pos = [0] * len(self.ranking)
        for i, a in enumerate(self.ranking):
            pos[a] = i
        return tuple(pos)

    def prefers(self, a: int, b: int) -> bool:
        pos = self.positions
        return pos[a] < pos[b]

    def __len__(self):
        return len(self.ranking)

    def __iter__(self):
        return iter(self.ranking)


@dataclass(frozen=True)
class SubPreference:
    """An ordering of a subset of alternatives."""

    ordered_subset: tuple[int, ...]

    def __post_init__(self):
        seq = tuple(int(a) for a in self.ordered_subset)
        if len(set(seq)) != len(seq):
            raise InvalidArgumentError(f"sub-preference {seq} repeats an alternative")
        if any(a < 0 for a in seq):
            raise InvalidArgumentError(f"sub-preference {seq} has a negative index")
        object.__setattr__(self, "ordered_subset", seq)

    def __len__(self):
        return len(self.ordered_subset)

    def __iter__(self):
        return iter(self.ordered_subset)


@dataclass(frozen=True)
class Profile:
    """An ordered collection of ``I`` preferences over the same alternatives."""

    num_alternatives: int
    preferences: tuple[Preference, ...] = field(default=())

    def __post_init__(self):
        prefs = tuple(p if isinstance(p, Preference) else Preference(p) for p in self.preferences)
        if self.num_alternatives < 1:
            raise InvalidArgumentError("num_alternatives must be >= 1")
        if len(prefs) < 1:
            raise InvalidArgumentError("a profile needs at least one preference (I >= 1)")
        for p in prefs:
            if p.num_alternatives != self.num_alternatives:
                raise InvalidArgumentError(
                    f"preference over {p.num_alternatives} alternatives in a profile "
                    f"over {self.num_alternatives}"
                )
        object.__setattr__(self, "preferences", prefs)

    @classmethod
    def from_rankings(cls, rankings: Iterable[Sequence[int]]) -> Profile:
        prefs = tuple(Preference(tuple(r)) for r in rankings)
        if not prefs:
            raise InvalidArgumentError("a profile needs at least one preference (I >= 1)")
        return cls(prefs[0].num_alternatives, prefs)

    @property
    def num_individuals(self) -> int:
        return len(self.preferences)

    @property
    def unique_count(self) -> int:
        """Number of distinct rankings in the profile."""
        return len({p.ranking for p in self.preferences})

    def positions_array(self) -> np.ndarray:
        """Integer array of shape ``(I, A)`` with each individual's positions."""
        return np.array([p.positions for p in self.preferences], dtype=np.int64)

    def __len__(self):
        return len(self.preferences)

    def __iter__(self):
        return iter(self.preferences)


def _as_preference(p) -> Preference:
    return p if isinstance(p, Preference) else Preference(tuple(p))


def count_inversions(seq: Sequence[int]) -> int:
    """Number of pairs ``i < j`` with ``seq[i] > seq[j]`` (merge sort, O(n log n))."""

    def sort_count(xs):
        n = len(xs)
        if n <= 1:
            return list(xs), 0
        mid = n // 2
        left, a = sort_count(xs[:mid])
        right, b = sort_count(xs[mid:])
        merged = []
        inv = a + b
        i = j = 0
        while i < len(left) and j < len(right):
            if left[i] <= right[j]:
                merged.append(left[i])
                i += 1
            else:
                merged.append(right[j])
                inv += len(left) - i
                j += 1
        merged.extend(left[i:])
        merged.extend(right[j:])
        return merged, inv

    return sort_count(list(seq))[1]


def kendall_distance(p, q) -> int:
    """Minimum number of adjacent swaps turning ``p`` into ``q``.

    Equal to the number of pairs of alternatives the two orders disagree on.
    """
    p, q = _as_preference(p), _as_preference(q)
    if p.num_alternatives != q.num_alternatives:
        raise InvalidArgumentError(
            f"preferences over {p.num_alternatives} and {q.num_alternatives} alternatives"
        )
    pos_p = p.positions
    return count_inversions([pos_p[a] for a in q.ranking])


def restrict(p, subset: Iterable[int]) -> SubPreference:
    """Alternatives of ``subset`` in the order they appear in ``p``."""
    p = _as_preference(p)
    chosen = set(int(a) for a in subset)
    if not chosen:
        raise InvalidArgumentError("subset must be nonempty")
    bad = [a for a in chosen if not 0 <= a < p.num_alternatives]
    if bad:
        raise InvalidArgumentError(
            f"alternatives {sorted(bad)} out of range for A={p.num_alternatives}"
        )
    return SubPreference(tuple(a for a in p.ranking if a in chosen))


def make_rng(seed: SeedLike = None) -> np.random.Generator:
    """Return a generator; an existing ``Generator`` is passed through unchanged."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def spawn_rngs(seed: SeedLike, n: int) -> list[np.random.Generator]:
    """Independent child generators for ``n`` tasks, derived from one root seed."""
    if isinstance(seed, np.random.Generator):
        return list(seed.spawn(n))
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return [np.random.default_rng(child) for child in ss.spawn(n)]


def sample_preference(rng: SeedLike, num_alternatives: int) -> Preference:
    """Uniformly random preference (Fisher-Yates shuffle via ``Generator.permutation``)."""
    if num_alternatives < 1:
        raise InvalidArgumentError("num_alternatives must be >= 1")
    rng = make_rng(rng)
    return Preference(tuple(int(a) for a in rng.permutation(num_alternatives)))


def sample_profile(rng: SeedLike, num_alternatives: int, num_individuals: int) -> Profile:
    """``I`` independent uniform preferences."""
    if num_alternatives < 1:
        raise InvalidArgumentError("num_alternatives must be >= 1")
    if num_individuals < 1:
        raise InvalidArgumentError("num_individuals must be >= 1")
    rng = make_rng(rng)
    return Profile(
        num_alternatives,
        tuple(sample_preference(rng, num_alternatives) for _ in range(num_individuals)),
    )


def sample_positions(rng: SeedLike, size: tuple[int, ...], num_alternatives: int) -> np.ndarray:
    """Batch of uniform permutations, returned as position arrays of shape ``size + (A,)``.

    Row ``[..., a]`` holds the rank of alternative ``a``; a uniform ranking has
    uniform positions, so shuffling the identity along the last axis suffices.
    """
    rng = make_rng(rng)
    base = np.broadcast_to(np.arange(num_alternatives, dtype=np.int8), (*size, num_alternatives))
    return rng.permuted(base, axis=-1)
