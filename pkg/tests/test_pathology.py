import itertools
from fractions import Fraction

import numpy as np
import pytest

from prefbounds.errors import CapacityError, InvalidArgumentError
from prefbounds.pathology import (
    CircularPermutation,
    banned_subpreference,
    circulant_mask,
    contains_circulant,
    is_banned,
    necessary_subpreferences,
)
from prefbounds.perm import Profile, restrict, sample_positions, sample_profile

from helpers import naive_contains_circulant


def _positions(rankings):
    out = np.empty((len(rankings), len(rankings[0])), dtype=np.int64)
    for i, r in enumerate(rankings):
        for pos, a in enumerate(r):
            out[i, a] = pos
    return out


class TestCircularPermutation:
    def test_canonical_form(self):
        assert CircularPermutation((2, 0, 1)) == CircularPermutation((0, 1, 2))
        assert CircularPermutation((6, 13, 2)).alternatives == (2, 6, 13)
        with pytest.raises(InvalidArgumentError):
            CircularPermutation((0, 1))

    def test_necessary_subpreferences(self):
        got = [s.ordered_subset for s in necessary_subpreferences(CircularPermutation((0, 1, 2)))]
        assert got == [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
        assert len(set(got)) == 3

    def test_rotation_invariance(self):
        base = {s.ordered_subset for s in necessary_subpreferences(CircularPermutation((3, 1, 4, 0)))}
        for i in range(4):
            seq = (3, 1, 4, 0)[i:] + (3, 1, 4, 0)[:i]
            assert {s.ordered_subset for s in necessary_subpreferences(CircularPermutation(seq))} == base

    def test_banned_rotation_puts_minimum_first(self):
        # of a6 > a13 > a2, a13 > a2 > a6, a2 > a6 > a13 the last one is banned
        assert banned_subpreference(CircularPermutation((6, 13, 2))).ordered_subset == (2, 6, 13)


class TestContainsCirculant:
    def test_direct_instance(self):
        prof = Profile.from_rankings([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
        res = contains_circulant(prof, 3)
        assert res
        w = res.witness
        assert w.alternatives == (0, 1, 2)
        for sub, ind in w.assignment:
            assert restrict(prof.preferences[ind], w.alternatives) == sub

    def test_identical_preferences(self):
        prof = Profile.from_rankings([[3, 1, 0, 2, 4]] * 6)
        for k in (3, 4, 5):
            assert not contains_circulant(prof, k)

    def test_k_out_of_range(self):
        prof = Profile.from_rankings([[0, 1, 2]] * 2)
        with pytest.raises(InvalidArgumentError):
            contains_circulant(prof, 3)
        prof = Profile.from_rankings([[0, 1, 2]] * 4)
        with pytest.raises(InvalidArgumentError):
            contains_circulant(prof, 4)
        with pytest.raises(InvalidArgumentError):
            contains_circulant(prof, 2)

    def test_capacity_guard(self):
        prof = sample_profile(0, 13, 3)
        with pytest.raises(CapacityError):
            contains_circulant(prof, 3)

    def test_exhaustive_count_three_by_three(self):
        # 216 ordered profiles with A=3, I=3: 12 contain a size-3 pathology
        perms = list(itertools.permutations(range(3)))
        hits = sum(
            bool(contains_circulant(Profile.from_rankings(prof), 3))
            for prof in itertools.product(perms, repeat=3)
        )
        naive = sum(naive_contains_circulant(prof, 3) for prof in itertools.product(perms, repeat=3))
        assert hits == naive == 12
        assert Fraction(hits, 216) == Fraction(1, 18)

    @pytest.mark.parametrize("A, I", [(3, 4), (4, 3), (4, 4)])
    def test_agrees_with_naive_oracle(self, A, I):
        rng = np.random.default_rng(100 * A + I)
        for _ in range(300):
            prof = sample_profile(rng, A, I)
            rankings = [p.ranking for p in prof]
            assert bool(contains_circulant(prof, 3)) == naive_contains_circulant(rankings, 3)

    def test_monotone_in_individuals(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            prof = sample_profile(rng, 5, 4)
            extra = sample_profile(rng, 5, 3)
            bigger = Profile(5, prof.preferences + extra.preferences)
            if contains_circulant(prof, 3):
                assert contains_circulant(bigger, 3)


class TestBatchDetector:
    @pytest.mark.parametrize("A, I, k", [(3, 3, 3), (4, 4, 3), (5, 5, 4), (5, 6, 5), (6, 6, 3)])
    def test_matches_scalar_detector(self, A, I, k):
        positions = sample_positions(np.random.default_rng(A * 31 + I * 7 + k), (400, I), A)
        mask = circulant_mask(positions, k, chunk=97)
        for n in range(positions.shape[0]):
            rankings = [tuple(np.argsort(row)) for row in positions[n]]
            assert mask[n] == bool(contains_circulant(Profile.from_rankings(rankings), k))

    def test_handcrafted(self):
        prof = [[0, 1, 2, 3], [1, 2, 0, 3], [3, 1, 0, 2]]
        pos = _positions(prof)[None]
        assert not circulant_mask(pos, 3)[0]
        prof[2] = [2, 3, 0, 1]
        assert circulant_mask(_positions(prof)[None], 3)[0]


class TestIsBanned:
    def test_three_alternatives(self):
        perms = list(itertools.permutations(range(3)))
        banned = [p for p in perms if is_banned(p, 1)]
        assert len(banned) == 2
        assert all(p[0] == 0 for p in banned)

    def test_positional_example(self):
        assert is_banned([1, 2, 0, 3], 1)

    def test_no_room_when_d_large(self):
        for A in range(2, 7):
            for p in itertools.permutations(range(A)):
                assert not is_banned(p, A - 1)

    def test_non_banned_count(self):
        perms = list(itertools.permutations(range(4)))
        assert sum(not is_banned(p, 1) for p in perms) == 8

    def test_banned_preferences_block_every_pathology(self):
        # a profile of all non-banned orders never contains a size d+2 pathology
        for A, d in [(4, 1), (5, 1), (5, 2)]:
            allowed = [p for p in itertools.permutations(range(A)) if not is_banned(p, d)]
            prof = Profile.from_rankings(allowed[:12])
            assert not contains_circulant(prof, d + 2)
