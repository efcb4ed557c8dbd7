"""Acceptance criteria, one test each.

Every test prints a single pass/fail line (collected in the terminal summary)
and fails if the check fails or exceeds its runtime limit.
"""

import itertools
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from prefbounds.bounds import (
    BoundParams,
    banned_probability,
    info_loss_lower_bound,
    pathology_probability_lower_bound,
    representable_upper_bound,
)
from prefbounds.cli import main
from prefbounds.oracles import (
    enumerate_banned_probability,
    exact_pathology_probability,
    mc_pathology_probability,
    one_dim_distinct_orders,
)
from prefbounds.perm import kendall_distance
from prefbounds.permutohedron import ball_sizes_bfs, mahonian_counts

from helpers import bfs_distances

MC_TRIALS = 100_000
MC_SIGMAS = 4.0


def run_criterion(record, number, title, limit_s, check):
    start = time.perf_counter()
    ok, detail = check()
    elapsed = time.perf_counter() - start
    in_time = elapsed < limit_s
    record(number, title, ok and in_time, f"({detail}; {elapsed:.2f}s of {limit_s:g}s)")
    assert ok, detail
    assert in_time, f"took {elapsed:.2f}s, limit {limit_s}s"


def test_pathology_bound_exact_value(record_criterion):
    def check():
        bound = pathology_probability_lower_bound(BoundParams(3, 1, I=3))
        exact = exact_pathology_probability(3, 3, 3)
        ok = abs(bound - 1 / 36) <= 1e-12 and exact == Fraction(1, 18) and exact >= bound
        return ok, f"bound={bound!r} exhaustive={exact}"

    run_criterion(record_criterion, 1, "pathology bound at A=3, I=3, d=1", 1.0, check)


def test_pathology_bound_dominated_by_oracles(record_criterion):
    def check():
        worst = math.inf
        points = 0
        for A in range(3, 5):
            for I in range(2, 5):
                params = BoundParams(A, 1, I=I)
                if not 1 < min(I, A - 1):
                    continue
                exact = float(exact_pathology_probability(A, I, 3))
                worst = min(worst, exact - pathology_probability_lower_bound(params))
                points += 1
        for d in (1, 2):
            for A in range(d + 2, 7):
                for I in range(d + 1, 13):
                    params = BoundParams(A, d, I=I)
                    seed = 1_000 * A + 10 * I + d
                    est = mc_pathology_probability(A, I, d + 2, MC_TRIALS, seed=seed)
                    slack = est.estimate + MC_SIGMAS * est.std_error - pathology_probability_lower_bound(params)
                    worst = min(worst, slack)
                    points += 1
        return worst >= 0, f"{points} grid points, min slack {worst:.3g}"

    run_criterion(record_criterion, 2, "pathology bound dominance grid", 300.0, check)


def test_pathology_bound_grows_towards_one(record_criterion):
    def check():
        vals = [pathology_probability_lower_bound(BoundParams(3, 1, I=I)) for I in range(3, 201)]
        monotone = all(b >= a for a, b in zip(vals, vals[1:]))
        return monotone and vals[-1] > 0.99, f"non-decreasing={monotone} value at I=200 {vals[-1]:.6f}"

    run_criterion(record_criterion, 3, "pathology bound asymptote", 1.0, check)


def test_banned_probability_matches_enumeration(record_criterion):
    def check():
        worst = 0.0
        for A in range(3, 9):
            for d in range(1, A - 1):
                worst = max(worst, abs(banned_probability(A, d) - float(enumerate_banned_probability(A, d))))
        spots = (banned_probability(3, 1), banned_probability(4, 1))
        ok = worst <= 1e-9 and abs(spots[0] - 1 / 3) <= 1e-9 and abs(spots[1] - 2 / 3) <= 1e-9
        return ok, f"max error {worst:.2g}, P(3,1)={spots[0]:.9f} P(4,1)={spots[1]:.9f}"

    run_criterion(record_criterion, 4, "banned probability exactness", 30.0, check)


def test_representable_count_covers_one_dimension(record_criterion):
    def check():
        rng = np.random.default_rng(2024)
        pairs = []
        for A in range(3, 9):
            rhat = math.ceil(representable_upper_bound(A, 1).value)
            orders = one_dim_distinct_orders(rng.uniform(size=A))
            pairs.append((A, rhat, orders))
        ok = all(r >= o == math.comb(A, 2) + 1 for A, r, o in pairs) and pairs[0][1:] == (4, 4)
        return ok, " ".join(f"A={A}:{r}>={o}" for A, r, o in pairs)

    run_criterion(record_criterion, 5, "representable count vs one-dimensional orders", 1.0, check)


def test_info_loss_exact_value(record_criterion):
    def check():
        res = info_loss_lower_bound(BoundParams(3, 1, ball_mode="paper"))
        zeros = [
            info_loss_lower_bound(BoundParams(A, d)).expectation_lb
            for A in range(2, 9)
            for d in range(max(1, A - 1), A + 3)
        ]
        ok = (
            abs(res.expectation_lb - 1 / 3) <= 1e-12
            and abs(res.scaled_lb - 1 / 9) <= 1e-12
            and all(z == 0.0 for z in zeros)
        )
        return ok, f"expectation={res.expectation_lb!r} scaled={res.scaled_lb!r} zero cases={len(zeros)}"

    run_criterion(record_criterion, 6, "information-loss bound at A=3, d=1", 1.0, check)


def test_info_loss_reaches_seven_percent(record_criterion):
    def check():
        best = (0.0, None, None)
        for A in range(5, 51):
            for d in range(1, A - 1):
                scaled = info_loss_lower_bound(BoundParams(A, d, ball_mode="paper")).scaled_lb
                if scaled > best[0]:
                    best = (scaled, A, d)
        return best[0] >= 0.07, f"max scaled bound {best[0]:.4f} at A={best[1]}, d={best[2]}"

    run_criterion(record_criterion, 7, "information-loss headline sweep", 120.0, check)


def test_mahonian_matches_bfs(record_criterion):
    def check():
        agree = all(mahonian_counts(A).cumulative() == ball_sizes_bfs(A) for A in range(1, 8))
        table = mahonian_counts(4).counts
        return agree and table == (1, 3, 5, 6, 5, 3, 1), f"A<=7 agree={agree}, A=4 table {list(table)}"

    run_criterion(record_criterion, 8, "permutohedron ball sizes", 30.0, check)


def test_kendall_is_graph_metric(record_criterion):
    def check():
        rng = np.random.default_rng(7)
        triples = 10_000
        for _ in range(triples):
            A = int(rng.integers(1, 8))
            p, q, r = (tuple(int(x) for x in rng.permutation(A)) for _ in range(3))
            pq, qp = kendall_distance(p, q), kendall_distance(q, p)
            if (pq == 0) != (p == q) or pq != qp:
                return False, f"identity/symmetry broken at {p}, {q}"
            if kendall_distance(p, r) > pq + kendall_distance(q, r):
                return False, f"triangle inequality broken at {p}, {q}, {r}"
        pairs = 0
        for A in range(1, 6):
            perms = list(itertools.permutations(range(A)))
            for src in perms:
                dist = bfs_distances(A, src)
                for dst in perms:
                    if kendall_distance(src, dst) != dist[dst]:
                        return False, f"BFS mismatch at {src}, {dst}"
                    pairs += 1
        return True, f"{triples} random triples, {pairs} BFS pairs"

    run_criterion(record_criterion, 9, "Kendall distance metric properties", 60.0, check)


def test_runs_are_byte_identical(record_criterion, tmp_path):
    commands = [
        ["verify", "--seed", "3"],
        ["bound-c", "--A", "3:12", "--I", "3:60", "--d", "1:3"],
        ["rhat"],
        ["info-loss", "--A", "5:30", "--ball-mode", "exact"],
    ]

    def check():
        mismatched = []
        for i, cmd in enumerate(commands):
            outputs = []
            path = tmp_path / f"run{i}.csv"
            for _ in range(2):
                code = main(cmd + ["--out", str(path)])
                if code != 0:
                    return False, f"{cmd[0]} exited {code}"
                outputs.append(path.read_bytes())
            if outputs[0] != outputs[1]:
                mismatched.append(cmd[0])
        return not mismatched, f"{len(commands)} commands run twice, mismatched: {mismatched or 'none'}"

    run_criterion(record_criterion, 10, "deterministic CSV output", 60.0, check)
