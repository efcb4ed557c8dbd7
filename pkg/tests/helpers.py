"""Independent brute-force references used across the tests."""

import itertools
from collections import deque


def bfs_distances(A: int, source: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Shortest adjacent-swap path lengths from ``source`` to every ranking."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        cur = queue.popleft()
        for i in range(A - 1):
            nxt = cur[:i] + (cur[i + 1], cur[i]) + cur[i + 2 :]
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                queue.append(nxt)
    return dist


def discordant_pairs(p, q) -> int:
    """Quadratic count of pairs of alternatives ordered differently by ``p`` and ``q``."""
    pp = {a: i for i, a in enumerate(p)}
    pq = {a: i for i, a in enumerate(q)}
    return sum(
        (pp[a] < pp[b]) != (pq[a] < pq[b]) for a, b in itertools.combinations(range(len(p)), 2)
    )


def naive_contains_circulant(rankings, k) -> bool:
    """Enumerate every (subset, circular order, individual assignment) triple."""
    A = len(rankings[0])
    restrictions = [
        {s: tuple(a for a in r if a in s) for s in map(frozenset, itertools.combinations(range(A), k))}
        for r in rankings
    ]
    for subset in itertools.combinations(range(A), k):
        key = frozenset(subset)
        first, rest = subset[0], subset[1:]
        for perm in itertools.permutations(rest):
            cyc = (first,) + perm
            rotations = [cyc[i:] + cyc[:i] for i in range(k)]
            for assignment in itertools.permutations(range(len(rankings)), k):
                if all(restrictions[ind][key] == rot for ind, rot in zip(assignment, rotations)):
                    return True
    return False
