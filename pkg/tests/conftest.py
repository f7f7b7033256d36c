import random

import pytest

from isocluster.cluster import ExtendedExchangeMatrix
from isocluster.intlat import IntMatrix, snf


def full_column_rank_matrices(count=50, max_dim=3, max_entry=3, seed=20250809):
    """Deterministic corpus of distinct full-column-rank integer matrices."""
    rng = random.Random(seed)
    found = []
    seen = set()
    while len(found) < count:
        m = rng.randint(1, max_dim)
        n = rng.randint(1, m)
        entries = tuple(
            tuple(rng.randint(-max_entry, max_entry) for _ in range(n)) for _ in range(m)
        )
        if entries in seen:
            continue
        seen.add(entries)
        matrix = IntMatrix(entries)
        if sum(1 for f in snf(matrix).factors if f) == n:
            found.append(matrix)
    return found


def random_seed_matrices(count=200, seed=20250810, max_n=4, max_m=3, max_entry=3):
    """Deterministic corpus of extended exchange matrices."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        m = rng.randint(0, max_m)
        rows = [[0] * n for _ in range(n + m)]
        for i in range(n):
            for j in range(i + 1, n):
                v = rng.randint(-max_entry, max_entry)
                rows[i][j] = v
                rows[j][i] = -v
        for i in range(n, n + m):
            for j in range(n):
                rows[i][j] = rng.randint(-max_entry, max_entry)
        out.append(ExtendedExchangeMatrix(n, m, rows))
    return out


@pytest.fixture(scope="session")
def corpus():
    return full_column_rank_matrices()


@pytest.fixture(scope="session")
def seed_corpus():
    return random_seed_matrices()
