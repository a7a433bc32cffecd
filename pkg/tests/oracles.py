"""Slow, independent reference computations used to check the library.

Nothing here calls into the code under test beyond reading a group's
Cayley table and subgroup bitsets.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from fractions import Fraction

import numpy as np


def brute_subgroups(g) -> set[frozenset[int]]:
    """Every subset containing the identity that is closed under the product."""
    others = [x for x in range(g.order) if x != g.identity]
    table = np.asarray(g.table)
    found = set()
    for bits in range(1 << len(others)):
        s = [g.identity] + [x for k, x in enumerate(others) if bits >> k & 1]
        member = np.zeros(g.order, dtype=bool)
        member[s] = True
        if member[table[np.ix_(s, s)]].all():
            found.add(frozenset(s))
    return found


def left_coset(g, x: int, h) -> frozenset[int]:
    return frozenset(int(g.table[x, y]) for y in h.elements())


def coset_outcomes(g, subgroups) -> list[tuple]:
    """(x G_1, ..., x G_n) as frozensets, one tuple per group element."""
    return [tuple(left_coset(g, x, h) for h in subgroups) for x in range(g.order)]


def entropy_bits(samples: list) -> float:
    """Shannon entropy of the empirical (uniform over the list) distribution."""
    counts = Counter(samples)
    total = len(samples)
    return -sum(c / total * math.log2(c / total) for c in counts.values())


def brute_entropy_vector(g, subgroups) -> list[float]:
    """H(X_a) in bits for every nonempty mask a, from explicit cosets."""
    rows = coset_outcomes(g, subgroups)
    n = len(subgroups)
    out = []
    for m in range(1, 1 << n):
        cols = [i for i in range(n) if m >> i & 1]
        out.append(entropy_bits([tuple(r[i] for i in cols) for r in rows]))
    return out


def brute_mutual_information(samples_x: list, samples_y: list) -> float:
    return entropy_bits(samples_x) + entropy_bits(samples_y) - entropy_bits(list(zip(samples_x, samples_y)))


def brute_common_part_entropy(samples_x: list, samples_y: list) -> float:
    """Gacs-Korner common information by union-find on the support graph."""
    parent: dict = {}

    def find(a):
        while parent.setdefault(a, a) != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x, y in zip(samples_x, samples_y):
        parent[find(("x", x))] = find(("y", y))
    return entropy_bits([find(("x", x)) for x in samples_x])


def product_set(g, a, b) -> set[int]:
    return {int(g.table[x, y]) for x in a.elements() for y in b.elements()}


def conjugates_preserve(g, h) -> bool:
    hs = set(h.elements())
    inv = {x: next(y for y in range(g.order) if g.table[x, y] == g.identity) for x in range(g.order)}
    return all({int(g.table[g.table[x, y], inv[x]]) for y in hs} == hs for x in range(g.order))


def exact_rank(rows: list[list[int]]) -> int:
    """Rank over the rationals by Fraction elimination."""
    work = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    cols = len(work[0]) if work else 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(work)) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for i in range(len(work)):
            if i != rank and work[i][c] != 0:
                f = work[i][c] / work[rank][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
        rank += 1
    return rank


def gf_rank(rows: list[list[int]], p: int) -> int:
    """Rank over F_p by plain Gaussian elimination."""
    work = [[v % p for v in r] for r in rows]
    rank = 0
    cols = len(work[0]) if work else 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(work)) if work[i][c]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = pow(work[rank][c], p - 2, p)
        work[rank] = [v * inv % p for v in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][c]:
                f = work[i][c]
                work[i] = [(a - f * b) % p for a, b in zip(work[i], work[rank])]
        rank += 1
    return rank


def span_set(vectors: list[tuple[int, ...]], p: int, m: int) -> set[tuple[int, ...]]:
    """All F_p-combinations of ``vectors``, enumerated directly."""
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(vectors)):
        out.add(tuple(sum(c * v[i] for c, v in zip(coeffs, vectors)) % p for i in range(m)))
    return out or {(0,) * m}
