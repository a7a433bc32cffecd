"""Bulk generation of group-induced entropy vectors.

Exhaustive sweeps over n-tuples of subgroups are vectorized: subgroups are
numbered, a pairwise meet table is built once, and the intersection
position for every subset mask is filled in by dynamic programming over a
whole block of tuples at a time.  Distinct vectors are collected with their
multiplicity and the first tuple that produced them, so the exact checks run
once per distinct vector.
"""

from __future__ import annotations

import itertools
import math
import os
from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .entropy import EntropyVector
from .group import (
    FiniteGroup,
    Subgroup,
    abelian,
    alternating,
    cyclic,
    dicyclic,
    dihedral,
    enumerate_subgroups,
    symmetric,
)
from .inequality import LinearFunctional, evaluate_exact, evaluate_float

DEFAULT_MAX_TUPLES = 50_000_000
JOBS_ENV = "GROUPENTROPY_JOBS"


class SweepCapExceeded(RuntimeError):
    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(f"sweep would visit {count} tuples, above the cap of {cap}")


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


@dataclass
class MeetTable:
    group: FiniteGroup
    subgroups: list[Subgroup]
    """Closed under intersection; the first ``base`` entries are the caller's list."""
    base: int
    meet: np.ndarray
    orders: np.ndarray

    @classmethod
    def build(cls, g: FiniteGroup, subgroups: Sequence[Subgroup] | None = None) -> MeetTable:
        subs = list(subgroups) if subgroups is not None else enumerate_subgroups(g)
        base = len(subs)
        pos = {h.members: i for i, h in enumerate(subs)}
        if g.whole.members not in pos:
            pos[g.whole.members] = len(subs)
            subs.append(g.whole)
        i = 0
        while i < len(subs):
            for j in range(i + 1):
                m = subs[i].members & subs[j].members
                if m not in pos:
                    pos[m] = len(subs)
                    subs.append(Subgroup(m))
            i += 1
        size = len(subs)
        meet = np.empty((size, size), dtype=np.int32)
        for i in range(size):
            for j in range(i + 1):
                meet[i, j] = meet[j, i] = pos[subs[i].members & subs[j].members]
        orders = np.array([h.order for h in subs], dtype=np.int64)
        return cls(g, subs, base, meet, orders)

    @property
    def whole_position(self) -> int:
        return next(i for i, h in enumerate(self.subgroups) if h.members == self.group.whole.members)

    def positions(self, tuples: np.ndarray) -> np.ndarray:
        """Table position of the intersection for every mask; column 0 is the whole group."""
        rows, n = tuples.shape
        pos = np.empty((rows, 1 << n), dtype=np.int32)
        pos[:, 0] = self.whole_position
        for m in range(1, 1 << n):
            low = m & -m
            pos[:, m] = self.meet[pos[:, m ^ low], tuples[:, low.bit_length() - 1]]
        return pos

    def indices(self, tuples: np.ndarray) -> np.ndarray:
        """Coset indices k_a for a block of tuples: shape (rows, 2^n - 1)."""
        return self.group.order // self.orders[self.positions(tuples)[:, 1:]]

    def codes(self, tuples: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Compact per-coordinate codes and the index each code stands for."""
        values, inverse = np.unique(self.group.order // self.orders, return_inverse=True)
        dtype = np.uint8 if len(values) <= 256 else np.int32
        return inverse.astype(dtype)[self.positions(tuples)[:, 1:]], values


@dataclass
class DistinctVector:
    vector: EntropyVector
    count: int
    witness: tuple[int, ...]
    """Subgroup positions of the first tuple producing this vector."""


def _collect(table: MeetTable, tuples: np.ndarray, out: dict) -> None:
    if len(tuples) == 0:
        return
    codes, values = table.codes(tuples)
    codes = np.ascontiguousarray(codes)
    view = codes.view(np.dtype((np.void, codes.dtype.itemsize * codes.shape[1]))).ravel()
    _, first, counts = np.unique(view, return_index=True, return_counts=True)
    for f, c in sorted(zip(first.tolist(), counts.tolist())):
        key = tuple(int(x) for x in values[codes[f]])
        if key in out:
            out[key][0] += c
        else:
            out[key] = [c, tuple(int(x) for x in tuples[f])]


def _block(args) -> dict:
    table, n, lead = args
    s = table.base
    axes = np.meshgrid(*[np.arange(s, dtype=np.int32)] * (n - 1), indexing="ij")
    rest = np.stack(axes, axis=-1).reshape(-1, n - 1)
    tuples = np.concatenate([np.full((len(rest), 1), lead, dtype=np.int32), rest], axis=1)
    out: dict = {}
    _collect(table, tuples, out)
    return out


def _merge(into: dict, part: dict) -> None:
    for key, (c, w) in part.items():
        if key in into:
            into[key][0] += c
        else:
            into[key] = [c, w]


def _finish(n: int, raw: dict) -> list[DistinctVector]:
    return [DistinctVector(EntropyVector(n, key), c, w) for key, (c, w) in raw.items()]


def exhaustive_vectors(
    g: FiniteGroup,
    n: int,
    subgroups: Sequence[Subgroup] | None = None,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    jobs: int = 1,
    table: MeetTable | None = None,
) -> list[DistinctVector]:
    """Distinct entropy vectors over every ordered n-tuple of subgroups.

    Order of the result: by first occurrence in lexicographic tuple order.
    """
    if n < 1:
        raise ValueError("n must be positive")
    table = table or MeetTable.build(g, subgroups)
    s = table.base
    total = s**n
    if total > max_tuples:
        raise SweepCapExceeded(total, max_tuples)
    raw: dict = {}
    if n == 1:
        _collect(table, np.arange(s, dtype=np.int32).reshape(-1, 1), raw)
        return _finish(n, raw)
    work = [(table, n, lead) for lead in range(s)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_block, work):
                _merge(raw, part)
    else:
        for w in work:
            _merge(raw, _block(w))
    return _finish(n, raw)


def random_vectors(
    g: FiniteGroup,
    n: int,
    count: int,
    rng: np.random.Generator,
    subgroups: Sequence[Subgroup] | None = None,
    table: MeetTable | None = None,
) -> list[DistinctVector]:
    """Distinct vectors over ``count`` uniformly drawn subgroup tuples."""
    table = table or MeetTable.build(g, subgroups)
    tuples = rng.integers(0, table.base, size=(count, n)).astype(np.int32)
    raw: dict = {}
    _collect(table, tuples, raw)
    return _finish(n, raw)


def random_generated_subgroup(g: FiniteGroup, rng: np.random.Generator, max_generators: int = 3) -> Subgroup:
    k = int(rng.integers(0, max_generators + 1))
    return g.generate(int(x) for x in rng.integers(0, g.order, size=k))


def abelian_2_4_family(max_order: int = 64) -> list[tuple[int, int]]:
    """(k, m) with 2^k 4^m <= max_order, for the groups Z_2^k x Z_4^m."""
    out = []
    for m in range(8):
        for k in range(14):
            if (k or m) and 2**k * 4**m <= max_order:
                out.append((k, m))
    return sorted(out)


def random_abelian_tuples(count: int, n: int, rng: np.random.Generator, max_order: int = 64):
    """Yield (group, subgroups) with a random Z_2^k x Z_4^m and random generated subgroups."""
    family = abelian_2_4_family(max_order)
    groups = {km: abelian(*([2] * km[0] + [4] * km[1])) for km in family}
    for _ in range(count):
        km = family[int(rng.integers(0, len(family)))]
        g = groups[km]
        yield g, tuple(random_generated_subgroup(g, rng) for _ in range(n))


def _partitions(k: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def abelian_groups_of_order(order: int) -> list[FiniteGroup]:
    """One representative per isomorphism class, as products of prime-power cyclics."""
    if order == 1:
        return [cyclic(1)]
    per_prime = []
    for p, e in sorted(_factor(order).items()):
        per_prime.append([tuple(p**a for a in part) for part in _partitions(e)])
    out = []
    for combo in itertools.product(*per_prime):
        moduli = sorted(itertools.chain(*combo))
        out.append(cyclic(order) if len(moduli) == len(combo) else abelian(*moduli))
    return out


def abelian_groups(max_order: int) -> list[FiniteGroup]:
    return [g for k in range(1, max_order + 1) for g in abelian_groups_of_order(k)]


def small_groups(max_order: int = 12) -> list[FiniteGroup]:
    """Every group of order <= min(max_order, 15) up to isomorphism."""
    if max_order > 15:
        raise ValueError("small_groups lists isomorphism classes only up to order 15")
    out = abelian_groups(max_order)
    extra = [
        (6, lambda: symmetric(3)),
        (8, lambda: dihedral(4)),
        (8, lambda: dicyclic(2)),
        (10, lambda: dihedral(5)),
        (12, lambda: alternating(4)),
        (12, lambda: dihedral(6)),
        (12, lambda: dicyclic(3)),
        (14, lambda: dihedral(7)),
    ]
    out += [make() for order, make in extra if order <= max_order]
    return sorted(out, key=lambda g: (g.order, not g.is_abelian(), g.name or ""))


@dataclass
class FunctionalSummary:
    name: str
    violations: int = 0
    """Weighted by tuple multiplicity."""
    min_slack: float = math.inf
    min_witness: tuple[int, ...] | None = None
    min_vector: EntropyVector | None = None


@dataclass
class SweepResult:
    group: FiniteGroup
    n: int
    tuples: int
    distinct: int
    rows: list[FunctionalSummary] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(r.violations for r in self.rows)


def check_vectors(
    g: FiniteGroup, n: int, vectors: Sequence[DistinctVector], suite: Sequence[LinearFunctional]
) -> SweepResult:
    rows = [FunctionalSummary(f.name or f"row{i}") for i, f in enumerate(suite)]
    for dv in vectors:
        for f, row in zip(suite, rows):
            if evaluate_exact(f, dv.vector).sign < 0:
                row.violations += dv.count
            slack = evaluate_float(f, dv.vector)
            if slack < row.min_slack:
                row.min_slack, row.min_witness, row.min_vector = slack, dv.witness, dv.vector
    return SweepResult(g, n, sum(dv.count for dv in vectors), len(vectors), rows)
