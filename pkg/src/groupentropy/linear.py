"""Subspaces of F_p^m and linear group characterizations.

Subspaces are kept in reduced row echelon form with rows sorted by pivot,
so two subspaces are equal iff their ``basis`` tuples are equal.
"""

from __future__ import annotations

import itertools
import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import subsets as ss
from .entropy import EntropyVector, GroupCharacterization
from .group import elementary_abelian

MAX_PRIME = 17


def _check_prime(p: int) -> None:
    if p > MAX_PRIME or p < 2 or any(p % q == 0 for q in range(2, p)):
        raise ValueError(f"only prime fields F_p with p <= {MAX_PRIME} are supported, got {p}")


def rref(rows: Iterable[Sequence[int]], p: int, m: int) -> tuple[tuple[tuple[int, ...], ...], list[int]]:
    """Reduced row echelon form over F_p; returns (nonzero rows, pivot columns)."""
    work = [[v % p for v in r] for r in rows]
    for r in work:
        if len(r) != m:
            raise ValueError(f"row {r} does not have {m} entries")
    pivots = []
    top = 0
    for col in range(m):
        pivot = next((i for i in range(top, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[top], work[pivot] = work[pivot], work[top]
        inv = pow(work[top][col], p - 2, p)
        work[top] = [v * inv % p for v in work[top]]
        for i in range(len(work)):
            f = work[i][col]
            if i != top and f:
                work[i] = [(a - f * b) % p for a, b in zip(work[i], work[top])]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return tuple(tuple(r) for r in work[:top]), pivots


def nullspace(rows: Sequence[Sequence[int]], p: int, m: int) -> list[tuple[int, ...]]:
    """Basis of {x in F_p^m : r . x = 0 for every row r}."""
    reduced, pivots = rref(rows, p, m)
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * m
        v[f] = 1
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f] % p
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class Subspace:
    p: int
    m: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, p: int, m: int, vectors: Iterable[Sequence[int]] = ()) -> Subspace:
        _check_prime(p)
        reduced, _ = rref(vectors, p, m)
        return cls(p, m, reduced)

    @classmethod
    def zero(cls, p: int, m: int) -> Subspace:
        return cls.span(p, m)

    @classmethod
    def full(cls, p: int, m: int) -> Subspace:
        return cls.span(p, m, [[int(i == j) for j in range(m)] for i in range(m)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(i for i, v in enumerate(r) if v) for r in self.basis]

    def __contains__(self, v: Sequence[int]) -> bool:
        return Subspace.span(self.p, self.m, self.basis + (tuple(v),)).dim == self.dim

    def elements(self) -> list[tuple[int, ...]]:
        if not self.basis:
            return [(0,) * self.m]
        b = np.array(self.basis, dtype=np.int64)
        coeffs = np.array(list(itertools.product(range(self.p), repeat=self.dim)), dtype=np.int64)
        return [tuple(int(x) for x in row) for row in (coeffs @ b) % self.p]

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_dict(cls, data: dict) -> Subspace:
        return cls.span(int(data["p"]), int(data["m"]), data.get("basis", []))


def _same_space(a: Subspace, b: Subspace) -> None:
    if (a.p, a.m) != (b.p, b.m):
        raise ValueError(f"field/dimension mismatch: F_{a.p}^{a.m} vs F_{b.p}^{b.m}")


@lru_cache(maxsize=1 << 16)
def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _same_space(a, b)
    return Subspace.span(a.p, a.m, a.basis + b.basis)


@lru_cache(maxsize=1 << 16)
def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    """a n b from the kernel of the stacked system  x.A - y.B = 0."""
    _same_space(a, b)
    p, m = a.p, a.m
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(p, m)
    ka, kb = a.dim, b.dim
    # columns of the stacked system are the basis rows of a and of -b
    cols = [list(r) for r in a.basis] + [[-v % p for v in r] for r in b.basis]
    system = [[cols[j][i] for j in range(ka + kb)] for i in range(m)]
    kernel = nullspace(system, p, ka + kb)
    vectors = []
    for k in kernel:
        vectors.append([sum(k[j] * a.basis[j][i] for j in range(ka)) % p for i in range(m)])
    return Subspace.span(p, m, vectors)


@lru_cache(maxsize=1 << 16)
def orthogonal_complement(w: Subspace) -> Subspace:
    """W-perp under the coordinate dot product; may meet W over small fields."""
    return Subspace.span(w.p, w.m, nullspace(w.basis, w.p, w.m))


@dataclass(frozen=True)
class LinearCharacterization:
    p: int
    m: int
    subspaces: tuple[Subspace, ...]

    def __post_init__(self):
        object.__setattr__(self, "subspaces", tuple(self.subspaces))
        _check_prime(self.p)
        if not self.subspaces:
            raise ValueError("need at least one subspace")
        for w in self.subspaces:
            if (w.p, w.m) != (self.p, self.m):
                raise ValueError("all subspaces must live in the same F_p^m")

    @property
    def n(self) -> int:
        return len(self.subspaces)

    def intersection(self, subset) -> Subspace:
        w = Subspace.full(self.p, self.m)
        for i in ss.elements(ss.as_mask(subset)):
            w = subspace_intersection(w, self.subspaces[i - 1])
        return w

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "subspaces": [w.to_dict() for w in self.subspaces]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> LinearCharacterization:
        p, m = int(data["p"]), int(data["m"])
        subs = []
        for w in data["subspaces"]:
            if isinstance(w, dict):
                subs.append(Subspace.from_dict(w))
            else:
                subs.append(Subspace.span(p, m, w))
        return cls(p, m, tuple(subs))


def entropy_from_linear(c: LinearCharacterization) -> EntropyVector:
    """k_a = p^(m - dim W_a)."""
    n = c.n
    inter = [Subspace.full(c.p, c.m)] * (1 << n)
    for msk in range(1, 1 << n):
        low = msk & -msk
        inter[msk] = subspace_intersection(inter[msk ^ low], c.subspaces[low.bit_length() - 1])
    return EntropyVector(n, tuple(c.p ** (c.m - inter[msk].dim) for msk in range(1, 1 << n)))


def dual_rank_entropy(c: LinearCharacterization) -> EntropyVector:
    """k_a = p^(dim of the sum of W_i-perp over i in a): the rank-function view."""
    n = c.n
    perps = [orthogonal_complement(w) for w in c.subspaces]
    sums = [Subspace.zero(c.p, c.m)] * (1 << n)
    for msk in range(1, 1 << n):
        low = msk & -msk
        sums[msk] = subspace_sum(sums[msk ^ low], perps[low.bit_length() - 1])
    return EntropyVector(n, tuple(c.p ** sums[msk].dim for msk in range(1, 1 << n)))


def sw_extension_linear(c: LinearCharacterization, alpha, beta) -> LinearCharacterization:
    """Append W_{n+1} = W_alpha + U with U spanned by the unit vectors at the
    non-pivot columns of W_alpha + W_beta.

    Then W_{n+1} n W_beta = W_alpha n W_beta and W_{n+1} + W_beta = F^m.
    """
    a, b = ss.as_mask(alpha), ss.as_mask(beta)
    if a == 0 or b == 0:
        raise ValueError("alpha and beta must be nonempty")
    wa, wb = c.intersection(a), c.intersection(b)
    s = subspace_sum(wa, wb)
    missing = [j for j in range(c.m) if j not in s.pivots]
    u = Subspace.span(c.p, c.m, [[int(i == j) for i in range(c.m)] for j in missing])
    w_new = subspace_sum(wa, u)
    if subspace_intersection(w_new, wb) != subspace_intersection(wa, wb):
        raise RuntimeError("extension breaks W_{n+1} n W_beta = W_alpha n W_beta")
    if subspace_sum(w_new, wb) != Subspace.full(c.p, c.m):
        raise RuntimeError("extension breaks W_{n+1} + W_beta = F^m")
    return LinearCharacterization(c.p, c.m, c.subspaces + (w_new,))


def enumerate_subspaces(p: int, m: int) -> list[Subspace]:
    """Every subspace of F_p^m, by dimension then basis."""
    _check_prime(p)
    out = []
    for k in range(m + 1):
        for pivots in itertools.combinations(range(m), k):
            # free slots: row r, column c > pivots[r] with c not a pivot column
            slots = [(r, col) for r in range(k) for col in range(pivots[r] + 1, m) if col not in pivots]
            for values in itertools.product(range(p), repeat=len(slots)):
                rows = [[0] * m for _ in range(k)]
                for r, pc in enumerate(pivots):
                    rows[r][pc] = 1
                for (r, col), v in zip(slots, values):
                    rows[r][col] = v
                out.append(Subspace(p, m, tuple(tuple(r) for r in rows)))
    return sorted(out, key=lambda w: (w.dim, w.basis))


def random_subspace(p: int, m: int, rng: np.random.Generator) -> Subspace:
    k = int(rng.integers(0, m + 1))
    vectors = rng.integers(0, p, size=(k, m)).tolist()
    return Subspace.span(p, m, vectors)


def to_group_characterization(c: LinearCharacterization) -> GroupCharacterization:
    """The same characterization over the additive group of F_p^m."""
    g = elementary_abelian(c.p, c.m)
    weights = [c.p ** (c.m - 1 - i) for i in range(c.m)]
    subs = tuple(g.subgroup(sum(a * w for a, w in zip(v, weights)) for v in w.elements()) for w in c.subspaces)
    return GroupCharacterization(g, subs)
