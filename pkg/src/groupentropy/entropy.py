"""Entropy functions induced by groups and subgroups.

A characterization ``(G, G_1, ..., G_n)`` induces variables ``X_i`` = the
left coset of ``G_i`` containing a uniformly random ``U`` in ``G``, and

    H(X_a) = log |G| / |G_a|,   G_a = intersection of G_i over i in a.

Entropy vectors store the integer ``|G| / |G_a|`` (the coset index) for
every nonempty ``a``, so any integer-coefficient inequality can be decided
by comparing products of big integers.  Float views are in bits.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import subsets as ss
from .group import (
    FiniteGroup,
    GroupError,
    Subgroup,
    coset_labels,
    cyclic,
    direct_product,
    enumerate_subgroups,
    product_set,
    subgroup_as_group,
)

Subset = int | str | Iterable[int]


@dataclass(frozen=True)
class GroupCharacterization:
    """A group with an ordered tuple of subgroups ``(G, G_1, ..., G_n)``."""

    group: FiniteGroup
    subgroups: tuple[Subgroup, ...]

    def __post_init__(self):
        object.__setattr__(self, "subgroups", tuple(self.subgroups))
        if not self.subgroups:
            raise GroupError("a characterization needs at least one subgroup")
        for i, h in enumerate(self.subgroups, 1):
            if not self.group.is_subgroup(h):
                raise GroupError(f"G_{i} is not a subgroup of {self.group.name}")

    @property
    def n(self) -> int:
        return len(self.subgroups)

    def intersection(self, subset: Subset) -> Subgroup:
        """G_a for a subset a; the whole group for the empty set."""
        bits = self.group.whole.members
        for i in ss.elements(ss.as_mask(subset)):
            bits &= self.subgroups[i - 1].members
        return Subgroup(bits)

    def to_dict(self) -> dict:
        return {"group": self.group.to_dict(), "subgroups": [h.elements() for h in self.subgroups]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> GroupCharacterization:
        g = FiniteGroup.from_dict(data["group"])
        return cls(g, tuple(g.subgroup(e) for e in data["subgroups"]))


def characterize(group: FiniteGroup, *subgroups: Subgroup) -> GroupCharacterization:
    return GroupCharacterization(group, tuple(subgroups))


@dataclass(frozen=True)
class EntropyVector:
    """Exact entropy function: ``indices[m - 1]`` is k_a for the subset with mask m."""

    n: int
    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(k) for k in self.indices))
        if self.n < 1 or len(self.indices) != (1 << self.n) - 1:
            raise ValueError(f"need {(1 << self.n) - 1} entries for n={self.n}")
        if any(k < 1 for k in self.indices):
            raise ValueError("coset indices must be positive")

    def index(self, subset: Subset) -> int:
        m = ss.as_mask(subset)
        return 1 if m == 0 else self.indices[m - 1]

    __getitem__ = index

    def bits(self, subset: Subset) -> float:
        return math.log2(self.index(subset))

    def as_real(self) -> RealEntropyVector:
        return RealEntropyVector(self.n, tuple(math.log2(k) for k in self.indices))

    def is_zero(self) -> bool:
        return all(k == 1 for k in self.indices)

    def as_dict(self) -> dict[str, int]:
        return {ss.label(m): k for m, k in enumerate(self.indices, 1)}

    def to_dict(self) -> dict:
        return {"n": self.n, "indices": self.as_dict()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_mapping(cls, n: int, mapping: dict) -> EntropyVector:
        values = [None] * ((1 << n) - 1)
        for key, k in mapping.items():
            values[ss.as_mask(key) - 1] = int(k)
        if any(v is None for v in values):
            raise ValueError("entropy vector is missing subsets")
        return cls(n, tuple(values))

    @classmethod
    def from_dict(cls, data: dict) -> EntropyVector:
        return cls.from_mapping(int(data["n"]), data["indices"])

    @classmethod
    def zero(cls, n: int) -> EntropyVector:
        return cls(n, (1,) * ((1 << n) - 1))


@dataclass(frozen=True)
class RealEntropyVector:
    """Entropy function with real values in bits.

    ``ratios``, when present, holds the exact value as a rational power-of-2
    argument (value = log2 ratio) for vectors derived exactly from indices.
    """

    n: int
    values: tuple[float, ...]
    ratios: tuple[Fraction, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if self.n < 1 or len(self.values) != (1 << self.n) - 1:
            raise ValueError(f"need {(1 << self.n) - 1} entries for n={self.n}")

    def value(self, subset: Subset) -> float:
        m = ss.as_mask(subset)
        return 0.0 if m == 0 else self.values[m - 1]

    __getitem__ = value

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def ratio(self, subset: Subset) -> Fraction:
        m = ss.as_mask(subset)
        if self.ratios is None:
            raise ValueError("vector carries no exact ratios")
        return Fraction(1) if m == 0 else self.ratios[m - 1]

    def to_dict(self) -> dict:
        return {"n": self.n, "values_bits": {ss.label(m): v for m, v in enumerate(self.values, 1)}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> RealEntropyVector:
        n = int(data["n"])
        values = [None] * ((1 << n) - 1)
        for key, v in data["values_bits"].items():
            values[ss.as_mask(key) - 1] = float(v)
        if any(v is None for v in values):
            raise ValueError("entropy vector is missing subsets")
        return cls(n, tuple(values))


def vector_from_json(text: str) -> EntropyVector | RealEntropyVector:
    data = json.loads(text)
    if "indices" in data:
        return EntropyVector.from_dict(data)
    return RealEntropyVector.from_dict(data)


@dataclass(frozen=True)
class JointDistribution:
    """Finite joint distribution with exact rational probabilities.

    ``support`` is sorted by outcome and holds only positive masses.
    """

    n: int
    support: tuple[tuple[tuple[int, ...], Fraction], ...]

    def __post_init__(self):
        merged: dict[tuple, Fraction] = defaultdict(Fraction)
        for outcome, p in self.support:
            outcome = tuple(int(v) for v in outcome)
            if len(outcome) != self.n:
                raise ValueError("outcome length differs from the number of variables")
            merged[outcome] += Fraction(p)
        if any(p <= 0 for p in merged.values()):
            raise ValueError("probabilities must be positive")
        if sum(merged.values()) != 1:
            raise ValueError("probabilities must sum to 1")
        object.__setattr__(self, "support", tuple(sorted(merged.items())))

    @property
    def outcomes(self) -> list[tuple[int, ...]]:
        return [o for o, _ in self.support]

    @property
    def probabilities(self) -> list[Fraction]:
        return [p for _, p in self.support]

    def marginal(self, subset: Subset) -> dict[tuple[int, ...], Fraction]:
        coords = [i - 1 for i in ss.elements(ss.as_mask(subset))]
        out: dict[tuple, Fraction] = defaultdict(Fraction)
        for outcome, p in self.support:
            out[tuple(outcome[i] for i in coords)] += p
        return dict(out)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"x{i}" for i in range(1, self.n + 1)] + ["p"])
        for outcome, p in self.support:
            w.writerow(list(outcome) + [f"{p.numerator}/{p.denominator}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> JointDistribution:
        rows = list(csv.reader(io.StringIO(text)))
        header, body = rows[0], [r for r in rows[1:] if r]
        n = len(header) - 1
        return cls(n, tuple((tuple(int(v) for v in r[:n]), Fraction(r[n])) for r in body))


# index path and distribution oracle


def entropy_from_characterization(c: GroupCharacterization) -> EntropyVector:
    order = c.group.order
    n = c.n
    sizes = [0] * (1 << n)
    bits = [c.group.whole.members] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        bits[m] = bits[m ^ low] & c.subgroups[low.bit_length() - 1].members
        sizes[m] = bits[m].bit_count()
    return EntropyVector(n, tuple(order // s for s in sizes[1:]))


def induced_joint_distribution(c: GroupCharacterization) -> JointDistribution:
    cols = [coset_labels(c.group, h) for h in c.subgroups]
    counts: dict[tuple, int] = defaultdict(int)
    for u in range(c.group.order):
        counts[tuple(int(col[u]) for col in cols)] += 1
    order = c.group.order
    return JointDistribution(c.n, tuple((o, Fraction(k, order)) for o, k in counts.items()))


def shannon_entropy_oracle(d: JointDistribution, subset: Subset) -> float:
    """Shannon entropy in bits of the marginal on ``subset``, summed in sorted outcome order."""
    m = ss.as_mask(subset)
    if m == 0:
        raise ValueError("subset must be nonempty")
    marg = d.marginal(m)
    return math.fsum(-float(p) * math.log2(p) for _, p in sorted(marg.items()) if p < 1) + 0.0


def oracle_vector(d: JointDistribution) -> RealEntropyVector:
    return RealEntropyVector(d.n, tuple(shannon_entropy_oracle(d, m) for m in ss.nonempty_subsets(d.n)))


# operations on characterizations and vectors


def trivial_characterization(n: int, group: FiniteGroup | None = None) -> GroupCharacterization:
    """All subgroups equal to the whole group: the zero function."""
    g = group or cyclic(1)
    return GroupCharacterization(g, (g.whole,) * n)


def sum_characterizations(c1: GroupCharacterization, c2: GroupCharacterization) -> GroupCharacterization:
    """Characterization of g1 + g2 on the direct product with subgroups G_i x G'_i."""
    if c1.n != c2.n:
        raise ValueError(f"dimension mismatch: {c1.n} vs {c2.n}")
    g = direct_product(c1.group, c2.group)
    n2 = c2.group.order
    subs = []
    for a, b in zip(c1.subgroups, c2.subgroups):
        fa = np.zeros(c1.group.order, dtype=bool)
        fa[c1.group.indices(a)] = True
        fb = np.zeros(n2, dtype=bool)
        fb[c2.group.indices(b)] = True
        flags = (fa[:, None] & fb[None, :]).ravel()
        subs.append(g.subgroup(np.flatnonzero(flags)))
    return GroupCharacterization(g, tuple(subs))


def condition(g: EntropyVector, beta: Subset, allow_rational: bool = False):
    """Conditional entropy function a -> H(X_a | X_beta).

    Returns an EntropyVector when every quotient k_{a u b} / k_b is an
    integer (always so for group-derived input).  Otherwise raises, or with
    ``allow_rational`` returns a RealEntropyVector carrying exact ratios.
    """
    b = ss.as_mask(beta)
    if b == 0:
        raise ValueError("beta must be nonempty")
    kb = g.index(b)
    ratios = [Fraction(g.index(m | b), kb) for m in ss.nonempty_subsets(g.n)]
    if all(r.denominator == 1 for r in ratios):
        return EntropyVector(g.n, tuple(int(r) for r in ratios))
    if not allow_rational:
        raise ValueError("non-integer quotient: input is not group derived")
    return RealEntropyVector(g.n, tuple(math.log2(r) for r in ratios), tuple(ratios))


def condition_characterization(c: GroupCharacterization, beta: Subset) -> GroupCharacterization:
    """Witness for conditioning: ambient G_beta with subgroups G_i n G_beta."""
    b = ss.as_mask(beta)
    if b == 0:
        raise ValueError("beta must be nonempty")
    gb = c.intersection(b)
    sub, idx = subgroup_as_group(c.group, gb, name=f"{c.group.name}_{ss.label(b)}")
    pos = np.full(c.group.order, -1, dtype=np.int64)
    pos[idx] = np.arange(idx.size)
    subs = tuple(sub.subgroup(pos[c.group.indices(h & gb)]) for h in c.subgroups)
    return GroupCharacterization(sub, subs)


def check_functional_dependency(c: GroupCharacterization, i: int, alpha: Subset) -> bool:
    """True iff G_alpha is contained in G_i, i.e. H(X_i | X_alpha) = 0."""
    a = ss.as_mask(alpha)
    if not 1 <= i <= c.n:
        raise ValueError(f"variable {i} out of range")
    if a == 0:
        raise ValueError("alpha must be nonempty")
    return c.intersection(a).issubset(c.subgroups[i - 1])


def functionally_dependent(g: EntropyVector, i: int, alpha: Subset) -> bool:
    """Entropy form of functional dependency: k_{alpha u i} == k_alpha."""
    a = ss.as_mask(alpha)
    return g.index(a | 1 << (i - 1)) == g.index(a)


def check_independence(c: GroupCharacterization) -> bool:
    """Mutual independence of X_1..X_n via prod |G_i| == |G|^(n-1) |G_N|.

    For n = 2 the product-set criterion G = G_1 G_2 is evaluated as well and
    must agree.
    """
    if c.n < 2:
        raise ValueError("independence needs at least two variables")
    lhs = math.prod(h.order for h in c.subgroups)
    rhs = c.group.order ** (c.n - 1) * c.intersection(ss.full(c.n)).order
    result = lhs == rhs
    if c.n == 2:
        by_product = product_set(c.group, *c.subgroups) == c.group.whole.members
        if by_product != result:
            raise RuntimeError("product formula and product-set test disagree")
    return result


def independent(g: EntropyVector) -> bool:
    """Entropy form: H(X_N) == sum of H(X_i), i.e. k_N == prod k_i."""
    return g.index(ss.full(g.n)) == math.prod(g.index(1 << i) for i in range(g.n))


def mutual_information_ratio(g: EntropyVector, a: Subset, b: Subset, c: Subset = 0) -> Fraction:
    """2**I(X_a; X_b | X_c) as an exact rational: k_ac k_bc / (k_abc k_c)."""
    a, b, c = ss.as_mask(a), ss.as_mask(b), ss.as_mask(c)
    return Fraction(g.index(a | c) * g.index(b | c), g.index(a | b | c) * g.index(c))


def delta_reduction(g: EntropyVector | RealEntropyVector, beta: Subset) -> RealEntropyVector:
    """Remove the private part of each X_j, j in beta.

    Delta(g, beta)(a) = g(a) - sum over j in beta n a of (g(N) - g(N - j)).
    For an EntropyVector the result also carries exact ratios.
    """
    b = ss.as_mask(beta)
    if b == 0:
        raise ValueError("beta must be nonempty")
    n = g.n
    N = ss.full(n)
    if isinstance(g, EntropyVector):
        kN = g.index(N)
        private = {j: Fraction(kN, g.index(N & ~(1 << (j - 1)))) for j in ss.elements(b)}
        ratios = []
        for m in ss.nonempty_subsets(n):
            r = Fraction(g.index(m))
            for j in ss.elements(m & b):
                r /= private[j]
            ratios.append(r)
        return RealEntropyVector(n, tuple(math.log2(r) for r in ratios), tuple(ratios))
    gN = g.value(N)
    private_f = {j: gN - g.value(N & ~(1 << (j - 1))) for j in ss.elements(b)}
    values = [g.value(m) - sum(private_f[j] for j in ss.elements(m & b)) for m in ss.nonempty_subsets(n)]
    return RealEntropyVector(n, tuple(values))


def unit_vector(n: int, j: int) -> EntropyVector:
    """u_j: one bit in X_j and nothing else, so u_j(a) = 1 iff j in a."""
    return EntropyVector(n, tuple(2 if m >> (j - 1) & 1 else 1 for m in ss.nonempty_subsets(n)))


# common information


def _block_labels(d: JointDistribution, subset: Subset) -> list[tuple[int, ...]]:
    coords = [i - 1 for i in ss.elements(ss.as_mask(subset))]
    return [tuple(o[i] for i in coords) for o in d.outcomes]


def _meet(u: Sequence, v: Sequence) -> list[int]:
    """Component label per support point of the bipartite graph u -- v."""
    ukeys = {x: k for k, x in enumerate(sorted(set(u)))}
    vkeys = {y: k for k, y in enumerate(sorted(set(v)))}
    nu = len(ukeys)
    rows = [ukeys[x] for x in u]
    cols = [nu + vkeys[y] for y in v]
    size = nu + len(vkeys)
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(size, size))
    _, comp = connected_components(graph, directed=False)
    # relabel components in order of first appearance for determinism
    relabel: dict[int, int] = {}
    return [relabel.setdefault(int(comp[r]), len(relabel)) for r in rows]


@dataclass(frozen=True)
class CommonInformation:
    """The common part W = X * Y of two variable blocks."""

    labels: tuple[int, ...]
    """W's value at each support point of the source distribution."""
    x_map: dict
    y_map: dict
    distribution: dict[int, Fraction]
    entropy_bits: float

    @property
    def components(self) -> int:
        return len(self.distribution)

    @property
    def index(self) -> int | None:
        """Number of values when W is uniform (H(W) = log of it), else None."""
        probs = set(self.distribution.values())
        return self.components if len(probs) == 1 else None


def common_information(d: JointDistribution, x: Subset = 1, y: Subset = 2) -> CommonInformation:
    """Gacs-Korner common part of blocks X_x and X_y.

    W labels the connected components of the bipartite graph joining the
    values of X_x and X_y that occur together.  It is a function of either
    block alone and every common function of both factors through it.
    """
    xs = _block_labels(d, x)
    ys = _block_labels(d, y)
    w = _meet(xs, ys)
    dist: dict[int, Fraction] = defaultdict(Fraction)
    for label, p in zip(w, d.probabilities):
        dist[label] += p
    h = math.fsum(-float(p) * math.log2(p) for _, p in sorted(dist.items()) if p < 1) + 0.0
    return CommonInformation(
        tuple(w),
        dict(zip(xs, w)),
        dict(zip(ys, w)),
        dict(dist),
        h,
    )


def conditionally_independent(probs: Sequence[Fraction], a: Sequence, b: Sequence, c: Sequence) -> bool:
    """Exact test of A _|_ B | C for variables given per support point."""
    pabc: dict = defaultdict(Fraction)
    pac: dict = defaultdict(Fraction)
    pbc: dict = defaultdict(Fraction)
    pc: dict = defaultdict(Fraction)
    for p, u, v, z in zip(probs, a, b, c):
        pabc[u, v, z] += p
        pac[u, z] += p
        pbc[v, z] += p
        pc[z] += p
    a_given: dict = defaultdict(list)
    b_given: dict = defaultdict(list)
    for u, z in pac:
        a_given[z].append(u)
    for v, z in pbc:
        b_given[z].append(v)
    for z, pz in pc.items():
        for u in a_given[z]:
            for v in b_given[z]:
                if pabc.get((u, v, z), 0) * pz != pac[u, z] * pbc[v, z]:
                    return False
    return True


def is_pseudo_abelian(d: JointDistribution) -> bool:
    """Check both common-information conditional independences for all disjoint block pairs."""
    n = d.n
    if n > 5:
        raise ValueError("pseudo-abelian sweep supports at most 5 variables")
    probs = d.probabilities
    singles = {i: _block_labels(d, 1 << (i - 1)) for i in range(1, n + 1)}
    star: dict[int, list] = {}

    def iterated(m: int) -> list:
        if m not in star:
            els = ss.elements(m)
            w = singles[els[0]]
            for i in els[1:]:
                w = _meet(w, singles[i])
            star[m] = w
        return star[m]

    for a in ss.nonempty_subsets(n):
        for b in ss.nonempty_subsets(n):
            if a & b or a > b:
                continue
            xa, xb = _block_labels(d, a), _block_labels(d, b)
            if not conditionally_independent(probs, xa, xb, _meet(xa, xb)):
                return False
            sa, sb = iterated(a), iterated(b)
            if not conditionally_independent(probs, sa, sb, _meet(sa, sb)):
                return False
    return True


def join_characterization(c: GroupCharacterization, alpha: Subset, beta: Subset) -> GroupCharacterization:
    """Append G_{n+1} = G_alpha + G_beta, which induces X_alpha * X_beta (abelian groups only)."""
    if not c.group.is_abelian():
        raise GroupError(f"{c.group.name} is not abelian")
    a, b = ss.as_mask(alpha), ss.as_mask(beta)
    if a == 0 or b == 0:
        raise ValueError("alpha and beta must be nonempty")
    g_new = c.group.join(c.intersection(a), c.intersection(b))
    return GroupCharacterization(c.group, c.subgroups + (g_new,))


def all_characterizations(
    group: FiniteGroup, n: int, subgroups: Sequence[Subgroup] | None = None
) -> Iterable[GroupCharacterization]:
    """Every ordered n-tuple of subgroups (validation skipped: inputs are subgroups)."""
    subs = list(subgroups) if subgroups is not None else enumerate_subgroups(group)
    for combo in itertools.product(subs, repeat=n):
        c = object.__new__(GroupCharacterization)
        object.__setattr__(c, "group", group)
        object.__setattr__(c, "subgroups", combo)
        yield c
