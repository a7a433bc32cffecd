"""Finite groups given by Cayley tables, and their subgroups.

Elements are the integers ``0 .. order - 1``.  Subgroups are bitsets over
those indices stored in a plain Python ``int`` (bit ``x`` set iff element
``x`` is a member), so intersection is ``&`` and order is ``bit_count``.

Canonical element orders of the constructors:

* ``cyclic(n)``: ``0 .. n-1`` with ``i * j = (i + j) mod n``.
* ``dihedral(n)``: the element ``r^k s^f`` sits at index ``k + n*f``.
* ``dicyclic(n)``: ``a^k x^f`` at index ``k + 2n*f`` (``dicyclic(2)`` is Q8).
* ``symmetric(n)``: permutations of 1..n in lexicographic one-line order;
  the product is composition ``(s * t)(x) = s(t(x))``.
* ``alternating(n)``: the even permutations, in the order they appear in
  ``symmetric(n)``.
* ``direct_product(g1, g2)``: pairs ``(a, b)`` at index ``a*|g2| + b``.
* ``elementary_abelian(p, k)``: vectors of F_p^k in lexicographic order.
"""

from __future__ import annotations

import itertools
import json
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

MAX_ORDER = 8192
"""Largest order accepted for a dense Cayley table (table of 2 * 8192**2 bytes)."""

MAX_ENUMERATION_ORDER = 256
_FULL_ASSOCIATIVITY_ORDER = 64
_RANDOM_ASSOCIATIVITY_TRIPLES = 10_000


class GroupError(ValueError):
    """A table, parameter or subset violates the group axioms or limits."""


def _bits_to_int(flags: np.ndarray) -> int:
    packed = np.packbits(np.asarray(flags, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def _int_to_indices(bits: int, order: int) -> np.ndarray:
    raw = bits.to_bytes((order + 7) // 8, "little")
    flags = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return np.flatnonzero(flags[:order])


@dataclass(frozen=True)
class Subgroup:
    """A subset of a parent group's elements, held as a bitset."""

    members: int

    @property
    def order(self) -> int:
        return self.members.bit_count()

    def __len__(self) -> int:
        return self.order

    def __contains__(self, x: int) -> bool:
        return bool(self.members >> x & 1)

    def __and__(self, other: Subgroup) -> Subgroup:
        return Subgroup(self.members & other.members)

    def issubset(self, other: Subgroup) -> bool:
        return self.members & ~other.members == 0

    def elements(self) -> list[int]:
        out = []
        bits, x = self.members, 0
        while bits:
            if bits & 1:
                out.append(x)
            bits >>= 1
            x += 1
        return out

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.order, tuple(self.elements()))


class FiniteGroup:
    """A finite group stored as a dense Cayley table.

    ``table[i, j]`` is the index of ``i * j``.  Tables are validated on
    construction: Latin square, two-sided identity and associativity (every
    triple up to order 64, 10**4 seeded random triples above that).
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]] | np.ndarray,
        identity: int | None = None,
        labels: Sequence[str] | None = None,
        name: str | None = None,
        check: bool = True,
    ):
        t = np.array(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise GroupError("Cayley table must be a nonempty square matrix")
        order = t.shape[0]
        if order > MAX_ORDER:
            raise GroupError(f"order {order} exceeds the dense-table limit {MAX_ORDER}")
        if t.min() < 0 or t.max() >= order:
            raise GroupError("table entries must be element indices")
        self.order = order
        self.table = t.astype(np.uint16 if order <= 65535 else np.uint32)
        self.table.setflags(write=False)
        if identity is None:
            identity = self._find_identity()
        self.identity = int(identity)
        self.labels = list(labels) if labels is not None else [str(i) for i in range(order)]
        if len(self.labels) != order:
            raise GroupError("need exactly one label per element")
        self.name = name or f"G{order}"
        if check:
            self._validate()
        inv = np.argmax(self.table == self.identity, axis=1)
        self.inverse = inv.astype(np.int64)
        self.inverse.setflags(write=False)
        self._coset_cache: dict[int, np.ndarray] = {}
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    def _find_identity(self) -> int:
        ref = np.arange(self.order)
        for e in range(self.order):
            if np.array_equal(self.table[e], ref) and np.array_equal(self.table[:, e], ref):
                return e
        raise GroupError("table has no two-sided identity")

    def _validate(self) -> None:
        t = self.table.astype(np.int64)
        n = self.order
        ref = np.arange(n)
        if not (np.all(np.sort(t, axis=1) == ref) and np.all(np.sort(t, axis=0) == ref[:, None])):
            raise GroupError("table is not a Latin square")
        e = self.identity
        if not (np.array_equal(t[e], ref) and np.array_equal(t[:, e], ref)):
            raise GroupError(f"element {e} is not a two-sided identity")
        if n <= _FULL_ASSOCIATIVITY_ORDER:
            left = t[t]  # left[a, b, c] = (a*b)*c
            right = t[:, t]  # right[a, b, c] = a*(b*c)
            if not np.array_equal(left, right):
                a, b, c = np.argwhere(left != right)[0]
                raise GroupError(f"associativity fails at ({a}, {b}, {c})")
        else:
            rng = np.random.default_rng(0x5EED)
            a, b, c = rng.integers(0, n, size=(3, _RANDOM_ASSOCIATIVITY_TRIPLES))
            bad = t[t[a, b], c] != t[a, t[b, c]]
            if bad.any():
                k = int(np.flatnonzero(bad)[0])
                raise GroupError(f"associativity fails at ({a[k]}, {b[k]}, {c[k]})")
        # Latin square plus identity already gives right inverses; check left ones too.
        inv = np.argmax(t == e, axis=1)
        if not np.all(t[inv, ref] == e):
            raise GroupError("some element lacks a two-sided inverse")

    # element arithmetic

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def element(self, label: str) -> int:
        return self._label_index[label]

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = int(self.table[y, x])
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    # subgroups

    @property
    def whole(self) -> Subgroup:
        return Subgroup((1 << self.order) - 1)

    @property
    def trivial(self) -> Subgroup:
        return Subgroup(1 << self.identity)

    def indices(self, h: Subgroup) -> np.ndarray:
        return _int_to_indices(h.members, self.order)

    def is_subgroup(self, h: Subgroup) -> bool:
        if not h.members >> self.identity & 1:
            return False
        idx = self.indices(h)
        closed = _bits_to_int(np.isin(np.arange(self.order), self.table[np.ix_(idx, idx)]))
        return closed == h.members and _bits_to_int(np.isin(np.arange(self.order), self.inverse[idx])) == h.members

    def subgroup(self, elements: Iterable[int]) -> Subgroup:
        """Subgroup from an explicit element list; raises if it is not one."""
        bits = 0
        for x in elements:
            x = int(x)
            if not 0 <= x < self.order:
                raise GroupError(f"element {x} out of range")
            bits |= 1 << x
        h = Subgroup(bits)
        if not self.is_subgroup(h):
            raise GroupError(f"{sorted(h.elements())} is not a subgroup of {self.name}")
        return h

    def generate(self, generators: Iterable[int]) -> Subgroup:
        """The subgroup generated by ``generators`` (the trivial group if empty)."""
        flags = np.zeros(self.order, dtype=bool)
        flags[self.identity] = True
        for x in generators:
            flags[int(x)] = True
        return Subgroup(self._close(flags))

    def _close(self, flags: np.ndarray) -> int:
        # In a finite group closure under products alone gives the generated subgroup.
        while True:
            idx = np.flatnonzero(flags)
            new = np.zeros_like(flags)
            new[self.table[np.ix_(idx, idx)].ravel()] = True
            new |= flags
            if new.sum() == idx.size:
                return _bits_to_int(flags)
            flags = new

    def join(self, a: Subgroup, b: Subgroup) -> Subgroup:
        """Smallest subgroup containing both ``a`` and ``b``."""
        bits = a.members | b.members
        if bits == a.members or bits == b.members:
            return Subgroup(bits)
        flags = np.zeros(self.order, dtype=bool)
        flags[_int_to_indices(bits, self.order)] = True
        return Subgroup(self._close(flags))

    # serialization

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "identity": self.identity,
            "table": self.table.astype(int).tolist(),
            "labels": list(self.labels),
            **({"name": self.name} if self.name else {}),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> FiniteGroup:
        table = data["table"]
        if "order" in data and len(table) != data["order"]:
            raise GroupError("'order' does not match the table size")
        return cls(table, identity=data.get("identity"), labels=data.get("labels"), name=data.get("name"))

    @classmethod
    def from_json(cls, text: str) -> FiniteGroup:
        return cls.from_dict(json.loads(text))


# constructors


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    r = np.arange(n)
    return FiniteGroup((r[:, None] + r[None, :]) % n, identity=0, name=f"Z{n}", check=False)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n."""
    if n < 3:
        raise GroupError("dihedral group needs n >= 3")
    k = np.arange(2 * n) % n
    f = np.arange(2 * n) // n
    sign = np.where(f == 1, -1, 1)
    kk = (k[:, None] + sign[:, None] * k[None, :]) % n
    ff = (f[:, None] + f[None, :]) % 2
    labels = [f"r{i}" for i in range(n)] + [f"r{i}s" for i in range(n)]
    return FiniteGroup(kk + n * ff, identity=0, labels=labels, name=f"D{n}", check=False)


def dicyclic(n: int) -> FiniteGroup:
    """Dicyclic group of order 4n; ``dicyclic(2)`` is the quaternion group."""
    if n < 2:
        raise GroupError("dicyclic group needs n >= 2")
    m = 2 * n
    k = np.arange(2 * m) % m
    f = np.arange(2 * m) // m
    sign = np.where(f == 1, -1, 1)
    kk = k[:, None] + sign[:, None] * k[None, :] + n * (f[:, None] & f[None, :])
    ff = (f[:, None] + f[None, :]) % 2
    labels = [f"a{i}" for i in range(m)] + [f"a{i}x" for i in range(m)]
    return FiniteGroup(kk % m + m * ff, identity=0, labels=labels, name=f"Dic{n}", check=False)


def _permutation_group(perms: np.ndarray, name: str) -> FiniteGroup:
    n = perms.shape[1]
    weights = n ** np.arange(n)
    keys = perms @ weights
    order = np.argsort(keys)
    sorted_keys = keys[order]
    table = np.empty((len(perms), len(perms)), dtype=np.int64)
    for i, p in enumerate(perms):
        comp = p[perms]  # row j is p o perms[j]
        table[i] = order[np.searchsorted(sorted_keys, comp @ weights)]
    labels = ["".join(str(v + 1) for v in p) for p in perms]
    return FiniteGroup(table, identity=0, labels=labels, name=name, check=False)


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 7:
        raise GroupError("symmetric group needs 1 <= n <= 7")
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    return _permutation_group(perms, f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if not 1 <= n <= 7:
        raise GroupError("alternating group needs 1 <= n <= 7")
    perms = [p for p in itertools.permutations(range(n)) if _parity(p) == 0]
    return _permutation_group(np.array(perms, dtype=np.int64), f"A{n}")


def _parity(p: Sequence[int]) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j]) % 2


def permutation(n: int, cycles: str) -> str:
    """One-line label of a permutation of 1..n written in cycle notation.

    >>> permutation(3, "(12)")
    '213'
    """
    img = list(range(1, n + 1))
    for cyc in cycles.replace(" ", "").split(")"):
        cyc = cyc.strip("(")
        if not cyc:
            continue
        pts = [int(c) for c in cyc.split(",")] if "," in cyc else [int(c) for c in cyc]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a - 1] = b
    return "".join(map(str, img))


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    n1, n2 = g1.order, g2.order
    if n1 * n2 > 10**6:
        raise GroupError(f"direct product order {n1 * n2} exceeds 10**6")
    if n1 * n2 > MAX_ORDER:
        raise GroupError(f"direct product order {n1 * n2} exceeds the dense-table limit {MAX_ORDER}")
    t1 = g1.table.astype(np.int64)
    t2 = g2.table.astype(np.int64)
    t = t1[:, None, :, None] * n2 + t2[None, :, None, :]
    labels = [f"({a},{b})" for a in g1.labels for b in g2.labels]
    return FiniteGroup(
        t.reshape(n1 * n2, n1 * n2),
        identity=g1.identity * n2 + g2.identity,
        labels=labels,
        name=f"{g1.name}x{g2.name}",
        check=False,
    )


def abelian(*moduli: int) -> FiniteGroup:
    """Z_{m1} x Z_{m2} x ... with elements as tuples in lexicographic order."""
    if not moduli:
        return cyclic(1)
    g = cyclic(moduli[0])
    for m in moduli[1:]:
        g = direct_product(g, cyclic(m))
    g.labels = [
        "".join(str(c) for c in t) if max(moduli) <= 10 else ",".join(map(str, t))
        for t in itertools.product(*(range(m) for m in moduli))
    ]
    g._label_index = {lab: i for i, lab in enumerate(g.labels)}
    g.name = "x".join(f"Z{m}" for m in moduli)
    return g


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    if not _is_prime(p):
        raise GroupError(f"{p} is not prime")
    if k < 1 or p**k > 4096:
        raise GroupError("elementary abelian group needs k >= 1 and p**k <= 4096")
    return abelian(*([p] * k))


def subgroup_as_group(g: FiniteGroup, h: Subgroup, name: str | None = None) -> tuple[FiniteGroup, np.ndarray]:
    """Re-index ``h`` as a standalone group.

    Returns the new group and the array mapping new indices to elements of ``g``.
    """
    idx = g.indices(h)
    pos = np.full(g.order, -1, dtype=np.int64)
    pos[idx] = np.arange(idx.size)
    sub = pos[g.table[np.ix_(idx, idx)]]
    grp = FiniteGroup(
        sub,
        identity=int(pos[g.identity]),
        labels=[g.labels[i] for i in idx],
        name=name,
        check=idx.size <= _FULL_ASSOCIATIVITY_ORDER,
    )
    return grp, idx


def make_group(kind: str, *params) -> FiniteGroup:
    """Build a group by kind name.

    ``cyclic n``, ``dihedral n``, ``dicyclic n``, ``symmetric n``,
    ``alternating n``, ``elementary-abelian p k``, ``abelian m1 m2 ...`` and
    ``direct-product g1 g2`` (component groups, not integers).
    """
    kind = kind.replace("_", "-").lower()
    if kind == "direct-product":
        if len(params) != 2:
            raise GroupError("direct-product takes two groups")
        return direct_product(*params)
    ints = [int(p) for p in params]
    if kind == "cyclic":
        return cyclic(*ints)
    if kind == "dihedral":
        return dihedral(*ints)
    if kind == "dicyclic":
        return dicyclic(*ints)
    if kind == "symmetric":
        return symmetric(*ints)
    if kind == "alternating":
        return alternating(*ints)
    if kind == "elementary-abelian":
        return elementary_abelian(*ints)
    if kind == "abelian":
        return abelian(*ints)
    raise GroupError(f"unknown group kind {kind!r}")


def parse_group(spec: str) -> FiniteGroup:
    """Parse a compact spec such as ``cyclic:6``, ``abelian:2,4`` or ``S3``.

    ``a*b`` forms a direct product of two specs.
    """
    spec = spec.strip()
    if "*" in spec:
        parts = [parse_group(s) for s in spec.split("*")]
        g = parts[0]
        for h in parts[1:]:
            g = direct_product(g, h)
        return g
    if ":" in spec:
        kind, _, args = spec.partition(":")
        return make_group(kind, *[a for a in args.replace(",", " ").split()])
    short = {"Z": "cyclic", "D": "dihedral", "S": "symmetric", "A": "alternating"}
    if spec == "Q8":
        return dicyclic(2)
    if spec[:1] in short and spec[1:].isdigit():
        return make_group(short[spec[:1]], int(spec[1:]))
    raise GroupError(f"cannot parse group spec {spec!r}")


# subgroup lattice


def cyclic_subgroups(g: FiniteGroup) -> list[Subgroup]:
    seen: dict[int, Subgroup] = {}
    for x in range(g.order):
        h = g.generate([x])
        seen.setdefault(h.members, h)
    return sorted(seen.values(), key=Subgroup.sort_key)


def enumerate_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """All subgroups of ``g``, sorted by (order, sorted element tuple).

    Breadth-first: start from the cyclic subgroups and join each found
    subgroup with every cyclic subgroup it does not contain.  Every subgroup
    is generated by its cyclic subgroups, so this reaches all of them.
    """
    if g.order > MAX_ENUMERATION_ORDER:
        raise GroupError(f"order {g.order} too large for exhaustive enumeration")
    cyclics = cyclic_subgroups(g)
    found: dict[int, Subgroup] = {h.members: h for h in cyclics}
    frontier = list(cyclics)
    while frontier:
        nxt = []
        for h in frontier:
            for c in cyclics:
                if c.members & ~h.members == 0:
                    continue
                j = g.join(h, c)
                if j.members not in found:
                    found[j.members] = j
                    nxt.append(j)
        frontier = nxt
    return sorted(found.values(), key=Subgroup.sort_key)


def subgroup_intersection(g: FiniteGroup, parts: Sequence[Subgroup]) -> Subgroup:
    if not parts:
        raise GroupError("intersection of an empty sequence of subgroups")
    bits = g.whole.members
    for h in parts:
        bits &= h.members
    return Subgroup(bits)


def product_set(g: FiniteGroup, a: Subgroup, b: Subgroup) -> int:
    """The set {x * y : x in a, y in b} as a bitset; usually not a subgroup."""
    prods = g.table[np.ix_(g.indices(a), g.indices(b))].ravel()
    flags = np.zeros(g.order, dtype=bool)
    flags[prods] = True
    bits = _bits_to_int(flags)
    expected, rem = divmod(a.order * b.order, (a & b).order)
    if rem or bits.bit_count() != expected:
        raise GroupError("product set size contradicts |A||B|/|A n B|; inputs are not subgroups")
    return bits


def normality_witness(g: FiniteGroup, h: Subgroup) -> int | None:
    """An element x with x h x^-1 != h, or None when h is normal."""
    idx = g.indices(h)
    conj = g.table[g.table[:, idx], g.inverse[:, None]]  # conj[x, k] = x h_k x^-1
    member = np.zeros(g.order, dtype=bool)
    member[idx] = True
    bad = ~member[conj].all(axis=1)
    if bad.any():
        return int(np.flatnonzero(bad)[0])
    return None


def is_normal(g: FiniteGroup, h: Subgroup) -> bool:
    return normality_witness(g, h) is None


def coset_labels(g: FiniteGroup, h: Subgroup) -> np.ndarray:
    """Left-coset index of every element.

    Cosets are numbered in order of their first element when scanning the
    identity first and then ``0, 1, 2, ...``; the identity coset is 0.
    """
    cached = g._coset_cache.get(h.members)
    if cached is not None:
        return cached
    idx = g.indices(h)
    out = np.full(g.order, -1, dtype=np.int64)
    k = 0
    for x in itertools.chain([g.identity], range(g.order)):
        if out[x] < 0:
            out[g.table[x, idx]] = k
            k += 1
    out.setflags(write=False)
    g._coset_cache[h.members] = out
    return out


def coset_index(g: FiniteGroup, h: Subgroup, x: int) -> int:
    return int(coset_labels(g, h)[x])
