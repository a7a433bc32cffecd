"""Extension constraint sets and the extend-intersect-project outer bound.

An extension maps a source function on {1..n} to a function on {1..m},
m > n, that agrees on the first n variables and satisfies a set of
equalities H.  Intersecting any outer bound for the m-variable class with H
and projecting back to the first 2^n - 1 coordinates gives an outer bound
for the n-variable class.

Source coordinates keep their labels in the extended space, so rows of the
form h(a) = g(a) are implicit and never emitted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import subsets as ss
from .cone import (
    DEFAULT_ROW_CAP,
    Cone,
    ProjectionSpec,
    entropy_labels,
    intersect,
    is_member,
    project,
)
from .entropy import (
    EntropyVector,
    GroupCharacterization,
    RealEntropyVector,
    entropy_from_characterization,
)
from .group import (
    FiniteGroup,
    GroupError,
    Subgroup,
    direct_product,
    enumerate_subgroups,
    normality_witness,
    subgroup_as_group,
)

KINDS = ("adhesive", "join", "sw", "markov")


class MarkovPremiseError(ValueError):
    """The source vector does not satisfy I(X_alpha; X_beta | X_gamma) = 0."""


class NotNormalError(GroupError):
    def __init__(self, group: FiniteGroup, subgroup: Subgroup, witness: int):
        self.witness = witness
        super().__init__(
            f"G_alpha = {subgroup.elements()} is not normal in {group.name}: "
            f"conjugation by element {witness} ({group.labels[witness]}) leaves it"
        )


def _row(m: int, *terms: tuple[int, int]) -> tuple[int, ...]:
    # terms are (mask, coefficient) pairs; repeated masks accumulate
    row = [0] * ((1 << m) - 1)
    for mask, c in terms:
        if mask:
            row[mask - 1] += c
    return tuple(row)


@dataclass(frozen=True)
class ExtensionSpec:
    kind: str
    n: int
    m: int
    alpha: int
    beta: int = 0
    gamma: int = 0
    constraints: Cone = field(default=None, compare=False)

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "n": self.n, "m": self.m, "alpha": ss.elements(self.alpha)}
        if self.beta:
            out["beta"] = ss.elements(self.beta)
        if self.gamma:
            out["gamma"] = ss.elements(self.gamma)
        out["constraints"] = self.constraints.to_dict()
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> ExtensionSpec:
        kind = data["kind"]
        n = int(data["n"])
        a = ss.mask(data["alpha"])
        b = ss.mask(data.get("beta", []))
        c = ss.mask(data.get("gamma", []))
        spec = build_extension(kind, n, a, b, c)
        if "constraints" in data:
            given = Cone.from_dict(data["constraints"])
            if given.labels != spec.constraints.labels:
                raise ValueError("constraint cone labels do not match the extension")
            spec = ExtensionSpec(kind, n, spec.m, a, b, c, given)
        return spec

    def satisfied_by(self, h: EntropyVector | RealEntropyVector) -> bool:
        return is_member(self.constraints, h)


def _check_subset(n: int, s: int, name: str) -> None:
    if s == 0:
        raise ValueError(f"{name} must be nonempty")
    if s >> n:
        raise ValueError(f"{name} = {ss.label(s)} is not a subset of 1..{n}")


def adhesive_constraints(n: int, alpha) -> ExtensionSpec:
    """Two copies of X_1..X_n glued along alpha, conditionally independent given X_alpha.

    Rows: h(i, n+i) = h(i) and h(n+i) = h(i) for i in alpha; h(shift b) = h(b)
    for every nonempty b; h(N) + h(N') = h(N u N') + h(alpha).
    """
    a = ss.as_mask(alpha)
    _check_subset(n, a, "alpha")
    m = 2 * n
    rows = []
    for i in ss.elements(a):
        bit = 1 << (i - 1)
        rows.append(_row(m, (bit | bit << n, 1), (bit, -1)))
        rows.append(_row(m, (bit << n, 1), (bit, -1)))
    for b in ss.nonempty_subsets(n):
        rows.append(_row(m, (b << n, 1), (b, -1)))
    N = ss.full(n)
    rows.append(_row(m, (N, 1), (N << n, 1), (ss.full(m), -1), (a, -1)))
    return ExtensionSpec("adhesive", n, m, a, constraints=Cone(entropy_labels(m), (), tuple(rows)))


def join_extension_constraints(n: int, alpha, beta) -> ExtensionSpec:
    """New variable X_{n+1} = X_alpha * X_beta (common part of two disjoint blocks)."""
    a, b = ss.as_mask(alpha), ss.as_mask(beta)
    _check_subset(n, a, "alpha")
    _check_subset(n, b, "beta")
    if a & b:
        raise ValueError("alpha and beta must be disjoint")
    m = n + 1
    x = 1 << n
    rows = (
        _row(m, (x | a, 1), (a, -1)),
        _row(m, (x | b, 1), (b, -1)),
        _row(m, (x | a, 1), (x | b, 1), (x, -1), (a | b, -1)),
    )
    return ExtensionSpec("join", n, m, a, b, constraints=Cone(entropy_labels(m), (), rows))


def sw_extension_constraints(n: int, alpha, beta) -> ExtensionSpec:
    """New X_{n+1}: a function of X_alpha of entropy H(X_alpha | X_beta) that with X_beta recovers X_alpha."""
    a, b = ss.as_mask(alpha), ss.as_mask(beta)
    _check_subset(n, a, "alpha")
    _check_subset(n, b, "beta")
    m = n + 1
    x = 1 << n
    rows = (
        _row(m, (x | a, 1), (a, -1)),
        _row(m, (x, 1), (a | b, -1), (b, 1)),
        _row(m, (x | b, 1), (a | b, -1)),
    )
    return ExtensionSpec("sw", n, m, a, b, constraints=Cone(entropy_labels(m), (), rows))


def markov_premise_holds(g: EntropyVector | RealEntropyVector, alpha, beta, gamma) -> bool:
    """g(a,c) + g(b,c) = g(c) + g(a,b,c), i.e. X_alpha -> X_gamma -> X_beta."""
    a, b, c = ss.as_mask(alpha), ss.as_mask(beta), ss.as_mask(gamma)
    if isinstance(g, EntropyVector):
        return g.index(a | c) * g.index(b | c) == g.index(c) * g.index(a | b | c)
    lhs = g.value(a | c) + g.value(b | c)
    rhs = g.value(c) + g.value(a | b | c)
    return abs(lhs - rhs) <= 1e-9


def markov_double_extension_constraints(n: int, alpha, beta, gamma, source=None) -> ExtensionSpec:
    """Two new variables for the source-coding-with-side-information extension.

    When ``source`` is given, the Markov premise is checked on it first.
    """
    a, b, c = ss.as_mask(alpha), ss.as_mask(beta), ss.as_mask(gamma)
    for s, name in ((a, "alpha"), (b, "beta"), (c, "gamma")):
        _check_subset(n, s, name)
    if a & b or a & c or b & c:
        raise ValueError("alpha, beta and gamma must be pairwise disjoint")
    if source is not None:
        if source.n != n:
            raise ValueError("source vector dimension does not match n")
        if not markov_premise_holds(source, a, b, c):
            raise MarkovPremiseError(f"I(X_{ss.label(a)}; X_{ss.label(b)} | X_{ss.label(c)}) != 0 on the source vector")
    m = n + 2
    x1, x2 = 1 << n, 1 << (n + 1)
    rows = (
        _row(m, (x1 | a, 1), (a, -1)),
        _row(m, (x2 | c, 1), (c, -1)),
        _row(m, (x1, 1), (a | c, -1), (c, 1)),
        _row(m, (x2, 1), (b, -1), (c, -1), (b | c, 1)),
        _row(m, (x1 | x2 | a, 1), (x1 | x2, -1)),
    )
    return ExtensionSpec("markov", n, m, a, b, c, constraints=Cone(entropy_labels(m), (), rows))


def build_extension(kind: str, n: int, alpha, beta=0, gamma=0, source=None) -> ExtensionSpec:
    kind = kind.lower()
    if kind == "adhesive":
        return adhesive_constraints(n, alpha)
    if kind == "join":
        return join_extension_constraints(n, alpha, beta)
    if kind == "sw":
        return sw_extension_constraints(n, alpha, beta)
    if kind == "markov":
        return markov_double_extension_constraints(n, alpha, beta, gamma, source)
    raise ValueError(f"unknown extension kind {kind!r}; expected one of {KINDS}")


def parse_extension(text: str) -> ExtensionSpec:
    """``kind:n:alpha[:beta[:gamma]]`` with subsets as labels, e.g. ``join:2:1:2``."""
    parts = text.split(":")
    if len(parts) < 3:
        raise ValueError(f"extension spec {text!r} needs at least kind:n:alpha")
    kind, n = parts[0], int(parts[1])
    subsets = [ss.parse_label(p) for p in parts[2:]]
    return build_extension(kind, n, *subsets)


def bound_by_extension(
    n: int,
    spec: ExtensionSpec,
    outer: Cone,
    cap: int = DEFAULT_ROW_CAP,
    prune: bool = False,
) -> Cone:
    """Project (outer n H) onto the source coordinates."""
    if spec.n != n:
        raise ValueError(f"extension source dimension {spec.n} differs from n={n}")
    if outer.dim != (1 << spec.m) - 1:
        raise ValueError(f"outer cone has dimension {outer.dim}, extension needs {(1 << spec.m) - 1}")
    combined = intersect(outer, spec.constraints)
    return project(combined, ProjectionSpec(entropy_labels(n)), cap=cap, prune=prune)


# explicit adhesive construction for groups


@dataclass(frozen=True)
class AdhesiveWitness:
    source: GroupCharacterization
    alpha: int
    K: FiniteGroup
    pairs: np.ndarray
    """pairs[k] = (a, b) in G x G for element k of K; T1 and T2 are its columns."""
    H: tuple[Subgroup, ...]
    L: tuple[Subgroup, ...]
    checks: dict[str, bool]

    @property
    def T1(self) -> np.ndarray:
        return self.pairs[:, 0]

    @property
    def T2(self) -> np.ndarray:
        return self.pairs[:, 1]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


class AdhesiveVerificationError(RuntimeError):
    pass


def adhesive_group_extension(
    c: GroupCharacterization, alpha, strict: bool = True
) -> tuple[AdhesiveWitness, GroupCharacterization]:
    """Build K = {(a, b) : a G_alpha = b G_alpha} with H_i = T1^-1(G_i), L_i = T2^-1(G_i).

    Requires G_alpha normal in G.  Every structural property is verified by
    counting; with ``strict`` any failure raises AdhesiveVerificationError.
    """
    g = c.group
    a_mask = ss.as_mask(alpha)
    _check_subset(c.n, a_mask, "alpha")
    g_alpha = c.intersection(a_mask)
    bad = normality_witness(g, g_alpha)
    if bad is not None:
        raise NotNormalError(g, g_alpha, bad)

    order = g.order
    in_alpha = np.zeros(order, dtype=bool)
    in_alpha[g.indices(g_alpha)] = True
    # (a, b) in K iff a^-1 b in G_alpha
    quotient = g.table[g.inverse[:, None], np.arange(order)[None, :]]
    k_flags = in_alpha[quotient].ravel()
    gg = direct_product(g, g)
    k_sub = Subgroup(sum(1 << int(i) for i in np.flatnonzero(k_flags)))
    checks: dict[str, bool] = {}
    checks["K closed in GxG"] = gg.is_subgroup(k_sub)
    if not checks["K closed in GxG"]:
        raise AdhesiveVerificationError("K is not closed under the componentwise product")
    k_group, k_idx = subgroup_as_group(gg, k_sub, name=f"K({g.name},{ss.label(a_mask)})")
    # full axiom check on K's own table
    FiniteGroup(k_group.table, identity=k_group.identity, check=True)
    checks["K group axioms"] = True
    pairs = np.stack([k_idx // order, k_idx % order], axis=1)
    K = k_group.order
    checks["|K| = |G||G_alpha|"] = K == order * g_alpha.order

    def pre(h: Subgroup, side: int) -> Subgroup:
        member = np.zeros(order, dtype=bool)
        member[g.indices(h)] = True
        flags = member[pairs[:, side]]
        return Subgroup(sum(1 << int(i) for i in np.flatnonzero(flags)))

    H = tuple(pre(h, 0) for h in c.subgroups)
    L = tuple(pre(h, 1) for h in c.subgroups)

    all_subs = enumerate_subgroups(g)
    # membership of every subgroup of G as a boolean row, then pulled back to K on each side
    member = np.zeros((len(all_subs), order), dtype=bool)
    for r, sub in enumerate(all_subs):
        member[r, g.indices(sub)] = True
    back = member[:, pairs[:, 0]], member[:, pairs[:, 1]]
    sizes = member.sum(axis=1)
    checks["P1"] = bool(np.all(back[0].sum(axis=1) * order == K * sizes)) and bool(
        np.all(back[1].sum(axis=1) * order == K * sizes)
    )
    checks["P2"] = all(H[j - 1] == L[j - 1] for j in ss.elements(a_mask))
    alpha_member = np.zeros(order, dtype=bool)
    alpha_member[g.indices(g_alpha)] = True
    meet = member & alpha_member  # rows: sub n G_alpha
    meet_sizes = meet.sum(axis=1)
    a_side = alpha_member[pairs[:, 0]], alpha_member[pairs[:, 1]]
    p3 = True
    for side in (0, 1):
        lhs = back[side] & a_side[side]
        rhs = meet[:, pairs[:, side]]
        p3 &= bool(np.array_equal(lhs, rhs)) and bool(np.all(lhs.sum(axis=1) == meet_sizes * g_alpha.order))
    checks["P3"] = p3
    # P4: T1^-1(H) n T1^-1(G_alpha) n T2^-1(L) = (H n G_alpha) x (L n G_alpha) inside K
    left = back[0] & a_side[0]
    right = back[1]
    lhs = left[:, None, :] & right[None, :, :]
    rhs = meet[:, pairs[:, 0]][:, None, :] & meet[:, pairs[:, 1]][None, :, :]
    p4 = bool(np.array_equal(lhs, rhs))
    p4 &= bool(np.all(lhs.sum(axis=2) == meet_sizes[:, None] * meet_sizes[None, :]))
    checks["P4"] = p4

    extended = GroupCharacterization(k_group, H + L)
    h_vec = entropy_from_characterization(extended)
    g_vec = entropy_from_characterization(c)
    n = c.n
    checks["extends g"] = all(h_vec.index(m) == g_vec.index(m) for m in ss.nonempty_subsets(n))
    checks["adhesive rows"] = is_member(adhesive_constraints(n, a_mask).constraints, h_vec)

    N = ss.full(n)
    g_n = c.intersection(N).order
    h_n = extended.intersection(N).order
    l_n = extended.intersection(N << n).order
    h_a = extended.intersection(a_mask).order
    hl_n = extended.intersection(ss.full(2 * n)).order
    chain = [
        Fraction(K, h_n) * Fraction(K, l_n),
        Fraction(order, g_n) ** 2,
        Fraction(order, g_alpha.order) * Fraction(order * g_alpha.order, g_n * g_n),
        Fraction(K, h_a) * Fraction(K, hl_n),
    ]
    checks["index chain"] = all(v == chain[0] for v in chain)

    witness = AdhesiveWitness(c, a_mask, k_group, pairs, H, L, checks)
    if strict and not witness.ok:
        failed = [k for k, v in checks.items() if not v]
        raise AdhesiveVerificationError(f"adhesive construction failed checks: {failed}")
    return witness, extended
