"""Exact polyhedral cones in H-representation and Fourier-Motzkin projection.

A cone is ``{x : A x >= 0, E x = 0}`` over labelled coordinates.  Rows are
integer tuples normalized to gcd 1; equality rows additionally have a
positive leading coefficient.  All arithmetic is exact (Python ints and
``Fraction``).
"""

from __future__ import annotations

import itertools
import json
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from . import subsets as ss
from .entropy import EntropyVector, RealEntropyVector
from .inequality import FLOAT_TOL, LinearFunctional

DEFAULT_ROW_CAP = 200_000

Row = tuple[int, ...]


class ConeError(ValueError):
    """Label or dimension mismatch between cones, rows or points."""


class EliminationCapExceeded(RuntimeError):
    """Fourier-Motzkin produced more rows than the configured cap."""


def _normalize(row: Iterable, equality: bool) -> Row | None:
    vals = [Fraction(v) for v in row]
    denom = math.lcm(*(v.denominator for v in vals)) if vals else 1
    ints = [int(v * denom) for v in vals]
    g = math.gcd(*ints)
    if g == 0:
        return None
    ints = [v // g for v in ints]
    if equality:
        lead = next(v for v in ints if v)
        if lead < 0:
            ints = [-v for v in ints]
    return tuple(ints)


def _dedupe(ineqs: Iterable[Row], eqs: Iterable[Row]) -> tuple[list[Row], list[Row]]:
    """Drop zero rows and duplicates; an opposite inequality pair becomes an equality."""
    eq_out: list[Row] = []
    eq_seen: set[Row] = set()
    for r in eqs:
        r = _normalize(r, True)
        if r is not None and r not in eq_seen:
            eq_seen.add(r)
            eq_out.append(r)
    ineq_set: dict[Row, None] = {}
    for r in ineqs:
        r = _normalize(r, False)
        if r is not None:
            ineq_set.setdefault(r, None)
    ineq_out = []
    for r in ineq_set:
        neg = tuple(-v for v in r)
        if neg in ineq_set:
            e = _normalize(r, True)
            if e not in eq_seen:
                eq_seen.add(e)
                eq_out.append(e)
            continue
        if _normalize(r, True) in eq_seen:
            continue
        ineq_out.append(r)
    return ineq_out, eq_out


@dataclass(frozen=True)
class Cone:
    labels: tuple[str, ...]
    inequalities: tuple[Row, ...] = ()
    equalities: tuple[Row, ...] = ()

    def __post_init__(self):
        labels = tuple(str(lab) for lab in self.labels)
        if len(set(labels)) != len(labels):
            raise ConeError("duplicate coordinate labels")
        d = len(labels)
        for r in itertools.chain(self.inequalities, self.equalities):
            if len(r) != d:
                raise ConeError(f"row {r} does not have {d} coefficients")
        ineqs, eqs = _dedupe(self.inequalities, self.equalities)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "inequalities", tuple(ineqs))
        object.__setattr__(self, "equalities", tuple(eqs))

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def num_rows(self) -> int:
        return len(self.inequalities) + len(self.equalities)

    def position(self, label) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise ConeError(f"no coordinate labelled {label!r}") from None

    def reordered(self, labels: Sequence[str]) -> Cone:
        labels = [str(x) for x in labels]
        if sorted(labels) != sorted(self.labels):
            raise ConeError("label mismatch")
        perm = [self.position(lab) for lab in labels]
        return Cone(
            tuple(labels),
            tuple(tuple(r[i] for i in perm) for r in self.inequalities),
            tuple(tuple(r[i] for i in perm) for r in self.equalities),
        )

    # formats

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "inequalities": [list(r) for r in self.inequalities],
            "equalities": [list(r) for r in self.equalities],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> Cone:
        return cls(
            tuple(data["labels"]),
            tuple(tuple(r) for r in data.get("inequalities", [])),
            tuple(tuple(r) for r in data.get("equalities", [])),
        )

    def to_text(self) -> str:
        lines = [" ".join(self.labels)]
        lines += [" ".join(map(str, r)) + " >= 0" for r in self.inequalities]
        lines += [" ".join(map(str, r)) + " = 0" for r in self.equalities]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Cone:
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ConeError("empty cone file")
        labels = tuple(lines[0].split())
        ineqs, eqs = [], []
        for ln in lines[1:]:
            ln = ln.replace("≥", ">=")
            if ">=" in ln:
                lhs, _, rhs = ln.partition(">=")
                target = ineqs
            elif "=" in ln:
                lhs, _, rhs = ln.partition("=")
                target = eqs
            else:
                raise ConeError(f"row without '>=' or '=' marker: {ln!r}")
            if rhs.strip() not in ("", "0"):
                raise ConeError("cone rows must have right-hand side 0")
            target.append(tuple(int(v) for v in lhs.split()))
        return cls(labels, tuple(ineqs), tuple(eqs))

    @classmethod
    def parse(cls, text: str) -> Cone:
        stripped = text.lstrip()
        if stripped.startswith("{"):
            return cls.from_dict(json.loads(text))
        return cls.from_text(text)


def full_space(labels: Sequence[str]) -> Cone:
    return Cone(tuple(labels))


def entropy_labels(n: int) -> tuple[str, ...]:
    return tuple(ss.labels(n))


def cone_from_suite(
    suite: Sequence[LinearFunctional],
    equalities: Sequence[LinearFunctional] = (),
    n: int | None = None,
) -> Cone:
    """Cone of vectors satisfying every functional (and equality) of the suite."""
    dims = {f.n for f in list(suite) + list(equalities)}
    if n is None:
        if not dims:
            raise ConeError("cannot infer the dimension of an empty suite")
        if len(dims) > 1:
            raise ConeError(f"inconsistent dimensions {sorted(dims)}")
        n = dims.pop()
    elif any(d != n for d in dims):
        raise ConeError("functional dimension does not match n")

    def dense(f: LinearFunctional) -> Row:
        return tuple(f.integer_coeffs.get(m, 0) for m in ss.nonempty_subsets(n))

    return Cone(entropy_labels(n), tuple(dense(f) for f in suite), tuple(dense(f) for f in equalities))


def gamma(n: int) -> Cone:
    """The polymatroid cone Gamma_n from the elemental inequalities."""
    from .inequality import elemental_shannon_inequalities

    return cone_from_suite(elemental_shannon_inequalities(n))


def intersect(c1: Cone, c2: Cone) -> Cone:
    if c1.labels != c2.labels:
        c2 = c2.reordered(c1.labels)
    return Cone(c1.labels, c1.inequalities + c2.inequalities, c1.equalities + c2.equalities)


# elimination


def _combine(p: Row, n: Row, j: int) -> list[int]:
    a, b = p[j], -n[j]
    return [b * x + a * y for x, y in zip(p, n)]


def _drop(row: Sequence[int], j: int) -> Row:
    return tuple(row[:j]) + tuple(row[j + 1 :])


def _substitute(row: Row, eq: Row, j: int) -> list[int]:
    # |e_j| r - sign(e_j) r_j e keeps the direction of an inequality row
    ej, rj = eq[j], row[j]
    s = 1 if ej > 0 else -1
    return [abs(ej) * x - s * rj * y for x, y in zip(row, eq)]


def eliminate(c: Cone, coordinate, cap: int = DEFAULT_ROW_CAP) -> Cone:
    """Project out one coordinate (exact shadow of the cone)."""
    j = c.position(coordinate)
    ineqs, eqs, _ = _eliminate_rows(
        [(r, frozenset([i])) for i, r in enumerate(c.inequalities)], list(c.equalities), j, cap, None
    )
    return Cone(_drop(c.labels, j), tuple(r for r, _ in ineqs), tuple(eqs))


def _eliminate_rows(ineqs, eqs, j, cap, max_history):
    """One elimination step on rows with combination histories.

    Returns new inequality (row, history) pairs, equality rows, and whether
    the step was a proper Fourier-Motzkin combination (not a substitution).
    """
    pivot = next((e for e in eqs if e[j]), None)
    if pivot is not None:
        new_eqs = [_drop(_substitute(e, pivot, j), j) for e in eqs if e is not pivot]
        new_ineqs = [(_drop(_substitute(r, pivot, j), j) if r[j] else _drop(r, j), h) for r, h in ineqs]
        return _clean(new_ineqs, new_eqs), _clean_eqs(new_eqs), False
    pos = [(r, h) for r, h in ineqs if r[j] > 0]
    neg = [(r, h) for r, h in ineqs if r[j] < 0]
    zero = [(_drop(r, j), h) for r, h in ineqs if r[j] == 0]
    if len(pos) * len(neg) + len(zero) > cap:
        raise EliminationCapExceeded(
            f"eliminating coordinate {j} would create {len(pos) * len(neg) + len(zero)} rows (cap {cap})"
        )
    combos = []
    for p, hp in pos:
        for q, hq in neg:
            h = hp | hq
            if max_history is not None and len(h) > max_history:
                continue
            combos.append((_drop(_combine(p, q, j), j), h))
    new_eqs = [_drop(e, j) for e in eqs]
    return _clean(zero + combos, new_eqs), _clean_eqs(new_eqs), True


def _clean_eqs(eqs):
    """Normalized, duplicate-free equality rows."""
    _, out = _dedupe([], eqs)
    return out


def _clean(pairs, eqs):
    """Normalize inequality rows, keep the smallest history per duplicate."""
    eq_set = set(_clean_eqs(eqs))
    best: dict[Row, frozenset] = {}
    for r, h in pairs:
        r = _normalize(r, False)
        if r is None:
            continue
        if r in best and len(best[r]) <= len(h):
            continue
        best[r] = h
    out = []
    for r, h in best.items():
        if _normalize(r, True) in eq_set:
            continue
        out.append((r, h))
    return out


def _elimination_cost(ineqs, eqs, j) -> tuple[int, int]:
    if any(e[j] for e in eqs):
        return (-1, 0)
    p = sum(1 for r, _ in ineqs if r[j] > 0)
    q = sum(1 for r, _ in ineqs if r[j] < 0)
    return (p * q - p - q, 0)


@dataclass(frozen=True)
class ProjectionSpec:
    keep: tuple[str, ...]
    rename: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "keep", tuple(str(k) for k in self.keep))
        if not self.keep:
            raise ConeError("projection must keep at least one coordinate")


def project(
    c: Cone,
    spec: ProjectionSpec | Sequence[str],
    order: Sequence[str] | None = None,
    cap: int = DEFAULT_ROW_CAP,
    prune: bool = False,
) -> Cone:
    """Fourier-Motzkin projection onto ``spec.keep``.

    Coordinates are dropped one by one: equality substitution first, then
    the coordinate with the fewest new pairwise rows (ties by label order),
    unless an explicit ``order`` is given.  Rows combining more than k + 1
    original inequalities after k eliminations are dropped (Chernikov's rule).
    ``prune`` instead runs exact LP redundancy removal after every step.
    """
    if not isinstance(spec, ProjectionSpec):
        spec = ProjectionSpec(tuple(spec))
    for lab in spec.keep:
        c.position(lab)
    labels = list(c.labels)
    drop = [lab for lab in labels if lab not in spec.keep]
    if order is not None:
        if sorted(map(str, order)) != sorted(drop):
            raise ConeError("elimination order must list exactly the dropped coordinates")
        queue = [str(x) for x in order]
    else:
        queue = None
    ineqs = [(r, frozenset([i])) for i, r in enumerate(c.inequalities)]
    eqs = list(c.equalities)
    steps = 0
    remaining = list(drop)
    while remaining:
        if queue is not None:
            lab = queue.pop(0)
        else:
            lab = min(remaining, key=lambda x: (_elimination_cost(ineqs, eqs, labels.index(x)), labels.index(x)))
        remaining.remove(lab)
        j = labels.index(lab)
        # the history bound is only valid for plain FM, so pruning switches it off
        limit = None if prune else steps + 2
        ineqs, eqs, _ = _eliminate_rows(ineqs, eqs, j, cap, limit)
        steps += 1
        labels.pop(j)
        if prune:
            pruned = remove_redundant(Cone(tuple(labels), tuple(r for r, _ in ineqs), tuple(eqs)), full=True)
            keep_rows = set(pruned.inequalities)
            ineqs = [(r, h) for r, h in ineqs if r in keep_rows]
            eqs = list(pruned.equalities)
    out = Cone(tuple(labels), tuple(r for r, _ in ineqs), tuple(eqs)).reordered(spec.keep)
    if spec.rename:
        out = Cone(tuple(spec.rename.get(lab, lab) for lab in out.labels), out.inequalities, out.equalities)
    return out


# exact feasibility


def _phase_one(a: list[list[Fraction]], b: list[Fraction]) -> bool:
    """Is {y >= 0 : a y = b} nonempty?  Dense tableau simplex, Bland's rule."""
    m = len(a)
    if m == 0:
        return True
    nvar = len(a[0])
    rows = []
    for ai, bi in zip(a, b):
        if bi < 0:
            ai, bi = [-v for v in ai], -bi
        rows.append(list(ai) + [Fraction(0)] * m + [bi])
    for i in range(m):
        rows[i][nvar + i] = Fraction(1)
    basis = [nvar + i for i in range(m)]
    width = nvar + m
    # reduced costs of phase-one objective (sum of artificials)
    cost = [Fraction(0)] * (width + 1)
    for i in range(m):
        for k in range(width + 1):
            cost[k] -= rows[i][k]
    for i in range(m):
        cost[nvar + i] += 1
    while True:
        enter = next((k for k in range(width) if cost[k] < 0), None)
        if enter is None:
            break
        best, leave = None, None
        for i in range(m):
            if rows[i][enter] > 0:
                ratio = rows[i][width] / rows[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # unbounded direction cannot occur: the objective is bounded below by 0
            raise RuntimeError("phase-one simplex reported unboundedness")
        piv = rows[leave][enter]
        rows[leave] = [v / piv for v in rows[leave]]
        for i in range(m):
            if i != leave and rows[i][enter]:
                f = rows[i][enter]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[leave])]
        if cost[enter]:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, rows[leave])]
        basis[leave] = enter
    return cost[width] == 0


def _in_dual(ineqs: Sequence[Row], eqs: Sequence[Row], target: Row) -> bool:
    """Farkas: is target = sum l_i a_i + sum m_j e_j with l >= 0, m free?"""
    d = len(target)
    cols = [list(r) for r in ineqs] + [list(r) for r in eqs] + [[-v for v in r] for r in eqs]
    a = [[Fraction(col[k]) for col in cols] for k in range(d)]
    if not cols:
        return not any(target)
    return _phase_one(a, [Fraction(v) for v in target])


def _exists_point(ineqs: Sequence[Row], eqs: Sequence[Row], target: Row, value: int) -> bool:
    """Is there x with ineqs.x >= 0, eqs.x = 0 and target.x = value (value = +1 or -1)?

    The cone is homogeneous, so this holds iff -value * target is not a valid
    inequality for it, which Farkas' lemma turns into a d-row feasibility problem.
    """
    if value not in (1, -1):
        raise ValueError("value must be +1 or -1")
    return not _in_dual(ineqs, eqs, tuple(-value * v for v in target))


def implies(c: Cone, row: Sequence[int], equality: bool = False) -> bool:
    """Does every point of ``c`` satisfy ``row . x >= 0`` (or ``= 0``)?"""
    row = tuple(int(v) for v in row)
    if len(row) != c.dim:
        raise ConeError("row length differs from cone dimension")
    if not any(row):
        return True
    if _exists_point(c.inequalities, c.equalities, row, -1):
        return False
    return not (equality and _exists_point(c.inequalities, c.equalities, row, 1))


def contains(outer: Cone, inner: Cone) -> bool:
    """inner is a subset of outer (every row of outer implied by inner)."""
    if outer.labels != inner.labels:
        inner = inner.reordered(outer.labels)
    return all(implies(inner, r) for r in outer.inequalities) and all(
        implies(inner, r, equality=True) for r in outer.equalities
    )


def equivalent(c1: Cone, c2: Cone) -> bool:
    return contains(c1, c2) and contains(c2, c1)


def _rank(rows: Sequence[Row]) -> int:
    work = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(work[0]) if work else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        for i in range(len(work)):
            if i != rank and work[i][col]:
                f = work[i][col] / work[rank][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[rank])]
        rank += 1
    return rank


def remove_redundant(c: Cone, full: bool = False) -> Cone:
    """Drop duplicate rows and positive multiples; with ``full`` also every
    inequality implied by the remaining rows (exact LP) and linearly
    dependent equalities.  The solution set never changes.
    """
    if not full:
        return Cone(c.labels, c.inequalities, c.equalities)
    eqs: list[Row] = []
    for e in c.equalities:
        if _rank(eqs + [e]) > len(eqs):
            eqs.append(e)
    kept = list(c.inequalities)
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1 :]
        if not _exists_point(others, eqs, kept[i], -1):
            kept.pop(i)
        else:
            i += 1
    return Cone(c.labels, tuple(kept), tuple(eqs))


# membership


def _point_values(c: Cone, point) -> tuple[str, list]:
    if isinstance(point, (EntropyVector, RealEntropyVector)):
        labels = entropy_labels(point.n)
        if set(labels) != set(c.labels):
            raise ConeError("point labels do not match the cone")
        raw = point.indices if isinstance(point, EntropyVector) else point.values
        by_label = dict(zip(labels, raw))
        vals = [by_label[lab] for lab in c.labels]
        return ("log" if isinstance(point, EntropyVector) else "float"), vals
    if isinstance(point, Mapping):
        if set(map(str, point)) != set(c.labels):
            raise ConeError("point labels do not match the cone")
        point = [point[lab] if lab in point else point[int(lab)] for lab in c.labels]
    vals = list(point)
    if len(vals) != c.dim:
        raise ConeError("point dimension does not match the cone")
    if all(isinstance(v, (int, Fraction)) for v in vals):
        return "exact", vals
    return "float", [float(v) for v in vals]


def _row_sign(row: Row, kind: str, vals: list) -> int:
    if kind == "log":
        lhs = rhs = 1
        for d, k in zip(row, vals):
            if d > 0:
                lhs *= k**d
            elif d < 0:
                rhs *= k ** (-d)
        return (lhs > rhs) - (lhs < rhs)
    if kind == "exact":
        s = sum(d * v for d, v in zip(row, vals) if d)
        return (s > 0) - (s < 0)
    s = math.fsum(d * v for d, v in zip(row, vals) if d)
    return 0 if abs(s) <= FLOAT_TOL else (1 if s > 0 else -1)


def is_member(c: Cone, point) -> bool:
    """Membership of an EntropyVector (exact, log domain), a RealEntropyVector
    (1e-9 tolerance) or a plain coordinate sequence/mapping (exact for
    ints and Fractions)."""
    kind, vals = _point_values(c, point)
    return all(_row_sign(r, kind, vals) >= 0 for r in c.inequalities) and all(
        _row_sign(r, kind, vals) == 0 for r in c.equalities
    )
