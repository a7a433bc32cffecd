"""Linear information functionals sum_a c_a g(a) >= 0 and their exact evaluation.

On a group-induced vector, g(a) = log k_a with integer k_a, so the sign of
a functional with integer coefficients d_a is the sign of

    prod_{d_a > 0} k_a^{d_a}  -  prod_{d_a < 0} k_a^{-d_a},

which Python integers decide without rounding.
"""

from __future__ import annotations

import itertools
import json
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from . import subsets as ss
from .entropy import EntropyVector, RealEntropyVector

FLOAT_TOL = 1e-9


class LinearFunctional:
    """Coefficients on nonempty subsets of {1..n}; the empty set carries no weight."""

    def __init__(self, n: int, coeffs: Mapping, name: str = ""):
        self.n = n
        clean: dict[int, Fraction] = {}
        for key, c in coeffs.items():
            m = ss.as_mask(key)
            if m == 0:
                continue
            if m >= 1 << n:
                raise ValueError(f"subset {ss.label(m)} outside 1..{n}")
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, Fraction(0)) + c
        self.coeffs = {m: c for m, c in sorted(clean.items()) if c}
        if not self.coeffs:
            raise ValueError("functional has no nonzero coefficient")
        self.name = name
        denom = math.lcm(*(c.denominator for c in self.coeffs.values()))
        self.integer_coeffs = {m: int(c * denom) for m, c in self.coeffs.items()}

    def __repr__(self) -> str:
        return f"LinearFunctional({self.name or self.expression()})"

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearFunctional) and (self.n, self.coeffs) == (other.n, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.coeffs.items())))

    def __add__(self, other: LinearFunctional) -> LinearFunctional:
        merged = dict(self.coeffs)
        for m, c in other.coeffs.items():
            merged[m] = merged.get(m, 0) + c
        return LinearFunctional(max(self.n, other.n), merged)

    def __mul__(self, k) -> LinearFunctional:
        return LinearFunctional(self.n, {m: c * k for m, c in self.coeffs.items()}, self.name)

    __rmul__ = __mul__

    def __neg__(self) -> LinearFunctional:
        return self * -1

    def __sub__(self, other: LinearFunctional) -> LinearFunctional:
        return self + (-other)

    def named(self, name: str) -> LinearFunctional:
        return LinearFunctional(self.n, self.coeffs, name)

    def dense(self) -> list[Fraction]:
        return [self.coeffs.get(m, Fraction(0)) for m in ss.nonempty_subsets(self.n)]

    def expression(self) -> str:
        terms = []
        for m, c in self.coeffs.items():
            sgn = "-" if c < 0 else "+"
            mag = abs(c)
            coef = "" if mag == 1 else f"{mag}"
            terms.append(f"{sgn} {coef}g({ss.label(m)})")
        text = " ".join(terms)
        return (text.removeprefix("+ ")) + " >= 0"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "coeffs": {ss.label(m): str(c) for m, c in self.coeffs.items()},
            "name": self.name,
        }

    @classmethod
    def from_dict(cls, data: dict) -> LinearFunctional:
        return cls(int(data["n"]), {k: Fraction(v) for k, v in data["coeffs"].items()}, data.get("name", ""))


def entropy(n: int, a, c=0) -> LinearFunctional:
    """H(X_a | X_c)."""
    a, c = ss.as_mask(a), ss.as_mask(c)
    return LinearFunctional(n, {a | c: 1, c: -1})


def mutual_information(n: int, a, b, c=0) -> LinearFunctional:
    """I(X_a; X_b | X_c) = g(ac) + g(bc) - g(abc) - g(c)."""
    a, b, c = ss.as_mask(a), ss.as_mask(b), ss.as_mask(c)
    coeffs: dict[int, Fraction] = {}
    for m, k in ((a | c, 1), (b | c, 1), (a | b | c, -1), (c, -1)):
        coeffs[m] = coeffs.get(m, 0) + k
    return LinearFunctional(n, coeffs)


def elemental_shannon_inequalities(n: int) -> list[LinearFunctional]:
    """Elemental inequalities defining the polymatroid cone Gamma_n.

    H(X_i | X_{N - i}) >= 0 for each i, then I(X_i; X_j | X_K) >= 0 for
    i < j and K within N - {i, j}: n + C(n, 2) 2^(n-2) rows.
    """
    if not 1 <= n <= 6:
        raise ValueError("elemental inequalities supported for 1 <= n <= 6")
    N = ss.full(n)
    out = []
    for i in range(1, n + 1):
        bit = 1 << (i - 1)
        out.append(entropy(n, bit, N & ~bit).named(f"H({i}|{ss.label(N & ~bit) or '-'})"))
    for i, j in itertools.combinations(range(1, n + 1), 2):
        rest = N & ~(1 << (i - 1)) & ~(1 << (j - 1))
        ks = [0] + sorted(ss.submasks(rest))
        for k in ks:
            name = f"I({i};{j}|{ss.label(k)})" if k else f"I({i};{j})"
            out.append(mutual_information(n, 1 << (i - 1), 1 << (j - 1), k).named(name))
    return out


def ingleton_functional() -> LinearFunctional:
    """g12 + g13 + g14 + g23 + g24 - g1 - g2 - g34 - g123 - g124 >= 0."""
    plus = ["12", "13", "14", "23", "24"]
    minus = ["1", "2", "34", "123", "124"]
    return LinearFunctional(4, {**{k: 1 for k in plus}, **{k: -1 for k in minus}}, "ingleton")


def zhang_yeung_functional() -> LinearFunctional:
    """I(1;2) + I(1;34) + 3 I(3;4|1) + I(3;4|2) - 2 I(3;4) >= 0.

    The Zhang-Yeung (1998) non-Shannon inequality with A, B, C, D = X1..X4.
    """
    mi = mutual_information
    f = mi(4, 1, 2) + mi(4, 1, "34") + 3 * mi(4, 4, 8, 1) + mi(4, 4, 8, 2) - 2 * mi(4, 4, 8)
    return f.named("zhang-yeung")


@dataclass(frozen=True)
class ExactEvaluation:
    sign: int
    lhs: int | Fraction
    """Product of k_a^{d_a} over positive coefficients."""
    rhs: int | Fraction
    """Product of k_a^{-d_a} over negative coefficients."""


def _exact_value(g, m: int):
    if isinstance(g, EntropyVector):
        return g.index(m)
    return g.ratio(m)


def evaluate_exact(f: LinearFunctional, g: EntropyVector | RealEntropyVector) -> ExactEvaluation:
    """Sign of f(g) from big-integer (or exact rational) products; no floats involved.

    RealEntropyVectors are accepted only when they carry exact ratios.
    """
    if f.n != g.n:
        raise ValueError(f"dimension mismatch: functional n={f.n}, vector n={g.n}")
    lhs, rhs = 1, 1
    for m, d in f.integer_coeffs.items():
        k = _exact_value(g, m)
        if d > 0:
            lhs *= k**d
        else:
            rhs *= k ** (-d)
    return ExactEvaluation((lhs > rhs) - (lhs < rhs), lhs, rhs)


def evaluate_float(f: LinearFunctional, g: EntropyVector | RealEntropyVector) -> float:
    """f(g) in bits."""
    if f.n != g.n:
        raise ValueError(f"dimension mismatch: functional n={f.n}, vector n={g.n}")
    if isinstance(g, EntropyVector):
        return math.fsum(float(c) * math.log2(g.index(m)) for m, c in f.coeffs.items())
    return math.fsum(float(c) * g.value(m) for m, c in f.coeffs.items())


@dataclass(frozen=True)
class InequalityResult:
    name: str
    sign: int
    slack_bits: float
    lhs: int | Fraction | None = None
    rhs: int | Fraction | None = None


@dataclass(frozen=True)
class InequalityReport:
    rows: tuple[InequalityResult, ...]

    @property
    def violations(self) -> list[InequalityResult]:
        return [r for r in self.rows if r.sign < 0]

    @property
    def all_nonnegative(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "all_nonnegative": self.all_nonnegative,
            "rows": [
                {
                    "name": r.name,
                    "sign": r.sign,
                    "slack_bits": r.slack_bits,
                    **({"lhs": str(r.lhs), "rhs": str(r.rhs)} if r.lhs is not None else {}),
                }
                for r in self.rows
            ],
        }

    def to_text(self) -> str:
        width = max((len(r.name) for r in self.rows), default=4)
        lines = []
        for r in self.rows:
            mark = {1: "+", 0: "0", -1: "VIOLATED"}[r.sign]
            lines.append(f"{r.name:<{width}}  {r.slack_bits:+.12f}  {mark}")
        return "\n".join(lines)


def check_vector(g: EntropyVector | RealEntropyVector, suite: Sequence[LinearFunctional]) -> InequalityReport:
    """Evaluate a suite: exact signs for EntropyVector, 1e-9-bit tolerance otherwise."""
    rows = []
    for i, f in enumerate(suite):
        name = f.name or f"row{i}"
        slack = evaluate_float(f, g)
        if isinstance(g, EntropyVector):
            ev = evaluate_exact(f, g)
            rows.append(InequalityResult(name, ev.sign, slack, ev.lhs, ev.rhs))
        else:
            sign = 0 if abs(slack) <= FLOAT_TOL else (1 if slack > 0 else -1)
            rows.append(InequalityResult(name, sign, slack))
    return InequalityReport(tuple(rows))


def suite_from_json(text: str) -> list[LinearFunctional]:
    data = json.loads(text)
    items = data if isinstance(data, list) else [data]
    return [LinearFunctional.from_dict(d) for d in items]


def builtin_suite(name: str, n: int | None = None) -> list[LinearFunctional]:
    """``shannon`` (needs n), ``ingleton`` or ``zy``."""
    key = name.lower()
    if key in ("shannon", "elemental", "gamma"):
        if n is None:
            raise ValueError("the shannon suite needs n")
        return elemental_shannon_inequalities(n)
    if key == "ingleton":
        return [ingleton_functional()]
    if key in ("zy", "zhang-yeung", "zhang_yeung"):
        return [zhang_yeung_functional()]
    raise ValueError(f"unknown suite {name!r}")
