import itertools

import numpy as np
import oracles
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupentropy.entropy import entropy_from_characterization
from groupentropy.inequality import evaluate_exact, ingleton_functional
from groupentropy.linear import (
    LinearCharacterization,
    Subspace,
    dual_rank_entropy,
    entropy_from_linear,
    enumerate_subspaces,
    orthogonal_complement,
    random_subspace,
    rref,
    subspace_intersection,
    subspace_sum,
    sw_extension_linear,
    to_group_characterization,
)


def span(p, m, *rows):
    return Subspace.span(p, m, rows)


def test_sum_examples():
    a = span(2, 3, (1, 1, 0))
    assert subspace_sum(a, Subspace.zero(2, 3)) == a
    assert subspace_sum(span(2, 2, (1, 0)), span(2, 2, (0, 1))) == Subspace.full(2, 2)
    assert subspace_sum(a, span(2, 3, (0, 1, 1))).dim == 2


def test_intersection_examples():
    a = span(2, 3, (1, 0, 0), (0, 1, 0))
    assert subspace_intersection(a, a) == a
    assert subspace_intersection(span(2, 2, (1, 0)), span(2, 2, (1, 1))).dim == 0
    assert subspace_intersection(a, span(2, 3, (0, 1, 0), (0, 0, 1))) == span(2, 3, (0, 1, 0))


def test_complement_examples():
    assert orthogonal_complement(Subspace.zero(2, 3)) == Subspace.full(2, 3)
    assert orthogonal_complement(span(2, 2, (1, 0))) == span(2, 2, (0, 1))
    diag = span(2, 2, (1, 1))
    assert orthogonal_complement(diag) == diag


def test_field_checks():
    with pytest.raises(ValueError):
        Subspace.span(4, 2, [])
    with pytest.raises(ValueError):
        Subspace.span(19, 2, [])
    with pytest.raises(ValueError):
        subspace_sum(Subspace.zero(2, 2), Subspace.zero(3, 2))
    with pytest.raises(ValueError):
        rref([[1, 0]], 2, 3)


def test_entropy_examples():
    c = LinearCharacterization(2, 2, (span(2, 2, (1, 0)),))
    assert entropy_from_linear(c).as_dict() == {"1": 2}
    c = LinearCharacterization(2, 2, (span(2, 2, (1, 0)), span(2, 2, (0, 1))))
    assert entropy_from_linear(c).as_dict() == {"1": 2, "2": 2, "12": 4}
    assert dual_rank_entropy(c) == entropy_from_linear(c)
    full = LinearCharacterization(3, 2, (Subspace.full(3, 2),) * 3)
    assert entropy_from_linear(full).is_zero() and dual_rank_entropy(full).is_zero()
    zero = LinearCharacterization(2, 3, (Subspace.zero(2, 3),) * 2)
    assert set(dual_rank_entropy(zero).indices) == {8}
    line = LinearCharacterization(3, 3, (span(3, 3, (1, 2, 0)),))
    assert dual_rank_entropy(line).as_dict() == {"1": 9}


def test_subspace_counts():
    # Gaussian binomial sums: F2^3 has 16 subspaces, F2^4 has 67, F3^3 has 28
    assert len(enumerate_subspaces(2, 3)) == 16
    assert len(enumerate_subspaces(2, 4)) == 67
    assert len(enumerate_subspaces(3, 3)) == 28


def test_enumerated_subspaces_are_canonical_and_distinct():
    subs = enumerate_subspaces(3, 3)
    assert len({w.basis for w in subs}) == len(subs)
    for w in subs:
        assert Subspace.span(3, 3, w.basis) == w


def test_subspace_elements_match_direct_span():
    for w in enumerate_subspaces(3, 2):
        assert set(w.elements()) == oracles.span_set(list(w.basis), 3, 2)
        for v in itertools.product(range(3), repeat=2):
            assert (v in w) == (v in set(w.elements()))


def test_intersection_against_element_sets():
    subs = enumerate_subspaces(2, 4)
    for a, b in itertools.product(subs[::4], subs[::3]):
        inter = subspace_intersection(a, b)
        assert set(inter.elements()) == set(a.elements()) & set(b.elements())
        assert subspace_sum(a, b).dim + inter.dim == a.dim + b.dim


def test_double_complement_and_dimension():
    for p, m in ((2, 4), (3, 3), (5, 2)):
        for w in enumerate_subspaces(p, m):
            perp = orthogonal_complement(w)
            assert perp.dim == m - w.dim
            assert orthogonal_complement(perp) == w
            assert all(sum(x * y for x, y in zip(u, v)) % p == 0 for u in w.basis for v in perp.basis)


def test_duality_exhaustive_small():
    subs = enumerate_subspaces(2, 3)
    for tup in itertools.product(subs, repeat=3):
        c = LinearCharacterization(2, 3, tup)
        assert entropy_from_linear(c) == dual_rank_entropy(c)


@pytest.mark.parametrize("p, m", [(2, 6), (3, 4), (5, 3)])
def test_duality_random_quadruples(p, m):
    rng = np.random.default_rng(p * 100 + m)
    for _ in range(150):
        c = LinearCharacterization(p, m, tuple(random_subspace(p, m, rng) for _ in range(4)))
        assert entropy_from_linear(c) == dual_rank_entropy(c)


def test_linear_agrees_with_group_path():
    subs = enumerate_subspaces(2, 3)
    for tup in itertools.product(subs, repeat=2):
        c = LinearCharacterization(2, 3, tup)
        assert entropy_from_characterization(to_group_characterization(c)) == entropy_from_linear(c)


def test_dual_rank_against_independent_rank():
    rng = np.random.default_rng(11)
    for _ in range(50):
        c = LinearCharacterization(3, 4, tuple(random_subspace(3, 4, rng) for _ in range(3)))
        v = dual_rank_entropy(c)
        for mask in range(1, 8):
            rows = [list(r) for i in range(3) if mask >> i & 1 for r in orthogonal_complement(c.subspaces[i]).basis]
            rank = oracles.gf_rank(rows, 3) if rows else 0
            assert v.index(mask) == 3**rank


def test_sw_extension_example():
    c = LinearCharacterization(2, 3, (span(2, 3, (1, 0, 0)), span(2, 3, (0, 1, 0))))
    ext = sw_extension_linear(c, 1, 2)
    assert ext.subspaces[2] == span(2, 3, (1, 0, 0), (0, 0, 1))


def test_sw_extension_when_sum_is_everything():
    c = LinearCharacterization(2, 2, (span(2, 2, (1, 0)), span(2, 2, (0, 1))))
    assert sw_extension_linear(c, 1, 2).subspaces[2] == c.subspaces[0]


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_sw_extension_conditions(data):
    p = data.draw(st.sampled_from([2, 3]))
    m = data.draw(st.integers(1, 4))
    seed = data.draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    c = LinearCharacterization(p, m, tuple(random_subspace(p, m, rng) for _ in range(3)))
    a = data.draw(st.integers(1, 7))
    b = data.draw(st.integers(1, 7))
    ext = sw_extension_linear(c, a, b)
    wa, wb, wn = c.intersection(a), c.intersection(b), ext.subspaces[3]
    assert subspace_intersection(wn, wb) == subspace_intersection(wa, wb)
    assert subspace_sum(wn, wb) == Subspace.full(p, m)
    h = entropy_from_linear(ext)
    g = entropy_from_linear(c)
    x = 1 << 3
    assert h.index(x | a) == g.index(a)
    assert h.index(x) * g.index(b) == g.index(a | b)
    assert h.index(x | b) == g.index(a | b)


def test_linear_vectors_satisfy_ingleton():
    rng = np.random.default_rng(5)
    f = ingleton_functional()
    for _ in range(300):
        c = LinearCharacterization(2, 4, tuple(random_subspace(2, 4, rng) for _ in range(4)))
        assert evaluate_exact(f, entropy_from_linear(c)).sign >= 0


def test_json_round_trip():
    c = LinearCharacterization(3, 3, (span(3, 3, (1, 2, 0)), span(3, 3, (0, 1, 1), (1, 0, 0))))
    assert LinearCharacterization.from_dict(c.to_dict()) == c
    w = c.subspaces[1]
    assert Subspace.from_dict(w.to_dict()) == w
    assert w.to_dict() == {"p": 3, "m": 3, "basis": [list(r) for r in w.basis]}
