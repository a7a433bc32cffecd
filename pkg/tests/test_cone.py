import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from randcone import interior_points, random_cone

from groupentropy.cone import (
    Cone,
    ConeError,
    EliminationCapExceeded,
    ProjectionSpec,
    cone_from_suite,
    contains,
    eliminate,
    entropy_labels,
    equivalent,
    full_space,
    gamma,
    implies,
    intersect,
    is_member,
    project,
    remove_redundant,
)
from groupentropy.entropy import EntropyVector, RealEntropyVector
from groupentropy.extension import join_extension_constraints
from groupentropy.inequality import elemental_shannon_inequalities

XY = ("x", "y")


def _solutions_equal(a, b):
    return equivalent(a, b)


def test_normalization_and_dedupe():
    c = Cone(XY, ((2, 4), (1, 2), (0, 0)), ((-3, 6),))
    assert c.inequalities == ((1, 2),)
    assert c.equalities == ((1, -2),)
    pair = Cone(XY, ((1, -1), (-1, 1)))
    assert pair.inequalities == () and pair.equalities == ((1, -1),)
    with pytest.raises(ConeError):
        Cone(XY, ((1, 2, 3),))
    with pytest.raises(ConeError):
        Cone(("x", "x"))


def test_cone_from_suite_examples():
    g2 = cone_from_suite(elemental_shannon_inequalities(2))
    assert g2.dim == 3 and len(g2.inequalities) == 3 and g2.labels == ("1", "2", "12")
    assert g2 == gamma(2)
    with pytest.raises(ConeError):
        cone_from_suite([])
    assert cone_from_suite([], n=2) == full_space(entropy_labels(2))
    h = join_extension_constraints(2, 1, 2).constraints
    assert h.dim == 7 and len(h.equalities) == 3 and not h.inequalities


def test_eliminate_examples():
    c = Cone(XY, ((0, 1), (1, -1)))
    assert eliminate(c, "y") == Cone(("x",), ((1,),))
    c = Cone(XY, ((1, 0),), ((1, -1),))
    assert eliminate(c, "y") == Cone(("x",), ((1,),))
    out = eliminate(gamma(2), "12")
    assert equivalent(out, Cone(("1", "2"), ((1, 0), (0, 1))))
    assert set(remove_redundant(out, full=True).inequalities) == {(1, 0), (0, 1)}


def test_project_examples():
    g3 = gamma(3)
    assert project(g3, g3.labels) == g3
    xyz = Cone(("x", "y", "z"), ((1, 1, 1),))
    assert project(xyz, ["x"]) == full_space(["x"])
    h = join_extension_constraints(2, 1, 2).constraints
    bound = project(intersect(g3, h), ProjectionSpec(("1", "2", "12")))
    assert equivalent(bound, gamma(2))


def test_projection_relabels():
    out = project(gamma(2), ProjectionSpec(("2", "1"), rename={"2": "b", "1": "a"}))
    assert out.labels == ("b", "a")
    assert equivalent(out, Cone(("b", "a"), ((1, 0), (0, 1))))


def test_projection_input_checks():
    with pytest.raises(ConeError):
        project(gamma(2), ["3"])
    with pytest.raises(ConeError):
        ProjectionSpec(())
    with pytest.raises(ConeError):
        project(gamma(2), ["1"], order=["2"])


@pytest.mark.parametrize("n", [2, 3])
def test_restriction_of_gamma(n):
    keep = entropy_labels(n - 1)
    assert equivalent(project(gamma(n), keep), gamma(n - 1))


def test_intersect_examples():
    g3 = gamma(3)
    assert intersect(g3, full_space(g3.labels)) == g3
    assert intersect(g3, g3) == g3
    h = join_extension_constraints(2, 1, 2).constraints
    both = intersect(g3, h)
    assert (len(both.inequalities), len(both.equalities)) == (9, 3)
    with pytest.raises(ConeError):
        intersect(g3, gamma(2))
    # label order of the second cone does not matter
    rev = g3.reordered(tuple(reversed(g3.labels)))
    assert intersect(g3, rev) == g3


def test_membership_examples():
    g2 = gamma(2)
    assert is_member(g2, EntropyVector.zero(2))
    assert is_member(gamma(4), EntropyVector.zero(4))
    assert is_member(g2, EntropyVector(2, (3, 2, 6)))
    assert not is_member(g2, EntropyVector(2, (2, 2, 8)))
    assert is_member(g2, RealEntropyVector(2, (1.0, 1.0, 2.0 + 1e-10)))
    assert not is_member(g2, RealEntropyVector(2, (1.0, 1.0, 2.1)))
    assert is_member(g2, {"1": 1, "2": 1, "12": 2})
    assert is_member(g2, [Fraction(1, 2), 1, Fraction(3, 2)])
    with pytest.raises(ConeError):
        is_member(g2, EntropyVector.zero(3))
    with pytest.raises(ConeError):
        is_member(g2, [1, 2])


def test_membership_label_order_independent():
    g2 = gamma(2).reordered(("12", "2", "1"))
    assert is_member(g2, EntropyVector(2, (3, 2, 6)))
    assert not is_member(g2, EntropyVector(2, (2, 2, 8)))


def test_remove_redundant_examples():
    assert remove_redundant(Cone(("x",), ((1,), (2,)))).inequalities == ((1,),)
    c = Cone(XY, ((1, 0), (0, 1), (1, 1)))
    assert set(remove_redundant(c, full=True).inequalities) == {(1, 0), (0, 1)}
    assert len(remove_redundant(c).inequalities) == 3
    assert remove_redundant(gamma(2), full=True) == gamma(2)
    eqs = Cone(("x", "y", "z"), (), ((1, -1, 0), (0, 1, -1), (1, 0, -1)))
    assert len(remove_redundant(eqs, full=True).equalities) == 2


def test_implication():
    g2 = gamma(2)
    assert implies(g2, (1, 0, 0))
    assert implies(g2, (0, 0, 1))
    assert not implies(g2, (1, 1, -2))
    assert not implies(g2, (1, 0, 0), equality=True)
    assert contains(full_space(g2.labels), g2)
    assert not contains(g2, full_space(g2.labels))
    with pytest.raises(ConeError):
        implies(g2, (1, 0))


def test_text_and_json_round_trip():
    h = intersect(gamma(3), join_extension_constraints(2, 1, 2).constraints)
    assert Cone.from_text(h.to_text()) == h
    assert Cone.from_dict(h.to_dict()) == h
    assert Cone.parse(h.to_json()) == h
    assert Cone.parse("x y\n1 0 >= 0\n1 -1 = 0  # tie\n") == Cone(XY, ((1, 0),), ((1, -1),))
    assert Cone.parse("x y\n1 0 ≥ 0\n") == Cone(XY, ((1, 0),))
    with pytest.raises(ConeError):
        Cone.from_text("x y\n1 0 > 0\n")
    with pytest.raises(ConeError):
        Cone.from_text("x y\n1 0 >= 1\n")


def test_cap_is_enforced():
    with pytest.raises(EliminationCapExceeded):
        project(gamma(4), entropy_labels(2), cap=5)


def test_random_cone_helper_center_is_interior():
    rng = np.random.default_rng(0)
    for _ in range(30):
        c, center = random_cone(rng)
        assert all(sum(a * b for a, b in zip(r, center)) > 0 for r in c.inequalities)
        assert all(sum(a * b for a, b in zip(e, center)) == 0 for e in c.equalities)


@pytest.mark.parametrize("seed", range(12))
def test_projection_soundness_random(seed):
    rng = np.random.default_rng(seed)
    c, center = random_cone(rng)
    keep = list(c.labels[: max(1, c.dim // 2)])
    out = project(c, keep)
    idx = [c.position(k) for k in keep]
    for x in interior_points(c, center, rng, 200):
        assert is_member(out, [x[i] for i in idx])


@pytest.mark.parametrize("seed", range(12))
def test_elimination_order_invariance(seed):
    rng = np.random.default_rng(100 + seed)
    c, _ = random_cone(rng)
    keep = [c.labels[0]]
    drop = list(c.labels[1:])
    a = project(c, keep, order=drop)
    b = project(c, keep, order=list(reversed(drop)))
    assert _solutions_equal(a, b)
    assert _solutions_equal(a, project(c, keep))
    assert _solutions_equal(a, project(c, keep, prune=True))


@pytest.mark.parametrize("seed", range(6))
def test_remove_redundant_preserves_membership(seed):
    rng = np.random.default_rng(200 + seed)
    c, center = random_cone(rng)
    lean = remove_redundant(c, full=True)
    assert equivalent(c, lean)
    points = interior_points(c, center, rng, 100)
    # boundary points: push each interior point onto a facet when possible
    for x in list(points[:30]):
        for r in c.inequalities:
            rr = sum(v * v for v in r)
            t = Fraction(sum(a * b for a, b in zip(r, x)), rr)
            y = [xi - t * ri for xi, ri in zip(x, r)]
            points.append(y)
    rng_pts = [[Fraction(int(v), 3) for v in rng.integers(-9, 10, c.dim)] for _ in range(100)]
    for x in points + rng_pts:
        assert is_member(c, x) == is_member(lean, x)


def test_projected_cone_contains_shadow_exactly():
    # completeness on a small example: every point of the projection lifts back
    c = Cone(("x", "y", "z"), ((1, -1, 0), (0, 1, -1), (0, 0, 1)))
    out = project(c, ["x"])
    assert out == Cone(("x",), ((1,),))
    for x in range(5):
        assert is_member(c, [x, x, 0])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=6))
def test_eliminate_is_an_outer_shadow(rows):
    c = Cone(("x", "y", "z"), tuple(map(tuple, rows)))
    out = eliminate(c, "z")
    # sample integer points of c on a grid and check their shadows
    for p in itertools.product(range(-2, 3), repeat=3):
        if is_member(c, list(p)):
            assert is_member(out, list(p[:2]))
