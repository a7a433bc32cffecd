import itertools

import numpy as np
import pytest

from groupentropy import subsets as ss
from groupentropy.cone import (
    Cone,
    EliminationCapExceeded,
    contains,
    entropy_labels,
    equivalent,
    full_space,
    gamma,
    implies,
    intersect,
    is_member,
)
from groupentropy.entropy import (
    EntropyVector,
    GroupCharacterization,
    all_characterizations,
    characterize,
    entropy_from_characterization,
    join_characterization,
)
from groupentropy.extension import (
    AdhesiveVerificationError,
    ExtensionSpec,
    MarkovPremiseError,
    NotNormalError,
    adhesive_constraints,
    adhesive_group_extension,
    bound_by_extension,
    build_extension,
    join_extension_constraints,
    markov_double_extension_constraints,
    markov_premise_holds,
    parse_extension,
    sw_extension_constraints,
)
from groupentropy.group import (
    abelian,
    cyclic,
    dihedral,
    elementary_abelian,
    enumerate_subgroups,
    is_normal,
    permutation,
    symmetric,
)
from groupentropy.linear import (
    LinearCharacterization,
    entropy_from_linear,
    random_subspace,
    sw_extension_linear,
)
from groupentropy.sweep import abelian_groups


def _dense(m, terms):
    row = [0] * ((1 << m) - 1)
    for mask, c in terms.items():
        row[mask - 1] += c
    return tuple(row)


# constraint sets


def test_adhesive_row_counts():
    spec = adhesive_constraints(2, 1)
    assert spec.m == 4 and spec.constraints.dim == 15
    assert len(spec.constraints.equalities) == 5 and not spec.constraints.inequalities
    assert len(adhesive_constraints(2, 3).constraints.equalities) == 6
    assert len(adhesive_constraints(3, 5).constraints.equalities) == 2 * 2 + 7 + 1 - 2


def test_adhesive_single_variable_forces_copies():
    h = adhesive_constraints(1, 1).constraints
    assert implies(h, (1, -1, 0), equality=True)
    assert implies(h, (1, 0, -1), equality=True)


def test_adhesive_full_alpha_duplicates():
    h = adhesive_constraints(2, 3).constraints
    assert implies(h, _dense(4, {15: 1, 3: -1}), equality=True)
    # with alpha = {1} the copy is not forced to be identical
    assert not implies(adhesive_constraints(2, 1).constraints, _dense(4, {15: 1, 3: -1}), equality=True)


def test_join_matches_example_rows():
    spec = join_extension_constraints(2, 1, 2)
    expected = Cone(
        entropy_labels(3),
        (),
        (
            _dense(3, {5: 1, 1: -1}),
            _dense(3, {6: 1, 2: -1}),
            # h(1) + h(2) = h(3) + h(12), written through h(13) = h(1), h(23) = h(2)
            _dense(3, {5: 1, 6: 1, 4: -1, 3: -1}),
        ),
    )
    assert equivalent(spec.constraints, expected)
    assert implies(spec.constraints, _dense(3, {1: 1, 2: 1, 4: -1, 3: -1}), equality=True)
    with pytest.raises(ValueError):
        join_extension_constraints(2, 3, 2)
    with pytest.raises(ValueError):
        join_extension_constraints(2, 0, 2)


def test_join_independent_blocks_force_constant():
    h = intersect(
        join_extension_constraints(2, 1, 2).constraints, Cone(entropy_labels(3), (), (_dense(3, {1: 1, 2: 1, 3: -1}),))
    )
    assert implies(h, _dense(3, {4: 1}), equality=True)


def test_sw_rows():
    spec = sw_extension_constraints(2, 1, 2)
    assert spec.m == 3 and len(spec.constraints.equalities) == 3
    same = sw_extension_constraints(2, 1, 1).constraints
    assert implies(same, _dense(3, {4: 1}), equality=True)
    assert implies(same, _dense(3, {5: 1, 1: -1}), equality=True)


def test_sw_on_independent_z6_pair():
    z6 = cyclic(6)
    g = entropy_from_characterization(characterize(z6, z6.generate([3]), z6.generate([2])))
    assert g.index(3) == 6 and g.index(1) == 3 and g.index(2) == 2
    # h(3) = g(12) - g(2) = log 3, i.e. the new index is 6 / 2
    assert g.index(3) // g.index(2) == g.index(1)


def test_markov_rows_and_premise():
    spec = markov_double_extension_constraints(3, 1, 4, 2)
    assert spec.m == 5 and spec.constraints.dim == 31 and len(spec.constraints.equalities) == 5
    with pytest.raises(ValueError):
        markov_double_extension_constraints(3, 1, 1, 2)
    z2 = elementary_abelian(2, 2)
    subs = enumerate_subgroups(z2)
    line, trivial = subs[1], z2.trivial
    # X_2 determines X_1 and X_3, so X_1 -> X_2 -> X_3 holds
    chain = entropy_from_characterization(characterize(z2, line, trivial, subs[2]))
    assert markov_premise_holds(chain, 1, 4, 2)
    markov_double_extension_constraints(3, 1, 4, 2, source=chain)
    # X_1 = X_3 with X_2 constant is not a chain through X_2
    broken = entropy_from_characterization(characterize(z2, line, z2.whole, line))
    assert not markov_premise_holds(broken, 1, 4, 2)
    with pytest.raises(MarkovPremiseError):
        markov_double_extension_constraints(3, 1, 4, 2, source=broken)


def test_markov_constant_beta_forces_zero():
    n, a, b, c = 3, 1, 2, 4
    h = markov_double_extension_constraints(n, a, b, c).constraints
    m = 5
    given_rows = (_dense(m, {b: 1}), _dense(m, {b | c: 1, c: -1}))
    assert implies(intersect(h, Cone(h.labels, (), given_rows)), _dense(m, {8 << 1: 1}), equality=True)
    both = given_rows + (_dense(m, {a | c: 1, c: -1}),)
    fixed = intersect(h, Cone(h.labels, (), both))
    assert implies(fixed, _dense(m, {8: 1}), equality=True)
    assert implies(fixed, _dense(m, {16: 1}), equality=True)


def test_build_and_parse():
    assert parse_extension("join:2:1:2").constraints == join_extension_constraints(2, 1, 2).constraints
    assert parse_extension("adhesive:2:12").alpha == 3
    assert parse_extension("markov:3:1:2:3").gamma == 4
    with pytest.raises(ValueError):
        parse_extension("join:2")
    with pytest.raises(ValueError):
        build_extension("glue", 2, 1)
    with pytest.raises(ValueError):
        adhesive_constraints(2, 4)


@pytest.mark.parametrize("text", ["adhesive:2:1", "join:3:1:23", "sw:2:1:2", "markov:3:1:2:3"])
def test_spec_json_round_trip(text):
    spec = parse_extension(text)
    back = ExtensionSpec.from_dict(spec.to_dict())
    assert back == spec and back.constraints == spec.constraints
    assert ExtensionSpec.from_dict({"kind": "adhesive", "n": 2, "alpha": [1]}) == adhesive_constraints(2, 1)
    bad = spec.to_dict()
    bad["constraints"] = full_space(["z"]).to_dict()
    with pytest.raises(ValueError):
        ExtensionSpec.from_dict(bad)


# witnesses


def test_adhesive_z2_example():
    z2 = cyclic(2)
    w, ext = adhesive_group_extension(characterize(z2, z2.trivial), 1)
    assert w.ok and w.K.order == 2
    assert {tuple(p) for p in w.pairs.tolist()} == {(0, 0), (1, 1)}
    h = entropy_from_characterization(ext)
    assert h.index(1) == h.index(2) == h.index(3) == 2
    assert ext.subgroups[0] == ext.subgroups[1]


def test_adhesive_s3_example():
    s3 = symmetric(3)
    a3 = s3.generate([s3.element("231")])
    t = s3.generate([s3.element(permutation(3, "(12)"))])
    w, ext = adhesive_group_extension(characterize(s3, a3, t), 1)
    assert w.K.order == 18 and w.ok
    assert set(w.checks) >= {"P1", "P2", "P3", "P4", "index chain", "adhesive rows", "K group axioms"}
    assert len(w.T1) == len(w.T2) == 18
    # every pair of K lies in the same A3 coset
    for a, b in w.pairs.tolist():
        assert s3.table[s3.inverse[a], b] in a3
    h = entropy_from_characterization(ext)
    assert adhesive_constraints(2, 1).satisfied_by(h)


def test_adhesive_rejects_non_normal():
    s3 = symmetric(3)
    t = s3.generate([s3.element("213")])
    with pytest.raises(NotNormalError) as err:
        adhesive_group_extension(characterize(s3, t, s3.whole), 1)
    x = err.value.witness
    conj = {int(s3.table[s3.table[x, y], s3.inverse[x]]) for y in t.elements()}
    assert conj != set(t.elements())
    assert s3.labels[x] in str(err.value)


@pytest.mark.parametrize("g", [abelian(2, 4), elementary_abelian(2, 3), cyclic(6)], ids=str)
def test_adhesive_abelian_always_applies(g):
    subs = enumerate_subgroups(g)
    for c in all_characterizations(g, 2, subs):
        for alpha in (1, 2, 3):
            w, _ = adhesive_group_extension(c, alpha)
            assert w.ok and w.K.is_abelian()


def test_adhesive_verification_error_type():
    assert issubclass(AdhesiveVerificationError, RuntimeError)


@pytest.mark.parametrize("g", [dihedral(4), symmetric(3)], ids=str)
def test_adhesive_nonabelian_normal_cases(g):
    subs = enumerate_subgroups(g)
    done = 0
    for c in all_characterizations(g, 2, subs):
        for alpha in (1, 2, 3):
            if not is_normal(g, c.intersection(alpha)):
                continue
            w, _ = adhesive_group_extension(c, alpha)
            assert w.ok
            done += 1
    assert done > 0


def test_join_witness_satisfies_constraints():
    z22 = elementary_abelian(2, 2)
    spec = join_extension_constraints(2, 1, 2)
    for c in all_characterizations(z22, 2):
        assert spec.satisfied_by(entropy_from_characterization(join_characterization(c, 1, 2)))
    spec3 = join_extension_constraints(3, 1, 6)
    for c in itertools.islice(all_characterizations(abelian(2, 4), 3), 200):
        assert spec3.satisfied_by(entropy_from_characterization(join_characterization(c, 1, 6)))


def test_sw_linear_witness_satisfies_constraints():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        m = int(rng.integers(1, 5))
        c = LinearCharacterization(2, m, tuple(random_subspace(2, m, rng) for _ in range(3)))
        a, b = (int(v) for v in rng.integers(1, 8, 2))
        h = entropy_from_linear(sw_extension_linear(c, a, b))
        assert sw_extension_constraints(3, a, b).satisfied_by(h)


def test_markov_chain_witness():
    # all three blocks carry the same variable: X_{n+1} constant and X_{n+2} = X_gamma
    for g in (cyclic(2), cyclic(6), symmetric(3)):
        for h in enumerate_subgroups(g):
            src = characterize(g, h, h, h)
            gv = entropy_from_characterization(src)
            spec = markov_double_extension_constraints(3, 1, 2, 4, source=gv)
            ext = GroupCharacterization(g, (h, h, h, g.whole, h))
            assert spec.satisfied_by(entropy_from_characterization(ext))


# bound by extension


def test_example_pipeline_gives_gamma2():
    out = bound_by_extension(2, join_extension_constraints(2, 1, 2), gamma(3))
    assert out.labels == ("1", "2", "12")
    assert equivalent(out, gamma(2))


def test_full_outer_gives_full_space():
    out = bound_by_extension(2, join_extension_constraints(2, 1, 2), full_space(entropy_labels(3)))
    assert out == full_space(entropy_labels(2))


def test_bound_checks_dimensions():
    with pytest.raises(ValueError):
        bound_by_extension(3, join_extension_constraints(2, 1, 2), gamma(3))
    with pytest.raises(ValueError):
        bound_by_extension(2, join_extension_constraints(2, 1, 2), gamma(2))
    with pytest.raises(EliminationCapExceeded):
        bound_by_extension(2, adhesive_constraints(2, 1), gamma(4), cap=3)


def test_bound_contains_abelian_points():
    out = bound_by_extension(2, join_extension_constraints(2, 1, 2), gamma(3))
    for g in abelian_groups(8):
        for c in all_characterizations(g, 2):
            assert is_member(out, entropy_from_characterization(c))


def test_bound_contains_witness_projections():
    spec = sw_extension_constraints(2, 1, 2)
    out = bound_by_extension(2, spec, gamma(3))
    rng = np.random.default_rng(3)
    for _ in range(100):
        c = LinearCharacterization(2, 3, tuple(random_subspace(2, 3, rng) for _ in range(2)))
        h = entropy_from_linear(sw_extension_linear(c, 1, 2))
        assert is_member(out, EntropyVector(2, h.indices[:3]))


def test_adhesive_bound_is_sound_on_group_points():
    out = bound_by_extension(2, adhesive_constraints(2, 1), gamma(4))
    assert contains(gamma(2), out)
    for c in all_characterizations(dihedral(4), 2):
        assert is_member(out, entropy_from_characterization(c))


def test_monotonicity():
    spec = join_extension_constraints(2, 1, 2)
    g3 = gamma(3)
    loose = Cone(g3.labels, g3.inequalities[:3])
    assert contains(loose, g3)
    tight_out = bound_by_extension(2, spec, g3)
    loose_out = bound_by_extension(2, spec, loose)
    assert contains(loose_out, tight_out)
    assert contains(bound_by_extension(2, spec, full_space(g3.labels)), loose_out)


def test_bound_with_pruning_agrees():
    spec = join_extension_constraints(2, 1, 2)
    assert equivalent(bound_by_extension(2, spec, gamma(3), prune=True), bound_by_extension(2, spec, gamma(3)))


def test_labels_of_source_are_prefix():
    assert entropy_labels(3)[:3] == ("1", "2", "12")
    assert ss.label(4) == "3"
