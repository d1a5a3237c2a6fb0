import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from transgressor.algebra import (AxiomError, CyclicCoefficients, action_groupoid, conjugation_table,
                                  cyclic_group, dihedral_group, inertia_crossed_module, is_abelian,
                                  pair_groupoid, preset_group, quaternion_group, semidirect_product,
                                  symmetric_group, trivial_crossed_module, trivial_group,
                                  validate_crossed_module, validate_group, validate_groupoid)

from oracles import perm_compose

PRESETS = ["1", "Z2", "Z3", "Z4", "Z5", "Z6", "S3", "D4", "Q8"]


def test_z2_table_is_a_group():
    G = validate_group([[0, 1], [1, 0]])
    assert G.order == 2
    assert G.identity == 0
    assert list(G.inverse) == [0, 1]


def test_missing_inverse_reported():
    with pytest.raises(AxiomError, match="no inverse for element 1") as info:
        validate_group([[0, 1], [1, 1]])
    assert info.value.witness == (1,)


def test_non_associative_triple_reported():
    # a commutative loop of order 5 that is not a group
    rows = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(AxiomError, match="not associative") as info:
        validate_group(rows)
    a, b, c = info.value.witness
    T = np.array(rows)
    assert T[T[a, b], c] != T[a, T[b, c]]


def test_missing_identity_reported():
    with pytest.raises(AxiomError, match="no identity"):
        validate_group([[0, 0], [0, 0]])


def test_s3_from_permutations_is_nonabelian():
    perms = list(itertools.permutations(range(3)))
    table = [[perms.index(perm_compose(p, q)) for q in perms] for p in perms]
    G = validate_group(table)
    abelian, (a, b) = is_abelian(G)
    assert not abelian
    assert G.mul(a, b) != G.mul(b, a)
    assert symmetric_group(3).order == 6


@pytest.mark.parametrize("name,order,exponent", [
    ("Z6", 6, 6), ("S3", 6, 6), ("D4", 8, 4), ("Q8", 8, 4), ("S4", 24, 12), ("1", 1, 1),
])
def test_presets(name, order, exponent):
    G = preset_group(name)
    assert G.order == order
    assert G.exponent() == exponent


def test_quaternion_has_single_involution():
    Q = quaternion_group()
    assert sum(1 for a in range(8) if Q.element_order(a) == 2) == 1


def test_dihedral_is_nonabelian():
    assert not is_abelian(dihedral_group(4))[0]


def test_preset_rejects_unknown():
    with pytest.raises(ValueError):
        preset_group("S9")


@pytest.mark.parametrize("name", PRESETS)
def test_inertia_module_validates(name):
    G = preset_group(name)
    cm = inertia_crossed_module(G)
    validate_crossed_module(cm.N, cm.Gamma, cm.phi, cm.act)


def test_abelian_crossed_modules():
    Z2 = cyclic_group(2)
    validate_crossed_module(Z2, Z2, [0, 1], [[0, 0], [1, 1]])
    # Z/4 -> Z/2 by reduction with trivial action
    validate_crossed_module(cyclic_group(4), Z2, [0, 1, 0, 1], np.repeat(np.arange(4)[:, None], 2, 1))


def test_inertia_s3_moves_transpositions():
    G = symmetric_group(3)
    table = conjugation_table(G)
    transpositions = [a for a in range(6) if G.element_order(a) == 2]
    three_cycle = next(a for a in range(6) if G.element_order(a) == 3)
    t = transpositions[0]
    moved = int(table[t, three_cycle])
    assert moved in transpositions and moved != t


def test_trivial_group_inertia():
    cm = inertia_crossed_module(trivial_group())
    assert cm.N.order == cm.Gamma.order == 1
    assert cm.act.tolist() == [[0]]


def test_crossed_module_failures_are_named():
    Z2, Z3 = cyclic_group(2), cyclic_group(3)
    with pytest.raises(AxiomError, match="homomorphism"):
        validate_crossed_module(Z2, Z3, [0, 1], [[0, 0, 0], [1, 1, 1]])
    # trivial phi and trivial action on a nonabelian N breaks the Peiffer identity
    S3 = symmetric_group(3)
    inertia = inertia_crossed_module(S3)
    with pytest.raises(AxiomError, match="Peiffer"):
        validate_crossed_module(S3, S3, np.full(6, S3.identity), np.repeat(np.arange(6)[:, None], 6, 1))
    bad = inertia.act.copy()
    bad[:, :] = bad[:, [0, 0, 0, 0, 0, 0]]
    with pytest.raises(AxiomError):
        validate_crossed_module(S3, S3, inertia.phi, bad)
    with pytest.raises(AxiomError, match="not a right action"):
        validate_crossed_module(Z3, Z3, [0, 0, 0], [[0, 0, 0], [1, 2, 1], [2, 1, 2]])


def test_action_by_non_automorphisms_rejected():
    Z4, Z2 = cyclic_group(4), cyclic_group(2)
    # the swap of 1 and 2 is a permutation action of Z/2 but not by automorphisms
    act = [[0, 0], [1, 2], [2, 1], [3, 3]]
    with pytest.raises(AxiomError, match="automorphisms"):
        validate_crossed_module(Z4, Z2, [0, 0, 0, 0], act)


def test_semidirect_product_of_abelian_inertia_is_direct():
    P = semidirect_product(inertia_crossed_module(cyclic_group(2)))
    assert P.order == 4 and P.exponent() == 2 and is_abelian(P)[0]


def test_semidirect_z3_by_inversion_is_s3_like():
    Z3, Z2 = cyclic_group(3), cyclic_group(2)
    act = [[0, 0], [1, 2], [2, 1]]
    cm = validate_crossed_module(Z3, Z2, [0, 0, 0], act)
    P = semidirect_product(cm)
    assert P.order == 6
    orders = sorted(P.element_order(a) for a in range(6))
    assert orders == [1, 2, 2, 2, 3, 3]
    a = next(x for x in range(6) if P.element_order(x) == 2)
    b = next(x for x in range(6) if P.element_order(x) == 3)
    assert P.mul(a, b) != P.mul(b, a)


def test_semidirect_inertia_s3_order_and_inverse():
    cm = inertia_crossed_module(symmetric_group(3))
    P = semidirect_product(cm)
    assert P.order == 36
    nG = cm.Gamma.order
    for x, g in itertools.product(range(6), range(6)):
        xg = int(cm.act[x, g])
        expected = int(cm.N.inverse[xg]) * nG + int(cm.Gamma.inverse[g])
        assert P.inverse[x * nG + g] == expected


@pytest.mark.parametrize("name", PRESETS)
def test_semidirect_product_is_a_group(name):
    P = semidirect_product(inertia_crossed_module(preset_group(name)))
    assert P.order == preset_group(name).order ** 2


@pytest.mark.parametrize("name", PRESETS)
def test_right_action_law(name):
    cm = inertia_crossed_module(preset_group(name))
    a, G = cm.act, cm.Gamma
    for x, g, h in itertools.product(range(G.order), repeat=3):
        assert a[a[x, g], h] == a[x, G.mul(g, h)]


def test_cyclic_coefficients():
    A = CyclicCoefficients(6)
    assert A.add(5, 4) == 3
    assert A.neg(2) == 4
    assert list(A.norm(np.array([0, 1, 3, 5]))) == [0, 1, 3, 1]
    with pytest.raises(ValueError):
        CyclicCoefficients(1)


@pytest.mark.parametrize("name", ["Z2", "Z3", "S3", "Q8"])
def test_groupoids_validate(name):
    cm = inertia_crossed_module(preset_group(name))
    validate_groupoid(action_groupoid(cm))
    validate_groupoid(pair_groupoid(4))


def test_action_groupoid_pairs_match_simplex_order():
    cm = inertia_crossed_module(symmetric_group(3))
    gpd = action_groupoid(cm)
    nG = 6
    for idx in range(gpd.num_pairs):
        f, g = gpd.pair_first[idx], gpd.pair_second[idx]
        x, g1 = divmod(int(f), nG)
        _, g2 = divmod(int(g), nG)
        assert idx == (x * nG + g1) * nG + g2


def test_trivial_crossed_module_has_one_point_fibre():
    cm = trivial_crossed_module(symmetric_group(3))
    assert cm.N.order == 1 and cm.act.shape == (1, 6)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(PRESETS), st.integers(0, 10**6))
def test_corrupted_action_never_validates(name, seed):
    cm = inertia_crossed_module(preset_group(name))
    if cm.N.order == 1:
        return
    rng = np.random.default_rng(seed)
    x, g = int(rng.integers(cm.N.order)), int(rng.integers(cm.Gamma.order))
    value = (int(cm.act[x, g]) + 1 + int(rng.integers(cm.N.order - 1))) % cm.N.order
    bad = cm.with_action_entry(x, g, value)
    with pytest.raises(AxiomError):
        validate_crossed_module(bad.N, bad.Gamma, bad.phi, bad.act)
