import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from transgressor.algebra import cyclic_group, inertia_crossed_module, preset_group
from transgressor.cochains import (CellLimitError, Cochain, Direction, MAX_CELLS_ENV, SimplexSpace,
                                   d_gamma, d_n, delta_cochain, differential, index_simplex,
                                   max_cells, random_cochain, unindex)

from oracles import differential_by_faces

SMALL = ["Z2", "Z3", "S3"]


@pytest.fixture(scope="module")
def z2():
    return inertia_crossed_module(cyclic_group(2))


def as_dict(omega):
    space = omega.space
    return {tuple(map(tuple, unindex(space, i))): int(v) for i, v in enumerate(omega.values)}


def test_empty_simplex_has_index_zero(z2):
    space = SimplexSpace(z2, 0, 0)
    assert space.size == 1
    assert index_simplex(space, ((), ())) == 0


def test_mixed_radix_index(z2):
    assert index_simplex(SimplexSpace(z2, 1, 1), ((1,), (0,))) == 2


def test_index_round_trip_exhaustive():
    cm = inertia_crossed_module(preset_group("S3"))
    for k in range(4):
        for l in range(4 - k):
            space = SimplexSpace(cm, k, l)
            for i in range(space.size):
                assert index_simplex(space, unindex(space, i)) == i


def test_index_out_of_range(z2):
    space = SimplexSpace(z2, 1, 1)
    with pytest.raises(ValueError):
        index_simplex(space, ((2,), (0,)))
    with pytest.raises(ValueError):
        unindex(space, 4)


def test_constant_cochain_differential(z2):
    for v in range(2):
        omega = Cochain(SimplexSpace(z2, 0, 1), 2, [v, v])
        assert np.all(d_gamma(omega).values == v)


def test_zero_cochain_differentials(z2):
    omega = Cochain.zeros(SimplexSpace(z2, 1, 1), 3)
    assert d_gamma(omega).is_zero() and d_n(omega).is_zero()


def test_z2_carry_cocycle(z2):
    c = Cochain.from_function(SimplexSpace(z2, 1, 2), 2, lambda xs, gs: xs[0] * ((gs[0] + gs[1]) // 2))
    assert d_gamma(c).is_zero()
    brute = differential_by_faces(z2, as_dict(c), 1, 2, 2, "gamma")
    assert not any(brute.values())


@pytest.mark.parametrize("name", SMALL)
@pytest.mark.parametrize("k,l", [(0, 1), (1, 1), (2, 0), (1, 2), (0, 2)])
def test_differentials_match_face_formulas(name, k, l):
    cm = inertia_crossed_module(preset_group(name))
    omega = random_cochain(SimplexSpace(cm, k, l), 4, seed=k * 10 + l)
    f = as_dict(omega)
    assert as_dict(d_gamma(omega)) == differential_by_faces(cm, f, k, l, 4, "gamma")
    assert as_dict(d_n(omega)) == differential_by_faces(cm, f, k, l, 4, "n")


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z4", "Z5", "Z6", "S3"])
def test_differentials_square_to_zero_and_commute_on_basis(name):
    cm = inertia_crossed_module(preset_group(name))
    for k in range(3):
        for l in range(3 - k):
            space = SimplexSpace(cm, k, l)
            # the differentials are linear, so checking a random full-support cochain
            # and every basis cochain of the smallest spaces covers the claim
            basis = range(space.size) if space.size <= 36 else []
            for i in basis:
                e = delta_cochain(space, 6, i)
                assert d_gamma(d_gamma(e)).is_zero()
                assert d_n(d_n(e)).is_zero()
                assert d_gamma(d_n(e)) == d_n(d_gamma(e))
            omega = random_cochain(space, 6, seed=k + 7 * l)
            assert d_gamma(d_gamma(omega)).is_zero()
            assert d_n(d_n(omega)).is_zero()
            assert d_gamma(d_n(omega)) == d_n(d_gamma(omega))


@pytest.mark.parametrize("name", ["Z2", "S3"])
def test_total_differential_squares_to_zero(name):
    cm = inertia_crossed_module(preset_group(name))
    # D = d' + (-1)^k d on the column (k, l); check D^2 = 0 on one (k, l) summand
    for k, l in [(0, 1), (1, 0), (1, 1)]:
        omega = random_cochain(SimplexSpace(cm, k, l), 5, seed=3)
        # component in (k+1, l+1) of D(D omega)
        lhs = d_n(d_gamma(omega))
        rhs = d_gamma(d_n(omega))
        assert ((-1) ** k * lhs + (-1) ** (k + 1) * rhs).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.integers(0, 3), st.integers(0, 2), st.integers(0, 10**6),
       st.sampled_from([2, 3, 6]))
def test_differential_is_linear(name, alpha, shape, seed, n):
    cm = inertia_crossed_module(preset_group(name))
    k, l = [(0, 1), (1, 1), (1, 0)][shape]
    space = SimplexSpace(cm, k, l)
    w1, w2 = random_cochain(space, n, seed), random_cochain(space, n, seed + 1)
    for direction in Direction:
        lhs = differential(alpha * w1 + w2, direction)
        rhs = alpha * differential(w1, direction) + differential(w2, direction)
        assert lhs == rhs


def test_random_cochain_is_deterministic(z2):
    space = SimplexSpace(inertia_crossed_module(preset_group("S3")), 1, 1)
    assert random_cochain(space, 5, 11) == random_cochain(space, 5, 11)
    for s, t in [(0, 1), (11, 12), (2024, 7)]:
        assert random_cochain(space, 5, s) != random_cochain(space, 5, t)


def test_random_cochain_on_singleton(z2):
    omega = random_cochain(SimplexSpace(z2, 0, 0), 7, 3)
    assert omega.values.shape == (1,) and 0 <= omega.values[0] < 7


def test_values_are_reduced_and_read_only(z2):
    omega = Cochain(SimplexSpace(z2, 0, 1), 3, [-1, 7])
    assert omega.values.tolist() == [2, 1]
    with pytest.raises(ValueError):
        omega.values[0] = 0


def test_incompatible_arithmetic_rejected(z2):
    a = Cochain.zeros(SimplexSpace(z2, 0, 1), 3)
    with pytest.raises(ValueError):
        a + Cochain.zeros(SimplexSpace(z2, 0, 1), 4)
    with pytest.raises(ValueError):
        a + Cochain.zeros(SimplexSpace(z2, 1, 0), 3)


def test_witness_points_at_first_nonzero(z2):
    omega = Cochain(SimplexSpace(z2, 1, 1), 2, [0, 0, 1, 1])
    assert omega.witness() == {"xs": [1], "gs": [0], "value": 1}
    assert Cochain.zeros(omega.space, 2).witness() is None


def test_ceiling_is_enforced(monkeypatch, z2):
    monkeypatch.setenv(MAX_CELLS_ENV, "7")
    assert max_cells() == 7
    SimplexSpace(z2, 1, 1)
    with pytest.raises(CellLimitError, match=MAX_CELLS_ENV):
        SimplexSpace(z2, 2, 1)
    monkeypatch.setenv(MAX_CELLS_ENV, "zero")
    with pytest.raises(ValueError):
        max_cells()
    monkeypatch.delenv(MAX_CELLS_ENV)
    assert max_cells() == 10**7


def test_differential_respects_ceiling(monkeypatch, z2):
    omega = Cochain.zeros(SimplexSpace(z2, 1, 2), 2)
    monkeypatch.setenv(MAX_CELLS_ENV, "10")
    with pytest.raises(CellLimitError):
        d_gamma(omega)


def test_pullback_shape_check(z2):
    from transgressor.words import gamma_face
    omega = Cochain.zeros(SimplexSpace(z2, 1, 1), 2)
    with pytest.raises(ValueError):
        omega.pullback(gamma_face(0, 1, 0))
    assert omega.pullback(gamma_face(1, 1, 0)).shape == (1, 2)


def test_evaluation_by_components(z2):
    c = Cochain.from_function(SimplexSpace(z2, 1, 2), 2, lambda xs, gs: xs[0] * gs[0] * gs[1])
    assert c((1,), (1, 1)) == 1
    assert c((1,), (0, 1)) == 0
