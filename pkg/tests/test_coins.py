import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qparrondo.coins import (
    HADAMARD,
    CoinParams,
    InvalidCoinError,
    InvalidParameterError,
    Player,
    is_unitary,
    make_su2_coin,
    player_coin,
    tensor_coin,
)

angles = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)
triples = st.builds(CoinParams, angles, angles, angles)


def test_zero_angles_give_pauli_z():
    np.testing.assert_array_equal(make_su2_coin(CoinParams(0, 0, 0)), [[1, 0], [0, -1]])


def test_hadamard_point():
    h = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    np.testing.assert_allclose(make_su2_coin(CoinParams(0, math.pi / 4, 0)), h, rtol=0, atol=2.3e-16)
    np.testing.assert_allclose(HADAMARD, h, rtol=0, atol=2.3e-16)


def test_generic_point_by_hand():
    # e^{i pi/2} cos(pi/3) = i/2;  e^{i pi/6} sin(pi/3) = 3/4 + i sqrt(3)/4
    expected = np.array([[0.5j, 0.75 + 0.25j * math.sqrt(3)],
                         [0.75 - 0.25j * math.sqrt(3), 0.5j]])
    got = make_su2_coin(CoinParams(math.pi / 2, math.pi / 3, math.pi / 6))
    np.testing.assert_allclose(got, expected, atol=1e-15)
    assert is_unitary(got, 1e-12)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_non_finite_angles_rejected(bad):
    with pytest.raises(InvalidParameterError):
        CoinParams(0.0, bad, 0.0)


def test_tensor_of_pauli_z():
    np.testing.assert_array_equal(tensor_coin([[1, 0], [0, -1]]), np.diag([1, -1, -1, 1]))


def test_tensor_of_phase_coin():
    got = tensor_coin(make_su2_coin(CoinParams(math.pi / 4, 0, 0)))
    np.testing.assert_allclose(got, np.diag([1j, -1, -1, -1j]), atol=1e-15)


def test_tensor_of_hadamard():
    expected = 0.5 * np.array([[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]])
    np.testing.assert_allclose(tensor_coin(HADAMARD), expected, atol=1e-15)


def test_tensor_rejects_non_unitary():
    with pytest.raises(InvalidCoinError):
        tensor_coin([[1, 1], [0, 1]])


def test_is_unitary_detects_scaled_entry():
    m = np.diag([1.0, -1, -1, 1]).astype(complex)
    assert is_unitary(m, 1e-12)
    m[2, 2] *= 1.01
    assert not is_unitary(m, 1e-12)
    with pytest.raises(ValueError):
        is_unitary(m, -1.0)


def test_player_constraints():
    assert player_coin(Player.A, CoinParams(1.0, math.pi / 4, -math.pi)) == CoinParams(0, math.pi / 4, -math.pi)
    assert player_coin(Player.Bprime, CoinParams(2.0, 0.3, 1.0)) == CoinParams(2.0, 0.3, 0.0)
    got = player_coin(Player.Cprime, CoinParams(0.0, math.pi / 3, -3 * math.pi / 4))
    assert got == CoinParams(3 * math.pi / 4, math.pi / 3, -3 * math.pi / 4)
    assert player_coin(Player.Dprime, CoinParams(-5.0, 0.2, 0.3)) == CoinParams(0.3, 0.2, 0.3)


def test_player_parse_aliases():
    assert Player.parse("B'") is Player.Bprime
    assert Player.parse("Cprime") is Player.Cprime
    with pytest.raises(ValueError):
        Player.parse("E")


@given(triples)
def test_su2_coin_always_unitary(p):
    c = make_su2_coin(p)
    assert is_unitary(c, 1e-12)
    assert is_unitary(tensor_coin(c), 1e-12)


@given(triples)
def test_tensor_entries_are_products(p):
    c = make_su2_coin(p)
    m = tensor_coin(c)
    for i1, i2, j1, j2 in np.ndindex(2, 2, 2, 2):
        assert abs(m[2 * i1 + i2, 2 * j1 + j2] - c[i1, j1] * c[i2, j2]) < 1e-15


@given(triples)
def test_left_left_entry_matches_expansion(p):
    # (L, L) entry of the 4x4 coin is e^{2ia} cos^2 b
    m = tensor_coin(make_su2_coin(p))
    assert abs(m[0, 0] - cmath.exp(2j * p.alpha) * math.cos(p.beta) ** 2) < 1e-12


@given(triples)
def test_periodicity(p):
    base = make_su2_coin(p)
    for shifted in (CoinParams(p.alpha + 2 * math.pi, p.beta, p.gamma),
                    CoinParams(p.alpha, p.beta + 2 * math.pi, p.gamma),
                    CoinParams(p.alpha, p.beta, p.gamma + 2 * math.pi)):
        np.testing.assert_allclose(make_su2_coin(shifted), base, rtol=0, atol=1e-12)


@given(st.sampled_from(list(Player)), triples)
def test_player_constraint_idempotent(player, p):
    once = player_coin(player, p)
    assert player_coin(player, once) == once
    assert once.beta == p.beta
