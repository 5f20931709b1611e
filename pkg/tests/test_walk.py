import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_unitary
from qparrondo.coins import HADAMARD, CoinParams, InvalidCoinError, make_su2_coin, tensor_coin
from qparrondo.walk import (
    D, L, R, U,
    Distribution,
    TruncationError,
    WalkState,
    apply_coin,
    apply_shift,
    compact,
    dense_step_oracle,
    evolve,
    initial_state,
    marginals,
    position_distribution,
    step,
    trajectory,
)

I4 = np.eye(4)
HH = tensor_coin(HADAMARD)
UNIT_SITES = [(-1, 0), (1, 0), (0, -1), (0, 1)]


def coin(a, b, g):
    return tensor_coin(make_su2_coin(CoinParams(a, b, g)))


def pure(x, y, c, t=0):
    v = np.zeros(4, complex)
    v[c] = 1
    return WalkState.from_amplitudes({(x, y): v}, step=t)


def assert_states_close(s1, s2, atol):
    d1, d2 = s1.as_dict(), s2.as_dict()
    for site in set(d1) | set(d2):
        np.testing.assert_allclose(s1[site], s2[site], rtol=0, atol=atol, err_msg=str(site))
    assert s1.step == s2.step


# --- initial state --------------------------------------------------------

def test_initial_state():
    s = initial_state()
    assert s.step == 0
    assert s.norm_squared() == 1.0
    np.testing.assert_array_equal(s[0, 0], [0.5, -0.5, -0.5, 0.5])
    assert s[0, 0][U] == 0.5
    assert position_distribution(s).as_dict() == {(0, 0): 1.0}


# --- coin -------------------------------------------------------------------

def test_identity_coin_leaves_state():
    s = initial_state()
    np.testing.assert_array_equal(apply_coin(s, I4).amps, s.amps)


def test_sign_flip_coin():
    s = apply_coin(initial_state(), np.diag([1, -1, -1, 1]))
    np.testing.assert_array_equal(s[0, 0], [0.5, 0.5, 0.5, 0.5])
    assert s.step == 0


def test_hadamard_squared_coin_concentrates_on_up():
    s = apply_coin(initial_state(), HH)
    np.testing.assert_allclose(s[0, 0], [0, 0, 0, 1], atol=1e-15)


def test_non_unitary_coin_rejected():
    with pytest.raises(InvalidCoinError):
        apply_coin(initial_state(), 2 * I4)
    with pytest.raises(InvalidCoinError):
        apply_coin(initial_state(), np.eye(2))


# --- shift ------------------------------------------------------------------

def test_shift_pure_left():
    s = apply_shift(pure(0, 0, L))
    assert s.positions() == [(-1, 0)]
    np.testing.assert_array_equal(s[-1, 0], [1, 0, 0, 0])
    assert s.step == 1


def test_shift_pure_up_off_origin():
    s = apply_shift(pure(2, 3, U, t=1))
    assert s.positions() == [(2, 4)]
    np.testing.assert_array_equal(s[2, 4], [0, 0, 0, 1])


@pytest.mark.parametrize("c,target", [(L, (-1, 0)), (R, (1, 0)), (D, (0, -1)), (U, (0, 1))])
def test_shift_each_direction(c, target):
    s = apply_shift(pure(0, 0, c))
    assert s.positions() == [target]
    assert s[target][c] == 1


def test_shift_of_initial_state_spreads_evenly():
    d = position_distribution(apply_shift(initial_state())).as_dict()
    assert d == {site: 0.25 for site in UNIT_SITES}


# --- step / evolve ----------------------------------------------------------

def test_hadamard_step_goes_up():
    d = position_distribution(step(initial_state(), coin(0, math.pi / 4, 0)))
    assert abs(d[0, 1] - 1) < 1e-12
    assert abs(d.total() - 1) < 1e-12


def test_quarter_phase_step_is_uniform():
    d = position_distribution(step(initial_state(), coin(math.pi / 2, math.pi / 4, 0)))
    for site in UNIT_SITES:
        assert abs(d[site] - 0.25) < 1e-12


def test_identity_step_is_uniform():
    d = position_distribution(step(initial_state(), I4)).as_dict()
    assert d == {site: 0.25 for site in UNIT_SITES}


def test_empty_schedule():
    s = initial_state()
    assert evolve(s, []) is s


def test_two_hadamard_steps_keep_invariants():
    s = evolve(initial_state(), [HH, HH])
    assert s.step == 2
    assert s.invariant_violations() == []
    assert all(abs(x) + abs(y) <= 2 and (x + y) % 2 == 0 for x, y in s.positions())


def test_single_entry_schedule_is_step():
    m = coin(0.3, 0.9, -1.2)
    np.testing.assert_array_equal(evolve(initial_state(), [m]).amps, step(initial_state(), m).amps)


def test_trajectory_yields_every_step():
    states = list(trajectory(initial_state(), [HH] * 5))
    assert [s.step for s in states] == [1, 2, 3, 4, 5]


# --- distribution and marginals ---------------------------------------------

def test_marginals_examples():
    assert marginals(Distribution.from_dict({(0, 0): 1.0})).as_dict() == dict.fromkeys(
        ("p_left", "p_right", "p_down", "p_up"), 0.0)
    m = marginals(Distribution.from_dict({site: 0.25 for site in UNIT_SITES}))
    assert (m.p_left, m.p_right, m.p_down, m.p_up) == (0.25,) * 4
    m = marginals(Distribution.from_dict({(0, 1): 1.0}))
    assert (m.p_left, m.p_right, m.p_down, m.p_up) == (0, 0, 0, 1)


def test_marginals_exclude_axes():
    m = marginals(Distribution.from_dict({(2, -1): 0.5, (0, 3): 0.25, (-1, 0): 0.25}))
    assert (m.p_left, m.p_right, m.p_down, m.p_up) == (0.25, 0.5, 0.5, 0.25)


def test_csv_format():
    d = Distribution.from_dict({(1, 0): 0.1, (-1, 2): 0.3, (-1, -2): 0.6, (5, 5): 0.0})
    text = d.to_csv()
    assert text.splitlines() == ["x,y,p", "-1,-2,0.59999999999999998", "-1,2,0.29999999999999999",
                                 "1,0,0.10000000000000001"]


def test_csv_roundtrips_floats():
    d = position_distribution(evolve(initial_state(), [coin(0.4, 0.7, -2.0)] * 7))
    rows = d.to_csv().splitlines()[1:]
    back = {(int(x), int(y)): float(p) for x, y, p in (r.split(",") for r in rows)}
    assert back == d.as_dict()


# --- storage details --------------------------------------------------------

def test_from_amplitudes_rejects_mixed_parity():
    with pytest.raises(ValueError):
        WalkState.from_amplitudes({(0, 0): [1, 0, 0, 0], (1, 0): [1, 0, 0, 0]})


def test_compact_drops_only_tiny_entries():
    s = evolve(initial_state(), [HH] * 6)
    c = compact(s)
    assert c.as_dict().keys() == s.as_dict().keys()
    for site in s.positions():
        np.testing.assert_array_equal(c[site], s[site])
    tiny = compact(s, threshold=0.2)
    assert set(tiny.positions()) <= set(s.positions())


def test_invariant_report_flags_bad_norm():
    s = WalkState.from_amplitudes({(0, 0): [1, 1, 0, 0]})
    assert any("norm" in v for v in s.invariant_violations())


def test_long_run_stays_normalized():
    s = evolve(initial_state(), [coin(0.2, 0.6, -0.9)] * 200)
    assert abs(s.norm_squared() - 1) < 1e-10
    assert s.invariant_violations() == []


# --- dense oracle -----------------------------------------------------------

@pytest.mark.parametrize("params", [(0, math.pi / 4, 0), (math.pi / 2, math.pi / 4, 0), (1.3, 0.4, -2.2)])
def test_dense_oracle_one_step(params):
    m = coin(*params)
    assert_states_close(dense_step_oracle(initial_state(), m, 2), step(initial_state(), m), 1e-12)


def test_dense_oracle_identity_matches_shift():
    s = initial_state()
    o = dense_step_oracle(s, I4, 2)
    sh = apply_shift(s)
    for site in set(o.positions()) | set(sh.positions()):
        np.testing.assert_array_equal(o[site], sh[site])


def test_dense_oracle_random_coin_three_steps(rng):
    m = random_unitary(rng)
    dense = initial_state()
    for _ in range(3):
        dense = dense_step_oracle(dense, m, 5)
    assert_states_close(dense, evolve(initial_state(), [m] * 3), 1e-10)


def test_dense_oracle_truncation():
    s = evolve(initial_state(), [HH] * 3)
    with pytest.raises(TruncationError):
        dense_step_oracle(s, HH, 3)


# --- properties -------------------------------------------------------------

angle = st.floats(-2 * math.pi, 2 * math.pi, allow_nan=False)
seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(angle, angle, angle), min_size=1, max_size=12))
def test_norm_support_parity_every_step(triples):
    for s in trajectory(initial_state(), [coin(*p) for p in triples]):
        assert s.invariant_violations() == []
        assert abs(s.norm_squared() - 1) < 1e-10


@settings(max_examples=15, deadline=None)
@given(seeds, st.integers(1, 4))
def test_dense_oracle_agrees_with_evolve(seed, t):
    r = np.random.default_rng(seed)
    coins = [random_unitary(r) for _ in range(t)]
    dense = initial_state()
    for m in coins:
        dense = dense_step_oracle(dense, m, t + 1)
    assert_states_close(dense, evolve(initial_state(), coins), 1e-10)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_shift_is_a_permutation(seed):
    r = np.random.default_rng(seed)
    s = evolve(initial_state(), [random_unitary(r) for _ in range(3)])
    shifted = apply_shift(s)
    key = lambda z: (z.real, z.imag)  # noqa: E731
    before = sorted((v for v in s.amps.ravel().tolist() if v != 0), key=key)
    after = sorted((v for v in shifted.amps.ravel().tolist() if v != 0), key=key)
    assert before == after


@settings(max_examples=30, deadline=None)
@given(seeds, st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
def test_step_is_linear(seed, a, b):
    r = np.random.default_rng(seed)
    m = random_unitary(r)
    v1 = r.standard_normal((4, 3, 3)) + 1j * r.standard_normal((4, 3, 3))
    v2 = r.standard_normal((4, 3, 3)) + 1j * r.standard_normal((4, 3, 3))
    s1, s2, s12 = (WalkState(v, step=2) for v in (v1, v2, a * v1 + b * v2))
    np.testing.assert_allclose(step(s12, m).amps, a * step(s1, m).amps + b * step(s2, m).amps,
                               rtol=0, atol=1e-12)
