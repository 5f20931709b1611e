import json

import pytest
from hypothesis import given, strategies as st

from qparrondo.coins import Player
from qparrondo.rules import QUADRANT_SIGNS, Mode, decide_winners
from qparrondo.walk import Marginals

A, B, C, D = Player.A, Player.Bprime, Player.Cprime, Player.Dprime


def winners(l, r, d, u, tol=1e-9, mode=Mode.SIGN):
    return decide_winners(Marginals(l, r, d, u), tol, mode).winners


@pytest.mark.parametrize("m,expected", [
    ((0.1, 0.3, 0.1, 0.3), {A}),
    ((0.2, 0.2, 0.1, 0.3), {A, B}),
    ((0.25, 0.25, 0.25, 0.25), {A, B, C, D}),
    ((0.3, 0.1, 0.3, 0.1), {C}),
    ((0.3, 0.1, 0.1, 0.3), {B}),
    ((0.1, 0.3, 0.3, 0.1), {D}),
])
def test_examples(m, expected):
    assert winners(*m) == expected


def test_tie_tolerance_is_inclusive():
    assert winners(0.2, 0.2 + 1e-9, 0.1, 0.3) == {A, B}
    assert winners(0.2, 0.2 + 2e-9, 0.1, 0.3) == {A}
    assert winners(0.2, 0.2 + 2e-9, 0.1, 0.3, tol=0.0) == {A}
    assert winners(0.2, 0.2, 0.1, 0.3, tol=0.0) == {A, B}


def test_negative_tol_rejected():
    with pytest.raises(ValueError):
        decide_winners(Marginals(0.25, 0.25, 0.25, 0.25), -1e-9)


def test_strict_mode_flags_unequal_four_way():
    v = decide_winners(Marginals(0.3, 0.3, 0.2, 0.2), 1e-9, Mode.STRICT)
    assert v.winners == {A, B, C, D}
    assert v.four_way_unequal
    v = decide_winners(Marginals(0.25, 0.25, 0.25, 0.25), 1e-9, Mode.STRICT)
    assert not v.four_way_unequal
    assert not decide_winners(Marginals(0.3, 0.3, 0.2, 0.2), 1e-9, Mode.SIGN).four_way_unequal


def test_mode_aliases():
    assert Mode.parse("sign-pattern") is Mode.SIGN
    assert Mode.parse("strict-four-way") is Mode.STRICT
    with pytest.raises(ValueError):
        Mode.parse("loose")


def test_json_schema():
    v = decide_winners(Marginals(0.2, 0.2, 0.1, 0.3))
    doc = json.loads(v.to_json())
    assert list(doc) == ["winners", "p_left", "p_right", "p_down", "p_up", "mode", "tol"]
    assert doc["winners"] == ["A", "Bprime"]
    assert '"p_left":0.20000000000000001' in v.to_json().replace(" ", "")
    strict = json.loads(decide_winners(Marginals(0.2, 0.2, 0.1, 0.3), mode="strict").to_json())
    assert strict["four_way_unequal"] is False


probs = st.floats(0, 1, allow_nan=False)
tols = st.floats(0, 0.5, allow_nan=False)


@given(probs, probs, probs, probs, tols)
def test_never_empty(l, r, d, u, tol):
    assert winners(l, r, d, u, tol)


@given(probs, probs, probs, probs, tols)
def test_quadrant_consistency(l, r, d, u, tol):
    sx = 0 if abs(r - l) <= tol else (1 if r > l else -1)
    sy = 0 if abs(u - d) <= tol else (1 if u > d else -1)
    expected = {p for p, (qx, qy) in QUADRANT_SIGNS.items() if sx in (0, qx) and sy in (0, qy)}
    assert winners(l, r, d, u, tol) == expected


@given(probs, probs, probs, probs, tols, tols)
def test_tolerance_monotone(l, r, d, u, t1, t2):
    lo, hi = sorted((t1, t2))
    assert winners(l, r, d, u, lo) <= winners(l, r, d, u, hi)


@given(probs, probs, probs, probs)
def test_solo_a_needs_strict_margins(l, r, d, u):
    v = winners(l, r, d, u)
    if v == {A}:
        assert r > l + 1e-9 and u > d + 1e-9
