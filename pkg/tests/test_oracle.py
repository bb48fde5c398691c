import itertools

import pytest

from ordinal_automata.oracle import (e_holds, eval_oracle, is_power_of_two, left_subtract,
                                     powers_of_two_in)
from ordinal_automata.ordinal import (OMEGA, ZERO, e_relation, enumerate_ordinals, ord_parse,
                                      ordinal, two_power)

P = ord_parse
VALUES = list(enumerate_ordinals(2, 3))


def test_examples():
    assert eval_oracle("x + y = z", {"x": OMEGA, "y": 1, "z": P("w + 1")}) is True
    assert eval_oracle("0 = 0") is True
    assert eval_oracle("exists z. x + z = y", {"x": P("w^2"), "y": OMEGA}) is False
    assert eval_oracle("exists z. x + z = y", {"x": OMEGA, "y": P("w^2")}) is True


def test_unknown_when_unbounded():
    # nothing pins y down, and no candidate works
    assert eval_oracle("exists y. x < y & y + 1 = y", {"x": 0}) is None
    assert eval_oracle("forall y. y < y + 1") is None
    assert eval_oracle("exists y. x < y", {"x": 0}) is True


def test_pinned_quantifiers_are_exact():
    # w has no predecessor, but y + 1 = w leaves y unbounded, so only "not true"
    assert eval_oracle("exists y. y < x & y + 1 = x", {"x": OMEGA}) is not True
    assert eval_oracle("exists y. y < x & y + 1 = x", {"x": ordinal(0)}) is False
    assert eval_oracle("exists y. y < x & y + 1 = x", {"x": P("w + 1")}) is True
    assert eval_oracle("forall y. E(y, x) -> y < x", {"x": P("w*3 + 5")}) is True
    assert eval_oracle("exists y. y + x = z", {"x": OMEGA, "z": OMEGA}) is True


def test_missing_valuation():
    with pytest.raises(KeyError):
        eval_oracle("x = y", {"x": 0})


def test_left_subtract_inverts_addition():
    for a, b in itertools.product(VALUES, repeat=2):
        assert left_subtract(a, a + b) == b
        z = left_subtract(a, b)
        assert (z is None) == (a > b)
        if z is not None:
            assert a + z == b


def test_e_holds_matches_ordinal_core():
    for x, y in itertools.product(VALUES, repeat=2):
        assert e_holds(x, y) == e_relation(x, y)
    for g in VALUES:
        assert is_power_of_two(two_power(g))
        assert powers_of_two_in(two_power(g)) == [two_power(g)]
    assert not is_power_of_two(ordinal(6))
    assert powers_of_two_in(ZERO) == []
