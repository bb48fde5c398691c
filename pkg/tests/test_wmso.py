import itertools
import random

import pytest

from ordinal_automata.errors import DomainExceeded, UnboundVariable
from ordinal_automata.oracle import eval_oracle
from ordinal_automata.ordinal import (OMEGA, ZERO, e_relation, enumerate_ordinals, ord_cmp,
                                      ord_parse, ordinal, two_power)
from ordinal_automata.sweep import random_wmso_template
from ordinal_automata.syntax import And, Erel, parse_wmso, size
from ordinal_automata.wmso import (decide_wmso, encode_valuation, eval_wmso,
                                   find_witness_wmso, translate)

P = ord_parse
LEAST = "forall X. ((exists x. x in X) -> exists m. (m in X & forall y. (y in X -> m <= y)))"
ALL_FINITE = "exists X. forall x. x in X"
EVEN = ("exists X. forall x. ((x in X <-> !(s(x) in X)) & "
        "(!(exists y. x = s(y)) -> x in X))")


def random_valuation(rng, elements=12, max_set=4):
    v = {"x": rng.randrange(elements), "y": rng.randrange(elements)}
    for name in ("X", "Y"):
        v[name] = set(rng.sample(range(elements), rng.randint(0, max_set)))
    return v


def test_translate_membership():
    f = translate("x in X", 1)
    assert f == And(Erel("xh", "xh"), Erel("xh", "Xh"))
    assert translate("x < y", 1).free == {"xh", "yh"}


def test_hat_round_trip():
    enc = encode_valuation({"x": 2, "X": {0, 2}})
    assert enc == {"xh": ordinal(4), "Xh": ordinal(5)}
    assert e_relation(ordinal(4), ordinal(5))
    assert eval_oracle(translate("x in X", 1), enc, k=0) is True
    assert eval_wmso("x in X", {"x": 2, "X": {0, 2}}) is True


def test_dual_oracle_templates():
    rng = random.Random(0)
    pairs = agree = 0
    for _ in range(60):
        text = random_wmso_template(rng)
        f = parse_wmso(text)
        g = translate(f, 1)
        for _ in range(4):
            v = random_valuation(rng)
            direct = eval_wmso(f, {n: v[n] for n in f.free})
            via = eval_oracle(g, encode_valuation({n: v[n] for n in f.free}), k=0)
            pairs += 1
            agree += direct == via
            assert direct == via, (text, v)
    assert pairs >= 200 and agree == pairs


def test_translation_is_linear():
    # each node maps to one node, a first-order quantifier or free individual adds
    # a guard (two nodes), so the ratio is at most 5 and tends to 3 for big inputs
    rng = random.Random(1)
    ratios = []
    for _ in range(200):
        f = parse_wmso(random_wmso_template(rng))
        ratios.append(size(translate(f, 1)) / size(f))
    assert max(ratios) <= 5
    sizes = []
    for n in (1, 10, 40):
        big = parse_wmso(" & ".join(f"(exists u{i}. u{i} in X & x < u{i})" for i in range(n)))
        sizes.append(size(translate(big, 1)) / size(big))
    assert sizes == sorted(sizes, reverse=True)


def test_order_embedding():
    vals = list(enumerate_ordinals(2, 3))
    for g, d in itertools.combinations(vals, 2):
        assert ord_cmp(two_power(g), two_power(d)) == ord_cmp(g, d)


def test_membership_coherence_level_two():
    elements = [e for e in enumerate_ordinals(1, 6) if e < P("w*3")][:12]
    rng = random.Random(2)
    for _ in range(300):
        X = set(rng.sample(elements, rng.randint(0, 4)))
        Xh = encode_valuation({"X": X})["Xh"]
        for x in elements:
            assert (x in X) == e_relation(two_power(x), Xh)


def test_decide_sentences():
    for k in (1, 2):
        assert decide_wmso(LEAST, k)
        assert not decide_wmso(ALL_FINITE, k)
        assert decide_wmso("forall X. exists x. !(x in X)", k)
    # weak semantics: the even ordinals form an infinite set, so no finite X works
    assert not decide_wmso(EVEN, 1)


def test_witness_sets():
    w = find_witness_wmso("0 in X & !(1 in X)", 1)
    assert w == {"X": frozenset({ZERO})}
    assert encode_valuation(w)["Xh"] == ordinal(1)
    w = find_witness_wmso("x in X & !(s(x) in X) & 0 < x", 1)
    assert w["x"] in w["X"] and w["x"] + 1 not in w["X"]
    assert find_witness_wmso("x in X & !(x in X)", 1) is None


def test_level_zero_is_rejected():
    with pytest.raises(DomainExceeded):
        translate("x < y", 0)
    with pytest.raises(UnboundVariable):
        decide_wmso("x in X", 1)


def test_bounded_direct_enumeration_agrees():
    sentences = ["exists X. exists x. x in X & 3 < x",
                 "forall x. x < 4 -> exists X. x in X & !(s(x) in X)",
                 "exists X. (0 in X & 1 in X & 2 in X & !(3 in X))"]
    for s in sentences:
        assert decide_wmso(s, 1) == eval_wmso(s, {}, elements=range(8), max_set=4)
