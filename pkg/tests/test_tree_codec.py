import random

import pytest

from ordinal_automata.codec import decode, encode, ordinal_automaton, validity_automaton
from ordinal_automata.errors import DomainExceeded, MalformedTree, ParseError
from ordinal_automata.ordinal import (OMEGA, ZERO, enumerate_nested, enumerate_ordinals,
                                      ord_parse, ordinal)
from ordinal_automata.tree import (PAD, Tree, convolve, enumerate_trees, leaf, node,
                                   pad_variants, parse_sexpr, project_component, to_dot,
                                   to_sexpr)

P = ord_parse

VALUES = {
    0: [ordinal(n) for n in range(64)],
    1: list(enumerate_ordinals(2, 3)),
    2: enumerate_nested(2, 1, 2),
}


def numeral(*bits):
    t = leaf()
    for b in reversed(bits):
        t = node(str(b), leaf(), t)
    return t


def figure_tree():
    """w^3*5 + w*3 + 8 drawn by hand: spine A, A, A, E."""
    spine = node("E", leaf(), numeral(1, 0, 1))
    spine = node("A", spine, leaf())
    spine = node("A", spine, numeral(1, 1))
    return node("A", spine, numeral(0, 0, 0, 1))


def test_encode_figure_tree():
    assert encode(P("w^3*5 + w*3 + 8"), 1) == figure_tree()
    assert decode(figure_tree(), 1) == P("w^3*5 + w*3 + 8")


def test_encode_zero_and_small():
    for k in (0, 1, 2, 3):
        assert encode(ZERO, k) == leaf()
    assert encode(5, 0) == node("E", leaf(), numeral(1, 0, 1))
    assert encode(1, 1) == node("E", leaf(), numeral(1))
    assert encode(OMEGA, 1) == node("A", node("E", leaf(), numeral(1)), leaf())


def test_level_two_skeleton():
    # every small ordinal still carries the full nesting depth
    t = encode(1, 2)
    assert t == node("E", leaf(), node("E", leaf(), numeral(1)))
    t = encode(P("w^w"), 2)
    assert t.label == "B"
    assert decode(t, 2) == P("w^w")


def test_domain_checks():
    with pytest.raises(DomainExceeded):
        encode(OMEGA, 0)
    with pytest.raises(DomainExceeded):
        encode(P("w^w"), 1)
    with pytest.raises(DomainExceeded):
        encode(P("w^(w^2)"), 2)
    encode(P("w^(w*5 + 3)"), 2)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_roundtrip_and_validity(k):
    va = validity_automaton(k)
    for a in VALUES[k]:
        t = encode(a, k)
        assert decode(t, k) == a
        assert va.accepts(t)
        assert ordinal_automaton(a, k).accepts(t)
        for n, v in enumerate(pad_variants(t, 1)):
            if n > 3:
                break
            assert va.accepts(v)
            assert decode(v, k) == a


def test_padding_variants_of_omega():
    t = encode(OMEGA, 1)
    count = 0
    for v in pad_variants(t, 2):
        assert decode(v, 1) == OMEGA
        assert validity_automaton(1).accepts(v)
        count += 1
    assert count > 100


def test_canonical_is_minimal():
    va = validity_automaton(1)
    for a in VALUES[1][1:]:
        t = encode(a, 1)
        for u, s in t.nodes():
            if s.left is not None and s.left.is_leaf and s.right.is_leaf:
                cut = _replace(t, u, leaf())
                kept = va.accepts(cut) and decode(cut, 1) == a
                assert not kept, f"{a}: children of {u!r} are removable"


def _replace(t, addr, sub):
    if not addr:
        return sub
    if addr[0] == "a":
        return Tree(t.label, _replace(t.left, addr[1:], sub), t.right)
    return Tree(t.label, t.left, _replace(t.right, addr[1:], sub))


@pytest.mark.parametrize("tree,reason", [
    (node("E", leaf(), numeral(1, 0)), "most significant"),
    (node("A", node("E", leaf(), numeral(1)), node("E", leaf(), numeral(1))), "binary digit"),
    (node("E", leaf(), leaf()), "leading coefficient"),
    (node("A", leaf(), numeral(1)), "without 'E'"),
    (node("E", numeral(1), numeral(1)), "padding"),
    (node("1", leaf(), leaf()), "expected 'A' or 'E'"),
])
def test_malformed(tree, reason):
    assert not validity_automaton(1).accepts(tree)
    with pytest.raises(MalformedTree) as exc:
        decode(tree, 1)
    assert reason in str(exc.value)


def test_two_e_on_spine_rejected():
    t = node("E", node("E", leaf(), numeral(1)), numeral(1))
    assert not validity_automaton(1).accepts(t)
    with pytest.raises(MalformedTree):
        decode(t, 1)


@pytest.mark.parametrize("k,symbols", [(0, "#01AE"), (1, "#01AE"), (2, "#01BE")])
def test_validity_iff_decodes_small_trees(k, symbols):
    # exhaustive over every tree of height <= 3 on the level's letters
    va = validity_automaton(k)
    n = 0
    for t in enumerate_trees(list(symbols), 3):
        try:
            decode(t, k)
            ok = True
        except MalformedTree:
            ok = False
        assert va.accepts(t) == ok, to_sexpr(t)
        n += 1
    assert n == 163806


def test_validity_iff_decodes_random_deep():
    rng = random.Random(7)
    va = validity_automaton(2)

    def grow(depth):
        if depth == 0 or rng.random() < 0.3:
            return leaf()
        return Tree(rng.choice("#01ABE"), grow(depth - 1), grow(depth - 1))

    hits = 0
    for _ in range(20000):
        t = grow(7)
        try:
            decode(t, 2)
            ok = True
        except MalformedTree:
            ok = False
        hits += ok
        assert va.accepts(t) == ok
    assert hits > 100


def test_convolve_diagonal_and_projection():
    t = encode(P("w^2*3 + 2"), 1)
    c = convolve([t, t])
    assert all(lab == (s, s) for lab, s in zip(c.labels().values(), t.labels().values()))
    w, one = encode(OMEGA, 1), encode(1, 1)
    c = convolve([w, one])
    assert c.label == ("A", "E")
    assert c.left.label == ("E", PAD)
    assert c.right.label == (PAD, "1")
    assert project_component(c, 0) == w
    assert project_component(c, 1) == one
    assert project_component(convolve([w, leaf()]), 1) == leaf()
    assert decode(project_component(convolve([w, leaf()]), 1), 1) == ZERO


def test_convolve_roundtrip_random():
    rng = random.Random(3)
    for k in (1, 2):
        for _ in range(100):
            xs = [rng.choice(VALUES[k]) for _ in range(3)]
            c = convolve([encode(x, k) for x in xs])
            assert [decode(project_component(c, i), k) for i in range(3)] == xs


def test_convolve_flattens_tuples():
    a, b, c = encode(1, 1), encode(OMEGA, 1), encode(2, 1)
    assert convolve([convolve([a, b]), c]) == convolve([a, b, c])


def test_sexpr_roundtrip_and_errors():
    t = encode(P("w^3*5 + w*3 + 8"), 1)
    assert parse_sexpr(to_sexpr(t)) == t
    c = convolve([t, encode(2, 1)])
    assert parse_sexpr(to_sexpr(c)) == c
    for bad in ["", "(A", "(A () )", "(# () ()) extra", "()"]:
        with pytest.raises(ParseError):
            parse_sexpr(bad)


def test_tree_basics():
    t = figure_tree()
    assert t.height() == 7
    assert t.size() == 2 * len([1 for _, s in t.nodes() if s.left is not None]) + 1
    assert t.subtree("aaa").label == "E"
    with pytest.raises(ValueError):
        Tree("A", leaf(), None)
    assert to_dot(t).startswith("digraph")
