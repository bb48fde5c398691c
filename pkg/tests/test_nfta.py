import itertools
import os
import random
import subprocess
import sys

import pytest

from _laws import profiles, symbols, tree_count, violations
from ordinal_automata.atoms import (addition_automaton, e_automaton, equality_automaton,
                                    less_automaton, universe)
from ordinal_automata.codec import decode, encode, ordinal_automaton, validity_automaton
from ordinal_automata.compiler import compile_formula
from ordinal_automata.errors import AlphabetMismatch
from ordinal_automata.nfta import (Op, TreeAutomaton, complement, cylindrify, determinize,
                                   empty_automaton, from_json, is_empty, permute, product,
                                   project, retrack, saturate_padding, to_dot, to_json, trim,
                                   universal_automaton, witness)
from ordinal_automata.ordinal import OMEGA, enumerate_ordinals
from ordinal_automata.tree import convolve, enumerate_trees, leaf, project_component

VALUES = list(enumerate_ordinals(2, 3))
ONE_TRACK = symbols(1)
SMALL_TREES = list(enumerate_trees(["#", "0", "1", "A", "B", "E"], 2)) + \
    list(enumerate_trees(["#", "1", "E"], 3))


def random_nfta(seed, width=1, n_states=3, density=0.15):
    rng = random.Random(seed)
    trans = {}
    for sym in symbols(width):
        for l, r in itertools.product(range(n_states), repeat=2):
            if rng.random() < density:
                trans[(sym, l, r)] = {rng.randrange(n_states)}
    leaves = [q for q in range(n_states) if rng.random() < 0.5] or [0]
    finals = [q for q in range(n_states) if rng.random() < 0.4] or [n_states - 1]
    return TreeAutomaton(width, n_states, leaves, finals, trans)


def one_track_corpus():
    u = validity_automaton(1)
    out = [("validity", u), ("omega", ordinal_automaton(OMEGA, 1)),
           ("x<w", compile_formula("x < w", 1)[0]),
           ("even", compile_formula("exists y. y + y = x", 1)[0]),
           ("E(x,x)", retrack(e_automaton(1), [0, 0], 1))]
    out += [(f"random{s}", random_nfta(s)) for s in range(6)]
    return out


CORPUS = one_track_corpus()
IDS = [name for name, _ in CORPUS]
U1 = validity_automaton(1)
FULL1 = universal_automaton(1)


# -- constructor and example checks ------------------------------------------------------

def test_empty_and_universal():
    e, u = empty_automaton(1), universal_automaton(1)
    for t in SMALL_TREES[:300]:
        assert not e.accepts(t)
        assert u.accepts(t)
    assert is_empty(e) and witness(e) is None
    assert is_empty(complement(u, u))
    c = complement(e, U1)
    assert all(c.accepts(t) == U1.accepts(t) for t in SMALL_TREES)


def test_f_empty_accepts_nothing():
    a = TreeAutomaton(1, 2, [0], [], {(("A",), 0, 0): {1}})
    assert is_empty(a)
    assert not any(a.accepts(t) for t in SMALL_TREES)


def test_complement_examples():
    w = ordinal_automaton(OMEGA, 1)
    c = complement(w, U1)
    for x in VALUES:
        assert c.accepts(encode(x, 1)) == (x != OMEGA)
    assert c.deterministic


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        product(universal_automaton(1), universal_automaton(2))
    with pytest.raises(AlphabetMismatch):
        validity_automaton(1).accepts(convolve([encode(1, 1), encode(2, 1)]))


@pytest.mark.parametrize("name,a", CORPUS, ids=IDS)
def test_product_laws(name, a):
    same = product(a, a, Op.AND)
    none = product(a, complement(a, FULL1), Op.AND)
    assert is_empty(none)
    for t in SMALL_TREES:
        assert same.accepts(t) == a.accepts(t)


def test_product_iff_differential():
    rng = random.Random(11)
    a = compile_formula("x < w*2", 1)[0]
    b = compile_formula("exists y. y + y = x", 1)[0]
    iff = product(a, b, Op.IFF, U1)
    imp = product(a, b, Op.IMPLIES, U1)
    orr = product(a, b, Op.OR)
    for _ in range(1000):
        t = encode(rng.choice(VALUES), 1)
        pa, pb = a.accepts(t), b.accepts(t)
        assert iff.accepts(t) == (pa == pb)
        assert imp.accepts(t) == ((not pa) or pb)
        assert orr.accepts(t) == (pa or pb)


def test_project_addition():
    a = addition_automaton(1)
    # erasing y leaves "x is a left part of z", i.e. x <= z
    p = project(a, 1)
    for x, z in itertools.product(VALUES, repeat=2):
        assert p.accepts(convolve([encode(x, 1), encode(z, 1)])) == (x <= z), (x, z)
    # erasing x leaves "z ends with y"; the oracle searches x <= z
    p = project(a, 0)
    for y, z in itertools.product(VALUES, repeat=2):
        want = any(x + y == z for x in VALUES if x <= z)
        assert p.accepts(convolve([encode(y, 1), encode(z, 1)])) == want, (y, z)
    assert not p.accepts(convolve([encode(1, 1), encode(OMEGA, 1)]))


def test_project_diagonal_is_universe():
    p = project(equality_automaton(1), 1)
    bad, _ = violations([p, U1], ONE_TRACK, 5, lambda f: f[0] == f[1])
    assert bad == 0


def test_project_monotone():
    a = less_automaton(1)
    p = project(a, 0)
    for x, y in itertools.product(VALUES[:20], VALUES):
        if a.accepts(convolve([encode(x, 1), encode(y, 1)])):
            assert p.accepts(encode(y, 1))


def test_cylindrify_and_permute():
    lt = less_automaton(1)
    c = cylindrify(lt, 1)
    swapped = permute(lt, [1, 0])
    back = permute(swapped, [1, 0])
    rng = random.Random(5)
    for _ in range(300):
        x, y, z = (rng.choice(VALUES) for _ in range(3))
        tx, ty, tz = encode(x, 1), encode(y, 1), encode(z, 1)
        want = x < y
        assert c.accepts(convolve([tx, tz, ty])) == want
        assert swapped.accepts(convolve([ty, tx])) == want
        assert back.accepts(convolve([tx, ty])) == want


def test_witness_examples():
    t = witness(validity_automaton(1))
    assert decode(project_component(t, 0), 1) is not None
    phi1 = ("x > 0 & (forall y. y < x -> y + 1 < x) & "
            "(forall z. z < x -> !(z > 0 & (forall y. y < z -> y + 1 < z)))")
    a, tracks = compile_formula(phi1, 1)
    assert tracks == ("x",)
    assert decode(project_component(witness(a), 0), 1) == OMEGA


@pytest.mark.parametrize("name,a", CORPUS, ids=IDS)
def test_emptiness_witness_coherence(name, a):
    w = witness(a)
    assert is_empty(a) == (w is None)
    if w is not None:
        assert a.accepts(w)
        # minimality: nothing strictly lower is accepted
        low = [t for t in SMALL_TREES if t.height() < w.height()]
        assert not any(a.accepts(t) for t in low)


def test_witness_is_lowest_exhaustively():
    for seed in range(30):
        a = random_nfta(seed, n_states=4, density=0.05)
        w = witness(a)
        ts = list(enumerate_trees(["#", "0", "1", "A", "B", "E"], 2))
        accepted = [t.height() for t in ts if a.accepts(t)]
        if w is None:
            assert not accepted
        elif accepted:
            assert w.height() == min(accepted)
        else:
            assert w.height() > 2


@pytest.mark.parametrize("name,a", CORPUS, ids=IDS)
def test_trim(name, a):
    t = trim(a)
    assert trim(t).n_states == t.n_states
    assert t.n_states <= a.n_states
    bad, _ = violations([a, t], ONE_TRACK, 5, lambda f: f[0] == f[1])
    assert bad == 0
    assert trim(empty_automaton(1)).n_states == 0


def test_determinize_size_bound():
    for seed in range(20):
        a = random_nfta(seed, n_states=4, density=0.2)
        d = determinize(a)
        assert d.deterministic
        assert d.n_states <= 2 ** a.n_states


def test_json_and_dot_roundtrip():
    a = addition_automaton(1)
    text = to_json(a)
    b = from_json(text)
    assert to_json(b) == text
    assert b.n_states == a.n_states and b.transitions == a.transitions
    rng = random.Random(2)
    for _ in range(100):
        x, y = rng.choice(VALUES), rng.choice(VALUES)
        t = convolve([encode(x, 1), encode(y, 1), encode(x + y, 1)])
        assert b.accepts(t)
    dot = to_dot(less_automaton(1))
    assert dot.startswith("digraph") and "doublecircle" in dot
    with pytest.raises(ValueError):
        from_json('{"format": "other"}')


def test_serialisation_independent_of_hash_seed(tmp_path):
    code = ("from ordinal_automata.compiler import compile_formula\n"
            "from ordinal_automata.nfta import to_json\n"
            "print(to_json(compile_formula('exists y. x + y = z & y < w', 1)[0]), end='')\n")
    outs = set()
    for seed in ("0", "1", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        outs.add(subprocess.run([sys.executable, "-c", code], env=env, check=True,
                                capture_output=True, text=True).stdout)
    assert len(outs) == 1


# -- laws over every tree of height <= 5 ------------------------------------------------

def test_profile_counts_match_enumeration():
    auts = [a for _, a in CORPUS]
    for syms, h in ((["#", "0", "1", "A", "B", "E"], 2), (["#", "1", "E"], 3)):
        trees = list(enumerate_trees(syms, h))
        hist = {}
        for t in trees:
            key = tuple(a.run_states(t) for a in auts)
            hist[key] = hist.get(key, 0) + 1
        dp = profiles(auts, [(s,) for s in syms], h)
        assert dict(dp) == hist
        assert sum(dp.values()) == tree_count(len(syms), h) == len(trees)


@pytest.mark.parametrize("name,a", CORPUS, ids=IDS)
def test_double_complement(name, a):
    for u in (U1, FULL1):
        cc = complement(complement(a, u), u)
        bad, total = violations([a, u, cc], ONE_TRACK, 5,
                                lambda f: f[2] == (f[0] and f[1]))
        assert bad == 0
        assert total == tree_count(6, 5)


def test_de_morgan():
    for (_, a), (_, b) in itertools.combinations(CORPUS, 2):
        lhs = complement(product(a, b, Op.AND), U1)
        rhs = product(complement(a, U1), complement(b, U1), Op.OR)
        lhs2 = complement(product(a, b, Op.OR), U1)
        rhs2 = product(complement(a, U1), complement(b, U1), Op.AND)
        bad, _ = violations([lhs, rhs, lhs2, rhs2], ONE_TRACK, 5,
                            lambda f: f[0] == f[1] and f[2] == f[3])
        assert bad == 0


@pytest.mark.parametrize("name,a", CORPUS, ids=IDS)
def test_determinize_preserves_language(name, a):
    d = determinize(a)
    assert d.deterministic
    auts = [a, d]
    for p, _ in profiles(auts, ONE_TRACK, 5).items():
        assert len(p[1]) <= 1
    bad, _ = violations(auts, ONE_TRACK, 5, lambda f: f[0] == f[1])
    assert bad == 0


@pytest.mark.parametrize("name,a", CORPUS, ids=IDS)
def test_project_cylindrify(name, a):
    for at in (0, 1):
        back = project(cylindrify(a, at), at)
        bad, _ = violations([back, saturate_padding(a)], ONE_TRACK, 5,
                            lambda f: f[0] == f[1])
        assert bad == 0
    # padding-closed languages come back unchanged
    if saturate_padding(a) is a:
        bad, _ = violations([project(cylindrify(a, 0), 0), a], ONE_TRACK, 5,
                            lambda f: f[0] == f[1])
        assert bad == 0


def _included(x, y, syms, h):
    bad, _ = violations([x, y], syms, h, lambda f: (not f[0]) or f[1])
    return bad == 0


def test_projection_adjunction():
    # project(B) <= C  iff  B <= cylindrify(C), C padding-closed
    twos = [less_automaton(1), equality_automaton(1), e_automaton(1),
            product(universe(2, 1), random_nfta(3, width=2, n_states=2, density=0.3), Op.AND)]
    ones = [U1, compile_formula("x < w", 1)[0], compile_formula("exists y. y + y = x", 1)[0],
            complement(ordinal_automaton(OMEGA, 1), U1)]
    two_syms = symbols(2)
    seen = set()
    for b in twos:
        for c in ones:
            assert saturate_padding(c) is c or c.leaves == saturate_padding(c).leaves
            for i in (0, 1):
                lhs = _included(project(b, i), c, ONE_TRACK, 5)
                rhs = _included(b, cylindrify(c, i), two_syms, 5)
                assert lhs == rhs
                seen.add(lhs)
    assert seen == {True, False}


def test_random_nfta_laws_beyond_depth_five():
    rng = random.Random(9)
    pool = [random_nfta(s, n_states=3, density=0.25) for s in range(10)]
    for _ in range(200):
        a, b = rng.sample(pool, 2)
        t = _grow(rng, 8)
        lhs = complement(product(a, b, Op.AND), FULL1)
        assert lhs.accepts(t) == (not (a.accepts(t) and b.accepts(t)))
        assert determinize(a).accepts(t) == a.accepts(t)


def _grow(rng, depth):
    from ordinal_automata.tree import Tree
    if depth == 0 or rng.random() < 0.3:
        return leaf()
    return Tree(rng.choice("#01ABE"), _grow(rng, depth - 1), _grow(rng, depth - 1))
