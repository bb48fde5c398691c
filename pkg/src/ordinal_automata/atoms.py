"""Automata for the atomic relations: x+y=z, x=y, x<y, x<=y, E(x,y), x=c.

Each relation is built as a small *core* automaton that assumes its tracks
are well-formed trees, intersected with the validity automaton on every
track.  Core states are read top-down as obligations on a subtree, e.g.
``eq_xz`` = "tracks x and z agree everywhere below", and ``c1`` = "binary
addition of the x and y digits here, with an incoming carry, yields z".
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from .codec import DIGITS, ordinal_automaton, spine_letter, validity_automaton
from .nfta import BASE, TreeAutomaton, join, trim, universal_automaton
from .tree import PAD

SPINE = ("A", "B", "E")


@lru_cache(maxsize=None)
def universe(width: int, k: int) -> TreeAutomaton:
    """Validity automaton on ``width`` tracks (every track a level-k tree)."""
    if width == 0:
        return universal_automaton(0)
    one = validity_automaton(k)
    acc, tracks = one, [0]
    for i in range(1, width):
        acc = join(acc, tracks, one, [i], tracks + [i])
        tracks.append(i)
    return trim(acc)


def with_validity(core: TreeAutomaton, k: int) -> TreeAutomaton:
    tracks = list(range(core.width))
    return trim(join(core, tracks, universe(core.width, k), tracks, tracks))


# -- addition -------------------------------------------------------------------

def _xor(a, b):
    return str(int(a) ^ int(b))


def addition_rules(k: int, mutate: bool = False):
    """Top-down obligations of the x+y=z core as (state, sym, left, right).

    ``add{j}`` compares level-j trees along their spine: above y's ``E``
    the z components copy y's, at y's ``E`` the components are added one
    level down, and past it z copies x.  ``c0``/``c1`` add binary digits
    with carry.  ``mutate`` flips one carry (used to test that sweeps catch
    a broken automaton).
    """
    top = max(k, 1)
    rules = []
    syms = list(itertools.product(BASE, repeat=3))
    for s in syms:
        rules.append(("any", s, "any", "any"))
        if s[0] == s[2]:
            rules.append(("eq_xz", s, "eq_xz", "eq_xz"))
        if s[1] == s[2]:
            rules.append(("eq_yz", s, "eq_yz", "eq_yz"))
    for j in range(1, top + 1):
        me, letter = f"add{j}", spine_letter(j)
        below = f"add{j - 1}" if j > 1 else "c0"
        for sx, sy, sz in syms:
            s = (sx, sy, sz)
            if sy == PAD and sx == sz:
                # y = 0: z = x
                rules.append((me, s, "eq_xz", "eq_xz"))
            elif sy == letter and sz == letter:
                rules.append((me, s, me, "eq_yz"))
            elif sy == "E" and sx == letter and sz == letter:
                rules.append((me, s, "eq_xz", below))
            elif sy == "E" and sx in ("E", PAD) and sz == "E":
                rules.append((me, s, "eq_xz", below))
    for sx, sy, sz in syms:
        s = (sx, sy, sz)
        xd, yd = sx in DIGITS, sy in DIGITS
        if xd and yd:
            carry = "1" if sx == sy == "1" else "0"
            if mutate and sx == sy == "1":
                carry = "0"
            if sz == _xor(sx, sy):
                rules.append(("c0", s, "any", "c" + carry))
            carry = "1" if "1" in (sx, sy) else "0"
            if sz == str(1 - int(_xor(sx, sy))):
                rules.append(("c1", s, "any", "c" + carry))
        elif xd and sy == PAD:
            if sz == sx:
                rules.append(("c0", s, "any", "eq_xz"))
            if sz == str(1 - int(sx)):
                rules.append(("c1", s, "any", "c" + sx))
        elif yd and sx == PAD:
            if sz == sy:
                rules.append(("c0", s, "any", "eq_yz"))
            if sz == str(1 - int(sy)):
                rules.append(("c1", s, "any", "c" + sy))
        elif sx == sy == PAD:
            if sz == PAD:
                rules.append(("c0", s, "any", "any"))
            if sz == "1":
                rules.append(("c1", s, "any", "eq_xz"))
    leaves = ["any", "eq_xz", "eq_yz", "c0"] + [f"add{j}" for j in range(1, top + 1)]
    return rules, leaves, f"add{top}"


def addition_core(k: int, mutate: bool = False) -> TreeAutomaton:
    rules, leaves, final = addition_rules(k, mutate)
    return TreeAutomaton.from_rules(3, [(s, l, r, q) for q, s, l, r in rules], leaves, [final])


@lru_cache(maxsize=None)
def addition_automaton(k: int, mutate: bool = False) -> TreeAutomaton:
    """Accepts convolve(T_x, T_y, T_z), any padding, iff x + y = z."""
    return with_validity(addition_core(k, mutate), k)


# -- equality and order ------------------------------------------------------------

def equality_core() -> TreeAutomaton:
    rules = [(s, "eq", "eq", "eq") for s in itertools.product(BASE, repeat=2) if s[0] == s[1]]
    return TreeAutomaton.from_rules(2, rules, ["eq"], ["eq"])


@lru_cache(maxsize=None)
def equality_automaton(k: int) -> TreeAutomaton:
    return with_validity(equality_core(), k)


def _node_kind(sx, sy):
    kinds = {("digit" if c in DIGITS else "spine") for c in (sx, sy) if c != PAD}
    if len(kinds) > 1:
        return None
    return kinds.pop() if kinds else "pad"


def order_core(strict: bool) -> TreeAutomaton:
    """Three-state comparison automaton (states lt, eq, gt) for x versus y.

    On spine nodes the left child (higher positions) is more significant
    than the right child; along a digit chain the right child (higher bits)
    is more significant than the digit at the node.
    """
    res = ("lt", "eq", "gt")
    rules = []
    for sx, sy in itertools.product(BASE, repeat=2):
        kind = _node_kind(sx, sy)
        if kind is None:
            continue
        here = "eq"
        if kind == "digit":
            bx = int(sx) if sx in DIGITS else 0
            by = int(sy) if sy in DIGITS else 0
            here = "lt" if bx < by else "gt" if bx > by else "eq"
        for l in res:
            for r in res:
                if kind == "digit":
                    q = r if r != "eq" else here
                else:
                    q = l if l != "eq" else r
                rules.append(((sx, sy), l, r, q))
    finals = ["lt"] if strict else ["lt", "eq"]
    return TreeAutomaton.from_rules(2, rules, ["eq"], finals)


@lru_cache(maxsize=None)
def less_automaton(k: int, strict: bool = True) -> TreeAutomaton:
    return with_validity(order_core(strict), k)


# -- the E relation -------------------------------------------------------------------

def e_core() -> TreeAutomaton:
    """Complete deterministic core for E(x, y) with three states.

    ``none``: no 1 on track x below; ``one``: exactly one 1 on track x below,
    at a node where track y also reads 1; ``dead``: anything else.
    """
    count = {"none": 0, "one": 1}
    rules = []
    for sx, sy in itertools.product(BASE, repeat=2):
        for l in ("none", "one", "dead"):
            for r in ("none", "one", "dead"):
                if "dead" in (l, r):
                    q = "dead"
                else:
                    n = count[l] + count[r] + (sx == "1")
                    if n > 1 or (sx == "1" and sy != "1"):
                        q = "dead"
                    else:
                        q = ("none", "one")[n]
                rules.append(((sx, sy), l, r, q))
    return TreeAutomaton.from_rules(2, rules, ["none"], ["one"])


@lru_cache(maxsize=None)
def e_automaton(k: int) -> TreeAutomaton:
    return with_validity(e_core(), k)


@lru_cache(maxsize=None)
def constant_automaton(value, k: int) -> TreeAutomaton:
    """x = c: the singleton language of c's encoding (one track)."""
    return trim(ordinal_automaton(value, k))
