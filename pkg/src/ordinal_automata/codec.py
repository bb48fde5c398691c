"""Tree encodings of ordinals below w^(w^k).

Level 1 (ordinals below w^w): the tree of ``w^p*n_p + ... + n_0`` has a
leftmost spine of ``A`` nodes ending with ``E`` at depth ``p``.  The right
child of the spine node at depth ``i`` holds ``n_i`` as a chain of binary
digits, least significant first, continuing through right children; the
most significant digit is ``1``.  A zero coefficient is a padding leaf.

Level k >= 2 nests the construction: ``b = sum_i w^(w^(k-1)*i) * a_i`` with
each ``a_i`` below ``w^(w^(k-1))``; the outer spine uses ``B`` nodes ending
with ``E``, and the right child at depth ``i`` is the level k-1 tree of
``a_i``.  Level 0 (naturals) is the level 1 tree restricted to ``p = 0``.

Zero is the single padding leaf at every level.  Every tree obtained by
growing padding leaves into ``#`` subtrees represents the same ordinal.
"""
from __future__ import annotations

from .errors import DomainExceeded, MalformedTree
from .nfta import TreeAutomaton
from .ordinal import ZERO, Ordinal, ord_add, ordinal
from .tree import PAD, Tree

DIGITS = ("0", "1")


def spine_letter(level: int) -> str:
    return "A" if level == 1 else "B"


def in_domain(a: Ordinal, k: int) -> bool:
    """Whether ``a < w^(w^k)`` (``a < w`` for k = 0)."""
    if k == 0:
        return a.is_finite()
    return all(x.is_finite() and int(x) < k for e, _ in a.terms for x, _ in e.terms)


def components(a: Ordinal, level: int) -> list[Ordinal]:
    """Split ``a`` into ``[a_0, ..., a_p]`` with a = sum w^(w^(level-1)*i) * a_i."""
    comps = {}
    for e, c in a.terms:
        if level == 1:
            i, rest = int(e), ZERO
        elif e.terms and e.terms[0][0] == level - 1:
            i, rest = e.terms[0][1], Ordinal._trusted(e.terms[1:])
        else:
            i, rest = 0, e
        comps.setdefault(i, []).append((rest, c))
    if not comps:
        return []
    return [Ordinal._trusted(comps.get(i, ())) for i in range(max(comps) + 1)]


def assemble(comps: list[Ordinal], level: int) -> Ordinal:
    """Inverse of :func:`components`."""
    terms = []
    for i in range(len(comps) - 1, -1, -1):
        for r, c in comps[i].terms:
            if level == 1:
                e = Ordinal.natural(i)
            elif i:
                e = ord_add(Ordinal._trusted(((Ordinal.natural(level - 1), i),)), r)
            else:
                e = r
            terms.append((e, c))
    return Ordinal._trusted(terms)


def numeral(n: int) -> Tree:
    """Little-endian binary chain through right children; 0 is a leaf."""
    if n == 0:
        return Tree(PAD)
    return Tree(str(n & 1), Tree(PAD), numeral(n >> 1))


def _component_tree(c: Ordinal, level: int) -> Tree:
    if c.is_zero():
        return Tree(PAD)
    if level == 0:
        return numeral(int(c))
    comps = components(c, level)
    sub = [_component_tree(x, level - 1) for x in comps]
    t = Tree("E", Tree(PAD), sub[-1])
    letter = spine_letter(level)
    for s in reversed(sub[:-1]):
        t = Tree(letter, t, s)
    return t


def encode(a, k: int) -> Tree:
    """Canonical (minimal padding) tree of ``a`` at level ``k``."""
    a = ordinal(a)
    if k < 0:
        raise ValueError("level must be >= 0")
    if not in_domain(a, k):
        bound = "w" if k == 0 else f"w^(w^{k})"
        raise DomainExceeded(f"{a} is not below {bound}")
    return _component_tree(a, max(k, 1))


# -- decoding -------------------------------------------------------------------

def _check_padding(t: Tree, where: str):
    if t.left is None:
        return
    if t.label != PAD:
        raise MalformedTree(f"{where}: expected only '#' padding, found {t.label!r}")
    _check_padding(t.left, where)
    _check_padding(t.right, where)


def _decode_numeral(t: Tree, where: str) -> int:
    if t.left is None or t.label == PAD:
        _check_padding(t, where)
        return 0
    n = 0
    bit = 0
    node = t
    last = None
    while node.left is not None and node.label != PAD:
        if node.label not in DIGITS:
            raise MalformedTree(f"{where}: expected a binary digit, found {node.label!r}")
        _check_padding(node.left, f"{where}: left of digit {bit}")
        if node.label == "1":
            n |= 1 << bit
        last = node.label
        bit += 1
        node = node.right
    _check_padding(node, f"{where}: above the most significant digit")
    if last != "1":
        raise MalformedTree(f"{where}: most significant bit is 0")
    return n


def _decode_component(t: Tree, level: int, where: str) -> Ordinal:
    if t.left is None or t.label == PAD:
        _check_padding(t, where)
        return ZERO
    if level == 0:
        return Ordinal.natural(_decode_numeral(t, where))
    letter = spine_letter(level)
    comps = []
    node = t
    depth = 0
    while True:
        if node.left is None:
            raise MalformedTree(f"{where}: spine ends at depth {depth} without 'E'")
        here = f"{where}: spine depth {depth}"
        if node.label == "E":
            _check_padding(node.left, f"{here}: left of E")
            top = _decode_component(node.right, level - 1, f"{here}: component")
            if top.is_zero():
                raise MalformedTree(f"{here}: leading coefficient under E is zero")
            comps.append(top)
            break
        if node.label != letter:
            raise MalformedTree(f"{here}: expected {letter!r} or 'E', found {node.label!r}")
        comps.append(_decode_component(node.right, level - 1, f"{here}: component"))
        node = node.left
        depth += 1
    return assemble(comps, level)


def decode(t: Tree, k: int) -> Ordinal:
    """The ordinal represented by ``t`` at level ``k`` (any padding)."""
    if k == 0:
        if t.left is not None and t.label not in (PAD, "E"):
            raise MalformedTree(f"root: level 0 trees start with 'E', found {t.label!r}")
        return _decode_component(t, 1, "root")
    return _decode_component(t, k, "root")


# -- automata ---------------------------------------------------------------------

def validity_rules(k: int):
    """Rules of the one-track validity automaton as (sym, l, r, q) over names."""
    rules = [(PAD, "Z", "Z", "Z"),
             ("1", "Z", "Z", "N"), ("0", "Z", "N", "N"), ("1", "Z", "N", "N")]
    if k == 0:
        rules.append(("E", "Z", "N", "S0"))
        return rules, "S0"
    below_nonzero = "N"
    for j in range(1, k + 1):
        s = f"S{j}"
        rules.append(("E", "Z", below_nonzero, s))
        for sub in ("Z", below_nonzero):
            rules.append((spine_letter(j), s, sub, s))
        below_nonzero = s
    return rules, f"S{k}"


def validity_automaton(k: int) -> TreeAutomaton:
    """Deterministic automaton accepting exactly the valid level-k trees."""
    rules, top = validity_rules(k)
    return TreeAutomaton.from_rules(1, [((s,), l, r, q) for s, l, r, q in rules],
                                    ["Z"], ["Z", top])


def ordinal_automaton(a, k: int) -> TreeAutomaton:
    """Deterministic automaton accepting exactly the paddings of encode(a, k).

    One state per non-padding node of the canonical tree (spine and digit
    positions), plus the padding state.
    """
    t = encode(a, k)
    rules = [((PAD,), "Z", "Z", "Z")]

    def state(u, s):
        if s.left is None:
            return "Z"
        l = state(u + "a", s.left)
        r = state(u + "b", s.right)
        rules.append(((s.label,), l, r, u or "root"))
        return u or "root"

    root = state("", t)
    return TreeAutomaton.from_rules(1, rules, ["Z"], [root])
