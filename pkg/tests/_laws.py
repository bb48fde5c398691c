"""Exact language comparisons over every tree of bounded height.

Enumerating all trees of height <= 5 over six letters is out of reach
(about 1.6e25 of them), but a tree only matters through the tuple of state
sets the automata reach at its root.  Grouping trees by that tuple (a
"profile") and counting them height by height covers every tree exactly.
"""
from __future__ import annotations

import itertools
from collections import Counter


def symbols(width, base=("#", "0", "1", "A", "B", "E")):
    return list(itertools.product(base, repeat=width))


def _step(a, sym, L, R):
    out = set()
    get = a.transitions.get
    for l in L:
        for r in R:
            t = get((sym, l, r))
            if t:
                out.update(t)
    return frozenset(out)


def profiles(automata, syms, max_height):
    """Counter: profile -> number of trees of height <= max_height with it."""
    leaf = tuple(a.leaves for a in automata)
    current = Counter({leaf: 1})
    for _ in range(max_height):
        nxt = Counter({leaf: 1})
        items = list(current.items())
        for sym in syms:
            for (pl, cl), (pr, cr) in itertools.product(items, repeat=2):
                p = tuple(_step(a, sym, L, R) for a, L, R in zip(automata, pl, pr))
                nxt[p] += cl * cr
        current = nxt
    return current


def flags(automata, profile):
    return tuple(not a.finals.isdisjoint(S) for a, S in zip(automata, profile))


def violations(automata, syms, max_height, law):
    """Number of trees on which ``law(flags)`` fails, plus the total count."""
    bad = total = 0
    for p, n in profiles(automata, syms, max_height).items():
        total += n
        if not law(flags(automata, p)):
            bad += n
    return bad, total


def tree_count(n_symbols, max_height):
    t = 1
    for _ in range(max_height):
        t = 1 + n_symbols * t * t
    return t
