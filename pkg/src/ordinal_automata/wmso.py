"""Weak monadic second-order logic of (w^k, <), decided through FO.

A finite set X of ordinals below w^k is coded by the ordinal ``Xh`` whose
2-development is X, and an element x by ``xh = 2^x``.  Then x in X becomes
E(xh, Xh), x < y becomes xh < yh, and "xh codes an element" is E(xh, xh).
Since 2^(w^k) = w^(w^(k-1)), the FO side runs at level k - 1.
"""
from __future__ import annotations

import itertools
from typing import Iterable

from .compiler import DEFAULT_MAX_STATES, compile_formula, decode_witness
from .errors import DomainExceeded, UnboundVariable
from .nfta import is_empty
from .ordinal import Ordinal, ord_add, ordinal, two_development, two_log, two_power
from .syntax import (And, Eq, Exists, Formula, Iff, Implies, In, Leq, Lt, Not, Or,
                     Erel, is_set_var, parse_wmso)

HAT = "h"


def hat(name: str) -> str:
    return name + HAT


def _fo_level(k: int) -> int:
    if k < 1:
        raise DomainExceeded("WMSO(w^k, <) needs k >= 1")
    return k - 1


def _wmso(f) -> Formula:
    return f if isinstance(f, Formula) else parse_wmso(f)


def translate(f, k: int = 1) -> Formula:
    """FO formula over 2^(w^k) equivalent to ``f`` under the hat coding."""
    _fo_level(k)
    f = _wmso(f)

    def go(g):
        if isinstance(g, In):
            return Erel(hat(g.x), hat(g.X))
        if isinstance(g, (Lt, Leq, Eq)):
            return type(g)(hat(g.x), hat(g.y))
        if isinstance(g, Not):
            return Not(go(g.arg))
        if isinstance(g, (And, Or, Implies, Iff)):
            return type(g)(go(g.left), go(g.right))
        if isinstance(g, Exists):
            v = hat(g.var)
            if is_set_var(g.var):
                return Exists(v, go(g.body))
            return Exists(v, And(Erel(v, v), go(g.body)))
        raise TypeError(f"not a WMSO formula node: {type(g).__name__}")

    out = go(f)
    for x in sorted(f.free, reverse=True):
        if not is_set_var(x):
            out = And(Erel(hat(x), hat(x)), out)
    return out


def encode_valuation(valuation: dict) -> dict[str, Ordinal]:
    """Hat-encode a WMSO valuation (sets: iterables of ordinals)."""
    out = {}
    for name, val in valuation.items():
        if is_set_var(name):
            total = Ordinal()
            for g in sorted({ordinal(x) for x in val}, reverse=True):
                total = ord_add(total, two_power(g))
            out[hat(name)] = total
        else:
            out[hat(name)] = two_power(ordinal(val))
    return out


def decode_valuation(fo_valuation: dict) -> dict:
    out = {}
    for name, val in fo_valuation.items():
        base = name[:-len(HAT)]
        if is_set_var(base):
            out[base] = frozenset(two_development(val))
        else:
            out[base] = two_log(val)
    return out


def decide_wmso(sentence, k: int = 1, max_states: int = DEFAULT_MAX_STATES) -> bool:
    f = _wmso(sentence)
    if f.free:
        raise UnboundVariable(f"free variable(s) {', '.join(sorted(f.free))} in a sentence")
    a, _ = compile_formula(translate(f, k), _fo_level(k), max_states)
    return not is_empty(a)


def find_witness_wmso(f, k: int = 1, max_states: int = DEFAULT_MAX_STATES) -> dict | None:
    """Least-height witness, as sets (frozensets) and elements (ordinals)."""
    g = translate(_wmso(f), k)
    a, tracks = compile_formula(g, _fo_level(k), max_states)
    found = decode_witness(a, tracks, _fo_level(k))
    return None if found is None else decode_valuation(found)


# -- direct finite-set semantics ------------------------------------------------------

def eval_wmso(f, valuation: dict, elements: Iterable = range(12), max_set: int = 4):
    """Truth of ``f`` with quantifiers ranging over ``elements`` and over
    subsets of ``elements`` of size <= ``max_set``.

    This is exact for formulas whose quantifiers are guarded by the free
    variables' values (e.g. ``exists y. y < x & ...``, ``exists y. y in X & ...``)
    once ``elements`` covers those values.
    """
    f = _wmso(f)
    elems = [ordinal(x) for x in elements]
    sets = [frozenset(c) for r in range(max_set + 1) for c in itertools.combinations(elems, r)]
    env = {n: (frozenset(ordinal(x) for x in val) if is_set_var(n) else ordinal(val))
           for n, val in valuation.items()}

    def ev(g, v):
        if isinstance(g, In):
            return v[g.x] in v[g.X]
        if isinstance(g, Lt):
            return v[g.x] < v[g.y]
        if isinstance(g, Leq):
            return v[g.x] <= v[g.y]
        if isinstance(g, Eq):
            return v[g.x] == v[g.y]
        if isinstance(g, Not):
            return not ev(g.arg, v)
        if isinstance(g, And):
            return ev(g.left, v) and ev(g.right, v)
        if isinstance(g, Or):
            return ev(g.left, v) or ev(g.right, v)
        if isinstance(g, Implies):
            return (not ev(g.left, v)) or ev(g.right, v)
        if isinstance(g, Iff):
            return ev(g.left, v) == ev(g.right, v)
        dom = sets if is_set_var(g.var) else elems
        return any(ev(g.body, {**v, g.var: d}) for d in dom)

    return ev(f, env)
