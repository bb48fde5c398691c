"""Bounded semantic evaluation of FO formulas, independent of the automata.

Truth values are ``True``, ``False`` or ``None`` (unknown).  A quantifier is
settled exactly when its body pins the bound variable down to finitely many
values (``x = y``, ``a + x = c``, ``x < n`` with ``n`` finite, ``E(x, y)``,
...); otherwise it is tried on the bounded candidate list and can only come
out true or unknown.
"""
from __future__ import annotations

from typing import Iterable

from .codec import in_domain
from .ordinal import Ordinal, enumerate_nested, enumerate_ordinals, ordinal
from .syntax import (And, Eq, EqConst, Erel, Exists, Formula, Iff, Implies, Leq, Lt,
                     Not, Or, Plus, formula)


def left_subtract(a: Ordinal, c: Ordinal):
    """The unique z with a + z = c, or None when a > c."""
    at, ct = a.terms, c.terms
    for i, (e, n) in enumerate(at):
        if i >= len(ct):
            return None
        ce, cn = ct[i]
        if ce != e:
            return Ordinal._trusted(ct[i:]) if ce > e else None
        if cn != n:
            if cn < n:
                return None
            return Ordinal._trusted(((e, cn - n),) + ct[i + 1:])
        if i == len(at) - 1:
            return Ordinal._trusted(ct[i + 1:])
    return c


def powers_of_two_in(y: Ordinal) -> list[Ordinal]:
    """Every 2^g with g in the 2-development of y (2^(w*e + j) = w^e * 2^j)."""
    return [Ordinal._trusted(((e, 1 << j),)) for e, n in y.terms
            for j in range(n.bit_length()) if n >> j & 1]


def is_power_of_two(x: Ordinal) -> bool:
    return len(x.terms) == 1 and x.terms[0][1] & (x.terms[0][1] - 1) == 0


def e_holds(x: Ordinal, y: Ordinal) -> bool:
    return x in powers_of_two_in(y)


def default_domain(k: int | None) -> list[Ordinal]:
    if k == 0:
        return [ordinal(n) for n in range(16)]
    if k is not None and k >= 2:
        return list(enumerate_nested(2, 1, 2))
    return list(enumerate_ordinals(2, 3))


def _conjuncts(f: Formula):
    if isinstance(f, And):
        yield from _conjuncts(f.left)
        yield from _conjuncts(f.right)
    elif isinstance(f, Not):
        g = f.arg
        if isinstance(g, Not):
            yield from _conjuncts(g.arg)
        elif isinstance(g, Or):
            yield from _conjuncts(Not(g.left))
            yield from _conjuncts(Not(g.right))
        elif isinstance(g, Implies):
            yield from _conjuncts(g.left)
            yield from _conjuncts(Not(g.right))
        else:
            yield f
    else:
        yield f


def _finite_range(bound: Ordinal, inclusive: bool):
    if not bound.is_finite():
        return None
    n = int(bound) + (1 if inclusive else 0)
    return [ordinal(i) for i in range(n)]


def _solutions(x: str, atom: Formula, v: dict):
    """Finite list containing every value of x satisfying ``atom``, or None."""
    known = lambda name: name != x and name in v
    if isinstance(atom, Eq):
        if atom.x == x and known(atom.y):
            return [v[atom.y]]
        if atom.y == x and known(atom.x):
            return [v[atom.x]]
    elif isinstance(atom, EqConst) and atom.x == x:
        return [atom.value]
    elif isinstance(atom, Plus):
        a, b, c = atom.x, atom.y, atom.z
        if c == x and known(a) and known(b):
            return [v[a] + v[b]]
        if b == x and a != x and known(a) and known(c):
            z = left_subtract(v[a], v[c])
            return [] if z is None else [z]
        if a == x and b != x and known(b) and known(c):
            r = _finite_range(v[c], inclusive=True)
            return None if r is None else [z for z in r if z + v[b] == v[c]]
    elif isinstance(atom, (Lt, Leq)) and atom.x == x and known(atom.y):
        return _finite_range(v[atom.y], inclusive=isinstance(atom, Leq))
    elif isinstance(atom, Erel) and atom.x == x and known(atom.y):
        return powers_of_two_in(v[atom.y])
    return None


class _Evaluator:
    def __init__(self, domain: list[Ordinal], k):
        self.domain = domain
        self.k = k

    def candidates(self, x, body, v):
        best = None
        for c in _conjuncts(body):
            sols = _solutions(x, c, v)
            if sols is not None and (best is None or len(sols) < len(best)):
                best = sols
        if best is not None:
            if self.k is not None:
                best = [s for s in best if in_domain(s, self.k)]
            return best, True
        return self.domain, False

    def ev(self, f, v):
        if isinstance(f, Plus):
            return v[f.x] + v[f.y] == v[f.z]
        if isinstance(f, Eq):
            return v[f.x] == v[f.y]
        if isinstance(f, Lt):
            return v[f.x] < v[f.y]
        if isinstance(f, Leq):
            return v[f.x] <= v[f.y]
        if isinstance(f, Erel):
            return e_holds(v[f.x], v[f.y])
        if isinstance(f, EqConst):
            return v[f.x] == f.value
        if isinstance(f, Not):
            r = self.ev(f.arg, v)
            return None if r is None else not r
        if isinstance(f, And):
            a = self.ev(f.left, v)
            if a is False:
                return False
            b = self.ev(f.right, v)
            if b is False:
                return False
            return True if a and b else None
        if isinstance(f, Or):
            a = self.ev(f.left, v)
            if a is True:
                return True
            b = self.ev(f.right, v)
            if b is True:
                return True
            return False if a is False and b is False else None
        if isinstance(f, Implies):
            return self.ev(Or(Not(f.left), f.right), v)
        if isinstance(f, Iff):
            a = self.ev(f.left, v)
            if a is None:
                return None
            b = self.ev(f.right, v)
            return None if b is None else a == b
        if isinstance(f, Exists):
            cands, exhaustive = self.candidates(f.var, f.body, v)
            unknown = False
            for c in cands:
                r = self.ev(f.body, {**v, f.var: c})
                if r:
                    return True
                if r is None:
                    unknown = True
            return False if exhaustive and not unknown else None
        raise TypeError(f"cannot evaluate {type(f).__name__}")


def eval_oracle(f, valuation: dict | None = None, bound: Iterable | None = None,
                k: int | None = None):
    """Three-valued truth of ``f`` under ``valuation``.

    ``bound`` is the candidate list tried for quantifiers that are not
    pinned down by their body (default: a small enumeration for level k).
    With ``k`` given, quantifiers range over ordinals below w^(w^k).
    """
    f = formula(f)
    v = {name: ordinal(x) for name, x in (valuation or {}).items()}
    missing = f.free - set(v)
    if missing:
        raise KeyError(f"no value for {', '.join(sorted(missing))}")
    domain = [ordinal(x) for x in bound] if bound is not None else default_domain(k)
    if k is not None:
        domain = [x for x in domain if in_domain(x, k)]
    return _Evaluator(domain, k).ev(f, v)
