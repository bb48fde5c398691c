"""Ordinals below omega^(omega^omega) in hereditary Cantor normal form.

An :class:`Ordinal` is an immutable sequence of ``(exponent, coefficient)``
terms with strictly decreasing exponents (themselves ordinals) and positive
integer coefficients.  The empty sequence is ``0``.

The module is deliberately small and self-contained: it is the semantic
ground truth that the automata constructions are checked against.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ExponentTooLarge, ParseError

__all__ = [
    "Ordinal", "OmegaCharacter", "ZERO", "ONE", "OMEGA",
    "ordinal", "ord_add", "ord_cmp", "omega_power", "omega_times",
    "two_power", "two_log", "two_development", "from_two_development",
    "e_relation", "omega_character", "ord_parse", "ord_format",
    "enumerate_ordinals", "enumerate_nested",
]


class Ordinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[tuple["Ordinal", int]] = ()):
        terms = tuple((ordinal(e), int(c)) for e, c in terms)
        for i, (e, c) in enumerate(terms):
            if c < 1:
                raise ValueError(f"coefficient must be positive, got {c}")
            if i and ord_cmp(terms[i - 1][0], e) <= 0:
                raise ValueError("exponents must be strictly decreasing")
        self.terms = terms
        self._hash = None

    @classmethod
    def _trusted(cls, terms):
        # skips validation; callers guarantee normal form
        o = cls.__new__(cls)
        o.terms = tuple(terms)
        o._hash = None
        return o

    @classmethod
    def natural(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("ordinals are non-negative")
        return cls._trusted(((ZERO, n),)) if n else ZERO

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def __int__(self):
        if not self.is_finite():
            raise ValueError(f"{self} is not a natural number")
        return self.terms[0][1] if self.terms else 0

    @property
    def degree(self) -> "Ordinal":
        """Leading exponent (0 for the zero ordinal)."""
        return self.terms[0][0] if self.terms else ZERO

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero()

    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero()

    def depth(self) -> int:
        """Nesting depth of the hereditary normal form (0 for naturals)."""
        if self.is_finite():
            return 0
        return 1 + max(e.depth() for e, _ in self.terms)

    # -- operators -----------------------------------------------------

    def __add__(self, other):
        return ord_add(self, ordinal(other))

    def __radd__(self, other):
        return ord_add(ordinal(other), self)

    def _cmp(self, other):
        if isinstance(other, int):
            other = ordinal(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return ord_cmp(self, other)

    def __eq__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __hash__(self):
        if self._hash is None:
            if self.is_finite():
                self._hash = hash(int(self))
            else:
                self._hash = hash(self.terms)
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Ordinal({ord_format(self)!r})"

    def __str__(self):
        return ord_format(self)


ZERO = Ordinal._trusted(())
ONE = Ordinal._trusted(((ZERO, 1),))
OMEGA = Ordinal._trusted(((ONE, 1),))


def ordinal(x) -> Ordinal:
    """Coerce an int, a literal string or an Ordinal to an Ordinal."""
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not an ordinal")
    if isinstance(x, int):
        return Ordinal.natural(x)
    if isinstance(x, str):
        return ord_parse(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Ordinal")


def ord_cmp(a: Ordinal, b: Ordinal) -> int:
    """Three-way comparison: -1, 0 or 1.

    Lexicographic on term sequences with exponents compared recursively.
    Independent of :func:`ord_add` on purpose.
    """
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = ord_cmp(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum ``a + b``.

    Terms of ``a`` below the leading exponent of ``b`` are absorbed; a term
    with the same exponent merges its coefficient with b's leading one.
    """
    if not b.terms:
        return a
    if not a.terms:
        return b
    lead, lc = b.terms[0]
    out = []
    for e, c in a.terms:
        s = ord_cmp(e, lead)
        if s > 0:
            out.append((e, c))
        elif s == 0:
            lc += c
            break
        else:
            break
    out.append((lead, lc))
    out.extend(b.terms[1:])
    return Ordinal._trusted(out)


def omega_power(e) -> Ordinal:
    """omega^e."""
    return Ordinal._trusted(((ordinal(e), 1),))


def omega_times(a: Ordinal) -> Ordinal:
    """Left multiplication by omega: each term w^m*c becomes w^(1+m)*c."""
    return Ordinal._trusted((ord_add(ONE, e), c) for e, c in a.terms)


def _shift(delta: Ordinal, a: Ordinal) -> Ordinal:
    """omega^delta * a, for any ordinals."""
    return Ordinal._trusted((ord_add(delta, e), c) for e, c in a.terms)


def two_power(e) -> Ordinal:
    """2^e for e < omega^omega.

    With e = omega*g + j (j finite) the result is omega^g * 2^j.
    """
    e = ordinal(e)
    if any(not x.is_finite() for x, _ in e.terms):
        raise ExponentTooLarge(f"2^{e} needs an exponent below w^w")
    j = 0
    g = []
    for x, c in e.terms:
        m = int(x)
        if m == 0:
            j = c
        else:
            g.append((Ordinal.natural(m - 1), c))
    return Ordinal._trusted(((Ordinal._trusted(g), 2 ** j),))


def two_log(x: Ordinal):
    """The exponent g with 2^g == x, or None when x is not a power of two.

    Works for every ordinal: a power of two is a single term w^e*2^j and
    its logarithm is omega*e + j.
    """
    if len(x.terms) != 1:
        return None
    e, c = x.terms[0]
    if c & (c - 1):
        return None
    return ord_add(omega_times(e), Ordinal.natural(c.bit_length() - 1))


def two_development(b) -> tuple[Ordinal, ...]:
    """Strictly decreasing exponents (g_{n-1}, ..., g_0) with b = sum 2^g_i."""
    b = ordinal(b)
    out = []
    for e, n in b.terms:
        base = omega_times(e)
        for j in range(n.bit_length() - 1, -1, -1):
            if n >> j & 1:
                out.append(ord_add(base, Ordinal.natural(j)))
    return tuple(out)


def from_two_development(exps: Iterable) -> Ordinal:
    """Inverse of :func:`two_development` for exponents below w^w."""
    total = ZERO
    for g in sorted({ordinal(g) for g in exps}, reverse=True):
        total = ord_add(total, two_power(g))
    return total


def e_relation(x, y) -> bool:
    """E(x, y): x = 2^g for some g in the 2-development of y."""
    g = two_log(ordinal(x))
    return g is not None and g in two_development(ordinal(y))


@dataclass(frozen=True)
class OmegaCharacter:
    """(sigma; n_p, ..., n_0) where sigma records a nonzero multiple of w^w."""

    sigma: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.sigma not in (0, 1):
            raise ValueError("sigma must be 0 or 1")
        if self.coeffs and self.coeffs[0] <= 0:
            raise ValueError("leading coefficient must be positive")

    def __str__(self):
        return f"({self.sigma}; {', '.join(map(str, self.coeffs)) or 'e'})"


def omega_character(a) -> OmegaCharacter:
    a = ordinal(a)
    sigma = 0
    finite = {}
    for e, c in a.terms:
        if e.is_finite():
            finite[int(e)] = c
        else:
            sigma = 1
    if not finite:
        return OmegaCharacter(sigma, ())
    p = max(finite)
    return OmegaCharacter(sigma, tuple(finite.get(i, 0) for i in range(p, -1, -1)))


# -- literal syntax ------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(\S))")


def _tokenize(text):
    toks = []
    for m in _TOKEN.finditer(text):
        if m.group(1) is not None:
            toks.append(("nat", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append((m.group(2), m.group(2), m.start(2)))
    toks.append(("end", "", len(text)))
    return toks


class _OrdinalParser:
    def __init__(self, text, toks=None, i=0):
        self.text = text
        self.toks = toks if toks is not None else _tokenize(text)
        self.i = i

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = tok[1] or "end of input"
            raise ParseError(f"expected {kind!r}, found {what!r}", self.text, tok[2])
        self.i += 1
        return tok

    def nat(self):
        tok = self.take("nat")
        if len(tok[1]) > 1 and tok[1][0] == "0":
            raise ParseError("leading zero in natural number", self.text, tok[2])
        return int(tok[1]), tok[2]

    def ordinal(self):
        if self.peek()[0] == "nat" and self.peek()[1] == "0":
            self.take()
            return ZERO
        terms = [self.term()]
        while self.peek()[0] == "+":
            self.take()
            pos = self.peek()[2]
            t = self.term()
            if ord_cmp(terms[-1][0], t[0]) <= 0:
                raise ParseError("exponents must strictly decrease (not in normal form)",
                                 self.text, pos)
            terms.append(t)
        return Ordinal._trusted(terms)

    def term(self):
        tok = self.peek()
        if tok[0] == "nat":
            n, pos = self.nat()
            if n == 0:
                raise ParseError("zero term inside a sum", self.text, pos)
            return (ZERO, n)
        if tok[0] != "w":
            raise ParseError(f"expected a term, found {tok[1] or 'end of input'!r}",
                             self.text, tok[2])
        self.take()
        exp = ONE
        if self.peek()[0] == "^":
            self.take()
            pos = self.peek()[2]
            exp = self.exponent()
            if exp.is_zero() or exp == ONE:
                raise ParseError("write w^0 as 1 and w^1 as w", self.text, pos)
        coeff = 1
        if self.peek()[0] == "*":
            self.take()
            coeff, pos = self.nat()
            if coeff == 0:
                raise ParseError("zero coefficient", self.text, pos)
        return (exp, coeff)

    def exponent(self):
        tok = self.peek()
        if tok[0] == "nat":
            return Ordinal.natural(self.nat()[0])
        if tok[0] == "w":
            self.take()
            return OMEGA
        if tok[0] == "(":
            self.take()
            e = self.ordinal()
            self.take(")")
            return e
        raise ParseError(f"expected an exponent, found {tok[1] or 'end of input'!r}",
                         self.text, tok[2])


def ord_parse(text: str) -> Ordinal:
    """Parse a literal such as ``"w^(w*2)*4 + w^w + 1"``."""
    p = _OrdinalParser(text)
    result = p.ordinal()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[1]!r}", text, tok[2])
    return result


def ord_format(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if e.is_zero():
            parts.append(str(c))
            continue
        if e == ONE:
            s = "w"
        elif e.is_finite() or e == OMEGA:
            s = f"w^{ord_format(e)}"
        else:
            s = f"w^({ord_format(e)})"
        parts.append(s if c == 1 else f"{s}*{c}")
    return " + ".join(parts)


# -- enumerations used by oracles and sweeps ---------------------------------

def enumerate_ordinals(max_degree: int, max_coeff: int) -> Iterator[Ordinal]:
    """All sum_{i<=d} w^i*c_i with 0 <= c_i <= max_coeff, in increasing order."""
    for coeffs in itertools.product(range(max_coeff + 1), repeat=max_degree + 1):
        # coeffs[0] is the most significant coefficient
        yield Ordinal._trusted(
            (Ordinal.natural(max_degree - i), c) for i, c in enumerate(coeffs) if c
        )


def enumerate_nested(level: int, max_degree: int, max_coeff: int) -> list[Ordinal]:
    """Ordinals sum_{i<=d} w^(w^(level-1)*i) * a_i with a_i from the level below.

    Level 0 gives 0..max_coeff; level 1 agrees with :func:`enumerate_ordinals`.
    """
    if level == 0:
        return [Ordinal.natural(n) for n in range(max_coeff + 1)]
    inner = enumerate_nested(level - 1, max_degree, max_coeff)
    out = []
    for comps in itertools.product(inner, repeat=max_degree + 1):
        total = ZERO
        for i, comp in enumerate(comps):
            idx = max_degree - i
            # component idx sits at w^(w^(level-1) * idx)
            delta = Ordinal._trusted(((Ordinal.natural(level - 1), idx),)) if idx else ZERO
            total = ord_add(total, _shift(delta, comp))
        out.append(total)
    return out
