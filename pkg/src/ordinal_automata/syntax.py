"""Formula ASTs and the concrete syntax shared by the FO and WMSO front ends.

Terms never reach the compiler: ``(x + y) + z = u`` is flattened into
``Plus`` atoms joined by fresh existentially quantified variables named
``_1``, ``_2``, ...  Universal quantifiers are stored as ``!exists !``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, fields
from functools import cached_property

from .errors import ParseError, SortError, UnboundVariable
from .ordinal import ZERO, Ordinal, _OrdinalParser, ord_add, ord_format, ordinal


class Formula:
    """Base class; every node exposes ``free`` (its free variables)."""

    __slots__ = ()

    def __str__(self):
        return format_formula(self)

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)


def _atom(*fields):
    def deco(cls):
        cls = dataclass(frozen=True)(cls)
        cls.free = cached_property(lambda self: frozenset(getattr(self, f) for f in fields))
        cls.free.__set_name__(cls, "free")
        return cls
    return deco


@_atom("x", "y", "z")
class Plus(Formula):
    x: str
    y: str
    z: str


@_atom("x", "y")
class Eq(Formula):
    x: str
    y: str


@_atom("x", "y")
class Lt(Formula):
    x: str
    y: str


@_atom("x", "y")
class Leq(Formula):
    x: str
    y: str


@_atom("x", "y")
class Erel(Formula):
    x: str
    y: str


@_atom("x")
class EqConst(Formula):
    x: str
    value: Ordinal


@_atom("x", "X")
class In(Formula):
    """WMSO membership x in X."""

    x: str
    X: str


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    @cached_property
    def free(self):
        return self.arg.free


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    @cached_property
    def free(self):
        return self.left.free | self.right.free


class And(_Binary):
    pass


class Or(_Binary):
    pass


class Implies(_Binary):
    pass


class Iff(_Binary):
    pass


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula

    @cached_property
    def free(self):
        return self.body.free - {self.var}


def Forall(var: str, body: Formula) -> Formula:
    return Not(Exists(var, Not(body)))


ATOMS = (Plus, Eq, Lt, Leq, Erel, EqConst, In)
BINARY = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


def is_set_var(name: str) -> bool:
    return name[:1].isupper()


def as_forall(f: Formula):
    """(var, body) when ``f`` has the shape of a desugared universal."""
    if isinstance(f, Not) and isinstance(f.arg, Exists) and isinstance(f.arg.body, Not):
        return f.arg.var, f.arg.body.arg
    return None


def size(f: Formula) -> int:
    """Number of AST nodes."""
    if isinstance(f, ATOMS):
        return 1
    if isinstance(f, Not):
        return 1 + size(f.arg)
    if isinstance(f, Exists):
        return 1 + size(f.body)
    return 1 + size(f.left) + size(f.right)


def subformulas(f: Formula):
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.arg)
    elif isinstance(f, Exists):
        yield from subformulas(f.body)
    elif isinstance(f, _Binary):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def all_vars(f: Formula) -> set[str]:
    out = set()
    for g in subformulas(f):
        out |= g.free
        if isinstance(g, Exists):
            out.add(g.var)
    return out


# -- printing ---------------------------------------------------------------------

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}


def format_formula(f: Formula) -> str:
    return _fmt(f, 0)


def _fmt(f, ctx):
    if isinstance(f, Plus):
        return f"{f.x} + {f.y} = {f.z}"
    if isinstance(f, Eq):
        return f"{f.x} = {f.y}"
    if isinstance(f, Lt):
        return f"{f.x} < {f.y}"
    if isinstance(f, Leq):
        return f"{f.x} <= {f.y}"
    if isinstance(f, Erel):
        return f"E({f.x}, {f.y})"
    if isinstance(f, EqConst):
        return f"{f.x} = {ord_format(f.value)}"
    if isinstance(f, In):
        return f"{f.x} in {f.X}"
    fa = as_forall(f)
    if fa is not None or isinstance(f, Exists):
        text = (f"forall {fa[0]}. {_fmt(fa[1], 0)}" if fa
                else f"exists {f.var}. {_fmt(f.body, 0)}")
        return text if ctx == 0 else f"({text})"
    if isinstance(f, Not):
        return "!" + _fmt(f.arg, 5)
    prec = _PREC[type(f)]
    # -> is right-associative, the others left-associative
    lp, rp = (prec + 1, prec) if isinstance(f, Implies) else (prec, prec + 1)
    text = f"{_fmt(f.left, lp)} {BINARY[type(f)]} {_fmt(f.right, rp)}"
    return f"({text})" if ctx > prec else text


# -- tokens ------------------------------------------------------------------------

_UNICODE = {"∧": "&", "∨": "|", "¬": "!", "~": "!", "→": "->", "↔": "<->", "∀": "forall",
            "∃": "exists", "≤": "<=", "≥": ">=", "≠": "!=", "ω": "w", "∈": "in",
            "[": "(", "]": ")", ":": "."}
_TOKEN = re.compile(r"""\s*(?:
    (?P<nat>\d+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op><->|->|<=|>=|!=|[∧∨¬~→↔∀∃≤≥≠ω∈&|!=<>+^*()\[\].:,])
  )""", re.VERBOSE)
_KEYWORDS = {"forall", "exists", "in", "w"}


def tokenize(text: str):
    toks = []
    pos = 0
    text_len = len(text)
    while True:
        while pos < text_len and text[pos].isspace():
            pos += 1
        if pos >= text_len:
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastgroup)
        raw = m.group(m.lastgroup)
        if m.lastgroup == "nat":
            toks.append(("nat", raw, start))
        elif m.lastgroup == "id":
            toks.append((raw if raw in _KEYWORDS else "id", raw, start))
        else:
            kind = _UNICODE.get(raw, raw)
            toks.append((kind, raw, start))
        pos = m.end()
    toks.append(("end", "", text_len))
    return toks


# -- parsing ----------------------------------------------------------------------

_REL = {"=", "!=", "<", "<=", ">", ">="}
_TERM_CONT = _REL | {"+", "in"}


class _Parser:
    def __init__(self, text: str, wmso: bool):
        self.text = text
        self.wmso = wmso
        self.toks = tokenize(text)
        self.i = 0
        used = [int(t[1][1:]) for t in self.toks
                if t[0] == "id" and re.fullmatch(r"_\d+", t[1])]
        self.fresh_n = max(used, default=0)

    # token helpers
    def peek(self, ahead=0):
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise self.error(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok)
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.text, tok[2])

    def fresh(self) -> str:
        self.fresh_n += 1
        return f"_{self.fresh_n}"

    # formulas
    def parse(self) -> Formula:
        f = self.formula()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return f

    def formula(self):
        # a dotted quantifier is reached through unary() and takes the rest
        return self.iff()

    def quantifier(self):
        kind = self.take()[0]
        tok = self.take("id")
        var = tok[1]
        if is_set_var(var) and not self.wmso:
            raise SortError(f"set variable {var!r} outside WMSO (at position {tok[2]})")
        if self.peek()[0] == ".":
            self.take()
            body = self.formula()
        else:
            body = self.unary()
        return Forall(var, body) if kind == "forall" else Exists(var, body)

    def iff(self):
        left = self.implies()
        while self.peek()[0] == "<->":
            self.take()
            left = Iff(left, self.implies())
        return left

    def implies(self):
        left = self.or_()
        if self.peek()[0] == "->":
            self.take()
            return Implies(left, self.implies())
        return left

    def or_(self):
        left = self.and_()
        while self.peek()[0] == "|":
            self.take()
            left = Or(left, self.and_())
        return left

    def and_(self):
        left = self.unary()
        while self.peek()[0] == "&":
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self):
        kind = self.peek()[0]
        if kind == "!":
            self.take()
            return Not(self.unary())
        if kind in ("forall", "exists"):
            return self.quantifier()
        if kind == "(":
            saved = (self.i, self.fresh_n)
            try:
                self.take()
                f = self.formula()
                self.take(")")
                if self.peek()[0] not in _TERM_CONT:
                    return f
            except (ParseError, SortError):
                pass
            self.i, self.fresh_n = saved
        return self.atom()

    # atoms and terms
    def atom(self):
        tok = self.peek()
        if tok[0] == "id" and tok[1] == "E" and self.peek(1)[0] == "(":
            if self.wmso:
                raise self.error("E(.,.) is not part of WMSO")
            self.take()
            self.take("(")
            x = self.fo_var()
            self.take(",")
            y = self.fo_var()
            self.take(")")
            return Erel(x, y)
        left = self.term()
        op = self.peek()
        if op[0] == "in":
            if not self.wmso:
                raise self.error("'in' is only available in WMSO", op)
            self.take()
            s = self.take("id")
            if not is_set_var(s[1]):
                raise SortError(f"right side of 'in' must be a set variable, got {s[1]!r} "
                                f"(at position {s[2]})")
            v, wrap = self.var_of(left)
            return wrap(In(v, s[1]))
        if op[0] not in _REL:
            raise self.error(f"expected a relation, found {op[1] or 'end of input'!r}", op)
        self.take()
        right = self.term()
        rel = op[0]
        if rel in (">", ">="):
            left, right, rel = right, left, {">": "<", ">=": "<="}[rel]
        if rel == "=":
            return self.equation(left, right)
        if rel == "!=":
            return Not(self.equation(left, right))
        a, wrap_a = self.var_of(left)
        b, wrap_b = self.var_of(right)
        return wrap_a(wrap_b((Lt if rel == "<" else Leq)(a, b)))

    def fo_var(self):
        tok = self.take("id")
        if is_set_var(tok[1]):
            raise SortError(f"{tok[1]!r} is a set variable where an individual is expected "
                            f"(at position {tok[2]})")
        return tok[1]

    def term(self):
        left = self.summand()
        while self.peek()[0] == "+":
            tok = self.take()
            if self.wmso:
                raise self.error("'+' is not part of WMSO", tok)
            right = self.summand()
            if left[0] == "const" and right[0] == "const":
                left = ("const", ord_add(left[1], right[1]))
            else:
                left = ("sum", left, right)
        return left

    def summand(self):
        tok = self.peek()
        if tok[0] == "id":
            if self.wmso and tok[1] == "s" and self.peek(1)[0] == "(":
                self.take()
                self.take("(")
                t = self.term()
                self.take(")")
                return ("succ", t)
            self.take()
            if is_set_var(tok[1]):
                if self.wmso:
                    raise SortError(f"set variable {tok[1]!r} used as an individual "
                                    f"(at position {tok[2]})")
                raise self.error(f"variables are lowercase, got {tok[1]!r}", tok)
            return ("var", tok[1])
        if tok[0] == "nat":
            if tok[1] == "0" or self.wmso:
                self.take()
                return ("const", ordinal(int(tok[1])))
            return ("const", self.literal_term())
        if tok[0] == "w":
            if self.wmso:
                raise self.error("WMSO constants are natural numbers", tok)
            return ("const", self.literal_term())
        if tok[0] == "(":
            self.take()
            t = self.term()
            self.take(")")
            return t
        raise self.error(f"expected a term, found {tok[1] or 'end of input'!r}", tok)

    def literal_term(self):
        p = _OrdinalParser(self.text, self.toks, self.i)
        e, c = p.term()
        self.i = p.i
        return Ordinal._trusted(((e, c),))

    # flattening
    def var_of(self, t):
        """(variable, wrapper) where wrapper(phi) scopes phi under t's definition."""
        if t[0] == "var":
            return t[1], lambda f: f
        v = self.fresh()
        definition = self.define(t, v)
        return v, lambda f: Exists(v, And(definition, f))

    def define(self, t, target) -> Formula:
        """A formula stating t = target."""
        kind = t[0]
        if kind == "var":
            return Eq(t[1], target)
        if kind == "const":
            if self.wmso:
                return self.define_natural(int(t[1]), target)
            return EqConst(target, t[1])
        if kind == "sum":
            a, wrap_a = self.var_of(t[1])
            b, wrap_b = self.var_of(t[2])
            return wrap_a(wrap_b(Plus(a, b, target)))
        v, wrap = self.var_of(t[1])
        return wrap(self.successor(v, target))

    def equation(self, left, right):
        if left[0] == "var" and right[0] == "var":
            return Eq(left[1], right[1])
        if right[0] == "var":
            return self.define(left, right[1])
        if left[0] == "var":
            return self.define(right, left[1])
        s = self.fresh()
        return Exists(s, And(self.define(left, s), self.define(right, s)))

    # WMSO sugar, expressed with < only
    def successor(self, v, u):
        w = self.fresh()
        return And(Lt(v, u), Not(Exists(w, And(Lt(v, w), Lt(w, u)))))

    def define_natural(self, n, u):
        if n == 0:
            w = self.fresh()
            return Not(Exists(w, Lt(w, u)))
        v = self.fresh()
        return Exists(v, And(self.define_natural(n - 1, v), self.successor(v, u)))


# -- bound-variable hygiene -------------------------------------------------------

def rename_bound(f: Formula) -> Formula:
    """Rename quantified variables so none is bound twice on a root-to-leaf path."""
    taken = set(all_vars(f))

    def fresh_like(v):
        while v in taken:
            v += "'"
        taken.add(v)
        return v

    def go(g, bound, env):
        if isinstance(g, ATOMS):
            if not env:
                return g
            return type(g)(*(env.get(v, v) if isinstance(v, str) else v
                             for v in (getattr(g, fl.name) for fl in fields(g))))
        if isinstance(g, Not):
            return Not(go(g.arg, bound, env))
        if isinstance(g, _Binary):
            return type(g)(go(g.left, bound, env), go(g.right, bound, env))
        v = g.var
        if v in bound:
            nv = fresh_like(v)
            return Exists(nv, go(g.body, bound | {nv}, {**env, v: nv}))
        inner = {k: x for k, x in env.items() if k != v}
        return Exists(v, go(g.body, bound | {v}, inner))

    return go(f, frozenset(), {})


def _check_free(f: Formula, free, text):
    if free is None:
        return
    extra = sorted(f.free - set(free))
    if extra:
        raise UnboundVariable(f"unbound variable(s) {', '.join(extra)} in {text!r}")


def parse_fo(text: str, free=None) -> Formula:
    """Parse an FO formula; ``free`` (optional) lists the allowed free variables."""
    f = rename_bound(_Parser(text, wmso=False).parse())
    _check_free(f, free, text)
    return f


def parse_wmso(text: str, free=None) -> Formula:
    """Parse a WMSO formula (individuals lowercase, sets uppercase)."""
    f = rename_bound(_Parser(text, wmso=True).parse())
    _check_free(f, free, text)
    return f


def formula(f, wmso: bool = False) -> Formula:
    """Accept either a Formula or its text."""
    if isinstance(f, Formula):
        return f
    return parse_wmso(f) if wmso else parse_fo(f)
