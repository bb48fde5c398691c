"""Formula -> tree automaton, by structural induction.

Every intermediate automaton reads the sorted tuple of its formula's free
variables, one track each, and accepts exactly the (padded) convolutions of
satisfying valuations.  It is always a sublanguage of the validity
automaton on those tracks, so complement is taken relative to it.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .atoms import (addition_automaton, constant_automaton, e_automaton,
                    equality_automaton, less_automaton, universe)
from .codec import decode, encode
from .errors import ResourceBudgetExceeded, UnboundVariable
from .nfta import (Op, TreeAutomaton, _boolean_within, _BudgetHit, complement,
                   is_empty, join, permute, product, project, retrack, trim, witness)
from .ordinal import Ordinal
from .syntax import (And, Eq, EqConst, Erel, Exists, Formula, Iff, Implies, Leq, Lt,
                     Not, Or, Plus, format_formula, formula)
from .tree import convolve, project_component

DEFAULT_MAX_STATES = 10**6


@dataclass
class Step:
    kind: str
    formula: str
    states: int
    transitions: int


@dataclass
class Compiler:
    """Compiles formulas at level ``k``; ``stats`` collects one Step per node."""

    k: int = 1
    max_states: int = DEFAULT_MAX_STATES
    rewrite_arrows: bool = False
    stats: list = field(default_factory=list)

    @property
    def peak_states(self) -> int:
        return max((s.states for s in self.stats), default=0)

    def compile(self, f) -> tuple[TreeAutomaton, tuple[str, ...]]:
        f = formula(f)
        return self._c(f)

    # -- helpers --------------------------------------------------------------------

    def _done(self, kind, f, a, tracks):
        a = trim(a)
        self.stats.append(Step(kind, format_formula(f), a.n_states, a.n_transitions))
        if a.n_states > self.max_states:
            raise ResourceBudgetExceeded(format_formula(f), a.n_states, self.max_states)
        return a, tracks

    def _guard(self, f, build):
        try:
            return build()
        except _BudgetHit as hit:
            raise ResourceBudgetExceeded(format_formula(f), hit.states, self.max_states) from None

    def _atom(self, base: TreeAutomaton, names):
        tracks = tuple(sorted(set(names)))
        pos = {v: i for i, v in enumerate(tracks)}
        return retrack(base, [pos[v] for v in names], len(tracks)), tracks

    def _align(self, a, a_tracks, tracks):
        missing = [v for v in tracks if v not in a_tracks]
        if not missing:
            return a
        return join(a, a_tracks, universe(len(missing), self.k), missing, tracks,
                    limit=self.max_states)

    # -- induction -------------------------------------------------------------------

    def _c(self, f: Formula):
        k = self.k
        if isinstance(f, Plus):
            a, t = self._atom(addition_automaton(k), (f.x, f.y, f.z))
            return self._done("atom", f, a, t)
        if isinstance(f, (Eq, Lt, Leq, Erel)):
            if isinstance(f, Eq):
                base = equality_automaton(k)
            elif isinstance(f, Erel):
                base = e_automaton(k)
            else:
                base = less_automaton(k, strict=isinstance(f, Lt))
            a, t = self._atom(base, (f.x, f.y))
            return self._done("atom", f, a, t)
        if isinstance(f, EqConst):
            return self._done("atom", f, constant_automaton(f.value, k), (f.x,))
        if isinstance(f, Not):
            if isinstance(f.arg, Not):
                return self._c(f.arg.arg)
            a, t = self._c(f.arg)
            res = self._guard(f, lambda: complement(a, universe(len(t), k), self.max_states))
            return self._done("not", f, res, t)
        if isinstance(f, And):
            a, ta = self._c(f.left)
            b, tb = self._c(f.right)
            tracks = tuple(sorted(set(ta) | set(tb)))
            res = self._guard(f, lambda: join(a, ta, b, tb, tracks, limit=self.max_states))
            return self._done("and", f, res, tracks)
        if isinstance(f, (Or, Implies, Iff)):
            if self.rewrite_arrows and isinstance(f, Implies):
                return self._c(Or(Not(f.left), f.right))
            if self.rewrite_arrows and isinstance(f, Iff):
                return self._c(And(Implies(f.left, f.right), Implies(f.right, f.left)))
            a, ta = self._c(f.left)
            b, tb = self._c(f.right)
            tracks = tuple(sorted(set(ta) | set(tb)))

            def build():
                aa = self._align(a, ta, tracks)
                bb = self._align(b, tb, tracks)
                if isinstance(f, Or):
                    return product(aa, bb, Op.OR, limit=self.max_states)
                op = Op.IMPLIES if isinstance(f, Implies) else Op.IFF
                return _boolean_within([aa, bb], lambda v: op(v[0], v[1]),
                                       universe(len(tracks), k), self.max_states)
            kind = {Or: "or", Implies: "implies", Iff: "iff"}[type(f)]
            return self._done(kind, f, self._guard(f, build), tracks)
        if isinstance(f, Exists):
            a, t = self._c(f.body)
            if f.var not in t:
                return a, t
            i = t.index(f.var)
            order = [j for j in range(len(t)) if j != i] + [i]
            rest = tuple(v for v in t if v != f.var)
            res = project(permute(a, order), len(t) - 1)
            return self._done("exists", f, res, rest)
        raise TypeError(f"cannot compile {type(f).__name__}")


def compile_formula(f, k: int = 1, max_states: int = DEFAULT_MAX_STATES,
                    rewrite_arrows: bool = False):
    """(automaton, tracks) for ``f``; tracks are its sorted free variables."""
    return Compiler(k, max_states, rewrite_arrows).compile(f)


def decide(sentence, k: int = 1, max_states: int = DEFAULT_MAX_STATES,
           rewrite_arrows: bool = False) -> bool:
    """Truth of a closed formula in (w^(w^k), +, E); k = 0 means (w, +, E)."""
    f = formula(sentence)
    if f.free:
        raise UnboundVariable(f"free variable(s) {', '.join(sorted(f.free))} in a sentence")
    a, _ = compile_formula(f, k, max_states, rewrite_arrows)
    return not is_empty(a)


def decode_witness(a: TreeAutomaton, tracks, k: int) -> dict[str, Ordinal] | None:
    t = witness(a)
    if t is None:
        return None
    return {v: decode(project_component(t, i), k) for i, v in enumerate(tracks)}


def find_witness(f, k: int = 1, max_states: int = DEFAULT_MAX_STATES) -> dict | None:
    """A satisfying valuation read off the least-height accepted tree, or None."""
    a, tracks = compile_formula(formula(f), k, max_states)
    return decode_witness(a, tracks, k)


def accepts_valuation(a: TreeAutomaton, tracks, valuation, k: int) -> bool:
    if not tracks:
        return not is_empty(a)
    return a.accepts(convolve([encode(valuation[v], k) for v in tracks]))


__all__ = ["Compiler", "Step", "compile_formula", "decide", "find_witness",
           "decode_witness", "accepts_valuation", "DEFAULT_MAX_STATES"]
