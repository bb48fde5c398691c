"""Differential sweeps: atom and compiled automata against ordinal arithmetic."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .atoms import addition_automaton, e_automaton, equality_automaton, less_automaton
from .codec import encode, in_domain
from .compiler import accepts_valuation, compile_formula
from .oracle import e_holds, eval_oracle
from .ordinal import ONE, OMEGA, Ordinal, enumerate_nested, enumerate_ordinals, ordinal
from .syntax import And, Eq, EqConst, Erel, Formula, Iff, Implies, Leq, Lt, Not, Or, Plus
from .tree import convolve


def sweep_values(k: int, max_degree: int | None = None, max_coeff: int | None = None):
    """The ordinal enumeration used by the sweeps at level k."""
    if k == 0:
        d = 2 if max_degree is None else max_degree
        c = 3 if max_coeff is None else max_coeff
        return [ordinal(n) for n in range((c + 1) ** (d + 1))]
    if k == 1:
        return list(enumerate_ordinals(2 if max_degree is None else max_degree,
                                       3 if max_coeff is None else max_coeff))
    return list(enumerate_nested(k, 1 if max_degree is None else max_degree,
                                 2 if max_coeff is None else max_coeff))


def perturbations(z: Ordinal, k: int, n: int = 3) -> list[Ordinal]:
    """``n`` ordinals near z but different from it, all in the level-k domain."""
    cands = [z + ONE]
    if z.terms:
        e, c = z.terms[-1]
        cands.append(Ordinal._trusted(z.terms[:-1] + ((e, c + 1),)))
        if c > 1:
            cands.append(Ordinal._trusted(z.terms[:-1] + ((e, c - 1),)))
        cands.append(Ordinal._trusted(z.terms[:-1]))
        if len(z.terms) > 1:
            cands.append(Ordinal._trusted(z.terms[1:]))
    if k >= 1:
        cands.append(z + OMEGA)
    cands.append(z + ordinal(2))
    out = []
    for c in cands:
        if c != z and c not in out and in_domain(c, k):
            out.append(c)
    return out[:n]


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    failed: int = 0
    first_failure: str | None = None

    def record(self, ok: bool, detail):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.first_failure is None:
                self.first_failure = detail() if callable(detail) else str(detail)

    @property
    def ok(self) -> bool:
        return self.failed == 0


@dataclass
class SweepReport:
    k: int
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def addition_sweep(k: int, values, mutate: bool = False, n_perturb: int = 3) -> CheckResult:
    a = addition_automaton(k, mutate)
    enc = {x: encode(x, k) for x in values}
    res = CheckResult("addition")
    for x, y in itertools.product(values, repeat=2):
        z = x + y
        for w in [z] + perturbations(z, k, n_perturb):
            got = a.accepts(convolve([enc[x], enc[y], enc.get(w) or encode(w, k)]))
            res.record(got == (w == z), lambda: f"{x} + {y} = {w}: automaton says {got}")
    return res


def relation_sweep(k: int, values) -> list[CheckResult]:
    enc = {x: encode(x, k) for x in values}
    rels = [("eq", equality_automaton(k), lambda x, y: x == y),
            ("lt", less_automaton(k, True), lambda x, y: x < y),
            ("leq", less_automaton(k, False), lambda x, y: x <= y),
            ("E", e_automaton(k), e_holds)]
    out = []
    for name, aut, truth in rels:
        res = CheckResult(name)
        for x, y in itertools.product(values, repeat=2):
            got = aut.accepts(convolve([enc[x], enc[y]]))
            res.record(got == truth(x, y), lambda: f"{name}({x}, {y}): automaton says {got}")
        out.append(res)
    return out


# -- random quantifier-free templates ------------------------------------------------

VARS = ("x", "y", "z")


def random_atom(rng: random.Random, consts) -> Formula:
    kind = rng.choice(["plus", "plus", "eq", "lt", "leq", "E", "const"])
    pick = lambda: rng.choice(VARS)
    if kind == "plus":
        return Plus(pick(), pick(), pick())
    if kind == "const":
        return EqConst(pick(), rng.choice(consts))
    cls = {"eq": Eq, "lt": Lt, "leq": Leq, "E": Erel}[kind]
    return cls(pick(), pick())


def random_qf_formula(rng: random.Random, consts, depth: int = 2) -> Formula:
    if depth == 0 or rng.random() < 0.3:
        return random_atom(rng, consts)
    op = rng.choice(["not", "and", "or", "implies", "iff"])
    if op == "not":
        return Not(random_qf_formula(rng, consts, depth - 1))
    cls = {"and": And, "or": Or, "implies": Implies, "iff": Iff}[op]
    return cls(random_qf_formula(rng, consts, depth - 1), random_qf_formula(rng, consts, depth - 1))


def template_sweep(k: int, values, samples: int, rng: random.Random,
                   valuations_per_template: int = 20) -> CheckResult:
    res = CheckResult("templates")
    consts = [v for v in values[:8]]
    n_templates = max(1, samples // valuations_per_template)
    for _ in range(n_templates):
        f = random_qf_formula(rng, consts)
        aut, tracks = compile_formula(f, k)
        for _ in range(valuations_per_template):
            v = {name: rng.choice(values) for name in tracks}
            got = accepts_valuation(aut, tracks, v, k)
            want = eval_oracle(f, v, k=k)
            res.record(got == want, lambda: f"{f} under {fmt_valuation(v)}: automaton {got}, "
                                            f"oracle {want}")
    return res


def fmt_valuation(v: dict) -> str:
    return ", ".join(f"{n} = {v[n]}" for n in sorted(v))


def run_sweep(k: int = 1, max_degree=None, max_coeff=None, samples: int = 200,
              seed: int = 0, mutate: bool = False) -> SweepReport:
    values = sweep_values(k, max_degree, max_coeff)
    rng = random.Random(seed)
    report = SweepReport(k)
    report.checks.append(addition_sweep(k, values, mutate))
    report.checks.extend(relation_sweep(k, values))
    if samples:
        report.checks.append(template_sweep(k, values, samples, rng))
    return report


# -- WMSO templates --------------------------------------------------------------------

def random_wmso_template(rng: random.Random) -> str:
    """A WMSO formula over x, y, X, Y whose quantifiers are guarded."""
    atoms = ["x in X", "y in X", "x in Y", "y in Y", "x < y", "y < x", "x = y", "x <= y",
             "s(x) in X", "s(y) = x", "0 in X", "x = 3", "2 in Y", "s(s(x)) in Y"]
    quantified = ["exists u. u < x & u in X", "exists u. u in X & u in Y",
                  "forall u. u in X -> u < y", "exists u. u in Y & x < u",
                  "forall u. u < x -> !(u in Y)", "exists u. u in X & s(u) in X"]

    def gen(depth):
        r = rng.random()
        if depth == 0 or r < 0.3:
            return rng.choice(atoms) if rng.random() < 0.75 else f"({rng.choice(quantified)})"
        op = rng.choice(["!", "&", "|", "->", "<->"])
        if op == "!":
            return f"!({gen(depth - 1)})"
        return f"({gen(depth - 1)}) {op} ({gen(depth - 1)})"

    return gen(2)
