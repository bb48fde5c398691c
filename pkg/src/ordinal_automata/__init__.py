"""Decision procedures for ordinal arithmetic with finite tree automata.

Ordinals below w^(w^k) are coded as finite binary trees; addition, order
and the relation E become tree-automatic, so first-order sentences over
(w^(w^k), +, E) and weak monadic sentences over (w^k, <) can be decided by
compiling them to automata and testing emptiness.
"""
from .codec import decode, encode, ordinal_automaton, validity_automaton
from .compiler import Compiler, compile_formula, decide, find_witness
from .errors import (AlphabetMismatch, DomainExceeded, ExponentTooLarge, MalformedTree,
                     OrdinalAutomataError, ParseError, ResourceBudgetExceeded, SortError,
                     UnboundVariable)
from .nfta import (Op, TreeAutomaton, complement, determinize, is_empty, join, product,
                   project, trim, witness)
from .oracle import eval_oracle
from .ordinal import (OMEGA, ONE, ZERO, Ordinal, e_relation, omega_character, ord_add,
                      ord_cmp, ord_format, ord_parse, ordinal, two_development, two_log,
                      two_power)
from .syntax import Formula, parse_fo, parse_wmso
from .tree import Tree, convolve
from .wmso import decide_wmso, eval_wmso, find_witness_wmso, translate

__version__ = "0.1.0"

__all__ = [
    "Ordinal", "ZERO", "ONE", "OMEGA", "ordinal", "ord_add", "ord_cmp", "ord_parse",
    "ord_format", "two_power", "two_log", "two_development", "e_relation",
    "omega_character", "Tree", "convolve", "encode", "decode", "validity_automaton",
    "ordinal_automaton", "TreeAutomaton", "Op", "product", "join", "complement",
    "determinize", "project", "trim", "is_empty", "witness", "Formula", "parse_fo",
    "parse_wmso", "Compiler", "compile_formula", "decide", "find_witness", "eval_oracle",
    "translate", "decide_wmso", "find_witness_wmso", "eval_wmso",
    "OrdinalAutomataError", "ParseError", "UnboundVariable", "SortError",
    "ExponentTooLarge", "DomainExceeded", "MalformedTree", "AlphabetMismatch",
    "ResourceBudgetExceeded",
]
