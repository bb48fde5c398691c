"""Command-line front end.

Exit codes: 0 decided / pass, 1 counterexample or --expect mismatch,
2 syntax or input error, 3 state ceiling exceeded, 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .codec import decode, encode
from .compiler import DEFAULT_MAX_STATES, Compiler, decode_witness
from .errors import (DomainExceeded, MalformedTree, OrdinalAutomataError, ParseError,
                     ResourceBudgetExceeded, SortError, UnboundVariable)
from .nfta import from_json, is_empty, to_dot, to_json
from .ordinal import ord_format, ord_parse
from .syntax import Formula, format_formula, parse_fo, parse_wmso
from .tree import convolve, parse_sexpr, to_dot as tree_to_dot, to_sexpr
from .wmso import decode_valuation, translate

EXIT_OK, EXIT_FALSE, EXIT_SYNTAX, EXIT_RESOURCE, EXIT_IO = 0, 1, 2, 3, 4


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


# -- input helpers --------------------------------------------------------------------

def _read_text(arg, path):
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                return fh.read()
        except OSError as e:
            raise _Fail(EXIT_IO, f"cannot read {path}: {e.strerror}") from None
    if arg is None or arg == "-":
        return sys.stdin.read()
    return arg


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as e:
        raise _Fail(EXIT_IO, f"cannot write {path}: {e.strerror}") from None


def _emit(args, record: dict, text_lines):
    if args.format == "jsonl":
        sys.stdout.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        for line in text_lines:
            sys.stdout.write(line + "\n")


def _level(args):
    if args.level < 0:
        raise _Fail(EXIT_SYNTAX, "level must be >= 0")
    if args.theory == "wmso" and args.level < 1:
        raise _Fail(EXIT_SYNTAX, "wmso needs -k >= 1")
    if args.max_states <= 0:
        raise _Fail(EXIT_SYNTAX, "--max-states must be positive")
    return args.level


def _formula(args) -> tuple[Formula, Formula, int]:
    """(source formula, FO formula to compile, FO level)."""
    k = _level(args)
    text = _read_text(args.formula, args.file).strip()
    if args.theory == "wmso":
        f = parse_wmso(text)
        return f, translate(f, k), k - 1
    f = parse_fo(text)
    return f, f, k


def _compile(args, fo, level):
    comp = Compiler(level, args.max_states, getattr(args, "rewrite_arrows", False))
    start = time.perf_counter()
    a, tracks = comp.compile(fo)
    return comp, a, tracks, time.perf_counter() - start


def _steps(comp):
    return [{"kind": s.kind, "formula": s.formula, "states": s.states,
             "transitions": s.transitions} for s in comp.stats]


def _report_time(secs):
    sys.stdout.flush()
    print(f"wall time: {secs:.3f}s", file=sys.stderr)


def _expect(args, verdict: bool):
    if args.expect is None:
        return EXIT_OK
    want = args.expect in ("true", "sat")
    return EXIT_OK if want == verdict else EXIT_FALSE


# -- subcommands -------------------------------------------------------------------------

def cmd_decide(args):
    src, fo, level = _formula(args)
    if src.free:
        raise UnboundVariable(f"decide needs a sentence; free: {', '.join(sorted(src.free))}")
    comp, a, _, secs = _compile(args, fo, level)
    verdict = not is_empty(a)
    record = {"command": "decide", "theory": args.theory, "k": args.level,
              "formula": format_formula(src), "verdict": verdict,
              "peak_states": comp.peak_states, "steps": _steps(comp)}
    lines = [f"verdict: {str(verdict).lower()}", f"peak states: {comp.peak_states}"]
    if args.verbose:
        lines += [f"  {s.kind:8} {s.states:8} states  {s.formula}" for s in comp.stats]
    _emit(args, record, lines)
    _report_time(secs)
    return _expect(args, verdict)


def _fmt_value(name, value):
    if isinstance(value, frozenset):
        return "{" + ", ".join(ord_format(x) for x in sorted(value)) + "}"
    return ord_format(value)


def cmd_witness(args):
    src, fo, level = _formula(args)
    comp, a, tracks, secs = _compile(args, fo, level)
    found = decode_witness(a, tracks, level)
    if found is not None and args.theory == "wmso":
        found = decode_valuation(found)
    record = {"command": "witness", "theory": args.theory, "k": args.level,
              "formula": format_formula(src), "sat": found is not None,
              "valuation": None if found is None else
              {n: _fmt_value(n, found[n]) for n in sorted(found)},
              "peak_states": comp.peak_states}
    if found is None:
        lines = ["UNSAT"]
    else:
        shown = {n: v for n, v in found.items() if not n.startswith("_")}
        lines = [f"{n} = {_fmt_value(n, shown[n])}" for n in sorted(shown)] or ["SAT"]
    _emit(args, record, lines)
    _report_time(secs)
    return _expect(args, found is not None)


def cmd_compile(args):
    src, fo, level = _formula(args)
    comp, a, tracks, secs = _compile(args, fo, level)
    _write(args.output, to_json(a, tracks=list(tracks), level=level))
    if args.dot:
        _write(args.dot, to_dot(a))
    if args.output not in (None, "-"):
        _emit(args, {"command": "compile", "formula": format_formula(src),
                     "tracks": list(tracks), "states": a.n_states,
                     "transitions": a.n_transitions, "output": args.output},
              [f"tracks: {' '.join(tracks) or '(none)'}", f"states: {a.n_states}",
               f"transitions: {a.n_transitions}"])
    _report_time(secs)
    return EXIT_OK


def _load_automaton(path):
    text = _read_text(None, path)
    try:
        head = json.loads(text)
        return from_json(text), head.get("tracks"), head.get("level")
    except json.JSONDecodeError as e:
        raise ParseError(f"automaton file is not JSON: {e.msg}", text, e.pos) from None
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"not a serialized automaton: {e}", text, 0) from None


def cmd_run(args):
    a, tracks, level = _load_automaton(args.automaton)
    k = args.level if level is None else level
    if args.ordinals is not None:
        trees = [encode(ord_parse(s), k) for s in args.ordinals]
        tree = convolve(trees) if trees else None
    else:
        tree = parse_sexpr(_read_text(None, args.tree))
    if tree is None:
        accepted = not is_empty(a)
    else:
        accepted = a.accepts(tree)
    _emit(args, {"command": "run", "accepted": accepted, "tracks": tracks},
          ["accept" if accepted else "reject"])
    return _expect(args, accepted)


def cmd_oracle_sweep(args):
    from .sweep import run_sweep
    k = _level(args)
    report = run_sweep(k, args.max_degree, args.max_coeff, args.samples, args.seed,
                       mutate=args.inject_bug)
    for c in report.checks:
        _emit(args, {"command": "oracle-sweep", "k": k, "check": c.name, "passed": c.passed,
                     "failed": c.failed, "first_counterexample": c.first_failure},
              [f"{c.name:10} pass {c.passed:6}  fail {c.failed:6}"
               + (f"  first counterexample: {c.first_failure}" if c.first_failure else "")])
    _emit(args, {"command": "oracle-sweep", "k": k, "ok": report.ok},
          ["PASS" if report.ok else "FAIL"])
    return EXIT_OK if report.ok else EXIT_FALSE


def cmd_encode(args):
    k = _level(args)
    value = ord_parse(_read_text(args.ordinal, args.file).strip())
    t = encode(value, k)
    _write(args.output, to_sexpr(t) + "\n")
    if args.dot:
        _write(args.dot, tree_to_dot(t))
    return EXIT_OK


def cmd_decode(args):
    k = _level(args)
    t = parse_sexpr(_read_text(args.tree, args.file))
    value = decode(t, k)
    _emit(args, {"command": "decode", "k": k, "ordinal": ord_format(value)}, [ord_format(value)])
    return EXIT_OK


# -- argument parsing --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theory", choices=["fo", "wmso"], default="fo")
    common.add_argument("-k", "--level", type=int, default=1,
                        help="FO: ordinals below w^(w^k) (k=0: naturals); WMSO: below w^k")
    common.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=["text", "jsonl"], default="text")
    common.add_argument("--expect", choices=["true", "false", "sat", "unsat"])

    p = argparse.ArgumentParser(prog="ordinal-automata",
                                description="Tree-automatic decision procedures for ordinals.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def formula_cmd(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("formula", nargs="?", help="formula text ('-' or omitted: stdin)")
        sp.add_argument("-f", "--file", help="read the formula from a file")
        sp.add_argument("--rewrite-arrows", action="store_true",
                        help="compile -> and <-> by rewriting to !, |, &")
        sp.add_argument("-v", "--verbose", action="store_true")
        sp.set_defaults(fn=fn)
        return sp

    formula_cmd("decide", cmd_decide, "decide a closed sentence")
    formula_cmd("witness", cmd_witness, "find a satisfying valuation")
    sp = formula_cmd("compile", cmd_compile, "write the compiled automaton as JSON")
    sp.add_argument("-o", "--output", help="JSON output path (default stdout)")
    sp.add_argument("--dot", help="also write a Graphviz DOT file")

    sp = sub.add_parser("run", parents=[common], help="membership of a tree in an automaton")
    sp.add_argument("automaton", help="automaton JSON file (from 'compile')")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--tree", help="tree file in s-expression form")
    g.add_argument("--ordinals", nargs="*", metavar="ORD",
                   help="one ordinal literal per track, encoded at the automaton's level")
    sp.set_defaults(fn=cmd_run)

    sp = sub.add_parser("oracle-sweep", parents=[common],
                        help="check atom automata and random formulas against arithmetic")
    sp.add_argument("--max-degree", type=int)
    sp.add_argument("--max-coeff", type=int)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--inject-bug", action="store_true",
                    help="flip one carry transition of the addition automaton")
    sp.set_defaults(fn=cmd_oracle_sweep)

    sp = sub.add_parser("encode", parents=[common], help="ordinal literal -> tree")
    sp.add_argument("ordinal", nargs="?")
    sp.add_argument("-f", "--file")
    sp.add_argument("-o", "--output")
    sp.add_argument("--dot")
    sp.set_defaults(fn=cmd_encode)

    sp = sub.add_parser("decode", parents=[common], help="tree -> ordinal literal")
    sp.add_argument("tree", nargs="?", help="s-expression ('-' or omitted: stdin)")
    sp.add_argument("-f", "--file")
    sp.set_defaults(fn=cmd_decode)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _Fail as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except ResourceBudgetExceeded as e:
        print(f"resource ceiling: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ParseError, SortError, UnboundVariable, DomainExceeded, MalformedTree) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_SYNTAX
    except OrdinalAutomataError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_SYNTAX
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
