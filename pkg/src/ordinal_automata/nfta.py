"""Bottom-up nondeterministic finite tree automata.

A :class:`TreeAutomaton` reads finite binary trees whose labels are
``width``-tuples over a small base alphabet.  States are the integers
``0 .. n_states-1``; a transition ``(sym, l, r) -> q`` lets a node labelled
``sym`` whose children are in states ``l`` and ``r`` take state ``q``.
Leaves take any state in ``leaves`` whatever their label.  A tree is
accepted when some run puts the root in a final state.

Every construction returns a new automaton; nothing is mutated in place.
Constructions that can blow up (products, subset constructions) only
explore reachable state combinations.
"""
from __future__ import annotations

import enum
import heapq
import itertools
import json
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

from .errors import AlphabetMismatch
from .tree import PAD, Tree

BASE = ("#", "0", "1", "A", "B", "E")

FORMAT_NAME = "ordinal-automata/nfta"
FORMAT_VERSION = 1


class Op(enum.Enum):
    AND = "and"
    OR = "or"
    IMPLIES = "implies"
    IFF = "iff"

    def __call__(self, a: bool, b: bool) -> bool:
        if self is Op.AND:
            return a and b
        if self is Op.OR:
            return a or b
        if self is Op.IMPLIES:
            return (not a) or b
        return a == b


class TreeAutomaton:
    """Immutable bottom-up tree automaton ``(Q, Sigma^width, Delta, I, F)``."""

    def __init__(self, width: int, n_states: int, leaves: Iterable[int],
                 finals: Iterable[int],
                 transitions: Mapping[tuple, Iterable[int]],
                 base: Sequence[str] = BASE, deterministic: bool | None = None,
                 names: Sequence | None = None):
        self.width = width
        self.n_states = n_states
        self.leaves = frozenset(leaves)
        self.finals = frozenset(finals)
        self.base = tuple(base)
        trans = {}
        for (sym, l, r), targets in transitions.items():
            targets = frozenset(targets)
            if not targets:
                continue
            if len(sym) != width:
                raise AlphabetMismatch(f"symbol {sym} does not have width {width}")
            if not all(0 <= s < n_states for s in (l, r, *targets)):
                raise ValueError(f"transition {(sym, l, r)} uses an unknown state")
            trans[(sym, l, r)] = targets
        if not all(0 <= s < n_states for s in self.leaves | self.finals):
            raise ValueError("leaf or final state out of range")
        self.transitions = trans
        if deterministic is None:
            deterministic = len(self.leaves) <= 1 and all(len(t) == 1 for t in trans.values())
        elif deterministic and (len(self.leaves) > 1
                                or any(len(t) != 1 for t in trans.values())):
            raise ValueError("automaton flagged deterministic is not")
        self.deterministic = deterministic
        self.names = tuple(names) if names is not None else None

    @classmethod
    def from_rules(cls, width, rules, leaves, finals, **kw):
        """Build from ``(sym, left, right, target)`` rules over hashable state names.

        States are numbered in order of first appearance (leaves first).
        """
        ids = {}

        def sid(s):
            if s not in ids:
                ids[s] = len(ids)
            return ids[s]

        for s in leaves:
            sid(s)
        trans = {}
        for sym, l, r, q in rules:
            key = (tuple(sym), sid(l), sid(r))
            trans.setdefault(key, set()).add(sid(q))
        for s in finals:
            sid(s)
        names = [None] * len(ids)
        for s, i in ids.items():
            names[i] = s
        return cls(width, len(ids), [ids[s] for s in leaves],
                   [ids[s] for s in finals], trans, names=names, **kw)

    # -- indexes -----------------------------------------------------------

    @cached_property
    def by_children(self) -> dict[tuple[int, int], dict[tuple, frozenset]]:
        idx = {}
        for (sym, l, r), targets in self.transitions.items():
            idx.setdefault((l, r), {})[sym] = targets
        return idx

    @cached_property
    def right_partners(self) -> dict[int, list[int]]:
        idx = {}
        for (l, r) in self.by_children:
            idx.setdefault(l, []).append(r)
        return idx

    @cached_property
    def left_partners(self) -> dict[int, list[int]]:
        idx = {}
        for (l, r) in self.by_children:
            idx.setdefault(r, []).append(l)
        return idx

    @cached_property
    def symbols(self) -> list[tuple]:
        seen = {}
        for (sym, _, _) in self.transitions:
            seen.setdefault(sym, None)
        return sorted(seen)

    @property
    def n_transitions(self) -> int:
        return sum(len(t) for t in self.transitions.values())

    def __repr__(self):
        kind = "DFTA" if self.deterministic else "NFTA"
        return (f"<{kind} width={self.width} states={self.n_states} "
                f"transitions={self.n_transitions} leaves={len(self.leaves)} "
                f"finals={len(self.finals)}>")

    # -- membership --------------------------------------------------------

    def _sym(self, label):
        if not isinstance(label, tuple):
            label = (label,)
        if len(label) != self.width:
            raise AlphabetMismatch(
                f"label {label!r} has width {len(label)}, automaton expects {self.width}")
        return label

    def run_states(self, t: Tree) -> frozenset:
        """States reachable at the root of ``t`` (bottom-up subset run)."""
        if t.left is None:
            return self.leaves
        sym = self._sym(t.label)
        ls = self.run_states(t.left)
        rs = self.run_states(t.right)
        out = set()
        get = self.transitions.get
        for l in ls:
            for r in rs:
                targets = get((sym, l, r))
                if targets:
                    out.update(targets)
        if self.deterministic:
            assert len(out) <= 1, "deterministic automaton produced two runs"
        return frozenset(out)

    def accepts(self, t: Tree) -> bool:
        return not self.finals.isdisjoint(self.run_states(t))

    def run(self, t: Tree) -> dict[str, int] | None:
        """An accepting run as an address -> state map, or None."""
        memo = {}

        def states(u, s):
            if s.left is None:
                memo[u] = self.leaves
                return memo[u]
            sym = self._sym(s.label)
            ls, rs = states(u + "a", s.left), states(u + "b", s.right)
            out = set()
            for l in ls:
                for r in rs:
                    out.update(self.transitions.get((sym, l, r), ()))
            memo[u] = frozenset(out)
            return memo[u]

        roots = states("", t) & self.finals
        if not roots:
            return None
        rho = {}

        def assign(u, s, q):
            rho[u] = q
            if s.left is None:
                return
            sym = self._sym(s.label)
            for l in sorted(memo[u + "a"]):
                for r in sorted(memo[u + "b"]):
                    if q in self.transitions.get((sym, l, r), ()):
                        assign(u + "a", s.left, l)
                        assign(u + "b", s.right, r)
                        return
        assign("", t, min(roots))
        return rho


def accepts(a: TreeAutomaton, t: Tree) -> bool:
    return a.accepts(t)


# -- small constructors --------------------------------------------------------

def empty_automaton(width: int, base=BASE) -> TreeAutomaton:
    return TreeAutomaton(width, 0, [], [], {}, base=base)


def universal_automaton(width: int, base=BASE) -> TreeAutomaton:
    """One state accepting every tree over ``base^width``."""
    trans = {(sym, 0, 0): {0} for sym in itertools.product(base, repeat=width)}
    return TreeAutomaton(width, 1, [0], [0], trans, base=base)


# -- trimming ------------------------------------------------------------------

def reachable_states(a: TreeAutomaton) -> set[int]:
    reached = set(a.leaves)
    work = list(sorted(reached))
    while work:
        s = work.pop()
        for r in a.right_partners.get(s, ()):
            if r in reached:
                for targets in a.by_children[(s, r)].values():
                    for q in targets:
                        if q not in reached:
                            reached.add(q)
                            work.append(q)
        for l in a.left_partners.get(s, ()):
            if l in reached:
                for targets in a.by_children[(l, s)].values():
                    for q in targets:
                        if q not in reached:
                            reached.add(q)
                            work.append(q)
    return reached


def trim(a: TreeAutomaton) -> TreeAutomaton:
    """Keep only states that are reachable and can contribute to acceptance."""
    reached = reachable_states(a)
    by_target = {}
    for (sym, l, r), targets in a.transitions.items():
        if l in reached and r in reached:
            for q in targets:
                by_target.setdefault(q, []).append((l, r))
    useful = set(a.finals & reached)
    work = sorted(useful)
    while work:
        q = work.pop()
        for l, r in by_target.get(q, ()):
            for s in (l, r):
                if s not in useful:
                    useful.add(s)
                    work.append(s)
    order = sorted(useful)
    new = {s: i for i, s in enumerate(order)}
    trans = {}
    for (sym, l, r), targets in a.transitions.items():
        if l in new and r in new:
            kept = [new[q] for q in targets if q in new]
            if kept:
                trans[(sym, new[l], new[r])] = kept
    names = [a.names[s] for s in order] if a.names else None
    return TreeAutomaton(a.width, len(order), [new[s] for s in a.leaves if s in new],
                         [new[s] for s in a.finals if s in new], trans, base=a.base,
                         deterministic=a.deterministic or None, names=names)


# -- exploration engine ----------------------------------------------------------

class _Explorer:
    """Worklist over product-like states, numbering them as they appear."""

    def __init__(self):
        self.ids = {}
        self.states = []
        self.trans = {}
        self.queue = []
        self.head = 0

    def add(self, key) -> int:
        i = self.ids.get(key)
        if i is None:
            i = len(self.states)
            self.ids[key] = i
            self.states.append(key)
            self.queue.append(i)
        return i

    def edge(self, sym, l, r, key):
        q = self.add(key)
        self.trans.setdefault((sym, l, r), set()).add(q)

    def pop(self):
        if self.head == len(self.queue):
            return None
        i = self.queue[self.head]
        self.head += 1
        return i


def _check_budget(ex, limit):
    if limit is not None and len(ex.states) > limit:
        raise _BudgetHit(len(ex.states))


class _BudgetHit(Exception):
    def __init__(self, states):
        self.states = states


def determinize(a: TreeAutomaton, limit: int | None = None) -> TreeAutomaton:
    """Subset construction over reachable subsets (the empty subset is omitted)."""
    ex = _Explorer()
    by_member = {}
    if a.leaves:
        ex.add(frozenset(a.leaves))
    done = []
    while (i := ex.pop()) is not None:
        S = ex.states[i]
        done.append(i)
        for s in S:
            by_member.setdefault(s, []).append(i)
        rights = set()
        for s in S:
            for r in a.right_partners.get(s, ()):
                rights.update(by_member.get(r, ()))
        lefts = set()
        for s in S:
            for l in a.left_partners.get(s, ()):
                lefts.update(by_member.get(l, ()))
        for j in sorted(rights):
            _subset_step(a, ex, i, j)
        for j in sorted(lefts):
            if j != i:
                _subset_step(a, ex, j, i)
        _check_budget(ex, limit)
    finals = [i for i, S in enumerate(ex.states) if not a.finals.isdisjoint(S)]
    return TreeAutomaton(a.width, len(ex.states), [0] if a.leaves else [], finals,
                         ex.trans, base=a.base, deterministic=True)


def _subset_step(a, ex, i, j):
    L, R = ex.states[i], ex.states[j]
    acc = {}
    for l in L:
        for r in R:
            d = a.by_children.get((l, r))
            if d:
                for sym, targets in d.items():
                    acc.setdefault(sym, set()).update(targets)
    for sym in sorted(acc):
        ex.edge(sym, i, j, frozenset(acc[sym]))


def _boolean_within(parts: Sequence[TreeAutomaton], predicate: Callable,
                    universe: TreeAutomaton, limit: int | None = None) -> TreeAutomaton:
    """Determinise ``parts`` on the fly inside the runs of a deterministic ``universe``.

    A product state is ``(subset_1, ..., subset_m, u)``.  It is final when
    ``u`` is final in the universe and ``predicate`` holds on the tuple of
    "subset_i meets F_i" flags.  The result is deterministic.
    """
    if not universe.deterministic:
        universe = determinize(universe)
    for p in parts:
        if p.width != universe.width:
            raise AlphabetMismatch("parts and universe must share the track layout")
    ex = _Explorer()
    leaf_sets = tuple(frozenset(p.leaves) for p in parts)
    leaf_ids = [ex.add((leaf_sets, u)) for u in sorted(universe.leaves)]
    by_u = {}
    gets = [p.transitions.get for p in parts]

    def step(i, j):
        (Ls, ul), (Rs, ur) = ex.states[i], ex.states[j]
        d = universe.by_children.get((ul, ur))
        if not d:
            return
        for sym, utargets in d.items():
            subsets = []
            for k, get in enumerate(gets):
                out = set()
                for l in Ls[k]:
                    for r in Rs[k]:
                        t = get((sym, l, r))
                        if t:
                            out.update(t)
                subsets.append(frozenset(out))
            subsets = tuple(subsets)
            for u in utargets:
                ex.edge(sym, i, j, (subsets, u))

    while (i := ex.pop()) is not None:
        u = ex.states[i][1]
        by_u.setdefault(u, []).append(i)
        for ur in universe.right_partners.get(u, ()):
            for j in by_u.get(ur, ()):
                step(i, j)
        for ul in universe.left_partners.get(u, ()):
            for j in by_u.get(ul, ()):
                if j != i:
                    step(j, i)
        _check_budget(ex, limit)
    finals = []
    for i, (subsets, u) in enumerate(ex.states):
        if u in universe.finals:
            flags = tuple(not p.finals.isdisjoint(S) for p, S in zip(parts, subsets))
            if predicate(flags):
                finals.append(i)
    return TreeAutomaton(universe.width, len(ex.states), leaf_ids, finals, ex.trans,
                         base=universe.base)


def complement(a: TreeAutomaton, universe: TreeAutomaton,
               limit: int | None = None) -> TreeAutomaton:
    """Trees of ``universe`` not accepted by ``a``.

    ``a`` is determinised (subset construction), its final states flipped and
    the result intersected with the universe, all in one reachable-only pass.
    """
    return _boolean_within([a], lambda f: not f[0], universe, limit)


def join(a: TreeAutomaton, a_tracks: Sequence, b: TreeAutomaton, b_tracks: Sequence,
         out_tracks: Sequence | None = None, limit: int | None = None) -> TreeAutomaton:
    """Intersection of automata over named tracks (natural join on shared names).

    ``a_tracks``/``b_tracks`` name the tracks of each input; the result reads
    ``out_tracks`` (default: sorted union).  Tracks shared by both inputs must
    carry the same letter.
    """
    if out_tracks is None:
        out_tracks = sorted(set(a_tracks) | set(b_tracks))
    a_pos = {v: i for i, v in enumerate(a_tracks)}
    b_pos = {v: i for i, v in enumerate(b_tracks)}
    if len(a_pos) != a.width or len(b_pos) != b.width:
        raise AlphabetMismatch("track names must be distinct and match the widths")
    if set(out_tracks) != set(a_pos) | set(b_pos):
        raise ValueError("output tracks must be the union of input tracks")
    shared = [v for v in a_tracks if v in b_pos]
    a_shared = [a_pos[v] for v in shared]
    b_shared = [b_pos[v] for v in shared]
    src = [(0, a_pos[v]) if v in a_pos else (1, b_pos[v]) for v in out_tracks]

    ex = _Explorer()
    for la in sorted(a.leaves):
        for lb in sorted(b.leaves):
            ex.add((la, lb))
    by_a = {}
    grouped = {}

    def b_groups(lb, rb):
        key = (lb, rb)
        g = grouped.get(key)
        if g is None:
            g = {}
            for sym, targets in b.by_children.get(key, {}).items():
                g.setdefault(tuple(sym[k] for k in b_shared), []).append((sym, targets))
            grouped[key] = g
        return g

    def step(i, j):
        (la, lb), (ra, rb) = ex.states[i], ex.states[j]
        da = a.by_children.get((la, ra))
        if not da or (lb, rb) not in b.by_children:
            return
        g = b_groups(lb, rb)
        for sa, ta in da.items():
            matches = g.get(tuple(sa[k] for k in a_shared))
            if not matches:
                continue
            for sb, tb in matches:
                pair = (sa, sb)
                sym = tuple(pair[w][k] for w, k in src)
                for qa in ta:
                    for qb in tb:
                        ex.edge(sym, i, j, (qa, qb))

    while (i := ex.pop()) is not None:
        qa, qb = ex.states[i]
        by_a.setdefault(qa, []).append(i)
        rp_b = b.right_partners.get(qb, ())
        lp_b = b.left_partners.get(qb, ())
        for ra in a.right_partners.get(qa, ()):
            for j in by_a.get(ra, ()):
                if ex.states[j][1] in rp_b:
                    step(i, j)
        for la in a.left_partners.get(qa, ()):
            for j in by_a.get(la, ()):
                if j != i and ex.states[j][1] in lp_b:
                    step(j, i)
        _check_budget(ex, limit)
    finals = [i for i, (qa, qb) in enumerate(ex.states)
              if qa in a.finals and qb in b.finals]
    leaves = [i for i, (qa, qb) in enumerate(ex.states)
              if qa in a.leaves and qb in b.leaves]
    return TreeAutomaton(len(out_tracks), len(ex.states), leaves, finals, ex.trans,
                         base=a.base)


def _union_product(a: TreeAutomaton, b: TreeAutomaton, limit=None) -> TreeAutomaton:
    """Pairwise product where each side may sit in an extra non-final sink.

    The sink (``None``) absorbs everything, so a pair run exists whenever one
    side has a run; a pair is final when either component is final.
    """
    ex = _Explorer()
    la_ = sorted(a.leaves) + [None]
    lb_ = sorted(b.leaves) + [None]
    for x in la_:
        for y in lb_:
            if (x, y) != (None, None):
                ex.add((x, y))
    by_a, by_b = {}, {}

    def step(i, j):
        (la, lb), (ra, rb) = ex.states[i], ex.states[j]
        da = a.by_children.get((la, ra)) if la is not None and ra is not None else None
        db = b.by_children.get((lb, rb)) if lb is not None and rb is not None else None
        if not da and not db:
            return
        syms = dict.fromkeys(da or ())
        syms.update(dict.fromkeys(db or ()))
        for sym in syms:
            ta = sorted(da.get(sym, ())) if da else []
            tb = sorted(db.get(sym, ())) if db else []
            for x in ta + [None]:
                for y in tb + [None]:
                    if (x, y) != (None, None):
                        ex.edge(sym, i, j, (x, y))

    while (i := ex.pop()) is not None:
        qa, qb = ex.states[i]
        by_a.setdefault(qa, []).append(i)
        by_b.setdefault(qb, []).append(i)
        cands = set()
        if qa is not None:
            for ra in a.right_partners.get(qa, ()):
                cands.update(by_a.get(ra, ()))
        if qb is not None:
            for rb in b.right_partners.get(qb, ()):
                cands.update(by_b.get(rb, ()))
        for j in sorted(cands):
            step(i, j)
        cands = set()
        if qa is not None:
            for l in a.left_partners.get(qa, ()):
                cands.update(by_a.get(l, ()))
        if qb is not None:
            for l in b.left_partners.get(qb, ()):
                cands.update(by_b.get(l, ()))
        cands.discard(i)
        for j in sorted(cands):
            step(j, i)
        _check_budget(ex, limit)
    finals = [i for i, (x, y) in enumerate(ex.states)
              if (x is not None and x in a.finals) or (y is not None and y in b.finals)]
    leaves = [i for i, (x, y) in enumerate(ex.states)
              if (x is None or x in a.leaves) and (y is None or y in b.leaves)]
    return TreeAutomaton(a.width, len(ex.states), leaves, finals, ex.trans, base=a.base)


def product(a: TreeAutomaton, b: TreeAutomaton, op: Op = Op.AND,
            universe: TreeAutomaton | None = None,
            limit: int | None = None) -> TreeAutomaton:
    """Boolean combination of two automata over the same tracks.

    AND and OR work on the nondeterministic inputs directly.  IMPLIES and IFF
    determinise both sides first; their result is relative to ``universe``
    (default: every tree over the alphabet).
    """
    if a.width != b.width:
        raise AlphabetMismatch(f"widths differ: {a.width} vs {b.width}")
    op = Op(op)
    if op is Op.AND:
        tracks = list(range(a.width))
        return join(a, tracks, b, tracks, tracks, limit=limit)
    if op is Op.OR:
        return _union_product(a, b, limit=limit)
    if universe is None:
        universe = universal_automaton(a.width, a.base)
    return _boolean_within([a, b], lambda f: op(f[0], f[1]), universe, limit)


def union(a: TreeAutomaton, b: TreeAutomaton) -> TreeAutomaton:
    """Disjoint-union automaton (language union, no product)."""
    if a.width != b.width:
        raise AlphabetMismatch("widths differ")
    n = a.n_states
    trans = dict(a.transitions)
    for (sym, l, r), t in b.transitions.items():
        trans[(sym, l + n, r + n)] = [q + n for q in t]
    return TreeAutomaton(a.width, n + b.n_states, list(a.leaves) + [q + n for q in b.leaves],
                         list(a.finals) + [q + n for q in b.finals], trans, base=a.base)


# -- track manipulation -----------------------------------------------------------

def retrack(a: TreeAutomaton, target_of: Sequence[int], new_width: int) -> TreeAutomaton:
    """Move input track ``i`` to output track ``target_of[i]``.

    Several inputs mapped to one output must agree letter-wise (diagonal);
    outputs that receive no input are unconstrained (cylindrification).
    """
    if len(target_of) != a.width:
        raise AlphabetMismatch("target_of must list every input track")
    sources = [[] for _ in range(new_width)]
    for i, j in enumerate(target_of):
        sources[j].append(i)
    free = [j for j in range(new_width) if not sources[j]]
    trans = {}
    for (sym, l, r), targets in a.transitions.items():
        out = [None] * new_width
        ok = True
        for j, srcs in enumerate(sources):
            if srcs:
                letters = {sym[i] for i in srcs}
                if len(letters) != 1:
                    ok = False
                    break
                out[j] = sym[srcs[0]]
        if not ok:
            continue
        for fill in itertools.product(a.base, repeat=len(free)):
            for j, c in zip(free, fill):
                out[j] = c
            trans.setdefault((tuple(out), l, r), set()).update(targets)
    return TreeAutomaton(new_width, a.n_states, a.leaves, a.finals, trans, base=a.base,
                         names=a.names)


def permute(a: TreeAutomaton, order: Sequence[int]) -> TreeAutomaton:
    """Output track ``j`` reads input track ``order[j]``."""
    if sorted(order) != list(range(a.width)):
        raise ValueError("order must be a permutation of the tracks")
    target_of = [0] * a.width
    for j, i in enumerate(order):
        target_of[i] = j
    return retrack(a, target_of, a.width)


def cylindrify(a: TreeAutomaton, at: int) -> TreeAutomaton:
    """Insert an unconstrained track at index ``at``."""
    if not 0 <= at <= a.width:
        raise IndexError(at)
    target_of = [i if i < at else i + 1 for i in range(a.width)]
    return retrack(a, target_of, a.width + 1)


def saturate_padding(a: TreeAutomaton) -> TreeAutomaton:
    """Let a leaf stand for any all-``#`` subtree.

    States reachable from the leaf states through transitions on the
    all-padding symbol become leaf states themselves.
    """
    pad = (PAD,) * a.width
    reached = set(a.leaves)
    changed = True
    while changed:
        changed = False
        for (sym, l, r), targets in a.transitions.items():
            if sym == pad and l in reached and r in reached:
                for q in targets:
                    if q not in reached:
                        reached.add(q)
                        changed = True
    if reached == a.leaves:
        return a
    return TreeAutomaton(a.width, a.n_states, sorted(reached), a.finals, a.transitions,
                         base=a.base, names=a.names)


def project(a: TreeAutomaton, component: int) -> TreeAutomaton:
    """Erase track ``component``; the result guesses its letters.

    Leaf states are saturated so that the erased track may extend below the
    remaining tracks' padding.
    """
    if not 0 <= component < a.width:
        raise IndexError(component)
    trans = {}
    for (sym, l, r), targets in a.transitions.items():
        key = (sym[:component] + sym[component + 1:], l, r)
        trans.setdefault(key, set()).update(targets)
    out = TreeAutomaton(a.width - 1, a.n_states, a.leaves, a.finals, trans, base=a.base,
                        deterministic=False, names=a.names)
    return saturate_padding(out)


# -- emptiness and witnesses ---------------------------------------------------------

def _marking(a: TreeAutomaton):
    """Minimal heights of reachable states and the transition realising each.

    Dijkstra-style: a transition becomes available once both children are
    marked; ties on height go to the least symbol, then the least child ids.
    """
    height = {}
    how = {}
    by_child = {}
    for (sym, l, r), targets in a.transitions.items():
        for s in {l, r}:
            by_child.setdefault(s, []).append((sym, l, r, targets))
    heap = []
    for q in sorted(a.leaves):
        heap.append((0, (), -1, -1, q))
    heapq.heapify(heap)
    while heap:
        h, sym, l, r, q = heapq.heappop(heap)
        if q in height:
            continue
        height[q] = h
        how[q] = None if l < 0 else (sym, l, r)
        for sym2, l2, r2, targets in by_child.get(q, ()):
            if l2 in height and r2 in height:
                h2 = 1 + max(height[l2], height[r2])
                for q2 in targets:
                    if q2 not in height:
                        heapq.heappush(heap, (h2, sym2, l2, r2, q2))
    return height, how


def is_empty(a: TreeAutomaton) -> bool:
    return a.finals.isdisjoint(reachable_states(a))


def witness(a: TreeAutomaton) -> Tree | None:
    """A minimal-height accepted tree (deterministic tie-breaking), or None."""
    height, how = _marking(a)
    candidates = [(height[q], q) for q in a.finals if q in height]
    if not candidates:
        return None
    _, root = min(candidates)
    pad = (PAD,) * a.width

    def build(q):
        rule = how[q]
        if rule is None:
            return Tree(pad)
        sym, l, r = rule
        return Tree(sym, build(l), build(r))

    return build(root)


# -- serialisation ---------------------------------------------------------------

def to_json(a: TreeAutomaton, **meta) -> str:
    """Canonical, diffable text form (one transition per line).

    Extra keyword arguments are stored as additional header fields.
    """
    rows = sorted((list(sym), l, r, q) for (sym, l, r), ts in a.transitions.items()
                  for q in ts)
    head = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "width": a.width,
        "base": list(a.base),
        "states": a.n_states,
        "leaves": sorted(a.leaves),
        "finals": sorted(a.finals),
        "deterministic": a.deterministic,
    }
    head.update(meta)
    lines = ["{"]
    for k, v in head.items():
        lines.append(f"  {json.dumps(k)}: {json.dumps(v, separators=(',', ':'))},")
    lines.append('  "transitions": [')
    body = [f"    {json.dumps(row, separators=(',', ':'))}" for row in rows]
    lines.append(",\n".join(body))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(line for line in lines if line) + "\n"


def from_json(text: str) -> TreeAutomaton:
    d = json.loads(text)
    if d.get("format") != FORMAT_NAME:
        raise ValueError("not a serialized tree automaton")
    if d.get("version") != FORMAT_VERSION:
        raise ValueError(f"unsupported format version {d.get('version')}")
    trans = {}
    for sym, l, r, q in d["transitions"]:
        trans.setdefault((tuple(sym), l, r), set()).add(q)
    return TreeAutomaton(d["width"], d["states"], d["leaves"], d["finals"], trans,
                         base=d["base"], deterministic=d["deterministic"] or None)


def to_dot(a: TreeAutomaton, name: str = "automaton") -> str:
    """Transition hypergraph: each transition is a small AND-node."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for q in range(a.n_states):
        shape = "doublecircle" if q in a.finals else "circle"
        style = ",style=bold" if q in a.leaves else ""
        lines.append(f'  q{q} [shape={shape}{style},label="{q}"];')
    rows = sorted((sym, l, r, q) for (sym, l, r), ts in a.transitions.items() for q in ts)
    for n, (sym, l, r, q) in enumerate(rows):
        label = ",".join(sym) if sym else "()"
        lines.append(f'  t{n} [shape=box,height=0.2,fontsize=9,label="{label}"];')
        lines.append(f'  q{l} -> t{n} [arrowhead=none,label="L"];')
        lines.append(f'  q{r} -> t{n} [arrowhead=none,label="R"];')
        lines.append(f"  t{n} -> q{q};")
    lines.append("}")
    return "\n".join(lines) + "\n"
