"""Finite binary labeled trees (every node has 0 or 2 children).

Labels are single characters for one-track trees and tuples of characters
for convolved (multi-track) trees.  Leaf labels carry no meaning for the
automata in this package; :func:`convolve` normalises them to ``#``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import ParseError

PAD = "#"


@dataclass(frozen=True)
class Tree:
    label: object
    left: "Tree | None" = None
    right: "Tree | None" = None

    def __post_init__(self):
        if (self.left is None) != (self.right is None):
            raise ValueError("a node has either 0 or 2 children")

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def height(self) -> int:
        if self.left is None:
            return 0
        return 1 + max(self.left.height(), self.right.height())

    def size(self) -> int:
        if self.left is None:
            return 1
        return 1 + self.left.size() + self.right.size()

    def nodes(self, prefix: str = "") -> Iterator[tuple[str, "Tree"]]:
        """Pre-order (address, subtree) pairs; addresses are words over {a, b}."""
        yield prefix, self
        if self.left is not None:
            yield from self.left.nodes(prefix + "a")
            yield from self.right.nodes(prefix + "b")

    def labels(self) -> dict[str, object]:
        return {u: t.label for u, t in self.nodes()}

    def subtree(self, address: str) -> "Tree":
        t = self
        for ch in address:
            t = t.left if ch == "a" else t.right
            if t is None:
                raise KeyError(address)
        return t

    def __str__(self):
        return to_sexpr(self)


def leaf(label=PAD) -> Tree:
    return Tree(label)


def node(label, left: Tree | None = None, right: Tree | None = None) -> Tree:
    """Internal node; a missing child becomes a padding leaf."""
    return Tree(label, left if left is not None else Tree(PAD),
                right if right is not None else Tree(PAD))


def from_labels(labels: dict[str, object], default=PAD) -> Tree:
    """Build a tree from an address -> label map, completing missing siblings."""
    def build(u):
        has_children = (u + "a") in labels or (u + "b") in labels or any(
            k.startswith(u) and len(k) > len(u) for k in labels)
        if not has_children:
            return Tree(labels.get(u, default))
        return Tree(labels.get(u, default), build(u + "a"), build(u + "b"))
    return build("")


def _width(label) -> int:
    return len(label) if isinstance(label, tuple) else 1


def _components(label) -> tuple:
    return label if isinstance(label, tuple) else (label,)


def convolve(trees: Sequence[Tree]) -> Tree:
    """Superpose trees into one tree over the tuple alphabet.

    The node set is the union of the inputs' node sets.  A component reads
    its own label where its tree has an internal node and ``#`` elsewhere.
    Tuple-labelled inputs contribute all of their tracks.
    """
    widths = [_width(t.label) for t in trees]

    def go(ts):
        internal = any(t is not None and t.left is not None for t in ts)
        label = []
        for t, w in zip(ts, widths):
            if t is not None and t.left is not None:
                label.extend(_components(t.label))
            else:
                label.extend((PAD,) * w)
        if not internal:
            return Tree(tuple(label))
        lefts = [t.left if t is not None else None for t in ts]
        rights = [t.right if t is not None else None for t in ts]
        return Tree(tuple(label), go(lefts), go(rights))

    return go(list(trees))


def _all_pad(t: Tree) -> bool:
    return t.label == PAD and (t.left is None or (_all_pad(t.left) and _all_pad(t.right)))


def prune(t: Tree) -> Tree:
    """Collapse every all-``#`` subtree (one-track) into a single leaf."""
    if t.left is None:
        return Tree(PAD)
    left, right = prune(t.left), prune(t.right)
    if t.label == PAD and left.left is None and right.left is None:
        return Tree(PAD)
    return Tree(t.label, left, right)


def project_component(t: Tree, i: int) -> Tree:
    """Track ``i`` of a convolved tree, with trailing padding trimmed."""
    def go(s):
        comps = _components(s.label)
        if s.left is None:
            return Tree(PAD)
        if not 0 <= i < len(comps):
            raise IndexError(f"track {i} out of range for width {len(comps)}")
        return Tree(comps[i], go(s.left), go(s.right))
    if t.left is None and not 0 <= i < _width(t.label):
        raise IndexError(f"track {i} out of range")
    return prune(go(t))


def pad_variants(t: Tree, extra_levels: int = 1) -> Iterator[Tree]:
    """Every tree obtained by growing leaves into all-``#`` subtrees.

    Each leaf may be replaced by any full padding tree of height at most
    ``extra_levels``.  The input itself is the first variant.
    """
    fill = _pad_trees(extra_levels, t.label)

    def go(s):
        if s.left is None:
            yield from fill
            return
        for lt in go(s.left):
            for rt in go(s.right):
                yield Tree(s.label, lt, rt)
    yield from go(t)


def _pad_trees(h, like):
    pad = tuple(PAD for _ in like) if isinstance(like, tuple) else PAD
    out = [Tree(pad)]
    for _ in range(h):
        out = [Tree(pad)] + [Tree(pad, a, b) for a in out for b in out]
    return out


def enumerate_trees(symbols: Sequence, max_height: int, leaf_label=PAD) -> Iterator[Tree]:
    """All trees of height <= max_height with internal labels from ``symbols``."""
    levels = [[Tree(leaf_label)]]
    for h in range(1, max_height + 1):
        shorter = [t for lv in levels for t in lv]
        prev = levels[-1]
        prev_ids = {id(t) for t in prev}
        new = []
        for a in shorter:
            for b in shorter:
                if id(a) in prev_ids or id(b) in prev_ids:
                    for s in symbols:
                        new.append(Tree(s, a, b))
        levels.append(new)
    for lv in levels:
        yield from lv


# -- serialisation ------------------------------------------------------------

def _label_text(label) -> str:
    if isinstance(label, tuple):
        return ",".join(label) if label else "."
    return str(label)


def to_sexpr(t: Tree) -> str:
    """``(label left right)`` with ``()`` for absent children; one line."""
    if t.left is None:
        return f"({_label_text(t.label)} () ())"
    return f"({_label_text(t.label)} {to_sexpr(t.left)} {to_sexpr(t.right)})"


def parse_sexpr(text: str) -> Tree:
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            toks.append((ch, i))
            i += 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in "()":
                j += 1
            toks.append((text[i:j], i))
            i = j
    toks.append(("", len(text)))
    pos = 0

    def expect(s):
        nonlocal pos
        if toks[pos][0] != s:
            raise ParseError(f"expected {s!r}", text, toks[pos][1])
        pos += 1

    def parse():
        nonlocal pos
        expect("(")
        if toks[pos][0] == ")":
            pos += 1
            return None
        raw, at = toks[pos]
        if raw in ("(", ")", ""):
            raise ParseError("expected a label", text, at)
        pos += 1
        label = tuple(raw.split(",")) if ("," in raw or raw == ".") else raw
        if label == (".",):
            label = ()
        left = parse()
        right = parse()
        expect(")")
        if (left is None) != (right is None):
            raise ParseError("a node needs 0 or 2 children", text, at)
        return Tree(label, left, right)

    t = parse()
    if t is None:
        raise ParseError("empty tree", text, 0)
    if toks[pos][0] != "":
        raise ParseError("trailing input", text, toks[pos][1])
    return t


def to_dot(t: Tree, name: str = "tree") -> str:
    lines = [f"digraph {name} {{", "  node [shape=plaintext];"]
    for u, s in t.nodes():
        ident = "n_" + (u or "root")
        lines.append(f'  {ident} [label="{_label_text(s.label)}"];')
        if s.left is not None:
            lines.append(f"  {ident} -> n_{u}a;")
            lines.append(f"  {ident} -> n_{u}b;")
    lines.append("}")
    return "\n".join(lines) + "\n"
