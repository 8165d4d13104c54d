"""Newick reading and writing for weighted trees.

Accepted grammar (whitespace ignored everywhere):

    tree     := subtree ";"
    subtree  := leaf | "(" element ("," element)+ ")" [name]
    element  := subtree ":" length
    leaf     := integer label

Lengths are exact: a decimal like "1.5" (parsed with no rounding) or a
rational "a/b"; they must be strictly positive.  Leaf labels must be exactly
1..n.  Internal names are optional on input; the serializer always emits them
so a tree's internal vertices can be referenced from the command line.
"""

from __future__ import annotations

import re
from fractions import Fraction

from treetrop.tree import TreeError, WeightedTree

_NAME_RE = re.compile(r"[A-Za-z0-9_.+-]+")
_SAFE_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_.+-]*")


class NewickError(TreeError):
    """Syntax or semantic error in a Newick string, with position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.edges = []
        self.labels = {}
        self.internal_names = set()
        self.fresh = 0

    def error(self, message: str):
        raise NewickError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        if self.pos >= len(self.text):
            return ""
        return self.text[self.pos]

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def take_name(self):
        self.skip_ws()
        m = _NAME_RE.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return m.group()

    def fresh_name(self):
        while True:
            self.fresh += 1
            name = f"v{self.fresh}"
            if name not in self.internal_names:
                return name

    def parse(self) -> WeightedTree:
        root = self.parse_subtree()
        if self.peek() == ":":
            self.error("the root subtree cannot carry a length")
        self.expect(";")
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing characters after ';'")
        if not self.edges:
            self.error("a tree needs at least two leaves")
        return WeightedTree(self.edges, self.labels)

    def parse_subtree(self):
        """Return the vertex id of the parsed subtree's root."""
        if self.peek() == "(":
            return self.parse_group()
        return self.parse_leaf()

    def parse_leaf(self):
        start = self.pos
        token = self.take_name()
        if token is None:
            self.error("expected a leaf label or '('")
        if not token.isdigit() or int(token) < 1:
            self.pos = start
            self.error(f"leaf label must be a positive integer, got {token!r}")
        label = int(token)
        if label in self.labels:
            self.pos = start
            self.error(f"duplicate leaf label {label}")
        self.labels[label] = label
        return label

    def parse_group(self):
        self.expect("(")
        children = [self.parse_element()]
        while self.peek() == ",":
            self.pos += 1
            children.append(self.parse_element())
        if len(children) < 2:
            self.error("a group needs at least two subtrees")
        self.expect(")")
        name = None
        if self.peek() not in (":", ",", ")", ";", ""):
            start = self.pos
            name = self.take_name()
            if name is None:
                self.error("bad internal vertex name")
            if name in self.internal_names:
                self.pos = start
                self.error(f"duplicate internal vertex name {name!r}")
        if name is None:
            name = self.fresh_name()
        self.internal_names.add(name)
        for child, weight in children:
            self.edges.append((child, name, weight))
        return name

    def parse_element(self):
        child = self.parse_subtree()
        if self.peek() != ":":
            self.error("every non-root subtree needs ':length'")
        self.pos += 1
        weight = self.parse_length()
        return child, weight

    def parse_length(self) -> Fraction:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isdigit() or self.text[self.pos] in ".-+/eE"
        ):
            self.pos += 1
        token = self.text[start : self.pos]
        if not token:
            self.error("missing branch length")
        try:
            value = Fraction(token)
        except (ValueError, ZeroDivisionError):
            self.pos = start
            self.error(f"bad branch length {token!r}")
        if value <= 0:
            self.pos = start
            raise NewickError(f"nonpositive branch length {token!r}", start)
        return value


def parse_newick(text: str) -> WeightedTree:
    """Parse a Newick string into a WeightedTree (see module grammar)."""
    return _Parser(text).parse()


def _suppressed_adjacency(tree: WeightedTree):
    """Adjacency with degree-2 vertices merged away (weights added).

    The grammar cannot express a non-root degree-2 vertex (single-child
    groups are not allowed), so serialization works on the suppressed tree;
    the round-trip contract is weighted isomorphism, which suppression
    preserves by definition.
    """
    adj = {v: dict(tree._adj[v]) for v in tree.vertices}
    changed = True
    while changed:
        changed = False
        for v in list(adj):
            if len(adj[v]) == 2 and not tree.is_leaf(v):
                (a, wa), (b, wb) = adj[v].items()
                del adj[v]
                del adj[a][v]
                del adj[b][v]
                adj[a][b] = wa + wb
                adj[b][a] = wa + wb
                changed = True
    return adj


def serialize_newick(tree: WeightedTree) -> str:
    """Render a tree to Newick; parse(serialize(t)) is weighted-isomorphic to t."""
    adj = _suppressed_adjacency(tree)
    internal = [v for v in tree.vertices if v in adj and len(adj[v]) >= 2]
    if not internal:
        # Two-leaf tree: split the single edge so the root group has 2 children.
        (u, nbrs) = next(iter(adj.items()))
        v, w = next(iter(nbrs.items()))
        half = w / 2
        lu, lv = tree.label_of(u), tree.label_of(v)
        return f"({lu}:{half},{lv}:{half});"

    used_names = set()

    def node_name(v):
        if tree.is_leaf(v):
            return str(tree.label_of(v))
        name = str(v)
        if _SAFE_NAME_RE.fullmatch(name) and name not in used_names:
            used_names.add(name)
            return name
        return ""

    def render(v, parent):
        children = [u for u in adj[v] if u != parent]
        if not children:
            return str(tree.label_of(v))
        inner = ",".join(f"{render(u, v)}:{adj[v][u]}" for u in children)
        return f"({inner}){node_name(v)}"

    root = internal[0]
    return render(root, None) + ";"
