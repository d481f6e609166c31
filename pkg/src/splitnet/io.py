"""Text formats: the splits format, a Newick subset, DOT and JSON.

Splits format::

    # comment
    taxa 5
    name 1 human
    1,2 0.5
    3,4 0.25

Each entry line gives one side of a split and its weight; the other side is the
complement.  Canonical documents list the smaller side (ties: the side holding
the smallest label).  Newick trees use positive integer leaf labels only, e.g.
``((1:0.1,2:0.2):0.5,3:0.3,4:0.4);``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .complexes import AbstractSimplicialComplex
from .curves import DualGraphModel, arithmetic_genus, is_stable
from .errors import (
    BadTaxon,
    DuplicateLeaf,
    DuplicateSplit,
    EmptyTree,
    ParseError,
    SplitNetError,
    WeightNotPositive,
)
from .model import ROOT, EvolutionaryPoint, Split, WeightedSplitSystem, collapse_zero_weights, make_split
from .network import LEAF, PlanarNetwork

SCHEMA_VERSION = 1


def format_weight(w: float) -> str:
    """Shortest decimal that reads back to the same float."""
    text = repr(float(w))
    return text[:-2] if text.endswith(".0") else text


@dataclass
class SplitsDocument:
    n: int
    names: dict[int, str] = field(default_factory=dict)
    entries: list[tuple[Split, float]] = field(default_factory=list)

    def system(self) -> WeightedSplitSystem:
        return WeightedSplitSystem(self.n, tuple(self.entries))


_INT = re.compile(r"^[0-9]+$")


def parse_splits(text: str) -> SplitsDocument:
    doc = None
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if doc is None:
            if len(fields) != 2 or fields[0] != "taxa" or not _INT.match(fields[1]):
                raise ParseError("expected header 'taxa <n>'", lineno)
            doc = SplitsDocument(int(fields[1]))
            continue
        if fields[0] == "taxa":
            raise ParseError("repeated 'taxa' header", lineno)
        if fields[0] == "name":
            if len(fields) < 3 or not _INT.match(fields[1]):
                raise ParseError("expected 'name <i> <string>'", lineno)
            i = int(fields[1])
            if not 1 <= i <= doc.n:
                raise BadTaxon(f"line {lineno}: taxon {i} outside 1..{doc.n}")
            doc.names[i] = line.split(None, 2)[2]
            continue
        if len(fields) != 2:
            raise ParseError("expected '<comma-separated side> <weight>'", lineno)
        side_text, weight_text = fields
        tokens = side_text.split(",")
        if not all(_INT.match(tok) for tok in tokens):
            raise ParseError(f"bad taxon list {side_text!r}", lineno)
        try:
            weight = float(weight_text)
        except ValueError:
            raise ParseError(f"bad weight {weight_text!r}", lineno) from None
        if not weight > 0:
            raise WeightNotPositive(f"line {lineno}: weight {weight_text} is not positive")
        try:
            split = make_split([int(tok) for tok in tokens], doc.n)
        except SplitNetError as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None
        if split in seen:
            raise DuplicateSplit(f"line {lineno}: split {split} appears twice")
        seen.add(split)
        doc.entries.append((split, weight))
    if doc is None:
        raise ParseError("missing 'taxa <n>' header", 1)
    return doc


def emit_splits(doc: SplitsDocument | WeightedSplitSystem) -> str:
    if isinstance(doc, WeightedSplitSystem):
        doc = SplitsDocument(doc.n, {}, list(doc.entries))
    lines = [f"taxa {doc.n}"]
    for i in sorted(doc.names):
        lines.append(f"name {i} {doc.names[i]}")
    for split, weight in doc.entries:
        lines.append(",".join(map(str, split.small_side())) + " " + format_weight(weight))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Newick

_TOKEN = re.compile(r"\s*(?:([(),:;])|([0-9]+(?:\.[0-9]*)?(?:[eE][-+]?[0-9]+)?))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} at offset {pos}")
        tokens.append(m.group(1) or m.group(2))
        pos = m.end()
    return tokens


class _NewickParser:
    """Recursive descent over the token list; nodes are (leaf, children, length)."""

    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok!r}")
        self.pos += 1
        return tok

    def tree(self):
        node = self.subtree()
        self.take(";")
        if self.peek() is not None:
            raise ParseError("trailing text after ';'")
        return node

    def subtree(self):
        if self.peek() == "(":
            self.take("(")
            children = [self.subtree()]
            while self.peek() == ",":
                self.take(",")
                children.append(self.subtree())
            self.take(")")
            if len(children) < 2:
                raise ParseError("internal node needs at least two children")
            return (None, children, self.length())
        tok = self.take()
        if not tok.isdigit() or int(tok) < 1:
            raise ParseError(f"expected a positive integer leaf label, found {tok!r}")
        return (int(tok), None, self.length())

    def length(self):
        if self.peek() != ":":
            return 0.0
        self.take(":")
        tok = self.take()
        try:
            return float(tok)
        except ValueError:
            raise ParseError(f"bad branch length {tok!r}") from None


def parse_newick(text: str) -> EvolutionaryPoint:
    """Rooted tree -> internal split system (root = label 0) plus leaf edge lengths."""
    if not text.strip():
        raise EmptyTree("empty Newick string")
    root = _NewickParser(_tokenize(text)).tree()
    leaves = {}
    internal = []

    def walk(node, is_root):
        leaf, children, length = node
        if children is None:
            if leaf in leaves:
                raise DuplicateLeaf(f"leaf {leaf} appears twice")
            leaves[leaf] = length
            return {leaf}
        below = set()
        for child in children:
            below |= walk(child, False)
        if not is_root:
            internal.append((below, length))
        return below

    walk(root, True)
    m = len(leaves)
    if sorted(leaves) != list(range(1, m + 1)):
        raise BadTaxon(f"leaf labels must be 1..{m}, got {sorted(leaves)}")
    if m < 3:
        raise EmptyTree(f"a rooted tree needs at least three leaves, got {m}")
    entries = [(make_split(below, m, rooted=True), w) for below, w in internal]
    system = collapse_zero_weights(entries, m, rooted=True)
    return EvolutionaryPoint(system, tuple(leaves[t] for t in range(1, m + 1)))


def emit_newick(point: EvolutionaryPoint) -> str:
    """Inverse of :func:`parse_newick`; children ordered by smallest leaf."""
    system = point.internal
    m = system.n
    clusters = {}
    for split, w in system.entries:
        below = split.side_b if ROOT in split.side_a else split.side_a
        clusters[frozenset(below)] = w
    full = frozenset(range(1, m + 1))
    order = sorted(clusters, key=len)

    def children_of(cluster):
        inner = [c for c in order if c < cluster]
        maximal = [c for c in inner if not any(c < d for d in inner)]
        covered = set().union(*maximal) if maximal else set()
        kids = [(min(c), c) for c in maximal] + [(t, t) for t in cluster if t not in covered]
        return [k for _, k in sorted(kids, key=lambda p: p[0])]

    def render(node):
        if isinstance(node, int):
            return f"{node}:{format_weight(point.external[node - 1])}"
        body = ",".join(render(k) for k in children_of(node))
        return f"({body}):{format_weight(clusters[node])}"

    return "(" + ",".join(render(k) for k in children_of(full)) + ");"


# ---------------------------------------------------------------------------
# DOT


def _q(text) -> str:
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def network_dot(net: PlanarNetwork, names: dict[int, str] | None = None) -> str:
    names = names or {}
    lines = ["graph network {", "  node [shape=point];"]
    for v in range(net.node_count):
        if net.kinds[v] == LEAF:
            t = net.taxon_of[v]
            lines.append(f"  t{t} [shape=plaintext, label={_q(names.get(t, t))}];")
        else:
            lines.append(f"  n{v};")
    ident = lambda v: f"t{net.taxon_of[v]}" if net.kinds[v] == LEAF else f"n{v}"
    for e in net.edges:
        attrs = ""
        if e.split is not None:
            label = "S:" + ",".join(map(str, e.split.small_side())) + " w=" + format_weight(e.weight)
            attrs = f" [label={_q(label)}]"
        lines.append(f"  {ident(e.u)} -- {ident(e.v)}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dual_dot(dual: DualGraphModel, names: dict[int, str] | None = None) -> str:
    names = names or {}
    lines = ["graph curve {"]
    for c, g in dual.components:
        lines.append(f"  c{c} [shape=circle, label={_q(f'g={g}')}];")
    for t in sorted(dual.marked):
        lines.append(f"  t{t} [shape=plaintext, label={_q(names.get(t, t))}];")
    for a, b in dual.intersections:
        lines.append(f"  c{a} -- c{b};")
    for t in sorted(dual.marked):
        lines.append(f"  c{dual.marked[t]} -- t{t} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_dot(obj, names: dict[int, str] | None = None) -> str:
    if isinstance(obj, PlanarNetwork):
        return network_dot(obj, names)
    if isinstance(obj, DualGraphModel):
        return dual_dot(obj, names)
    raise TypeError(f"cannot render {type(obj).__name__} as DOT")


# ---------------------------------------------------------------------------
# JSON


def network_json(net: PlanarNetwork) -> dict:
    return {
        "schemaVersion": SCHEMA_VERSION,
        "type": "network",
        "taxa": net.n,
        "order": list(net.order.order),
        "nodes": [{"id": v, "kind": k, **({"taxon": net.taxon_of[v]} if k == LEAF else {})}
                  for v, k in enumerate(net.kinds)],
        "edges": [{"u": e.u, "v": e.v, "split": None if e.split is None else str(e.split),
                   "weight": e.weight} for e in net.edges],
        "rotation": [list(r) for r in net.rotation],
        "outerWalk": net.outer_walk,
        "splits": [str(s) for s in net.splits],
        "cycleRank": net.cycle_rank(),
    }


def dual_json(dual: DualGraphModel) -> dict:
    return {
        "schemaVersion": SCHEMA_VERSION,
        "type": "curve",
        "components": len(dual.components),
        "intersections": len(dual.intersections),
        "genus": arithmetic_genus(dual),
        "stable": is_stable(dual),
        "marked": {str(t): c for t, c in sorted(dual.marked.items())},
        "partitions": [None if s is None else str(s) for s in dual.induced],
    }


def complex_json(cx: AbstractSimplicialComplex) -> dict:
    return {
        "schemaVersion": SCHEMA_VERSION,
        "type": "complex",
        "vertices": [str(v) for v in cx.vertices],
        "facets": [sorted(f) for f in cx.facets],
        "fVector": cx.f_vector(),
    }


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"
