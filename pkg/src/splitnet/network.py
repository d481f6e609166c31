"""Planar realization of circular split systems.

A network starts as an ``n``-star and grows one split at a time: find the split
path between two anchor nodes on the outer face, duplicate it, move the edges on
the split's A side over to the duplicate, and join every path node to its copy
by an edge carrying the new split.

The embedding is kept as a rotation system (cyclic edge order around every
node).  Faces are traced by entering a node along an edge and leaving along the
next edge in that node's rotation; the face through the leaves is the outer
face and visits the leaves in the construction order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Literal, Sequence

from .compat import find_circular_order, is_compatible_with_order
from .errors import (
    BadParameter,
    DuplicateSplit,
    NotAnArc,
    NotCircular,
    SideClassificationFailed,
    TaxaMismatch,
    TooFewTaxa,
    WeightNotPositive,
)
from .model import CyclicOrder, Split, WeightedSplitSystem, universe

LEAF = "leaf"
INTERNAL = "internal"


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    split: Split | None = None
    weight: float = 1.0

    def other(self, node: int) -> int:
        return self.v if node == self.u else self.u


@dataclass(frozen=True)
class Dart:
    edge: int
    tail: int
    head: int


@dataclass(frozen=True, eq=False)
class PlanarNetwork:
    """An embedded split network.

    ``rotation[v]`` lists the ids of the edges at ``v`` in cyclic order.  Leaf
    ``t`` is node ``leaf_map[t]``.  Networks are never mutated; ``add_split``
    returns a new one.
    """

    n: int
    order: CyclicOrder
    kinds: tuple[str, ...]
    edges: tuple[Edge, ...]
    rotation: tuple[tuple[int, ...], ...]
    leaf_map: dict = field(hash=False)

    @property
    def node_count(self) -> int:
        return len(self.kinds)

    def leaf_nodes(self) -> list[int]:
        return [v for v, k in enumerate(self.kinds) if k == LEAF]

    def internal_nodes(self) -> list[int]:
        return [v for v, k in enumerate(self.kinds) if k == INTERNAL]

    @cached_property
    def taxon_of(self) -> dict[int, int]:
        return {node: t for t, node in self.leaf_map.items()}

    def internal_edges(self) -> list[int]:
        return [i for i, e in enumerate(self.edges) if e.split is not None]

    @cached_property
    def splits(self) -> tuple[Split, ...]:
        """Split labels in order of first appearance."""
        seen = {}
        for e in self.edges:
            if e.split is not None and e.split not in seen:
                seen[e.split] = e.weight
        return tuple(seen)

    def weight_of(self, split: Split) -> float:
        for e in self.edges:
            if e.split == split:
                return e.weight
        raise KeyError(split)

    def parallel_class(self, split: Split) -> list[int]:
        return [i for i, e in enumerate(self.edges) if e.split == split]

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per node, (edge id, far end) pairs in rotation order."""
        return tuple(tuple((e, self.edges[e].other(v)) for e in rot)
                     for v, rot in enumerate(self.rotation))

    @cached_property
    def _rotation_index(self) -> tuple[dict[int, int], ...]:
        return tuple({e: i for i, e in enumerate(rot)} for rot in self.rotation)

    def neighbors(self, node: int) -> list[int]:
        return [w for _, w in self.adjacency[node]]

    def degree(self, node: int) -> int:
        return len(self.rotation[node])

    def next_dart(self, dart: Dart) -> Dart:
        v = dart.head
        adj = self.adjacency[v]
        e, w = adj[(self._rotation_index[v][dart.edge] + 1) % len(adj)]
        return Dart(e, v, w)

    def face(self, start: Dart) -> list[Dart]:
        darts = [start]
        d = self.next_dart(start)
        while d != start:
            darts.append(d)
            d = self.next_dart(d)
        return darts

    @cached_property
    def outer_darts(self) -> tuple[Dart, ...]:
        leaf = self.leaf_map[self.order.order[0]]
        (e,) = self.rotation[leaf]
        return tuple(self.face(Dart(e, leaf, self.edges[e].other(leaf))))

    @property
    def outer_walk(self) -> list[int]:
        """Closed walk around the outer face as a node sequence (first node repeated last)."""
        darts = self.outer_darts
        return [d.tail for d in darts] + [darts[0].tail]

    def leaves_on_outer_walk(self) -> list[int]:
        return [self.taxon_of[v] for v in self.outer_walk[:-1] if self.kinds[v] == LEAF]

    def cycle_rank(self) -> int:
        """Independent cycles of the graph (leaf edges never lie on cycles)."""
        comps = len(_components(self, range(self.node_count), set()))
        return len(self.edges) - self.node_count + comps


@dataclass(frozen=True)
class SplitPath:
    anchor_p: int
    anchor_q: int
    nodes: tuple[int, ...]
    edges: tuple[int, ...]
    side: tuple[int, ...]
    # outer-face corners at the anchors: (edge entering, edge leaving)
    corner_p: tuple[int, int] = (-1, -1)
    corner_q: tuple[int, int] = (-1, -1)


def n_star(n: int, order: CyclicOrder | Sequence[int] | None = None) -> PlanarNetwork:
    """Star with center node 0 and leaf ``t`` at node ``t``."""
    if n < 4:
        raise TooFewTaxa(f"a network needs at least four taxa, got {n}")
    order = _as_order(order, n)
    edges = tuple(Edge(0, t) for t in range(1, n + 1))
    rotation = [tuple(t - 1 for t in order.order)] + [(t - 1,) for t in range(1, n + 1)]
    kinds = (INTERNAL,) + (LEAF,) * n
    return PlanarNetwork(n, order, kinds, edges, tuple(rotation), {t: t for t in range(1, n + 1)})


def _as_order(order, n) -> CyclicOrder:
    if order is None:
        return CyclicOrder(tuple(range(1, n + 1)))
    if not isinstance(order, CyclicOrder):
        order = CyclicOrder(tuple(order))
    if tuple(sorted(order.order)) != universe(n):
        raise TaxaMismatch(f"order {order} is not a permutation of 1..{n}")
    return order


def a_side(split: Split) -> tuple[int, ...]:
    """Side that gets moved onto the duplicated path: the smaller one, ties to ``side_a``."""
    return split.small_side()


def _segment(net: PlanarNetwork, left: int, right: int) -> tuple[list[int], list[Dart]]:
    """Outer-walk segment from leaf ``left`` to leaf ``right``: nodes s_0..s_L and the L darts."""
    darts = net.outer_darts
    start = net.leaf_map[left]
    stop = net.leaf_map[right]
    idx = next(i for i, d in enumerate(darts) if d.tail == start)
    nodes = [start]
    seg = []
    i = idx
    while True:
        d = darts[i % len(darts)]
        seg.append(d)
        nodes.append(d.head)
        if d.head == stop:
            return nodes, seg
        i += 1
        if i - idx > len(darts):
            raise NotAnArc(f"taxa {left} and {right} are not consecutive on the outer face")


AnchorRule = Literal["nested", "midpoint"]


def _anchor_position(darts: list[Dart], net: PlanarNetwork, near_first, bias_low: bool,
                     rule: AnchorRule) -> int:
    """Index (1..L-1) of the anchor node on a hull segment with L darts.

    ``midpoint`` takes the middle node, or for odd L the one on the ``bias_low``
    (start) or far side.  ``nested`` puts the anchor so that the split edges
    between the start leaf and the anchor are exactly those satisfying
    ``near_first``; ties fall back to the midpoint choice.
    """
    length = len(darts)
    if length % 2 == 0:
        mid = length // 2
    else:
        mid = (length - 1) // 2 if bias_low else (length + 1) // 2
    if rule == "midpoint":
        return mid
    flags = [near_first(net.edges[d.edge].split) for d in darts[1:-1]]

    def misplaced(p):
        # darts[1:p] lie before the anchor
        return sum(not f for f in flags[: p - 1]) + sum(f for f in flags[p - 1:])

    return min(range(1, length), key=lambda p: (misplaced(p), abs(p - mid)))


def split_path(net: PlanarNetwork, split: Split, rule: AnchorRule = "nested") -> SplitPath:
    """Split path for ``split``: BFS shortest path between two anchors on the outer face.

    The anchors sit on the hull segments just before and just after the A-side
    arc.  See ``_anchor_position`` for the two placement rules.
    """
    side = a_side(split)
    start = net.order.arc_start(side)
    if start is None:
        raise NotAnArc(f"{split} is not an arc of the order {net.order}")
    seq = net.order.order
    n = len(seq)
    k = len(side)
    aset = set(side)
    first, last = seq[start], seq[(start + k - 1) % n]
    before, after = seq[(start - 1) % n], seq[(start + k) % n]

    # segment entering the arc: splits containing the whole arc come first
    nodes, darts = _segment(net, before, first)
    pos = _anchor_position(darts, net, lambda s: aset < set(s.side_of(first)), False, rule)
    anchor_p = nodes[pos]
    corner_p = (darts[pos - 1].edge, darts[pos].edge)

    # segment leaving the arc: splits nested inside the arc come first
    nodes, darts = _segment(net, last, after)
    pos = _anchor_position(darts, net, lambda s: set(s.side_of(last)) < aset, True, rule)
    anchor_q = nodes[pos]
    corner_q = (darts[pos - 1].edge, darts[pos].edge)

    path_nodes, path_edges = _bfs_path(net, anchor_p, anchor_q)
    return SplitPath(anchor_p, anchor_q, tuple(path_nodes), tuple(path_edges), side,
                     corner_p, corner_q)


def _bfs_path(net: PlanarNetwork, src: int, dst: int) -> tuple[list[int], list[int]]:
    parent = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            break
        steps = sorted((net.edges[e].other(v), e) for e in net.rotation[v])
        for w, e in steps:
            if w not in parent and net.kinds[w] == INTERNAL:
                parent[w] = (v, e)
                queue.append(w)
    nodes, edges = [dst], []
    while parent[nodes[-1]] is not None:
        v, e = parent[nodes[-1]]
        edges.append(e)
        nodes.append(v)
    return nodes[::-1], edges[::-1]


def _arc(rot: Sequence[int], first: int, last: int) -> list[int]:
    """Cyclic run of ``rot`` from ``first`` through ``last`` inclusive."""
    i = rot.index(first)
    out = []
    while True:
        e = rot[i % len(rot)]
        out.append(e)
        if e == last:
            return out
        i += 1


def _rotate_to(rot: Sequence[int], first: int) -> list[int]:
    i = rot.index(first)
    return list(rot[i:]) + list(rot[:i])


def _split_rotation(net: PlanarNetwork, path: SplitPath, j: int) -> tuple[list, list, list]:
    """(edges before the A arc, A arc, edges after) at path node j, rotated so the arc
    sits between the incoming and outgoing path edges."""
    v = path.nodes[j]
    rot = net.rotation[v]
    L = len(path.edges)
    if L == 0:
        r = _rotate_to(rot, path.corner_p[1])
        a = r[: r.index(path.corner_q[0]) + 1]
        return [], a, r[len(a):]
    if j == 0:
        nxt = path.edges[0]
        r = _rotate_to(rot, path.corner_p[1])
        cut = r.index(nxt)
        return [], r[:cut], r[cut:]
    prev = path.edges[j - 1]
    r = _rotate_to(rot, prev)
    if j == L:
        stop = path.corner_q[0]
        a = [] if stop == prev else r[1: r.index(stop) + 1]
        return [prev], a, r[1 + len(a):]
    nxt = path.edges[j]
    cut = r.index(nxt)
    return [prev], r[1:cut], r[cut:]


def _components(net: PlanarNetwork, nodes: Iterable[int], removed_nodes: set,
                removed_edges: frozenset = frozenset()) -> list[set]:
    seen = set(removed_nodes)
    adjacency = net.adjacency
    comps = []
    for s in nodes:
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        stack = [s]
        while stack:
            v = stack.pop()
            for e, w in adjacency[v]:
                if w not in seen and e not in removed_edges:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def _reachable_taxa(net: PlanarNetwork, start: int, blocked: set) -> set[int]:
    (comp,) = _components(net, [start], blocked)
    return {net.taxon_of[v] for v in comp if net.kinds[v] == LEAF}


def add_split(net: PlanarNetwork, split: Split, weight: float,
              rule: AnchorRule = "nested") -> PlanarNetwork:
    """Insert ``split`` with the given weight, returning a new network."""
    if not weight > 0:
        raise WeightNotPositive(f"split weight must be positive, got {weight}")
    if split.labels != universe(net.n):
        raise TaxaMismatch(f"split {split} is not over taxa 1..{net.n}")
    if split in net.splits:
        raise DuplicateSplit(f"split {split} is already in the network")
    path = split_path(net, split, rule)
    side = set(path.side)
    on_path = set(path.nodes)
    L = len(path.edges)

    arcs = [_split_rotation(net, path, j) for j in range(L + 1)]

    # cross-check the planar side assignment against leaf reachability
    for j, (_, a_arc, _) in enumerate(arcs):
        v = path.nodes[j]
        for e in net.rotation[v]:
            if e in path.edges:
                continue
            far = net.edges[e].other(v)
            if far in on_path:
                continue
            reach = _reachable_taxa(net, far, on_path)
            if reach and not (reach <= side or reach.isdisjoint(side)):
                raise SideClassificationFailed(f"edge {e} reaches both sides of {split}")
            if reach and (reach <= side) != (e in a_arc):
                raise SideClassificationFailed(
                    f"edge {e} at node {v} is embedded on the wrong side of {split}"
                )

    base = net.node_count
    copies = [base + j for j in range(L + 1)]
    edges = list(net.edges)
    moved = {}
    for j, (_, a_arc, _) in enumerate(arcs):
        for e in a_arc:
            moved[e] = j
    for e, j in moved.items():
        old = edges[e]
        v = path.nodes[j]
        edges[e] = Edge(copies[j] if old.u == v else old.u,
                        copies[j] if old.v == v else old.v, old.split, old.weight)

    copy_edges = []
    for j, e in enumerate(path.edges):
        src = net.edges[e]
        copy_edges.append(len(edges))
        edges.append(Edge(copies[j], copies[j + 1], src.split, src.weight))
    rungs = []
    for j, v in enumerate(path.nodes):
        rungs.append(len(edges))
        edges.append(Edge(v, copies[j], split, float(weight)))

    rotation = list(net.rotation)
    rotation.extend(() for _ in copies)
    for j, v in enumerate(path.nodes):
        head, a_arc, tail = arcs[j]
        rung = rungs[j]
        rotation[v] = tuple(head + [rung] + tail)
        mirrored = []
        if j > 0:
            mirrored.append(copy_edges[j - 1])
        mirrored.extend(a_arc)
        if j < L:
            mirrored.append(copy_edges[j])
        mirrored.append(rung)
        rotation[copies[j]] = tuple(mirrored)
    # moved edges keep their slot at the far endpoint; only the endpoint id changed

    kinds = net.kinds + (INTERNAL,) * len(copies)
    return PlanarNetwork(net.n, net.order, kinds, tuple(edges), tuple(rotation), dict(net.leaf_map))


def build_network(system: WeightedSplitSystem, order: CyclicOrder | Sequence[int] | None = None,
                  insertion: Literal["given", "canonical"] = "given",
                  rule: AnchorRule = "nested") -> PlanarNetwork:
    """Fold ``add_split`` over the system, starting from the star on its taxa."""
    splits = system.splits
    if order is None:
        order = find_circular_order(splits, system.n)
        if order is None:
            raise NotCircular("split system is not compatible with any cyclic order")
    else:
        order = _as_order(order, system.n)
        if not is_compatible_with_order(splits, order):
            raise NotCircular(f"split system is not compatible with the order {order}")
    entries = list(system.entries)
    if insertion == "canonical":
        entries.sort(key=lambda sw: (len(a_side(sw[0])), sw[0]))
    elif insertion != "given":
        raise BadParameter(f"unknown insertion mode {insertion!r}")
    net = n_star(system.n, order)
    for split, weight in entries:
        net = add_split(net, split, weight, rule)
    return net


@dataclass
class SplitCheck:
    split: Split
    equal_weights: bool = True
    disjoint_ends: bool = True
    separates: bool = True
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.equal_weights and self.disjoint_ends and self.separates


@dataclass
class RealizationReport:
    checks: list[SplitCheck]
    problems: list[str]

    @property
    def ok(self) -> bool:
        return not self.problems and all(c.ok for c in self.checks)

    def failures(self) -> list[SplitCheck]:
        return [c for c in self.checks if not c.ok]


def verify_realization(net: PlanarNetwork) -> RealizationReport:
    """Check the parallel-class properties of every split plus global structure."""
    problems = []
    if len(_components(net, range(net.node_count), set())) != 1:
        problems.append("graph is disconnected")
    for t, v in net.leaf_map.items():
        if net.degree(v) != 1:
            problems.append(f"leaf {t} has degree {net.degree(v)}")
    try:
        walk = net.leaves_on_outer_walk()
        if len(walk) != net.n or CyclicOrder(tuple(walk)) != net.order:
            problems.append(f"outer face visits leaves {walk}, expected order {net.order}")
    except (KeyError, ValueError) as exc:
        problems.append(f"outer face could not be traced: {exc}")
    for i, e in enumerate(net.edges):
        is_leaf_edge = LEAF in (net.kinds[e.u], net.kinds[e.v])
        if is_leaf_edge and e.split is not None:
            problems.append(f"leaf edge {i} carries split {e.split}")
        if not is_leaf_edge and e.split is None:
            problems.append(f"internal edge {i} has no split")

    checks = []
    for split in net.splits:
        cls = net.parallel_class(split)
        check = SplitCheck(split)
        weights = {net.edges[i].weight for i in cls}
        if max(weights) - min(weights) > 1e-9:
            check.equal_weights = False
            check.detail += f"weights differ {sorted(weights)}; "
        ends = [x for i in cls for x in (net.edges[i].u, net.edges[i].v)]
        if len(set(ends)) != len(ends):
            check.disjoint_ends = False
            check.detail += "edges share an end vertex; "
        comps = _components(net, range(net.node_count), set(), frozenset(cls))
        leafsets = sorted(
            tuple(sorted(net.taxon_of[v] for v in c if net.kinds[v] == LEAF)) for c in comps
        )
        if leafsets != sorted([split.side_a, split.side_b]):
            check.separates = False
            check.detail += f"removal leaves components with taxa {leafsets}; "
        checks.append(check)
    return RealizationReport(checks, problems)
