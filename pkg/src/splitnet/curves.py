"""Combinatorial stable curves: dual graphs, stability, genus, boundary strata.

A curve is modelled by its dual graph: one vertex per irreducible component
(with a genus), one edge per node, and one leg per marked point.  Every
component produced here is rational, so the arithmetic genus of a curve is the
cycle rank of its dual graph.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from .errors import Disconnected, SideTooSmall, TooFewTaxa, TooManySplits
from .model import ROOT, Split, TreeTopology, make_split, universe
from .network import LEAF, PlanarNetwork

ATTACHMENT = "·"


@dataclass(frozen=True, eq=False)
class DualGraphModel:
    """Dual graph of a nodal curve with marked points.

    ``intersections`` may repeat a pair (several nodes between the same two
    components) or join a component to itself.  ``induced`` holds, for each
    intersection that disconnects the graph, the split of marked points it
    induces; it is None for intersections lying on a cycle.
    """

    components: tuple[tuple[int, int], ...]
    intersections: tuple[tuple[int, int], ...]
    marked: dict = field(hash=False)
    induced: tuple = ()

    @classmethod
    def build(cls, components: Iterable, intersections: Iterable, marked: dict) -> DualGraphModel:
        comps = tuple(_as_pair(c) for c in components)
        inter = tuple(tuple(p) for p in intersections)
        marked = dict(marked)
        return cls(comps, inter, marked, _induced_partitions(comps, inter, marked))

    @property
    def component_ids(self) -> list[int]:
        return [c for c, _ in self.components]

    @property
    def genera(self) -> dict[int, int]:
        return dict(self.components)

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(sorted(self.marked))

    def special_points(self) -> Counter:
        """Marked points plus node branches on every component."""
        count = Counter({c: 0 for c in self.component_ids})
        for comp in self.marked.values():
            count[comp] += 1
        for a, b in self.intersections:
            count[a] += 1
            count[b] += 1
        return count

    def is_connected(self) -> bool:
        ids = self.component_ids
        if not ids:
            return False
        return len(_groups(ids, self.intersections)) == 1

    def partitions(self) -> frozenset[Split]:
        return frozenset(s for s in self.induced if s is not None)


def _as_pair(c):
    if isinstance(c, int):
        return c, 0
    return tuple(c)


def _groups(ids, edges, skip=None) -> list[set]:
    parent = {c: c for c in ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, (a, b) in enumerate(edges):
        if i != skip:
            parent[find(a)] = find(b)
    out = {}
    for c in ids:
        out.setdefault(find(c), set()).add(c)
    return list(out.values())


def _bridges(ids, edges) -> set[int]:
    """Indices of the edges whose removal disconnects the graph (Tarjan lowlink)."""
    adj = {c: [] for c in ids}
    for i, (a, b) in enumerate(edges):
        adj[a].append((i, b))
        adj[b].append((i, a))
    disc, low, out = {}, {}, set()
    counter = 0
    for root in ids:
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, via, it = stack[-1]
            for i, w in it:
                if i == via:
                    continue
                if w in disc:
                    low[v] = min(low[v], disc[w])
                else:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, i, iter(adj[w])))
                    break
            else:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        out.add(via)
    return out


def _induced_partitions(components, intersections, marked) -> tuple:
    ids = [c for c, _ in components]
    labels = sorted(marked)
    rooted = bool(labels) and labels[0] == ROOT
    top = labels[-1] if labels else 0
    bridges = _bridges(ids, intersections)
    out = []
    for i in range(len(intersections)):
        if i not in bridges:
            out.append(None)
            continue
        groups = _groups(ids, intersections, skip=i)
        a = intersections[i][0]
        side_comps = next(g for g in groups if a in g)
        side = [t for t, c in marked.items() if c in side_comps]
        try:
            out.append(make_split(side, top, rooted=rooted))
        except SideTooSmall:
            out.append(None)
    return tuple(out)


def dual_from_network(net: PlanarNetwork) -> DualGraphModel:
    """Canonical association: internal nodes become rational components, internal
    edges become nodes of the curve, leaves become marked points."""
    internal = net.internal_nodes()
    index = {v: i for i, v in enumerate(internal)}
    intersections = []
    marked = {}
    for e in net.edges:
        if net.kinds[e.u] == LEAF:
            marked[net.taxon_of[e.u]] = index[e.v]
        elif net.kinds[e.v] == LEAF:
            marked[net.taxon_of[e.v]] = index[e.u]
        else:
            intersections.append((index[e.u], index[e.v]))
    return DualGraphModel.build([(i, 0) for i in range(len(internal))], intersections, marked)


def tree_curve(splits: Iterable[Split], labels: Iterable[int]) -> DualGraphModel:
    """Genus 0 curve whose dual tree realizes a pairwise-compatible split set.

    Each split is oriented away from the smallest label; the resulting clusters
    nest, and every cluster becomes a component hanging off the smallest
    cluster strictly containing it.
    """
    labels = sorted(labels)
    ref = labels[0]
    clusters = sorted({frozenset(s.side_b if ref in s.side_a else s.side_a) for s in splits},
                      key=len)
    # component 0 is the one carrying the reference label
    parent_of = []
    for i, c in enumerate(clusters):
        owner = next((j for j in range(i + 1, len(clusters)) if c < clusters[j]), None)
        parent_of.append(0 if owner is None else owner + 1)
    marked = {}
    for t in labels:
        owner = next((j for j, c in enumerate(clusters) if t in c), None)
        marked[t] = 0 if owner is None else owner + 1
    comps = [(i, 0) for i in range(len(clusters) + 1)]
    inter = [(i + 1, parent_of[i]) for i in range(len(clusters))]
    return DualGraphModel.build(comps, inter, marked)


def is_stable(dual: DualGraphModel) -> bool:
    """Every component satisfies 2g - 2 + (special points) > 0."""
    special = dual.special_points()
    genera = dual.genera
    return all(2 * genera[c] - 2 + special[c] > 0 for c in dual.component_ids)


def arithmetic_genus(dual: DualGraphModel) -> int:
    if not dual.is_connected():
        raise Disconnected("dual graph is not connected")
    cycles = len(dual.intersections) - len(dual.components) + 1
    return sum(dual.genera.values()) + cycles


def stratum_dimension(topology: TreeTopology) -> int:
    """Complex dimension of the boundary stratum dual to a tree: n - 3 - k."""
    n = topology.label_count
    if n < 4:
        raise TooFewTaxa(f"need at least four marked points, got {n}")
    k = len(topology.splits)
    if k > n - 3:
        raise TooManySplits(f"{k} splits exceed the maximum {n - 3}")
    return n - 3 - k


def topology_curve(topology: TreeTopology) -> DualGraphModel:
    return tree_curve(topology.splits, universe(topology.n, topology.rooted))


def remains_stable_after_removal(topology: TreeTopology) -> bool:
    """True when the realized tree has a vertex of valence above three."""
    special = topology_curve(topology).special_points()
    return any(v > 3 for v in special.values())


def boundary_divisor_factors(split: Split) -> tuple[frozenset, frozenset]:
    """Marking sets of the two factors of the boundary divisor D(A|B)."""
    return (frozenset(split.side_a) | {ATTACHMENT}, frozenset(split.side_b) | {ATTACHMENT})


def smooth_curve(labels: Iterable[int]) -> DualGraphModel:
    return DualGraphModel.build([(0, 0)], [], {t: 0 for t in labels})


def sprout(curve: DualGraphModel, comp: int, moved: Iterable) -> DualGraphModel:
    """Bubble off a new rational component carrying the special points ``moved``.

    ``moved`` mixes marked-point labels (``("m", t)``) and intersection indices
    (``("x", i)``) currently on ``comp``.
    """
    new = max(curve.component_ids) + 1
    marked = dict(curve.marked)
    inter = list(curve.intersections)
    for kind, key in moved:
        if kind == "m":
            marked[key] = new
        else:
            a, b = inter[key]
            inter[key] = (new if a == comp else a, new if b == comp and a != comp else b)
    inter.append((comp, new))
    return DualGraphModel.build(list(curve.components) + [(new, 0)], inter, marked)


def genus0_stable_trees(labels: Iterable[int]) -> Iterator[DualGraphModel]:
    """Every genus 0 stable curve with the given marked points, up to isomorphism.

    Generated from the smooth curve by repeatedly colliding at least two
    special points of a component onto a new component (keeping at least two
    behind).  Curves are identified by their induced partition sets.
    """
    labels = list(labels)
    start = smooth_curve(labels)
    seen = {start.partitions()}
    frontier = [start]
    yield start
    while frontier:
        nxt = []
        for curve in frontier:
            for comp in curve.component_ids:
                points = [("m", t) for t, c in curve.marked.items() if c == comp]
                points += [("x", i) for i, pair in enumerate(curve.intersections) if comp in pair]
                for k in range(2, len(points) - 1):
                    for moved in combinations(points, k):
                        child = sprout(curve, comp, moved)
                        key = child.partitions()
                        if key not in seen:
                            seen.add(key)
                            nxt.append(child)
                            yield child
        frontier = nxt
