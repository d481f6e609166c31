"""Simplicial complexes on split sets and the cell structure of the real moduli space.

Both sides of the tree/curve duality are clique complexes of the split
compatibility graph: projective tree space on ``m`` rooted leaves uses the
splits of ``{0..m}`` (0 is the root), the boundary-divisor intersection complex
uses the splits of ``{1..n}``.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Mapping, Sequence

import networkx as nx

from .compat import all_splits, canonical_orders, splits_of_order
from .errors import EnumerationBoundExceeded, OutOfRange, TooFewTaxa
from .model import CyclicOrder, Split, make_split

CELL_BOUND = 9


@dataclass(frozen=True)
class AbstractSimplicialComplex:
    vertices: tuple[Split, ...]
    facets: tuple[frozenset[int], ...]

    @classmethod
    def from_facets(cls, vertices: Sequence[Split], facets) -> AbstractSimplicialComplex:
        """Keep only the inclusion-maximal sets among ``facets``."""
        sets = {frozenset(f) for f in facets}
        maximal = [f for f in sets if not any(f < g for g in sets)]
        return cls(tuple(vertices), tuple(sorted(maximal, key=lambda f: (len(f), sorted(f)))))

    @classmethod
    def clique_complex(cls, vertices: Sequence[Split],
                       adjacent: Callable[[Split, Split], bool]) -> AbstractSimplicialComplex:
        vertices = tuple(vertices)
        graph = nx.Graph()
        graph.add_nodes_from(range(len(vertices)))
        graph.add_edges_from((i, j) for i, j in combinations(range(len(vertices)), 2)
                             if adjacent(vertices[i], vertices[j]))
        return cls.from_facets(vertices, nx.find_cliques(graph))

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def simplices(self) -> set[frozenset[int]]:
        """Every non-empty face, by downward closure of the facets."""
        out = set()
        for f in self.facets:
            for k in range(1, len(f) + 1):
                out.update(frozenset(c) for c in combinations(sorted(f), k))
        return out

    def f_vector(self) -> list[int]:
        sizes = Counter(len(s) for s in self.simplices())
        return [sizes[k] for k in range(1, self.dimension + 2)]

    def is_simplex(self, vertex_set) -> bool:
        s = frozenset(vertex_set)
        return any(s <= f for f in self.facets)

    def is_valid(self) -> bool:
        """Facets form an antichain and cover every vertex index in range."""
        n = len(self.vertices)
        if any(not f or max(f) >= n or min(f) < 0 for f in self.facets):
            return False
        if any(f < g for f in self.facets for g in self.facets):
            return False
        return set().union(*self.facets) == set(range(n)) if self.facets else n == 0


def _compatible(a: Split, b: Split) -> bool:
    return a.compatible_with(b)


def pbhv_complex(m: int) -> AbstractSimplicialComplex:
    """Projective tree space on ``m`` rooted leaves (labels 0..m, 0 = root)."""
    if m < 3:
        raise TooFewTaxa(f"rooted trees need at least three leaves, got {m}")
    return AbstractSimplicialComplex.clique_complex(all_splits(m, rooted=True), _compatible)


def dual_intersection_complex(n: int) -> AbstractSimplicialComplex:
    """Boundary divisors of the genus 0 moduli space with ``n`` marked points as
    vertices; simplices are sets of pairwise intersecting divisors."""
    if n < 4:
        raise TooFewTaxa(f"need at least four marked points, got {n}")
    return AbstractSimplicialComplex.clique_complex(all_splits(n), _compatible)


def root_to_label(m: int) -> Callable[[Split], Split]:
    """Relabel splits of {0..m} to splits of {1..m+1} by sending the root to m+1."""

    def relabel(s: Split) -> Split:
        side = [m + 1 if t == 0 else t for t in s.side_a]
        return make_split(side, m + 1)

    return relabel


def complexes_isomorphic(c1: AbstractSimplicialComplex, c2: AbstractSimplicialComplex,
                         vertex_map: Mapping[Split, Split] | Callable[[Split], Split]) -> bool:
    """Whether ``vertex_map`` is a bijection of vertices carrying simplices onto simplices."""
    if len(c1.vertices) != len(c2.vertices):
        return False
    fn = vertex_map.__getitem__ if isinstance(vertex_map, Mapping) else vertex_map
    try:
        images = [fn(v) for v in c1.vertices]
    except (KeyError, ValueError):
        return False
    index2 = {v: i for i, v in enumerate(c2.vertices)}
    if len(set(images)) != len(images) or any(im not in index2 for im in images):
        return False
    moved = {frozenset(index2[images[i]] for i in f) for f in c1.facets}
    return moved == set(c2.facets)


def csn_orthants(n: int, *, bound: int = CELL_BOUND) -> list[tuple[CyclicOrder, frozenset]]:
    """One orthant per cyclic order, spanned by the splits compatible with it."""
    if n < 4:
        raise TooFewTaxa(f"need at least four taxa, got {n}")
    if n > bound:
        raise EnumerationBoundExceeded(f"{n} taxa exceeds the bound {bound}")
    return [(o, splits_of_order(o)) for o in canonical_orders(n)]


@dataclass(frozen=True)
class CellDecomposition:
    n: int
    cells: tuple[CyclicOrder, ...]
    adjacency: tuple[tuple[int, int, Split], ...]

    def neighbors(self, i: int) -> list[int]:
        return sorted({b if a == i else a for a, b, _ in self.adjacency if i in (a, b)})


def reverse_arc(order: CyclicOrder, start: int, k: int) -> CyclicOrder:
    seq = list(order.order)
    n = len(seq)
    idx = [(start + j) % n for j in range(k)]
    vals = [seq[i] for i in idx]
    for i, v in zip(idx, reversed(vals)):
        seq[i] = v
    return CyclicOrder(tuple(seq))


def cell_faces(order: CyclicOrder) -> dict[Split, CyclicOrder]:
    """Codimension-one faces of a cell: one per chord, labelled by the chord's split,
    leading to the cell obtained by reversing that arc."""
    seq = order.order
    n = len(seq)
    out = {}
    for start in range(n):
        for k in range(2, n - 1):
            split = make_split([seq[(start + j) % n] for j in range(k)], n)
            out.setdefault(split, reverse_arc(order, start, k))
    return out


def cells_of_m0n_real(n: int, *, bound: int = CELL_BOUND) -> CellDecomposition:
    """Associahedral cells of the real moduli space and their facet adjacencies."""
    if n < 4:
        raise TooFewTaxa(f"need at least four marked points, got {n}")
    if n > bound:
        raise EnumerationBoundExceeded(f"{n} marked points exceeds the bound {bound}")
    cells = tuple(canonical_orders(n, bound=bound))
    index = {c: i for i, c in enumerate(cells)}
    pairs = set()
    for i, cell in enumerate(cells):
        for split, other in cell_faces(cell).items():
            j = index[other]
            pairs.add((min(i, j), max(i, j), split))
    return CellDecomposition(n, cells, tuple(sorted(pairs, key=lambda p: (p[0], p[1], p[2]))))


class Projective(enum.Enum):
    INFINITY = "inf"

    def __str__(self):
        return "∞"


def circle_to_affine(t: float) -> float | Projective:
    """Affine coordinate tan(t/2) of the point at angle ``t`` on the real projective line."""
    if not 0 <= t < 2 * math.pi:
        raise OutOfRange(f"angle {t} outside [0, 2π)")
    if t == math.pi:
        return Projective.INFINITY
    return math.tan(t / 2)
