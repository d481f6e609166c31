"""Thin categories of trees, curves, networks and boundary-divisor sets.

Every hom-set considered here is empty or a singleton: there is a morphism
``x -> y`` exactly when the splits of ``y`` are a subset of the splits of ``x``
(collapsing edges / forgetting nodes).  Category laws therefore reduce to poset
axioms and functors are checked on objects plus hom existence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .compat import DEFAULT_BOUND, all_splits, find_circular_order
from .complexes import csn_orthants
from .curves import DualGraphModel, arithmetic_genus, genus0_stable_trees, tree_curve
from .errors import (
    BadIndex,
    BadParameter,
    EnumerationBoundExceeded,
    KindMismatch,
    NotCircular,
    NotTreeShaped,
    TaxaMismatch,
)
from .model import Split, WeightedSplitSystem, universe

KINDS = ("tree", "curve", "network", "topology", "divisorset")
EXHAUSTIVE_BOUND = 6


@dataclass(frozen=True)
class CatObject:
    """An object of one of the thin categories.

    ``splits`` is kept sorted; ``weights`` (networks and weighted trees only)
    is aligned with it.
    """

    kind: str
    n: int
    splits: tuple[Split, ...] = ()
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise KindMismatch(f"unknown object kind {self.kind!r}")
        if self.weights is None:
            object.__setattr__(self, "splits", tuple(sorted(set(self.splits))))
        else:
            pairs = sorted(zip(self.splits, self.weights))
            object.__setattr__(self, "splits", tuple(s for s, _ in pairs))
            object.__setattr__(self, "weights", tuple(w for _, w in pairs))

    @property
    def split_set(self) -> frozenset[Split]:
        return frozenset(self.splits)


def make_object(kind: str, splits: Iterable[Split], n: int,
                weights: Sequence[float] | None = None) -> CatObject:
    splits = list(splits)
    labels = universe(n)
    for s in splits:
        if s.labels != labels:
            raise TaxaMismatch(f"split {s} is not over 1..{n}")
    if kind == "divisorset" and find_circular_order(splits, n) is None:
        raise NotCircular("boundary divisor set is not compatible with a cyclic order")
    return CatObject(kind, n, tuple(splits), None if weights is None else tuple(weights))


def network_object(system: WeightedSplitSystem) -> CatObject:
    return make_object("network", system.splits, system.n, system.weights)


def morphism_exists(kind: str, x: CatObject, y: CatObject) -> bool:
    """Whether there is a (unique) morphism ``x -> y``: splits(y) ⊆ splits(x)."""
    if x.kind != kind or y.kind != kind:
        raise KindMismatch(f"expected two {kind} objects, got {x.kind} and {y.kind}")
    if x.n != y.n:
        raise TaxaMismatch(f"objects over {x.n} and {y.n} taxa")
    if kind == "divisorset":
        for obj in (x, y):
            if find_circular_order(obj.splits, obj.n) is None:
                raise NotCircular("boundary divisor set is not compatible with a cyclic order")
    return y.split_set <= x.split_set


def _drop(x: CatObject, drop: Iterable[int]) -> CatObject:
    drop = set(drop)
    bad = [i for i in drop if not 1 <= i <= len(x.splits)]
    if bad:
        raise BadIndex(f"indices {sorted(bad)} out of range 1..{len(x.splits)}")
    keep = [i for i in range(len(x.splits)) if i + 1 not in drop]
    weights = None if x.weights is None else tuple(x.weights[i] for i in keep)
    return CatObject(x.kind, x.n, tuple(x.splits[i] for i in keep), weights)


def project_topology(x: CatObject, drop: Iterable[int]) -> CatObject:
    """Forget the splits at the given 1-based positions (in sorted split order)."""
    return _drop(x, drop)


def fuse_partitions(x: CatObject, drop: Iterable[int]) -> CatObject:
    """Smooth the nodes whose partitions sit at the given 1-based positions."""
    if x.kind != "curve":
        raise KindMismatch(f"fusion acts on curve objects, got {x.kind}")
    return _drop(x, drop)


def shrink_edge(weights: Sequence[float], i: int, t: float) -> tuple[float, ...]:
    """Scale coordinate ``i`` (1-based) by ``1 - t``."""
    if not 1 <= i <= len(weights):
        raise BadIndex(f"index {i} out of range 1..{len(weights)}")
    if not 0 <= t <= 1:
        raise BadParameter(f"homotopy parameter {t} outside [0, 1]")
    out = list(weights)
    out[i - 1] = (1 - t) * out[i - 1]
    return tuple(out)


def shrink_set(weights: Sequence[float], indices: Iterable[int], t: float) -> tuple[float, ...]:
    out = tuple(weights)
    for i in indices:
        out = shrink_edge(out, i, t)
    return out


def curve_object(curve: DualGraphModel) -> CatObject:
    return CatObject("curve", len(curve.marked), tuple(curve.partitions()))


def functor_tree_topology(curve: DualGraphModel) -> CatObject:
    """Tree topology whose splits are the partitions induced by the nodes of a genus 0 curve."""
    if arithmetic_genus(curve) != 0 or any(s is None for s in curve.induced):
        raise NotTreeShaped("curve dual graph is not a tree of stable components")
    return CatObject("tree", len(curve.marked), tuple(curve.partitions()))


def functor_curve_of_tree(tree: CatObject) -> DualGraphModel:
    """Inverse direction: the genus 0 curve dual to a tree topology."""
    if tree.kind != "tree":
        raise KindMismatch(f"expected a tree object, got {tree.kind}")
    return tree_curve(tree.splits, universe(tree.n))


def functor_network_divisors(net: CatObject) -> CatObject:
    """Forget weights (if any) and read splits as boundary divisors."""
    if net.kind not in ("network", "topology"):
        raise KindMismatch(f"expected a network object, got {net.kind}")
    return make_object("divisorset", net.splits, net.n)


def functor_divisors_network(d: CatObject) -> CatObject:
    if d.kind != "divisorset":
        raise KindMismatch(f"expected a divisor set, got {d.kind}")
    if find_circular_order(d.splits, d.n) is None:
        raise NotCircular("boundary divisor set is not compatible with a cyclic order")
    return CatObject("topology", d.n, d.splits)


@dataclass
class FiniteCategorySample:
    objects: list
    hom_exists: Callable[[object, object], bool]
    name: str = ""


@dataclass
class LawReport:
    name: str
    objects: int
    composable_pairs: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_category_laws(sample: FiniteCategorySample, *, antisymmetric: bool = True,
                         limit: int = 20) -> LawReport:
    """Identity, closure under composition and (for posets) antisymmetry.

    In a thin category associativity and the unit laws hold as soon as the
    composites exist, so they are checked as existence of ``x -> z`` for every
    composable ``x -> y -> z`` and of ``x -> x``.
    """
    objs = list(sample.objects)
    hom = sample.hom_exists
    report = LawReport(sample.name, len(objs))
    out = {i: [j for j in range(len(objs)) if hom(objs[i], objs[j])] for i in range(len(objs))}

    def fail(msg):
        if len(report.violations) < limit:
            report.violations.append(msg)

    for i, x in enumerate(objs):
        if i not in out[i]:
            fail(f"identity missing on object {i}: {_show(x)}")
    for i in range(len(objs)):
        for j in out[i]:
            for k in out[j]:
                report.composable_pairs += 1
                if k not in out[i]:
                    fail(f"composite missing for {i}->{j}->{k}: "
                         f"{_show(objs[i])} / {_show(objs[j])} / {_show(objs[k])}")
    if antisymmetric:
        for i in range(len(objs)):
            for j in out[i]:
                if j != i and i in out[j] and objs[i] != objs[j]:
                    fail(f"distinct objects {i} and {j} are isomorphic")
    return report


def verify_functor_laws(source: FiniteCategorySample, functor: Callable,
                        target_hom: Callable[[object, object], bool]) -> LawReport:
    """F(id_x) = id_{F x} and F(g ∘ f) = F(g) ∘ F(f) on every composable pair."""
    objs = list(source.objects)
    report = LawReport(f"functor on {source.name}", len(objs))
    image = [functor(x) for x in objs]
    out = {i: [j for j in range(len(objs)) if source.hom_exists(objs[i], objs[j])]
           for i in range(len(objs))}
    for i in range(len(objs)):
        if not target_hom(image[i], image[i]):
            report.violations.append(f"F(id) is not an identity at object {i}")
        for j in out[i]:
            if not target_hom(image[i], image[j]):
                report.violations.append(f"F does not send {i}->{j} to a morphism")
            for k in out[j]:
                report.composable_pairs += 1
                if not target_hom(image[i], image[k]):
                    report.violations.append(f"F(g∘f) missing for {i}->{j}->{k}")
    return report


def _show(x) -> str:
    if isinstance(x, CatObject):
        return "{" + " ".join(map(str, x.splits)) + "}"
    return repr(x)


def _check_bound(n: int, bound: int):
    if n > bound:
        raise EnumerationBoundExceeded(f"{n} taxa exceeds the exhaustive bound {bound}")


def tree_objects(n: int, *, bound: int = EXHAUSTIVE_BOUND) -> list[CatObject]:
    """All tree topologies on ``1..n``: pairwise-compatible split sets."""
    _check_bound(n, bound)
    splits = all_splits(n)
    out = []

    def grow(chosen, start):
        out.append(CatObject("tree", n, tuple(chosen)))
        for i in range(start, len(splits)):
            s = splits[i]
            if all(s.compatible_with(c) for c in chosen):
                grow(chosen + [s], i + 1)

    grow([], 0)
    return out


def curve_objects(n: int, *, bound: int = EXHAUSTIVE_BOUND) -> list[DualGraphModel]:
    """All genus 0 stable curves on ``n`` marked points, by sprouting components."""
    _check_bound(n, bound)
    return list(genus0_stable_trees(range(1, n + 1)))


def network_topology_objects(n: int, *, bound: int = EXHAUSTIVE_BOUND) -> list[CatObject]:
    """Subsets of every orthant's split set, deduplicated."""
    _check_bound(n, bound)
    seen = set()
    for _, splits in csn_orthants(n):
        ordered = sorted(splits)
        for k in range(len(ordered) + 1):
            for sub in combinations(ordered, k):
                seen.add(sub)
    return [CatObject("topology", n, sub) for sub in sorted(seen, key=lambda s: (len(s), s))]


def divisor_set_objects(n: int, *, bound: int = EXHAUSTIVE_BOUND) -> list[CatObject]:
    """Sets of boundary divisors compatible with one cyclic order, found by
    testing every subset of divisors for circularity."""
    _check_bound(n, bound)
    splits = all_splits(n)
    out = []

    def grow(chosen, start):
        out.append(CatObject("divisorset", n, tuple(chosen)))
        for i in range(start, len(splits)):
            nxt = chosen + [splits[i]]
            if find_circular_order(nxt, n, bound=DEFAULT_BOUND) is not None:
                grow(nxt, i + 1)

    grow([], 0)
    return out


def subset_hom(kind: str) -> Callable[[CatObject, CatObject], bool]:
    def hom(x, y):
        return morphism_exists(kind, x, y)

    return hom


def _curve_hom(x: DualGraphModel, y: DualGraphModel) -> bool:
    return y.partitions() <= x.partitions()


def sample(kind: str, n: int) -> FiniteCategorySample:
    """Exhaustive object set for one of the categories."""
    if kind == "tree":
        return FiniteCategorySample(tree_objects(n), subset_hom("tree"), f"trees n={n}")
    if kind == "curve":
        return FiniteCategorySample(curve_objects(n), _curve_hom, f"curves n={n}")
    if kind == "topology":
        return FiniteCategorySample(network_topology_objects(n), subset_hom("topology"),
                                    f"network topologies n={n}")
    if kind == "divisorset":
        return FiniteCategorySample(divisor_set_objects(n), lambda x, y: y.split_set <= x.split_set,
                                    f"divisor sets n={n}")
    raise KindMismatch(f"no exhaustive sample for kind {kind!r}")


@dataclass
class EquivalenceReport:
    pair: str
    n: int
    left_count: int
    right_count: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.left_count == self.right_count


def verify_equivalence(pair: str, n: int, *, bound: int = EXHAUSTIVE_BOUND,
                       limit: int = 20) -> EquivalenceReport:
    """Check that the two functors of ``pair`` are mutually inverse on objects and
    preserve and reflect morphisms.

    ``pair`` is ``"trees"`` (tree topologies vs. genus 0 curve partitions) or
    ``"networks"`` (network topologies vs. boundary-divisor sets).
    """
    if pair == "trees":
        left = sample("tree", n)
        right = sample("curve", n)
        forward = functor_curve_of_tree        # topology -> curve
        backward = functor_tree_topology       # curve -> topology

        def same_right(a, b):
            return a.partitions() == b.partitions()
    elif pair == "networks":
        left = sample("topology", n)
        right = sample("divisorset", n)
        forward = functor_network_divisors
        backward = functor_divisors_network

        def same_right(a, b):
            return a == b
    else:
        raise KindMismatch(f"unknown pair {pair!r}")
    _check_bound(n, bound)

    report = EquivalenceReport(pair, n, len(left.objects), len(right.objects))

    def fail(msg):
        if len(report.failures) < limit:
            report.failures.append(msg)

    left_index = {x: i for i, x in enumerate(left.objects)}
    for x in left.objects:
        if backward(forward(x)) != x:
            fail(f"round trip changes {_show(x)}")
    images = []
    for y in right.objects:
        fy = backward(y)
        images.append(fy)
        if fy not in left_index:
            fail(f"image {_show(fy)} is not an enumerated object")
        if not same_right(forward(fy), y):
            fail(f"round trip changes right-hand object {_show(fy)}")
    if len(set(images)) != len(images):
        fail("functor is not injective on objects")
    for a, b in ((a, b) for a in range(len(images)) for b in range(len(images))):
        src = right.hom_exists(right.objects[a], right.objects[b])
        dst = left.hom_exists(images[a], images[b])
        if src != dst:
            fail(f"hom mismatch between objects {a} and {b}")
    return report
