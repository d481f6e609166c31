"""Tree compatibility, circularity, and the split/order counting identities."""

from __future__ import annotations

from itertools import combinations, permutations
from math import comb, factorial
from typing import Iterable, Iterator

from .errors import EnumerationBoundExceeded, TaxaMismatch
from .model import CyclicOrder, Split, make_split, universe

DEFAULT_BOUND = 12


def pairwise_compatible(s1: Split, s2: Split) -> bool:
    """Four-intersection test: some pair of sides is disjoint."""
    if s1.labels != s2.labels:
        raise TaxaMismatch(f"{s1} and {s2} are over different taxa")
    return s1.compatible_with(s2)


def all_pairwise_compatible(splits: Iterable[Split]) -> bool:
    splits = list(splits)
    return all(a.compatible_with(b) for a, b in combinations(splits, 2))


def incompatible_pairs(splits: Iterable[Split]) -> int:
    return sum(1 for a, b in combinations(list(splits), 2) if not pairwise_compatible(a, b))


def _order_labels(order: CyclicOrder) -> tuple[int, ...]:
    return tuple(sorted(order.order))


def is_compatible_with_order(splits: Iterable[Split], order: CyclicOrder) -> bool:
    labels = _order_labels(order)
    for s in splits:
        if s.labels != labels:
            raise TaxaMismatch(f"split {s} does not match the order's taxa")
        if order.arc_start(s.side_a) is None:
            return False
    return True


def _labels_of(splits, n):
    splits = list(splits)
    if splits:
        labels = splits[0].labels
        for s in splits:
            if s.labels != labels:
                raise TaxaMismatch(f"split {s} is over different taxa")
        return splits, labels
    if n is None:
        raise TaxaMismatch("taxa count needed for an empty split set")
    return splits, universe(n)


def find_circular_order(splits: Iterable[Split], n: int | None = None, *,
                        bound: int = DEFAULT_BOUND) -> CyclicOrder | None:
    """Lexicographically least canonical cyclic order compatible with every split.

    Depth-first search over linear orders that start at the smallest label.  For
    each split the side avoiding that label must occupy one contiguous block;
    partial orders breaking a block are pruned.  Returns None when no order
    exists.
    """
    splits, labels = _labels_of(splits, n)
    if len(labels) > bound:
        raise EnumerationBoundExceeded(f"{len(labels)} taxa exceeds the bound {bound}")
    first = labels[0]
    blocks = [frozenset(s.side_b if first in s.side_a else s.side_a) for s in set(splits)]
    rest = labels[1:]
    m = len(labels)

    prefix = [first]
    used = {first}
    # per block: number of members placed so far, and whether the block closed
    placed = [0] * len(blocks)
    closed = [False] * len(blocks)

    def place(t):
        prev = prefix[-1]
        undo = []
        for j, blk in enumerate(blocks):
            if t in blk:
                if closed[j] or (placed[j] and prev not in blk):
                    return None
                undo.append((j, "p"))
            elif prev in blk and not closed[j]:
                if placed[j] < len(blk):
                    return None
                undo.append((j, "c"))
        for j, what in undo:
            if what == "p":
                placed[j] += 1
            else:
                closed[j] = True
        return undo

    def unplace(undo):
        for j, what in undo:
            if what == "p":
                placed[j] -= 1
            else:
                closed[j] = False

    def search():
        if len(prefix) == m:
            return True
        for t in rest:
            if t in used:
                continue
            undo = place(t)
            if undo is None:
                continue
            prefix.append(t)
            used.add(t)
            if search():
                return True
            prefix.pop()
            used.discard(t)
            unplace(undo)
        return False

    if search():
        return CyclicOrder(tuple(prefix))
    return None


def canonical_orders(n: int, *, bound: int = DEFAULT_BOUND) -> Iterator[CyclicOrder]:
    """All dihedral classes of cyclic orders on ``1..n`` in lexicographic order."""
    if n > bound:
        raise EnumerationBoundExceeded(f"{n} taxa exceeds the bound {bound}")
    for perm in permutations(range(2, n + 1)):
        if n < 3 or perm[0] < perm[-1]:
            yield CyclicOrder((1,) + perm)


def splits_of_order(order: CyclicOrder) -> frozenset[Split]:
    """Splits with a side forming a contiguous arc; one per chord of the n-gon."""
    seq = order.order
    n = len(seq)
    labels = sorted(seq)
    top = labels[-1]
    rooted = labels[0] == 0
    out = set()
    for start in range(n):
        for k in range(2, n - 1):
            arc = [seq[(start + j) % n] for j in range(k)]
            out.add(make_split(arc, top, rooted=rooted))
    return frozenset(out)


def all_splits(n: int, *, rooted: bool = False) -> list[Split]:
    """Every split over the label set, sorted."""
    labels = universe(n, rooted)
    first = labels[0]
    others = labels[1:]
    out = []
    for k in range(1, len(labels) - 2):
        for combo in combinations(others, k):
            out.append(make_split((first,) + combo, n, rooted=rooted))
    return sorted(out)


def count_all_splits(n: int) -> int:
    return 2 ** (n - 1) - n - 1


def count_all_splits_piecewise(n: int) -> int:
    """Sum of binomials over the smaller side size; halves the middle term for even n."""
    k, odd = divmod(n, 2)
    if odd:
        return sum(comb(n, i) for i in range(2, k + 1))
    return sum(comb(n, i) for i in range(2, k)) + comb(n, k) // 2


def count_circular_orders(n: int) -> int:
    return factorial(n - 1) // 2


def count_splits_per_order(n: int) -> int:
    return n * (n - 3) // 2


def count_bhv_orthants(n: int) -> int:
    """(2n-3)!!, the number of rooted binary tree shapes on n leaves."""
    out = 1
    for k in range(2 * n - 3, 0, -2):
        out *= k
    return out
