"""Canonical data model: splits, weighted split systems, topologies, cyclic orders.

Taxa are dense integers.  Unrooted contexts use labels ``1..n``; rooted trees on
``m`` leaves use ``0..m`` with ``0`` standing for the root, so the same split
machinery serves both.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    BadTaxon,
    DuplicateSplit,
    EmptySystem,
    SideTooSmall,
    TaxaMismatch,
    WeightNotPositive,
)

ROOT = 0
ATOL = 1e-9


def universe(n: int, rooted: bool = False) -> tuple[int, ...]:
    """Label set for ``n`` taxa (plus the root label 0 when ``rooted``)."""
    return tuple(range(0 if rooted else 1, n + 1))


@dataclass(frozen=True, order=True)
class Split:
    """A bipartition of the taxa with both sides of size at least two.

    ``side_a`` is always the lexicographically smaller sorted side, so two
    splits are equal exactly when they describe the same bipartition.
    """

    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(sorted(self.side_a + self.side_b))

    @property
    def size(self) -> int:
        return len(self.side_a) + len(self.side_b)

    @property
    def rooted(self) -> bool:
        return ROOT in self.side_a or ROOT in self.side_b

    def small_side(self) -> tuple[int, ...]:
        """The smaller side; ties go to ``side_a``."""
        if len(self.side_b) < len(self.side_a):
            return self.side_b
        return self.side_a

    def side_of(self, taxon: int) -> tuple[int, ...]:
        return self.side_a if taxon in self.side_a else self.side_b

    def separates(self, x: int, y: int) -> bool:
        return (x in self.side_a) != (y in self.side_a)

    def compatible_with(self, other: Split) -> bool:
        a1, b1 = set(self.side_a), set(self.side_b)
        a2, b2 = set(other.side_a), set(other.side_b)
        return not (a1 & a2) or not (a1 & b2) or not (b1 & a2) or not (b1 & b2)

    def __str__(self) -> str:
        return ",".join(map(str, self.side_a)) + "|" + ",".join(map(str, self.side_b))


def make_split(side: Iterable[int], n: int, *, rooted: bool = False) -> Split:
    """Canonical split with one side ``side`` over ``n`` taxa.

    >>> make_split([3, 4], 4)
    Split(side_a=(1, 2), side_b=(3, 4))
    """
    labels = universe(n, rooted)
    side = list(side)
    chosen = set(side)
    if len(chosen) != len(side):
        raise BadTaxon(f"duplicated taxon in {side}")
    bad = chosen.difference(labels)
    if bad:
        raise BadTaxon(f"taxa {sorted(bad)} outside {labels[0]}..{labels[-1]}")
    if len(chosen) < 2 or len(chosen) > len(labels) - 2:
        raise SideTooSmall(f"split side {sorted(chosen)} leaves fewer than two taxa on a side")
    a = tuple(sorted(chosen))
    b = tuple(x for x in labels if x not in chosen)
    if b < a:
        a, b = b, a
    return Split(a, b)


def split_from_string(text: str, n: int, *, rooted: bool = False) -> Split:
    """Parse ``"1,2|3,4"`` or a bare side ``"1,2"``."""
    side = text.split("|", 1)[0]
    try:
        taxa = [int(tok) for tok in side.split(",") if tok.strip()]
    except ValueError:
        raise BadTaxon(f"not a taxon list: {text!r}") from None
    return make_split(taxa, n, rooted=rooted)


@dataclass(frozen=True)
class WeightedSplitSystem:
    """Splits with strictly positive weights over a fixed label set."""

    n: int
    entries: tuple[tuple[Split, float], ...] = ()
    rooted: bool = False

    def __post_init__(self):
        labels = universe(self.n, self.rooted)
        seen = set()
        for split, weight in self.entries:
            if split.labels != labels:
                raise TaxaMismatch(f"split {split} is not over labels {labels[0]}..{labels[-1]}")
            if split in seen:
                raise DuplicateSplit(f"split {split} appears twice")
            if not weight > 0:
                raise WeightNotPositive(f"split {split} has weight {weight}")
            seen.add(split)

    @property
    def splits(self) -> tuple[Split, ...]:
        return tuple(s for s, _ in self.entries)

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(w for _, w in self.entries)

    def weight_of(self, split: Split) -> float:
        return dict(self.entries)[split]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def collapse_zero_weights(entries: Iterable[tuple[Split, float]], n: int | None = None,
                          *, rooted: bool = False) -> WeightedSplitSystem:
    """Drop zero-weight entries, keeping the order of the rest.

    ``n`` is only needed when ``entries`` is empty (or all zero) and cannot be
    inferred; it defaults to 4.
    """
    entries = list(entries)
    seen = set()
    for split, weight in entries:
        if split in seen:
            raise DuplicateSplit(f"split {split} appears twice")
        if weight < 0:
            raise WeightNotPositive(f"split {split} has negative weight {weight}")
        seen.add(split)
    if entries:
        labels = entries[0][0].labels
        rooted = ROOT in labels
        n = labels[-1]
    elif n is None:
        n = 4
    kept = tuple((s, float(w)) for s, w in entries if w > 0)
    return WeightedSplitSystem(n, kept, rooted)


def projectivize(system: WeightedSplitSystem) -> WeightedSplitSystem:
    """Rescale weights to sum to one."""
    if not system.entries:
        raise EmptySystem("cannot projectivize an empty split system")
    total = sum(system.weights)
    return WeightedSplitSystem(
        system.n, tuple((s, w / total) for s, w in system.entries), system.rooted
    )


@dataclass(frozen=True)
class TreeTopology:
    """Unweighted, pairwise-compatible split set."""

    n: int
    splits: frozenset = field(default_factory=frozenset)
    rooted: bool = False

    def __post_init__(self):
        object.__setattr__(self, "splits", frozenset(self.splits))
        _check_labels(self.splits, self.n, self.rooted)
        from .compat import all_pairwise_compatible

        if not all_pairwise_compatible(self.splits):
            from .errors import NotCompatible

            raise NotCompatible("tree topology splits must be pairwise compatible")

    @property
    def label_count(self) -> int:
        return len(universe(self.n, self.rooted))


@dataclass(frozen=True)
class NetworkTopology:
    """Unweighted split set compatible with some cyclic order."""

    n: int
    splits: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "splits", frozenset(self.splits))
        _check_labels(self.splits, self.n, False)
        from .compat import find_circular_order
        from .errors import NotCircular

        if find_circular_order(self.splits, self.n) is None:
            raise NotCircular("network topology splits are not circular")


def _check_labels(splits, n, rooted):
    labels = universe(n, rooted)
    for s in splits:
        if s.labels != labels:
            raise TaxaMismatch(f"split {s} is not over labels {labels[0]}..{labels[-1]}")


def is_binary(topology: TreeTopology) -> bool:
    """True when the tree is fully resolved (every internal vertex has valence 3).

    A tree over ``L`` labels (root included when rooted) is binary exactly when
    it has ``L - 3`` splits.
    """
    k = len(topology.splits)
    return k > 0 and k == topology.label_count - 3


@dataclass(frozen=True)
class EvolutionaryPoint:
    """A rooted weighted tree together with its ``n`` pendant-edge lengths."""

    internal: WeightedSplitSystem
    external: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "external", tuple(float(x) for x in self.external))
        if len(self.external) != self.internal.n:
            raise TaxaMismatch(
                f"expected {self.internal.n} external weights, got {len(self.external)}"
            )
        if any(x < 0 for x in self.external):
            raise WeightNotPositive("external weights must be non-negative")


@dataclass(frozen=True)
class CyclicOrder:
    """A cyclic arrangement of taxa, stored as its dihedral canonical form."""

    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", canonical_cycle(self.order))

    @property
    def n(self) -> int:
        return len(self.order)

    def position(self) -> dict[int, int]:
        return {t: i for i, t in enumerate(self.order)}

    def arc_start(self, side: Sequence[int]) -> int | None:
        """Index ``i`` with ``side == {order[i], ..., order[i+k-1]}`` (cyclically)."""
        k = len(side)
        members = set(side)
        n = self.n
        if k == 0 or k >= n:
            return None
        pos = self.position()
        for t in side:
            i = pos[t]
            if self.order[(i - 1) % n] not in members:
                if all(self.order[(i + j) % n] in members for j in range(k)):
                    return i
                return None
        return None

    def __str__(self) -> str:
        return ",".join(map(str, self.order))


def canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least rotation/reflection of ``seq``."""
    seq = tuple(seq)
    if len(set(seq)) != len(seq):
        raise BadTaxon(f"cyclic order repeats a taxon: {seq}")
    if not seq:
        return seq
    i = seq.index(min(seq))
    fwd = seq[i:] + seq[:i]
    rev = (fwd[0],) + tuple(reversed(fwd[1:]))
    return min(fwd, rev)
