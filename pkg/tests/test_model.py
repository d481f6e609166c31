import pytest
from hypothesis import given, strategies as st

from splitnet.errors import (
    BadTaxon,
    DuplicateSplit,
    EmptySystem,
    NotCircular,
    NotCompatible,
    SideTooSmall,
    TaxaMismatch,
    WeightNotPositive,
)
from splitnet.model import (
    CyclicOrder,
    EvolutionaryPoint,
    NetworkTopology,
    TreeTopology,
    WeightedSplitSystem,
    canonical_cycle,
    collapse_zero_weights,
    is_binary,
    make_split,
    projectivize,
    split_from_string,
)


def test_split_is_canonical_under_complement():
    assert make_split([3, 4], 4) == make_split([1, 2], 4)
    s = make_split([2, 3], 5)
    assert s.side_a == (1, 4, 5) and s.side_b == (2, 3)
    assert s.small_side() == (2, 3)
    assert str(s) == "1,4,5|2,3"


def test_split_rejects_small_sides_and_bad_labels():
    with pytest.raises(SideTooSmall):
        make_split([1], 4)
    with pytest.raises(SideTooSmall):
        make_split([1, 2, 3], 4)
    with pytest.raises(BadTaxon):
        make_split([1, 9], 4)


def test_rooted_split_includes_root():
    s = make_split([1, 2], 3, rooted=True)
    assert s.side_a == (0, 3) and s.rooted


def test_split_from_string():
    assert split_from_string("1,2|3,4", 4) == make_split([1, 2], 4)
    assert split_from_string("3,4", 4) == make_split([1, 2], 4)


def test_separates_and_compatible():
    s = make_split([1, 2], 5)
    assert s.separates(1, 3) and not s.separates(1, 2)
    assert s.compatible_with(make_split([1, 2, 3], 5))
    assert not make_split([1, 2], 4).compatible_with(make_split([1, 4], 4))


def test_weighted_system_validation():
    s = make_split([1, 2], 4)
    with pytest.raises(DuplicateSplit):
        WeightedSplitSystem(4, ((s, 1.0), (make_split([3, 4], 4), 2.0)))
    with pytest.raises(WeightNotPositive):
        WeightedSplitSystem(4, ((s, 0.0),))
    with pytest.raises(TaxaMismatch):
        WeightedSplitSystem(5, ((s, 1.0),))
    system = WeightedSplitSystem(4, ((s, 0.5),))
    assert system.weight_of(s) == 0.5 and len(system) == 1


def test_collapse_and_projectivize():
    a, b = make_split([1, 2], 5), make_split([4, 5], 5)
    system = collapse_zero_weights([(a, 0.0), (b, 2.0)], 5)
    assert system.splits == (b,)
    p = projectivize(WeightedSplitSystem(5, ((a, 1.0), (b, 3.0))))
    assert p.weights == pytest.approx((0.25, 0.75))
    with pytest.raises(EmptySystem):
        projectivize(WeightedSplitSystem(5, ()))


def test_tree_and_network_topologies():
    with pytest.raises(NotCompatible):
        TreeTopology(4, (make_split([1, 2], 4), make_split([1, 4], 4)))
    net = NetworkTopology(4, (make_split([1, 2], 4), make_split([1, 4], 4)))
    assert len(net.splits) == 2
    with pytest.raises(NotCircular):
        NetworkTopology(6, tuple(make_split(s, 6) for s in ([1, 2], [1, 3], [1, 4])))


def test_is_binary():
    assert is_binary(TreeTopology(5, (make_split([1, 2], 5), make_split([4, 5], 5))))
    assert not is_binary(TreeTopology(5, (make_split([1, 2], 5),)))
    assert not is_binary(TreeTopology(4, ()))
    assert is_binary(TreeTopology(4, (make_split([1, 2], 4),)))


def test_evolutionary_point():
    internal = WeightedSplitSystem(3, ((make_split([1, 2], 3, rooted=True), 0.5),), True)
    point = EvolutionaryPoint(internal, (0.1, 0.2, 0.3))
    assert point.external[2] == 0.3


def test_cyclic_order_canonical_and_arcs():
    assert CyclicOrder((3, 4, 5, 1, 2)) == CyclicOrder((1, 2, 3, 4, 5))
    assert CyclicOrder((1, 5, 4, 3, 2)).order == (1, 2, 3, 4, 5)
    o = CyclicOrder((1, 2, 3, 4, 5))
    assert o.arc_start([5, 1]) is not None
    assert o.arc_start([1, 3]) is None


@given(st.permutations(list(range(1, 8))))
def test_canonical_cycle_is_dihedral_invariant(perm):
    seq = tuple(perm)
    canon = canonical_cycle(seq)
    assert canon[0] == 1
    assert canonical_cycle(seq[2:] + seq[:2]) == canon
    assert canonical_cycle(tuple(reversed(seq))) == canon


@given(st.sets(st.integers(1, 8), min_size=2, max_size=6))
def test_split_complement_identity(side):
    assert make_split(side, 8) == make_split(set(range(1, 9)) - side, 8)
