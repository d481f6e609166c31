import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from splitnet import io
from splitnet.curves import dual_from_network
from splitnet.errors import (
    BadTaxon,
    DuplicateLeaf,
    DuplicateSplit,
    EmptyTree,
    ParseError,
    SideTooSmall,
    WeightNotPositive,
)
from splitnet.model import WeightedSplitSystem, make_split
from splitnet.network import build_network, n_star

DATA = Path(__file__).parent / "data"


def test_parse_splits_basic():
    doc = io.parse_splits("taxa 4\n1,2 0.5\n")
    assert doc.n == 4
    assert doc.entries == [(make_split([1, 2], 4), 0.5)]


def test_parse_splits_names_and_comments():
    doc = io.parse_splits("# header\ntaxa 3\nname 2 two words  # trailing\n")
    assert doc.names == {2: "two words"} and not doc.entries


@pytest.mark.parametrize("text, error, line", [
    ("taxa 4\n1 0.5\n", SideTooSmall, 2),
    ("taxa 4\n1,2 0.5\n3,4 0.2\n", DuplicateSplit, 3),
    ("taxa 4\n1,2 -1\n", WeightNotPositive, 2),
    ("taxa 4\n1,7 1\n", BadTaxon, 2),
    ("taxa four\n", ParseError, 1),
    ("taxa 4\n1,2\n", ParseError, 2),
    ("taxa 4\n1,x 1\n", ParseError, 2),
    ("taxa 4\n1,2 heavy\n", ParseError, 2),
    ("# nothing\n", ParseError, 1),
])
def test_parse_splits_errors(text, error, line):
    with pytest.raises(error, match=f"line {line}"):
        io.parse_splits(text)


@given(st.lists(st.floats(min_value=1e-6, max_value=1e6, allow_nan=False), min_size=1, max_size=3))
def test_weights_round_trip(weights):
    sides = ([1, 2], [1, 2, 3], [4, 5])[: len(weights)]
    system = WeightedSplitSystem(6, tuple((make_split(s, 6), w) for s, w in zip(sides, weights)))
    back = io.parse_splits(io.emit_splits(system))
    assert [w for _, w in back.entries] == list(weights)


def test_newick_example():
    p = io.parse_newick("((1:0.1,2:0.2):0.5,3:0.3,4:0.4);")
    split = make_split([1, 2], 4, rooted=True)
    assert split.side_a == (0, 3, 4)
    assert p.internal.entries == ((split, 0.5),)
    assert p.external == (0.1, 0.2, 0.3, 0.4)


def test_newick_star_and_missing_lengths():
    p = io.parse_newick("(1,2,3);")
    assert len(p.internal) == 0 and p.external == (0.0, 0.0, 0.0)
    # a zero-length internal edge collapses
    p = io.parse_newick("((1,2),3,4);")
    assert len(p.internal) == 0


@pytest.mark.parametrize("text, error", [
    ("((1,2);", ParseError),
    ("(1,2,3)", ParseError),
    ("(1,2,3);extra", ParseError),
    ("((1,1),2,3);", DuplicateLeaf),
    ("", EmptyTree),
    ("(1,2);", EmptyTree),
    ("(1,2,5);", BadTaxon),
    ("((1),2,3);", ParseError),
])
def test_newick_errors(text, error):
    with pytest.raises(error):
        io.parse_newick(text)


@pytest.mark.parametrize("path", sorted(DATA.glob("*.splits")), ids=lambda p: p.name)
def test_splits_corpus_round_trip(path):
    text = path.read_text()
    assert io.emit_splits(io.parse_splits(text)) == text


@pytest.mark.parametrize("path", sorted(DATA.glob("*.nwk")), ids=lambda p: p.name)
def test_newick_corpus_round_trip(path):
    text = path.read_text()
    assert io.emit_newick(io.parse_newick(text)) + "\n" == text


def test_star_dot():
    dot = io.emit_dot(n_star(4))
    assert dot.count(" -- ") == 4
    assert "label=\"S:" not in dot
    assert dot.count("t") >= 4 and 'n0;' in dot


def test_network_dot_labels_and_determinism():
    doc = io.parse_splits((DATA / "named.splits").read_text())
    net = build_network(doc.system())
    dot = io.emit_dot(net, doc.names)
    assert 'label="human"' in dot
    assert 'label="S:1,2 w=0.25"' in dot
    again = build_network(io.parse_splits((DATA / "named.splits").read_text()).system())
    assert io.emit_dot(again, doc.names) == dot


def test_dual_dot():
    net = build_network(io.parse_splits((DATA / "square.splits").read_text()).system())
    dot = io.emit_dot(dual_from_network(net))
    assert dot.count("shape=circle") == 4
    assert dot.count("style=dashed") == 4
    with pytest.raises(TypeError):
        io.emit_dot(object())


def test_json_payloads():
    net = build_network(io.parse_splits((DATA / "square.splits").read_text()).system())
    payload = json.loads(io.dumps(io.network_json(net)))
    assert payload["schemaVersion"] == io.SCHEMA_VERSION
    assert payload["cycleRank"] == 1
    dual = io.dual_json(dual_from_network(net))
    assert dual["genus"] == 1 and dual["stable"]


def test_format_weight():
    assert io.format_weight(1.0) == "1"
    assert io.format_weight(0.1) == "0.1"
    assert io.format_weight(1e-7) == "1e-07"
