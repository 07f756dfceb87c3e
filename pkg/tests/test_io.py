import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chromoh.graph import Graph, complete_graph, cycle_graph
from chromoh.io import (
    GraphFormatError,
    big,
    parse_graph,
    parse_json,
    parse_text,
    render,
    to_json,
    to_text,
)
from chromoh.report import build_report


@st.composite
def graphs(draw):
    n = draw(st.integers(1, 6))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=8))
    return Graph(n, tuple(edges))


def test_text_format():
    G = parse_text("# a triangle\n\n3\n0 1\n1 2\n 2 0 \n")
    assert G == Graph(3, ((0, 1), (1, 2), (2, 0)))


def test_json_format():
    G = parse_graph('{"vertices": 4, "edges": [[0, 1], [1, 2], [2, 3], [3, 0]]}')
    assert G == cycle_graph(4)


@pytest.mark.parametrize(
    "text, line",
    [
        ("3\n0 1\n5 0\n", 3),
        ("3\n0 1 2\n", 2),
        ("x\n", 1),
        ("# only comments\n", None),
        ("2 3\n", 1),
    ],
)
def test_text_errors_name_the_line(text, line):
    with pytest.raises(GraphFormatError) as exc:
        parse_text(text)
    assert exc.value.line == line
    if line is not None:
        assert f"line {line}" in str(exc.value)


@pytest.mark.parametrize(
    "text",
    [
        '{"vertices": 2}',
        '{"vertices": -1, "edges": []}',
        '{"vertices": 2, "edges": [[0, 2]]}',
        '{"vertices": 2, "edges": [[0]]}',
        '{"vertices": true, "edges": []}',
        '{"vertices": 2, "edges": [[0, 1]',
    ],
)
def test_json_errors(text):
    with pytest.raises(GraphFormatError):
        parse_json(text)


@given(graphs())
def test_round_trips_keep_edge_order(G):
    assert parse_graph(to_text(G)) == G
    assert parse_graph(to_json(G)) == G
    assert to_text(parse_graph(to_text(G))) == to_text(G)


def test_big_integers():
    assert big(2**63 - 1) == 2**63 - 1
    assert big(2**63) == str(2**63)
    assert big(-(2**70)) == str(-(2**70))


def test_report_schema(k3):
    report = build_report(k3)
    assert report["schema"] == 1
    assert report["input"] == {"vertices": 3, "edges": [[0, 1], [0, 2], [1, 2]]}
    assert report["betti"] == [{"i": 0, "j": 3, "dim": 1}, {"i": 1, "j": 1, "dim": 1}]
    assert report["chromatic"] == [0, 2, -3, 1]
    assert {(t["t"], t["q"], t["coeff"]) for t in report["poincare"]} == {(0, 3, 1), (1, 1, 1)}
    assert report["phi_d"] == [] and report["filtered"] == []
    assert report["knight_ranks"] == [{"i": 0, "j": 3, "rank": 1}]
    json.loads(render(report, "json"))


def table_entries(text):
    lines = text.splitlines()
    start = lines.index("H^{i,j} (d-cohomology)") + 2
    out = []
    for line in lines[start:]:
        if not line.strip():
            break
        out.append(tuple(int(x) for x in line.split()))
    return sorted(out)


@pytest.mark.parametrize("G", [complete_graph(3), cycle_graph(4), complete_graph(4)], ids=repr)
def test_renderings_agree(G):
    report = build_report(G, checks="none")
    from_json = sorted((r["i"], r["j"], r["dim"]) for r in json.loads(render(report, "json"))["betti"])
    assert table_entries(render(report, "table")) == from_json
    csv_rows = [line.split(",") for line in render(report, "csv").splitlines()[1:]]
    assert sorted((int(r[1]), int(r[2]), int(r[3])) for r in csv_rows if r[0] == "betti") == from_json


def test_json_output_is_stable(c4):
    assert render(build_report(c4), "json") == render(build_report(c4), "json")


def test_unknown_format(k3):
    with pytest.raises(ValueError):
        render(build_report(k3, algebra="d"), "xml")
    with pytest.raises(ValueError):
        build_report(k3, algebra="e")
