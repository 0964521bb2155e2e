import json

import pytest

from netcontrol import InputError, build_graph, gen_er_directed, gen_pa
from netcontrol.generators import DegreeSequence
from netcontrol.io import (
    parse_edge_list,
    read_degrees,
    read_json_graph,
    write_edge_list,
    write_json_graph,
)


def test_two_labels_one_edge(tmp_path):
    path = tmp_path / "g.tsv"
    path.write_text("a\tb\n")
    g, labels = parse_edge_list(path)
    assert g.n == 2 and g.edges == [(0, 1)]
    assert labels == ["a", "b"]


def test_duplicate_line_is_multi_edge(tmp_path):
    path = tmp_path / "g.tsv"
    path.write_text("a\tb\na\tb\n")
    g, _ = parse_edge_list(path)
    assert g.edges == [(0, 1), (0, 1)]


def test_self_line_is_loop(tmp_path):
    path = tmp_path / "g.tsv"
    path.write_text("# comment\na\ta\n")
    g, _ = parse_edge_list(path)
    assert g.n == 1 and g.edges == [(0, 0)]


def test_malformed_line_names_line_number(tmp_path):
    path = tmp_path / "g.tsv"
    path.write_text("a\tb\n# fine\nonly-one-field\n")
    with pytest.raises(InputError, match=":3:"):
        parse_edge_list(path)


def test_empty_file_gives_empty_graph(tmp_path):
    path = tmp_path / "g.tsv"
    path.write_text("")
    g, labels = parse_edge_list(path)
    assert g.n == 0 and labels == []


@pytest.mark.parametrize(
    "graph",
    [
        gen_er_directed(300, 1.0, seed=5),  # has isolated vertices
        gen_pa(200, 2, 0.3, seed=1),
        build_graph(4, [(3, 3), (0, 3), (0, 3)]),
    ],
)
def test_tsv_round_trip_keeps_degrees(tmp_path, graph):
    path = tmp_path / "g.tsv"
    write_edge_list(graph, path)
    back, _ = parse_edge_list(path)
    assert back == graph
    assert back.out_degrees().tolist() == graph.out_degrees().tolist()
    assert back.in_degrees().tolist() == graph.in_degrees().tolist()


def test_json_round_trip(tmp_path):
    g = build_graph(3, [(0, 1), (2, 2)])
    path = tmp_path / "g.json"
    write_json_graph(g, path)
    assert json.loads(path.read_text()) == {"n": 3, "edges": [[0, 1], [2, 2]]}
    assert read_json_graph(path) == g


def test_read_degrees_formats(tmp_path):
    (tmp_path / "a.txt").write_text("3\n1\n2\n")
    (tmp_path / "b.txt").write_text("1 0\n0 1\n")
    (tmp_path / "c.json").write_text("[2, 2]")
    (tmp_path / "d.json").write_text('{"out": [1, 0], "in": [0, 1]}')
    assert read_degrees(tmp_path / "a.txt") == DegreeSequence.total([3, 1, 2])
    assert read_degrees(tmp_path / "b.txt") == DegreeSequence.inout([1, 0], [0, 1])
    assert read_degrees(tmp_path / "c.json") == DegreeSequence.total([2, 2])
    assert read_degrees(tmp_path / "d.json") == DegreeSequence.inout([1, 0], [0, 1])
