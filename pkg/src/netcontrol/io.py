"""Edge-list TSV, JSON graph and degree-sequence files."""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .errors import InputError
from .graph import DirectedMultigraph, build_graph

_HEADER = re.compile(r"^#\s*n\s*=\s*(\d+)\s*$")


def parse_edge_list(path: str | Path) -> tuple[DirectedMultigraph, list[str]]:
    """Read a ``tail<TAB>head`` file; returns the graph and the label of each vertex.

    Labels are remapped to ``0..n-1`` in order of first appearance. Files
    written by :func:`write_edge_list` start with a ``# n=<count>`` comment;
    when that header is present and every label is an integer below the
    count, ids are kept as-is so isolated vertices survive the round trip.
    """
    declared = None
    pairs: list[tuple[str, str]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\r\n")
            if line.startswith("#"):
                match = _HEADER.match(line)
                if match and declared is None and not pairs:
                    declared = int(match.group(1))
                continue
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) != 2 or not fields[0] or not fields[1]:
                raise InputError(f"{path}:{lineno}: expected 'tail<TAB>head', got {line!r}")
            pairs.append((fields[0], fields[1]))

    if declared is not None and all(_is_id(a, declared) and _is_id(b, declared) for a, b in pairs):
        edges = [(int(a), int(b)) for a, b in pairs]
        return build_graph(declared, edges), [str(i) for i in range(declared)]

    index: dict[str, int] = {}
    labels: list[str] = []
    edges = []
    for a, b in pairs:
        for label in (a, b):
            if label not in index:
                index[label] = len(labels)
                labels.append(label)
        edges.append((index[a], index[b]))
    return build_graph(len(labels), edges), labels


def _is_id(label: str, n: int) -> bool:
    return label.isdigit() and int(label) < n


def write_edge_list(graph: DirectedMultigraph, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# n={graph.n}\n")
        fh.writelines(f"{t}\t{h}\n" for t, h in zip(graph.tails, graph.heads))


def write_labels(labels: list[str], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.writelines(f"{i}\t{label}\n" for i, label in enumerate(labels))


def graph_to_json(graph: DirectedMultigraph) -> dict:
    return {"n": graph.n, "edges": [[t, h] for t, h in zip(graph.tails, graph.heads)]}


def graph_from_json(data: dict) -> DirectedMultigraph:
    try:
        n = int(data["n"])
        edges = [(int(t), int(h)) for t, h in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed JSON graph: {exc}") from exc
    return build_graph(n, edges)


def read_json_graph(path: str | Path) -> DirectedMultigraph:
    with open(path, encoding="utf-8") as fh:
        return graph_from_json(json.load(fh))


def write_json_graph(graph: DirectedMultigraph, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(graph_to_json(graph), fh)
        fh.write("\n")


def read_graph(path: str | Path) -> tuple[DirectedMultigraph, list[str]]:
    """Dispatch on suffix: ``.json`` graphs keep their ids, anything else is TSV."""
    if str(path).endswith(".json"):
        graph = read_json_graph(path)
        return graph, [str(i) for i in range(graph.n)]
    return parse_edge_list(path)


def read_degrees(path: str | Path):
    """Load a degree sequence.

    Accepted forms: a JSON array (total degrees), a JSON object with ``out``
    and ``in`` arrays, one integer per line (total degrees) or two integers
    per line ``out<whitespace>in``.
    """
    from .generators import DegreeSequence

    text = Path(path).read_text(encoding="utf-8")
    stripped = text.strip()
    if stripped.startswith("[") or stripped.startswith("{"):
        data = json.loads(stripped)
        if isinstance(data, list):
            return DegreeSequence.total(data)
        return DegreeSequence.inout(data["out"], data["in"])
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(x) for x in line.split()])
        except ValueError as exc:
            raise InputError(f"{path}:{lineno}: expected integers, got {line!r}") from exc
    widths = {len(r) for r in rows}
    if widths == {1}:
        return DegreeSequence.total([r[0] for r in rows])
    if widths == {2}:
        arr = np.array(rows)
        return DegreeSequence.inout(arr[:, 0], arr[:, 1])
    raise InputError(f"{path}: expected one or two integers per line")
