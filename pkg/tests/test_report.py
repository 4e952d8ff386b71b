import json

import pytest

from heckecells.asymptotic import FusionGraph
from heckecells.report import (
    render_cell_matrix_figure,
    render_cells_figure,
    render_fusion_graph_figure,
    render_table,
    write_report,
)

ROWS = [
    {"cell": "0", "size": 1, "a": 0},
    {"cell": "1", "size": 18, "a": 1},
]


def test_tsv():
    text = render_table(ROWS, ["cell", "size", "a"], "tsv")
    assert text.splitlines() == ["cell\tsize\ta", "0\t1\t0", "1\t18\t1"]


def test_markdown_alignment():
    text = render_table(ROWS, ["cell", "size", "a"], "md")
    lines = text.splitlines()
    assert lines[0].startswith("| cell") and set(lines[1]) <= {"|", "-"}
    assert len({len(l) for l in lines}) == 1


def test_json():
    assert json.loads(render_table(ROWS, ["cell"], "json")) == ROWS


def test_unknown_format():
    with pytest.raises(ValueError):
        render_table(ROWS, ["cell"], "xml")


def test_write_report(tmp_path):
    path = write_report(str(tmp_path), "t", "a\tb", "tsv")
    assert open(path).read() == "a\tb\n"


def test_figures_render(tmp_path):
    p1 = render_cells_figure(ROWS, "test", str(tmp_path / "cells.png"))
    p2 = render_cell_matrix_figure(
        [[5, 3], [3, 5]], [3, 3], "test", str(tmp_path / "matrix.png")
    )
    graph = FusionGraph(
        labels=("d", "x", "y"),
        adjacency=((0, 1, 0), (1, 1, 1), (0, 1, 0)),
        star=0,
    )
    p3 = render_fusion_graph_figure(graph, "test", str(tmp_path / "graph.png"))
    for p in (p1, p2, p3):
        with open(p, "rb") as fh:
            assert fh.read(8).startswith(b"\x89PNG")
