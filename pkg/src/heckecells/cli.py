"""Command-line frontend.

Subcommands: cells, cellmatrix, gamma, fusion, classify, table, verify,
selftest.  Delimited output (markdown, TSV or JSON) goes to stdout; with
--out DIR the same text is written to a file and report-style commands
also render a matplotlib figure next to it.  --cache DIR (or the
HECKE_CELLS_CACHE environment variable) persists KL tables between runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .asymptotic import build_fusion_ring, fusion_graph, is_commutative, pf_dimensions
from .budget import Budget
from .cache import read_cache, write_cache
from .cells import CellDecomposition, verify_cell_rep_identities, verify_lusztig_properties
from .classify import classification_records
from .coxeter import CoxeterType, build_system
from .errors import (
    BudgetExceeded,
    CorruptCache,
    HeckeCellsError,
    PropertyViolation,
    UnrecognizedRing,
    UnsupportedType,
    VersionMismatch,
)
from .hecke import HeckeTable

_EXIT_CODES = {
    UnsupportedType: 2,
    BudgetExceeded: 3,
    PropertyViolation: 4,
    CorruptCache: 5,
    VersionMismatch: 5,
    UnrecognizedRing: 6,
}


def _budget(args) -> Budget:
    if args.budget:
        return Budget(
            max_elements=args.budget,
            max_h_entries=max(50_000_000, 5000 * args.budget),
            wall_clock_seconds=24 * 3600,
        )
    return Budget()


def _load(type_str: str, args) -> CellDecomposition:
    budget = _budget(args)
    system = build_system(type_str, budget)
    cache_dir = args.cache or os.environ.get("HECKE_CELLS_CACHE")
    hecke = None
    if cache_dir:
        path = os.path.join(cache_dir, f"{system.type}.klc")
        if os.path.exists(path):
            hecke = HeckeTable.from_cache(system, read_cache(path), budget)
    if hecke is None:
        hecke = HeckeTable(system, budget, jobs=args.jobs)
        if cache_dir:
            os.makedirs(cache_dir, exist_ok=True)
            write_cache(os.path.join(cache_dir, f"{system.type}.klc"), hecke.export_cache())
    return CellDecomposition(hecke)


def _resolve_cell(cells: CellDecomposition, token: str) -> int:
    for j, name in cells.cell_names.items():
        if name == token:
            return j
    try:
        idx = int(token)
    except ValueError:
        raise UnsupportedType(f"no two-sided cell named {token!r}") from None
    if not 0 <= idx < len(cells.display_order):
        raise UnsupportedType(f"cell index {idx} out of range")
    return cells.display_order[idx]


def _pick_h_cell(cells: CellDecomposition, j: int, hcell: int | None) -> list[int]:
    cm = cells.cell_matrix(j)
    order = sorted(range(len(cm.classes)), key=lambda i: (cm.block_scalars[i][i], i))
    ci = order[0] if hcell is None else hcell
    if not 0 <= ci < len(cm.classes):
        raise UnsupportedType(f"H-cell class index {ci} out of range")
    return cells.diagonal_h_cell(cm.classes[ci][0])


def _emit(args, stem: str, rows, columns, figure=None) -> None:
    from .report import render_table, write_report

    text = render_table(rows, columns, args.format)
    print(text)
    if args.out:
        write_report(args.out, stem, text, args.format)
        if figure is not None:
            figure(args.out)


def _cells_rows(cells: CellDecomposition) -> list[dict]:
    return [
        {
            "cell": cells.cell_names[j],
            "size": len(cells.two_cells[j]),
            "a": cells.a_of_cell[j],
        }
        for j in cells.display_order
    ]


def cmd_cells(args) -> int:
    cells = _load(args.type, args)
    rows = _cells_rows(cells)

    def figure(out_dir):
        from .report import render_cells_figure

        render_cells_figure(
            rows, f"{cells.system.type}: two-sided cells",
            os.path.join(out_dir, f"cells-{cells.system.type}.png"),
        )

    if args.format == "json":
        # full decomposition payload: Duflo ids, left-cell counts, order pairs
        text = json.dumps(cells.to_json(), indent=2)
        print(text)
        if args.out:
            from .report import write_report

            write_report(args.out, f"cells-{cells.system.type}", text, "json")
            figure(args.out)
        return 0
    _emit(args, f"cells-{cells.system.type}", rows, ["cell", "size", "a"], figure)
    return 0


def cmd_cellmatrix(args) -> int:
    cells = _load(args.type, args)
    j = _resolve_cell(cells, args.cell)
    cm = cells.cell_matrix(j)
    if args.format == "json":
        print(json.dumps(cm.to_json(), indent=2))
        if args.out:
            from .report import write_report

            write_report(args.out, f"cellmatrix-{cells.system.type}-{args.cell}",
                         json.dumps(cm.to_json(), indent=2), "json")
    else:
        rows = [
            {
                "block": f"{cm.class_sizes[i]} left cells",
                **{
                    f"c{j2}({cm.class_sizes[j2]})": f"{cm.block_scalars[i][j2]}_{{{cm.class_sizes[i]},{cm.class_sizes[j2]}}}"
                    for j2 in range(len(cm.classes))
                },
            }
            for i in range(len(cm.classes))
        ]
        cols = ["block"] + [f"c{i}({cm.class_sizes[i]})" for i in range(len(cm.classes))]
        _emit(args, f"cellmatrix-{cells.system.type}-{args.cell}", rows, cols)
    if args.out:
        from .report import render_cell_matrix_figure

        render_cell_matrix_figure(
            cm.block_scalars, cm.class_sizes,
            f"{cells.system.type} cell {cells.cell_names[j]} (size {cm.total})",
            os.path.join(args.out, f"cellmatrix-{cells.system.type}-{args.cell}.png"),
        )
    return 0


def cmd_gamma(args) -> int:
    cells = _load(args.type, args)
    j = _resolve_cell(cells, args.cell)
    H = _pick_h_cell(cells, j, args.hcell)
    ring = build_fusion_ring(cells, H)
    if args.format == "json":
        print(json.dumps(ring.to_json(), indent=2))
        if args.out:
            from .report import write_report

            write_report(args.out, f"gamma-{cells.system.type}-{args.cell}",
                         json.dumps(ring.to_json(), indent=2), "json")
        return 0
    rows = [
        {"x": ring.basis[x], "y": ring.basis[y], "z": ring.basis[z], "gamma": ring.structure[x][y][z]}
        for x in range(ring.rank)
        for y in range(ring.rank)
        for z in range(ring.rank)
        if ring.structure[x][y][z]
    ]
    _emit(args, f"gamma-{cells.system.type}-{args.cell}", rows, ["x", "y", "z", "gamma"])
    return 0


def cmd_fusion(args) -> int:
    cells = _load(args.type, args)
    j = _resolve_cell(cells, args.cell)
    H = _pick_h_cell(cells, j, args.hcell)
    ring = build_fusion_ring(cells, H)
    rows = [
        {
            "basis": ring.basis[i],
            "dual": ring.basis[ring.duality[i]],
            "unit": i == ring.unit,
        }
        for i in range(ring.rank)
    ]
    cols = ["basis", "dual", "unit"]
    dims = None
    if args.pf:
        dims = pf_dimensions(ring)
        for i, row in enumerate(rows):
            row["pf_dim"] = f"{dims[ring.basis[i]]:.9f}"
        cols.append("pf_dim")
        total = sum(v * v for v in dims.values())
        print(f"# commutative: {is_commutative(ring)}   total PF dimension: {total:.9f}",
              file=sys.stderr)
    _emit(args, f"fusion-{cells.system.type}-{args.cell}", rows, cols)
    if args.graph:
        dims = dims or pf_dimensions(ring)
        gen = max(range(ring.rank), key=lambda i: dims[ring.basis[i]])
        graph = fusion_graph(ring, gen)
        print(graph.to_dot())
        if args.out:
            os.makedirs(args.out, exist_ok=True)
            stem = f"fusion-{cells.system.type}-{args.cell}"
            with open(os.path.join(args.out, f"{stem}.dot"), "w") as fh:
                fh.write(graph.to_dot() + "\n")
            from .report import render_fusion_graph_figure

            render_fusion_graph_figure(
                graph,
                f"{cells.system.type} cell {cells.cell_names[j]}: graph of {graph.generator}",
                os.path.join(args.out, f"{stem}.png"),
            )
    return 0


def cmd_classify(args) -> int:
    cells = _load(args.type, args)
    recs = classification_records(cells, with_reps=args.reps)
    if args.format == "json":
        print(json.dumps([r.to_json() for r in recs], indent=2))
        return 0
    rows = []
    for r in recs:
        rows.append(
            {
                "cell": r.cell_name,
                "size": r.size,
                "a": r.a,
                "A_H": "skipped" if r.skipped else r.tag.display(),
                "reps": "open" if (r.tag and r.tag.open) else (
                    ", ".join(f"{s.label} (rk {s.rank})" for s in r.reps) if args.reps else ""
                ),
            }
        )
    cols = ["cell", "size", "a", "A_H"] + (["reps"] if args.reps else [])
    _emit(args, f"classify-{cells.system.type}", rows, cols)
    return 0


def cmd_table(args) -> int:
    cells = _load(args.type, args)
    recs = classification_records(cells)
    rows = [
        {
            "cell": r.cell_name,
            "size": r.size,
            "a": r.a,
            "A_H": "skipped" if r.skipped else r.tag.display(),
        }
        for r in recs
    ]

    def figure(out_dir):
        from .report import render_cells_figure

        render_cells_figure(
            rows, f"{cells.system.type}: classification table",
            os.path.join(out_dir, f"table-{cells.system.type}.png"),
        )

    _emit(args, f"table-{cells.system.type}", rows, ["cell", "size", "a", "A_H"], figure)
    return 0


_PROP_ALIASES = {
    "P2": "P2", "P5": "P5", "P7": "P7",
    "magic": "magic", "bar": "bar", "sym": "sym",
}


def cmd_verify(args) -> int:
    cells = _load(args.type, args)
    props = tuple(_PROP_ALIASES[p.strip()] for p in args.props.split(",")) if args.props \
        else ("bar", "sym", "P2", "P5", "P7", "magic")
    targets = (
        [_resolve_cell(cells, args.cell)] if args.cell else list(range(len(cells.two_cells)))
    )
    reports = []
    for j in targets:
        reports.append(verify_lusztig_properties(cells, j, props=props))
        if args.hcells:
            reports.extend(
                verify_cell_rep_identities(cells, L) for L in cells.left_cells_of(j)
            )
    if args.format == "json":
        print(json.dumps([r.to_json() for r in reports], indent=2))
    else:
        for rep in reports:
            for line in rep.lines():
                print(line)
    return 0 if all(r.ok for r in reports) else 1


def cmd_selftest(args) -> int:
    from .acceptance import run_acceptance

    numbers = [int(x) for x in args.only.split(",")] if args.only else None
    results = run_acceptance(
        numbers=numbers,
        stretch=args.stretch or args.with_b6,
        stretch_b6=args.with_b6,
        verbose=print,
    )
    return 0 if all(r.ok for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heckecells",
        description="Kazhdan-Lusztig cells, asymptotic fusion rings and "
        "2-representation classification tables for finite Coxeter types.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_type=True):
        if with_type:
            p.add_argument("type", help='type descriptor, e.g. A3, B6, F4, H3, "I2(7)"')
        p.add_argument("--format", choices=("md", "tsv", "json"), default="md")
        p.add_argument("--out", help="directory for delimited output and figures")
        p.add_argument("--cache", help="cache directory (or HECKE_CELLS_CACHE)")
        p.add_argument("--budget", type=int, help="element budget override")
        p.add_argument("--jobs", type=int, default=1, help="worker threads for the KL table")

    p = sub.add_parser("cells", help="two-sided cell sizes and a-values")
    common(p)
    p.set_defaults(func=cmd_cells)

    p = sub.add_parser("cellmatrix", help="block cell matrix of one two-sided cell")
    common(p)
    p.add_argument("cell", help="cell index or name in table order (e.g. 5 or 2')")
    p.set_defaults(func=cmd_cellmatrix)

    p = sub.add_parser("gamma", help="gamma-ring structure constants of a diagonal H-cell")
    common(p)
    p.add_argument("cell")
    p.add_argument("--hcell", type=int, help="H-cell class index (default: smallest)")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("fusion", help="fusion ring of a diagonal H-cell")
    common(p)
    p.add_argument("cell")
    p.add_argument("--hcell", type=int)
    p.add_argument("--graph", action="store_true", help="emit the fusion graph (DOT)")
    p.add_argument("--pf", action="store_true", help="include Frobenius-Perron dimensions")
    p.set_defaults(func=cmd_fusion)

    p = sub.add_parser("classify", help="asymptotic category and 2-representations per cell")
    common(p)
    p.add_argument("--reps", action="store_true", help="list the simple transitives")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("table", help="classification table in appendix layout")
    common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run the structural identity checks")
    common(p)
    p.add_argument("--props", help="comma list from P2,P5,P7,magic,bar,sym")
    p.add_argument("--cell", help="restrict to one two-sided cell")
    p.add_argument("--hcells", action="store_true", help="also verify each diagonal H-cell")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest", help="run the acceptance criteria")
    common(p, with_type=False)
    p.add_argument("--only", help="comma list of criterion numbers")
    p.add_argument("--stretch", action="store_true",
                   help="include the stretch criterion (H4 cell 6; several minutes)")
    p.add_argument("--with-b6", action="store_true",
                   help="stretch including the B6 half (needs tens of GB of memory)")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HeckeCellsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_CODES.get(type(exc), 1)


if __name__ == "__main__":
    sys.exit(main())
