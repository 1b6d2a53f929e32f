"""Table grids and their canonical HTML / raw-text renderings."""

from __future__ import annotations

import re
from dataclasses import dataclass, field


class TilingError(ValueError):
    """Raised when a grid's cells do not tile the rows x cols rectangle exactly."""

    def __init__(self, message: str, position: tuple[int, int] | None = None):
        super().__init__(message)
        self.position = position


@dataclass(frozen=True)
class Cell:
    row: int
    col: int
    text: str = ""
    row_span: int = 1
    col_span: int = 1


@dataclass(frozen=True)
class TableGrid:
    n_rows: int
    n_cols: int
    cells: tuple[Cell, ...] = field(default_factory=tuple)
    header_rows: int = 0

    def __post_init__(self):
        ordered = tuple(sorted(self.cells, key=lambda c: (c.row, c.col)))
        object.__setattr__(self, "cells", ordered)

    @classmethod
    def from_rows(cls, rows: list[list[str]], header_rows: int = 0) -> "TableGrid":
        """Build a span-free grid from a list of equal-length rows."""
        n_cols = max((len(r) for r in rows), default=0)
        cells = [
            Cell(r, c, text)
            for r, row in enumerate(rows)
            for c, text in enumerate(row)
        ]
        return cls(len(rows), n_cols, tuple(cells), header_rows)

    def anchors(self) -> list[Cell]:
        """Cells in row-major order of their top-left position."""
        return list(self.cells)

    def to_dict(self) -> dict:
        return {
            "n_rows": self.n_rows,
            "n_cols": self.n_cols,
            "header_rows": self.header_rows,
            "cells": [
                {
                    "row": c.row,
                    "col": c.col,
                    "row_span": c.row_span,
                    "col_span": c.col_span,
                    "text": c.text,
                }
                for c in self.anchors()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TableGrid":
        cells = tuple(
            Cell(
                row=int(c["row"]),
                col=int(c["col"]),
                text=str(c.get("text", "")),
                row_span=int(c.get("row_span", 1)),
                col_span=int(c.get("col_span", 1)),
            )
            for c in data["cells"]
        )
        n_rows, n_cols = int(data["n_rows"]), int(data["n_cols"])
        header_rows = data.get("header_rows")
        if header_rows is None:
            header_rows = infer_header_rows(cells)
        return cls(n_rows, n_cols, cells, int(header_rows))


_NUMERIC = re.compile(r"^[-+(]?[$€£¥]?\d[\d,]*(\.\d+)?%?\)?$|^[-+]?\.\d+%?$")


def is_numeric(text: str) -> bool:
    return bool(_NUMERIC.match(text.strip()))


def infer_header_rows(cells) -> int:
    """1 when every first-row cell is non-numeric, else 0."""
    first = [c for c in cells if c.row == 0]
    if first and not any(is_numeric(c.text) for c in first):
        return 1
    return 0


def check_tiling(grid: TableGrid) -> None:
    """Raise TilingError unless every grid position is covered exactly once."""
    if grid.n_rows < 1 or grid.n_cols < 1:
        raise TilingError(f"grid must be at least 1x1, got {grid.n_rows}x{grid.n_cols}")
    if not 0 <= grid.header_rows <= grid.n_rows:
        raise TilingError(f"header_rows={grid.header_rows} outside [0, {grid.n_rows}]")
    owner: dict[tuple[int, int], Cell] = {}
    for cell in grid.cells:
        if cell.row_span < 1 or cell.col_span < 1:
            raise TilingError(f"non-positive span at ({cell.row}, {cell.col})", (cell.row, cell.col))
        if (
            cell.row < 0
            or cell.col < 0
            or cell.row + cell.row_span > grid.n_rows
            or cell.col + cell.col_span > grid.n_cols
        ):
            raise TilingError(
                f"cell at ({cell.row}, {cell.col}) extends outside the "
                f"{grid.n_rows}x{grid.n_cols} grid",
                (cell.row, cell.col),
            )
        for r in range(cell.row, cell.row + cell.row_span):
            for c in range(cell.col, cell.col + cell.col_span):
                if (r, c) in owner:
                    raise TilingError(f"position ({r}, {c}) is covered twice", (r, c))
                owner[(r, c)] = cell
    for r in range(grid.n_rows):
        for c in range(grid.n_cols):
            if (r, c) not in owner:
                raise TilingError(f"position ({r}, {c}) is not covered", (r, c))


def escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def _rows(grid: TableGrid) -> list[list[Cell]]:
    rows: list[list[Cell]] = [[] for _ in range(grid.n_rows)]
    for cell in grid.anchors():
        rows[cell.row].append(cell)
    return rows


def _cell_tag(cell: Cell, tag: str) -> str:
    attrs = ""
    if cell.row_span > 1:
        attrs += f' rowspan="{cell.row_span}"'
    if cell.col_span > 1:
        attrs += f' colspan="{cell.col_span}"'
    return f"<{tag}{attrs}>{escape(cell.text)}</{tag}>"


def to_html(grid: TableGrid) -> str:
    """Render ``grid`` as single-line HTML.

    The first ``header_rows`` rows go in ``<thead>`` as ``<th>`` cells, the
    rest in ``<tbody>`` as ``<td>``. Positions covered by another cell's span
    emit nothing. A section with no rows is omitted.
    """
    check_tiling(grid)
    rows = _rows(grid)
    out = ['<table border="1">']
    head, body = rows[: grid.header_rows], rows[grid.header_rows :]
    for section, tag, cells_by_row in (("thead", "th", head), ("tbody", "td", body)):
        if not cells_by_row:
            continue
        out.append(f"<{section}>")
        for row in cells_by_row:
            out.append("<tr>" + "".join(_cell_tag(c, tag) for c in row) + "</tr>")
        out.append(f"</{section}>")
    out.append("</table>")
    return "".join(out)


def to_raw_text(grid: TableGrid) -> str:
    """One line per row, non-empty anchor texts separated by single spaces."""
    check_tiling(grid)
    return "\n".join(
        " ".join(c.text for c in row if c.text.strip()) for row in _rows(grid)
    )
