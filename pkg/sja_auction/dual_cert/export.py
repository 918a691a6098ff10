"""CSV export of colorings: one row per cell with its indices and color."""

from __future__ import annotations

import csv
import io
from typing import Iterator, List

import numpy as np

from .coloring import GridColoring


def coloring_header(m: int) -> List[str]:
    return [f"i{j + 1}" for j in range(m)] + ["color"]


def coloring_rows(coloring: GridColoring) -> Iterator[List[int]]:
    """Cells in C order; index i along axis j covers [i/N, (i+1)/N]."""
    for cell in np.ndindex(*coloring.grid.shape):
        yield [*cell, int(coloring.color[cell])]


def coloring_csv(coloring: GridColoring) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(coloring_header(coloring.grid.m))
    writer.writerows(coloring_rows(coloring))
    return buffer.getvalue()
