"""Minimal Matrix Market coordinate-format reader."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .errors import ParseError

__all__ = ["load_matrix_market"]

_FIELDS = ("real", "integer", "pattern")
_SYMMETRIES = ("general", "symmetric")


def load_matrix_market(path):
    """Read a coordinate-format Matrix Market file.

    Supports real/integer/pattern fields with general or symmetric
    symmetry. Duplicate entries are summed; symmetric storage is expanded
    to both triangles.

    Returns
    -------
    scipy.sparse.csr_matrix

    Raises
    ------
    ParseError
        With the offending line number on malformed input.
    OSError
        If the file cannot be read.
    """
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.readlines()

    if not lines:
        raise ParseError(1, "empty file")
    header = lines[0].strip().split()
    if len(header) != 5 or header[0] != "%%MatrixMarket":
        raise ParseError(1, "missing %%MatrixMarket header")
    _, obj, fmt, field, symmetry = (h.lower() for h in header)
    if obj != "matrix" or fmt != "coordinate":
        raise ParseError(1, f"unsupported object/format {obj}/{fmt}")
    if field not in _FIELDS:
        raise ParseError(1, f"unsupported field {field}")
    if symmetry not in _SYMMETRIES:
        raise ParseError(1, f"unsupported symmetry {symmetry}")

    size_lineno = None
    for lineno, raw in enumerate(lines[1:], start=2):
        text = raw.strip()
        if not text or text.startswith("%"):
            continue
        size_lineno = lineno
        break
    if size_lineno is None:
        raise ParseError(len(lines), "missing size line")
    parts = lines[size_lineno - 1].split()
    if len(parts) != 3:
        raise ParseError(size_lineno, f"size line needs 3 integers, got {len(parts)}")
    try:
        n_row, n_col, nnz = (int(x) for x in parts)
    except ValueError:
        raise ParseError(size_lineno, f"bad size line {parts!r}") from None

    rows = []
    cols = []
    vals = []
    entries_read = 0
    n_fields = 2 if field == "pattern" else 3
    lineno = size_lineno
    for lineno, raw in enumerate(lines[size_lineno:], start=size_lineno + 1):
        text = raw.strip()
        if not text or text.startswith("%"):
            continue
        parts = text.split()
        if len(parts) != n_fields:
            raise ParseError(lineno, f"entry needs {n_fields} fields, got {len(parts)}")
        try:
            i = int(parts[0])
            j = int(parts[1])
            v = 1.0 if field == "pattern" else float(parts[2])
        except ValueError:
            raise ParseError(lineno, f"bad entry {text!r}") from None
        if not (1 <= i <= n_row and 1 <= j <= n_col):
            raise ParseError(lineno, f"index ({i},{j}) outside {n_row}x{n_col}")
        entries_read += 1
        rows.append(i - 1)
        cols.append(j - 1)
        vals.append(v)
        if symmetry == "symmetric" and i != j:
            rows.append(j - 1)
            cols.append(i - 1)
            vals.append(v)

    if entries_read != nnz:
        raise ParseError(lineno, f"expected {nnz} entries, read {entries_read}")

    a = sp.coo_matrix(
        (np.asarray(vals, dtype=np.float64), (rows, cols)), shape=(n_row, n_col)
    ).tocsr()
    a.sum_duplicates()
    return a
