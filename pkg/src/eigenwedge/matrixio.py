"""Reading and writing matrix documents.

JSON form::

    {"mode": "float", "rows": 2, "cols": 2, "entries": [[1, 0], [2, 0], [3, 0], [4, 0]]}
    {"mode": "exact", "rows": 2, "cols": 2, "entries": ["1", "1/2", "-3+2i", "0"]}

Float entries are ``[re, im]`` pairs, exact entries are strings.  Entries are
row-major.  Plain-text form: a header line ``m n [exact|float]`` followed by
m lines of n whitespace-separated entries; complex values are written
``a+bi``.  Without a mode tag the text is exact when every entry is a
rational literal.
"""

from __future__ import annotations

import io
import json
import os
from pathlib import Path

from .errors import ParseError, ShapeError
from .matrix import Matrix
from .scalars import EXACT, FLOAT, MODES, format_scalar, parse_exact, to_scalar

__all__ = ["parse_matrix_file", "parse_matrix_text", "serialize_matrix"]


def parse_matrix_file(source, mode: str | None = None) -> Matrix:
    """Load a matrix from a path, ``"-"`` (stdin) or an open text stream."""
    if hasattr(source, "read"):
        text = source.read()
    elif str(source) == "-":
        import sys

        text = sys.stdin.read()
    else:
        text = Path(os.fspath(source)).read_text(encoding="utf-8")
    return parse_matrix_text(text, mode)


def parse_matrix_text(text: str, mode: str | None = None) -> Matrix:
    A = _parse_json(text) if text.lstrip().startswith("{") else _parse_plain(text)
    return A if mode is None else A.to_mode(mode)


def _parse_json(text: str) -> Matrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("matrix document must be a JSON object")
    missing = [key for key in ("mode", "rows", "cols", "entries") if key not in doc]
    if missing:
        raise ParseError(f"missing field(s): {', '.join(missing)}")
    mode, m, n, entries = doc["mode"], doc["rows"], doc["cols"], doc["entries"]
    if mode not in MODES:
        raise ParseError(f"mode must be one of {MODES}, got {mode!r}")
    if not (isinstance(m, int) and isinstance(n, int) and m >= 0 and n >= 0):
        raise ParseError("rows and cols must be non-negative integers")
    if not isinstance(entries, list):
        raise ParseError("entries must be a list")
    if len(entries) != m * n:
        raise ShapeError(f"{len(entries)} entries for a {m}x{n} matrix")
    values = []
    for pos, e in enumerate(entries):
        if mode == FLOAT:
            if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, (int, float)) for x in e)):
                raise ParseError(f"float entry {pos} must be a [re, im] pair, got {e!r}")
            values.append(to_scalar(complex(e[0], e[1]), FLOAT))
        else:
            if isinstance(e, int) and not isinstance(e, bool):
                e = str(e)
            if not isinstance(e, str):
                raise ParseError(f"exact entry {pos} must be a string like '1/2' or '1/2+3i', got {e!r}")
            values.append(parse_exact(e))
    return Matrix._wrap([values[i * n:(i + 1) * n] for i in range(m)], mode)


def _parse_plain(text: str) -> Matrix:
    lines = [(no, ln.split()) for no, ln in enumerate(text.splitlines(), start=1)]
    lines = [(no, toks) for no, toks in lines if toks and not toks[0].startswith("#")]
    if not lines:
        raise ParseError("empty matrix document", 1)
    no, head = lines[0]
    if len(head) not in (2, 3):
        raise ParseError("header must be 'm n' or 'm n mode'", no, 1)
    try:
        m, n = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("header dimensions must be integers", no, 1) from None
    mode = head[2] if len(head) == 3 else None
    if mode is not None and mode not in MODES:
        raise ParseError(f"unknown mode {mode!r}", no, len(head[0]) + len(head[1]) + 3)
    body = lines[1:]
    if len(body) != m:
        raise ShapeError(f"{len(body)} rows for a {m}x{n} matrix")
    for no, toks in body:
        if len(toks) != n:
            raise ShapeError(f"line {no}: {len(toks)} entries, expected {n}")
    if mode is None:
        mode = EXACT
        for _, toks in body:
            for tok in toks:
                try:
                    parse_exact(tok)
                except ParseError:
                    mode = FLOAT
    rows = []
    for no, toks in body:
        row = []
        for tok in toks:
            try:
                if mode == EXACT:
                    row.append(parse_exact(tok))
                else:
                    row.append(to_scalar(tok.replace("i", "j"), FLOAT))
            except (ParseError, ValueError) as exc:
                raise ParseError(f"bad entry {tok!r}: {exc}", no, _column_of(text, no, tok)) from None
        rows.append(row)
    return Matrix._wrap(rows, mode)


def _column_of(text: str, line_no: int, token: str) -> int:
    line = text.splitlines()[line_no - 1]
    return line.find(token) + 1


def serialize_matrix(A: Matrix, fmt: str = "json") -> str:
    """Inverse of :func:`parse_matrix_text`."""
    if fmt == "json":
        if A.mode == FLOAT:
            entries = [[a.real, a.imag] for a in A.entries()]
        else:
            entries = [format_scalar(a) for a in A.entries()]
        return json.dumps({"mode": A.mode, "rows": A.nrows, "cols": A.ncols, "entries": entries})
    if fmt == "text":
        out = io.StringIO()
        out.write(f"{A.nrows} {A.ncols} {A.mode}\n")
        for i in range(A.nrows):
            out.write(" ".join(format_scalar(a) for a in A.row(i)) + "\n")
        return out.getvalue()
    raise ValueError(f"unknown format {fmt!r}")
