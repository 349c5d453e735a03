"""Load CSV and JSON files into an immutable columnar table.

Cells are kept as raw strings; a None cell is the null marker. Cells equal to
one of the configured null tokens become null during loading, so every later
stage sees the same representation regardless of the input format.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ParseError, RaggedRows, UnknownFormat, UnreadablePath

DEFAULT_NULL_TOKENS: tuple[str, ...] = ("", "NULL", "null", "NaN", "NA")

_SCALAR_JSON_TYPES = (str, int, float, bool, type(None))


@dataclass(frozen=True)
class IngestOptions:
    delimiter: str = ","
    null_tokens: tuple[str, ...] = DEFAULT_NULL_TOKENS
    has_header: bool = True

    def __post_init__(self):
        if len(self.delimiter) != 1:
            raise ValueError("delimiter must be a single character")


@dataclass(frozen=True)
class Column:
    """A named column of raw string cells; None marks a null."""

    name: str
    cells: tuple[str | None, ...]

    def __len__(self) -> int:
        return len(self.cells)

    def non_null(self) -> list[str]:
        return [c for c in self.cells if c is not None]

    @property
    def null_count(self) -> int:
        return sum(1 for c in self.cells if c is None)


@dataclass(frozen=True)
class Table:
    """An immutable collection of equally long, uniquely named columns."""

    name: str
    columns: tuple[Column, ...]
    row_count: int

    def __post_init__(self):
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate column names in table {self.name!r}")
        for col in self.columns:
            if len(col) != self.row_count:
                raise ValueError(
                    f"column {col.name!r} has {len(col)} cells, expected {self.row_count}"
                )

    @property
    def column_names(self) -> list[str]:
        return [c.name for c in self.columns]

    def column(self, name: str) -> Column:
        for col in self.columns:
            if col.name == name:
                return col
        raise KeyError(name)


def _apply_null_tokens(cell: str, null_tokens: Sequence[str]) -> str | None:
    return None if cell in null_tokens else cell


def detect_format(path: str | Path) -> str:
    """Return "csv" or "json" for the file at path.

    Extension wins; otherwise the first bytes are sniffed. Binary or
    undecidable content raises UnknownFormat.
    """
    p = Path(path)
    try:
        if not p.is_file():
            raise UnreadablePath(f"not a readable file: {p}")
        chunk = p.open("rb").read(4096)
    except OSError as exc:
        raise UnreadablePath(f"cannot read {p}: {exc}") from exc

    suffix = p.suffix.lower()
    if suffix == ".csv":
        return "csv"
    if suffix == ".json":
        return "json"

    if b"\x00" in chunk:
        raise UnknownFormat(f"binary content in {p}")
    try:
        text = chunk.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise UnknownFormat(f"undecodable content in {p}") from exc

    stripped = text.lstrip()
    if stripped.startswith("[") or stripped.startswith("{"):
        return "json"
    first_line = stripped.splitlines()[0] if stripped.splitlines() else ""
    if "," in first_line or ";" in first_line:
        return "csv"
    raise UnknownFormat(f"cannot detect format of {p}")


def load_source(
    path: str | Path,
    fmt: str | None = None,
    options: IngestOptions | None = None,
) -> Table:
    """Load a CSV or JSON file into a Table.

    fmt may be "csv", "json", or None for auto-detection.
    """
    opts = options or IngestOptions()
    p = Path(path)
    fmt = fmt or detect_format(p)
    if fmt not in ("csv", "json"):
        raise UnknownFormat(f"unsupported format {fmt!r}")
    try:
        if fmt == "csv":
            with p.open("r", encoding="utf-8-sig", newline="") as fh:
                return _load_csv(fh, p.stem, opts)
        with p.open("r", encoding="utf-8-sig") as fh:
            return _load_json(fh, p.stem, opts)
    except OSError as exc:
        raise UnreadablePath(f"cannot read {p}: {exc}") from exc


def _load_csv(fh, name: str, opts: IngestOptions) -> Table:
    reader = csv.reader(fh, delimiter=opts.delimiter)
    try:
        rows = list(reader)
    except csv.Error as exc:
        raise ParseError(f"malformed CSV: {exc}", line=reader.line_num)

    if not rows:
        raise ParseError("empty CSV file: no header row")

    if opts.has_header:
        header = rows[0]
        data_rows = rows[1:]
    else:
        header = [f"col{i + 1}" for i in range(len(rows[0]))]
        data_rows = rows
    if len(set(header)) != len(header):
        raise ParseError("duplicate column names in header")

    width = len(header)
    cells_by_col: list[list[str | None]] = [[] for _ in range(width)]
    offset = 2 if opts.has_header else 1
    for i, row in enumerate(data_rows):
        if len(row) != width:
            raise RaggedRows(
                f"row has {len(row)} fields, expected {width}", line=i + offset
            )
        for j, cell in enumerate(row):
            cells_by_col[j].append(_apply_null_tokens(cell, opts.null_tokens))

    columns = tuple(
        Column(name=header[j], cells=tuple(cells_by_col[j])) for j in range(width)
    )
    return Table(name=name, columns=columns, row_count=len(data_rows))


def _json_cell(value, null_tokens: Sequence[str], index: int) -> str | None:
    if value is None:
        return None
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return _apply_null_tokens(value, null_tokens)
    if isinstance(value, (int, float)):
        return repr(value) if isinstance(value, float) else str(value)
    raise ParseError(
        f"nested value of type {type(value).__name__} in object {index}; "
        "only arrays of flat objects are supported"
    )


def _load_json(fh, name: str, opts: IngestOptions) -> Table:
    try:
        data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", line=exc.lineno)

    if not isinstance(data, list):
        raise ParseError("JSON input must be an array of flat objects")

    # Column set is the union of keys, in first-seen order.
    names: list[str] = []
    seen: set[str] = set()
    for i, obj in enumerate(data):
        if not isinstance(obj, dict):
            raise ParseError(f"array element {i} is not an object")
        for key in obj:
            if key not in seen:
                seen.add(key)
                names.append(key)

    cells_by_col: dict[str, list[str | None]] = {n: [] for n in names}
    for i, obj in enumerate(data):
        for n in names:
            value = obj.get(n)
            if not isinstance(value, _SCALAR_JSON_TYPES):
                raise ParseError(
                    f"nested value under key {n!r} in object {i}; "
                    "only arrays of flat objects are supported"
                )
            cells_by_col[n].append(_json_cell(value, opts.null_tokens, i))

    columns = tuple(Column(name=n, cells=tuple(cells_by_col[n])) for n in names)
    return Table(name=name, columns=columns, row_count=len(data))


def write_csv(table: Table, path: str | Path, options: IngestOptions | None = None) -> None:
    """Write a table back to CSV; null cells become the first null token."""
    opts = options or IngestOptions()
    null_repr = opts.null_tokens[0] if opts.null_tokens else ""
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter=opts.delimiter)
        writer.writerow(table.column_names)
        for i in range(table.row_count):
            writer.writerow(
                [
                    col.cells[i] if col.cells[i] is not None else null_repr
                    for col in table.columns
                ]
            )
