"""Attribute category inference and typed parsing.

Categories are decided by a fixed cascade over the non-null cells:
numeric (integer, then decimal), categorical (few distinct values),
datetime (tolerated parse-failure rate), textual (when string processing
is enabled), otherwise unrecognized. Nulls never influence the decision.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import datetime
from enum import Enum

from .errors import IncompatibleCategory
from .ingest import Column


class AttributeCategory(str, Enum):
    INTEGER = "integer"
    DECIMAL = "decimal"
    CATEGORICAL = "categorical"
    DATETIME = "datetime"
    TEXTUAL = "textual"
    UNRECOGNIZED = "unrecognized"

    def __str__(self) -> str:  # cleaner CLI and report output
        return self.value


NUMERIC_CATEGORIES = (AttributeCategory.INTEGER, AttributeCategory.DECIMAL)


@dataclass(frozen=True)
class TypingConfig:
    cat_thr: int = 20
    date_thr: float = 0.05
    string_proc: bool = True
    day_first: bool = True
    # Optional fraction of non-null cells; when set, a column is also
    # categorical if distinct <= cat_thr_relative * non_null.
    cat_thr_relative: float | None = None

    def __post_init__(self):
        if self.cat_thr < 1:
            raise ValueError("cat_thr must be >= 1")
        if not (0 < self.date_thr <= 1):
            raise ValueError("date_thr must be in (0, 1]")
        if self.cat_thr_relative is not None and not (0 < self.cat_thr_relative <= 1):
            raise ValueError("cat_thr_relative must be in (0, 1]")


@dataclass(frozen=True)
class CategoryDecision:
    category: AttributeCategory
    all_null: bool = False


@dataclass(frozen=True)
class TypedColumn:
    """Parsed values aligned with the original rows; None marks a null."""

    name: str
    category: AttributeCategory
    values: tuple
    null_count: int

    def __len__(self) -> int:
        return len(self.values)

    def non_null(self) -> list:
        return [v for v in self.values if v is not None]


_INT_RE = re.compile(r"[+-]?\d+\Z")
_NUM_RE = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?\Z")

_SLASH_DATE_DAY_FIRST = "%d/%m/%Y"
_SLASH_DATE_MONTH_FIRST = "%m/%d/%Y"


def is_integer_token(cell: str) -> bool:
    return _INT_RE.match(cell.strip()) is not None


def is_numeric_token(cell: str) -> bool:
    return _NUM_RE.match(cell.strip()) is not None


def parse_datetime_token(cell: str, day_first: bool = True) -> datetime | None:
    """Parse one cell as a date or timestamp; None when it does not parse.

    Accepts ISO-8601 dates and datetimes plus slash-separated dates, whose
    ambiguous order is resolved by day_first.
    """
    s = cell.strip()
    if not s:
        return None
    if s.endswith(("Z", "z")):
        s = s[:-1] + "+00:00"
    try:
        return datetime.fromisoformat(s)
    except ValueError:
        pass
    fmt = _SLASH_DATE_DAY_FIRST if day_first else _SLASH_DATE_MONTH_FIRST
    try:
        return datetime.strptime(s, fmt)
    except ValueError:
        return None


def _is_categorical(distinct: int, non_null: int, config: TypingConfig) -> bool:
    if distinct <= config.cat_thr:
        return True
    if config.cat_thr_relative is not None:
        return distinct <= config.cat_thr_relative * non_null
    return False


def infer_category(column: Column, config: TypingConfig | None = None) -> CategoryDecision:
    """Classify a column by the typing cascade.

    The decision depends only on the multiset of non-null cells, so cell
    order and added nulls never change it. An all-null column is reported
    as unrecognized with the all_null flag set instead of an error.
    """
    cfg = config or TypingConfig()
    cells = column.non_null()
    if not cells:
        return CategoryDecision(AttributeCategory.UNRECOGNIZED, all_null=True)

    if all(is_numeric_token(c) for c in cells):
        if all(is_integer_token(c) for c in cells):
            return CategoryDecision(AttributeCategory.INTEGER)
        return CategoryDecision(AttributeCategory.DECIMAL)

    if _is_categorical(len(set(cells)), len(cells), cfg):
        return CategoryDecision(AttributeCategory.CATEGORICAL)

    failures = sum(1 for c in cells if parse_datetime_token(c, cfg.day_first) is None)
    if failures / len(cells) <= cfg.date_thr:
        return CategoryDecision(AttributeCategory.DATETIME)

    if cfg.string_proc:
        return CategoryDecision(AttributeCategory.TEXTUAL)
    return CategoryDecision(AttributeCategory.UNRECOGNIZED)


def parse_typed(
    column: Column,
    category: AttributeCategory,
    config: TypingConfig | None = None,
) -> TypedColumn:
    """Parse raw cells under the given category.

    Datetime cells that fail to parse become nulls, tolerated up to
    date_thr. Numeric categories tolerate no failures; a failure means the
    category was forced onto incompatible data.
    """
    cfg = config or TypingConfig()
    cells = column.cells
    values: list = []

    if category is AttributeCategory.INTEGER or category is AttributeCategory.DECIMAL:
        integer = category is AttributeCategory.INTEGER
        failures = 0
        for c in cells:
            if c is None:
                values.append(None)
                continue
            ok = is_integer_token(c) if integer else is_numeric_token(c)
            if not ok:
                failures += 1
                values.append(None)
                continue
            values.append(int(c) if integer else float(c))
        if failures:
            raise IncompatibleCategory(
                f"column {column.name!r}: {failures} cells do not parse as {category}"
            )
    elif category is AttributeCategory.DATETIME:
        non_null = 0
        failures = 0
        for c in cells:
            if c is None:
                values.append(None)
                continue
            non_null += 1
            dt = parse_datetime_token(c, cfg.day_first)
            if dt is None:
                failures += 1
            values.append(dt)
        if non_null and failures / non_null > cfg.date_thr:
            raise IncompatibleCategory(
                f"column {column.name!r}: {failures}/{non_null} cells do not parse "
                f"as datetime (tolerance {cfg.date_thr})"
            )
    else:
        # Categorical, textual and unrecognized columns keep the raw strings.
        values = list(cells)

    null_count = sum(1 for v in values if v is None)
    return TypedColumn(
        name=column.name,
        category=category,
        values=tuple(values),
        null_count=null_count,
    )
