"""Scikit-learn style facade over the profiling pipeline.

`TableProfiler.fit` infers categories, discovers knowledge-graph mappings and
computes profiles; `transform` parses raw cells into typed Python values using
the fitted categories. Ingestion, RDF emission and the catalog keep their own
modules; only the column-wise profiling core is estimator-shaped.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Any, Mapping as TypingMapping, Sequence

import pandas as pd
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .inference import AttributeCategory, TypingConfig
from .ingest import Column, Table
from .kgmodel import KnowledgeGraph, load_kg
from .pipeline import ProfilerConfig, profile_source
from .profiles import DEFAULT_STOPWORDS


def _cell_to_text(value: Any) -> str | None:
    """Raw cell -> string form, with None/NaN/NaT as nulls.

    Integral floats render without the trailing `.0`: pandas promotes an
    integer column holding nulls to float64, and that promotion must not
    flip the column's inferred category to decimal.
    """
    if value is None:
        return None
    if isinstance(value, str):
        return value
    try:
        if pd.isna(value):
            return None
    except (TypeError, ValueError):
        pass
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return None
        if value.is_integer() and abs(value) < 2**53:
            return str(int(value))
        return repr(value)
    return str(value)


def as_table(data: Any, name: str = "data") -> Table:
    """Validate tabular input into a Table of string-or-null cells.

    Accepts a Table, a pandas DataFrame, a mapping of column name to cell
    sequence, or a sequence of row mappings. Cell values are rendered to
    strings; None and NaN become nulls.
    """
    if isinstance(data, Table):
        return data
    if isinstance(data, pd.DataFrame):
        columns = tuple(
            Column(
                name=str(col),
                cells=tuple(_cell_to_text(v) for v in data[col].tolist()),
            )
            for col in data.columns
        )
        return Table(name=name, columns=columns, row_count=len(data))
    if isinstance(data, TypingMapping):
        lengths = {len(cells) for cells in data.values()}
        if len(lengths) > 1:
            raise ValueError("columns have unequal lengths")
        rows = lengths.pop() if lengths else 0
        columns = tuple(
            Column(name=str(col), cells=tuple(_cell_to_text(v) for v in cells))
            for col, cells in data.items()
        )
        return Table(name=name, columns=columns, row_count=rows)
    if isinstance(data, Sequence) and not isinstance(data, (str, bytes)):
        records = list(data)
        if not all(isinstance(r, TypingMapping) for r in records):
            raise TypeError(
                "sequence input must contain mappings (one per row); "
                "got mixed or scalar elements"
            )
        names: list[str] = []
        for r in records:
            for key in r:
                if key not in names:
                    names.append(key)
        columns = tuple(
            Column(
                name=str(col),
                cells=tuple(_cell_to_text(r.get(col)) for r in records),
            )
            for col in names
        )
        return Table(name=name, columns=columns, row_count=len(records))
    raise TypeError(f"cannot interpret {type(data).__name__} as a table")


class TableProfiler(TransformerMixin, BaseEstimator):
    """Column profiler with the fit/transform contract.

    Parameters mirror the pipeline configuration; `kg` may be a
    KnowledgeGraph, a path to a Turtle document, or None to skip mapping
    discovery.

    Fitted attributes: `result_` (the profiled source), `categories_`,
    `mappings_`, `profiles_`, `feature_names_in_`, `n_features_in_`.
    """

    def __init__(
        self,
        kg: KnowledgeGraph | str | Path | None = None,
        cat_thr: int = 20,
        date_thr: float = 0.05,
        string_proc: bool = True,
        day_first: bool = True,
        containment_thr: float = 0.5,
        bins: int = 10,
        max_words: int | None = None,
        threads: int = 1,
    ):
        self.kg = kg
        self.cat_thr = cat_thr
        self.date_thr = date_thr
        self.string_proc = string_proc
        self.day_first = day_first
        self.containment_thr = containment_thr
        self.bins = bins
        self.max_words = max_words
        self.threads = threads

    def _config(self) -> ProfilerConfig:
        return ProfilerConfig(
            typing=TypingConfig(
                cat_thr=self.cat_thr,
                date_thr=self.date_thr,
                string_proc=self.string_proc,
                day_first=self.day_first,
            ),
            containment_thr=self.containment_thr,
            bins=self.bins,
            stopwords=DEFAULT_STOPWORDS,
            max_words=self.max_words,
            threads=self.threads,
        )

    def _resolve_kg(self) -> KnowledgeGraph | None:
        if self.kg is None or isinstance(self.kg, KnowledgeGraph):
            return self.kg
        return load_kg(self.kg)

    def fit(self, X, y=None):
        table = as_table(X)
        result = profile_source(table, self._resolve_kg(), self._config())
        self.result_ = result
        self.categories_ = {r.name: r.category for r in result.attributes}
        self.mappings_ = {
            r.name: r.mapping.target_iri
            for r in result.attributes
            if r.mapping is not None
        }
        self.profiles_ = {r.name: r.profile for r in result.attributes}
        self.feature_names_in_ = [c.name for c in table.columns]
        self.n_features_in_ = len(table.columns)
        return self

    def transform(self, X) -> pd.DataFrame:
        """Parse raw cells into typed values under the fitted categories."""
        check_is_fitted(self, "result_")
        table = as_table(X)
        got = [c.name for c in table.columns]
        if got != self.feature_names_in_:
            raise ValueError(
                f"feature names differ from fit: expected "
                f"{self.feature_names_in_}, got {got}"
            )
        from .inference import parse_typed

        data = {}
        for column in table.columns:
            typed = parse_typed(
                column, self.categories_[column.name], self._config().typing
            )
            data[column.name] = list(typed.values)
        return pd.DataFrame(data, dtype=object)

    def to_graph(self):
        """Metadata graph of the fitted profiles."""
        check_is_fitted(self, "result_")
        return self.result_.to_graph()
