"""Per-attribute statistical profiles.

Dimensional attributes get member frequency counts with an `others` bucket
for everything that cannot be mapped (nulls included). Measures and
descriptive attributes get a category-specific profile: numeric summary
statistics with a fixed-width distribution, category counts, per-year counts
with the date range, or word counts after tokenization and stopword removal.

All element lists are canonically ordered so equal inputs always produce
equal profiles: counts descending then name ascending, bins and years by
range.
"""

from __future__ import annotations

import re
import statistics
from collections import Counter
from dataclasses import dataclass
from datetime import datetime
from math import fsum
from pathlib import Path
from typing import Iterable, Sequence

from .errors import EmptyAfterNulls, MappingLevelMissing, UnreadablePath
from .inference import AttributeCategory, TypedColumn
from .ingest import Column
from .kgmodel import KnowledgeGraph, Mapping, normalize_label

# A compact English stopword list; replaceable per call or via --stopwords.
# The tokenizer splits on punctuation, so contractions are stored as their
# split fragments (aren't -> aren, t).
DEFAULT_STOPWORDS: frozenset[str] = frozenset(
    """
    a about above after again against ain all am an and any are aren as at be
    because been before being below between both but by can cannot could
    couldn d did didn do does doesn doing don down during each few for from
    further had hadn has hasn have haven having he her here hers herself him
    himself his how i if in into is isn it its itself just let ll m ma me
    mightn more most mustn my myself needn no nor not now o of off on once
    only or other ought our ours ourselves out over own re s same shan she
    should shouldn so some such t than that the their theirs them themselves
    then there these they this those through to too under until up ve very
    was wasn we were weren what when where which while who whom why will with
    won would wouldn y you your yours yourself yourselves
    """.split()
)

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Read a whitespace- or newline-separated stopword list."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UnreadablePath(f"cannot read stopword list {path}: {exc}") from exc
    return frozenset(w.lower() for w in text.split())


def tokenize(cell: str, stopwords: frozenset[str] = DEFAULT_STOPWORDS) -> list[str]:
    """Lowercase, split on whitespace and punctuation, drop stopwords."""
    return [t for t in _TOKEN_RE.findall(cell.lower()) if t not in stopwords]


@dataclass(frozen=True)
class Distribution:
    """Contiguous fixed-width bins covering [min, max].

    Each element is (start, end, count); bins are half-open except the last,
    which also contains the maximum.
    """

    elements: tuple[tuple[float, float, int], ...]


@dataclass(frozen=True)
class DimensionalProfile:
    level_iri: str
    elements: tuple[tuple[str, int], ...]  # (member IRI, frequency)
    others: int


@dataclass(frozen=True)
class NumericProfile:
    max: float
    min: float
    mean: float
    median: float
    distinct: int
    null: int
    distribution: Distribution


@dataclass(frozen=True)
class CategoricalProfile:
    null: int
    categories: tuple[tuple[str, int], ...]  # (category, count)


@dataclass(frozen=True)
class DatetimeProfile:
    distinct: int
    null: int
    min_date: datetime
    max_date: datetime
    years: tuple[tuple[int, int], ...]  # (year, count), ascending by year


@dataclass(frozen=True)
class TextualProfile:
    null: int
    words_total: int
    words: tuple[tuple[str, int], ...]  # (word, count)


@dataclass(frozen=True)
class EmptyProfile:
    """Profile of a column with no non-null values: only the null count."""

    null: int


Profile = (
    DimensionalProfile
    | NumericProfile
    | CategoricalProfile
    | DatetimeProfile
    | TextualProfile
    | EmptyProfile
)


def _by_count_then_name(pairs: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    return tuple(sorted(pairs, key=lambda kv: (-kv[1], kv[0])))


def compute_distribution(values: Sequence[float], bins: int = 10) -> Distribution:
    """Fixed-width binning of values over [min, max].

    Bin edges are min + i*(max-min)/bins, with the last edge pinned to max.
    A value sits in the bin whose half-open range holds it; the maximum goes
    into the last bin. A degenerate range (max == min) collapses to a single
    bin holding everything.
    """
    if bins < 1:
        raise ValueError("bins must be >= 1")
    if not values:
        raise EmptyAfterNulls("cannot bin an empty value sequence")

    lo = min(values)
    hi = max(values)
    if lo == hi:
        return Distribution(((float(lo), float(hi), len(values)),))

    width = (hi - lo) / bins
    edges = [lo + i * width for i in range(bins)] + [hi]
    counts = [0] * bins
    span = hi - lo
    last = bins - 1
    for v in values:
        idx = int((v - lo) / span * bins)
        if idx > last:
            idx = last
        # Float rounding can land a boundary value one bin off; nudge it so
        # placement always agrees with the emitted edges.
        if idx < last and v >= edges[idx + 1]:
            idx += 1
        elif idx > 0 and v < edges[idx]:
            idx -= 1
        counts[idx] += 1

    elements = tuple(
        (float(edges[i]), float(edges[i + 1]), counts[i]) for i in range(bins)
    )
    return Distribution(elements)


def profile_dimensional(
    column: Column,
    mapping: Mapping,
    kg: KnowledgeGraph,
) -> DimensionalProfile:
    """Member frequencies for a level-mapped column.

    Cells match members after trim/casefold normalization; unmatched cells
    and nulls count into `others`. Only members that actually occur appear
    in the elements.
    """
    level = kg.level(mapping.target_iri)
    if level is None:
        raise MappingLevelMissing(
            f"mapping targets level <{mapping.target_iri}> not present in the graph"
        )
    index = kg.member_index(level.iri)
    counts: dict[str, int] = {}
    others = 0
    for cell in column.cells:
        if cell is None:
            others += 1
            continue
        member_iri = index.get(normalize_label(cell))
        if member_iri is None:
            others += 1
        else:
            counts[member_iri] = counts.get(member_iri, 0) + 1

    return DimensionalProfile(
        level_iri=level.iri,
        elements=_by_count_then_name(counts.items()),
        others=others,
    )


def profile_numeric(typed: TypedColumn, bins: int = 10) -> NumericProfile:
    values = typed.non_null()
    if not values:
        raise EmptyAfterNulls(f"column {typed.name!r} has no non-null values")
    return NumericProfile(
        max=max(values),
        min=min(values),
        mean=fsum(values) / len(values),
        median=statistics.median(values),
        distinct=len(set(values)),
        null=typed.null_count,
        distribution=compute_distribution(values, bins),
    )


def profile_categorical(typed: TypedColumn) -> CategoricalProfile:
    counts = Counter(typed.non_null())
    return CategoricalProfile(
        null=typed.null_count,
        categories=_by_count_then_name(counts.items()),
    )


def profile_datetime(typed: TypedColumn) -> DatetimeProfile:
    values = typed.non_null()
    if not values:
        raise EmptyAfterNulls(f"column {typed.name!r} has no non-null values")
    years = Counter(v.year for v in values)
    return DatetimeProfile(
        distinct=len(set(values)),
        null=typed.null_count,
        min_date=min(values),
        max_date=max(values),
        years=tuple(sorted(years.items())),
    )


def profile_textual(
    typed: TypedColumn,
    stopwords: frozenset[str] = DEFAULT_STOPWORDS,
    max_words: int | None = None,
) -> TextualProfile:
    """Word counts over all cells after tokenization and stopword removal.

    words_total always counts every surviving token; max_words only caps how
    many distinct words are kept in the profile.
    """
    counts: Counter[str] = Counter()
    total = 0
    for cell in typed.non_null():
        tokens = tokenize(cell, stopwords)
        total += len(tokens)
        counts.update(tokens)
    words = _by_count_then_name(counts.items())
    if max_words is not None:
        words = words[:max_words]
    return TextualProfile(null=typed.null_count, words_total=total, words=words)
