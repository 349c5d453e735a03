"""Shared test utilities: random column generators and brute-force oracles.

The oracles re-derive every profile field from first principles (plain
counting and sorting over the raw cells) so they are independent of the
library's own computation paths.
"""

from __future__ import annotations

import random
import re
import statistics
from collections import Counter
from datetime import datetime, timedelta

from mdprof.ingest import Column, Table

CATEGORY_NAMES = ("integer", "decimal", "categorical", "datetime", "textual")

_WORDS = (
    "road", "traffic", "sensor", "city", "flow", "peak", "rain", "bridge",
    "count", "lane", "north", "south", "closed", "open", "event", "delay",
)


def random_column(
    rng: random.Random, category: str, rows: int, name: str = "col"
) -> Column:
    """Random raw column of the requested category, ~10% nulls."""
    cells: list[str | None] = []
    for _ in range(rows):
        if rng.random() < 0.1:
            cells.append(None)
            continue
        if category == "integer":
            cells.append(str(rng.randint(-1_000, 1_000)))
        elif category == "decimal":
            cells.append(f"{rng.uniform(-100.0, 100.0):.4f}")
        elif category == "categorical":
            cells.append(rng.choice(("alpha", "beta", "gamma", "delta")))
        elif category == "datetime":
            base = datetime(1980, 1, 1) + timedelta(
                seconds=rng.randrange(40 * 365 * 24 * 3600)
            )
            cells.append(base.isoformat())
        elif category == "textual":
            n = rng.randint(1, 8)
            cells.append(" ".join(rng.choice(_WORDS) for _ in range(n)))
        else:
            raise ValueError(category)
    return Column(name=name, cells=tuple(cells))


def random_table(rng: random.Random, rows: int, name: str = "src") -> Table:
    columns = tuple(
        random_column(rng, cat, rows, name=f"{cat}_col") for cat in CATEGORY_NAMES
    )
    return Table(name=name, columns=columns, row_count=rows)


# -- brute-force profile oracles ---------------------------------------------


def oracle_numeric(values: list[float]) -> dict:
    ordered = sorted(values)
    n = len(ordered)
    if n % 2:
        median = float(ordered[n // 2])
    else:
        median = (ordered[n // 2 - 1] + ordered[n // 2]) / 2.0
    return {
        "max": float(max(ordered)),
        "min": float(min(ordered)),
        "mean": sum(ordered) / n,
        "median": median,
        "distinct": len(set(ordered)),
    }


def oracle_distribution(values: list[float], bins: int) -> list[tuple[float, float, int]]:
    lo, hi = float(min(values)), float(max(values))
    if lo == hi:
        return [(lo, hi, len(values))]
    width = (hi - lo) / bins
    edges = [lo + i * width for i in range(bins)] + [hi]
    counts = [0] * bins
    for v in values:
        for i in range(bins):
            last = i == bins - 1
            if edges[i] <= v < edges[i + 1] or (last and v <= hi and v >= edges[i]):
                counts[i] += 1
                break
    return [(edges[i], edges[i + 1], counts[i]) for i in range(bins)]


def desc_count_then_name(counter: Counter) -> list[tuple]:
    return sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))


def oracle_categorical(cells: list[str]) -> list[tuple[str, int]]:
    return desc_count_then_name(Counter(cells))


def oracle_years(dates: list[datetime]) -> list[tuple[int, int]]:
    return sorted(Counter(d.year for d in dates).items())


_TOKEN = re.compile(r"[^\W_]+", re.UNICODE)


def oracle_tokens(cells: list[str], stopwords: frozenset[str]) -> list[str]:
    tokens = []
    for cell in cells:
        for tok in _TOKEN.findall(cell.lower()):
            if tok not in stopwords:
                tokens.append(tok)
    return tokens


def oracle_dimensional(
    cells: list[str | None], member_key_to_iri: dict[str, str]
) -> tuple[dict[str, int], int]:
    counts: Counter = Counter()
    others = 0
    for cell in cells:
        if cell is None:
            others += 1
            continue
        iri = member_key_to_iri.get(cell.strip().casefold())
        if iri is None:
            others += 1
        else:
            counts[iri] += 1
    return dict(counts), others
