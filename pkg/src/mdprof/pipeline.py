"""Per-source orchestration: categorize, map, and profile every column.

For each column: discover a level mapping first (a level-mapped column is
dimensional and gets member frequencies); otherwise profile it by its
inferred or forced category, and let numeric columns try to match an
indicator by name. Columns are independent, so they can be profiled by a
thread pool; results merge in column order, keeping output deterministic.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .graph import MetaGraph, SourceMetadata, build_graph
from .inference import (
    AttributeCategory,
    CategoryDecision,
    TypedColumn,
    TypingConfig,
    infer_category,
    parse_typed,
)
from .ingest import Column, Table
from .kgmodel import (
    KnowledgeGraph,
    Mapping,
    discover_indicator_mapping,
    discover_level_mapping,
)
from .profiles import (
    DEFAULT_STOPWORDS,
    EmptyProfile,
    Profile,
    profile_categorical,
    profile_datetime,
    profile_dimensional,
    profile_numeric,
    profile_textual,
)


@dataclass(frozen=True)
class ProfilerConfig:
    typing: TypingConfig = field(default_factory=TypingConfig)
    containment_thr: float = 0.5
    bins: int = 10
    stopwords: frozenset[str] = DEFAULT_STOPWORDS
    max_words: int | None = None
    threads: int = 1

    def __post_init__(self):
        if not (0 < self.containment_thr <= 1):
            raise ValueError("containment_thr must be in (0, 1]")
        if self.bins < 1:
            raise ValueError("bins must be >= 1")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


@dataclass(frozen=True)
class AttributeReport:
    name: str
    category: AttributeCategory
    all_null: bool
    typed: TypedColumn
    mapping: Mapping | None
    profile: Profile | None


@dataclass(frozen=True)
class ProfiledSource:
    meta: SourceMetadata
    attributes: tuple[AttributeReport, ...]

    def to_graph(self) -> MetaGraph:
        return build_graph(
            self.meta,
            [(a.name, a.category, a.mapping, a.profile) for a in self.attributes],
        )

    def attribute(self, name: str) -> AttributeReport:
        for a in self.attributes:
            if a.name == name:
                return a
        raise KeyError(name)


def profile_column(
    column: Column,
    kg: KnowledgeGraph | None,
    config: ProfilerConfig,
    forced: AttributeCategory | None = None,
) -> AttributeReport:
    decision = (
        CategoryDecision(forced, all_null=not column.non_null())
        if forced is not None
        else infer_category(column, config.typing)
    )
    category = decision.category
    typed = parse_typed(column, category, config.typing)
    non_null = len(typed) - typed.null_count

    mapping: Mapping | None = None
    profile: Profile | None = None
    if kg is not None and non_null:
        mapping = discover_level_mapping(column, kg, config.containment_thr)

    if mapping is not None:
        profile = profile_dimensional(column, mapping, kg)
    elif non_null == 0:
        profile = EmptyProfile(null=typed.null_count)
    elif category in (AttributeCategory.INTEGER, AttributeCategory.DECIMAL):
        profile = profile_numeric(typed, config.bins)
        if kg is not None:
            mapping = discover_indicator_mapping(column.name, kg)
    elif category is AttributeCategory.CATEGORICAL:
        profile = profile_categorical(typed)
    elif category is AttributeCategory.DATETIME:
        profile = profile_datetime(typed)
    elif category is AttributeCategory.TEXTUAL:
        profile = profile_textual(typed, config.stopwords, config.max_words)

    return AttributeReport(
        name=column.name,
        category=category,
        all_null=decision.all_null,
        typed=typed,
        mapping=mapping,
        profile=profile,
    )


def profile_source(
    table: Table,
    kg: KnowledgeGraph | None = None,
    config: ProfilerConfig | None = None,
    forced_types: dict[str, AttributeCategory] | None = None,
    metadata: SourceMetadata | None = None,
) -> ProfiledSource:
    """Profile every column of a table into a ProfiledSource.

    When no metadata is given, the table name doubles as source name and
    location and no DCMI fields are emitted.
    """
    cfg = config or ProfilerConfig()
    forced = forced_types or {}

    def work(column: Column) -> AttributeReport:
        return profile_column(column, kg, cfg, forced.get(column.name))

    if cfg.threads > 1 and len(table.columns) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            reports = tuple(pool.map(work, table.columns))
    else:
        reports = tuple(work(c) for c in table.columns)

    meta = metadata or SourceMetadata(
        name=table.name,
        location=table.name,
        items=table.row_count,
        domains=len(table.columns),
    )
    return ProfiledSource(meta=meta, attributes=reports)
