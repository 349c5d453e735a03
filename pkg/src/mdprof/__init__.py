"""mdprof: profile tabular sources into queryable RDF metadata.

Ingest CSV/JSON tables, infer attribute categories, map dimensions and
measures onto a knowledge graph by approximate set containment, compute
per-attribute statistical profiles, and emit deterministic Turtle/N-Triples
graphs that a file-backed catalog can store and query.
"""

from __future__ import annotations

from .bench import BenchConfig, TimingReport, run_benchmark
from .catalog import CatalogStore
from .errors import MdprofError
from .estimator import TableProfiler, as_table
from .graph import (
    MetaGraph,
    SourceMetadata,
    build_graph,
    parse_graph_file,
    parse_graph_text,
    read_attribute,
    summarize,
)
from .inference import AttributeCategory, TypingConfig, infer_category, parse_typed
from .ingest import Column, IngestOptions, Table, detect_format, load_source
from .kgmodel import (
    KnowledgeGraph,
    Mapping,
    discover_indicator_mapping,
    discover_level_mapping,
    load_kg,
)
from .pipeline import ProfiledSource, ProfilerConfig, profile_column, profile_source
from .profiles import (
    CategoricalProfile,
    DatetimeProfile,
    DimensionalProfile,
    Distribution,
    EmptyProfile,
    NumericProfile,
    TextualProfile,
    compute_distribution,
    tokenize,
)
from .shapes import validate as validate_shapes

__version__ = "0.1.0"

__all__ = [
    "AttributeCategory",
    "BenchConfig",
    "CatalogStore",
    "CategoricalProfile",
    "Column",
    "DatetimeProfile",
    "DimensionalProfile",
    "Distribution",
    "EmptyProfile",
    "IngestOptions",
    "KnowledgeGraph",
    "Mapping",
    "MdprofError",
    "MetaGraph",
    "NumericProfile",
    "ProfiledSource",
    "ProfilerConfig",
    "SourceMetadata",
    "Table",
    "TableProfiler",
    "TextualProfile",
    "TimingReport",
    "TypingConfig",
    "as_table",
    "build_graph",
    "compute_distribution",
    "detect_format",
    "discover_indicator_mapping",
    "discover_level_mapping",
    "infer_category",
    "load_kg",
    "load_source",
    "parse_graph_file",
    "parse_graph_text",
    "parse_typed",
    "profile_column",
    "profile_source",
    "read_attribute",
    "run_benchmark",
    "summarize",
    "tokenize",
    "validate_shapes",
    "__version__",
]
