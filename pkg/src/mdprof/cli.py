"""Command-line entry point.

Subcommands: profile, register, query, show, validate, bench.
Option layering: explicit flags beat MDPROF_* environment variables, which
beat the config file (flat `key = value` lines), which beats defaults.
Diagnostics go to standard error as `error[CODE]: message`; data goes to
standard output or to --out files.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import bench as bench_mod
from . import shapes
from .catalog import CatalogStore
from .errors import DIAGNOSTIC_CODES, MdprofError, ShapeViolation
from .graph import SourceMetadata, mint_iri, parse_graph_file, source_name_from_iri
from .inference import AttributeCategory, TypingConfig
from .ingest import DEFAULT_NULL_TOKENS, IngestOptions, load_source
from .kgmodel import load_kg
from .pipeline import ProfilerConfig, profile_source
from .profiles import (
    DEFAULT_STOPWORDS,
    CategoricalProfile,
    DatetimeProfile,
    DimensionalProfile,
    EmptyProfile,
    NumericProfile,
    TextualProfile,
    load_stopwords,
)

_LOG = logging.getLogger("mdprof")

_CONFIG_BASENAME = "mdprof.toml"


class UsageError(Exception):
    """Bad flag combination or unparseable option value; exits with code 2."""


# -- configuration layering --------------------------------------------------


def _load_config_file(path: str | None) -> dict[str, str]:
    """Flat `key = value` lines; `#` starts a comment; quotes are optional."""
    if path is not None:
        p = Path(path)
        if not p.is_file():
            raise UsageError(f"config file {path} does not exist")
    else:
        p = Path(_CONFIG_BASENAME)
        if not p.is_file():
            return {}
    out: dict[str, str] = {}
    for raw in p.read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {raw!r} is not `key = value`")
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip().strip("\"'")
    return out


def _resolve(
    flag_value,
    env_key: str | None,
    cfg: dict[str, str],
    cfg_key: str,
    default,
    cast,
):
    if flag_value is not None:
        return flag_value
    if env_key:
        env = os.environ.get(env_key)
        if env:
            return _cast(cast, env, env_key)
    if cfg_key in cfg:
        return _cast(cast, cfg[cfg_key], cfg_key)
    return default


def _cast(cast, raw: str, label: str):
    try:
        return cast(raw)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad value {raw!r} for {label}: {exc}")


def _as_bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError("expected a boolean")


def _default_threads() -> int:
    return max(1, os.cpu_count() or 1)


# -- shared option resolution -------------------------------------------------


def _profiler_config(args, cfg: dict[str, str]) -> ProfilerConfig:
    typing = TypingConfig(
        cat_thr=_resolve(args.cat_thr, None, cfg, "cat_thr", 20, int),
        date_thr=_resolve(args.date_thr, None, cfg, "date_thr", 0.05, float),
        string_proc=False
        if args.no_string_proc
        else _resolve(None, None, cfg, "string_proc", True, _as_bool),
        day_first=True
        if args.day_first
        else (
            False
            if args.month_first
            else _resolve(None, None, cfg, "day_first", True, _as_bool)
        ),
    )
    stopwords = (
        load_stopwords(args.stopwords) if args.stopwords else DEFAULT_STOPWORDS
    )
    try:
        return ProfilerConfig(
            typing=typing,
            containment_thr=_resolve(
                args.containment_thr, None, cfg, "containment_thr", 0.5, float
            ),
            bins=_resolve(args.bins, None, cfg, "bins", 10, int),
            stopwords=stopwords,
            max_words=_resolve(args.max_words, None, cfg, "max_words", None, int),
            threads=_resolve(
                args.threads, "MDPROF_THREADS", cfg, "threads", _default_threads(), int
            ),
        )
    except ValueError as exc:
        raise UsageError(str(exc))


def _resolve_catalog(args, cfg: dict[str, str], required: bool) -> str | None:
    catalog = _resolve(args.catalog, "MDPROF_CATALOG", cfg, "catalog", None, str)
    if catalog is None and required:
        raise UsageError(
            "no catalog directory: pass --catalog, set MDPROF_CATALOG, "
            "or put `catalog = <dir>` in the config file"
        )
    return catalog


def _resolve_kg_path(args, cfg: dict[str, str]) -> str | None:
    return _resolve(args.kg, "MDPROF_KG", cfg, "kg", None, str)


def _parse_forced_types(pairs: list[str]) -> dict[str, AttributeCategory]:
    forced: dict[str, AttributeCategory] = {}
    valid = {c.value: c for c in AttributeCategory}
    for pair in pairs:
        column, sep, category = pair.partition("=")
        if not sep or not column or category.lower() not in valid:
            raise UsageError(
                f"--type needs COLUMN=CATEGORY with category one of "
                f"{sorted(valid)}; got {pair!r}"
            )
        forced[column] = valid[category.lower()]
    return forced


def _source_iri_argument(text: str) -> str:
    if "://" in text:
        return text
    return mint_iri("source", name=text)


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


# -- subcommand handlers -------------------------------------------------------


def _cmd_profile(args) -> int:
    cfg = _load_config_file(args.config)
    null_tokens = (
        tuple(args.null_token) if args.null_token else DEFAULT_NULL_TOKENS
    )
    try:
        options = IngestOptions(
            delimiter=args.delimiter or ",",
            null_tokens=null_tokens,
            has_header=not args.no_header,
        )
    except ValueError as exc:
        raise UsageError(str(exc))
    table = load_source(args.path, fmt=args.in_format, options=options)
    _LOG.info("loaded %s: %d rows, %d columns", args.path, table.row_count, len(table.columns))

    kg_path = _resolve_kg_path(args, cfg)
    kg = None
    if kg_path:
        if args.member_level_prop:
            kg = load_kg(kg_path, member_level_prop=args.member_level_prop)
        else:
            kg = load_kg(kg_path)
    config = _profiler_config(args, cfg)
    forced = _parse_forced_types(args.force_type or [])

    metadata = SourceMetadata(
        name=args.name or table.name,
        location=args.location or str(args.path),
        items=table.row_count,
        domains=len(table.columns),
        title=args.title,
        description=args.description,
        creator=args.creator,
        publisher=args.publisher,
        license=args.license,
    )
    result = profile_source(table, kg, config, forced_types=forced, metadata=metadata)
    for report in result.attributes:
        target = report.mapping.target_iri if report.mapping else "-"
        _LOG.info("attribute %s: %s, mapTo %s", report.name, report.category.value, target)

    graph = result.to_graph()
    text = graph.to_ntriples() if args.format == "ntriples" else graph.to_turtle()
    _write_output(text, args.out)

    if args.register or args.catalog is not None:
        catalog_dir = _resolve_catalog(args, cfg, required=True)
        store = CatalogStore(catalog_dir)
        iri = store.register(graph)
        print(f"registered <{iri}>", file=sys.stderr)
    return 0


def _cmd_register(args) -> int:
    cfg = _load_config_file(args.config)
    store = CatalogStore(_resolve_catalog(args, cfg, required=True))
    graph = parse_graph_file(args.path)
    iri = store.register(graph)
    print(iri)
    return 0


def _cmd_query(args) -> int:
    cfg = _load_config_file(args.config)
    store = CatalogStore(_resolve_catalog(args, cfg, required=True))
    expressions = list(args.expressions) + list(args.where or [])
    if not expressions:
        raise UsageError("query needs at least one expression")
    for iri in store.find_sources(expressions):
        print(iri)
    return 0


def _cmd_show(args) -> int:
    cfg = _load_config_file(args.config)
    store = CatalogStore(_resolve_catalog(args, cfg, required=True))
    source_iri = _source_iri_argument(args.source)
    if args.attribute is None:
        summary = store.summary(source_iri)
        print(f"source    {source_name_from_iri(summary.source_iri)}")
        print(f"iri       {summary.source_iri}")
        print(f"items     {summary.items}")
        print(f"domains   {summary.domains}")
        print(f"attributes  {', '.join(summary.attributes) or '-'}")
        print(f"levels      {', '.join(summary.levels) or '-'}")
        print(f"indicators  {', '.join(summary.indicators) or '-'}")
        print(f"categories  {', '.join(summary.categories) or '-'}")
        return 0
    category, mapping_iri, profile = store.get_attribute(source_iri, args.attribute)
    print(f"attribute {args.attribute}")
    print(f"category  {category.value}")
    print(f"mapTo     {mapping_iri or '-'}")
    for line in _render_profile(profile):
        print(line)
    return 0


def _render_profile(profile) -> list[str]:
    if profile is None:
        return ["profile   -"]
    lines: list[str] = []
    if isinstance(profile, DimensionalProfile):
        lines.append(f"level     {profile.level_iri}")
        lines.append(f"others    {profile.others}")
        lines.append("member frequencies:")
        for member, count in profile.elements:
            lines.append(f"  {member}  {count}")
    elif isinstance(profile, NumericProfile):
        lines.append(f"max       {profile.max}")
        lines.append(f"min       {profile.min}")
        lines.append(f"mean      {profile.mean}")
        lines.append(f"median    {profile.median}")
        lines.append(f"distinct  {profile.distinct}")
        lines.append(f"null      {profile.null}")
        lines.append("distribution:")
        last = len(profile.distribution.elements) - 1
        for i, (start, end, count) in enumerate(profile.distribution.elements):
            closer = "]" if i == last else ")"
            lines.append(f"  [{start}, {end}{closer}  {count}")
    elif isinstance(profile, CategoricalProfile):
        lines.append(f"null      {profile.null}")
        lines.append("categories:")
        for value, count in profile.categories:
            lines.append(f"  {value}  {count}")
    elif isinstance(profile, DatetimeProfile):
        lines.append(f"min date  {profile.min_date.isoformat()}")
        lines.append(f"max date  {profile.max_date.isoformat()}")
        lines.append(f"distinct  {profile.distinct}")
        lines.append(f"null      {profile.null}")
        lines.append("per-year counts:")
        for year, count in profile.years:
            lines.append(f"  {year}  {count}")
    elif isinstance(profile, TextualProfile):
        lines.append(f"null      {profile.null}")
        lines.append(f"words     {profile.words_total}")
        lines.append("word frequencies:")
        for word, count in profile.words:
            lines.append(f"  {word}  {count}")
    elif isinstance(profile, EmptyProfile):
        lines.append(f"null      {profile.null}")
        lines.append("no non-null values")
    return lines


def _cmd_validate(args) -> int:
    graph = parse_graph_file(args.path)
    violations = shapes.validate(graph)
    if not violations:
        print(f"{args.path}: conforms")
        return 0
    print(f"error[E_SHAPE]: {args.path}: {len(violations)} violation(s)", file=sys.stderr)
    for violation in violations:
        print(f"  - {violation}", file=sys.stderr)
    return 1


def _parse_number_list(raw: str, cast, label: str) -> tuple:
    try:
        return tuple(cast(part) for part in raw.split(",") if part != "")
    except ValueError:
        raise UsageError(f"bad {label} list {raw!r}")


def _cmd_bench(args) -> int:
    cfg = _load_config_file(args.config)
    cards = (
        _parse_number_list(args.cards, int, "cardinality")
        if args.cards
        else (10_000, 100_000, 1_000_000)
    )
    noise = (
        _parse_number_list(args.noise, float, "noise")
        if args.noise
        else (0.0, 0.1, 0.2, 0.3, 0.4, 0.5)
    )
    try:
        bench_config = bench_mod.BenchConfig(
            cardinalities=cards,
            noise_levels=noise,
            iterations=args.iters,
            seed=args.seed,
            bins=_resolve(args.bins, None, cfg, "bins", 10, int),
            members=args.members,
            threads=_resolve(args.threads, "MDPROF_THREADS", cfg, "threads", 1, int),
            warmup=not args.no_warmup,
        )
    except ValueError as exc:
        raise UsageError(str(exc))
    corpus = bench_mod.load_word_corpus(args.corpus) if args.corpus else None
    report = bench_mod.run_benchmark(
        bench_config, corpus=corpus, progress=_LOG.info
    )
    _write_output(report.to_csv_text(), args.out)
    if args.gnuplot_data:
        written = report.write_figure_csvs(args.gnuplot_data)
        for path in written:
            _LOG.info("wrote %s", path)
    return 0


# -- parser ---------------------------------------------------------------------


def _diagnostic_epilog() -> str:
    lines = ["diagnostic codes:"]
    for code in sorted(DIAGNOSTIC_CODES):
        lines.append(f"  {code:24s} {DIAGNOSTIC_CODES[code]}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="config file (key = value lines)")
    common.add_argument(
        "-v", "--verbose", action="store_true", help="log progress to standard error"
    )

    parser = argparse.ArgumentParser(
        prog="mdprof",
        description="Profile tabular sources into queryable RDF metadata.",
        epilog=_diagnostic_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser(
        "profile",
        parents=[common],
        help="profile a CSV/JSON source into a metadata graph",
    )
    p.add_argument("path", help="source file")
    p.add_argument(
        "--in-format", choices=("csv", "json"), help="override input format detection"
    )
    p.add_argument("--delimiter", metavar="CHAR", help="CSV delimiter (default ,)")
    p.add_argument("--no-header", action="store_true", help="CSV has no header row")
    p.add_argument(
        "--null-token",
        action="append",
        metavar="TOKEN",
        help="null token; repeatable; giving any replaces the default set",
    )
    p.add_argument("--kg", metavar="PATH", help="knowledge-graph Turtle document")
    p.add_argument(
        "--member-level-prop",
        metavar="IRI",
        default=None,
        help="member-to-level property IRI (default kpi:inLevel)",
    )
    p.add_argument("--name", help="source name (default: file stem)")
    p.add_argument("--location", help="recorded location (default: the path)")
    p.add_argument("--title", help="dcterms:title")
    p.add_argument("--description", help="dcterms:description")
    p.add_argument("--creator", help="dcterms:creator")
    p.add_argument("--publisher", help="dcterms:publisher")
    p.add_argument("--license", help="dcterms:license")
    p.add_argument(
        "--force-type",
        action="append",
        metavar="COLUMN=CATEGORY",
        help="force a column's category (repeatable)",
    )
    p.add_argument("--cat-thr", type=int, help="categorical distinct threshold")
    p.add_argument("--date-thr", type=float, help="datetime parse-failure tolerance")
    p.add_argument("--no-string-proc", action="store_true", help="skip textual profiling")
    day_order = p.add_mutually_exclusive_group()
    day_order.add_argument(
        "--day-first", action="store_true", help="read 01/02/2020 as Feb 1 (default)"
    )
    day_order.add_argument(
        "--month-first", action="store_true", help="read 01/02/2020 as Jan 2"
    )
    p.add_argument("--containment-thr", type=float, help="mapping containment threshold")
    p.add_argument("--bins", type=int, help="distribution bin count")
    p.add_argument("--max-words", type=int, help="cap emitted word elements")
    p.add_argument("--stopwords", metavar="PATH", help="stopword list file")
    p.add_argument("--threads", type=int, help="profile columns in parallel")
    p.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    p.add_argument(
        "--format",
        choices=("turtle", "ntriples"),
        default="turtle",
        help="output serialization (default turtle)",
    )
    p.add_argument("--catalog", metavar="DIR", help="register into this catalog")
    p.add_argument(
        "--register",
        action="store_true",
        help="register into the resolved catalog directory",
    )
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser(
        "register", parents=[common], help="validate and store a metadata graph"
    )
    p.add_argument("path", help="Turtle document")
    p.add_argument("--catalog", metavar="DIR", help="catalog directory")
    p.set_defaults(func=_cmd_register)

    p = sub.add_parser(
        "query", parents=[common], help="find sources matching every expression"
    )
    p.add_argument(
        "expressions",
        nargs="*",
        metavar="EXPR",
        help="conjunctive `key op value` expressions "
        "(keys: mapTo, category, items, max, min, mean, median, stat(attr))",
    )
    p.add_argument(
        "--where",
        action="append",
        metavar="EXPR",
        help="additional expression (repeatable)",
    )
    p.add_argument("--catalog", metavar="DIR", help="catalog directory")
    p.set_defaults(func=_cmd_query)

    p = sub.add_parser(
        "show", parents=[common], help="print a stored source summary or one attribute"
    )
    p.add_argument("source", help="source name or IRI")
    p.add_argument("attribute", nargs="?", help="attribute to show in full")
    p.add_argument("--catalog", metavar="DIR", help="catalog directory")
    p.set_defaults(func=_cmd_show)

    p = sub.add_parser(
        "validate", parents=[common], help="check a graph against the vocabulary shapes"
    )
    p.add_argument("path", help="Turtle document")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("bench", parents=[common], help="run the timing workloads")
    p.add_argument("--cards", metavar="N,N,...", help="cardinalities (default 10000,100000,1000000)")
    p.add_argument("--noise", metavar="F,F,...", help="noise levels (default 0.0..0.5 step 0.1)")
    p.add_argument("--iters", type=int, default=10, help="measured iterations (default 10)")
    p.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")
    p.add_argument("--bins", type=int, help="distribution bin count")
    p.add_argument("--members", type=int, default=10_000, help="level size (default 10000)")
    p.add_argument("--threads", type=int, help="profiler thread count (default 1)")
    p.add_argument("--no-warmup", action="store_true", help="keep the first iteration")
    p.add_argument("--corpus", metavar="PATH", help="word list for the textual workload")
    p.add_argument("--out", metavar="PATH", help="report CSV (default stdout)")
    p.add_argument(
        "--gnuplot-data",
        metavar="DIR",
        help="also write per-figure CSV series into DIR",
    )
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(message)s",
    )
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ShapeViolation as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        for violation in exc.violations or []:
            print(f"  - {violation}", file=sys.stderr)
        return 1
    except MdprofError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error[E_IO]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
