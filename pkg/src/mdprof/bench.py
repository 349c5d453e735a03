"""Synthetic workload generators and the timing protocol.

Two workload families:

* dimensional: a single column sampled from a generated level of the
  knowledge graph, with a controlled fraction of unmappable noise cells;
* typed: five columns, one per inferable category, sized by cardinality.

Each measured iteration regenerates its table from a derived seed, times the
profiling work alone (generation and I/O excluded), and one warm-up iteration
is dropped from the statistics. Results land in a flat CSV plus optional
per-figure CSV series.
"""

from __future__ import annotations

import csv
import random
import statistics
import time
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .ingest import Column, Table
from .kgmodel import (
    LOCAL_DATA_NS,
    KnowledgeGraph,
    LevelRef,
    Mapping,
    Member,
    discover_level_mapping,
    normalize_label,
)
from .pipeline import ProfilerConfig, profile_column
from .profiles import profile_dimensional

TYPED_KINDS = ("integer", "decimal", "categorical", "datetime", "textual")

# figure-series aliases for the typed workloads
_KIND_ALIAS = {
    "integer": "integer",
    "decimal": "real",
    "categorical": "categorical",
    "datetime": "date",
    "textual": "string",
}

_CATEGORY_LABELS = ("alpha", "beta", "gamma", "delta")
_DATE_START = datetime(1950, 1, 1)
_DATE_SPAN_SECONDS = int((datetime(2020, 1, 1) - _DATE_START).total_seconds())

REPORT_HEADER = (
    "workload",
    "cardinality",
    "parameter",
    "mean_s",
    "std_s",
    "mapping_mean_s",
    "mapping_std_s",
)


@dataclass(frozen=True)
class BenchConfig:
    cardinalities: tuple[int, ...] = (10_000, 100_000, 1_000_000)
    noise_levels: tuple[float, ...] = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5)
    iterations: int = 10
    seed: int = 0
    bins: int = 10
    members: int = 10_000
    threads: int = 1
    warmup: bool = True

    def __post_init__(self):
        if not self.cardinalities or any(c < 1 for c in self.cardinalities):
            raise ValueError("cardinalities must be positive")
        if any(not 0.0 <= n <= 1.0 for n in self.noise_levels):
            raise ValueError("noise levels must lie in [0, 1]")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.bins < 1:
            raise ValueError("bins must be >= 1")
        if self.members < 1:
            raise ValueError("members must be >= 1")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


@dataclass(frozen=True)
class TimingRow:
    workload: str
    cardinality: int
    parameter: str
    mean_s: float
    std_s: float
    mapping_mean_s: float | None = None
    mapping_std_s: float | None = None


@dataclass(frozen=True)
class TimingReport:
    rows: tuple[TimingRow, ...] = field(default_factory=tuple)

    def to_csv_text(self) -> str:
        lines = [",".join(REPORT_HEADER)]
        for r in self.rows:
            lines.append(
                ",".join(
                    (
                        r.workload,
                        str(r.cardinality),
                        r.parameter,
                        _fmt(r.mean_s),
                        _fmt(r.std_s),
                        _fmt(r.mapping_mean_s),
                        _fmt(r.mapping_std_s),
                    )
                )
            )
        return "\n".join(lines) + "\n"

    def write_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv_text(), encoding="utf-8")

    def write_figure_csvs(self, directory: str | Path) -> list[Path]:
        """One CSV per plotted series: `{noise}_noise_level.csv` holding the
        dimensional timings of that noise level across cardinalities, and
        `mean_{type}_time_processing.csv` per typed workload."""
        out_dir = Path(directory)
        out_dir.mkdir(parents=True, exist_ok=True)
        written: list[Path] = []

        noise_params = _ordered_params(self.rows, "dimensional")
        for param in noise_params:
            path = out_dir / f"{param}_noise_level.csv"
            with path.open("w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(
                    ["cardinality", "mean_s", "std_s", "mapping_mean_s", "mapping_std_s"]
                )
                for r in self.rows:
                    if r.workload == "dimensional" and r.parameter == param:
                        writer.writerow(
                            [
                                r.cardinality,
                                _fmt(r.mean_s),
                                _fmt(r.std_s),
                                _fmt(r.mapping_mean_s),
                                _fmt(r.mapping_std_s),
                            ]
                        )
            written.append(path)

        for kind in _ordered_params(self.rows, "typed"):
            alias = _KIND_ALIAS.get(kind, kind)
            path = out_dir / f"mean_{alias}_time_processing.csv"
            with path.open("w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["cardinality", "mean_s", "std_s"])
                for r in self.rows:
                    if r.workload == "typed" and r.parameter == kind:
                        writer.writerow([r.cardinality, _fmt(r.mean_s), _fmt(r.std_s)])
            written.append(path)
        return written


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.9f}"


def _ordered_params(rows: Sequence[TimingRow], workload: str) -> list[str]:
    seen: list[str] = []
    for r in rows:
        if r.workload == workload and r.parameter not in seen:
            seen.append(r.parameter)
    return seen


# -- generators ------------------------------------------------------------


def make_level_members(count: int) -> tuple[str, ...]:
    return tuple(f"member_{i:05d}" for i in range(count))


def build_bench_kg(member_count: int = 10_000) -> KnowledgeGraph:
    """One synthetic level holding `member_count` members."""
    level_iri = LOCAL_DATA_NS + "BenchLevel"
    members = tuple(
        Member(iri=LOCAL_DATA_NS + name) for name in make_level_members(member_count)
    )
    return KnowledgeGraph(
        levels=(LevelRef(iri=level_iri, name="BenchLevel"),),
        members={level_iri: members},
        indicators=(),
    )


def _as_rng(seed: int | str | random.Random) -> random.Random:
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)


def gen_dimensional_source(
    cardinality: int,
    noise: float,
    members: Iterable[str],
    seed: int | str | random.Random,
) -> Table:
    """Single-column table over a member set with exact noise placement.

    Exactly round(noise * cardinality) cells hold synthetic tokens that
    cannot match any member; the distinct-value pool is fixed first and every
    chosen value is planted once, so the noise share of the distinct set is
    also exact whenever it is expressible.
    """
    member_list = sorted(set(members))
    if not member_list:
        raise ValueError("member set must be non-empty")
    if not 0.0 <= noise <= 1.0:
        raise ValueError("noise must lie in [0, 1]")
    rng = _as_rng(seed)

    k_noise = round(noise * cardinality)
    k_member = cardinality - k_noise
    pool = min(len(member_list), cardinality)
    d_noise = round(noise * pool)
    if k_noise > 0:
        d_noise = max(d_noise, 1)
    d_noise = min(d_noise, k_noise)
    d_member = pool - d_noise
    d_member = min(d_member, k_member)
    if k_member > 0:
        d_member = max(d_member, 1)

    member_keys = {normalize_label(m) for m in member_list}
    noise_tokens: list[str] = []
    j = 0
    while len(noise_tokens) < d_noise:
        token = f"unmappable{j:06d}"
        if normalize_label(token) not in member_keys:
            noise_tokens.append(token)
        j += 1

    chosen_members = rng.sample(member_list, d_member) if d_member else []
    cells: list[str | None] = list(chosen_members) + list(noise_tokens)
    if k_member > d_member:
        cells.extend(rng.choices(chosen_members, k=k_member - d_member))
    if k_noise > d_noise:
        cells.extend(rng.choices(noise_tokens, k=k_noise - d_noise))
    rng.shuffle(cells)

    column = Column(name="dimension", cells=tuple(cells))
    return Table(name="bench_dimensional", columns=(column,), row_count=cardinality)


def gen_typed_source(
    cardinality: int,
    corpus: Sequence[str],
    seed: int | str | random.Random,
) -> Table:
    """Five columns named after the categories they should infer to."""
    if not corpus:
        raise ValueError("word corpus must be non-empty")
    rng = _as_rng(seed)

    integers = tuple(str(rng.randint(0, cardinality)) for _ in range(cardinality))
    decimals = tuple(
        f"{rng.uniform(0.0, cardinality):.5f}" for _ in range(cardinality)
    )
    categories = tuple(rng.choice(_CATEGORY_LABELS) for _ in range(cardinality))
    dates = tuple(
        (_DATE_START + timedelta(seconds=rng.randrange(_DATE_SPAN_SECONDS))).isoformat()
        for _ in range(cardinality)
    )
    texts = tuple(" ".join(rng.choices(corpus, k=5)) for _ in range(cardinality))

    columns = (
        Column(name="integer", cells=integers),
        Column(name="decimal", cells=decimals),
        Column(name="categorical", cells=categories),
        Column(name="datetime", cells=dates),
        Column(name="textual", cells=texts),
    )
    return Table(name="bench_typed", columns=columns, row_count=cardinality)


_CONSONANTS = "bcdfghjklmnpqrstvwz"
_VOWELS = "aeiou"


def default_word_corpus(size: int = 83_740) -> tuple[str, ...]:
    """Deterministic lowercase corpus of `size` distinct pronounceable words.

    Words are products of consonant+vowel syllables, shortest first, so the
    corpus is collision-free and stable for any prefix length.
    """
    syllables = [c + v for c in _CONSONANTS for v in _VOWELS]
    words: list[str] = []
    length = 2
    while len(words) < size:
        batch = _syllable_products(syllables, length)
        take = min(size - len(words), len(batch))
        words.extend(batch[:take])
        length += 1
    return tuple(words)


def _syllable_products(syllables: list[str], count: int) -> list[str]:
    out = [""]
    for _ in range(count):
        out = [w + s for w in out for s in syllables]
    return out


def load_word_corpus(path: str | Path) -> tuple[str, ...]:
    words = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        word = line.strip()
        if word:
            words.append(word)
    return tuple(words)


# -- protocol ---------------------------------------------------------------


def _noise_label(noise: float) -> str:
    return f"{noise:.1f}"


def _stats(samples: Sequence[float]) -> tuple[float, float]:
    mean = statistics.fmean(samples)
    std = statistics.stdev(samples) if len(samples) >= 2 else 0.0
    return mean, std


def run_benchmark(
    config: BenchConfig | None = None,
    kg: KnowledgeGraph | None = None,
    corpus: Sequence[str] | None = None,
    progress: Callable[[str], None] | None = None,
) -> TimingReport:
    """Time both workload families over every (cardinality, parameter) cell.

    Tables are regenerated from a derived seed at every iteration; only the
    mapping discovery and the profiling calls sit between the clock reads.
    """
    cfg = config or BenchConfig()
    kg = kg or build_bench_kg(cfg.members)
    corpus = corpus or default_word_corpus()
    report_rows: list[TimingRow] = []
    say = progress or (lambda message: None)

    level = kg.levels[0]
    member_names = [
        normalize_label(m.iri.rsplit("/", 1)[-1])
        for m in kg.members.get(level.iri, ())
    ]
    profiler_cfg = ProfilerConfig(bins=cfg.bins, threads=cfg.threads)
    total_iters = cfg.iterations + (1 if cfg.warmup else 0)

    for cardinality in cfg.cardinalities:
        for noise in cfg.noise_levels:
            label = _noise_label(noise)
            prof_times: list[float] = []
            map_times: list[float] = []
            for it in range(total_iters):
                seed = f"{cfg.seed}:dimensional:{cardinality}:{label}:{it}"
                table = gen_dimensional_source(cardinality, noise, member_names, seed)
                column = table.columns[0]

                t0 = time.perf_counter()
                mapping = discover_level_mapping(column, kg)
                t_map = time.perf_counter() - t0
                if mapping is None:
                    mapping = Mapping(
                        attribute=column.name,
                        target_iri=level.iri,
                        target_kind="level",
                        score=0.0,
                    )
                t0 = time.perf_counter()
                profile_dimensional(column, mapping, kg)
                t_prof = time.perf_counter() - t0

                if cfg.warmup and it == 0:
                    continue
                prof_times.append(t_prof)
                map_times.append(t_map)
            mean_s, std_s = _stats(prof_times)
            map_mean, map_std = _stats(map_times)
            report_rows.append(
                TimingRow(
                    workload="dimensional",
                    cardinality=cardinality,
                    parameter=label,
                    mean_s=mean_s,
                    std_s=std_s,
                    mapping_mean_s=map_mean,
                    mapping_std_s=map_std,
                )
            )
            say(f"dimensional card={cardinality} noise={label} mean={mean_s:.4f}s")

    for cardinality in cfg.cardinalities:
        kind_times: dict[str, list[float]] = {k: [] for k in TYPED_KINDS}
        for it in range(total_iters):
            seed = f"{cfg.seed}:typed:{cardinality}:{it}"
            table = gen_typed_source(cardinality, corpus, seed)
            for column in table.columns:
                t0 = time.perf_counter()
                profile_column(column, None, profiler_cfg)
                dt = time.perf_counter() - t0
                if cfg.warmup and it == 0:
                    continue
                kind_times[column.name].append(dt)
        for kind in TYPED_KINDS:
            mean_s, std_s = _stats(kind_times[kind])
            report_rows.append(
                TimingRow(
                    workload="typed",
                    cardinality=cardinality,
                    parameter=kind,
                    mean_s=mean_s,
                    std_s=std_s,
                )
            )
            say(f"typed card={cardinality} kind={kind} mean={mean_s:.4f}s")

    return TimingReport(rows=tuple(report_rows))
