from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdprof.bench import (
    REPORT_HEADER,
    TYPED_KINDS,
    BenchConfig,
    TimingReport,
    TimingRow,
    build_bench_kg,
    default_word_corpus,
    gen_dimensional_source,
    gen_typed_source,
    load_word_corpus,
    make_level_members,
    run_benchmark,
)
from mdprof.inference import AttributeCategory, TypingConfig, infer_category
from mdprof.kgmodel import discover_level_mapping, normalize_label
from mdprof.pipeline import ProfilerConfig, profile_column
from mdprof.profiles import profile_dimensional


# --- dimensional generator ---------------------------------------------------


def test_dimensional_generator_exact_noise_cells():
    members = make_level_members(100)
    for card, noise in ((10, 0.5), (100, 0.3), (57, 0.2)):
        table = gen_dimensional_source(card, noise, members, seed=1)
        cells = table.columns[0].cells
        assert len(cells) == card
        member_keys = {normalize_label(m) for m in members}
        unmapped = sum(1 for c in cells if normalize_label(c) not in member_keys)
        assert unmapped == round(noise * card)


def test_dimensional_generator_zero_noise_all_members():
    members = make_level_members(50)
    table = gen_dimensional_source(200, 0.0, members, seed=3)
    member_keys = {normalize_label(m) for m in members}
    assert all(normalize_label(c) in member_keys for c in table.columns[0].cells)


def test_dimensional_generator_full_noise():
    members = make_level_members(50)
    table = gen_dimensional_source(20, 1.0, members, seed=3)
    member_keys = {normalize_label(m) for m in members}
    assert not any(normalize_label(c) in member_keys for c in table.columns[0].cells)


def test_dimensional_generator_deterministic_under_seed():
    members = make_level_members(200)
    a = gen_dimensional_source(500, 0.3, members, seed="bench:1")
    b = gen_dimensional_source(500, 0.3, members, seed="bench:1")
    c = gen_dimensional_source(500, 0.3, members, seed="bench:2")
    assert a.columns[0].cells == b.columns[0].cells
    assert a.columns[0].cells != c.columns[0].cells


def test_dimensional_generator_validation():
    with pytest.raises(ValueError):
        gen_dimensional_source(10, 0.5, [], seed=0)
    with pytest.raises(ValueError):
        gen_dimensional_source(10, 1.5, ["m"], seed=0)


@given(
    card=st.integers(1, 400),
    noise_tenths=st.integers(0, 10),
    member_count=st.integers(1, 300),
    seed=st.integers(0, 99),
)
@settings(max_examples=40)
def test_dimensional_generator_noise_exact_property(
    card, noise_tenths, member_count, seed
):
    noise = noise_tenths / 10.0
    members = make_level_members(member_count)
    table = gen_dimensional_source(card, noise, members, seed=seed)
    cells = table.columns[0].cells
    assert len(cells) == card
    member_keys = {normalize_label(m) for m in members}
    unmapped = sum(1 for c in cells if normalize_label(c) not in member_keys)
    assert unmapped == round(noise * card)


def test_containment_score_tracks_noise_exactly():
    kg = build_bench_kg(1_000)
    members = make_level_members(1_000)
    for noise in (0.0, 0.1, 0.2, 0.3, 0.4, 0.5):
        table = gen_dimensional_source(1_000, noise, members, seed=7)
        mapping = discover_level_mapping(table.columns[0], kg)
        if noise == 0.5:
            # at threshold: score 0.5 is still >= 0.5
            assert mapping is not None
        assert mapping is not None
        assert mapping.score == pytest.approx(1.0 - noise)


def test_profile_others_matches_planted_noise():
    kg = build_bench_kg(500)
    members = make_level_members(500)
    for noise in (0.0, 0.25, 0.5):
        card = 800
        table = gen_dimensional_source(card, noise, members, seed=11)
        mapping = discover_level_mapping(table.columns[0], kg, threshold=0.4)
        assert mapping is not None
        profile = profile_dimensional(table.columns[0], mapping, kg)
        assert profile.others == round(noise * card)
        assert sum(f for _, f in profile.elements) == card - profile.others


# --- typed generator ---------------------------------------------------------


def test_typed_source_shape_and_inference():
    corpus = default_word_corpus(500)
    table = gen_typed_source(300, corpus, seed=5)
    assert [c.name for c in table.columns] == list(TYPED_KINDS)
    assert table.row_count == 300
    config = TypingConfig()
    for column, expected in zip(table.columns, TYPED_KINDS):
        got = infer_category(column, config).category
        assert got is AttributeCategory(expected)


def test_typed_source_value_ranges():
    corpus = default_word_corpus(500)
    card = 200
    table = gen_typed_source(card, corpus, seed=9)
    by_name = {c.name: c for c in table.columns}
    assert all(0 <= int(v) <= card for v in by_name["integer"].cells)
    assert all(0.0 <= float(v) <= card for v in by_name["decimal"].cells)
    assert set(by_name["categorical"].cells) <= {"alpha", "beta", "gamma", "delta"}
    for cell in by_name["textual"].cells:
        words = cell.split(" ")
        assert len(words) == 5
        assert all(w in corpus for w in words)
    years = {int(c[:4]) for c in by_name["datetime"].cells}
    assert years <= set(range(1950, 2021))


def test_typed_source_deterministic():
    corpus = default_word_corpus(100)
    a = gen_typed_source(50, corpus, seed="s:1")
    b = gen_typed_source(50, corpus, seed="s:1")
    assert a == b


# --- corpus ------------------------------------------------------------------


def test_default_corpus_size_and_uniqueness():
    corpus = default_word_corpus()
    assert len(corpus) == 83_740
    assert len(set(corpus)) == 83_740
    assert all(word.islower() and word.isalpha() for word in corpus[:200])


def test_default_corpus_prefix_stable():
    assert default_word_corpus(10) == default_word_corpus(100)[:10]


def test_load_word_corpus(tmp_path):
    path = tmp_path / "words.txt"
    path.write_text("alpha\n\n beta \ngamma\n", encoding="utf-8")
    assert load_word_corpus(path) == ("alpha", "beta", "gamma")


# --- report ------------------------------------------------------------------


def sample_report():
    return TimingReport(
        rows=(
            TimingRow("dimensional", 100, "0.0", 0.5, 0.1, 0.2, 0.05),
            TimingRow("dimensional", 100, "0.5", 0.4, 0.1, 0.1, 0.05),
            TimingRow("typed", 100, "integer", 0.3, 0.0),
            TimingRow("typed", 100, "textual", 0.9, 0.0),
        )
    )


def test_report_csv_layout():
    text = sample_report().to_csv_text()
    lines = text.strip().splitlines()
    assert lines[0] == ",".join(REPORT_HEADER)
    assert len(lines) == 5
    first = lines[1].split(",")
    assert first[0] == "dimensional"
    assert first[1] == "100"
    assert first[2] == "0.0"
    assert first[3] == "0.500000000"
    # typed rows leave the mapping columns empty
    typed = lines[3].split(",")
    assert typed[5] == "" and typed[6] == ""


def test_figure_csv_filenames(tmp_path):
    written = sample_report().write_figure_csvs(tmp_path)
    names = sorted(p.name for p in written)
    assert names == [
        "0.0_noise_level.csv",
        "0.5_noise_level.csv",
        "mean_integer_time_processing.csv",
        "mean_string_time_processing.csv",
    ]
    noise = (tmp_path / "0.0_noise_level.csv").read_text(encoding="utf-8")
    assert noise.splitlines()[0] == "cardinality,mean_s,std_s,mapping_mean_s,mapping_std_s"
    typed = (tmp_path / "mean_integer_time_processing.csv").read_text(encoding="utf-8")
    assert typed.splitlines()[0] == "cardinality,mean_s,std_s"
    assert typed.splitlines()[1].startswith("100,")


def test_bench_config_validation():
    with pytest.raises(ValueError):
        BenchConfig(cardinalities=())
    with pytest.raises(ValueError):
        BenchConfig(noise_levels=(1.5,))
    with pytest.raises(ValueError):
        BenchConfig(iterations=0)
    with pytest.raises(ValueError):
        BenchConfig(members=0)


# --- protocol ----------------------------------------------------------------


def small_config(**overrides):
    params = dict(
        cardinalities=(200,),
        noise_levels=(0.0, 0.5),
        iterations=2,
        seed=0,
        members=100,
        warmup=False,
    )
    params.update(overrides)
    return BenchConfig(**params)


def test_run_benchmark_row_grid():
    report = run_benchmark(small_config(), corpus=default_word_corpus(200))
    dim = [r for r in report.rows if r.workload == "dimensional"]
    typed = [r for r in report.rows if r.workload == "typed"]
    assert [(r.cardinality, r.parameter) for r in dim] == [(200, "0.0"), (200, "0.5")]
    assert [r.parameter for r in typed] == list(TYPED_KINDS)
    for row in dim:
        assert row.mean_s >= 0.0
        assert row.mapping_mean_s is not None and row.mapping_mean_s >= 0.0
    for row in typed:
        assert row.mapping_mean_s is None and row.mapping_std_s is None


def test_run_benchmark_single_iteration_zero_std():
    report = run_benchmark(
        small_config(iterations=1), corpus=default_word_corpus(200)
    )
    assert all(r.std_s == 0.0 for r in report.rows)
    assert all(
        r.mapping_std_s == 0.0
        for r in report.rows
        if r.workload == "dimensional"
    )


def test_run_benchmark_progress_hook_called():
    seen = []
    run_benchmark(
        small_config(noise_levels=(0.0,), iterations=1),
        corpus=default_word_corpus(200),
        progress=seen.append,
    )
    assert seen
    assert any("dimensional" in line for line in seen)
    assert any("typed" in line for line in seen)


def test_run_benchmark_timings_positive_and_ordered():
    cfg = small_config(cardinalities=(100, 300), noise_levels=(0.0,), iterations=1)
    report = run_benchmark(cfg, corpus=default_word_corpus(200))
    dim = [r for r in report.rows if r.workload == "dimensional"]
    assert [r.cardinality for r in dim] == [100, 300]
    # all timed phases ran
    assert all(r.mean_s > 0 for r in report.rows)
