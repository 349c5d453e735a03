from __future__ import annotations

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

PKG_ROOT = Path(__file__).resolve().parent.parent


def run_cli(*args, env=None, cwd=None):
    merged = dict(os.environ)
    merged.pop("MDPROF_CATALOG", None)
    merged.pop("MDPROF_KG", None)
    merged.pop("MDPROF_THREADS", None)
    if env:
        merged.update(env)
    return subprocess.run(
        [sys.executable, "-m", "mdprof", *args],
        capture_output=True,
        text=True,
        env=merged,
        cwd=cwd or PKG_ROOT,
    )


@pytest.fixture
def data(kg_path, vehicles_path):
    return {"kg": str(kg_path), "vehicles": str(vehicles_path)}


# --- profile -----------------------------------------------------------------


def test_profile_writes_turtle_to_stdout(data):
    result = run_cli("profile", data["vehicles"], "--kg", data["kg"])
    assert result.returncode == 0, result.stderr
    assert result.stdout.startswith("@prefix")
    assert "dl:items" in result.stdout
    assert 'dl:mapTo' in result.stdout


def test_profile_byte_identical_across_runs(data, tmp_path):
    out1 = tmp_path / "a.ttl"
    out2 = tmp_path / "b.ttl"
    for out in (out1, out2):
        result = run_cli(
            "profile", data["vehicles"], "--kg", data["kg"], "--out", str(out)
        )
        assert result.returncode == 0, result.stderr
    assert out1.read_bytes() == out2.read_bytes()


def test_profile_ntriples_output(data):
    result = run_cli(
        "profile", data["vehicles"], "--kg", data["kg"], "--format", "ntriples"
    )
    assert result.returncode == 0
    assert "@prefix" not in result.stdout
    lines = [l for l in result.stdout.splitlines() if l]
    assert all(l.endswith(" .") for l in lines)
    assert lines == sorted(lines)


def test_profile_missing_file_exits_one():
    result = run_cli("profile", "/nonexistent/file.csv")
    assert result.returncode == 1
    assert result.stderr.startswith("error[E_UNREADABLE]")
    assert result.stdout == ""


def test_profile_undetectable_format_exits_one(tmp_path):
    path = tmp_path / "data.xyz"
    path.write_bytes(b"\x00\x01\x02\xff binary blob \x00")
    result = run_cli("profile", str(path))
    assert result.returncode == 1
    assert result.stderr.startswith("error[E_FORMAT]")


def test_profile_ragged_csv_reports_line(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b\n1,2\n3\n", encoding="utf-8")
    result = run_cli("profile", str(path))
    assert result.returncode == 1
    assert result.stderr.startswith("error[E_RAGGED]")
    assert "3" in result.stderr


def test_profile_bad_force_type_exits_two(data):
    result = run_cli("profile", data["vehicles"], "--force-type", "vat=nonsense")
    assert result.returncode == 2
    assert result.stderr.startswith("error[E_USAGE]") or "usage" in result.stderr.lower()


def test_profile_incompatible_forced_category(data):
    result = run_cli("profile", data["vehicles"], "--force-type", "notes=integer")
    assert result.returncode == 1
    assert result.stderr.startswith("error[E_CATEGORY]")


def test_profile_unknown_flag_exits_two(data):
    result = run_cli("profile", data["vehicles"], "--bogus-flag")
    assert result.returncode == 2


def test_profile_conflicting_date_order_flags_exit_two(data):
    result = run_cli("profile", data["vehicles"], "--day-first", "--month-first")
    assert result.returncode == 2


# --- validate ----------------------------------------------------------------


def test_validate_conforming_graph(data, tmp_path):
    out = tmp_path / "g.ttl"
    run_cli("profile", data["vehicles"], "--kg", data["kg"], "--out", str(out))
    result = run_cli("validate", str(out))
    assert result.returncode == 0
    assert "conforms" in result.stdout


def test_validate_broken_graph(tmp_path):
    path = tmp_path / "bad.ttl"
    path.write_text(
        "@prefix dl: <http://kdmg.dii.univpm.it/dl/> .\n"
        "<http://x/a> a dl:Source .\n"
        "<http://x/b> a dl:Source .\n",
        encoding="utf-8",
    )
    result = run_cli("validate", str(path))
    assert result.returncode == 1
    assert result.stderr.startswith("error[E_SHAPE]")
    assert "exactly one dl:Source" in result.stderr


def test_validate_unparseable_turtle(tmp_path):
    path = tmp_path / "bad.ttl"
    path.write_text("this is not turtle", encoding="utf-8")
    result = run_cli("validate", str(path))
    assert result.returncode == 1
    assert result.stderr.startswith("error[E_RDF_PARSE]")


# --- register / query / show -------------------------------------------------


def test_register_query_show_round_trip(data, tmp_path):
    catalog = tmp_path / "cat"
    graph_path = tmp_path / "g.ttl"
    run_cli("profile", data["vehicles"], "--kg", data["kg"], "--out", str(graph_path))

    registered = run_cli("register", str(graph_path), "--catalog", str(catalog))
    assert registered.returncode == 0, registered.stderr
    iri = registered.stdout.strip()
    assert iri.endswith("vehicles.csv") or "vehicles" in iri

    hits = run_cli("query", "mapTo=kg:City", "--catalog", str(catalog))
    assert hits.returncode == 0
    assert hits.stdout.strip() == iri

    misses = run_cli("query", "items>100", "--catalog", str(catalog))
    assert misses.returncode == 0
    assert misses.stdout.strip() == ""

    conj = run_cli(
        "query", "items=30", "--where", "max(vat)>100", "--catalog", str(catalog)
    )
    assert conj.returncode == 0
    assert conj.stdout.strip() == iri

    summary = run_cli("show", iri, "--catalog", str(catalog))
    assert summary.returncode == 0
    assert "items" in summary.stdout and "30" in summary.stdout

    attr = run_cli("show", iri, "vat", "--catalog", str(catalog))
    assert attr.returncode == 0
    assert "120" in attr.stdout  # median
    assert "integer" in attr.stdout


def test_profile_with_register_flag(data, tmp_path):
    catalog = tmp_path / "cat"
    result = run_cli(
        "profile",
        data["vehicles"],
        "--kg",
        data["kg"],
        "--register",
        "--catalog",
        str(catalog),
        "--out",
        str(tmp_path / "out.ttl"),
    )
    assert result.returncode == 0, result.stderr
    index = json.loads((catalog / "index.json").read_text(encoding="utf-8"))
    assert len(index) == 1


def test_query_without_expressions_exits_two(tmp_path):
    result = run_cli("query", "--catalog", str(tmp_path / "cat"))
    assert result.returncode == 2


def test_query_malformed_expression_is_domain_error(tmp_path):
    result = run_cli("query", "bogus~3", "--catalog", str(tmp_path / "cat"))
    assert result.returncode == 1
    assert result.stderr.startswith("error[E_QUERY]")


def test_show_unknown_source(tmp_path):
    result = run_cli("show", "http://x/none", "--catalog", str(tmp_path / "cat"))
    assert result.returncode == 1
    assert result.stderr.startswith("error[E_UNKNOWN_SOURCE]")


def test_show_unknown_attribute(data, tmp_path):
    catalog = tmp_path / "cat"
    graph_path = tmp_path / "g.ttl"
    run_cli("profile", data["vehicles"], "--kg", data["kg"], "--out", str(graph_path))
    registered = run_cli("register", str(graph_path), "--catalog", str(catalog))
    iri = registered.stdout.strip()
    result = run_cli("show", iri, "nope", "--catalog", str(catalog))
    assert result.returncode == 1
    assert result.stderr.startswith("error[E_UNKNOWN_ATTR]")


def test_register_rejects_invalid_graph(tmp_path):
    path = tmp_path / "bad.ttl"
    path.write_text(
        "@prefix dl: <http://kdmg.dii.univpm.it/dl/> .\n"
        "<http://x/a> a dl:Source .\n"
        "<http://x/b> a dl:Source .\n",
        encoding="utf-8",
    )
    result = run_cli("register", str(path), "--catalog", str(tmp_path / "cat"))
    assert result.returncode == 1
    assert result.stderr.startswith("error[E_SHAPE]")
    assert not (tmp_path / "cat" / "index.json").exists()


# --- configuration layering --------------------------------------------------


def test_env_var_supplies_catalog(data, tmp_path):
    catalog = tmp_path / "envcat"
    graph_path = tmp_path / "g.ttl"
    run_cli("profile", data["vehicles"], "--kg", data["kg"], "--out", str(graph_path))
    result = run_cli(
        "register", str(graph_path), env={"MDPROF_CATALOG": str(catalog)}
    )
    assert result.returncode == 0, result.stderr
    assert (catalog / "index.json").exists()


def test_flag_beats_env(data, tmp_path):
    flag_cat = tmp_path / "flagcat"
    env_cat = tmp_path / "envcat"
    graph_path = tmp_path / "g.ttl"
    run_cli("profile", data["vehicles"], "--kg", data["kg"], "--out", str(graph_path))
    result = run_cli(
        "register",
        str(graph_path),
        "--catalog",
        str(flag_cat),
        env={"MDPROF_CATALOG": str(env_cat)},
    )
    assert result.returncode == 0
    assert (flag_cat / "index.json").exists()
    assert not env_cat.exists()


def test_config_file_supplies_values(data, tmp_path):
    catalog = tmp_path / "cfgcat"
    config = tmp_path / "mdprof.toml"
    config.write_text(
        f'catalog = "{catalog}"\nkg = "{data["kg"]}"\n', encoding="utf-8"
    )
    graph_path = tmp_path / "g.ttl"
    result = run_cli(
        "profile",
        data["vehicles"],
        "--config",
        str(config),
        "--out",
        str(graph_path),
        "--register",
    )
    assert result.returncode == 0, result.stderr
    assert (catalog / "index.json").exists()
    # kg came from the config file: the graph must hold a level mapping
    assert "dl:mapTo" in graph_path.read_text(encoding="utf-8")


def test_env_beats_config_file(data, tmp_path):
    cfg_cat = tmp_path / "cfgcat"
    env_cat = tmp_path / "envcat"
    config = tmp_path / "mdprof.toml"
    config.write_text(f'catalog = "{cfg_cat}"\n', encoding="utf-8")
    graph_path = tmp_path / "g.ttl"
    run_cli("profile", data["vehicles"], "--kg", data["kg"], "--out", str(graph_path))
    result = run_cli(
        "register",
        str(graph_path),
        "--config",
        str(config),
        env={"MDPROF_CATALOG": str(env_cat)},
    )
    assert result.returncode == 0
    assert (env_cat / "index.json").exists()
    assert not cfg_cat.exists()


def test_missing_explicit_config_exits_two(data, tmp_path):
    result = run_cli(
        "profile", data["vehicles"], "--config", str(tmp_path / "absent.toml")
    )
    assert result.returncode == 2


# --- bench -------------------------------------------------------------------


def test_bench_tiny_run_writes_report_and_figures(tmp_path):
    out = tmp_path / "report.csv"
    figures = tmp_path / "figures"
    result = run_cli(
        "bench",
        "--cards",
        "50",
        "--noise",
        "0.0,0.5",
        "--iters",
        "1",
        "--members",
        "50",
        "--no-warmup",
        "--out",
        str(out),
    )
    assert result.returncode == 0, result.stderr
    header = out.read_text(encoding="utf-8").splitlines()[0]
    assert header == "workload,cardinality,parameter,mean_s,std_s,mapping_mean_s,mapping_std_s"

    result = run_cli(
        "bench",
        "--cards",
        "50",
        "--noise",
        "0.0",
        "--iters",
        "1",
        "--members",
        "50",
        "--no-warmup",
        "--out",
        str(out),
        "--gnuplot-data",
        str(figures),
    )
    assert result.returncode == 0, result.stderr
    names = sorted(p.name for p in figures.iterdir())
    assert "0.0_noise_level.csv" in names
    assert "mean_real_time_processing.csv" in names


def test_bench_rejects_bad_noise():
    result = run_cli("bench", "--cards", "10", "--noise", "2.0", "--iters", "1")
    assert result.returncode == 2
