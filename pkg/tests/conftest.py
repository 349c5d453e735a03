from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from mdprof.ingest import load_source
from mdprof.kgmodel import load_kg

DATA = Path(__file__).parent / "data"

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def kg():
    return load_kg(DATA / "kg.ttl")


@pytest.fixture()
def vehicles_table():
    return load_source(DATA / "vehicles.csv")


@pytest.fixture()
def kg_path():
    return DATA / "kg.ttl"


@pytest.fixture()
def vehicles_path():
    return DATA / "vehicles.csv"
