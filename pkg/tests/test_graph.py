from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mdprof.errors import DuplicateAttributeName, ProfileCategoryMismatch
from mdprof.graph import (
    DL_ATTRIBUTE_CATEGORY,
    DL_CONTAINS,
    DL_DOMAIN,
    DL_DOMAINS,
    DL_FREQUENCY,
    DL_ITEMS,
    DL_MAP_TO,
    DL_OTHERS,
    DL_SOURCE,
    SourceMetadata,
    attribute_name_from_domain_iri,
    build_graph,
    find_source_iri,
    mint_iri,
    parse_graph_text,
    read_attribute,
    source_name_from_iri,
    summarize,
)
from mdprof.inference import AttributeCategory
from mdprof.ingest import Table
from mdprof.kgmodel import Mapping
from mdprof.pipeline import ProfilerConfig, profile_source
from mdprof.profiles import CategoricalProfile, NumericProfile
from mdprof.rdfterms import (
    PREFIXES,
    XSD_DATE,
    XSD_DECIMAL,
    XSD_INTEGER,
    Iri,
    Literal,
)
from mdprof.turtle import serialize_turtle


@pytest.fixture
def vehicles_graph(kg, vehicles_table):
    return profile_source(vehicles_table, kg).to_graph()


def spo_index(graph):
    return graph.spo()


def literal_value(graph, subject_iri, prop):
    objs = graph.objects(Iri(subject_iri), Iri(prop))
    assert len(objs) == 1, f"expected one {prop} on {subject_iri}"
    return objs[0]


# --- IRI minting -------------------------------------------------------------


def test_mint_source_iri_percent_encodes():
    iri = mint_iri("source", name="my data.csv")
    assert iri.endswith("/source/my%20data.csv")
    assert source_name_from_iri(iri) == "my data.csv"


def test_mint_iri_injective_on_tricky_names():
    a = mint_iri("source", name="a/b")
    b = mint_iri("source", name="a%2Fb")
    assert a != b
    assert source_name_from_iri(a) == "a/b"
    assert source_name_from_iri(b) == "a%2Fb"


def test_mint_domain_round_trips_attribute_name():
    src = mint_iri("source", name="s")
    dom = mint_iri("domain", parent=src, name="città / zone")
    assert attribute_name_from_domain_iri(dom) == "città / zone"


def test_mint_iri_validation():
    with pytest.raises(ValueError):
        mint_iri("source")
    with pytest.raises(ValueError):
        mint_iri("domain", name="x")
    with pytest.raises(ValueError):
        mint_iri("profile-element", parent="p")
    with pytest.raises(ValueError):
        mint_iri("nonsense", name="x")


@given(name=st.text(min_size=1, max_size=40))
def test_mint_source_round_trip_property(name):
    assert source_name_from_iri(mint_iri("source", name=name)) == name


# --- vehicles graph shape ----------------------------------------------------


def test_vehicles_graph_source_node(vehicles_graph):
    g = vehicles_graph
    sources = g.subjects_of_type(DL_SOURCE)
    assert len(sources) == 1
    src = find_source_iri(g)
    assert literal_value(g, src, DL_ITEMS) == Literal("30", XSD_INTEGER)
    assert literal_value(g, src, DL_DOMAINS) == Literal("4", XSD_INTEGER)
    assert len(g.objects(Iri(src), Iri(DL_CONTAINS))) == 4
    assert len(g.subjects_of_type(DL_DOMAIN)) == 4


def test_vehicles_city_maps_to_level(vehicles_graph, kg):
    g = vehicles_graph
    src = find_source_iri(g)
    dom = mint_iri("domain", parent=src, name="city")
    targets = g.objects(Iri(dom), Iri(DL_MAP_TO))
    assert [t.value for t in targets] == [
        next(lv.iri for lv in kg.levels if lv.name == "City")
    ]
    assert literal_value(g, dom, DL_ATTRIBUTE_CATEGORY) == Literal("categorical")


def test_vehicles_city_frequencies_typed_integer(vehicles_graph):
    g = vehicles_graph
    freqs = [o for s, p, o in g.triples if p == Iri(DL_FREQUENCY)]
    assert freqs and all(o.datatype == XSD_INTEGER for o in freqs)
    others = [o for s, p, o in g.triples if p == Iri(DL_OTHERS)]
    assert others == [Literal("3", XSD_INTEGER)]
    assert sum(int(o.lexical) for o in freqs) + 3 == 30


def test_vehicles_vat_statistics_typed_decimal(vehicles_graph):
    g = vehicles_graph
    src = find_source_iri(g)
    category, mapping_iri, profile = read_attribute(g, src, "vat")
    assert category is AttributeCategory.INTEGER
    assert mapping_iri is not None and mapping_iri.endswith("VAT")
    assert isinstance(profile, NumericProfile)
    # mean/median emitted as xsd:decimal even for an integer attribute
    iprofile = g.objects(
        Iri(mint_iri("domain", parent=src, name="vat")),
        Iri("http://kdmg.dii.univpm.it/dl/hasIProfile"),
    )[0]
    mean = literal_value(g, iprofile.value, "http://kdmg.dii.univpm.it/dl/mean")
    maxv = literal_value(g, iprofile.value, "http://kdmg.dii.univpm.it/dl/max")
    nulls = literal_value(g, iprofile.value, "http://kdmg.dii.univpm.it/dl/null")
    assert mean.datatype == XSD_DECIMAL
    assert maxv == Literal("240", XSD_DECIMAL)
    assert nulls == Literal("1", XSD_INTEGER)


def test_vehicles_day_dates_typed(vehicles_graph):
    g = vehicles_graph
    src = find_source_iri(g)
    iprofile = g.objects(
        Iri(mint_iri("domain", parent=src, name="day")),
        Iri("http://kdmg.dii.univpm.it/dl/hasIProfile"),
    )[0]
    min_date = literal_value(
        g, iprofile.value, "http://kdmg.dii.univpm.it/dl/minDate"
    )
    assert min_date.datatype == XSD_DATE


def test_zero_row_source_items_zero():
    table = Table(name="empty", columns=(), row_count=0)
    g = profile_source(table).to_graph()
    src = find_source_iri(g)
    assert literal_value(g, src, DL_ITEMS) == Literal("0", XSD_INTEGER)
    assert literal_value(g, src, DL_DOMAINS) == Literal("0", XSD_INTEGER)


def test_unrecognized_attribute_has_no_profile_node():
    meta = SourceMetadata(name="s", location="s", items=2, domains=1)
    g = build_graph(meta, [("junk", AttributeCategory.UNRECOGNIZED, None, None)])
    dom = mint_iri("domain", parent=find_source_iri(g), name="junk")
    props = g.spo()[dom]
    assert set(props) == {
        "http://www.w3.org/1999/02/22-rdf-syntax-ns#type",
        DL_ATTRIBUTE_CATEGORY,
    }


def test_dcmi_fields_emitted_when_present():
    meta = SourceMetadata(
        name="s",
        location="/tmp/s.csv",
        items=0,
        domains=0,
        title="Traffic",
        creator="City Hall",
        license="CC-BY",
        contributors=("A", "B"),
        subjects=("http://example.org/topic",),
    )
    g = build_graph(meta, [])
    text = serialize_turtle(g.triples, g.prefixes)
    assert 'dcterms:title "Traffic"' in text
    assert 'dcterms:creator "City Hall"' in text
    assert 'dcterms:license "CC-BY"' in text
    contributors = [
        o for s, p, o in g.triples if p.value.endswith("contributor")
    ]
    assert sorted(c.lexical for c in contributors) == ["A", "B"]
    assert "dcterms:subject <http://example.org/topic>" in text


def test_duplicate_attribute_names_rejected():
    meta = SourceMetadata(name="s", location="s", items=0, domains=2)
    entry = ("x", AttributeCategory.INTEGER, None, None)
    with pytest.raises(DuplicateAttributeName):
        build_graph(meta, [entry, entry])


def test_profile_category_mismatch_rejected():
    meta = SourceMetadata(name="s", location="s", items=1, domains=1)
    profile = CategoricalProfile(null=0, categories=(("a", 1),))
    with pytest.raises(ProfileCategoryMismatch):
        build_graph(meta, [("x", AttributeCategory.INTEGER, None, profile)])


def test_mapping_without_dimensional_profile_allowed_for_indicators():
    meta = SourceMetadata(name="s", location="s", items=1, domains=1)
    profile = NumericProfile(
        max=1.0,
        min=1.0,
        mean=1.0,
        median=1.0,
        distinct=1,
        null=0,
        distribution=__import__("mdprof.profiles", fromlist=["Distribution"]).Distribution(
            ((1.0, 1.0, 1),)
        ),
    )
    mapping = Mapping(
        attribute="x",
        target_iri="http://example.org/Ind",
        target_kind="indicator",
        score=1.0,
    )
    g = build_graph(meta, [("x", AttributeCategory.INTEGER, mapping, profile)])
    dom = mint_iri("domain", parent=find_source_iri(g), name="x")
    assert g.objects(Iri(dom), Iri(DL_MAP_TO)) == [Iri("http://example.org/Ind")]


# --- round trips and determinism ---------------------------------------------


def test_read_attribute_round_trips_every_vehicle_attribute(
    vehicles_graph, vehicles_table, kg
):
    profiled = profile_source(vehicles_table, kg)
    src = find_source_iri(vehicles_graph)
    for report in profiled.attributes:
        category, mapping_iri, profile = read_attribute(
            vehicles_graph, src, report.name
        )
        assert category is report.category
        assert mapping_iri == (report.mapping.target_iri if report.mapping else None)
        assert profile == report.profile


def test_read_attribute_unknown_name_raises(vehicles_graph):
    with pytest.raises(KeyError):
        read_attribute(vehicles_graph, find_source_iri(vehicles_graph), "nope")


def test_serialization_round_trip_preserves_triples(vehicles_graph):
    text = serialize_turtle(vehicles_graph.triples, vehicles_graph.prefixes)
    parsed = parse_graph_text(text)
    assert parsed.triples == vehicles_graph.triples


def test_graph_bytes_deterministic_across_rebuilds(vehicles_table, kg):
    texts = set()
    for _ in range(3):
        g = profile_source(vehicles_table, kg, ProfilerConfig()).to_graph()
        texts.add(serialize_turtle(g.triples, g.prefixes))
    assert len(texts) == 1


def test_exactly_five_prefixes(vehicles_graph):
    text = serialize_turtle(vehicles_graph.triples, vehicles_graph.prefixes)
    prefix_lines = [l for l in text.splitlines() if l.startswith("@prefix")]
    assert len(prefix_lines) == 5
    for name in PREFIXES:
        assert any(l.startswith(f"@prefix {name}:") for l in prefix_lines)


def test_summarize_vehicles(vehicles_graph):
    summary = summarize(vehicles_graph)
    assert summary.items == 30
    assert summary.domains == 4
    assert sorted(summary.attributes) == ["city", "day", "notes", "vat"]
    assert any(iri.endswith("City") for iri in summary.levels)
    assert any(iri.endswith("VAT") for iri in summary.indicators)
