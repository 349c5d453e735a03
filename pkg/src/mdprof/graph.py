"""Build and read RDF metadata graphs describing profiled sources.

One graph describes one source: a dl:Source node (also void:Dataset) linked
through dl:contains to one dl:Domain node per attribute, each carrying its
category, optional mapping, and profile subtree. Node IRIs are minted
deterministically from the source and attribute names (percent-encoded), so
names are recoverable from the IRIs and lookup never needs label triples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Sequence
from urllib.parse import quote, unquote

from . import turtle
from .errors import DuplicateAttributeName, ProfileCategoryMismatch
from .inference import AttributeCategory
from .profiles import (
    CategoricalProfile,
    DatetimeProfile,
    DimensionalProfile,
    Distribution,
    EmptyProfile,
    NumericProfile,
    Profile,
    TextualProfile,
)
from .rdfterms import (
    DCTERMS,
    DL,
    PREFIXES,
    RDF_TYPE,
    VOID,
    BlankNode,
    Iri,
    Literal,
    Object,
    Triple,
    date_literal,
    decimal_literal,
    integer_literal,
    parse_date,
    parse_decimal,
    parse_integer,
    string_literal,
)

if TYPE_CHECKING:
    from .kgmodel import Mapping

# Classes
DL_SOURCE = DL + "Source"
DL_DOMAIN = DL + "Domain"
DL_DPROFILE = DL + "DProfile"
DL_DPROFILE_ELEMENT = DL + "DProfileElement"
DL_IPROFILE = DL + "IProfile"
DL_DISTRIBUTION = DL + "Distribution"
DL_DISTRIBUTION_ELEMENT = DL + "DistributionElement"
DL_CATEGORIES = DL + "Categories"
DL_CATEGORY_ELEMENT = DL + "CategoryElement"
DL_YEARS = DL + "Years"
DL_YEAR_ELEMENT = DL + "YearElement"
DL_WORDS_CLASS = DL + "Words"
DL_WORD_ELEMENT = DL + "WordElement"
VOID_DATASET = VOID + "Dataset"

# Source-level properties
DL_LOCATION = DL + "location"
DL_DOMAINS = DL + "domains"
DL_ITEMS = DL + "items"
DL_CONTAINS = DL + "contains"

# Domain-level properties
DL_ATTRIBUTE_CATEGORY = DL + "attributeCategory"
DL_MAP_TO = DL + "mapTo"
DL_HAS_DPROFILE = DL + "hasDProfile"
DL_HAS_IPROFILE = DL + "hasIProfile"

# Dimensional profile
DL_HAS_DPROFILE_ELEMENT = DL + "hasDProfileElement"
DL_TO_MEMBER = DL + "toMember"
DL_FREQUENCY = DL + "frequency"
DL_OTHERS = DL + "others"

# Numeric profile
DL_MAX = DL + "max"
DL_MIN = DL + "min"
DL_MEAN = DL + "mean"
DL_MEDIAN = DL + "median"
DL_DISTINCT = DL + "distinct"
DL_NULL = DL + "null"
DL_HAS_DISTRIBUTION = DL + "hasDistribution"
DL_HAS_DISTRIBUTION_ELEMENT = DL + "hasDistributionElement"
DL_START_RANGE = DL + "start_range"
DL_END_RANGE = DL + "end_range"
DL_COUNT = DL + "count"

# Categorical profile
DL_HAS_CATEGORIES = DL + "hasCategories"
DL_HAS_CATEGORY_ELEMENT = DL + "hasCategoryElement"
DL_CATEGORY = DL + "category"
DL_CATEGORY_COUNT = DL + "categoryCount"

# Datetime profile
DL_MAX_DATE = DL + "maxDate"
DL_MIN_DATE = DL + "minDate"
DL_HAS_YEARS = DL + "hasYears"
DL_HAS_YEAR_ELEMENT = DL + "hasYearElement"
DL_YEAR = DL + "year"
DL_YEAR_COUNT = DL + "yearCount"

# Textual profile
DL_WORDS = DL + "words"
DL_HAS_WORDS = DL + "hasWords"
DL_HAS_WORD_ELEMENT = DL + "hasWordElement"
DL_WORD = DL + "word"
DL_WORD_COUNT = DL + "wordCount"

_DCMI_SINGLE = (
    ("title", DCTERMS + "title"),
    ("description", DCTERMS + "description"),
    ("format", DCTERMS + "format"),
    ("creator", DCTERMS + "creator"),
    ("publisher", DCTERMS + "publisher"),
    ("date", DCTERMS + "date"),
    ("license", DCTERMS + "license"),
)
DCTERMS_CONTRIBUTOR = DCTERMS + "contributor"
DCTERMS_SUBJECT = DCTERMS + "subject"


@dataclass
class MetaGraph:
    """A set of triples plus the prefix bindings used when serializing."""

    triples: set[Triple] = field(default_factory=set)
    prefixes: dict[str, str] = field(default_factory=lambda: dict(PREFIXES))

    def add(self, s, p, o) -> None:
        self.triples.add((s, p, o))

    def objects(self, subject, predicate) -> list[Object]:
        return [o for s, p, o in self.triples if s == subject and p == predicate]

    def subjects_of_type(self, class_iri: str) -> list[Iri]:
        return sorted(
            (
                s
                for s, p, o in self.triples
                if p == RDF_TYPE and o == Iri(class_iri) and isinstance(s, Iri)
            ),
            key=lambda i: i.value,
        )

    def spo(self) -> dict[str, dict[str, list[Object]]]:
        """subject IRI -> predicate IRI -> objects, for read-heavy access."""
        out: dict[str, dict[str, list[Object]]] = {}
        for s, p, o in self.triples:
            if isinstance(s, Iri):
                out.setdefault(s.value, {}).setdefault(p.value, []).append(o)
        return out

    def to_turtle(self) -> str:
        return turtle.serialize_turtle(self.triples, self.prefixes)

    def to_ntriples(self) -> str:
        return turtle.serialize_ntriples(self.triples)


def parse_graph_text(text: str) -> MetaGraph:
    triples, prefixes = turtle.parse_text(text)
    merged = dict(PREFIXES)
    merged.update(prefixes)
    return MetaGraph(triples=triples, prefixes=merged)


def parse_graph_file(path) -> MetaGraph:
    triples, prefixes = turtle.parse_file(path)
    merged = dict(PREFIXES)
    merged.update(prefixes)
    return MetaGraph(triples=triples, prefixes=merged)


@dataclass(frozen=True)
class SourceMetadata:
    """Identity and optional DCMI description of one profiled source."""

    name: str
    location: str
    items: int
    domains: int
    title: str | None = None
    description: str | None = None
    format: str | None = None
    creator: str | None = None
    publisher: str | None = None
    contributors: tuple[str, ...] = ()
    date: str | None = None
    license: str | None = None
    subjects: tuple[str, ...] = ()  # IRIs


def mint_iri(
    kind: str,
    parent: str | None = None,
    name: str | None = None,
    index: int | None = None,
) -> str:
    """Deterministic IRI for a node of the metadata graph.

    Kinds: source (name), domain (parent + name), profile (parent + name),
    profile-element (parent + index). Names are percent-encoded, so minting
    is injective and names decode back out of the IRI.
    """
    if kind == "source":
        if not name:
            raise ValueError("source IRIs need a name")
        return f"{DL}source/{quote(name, safe='')}"
    if kind == "domain":
        if not parent or not name:
            raise ValueError("domain IRIs need a parent and a name")
        return f"{parent}/domain/{quote(name, safe='')}"
    if kind == "profile":
        if not parent or not name:
            raise ValueError("profile IRIs need a parent and a name")
        return f"{parent}/{quote(name, safe='')}"
    if kind == "profile-element":
        if not parent or index is None or index < 0:
            raise ValueError("profile-element IRIs need a parent and an index")
        return f"{parent}/e{index}"
    raise ValueError(f"unknown IRI kind {kind!r}")


def attribute_name_from_domain_iri(domain_iri: str) -> str:
    _, _, encoded = domain_iri.rpartition("/domain/")
    return unquote(encoded)


def source_name_from_iri(source_iri: str) -> str:
    prefix = f"{DL}source/"
    if not source_iri.startswith(prefix):
        return source_iri
    return unquote(source_iri[len(prefix) :])


AttributeEntry = tuple[str, AttributeCategory, "Mapping | None", "Profile | None"]


def _check_profile_category(name: str, category: AttributeCategory, mapping, profile) -> None:
    if profile is None or isinstance(profile, EmptyProfile):
        return
    if isinstance(profile, DimensionalProfile):
        if mapping is None or mapping.target_kind != "level":
            raise ProfileCategoryMismatch(
                f"attribute {name!r}: dimensional profile without a level mapping"
            )
        if mapping.target_iri != profile.level_iri:
            raise ProfileCategoryMismatch(
                f"attribute {name!r}: profile level differs from the mapping target"
            )
        return
    expected: dict[type, tuple[AttributeCategory, ...]] = {
        NumericProfile: (AttributeCategory.INTEGER, AttributeCategory.DECIMAL),
        CategoricalProfile: (AttributeCategory.CATEGORICAL,),
        DatetimeProfile: (AttributeCategory.DATETIME,),
        TextualProfile: (AttributeCategory.TEXTUAL,),
    }
    allowed = expected.get(type(profile))
    if allowed is None or category not in allowed:
        raise ProfileCategoryMismatch(
            f"attribute {name!r}: {type(profile).__name__} does not fit "
            f"category {category}"
        )


def build_graph(meta: SourceMetadata, attrs: Sequence[AttributeEntry]) -> MetaGraph:
    """Emit the metadata graph for one source.

    Raises DuplicateAttributeName for repeated attribute names and
    ProfileCategoryMismatch when a profile variant does not belong to the
    attribute's category.
    """
    names = [a[0] for a in attrs]
    dupes = {n for n in names if names.count(n) > 1}
    if dupes:
        raise DuplicateAttributeName(f"duplicate attribute names: {sorted(dupes)}")
    for name, category, mapping, profile in attrs:
        _check_profile_category(name, category, mapping, profile)

    g = MetaGraph()
    source = Iri(mint_iri("source", name=meta.name))
    g.add(source, RDF_TYPE, Iri(DL_SOURCE))
    g.add(source, RDF_TYPE, Iri(VOID_DATASET))
    g.add(source, Iri(DL_LOCATION), string_literal(meta.location))
    g.add(source, Iri(DL_ITEMS), integer_literal(meta.items))
    g.add(source, Iri(DL_DOMAINS), integer_literal(len(attrs)))
    for attr_name, prop in _DCMI_SINGLE:
        value = getattr(meta, attr_name)
        if value is not None:
            g.add(source, Iri(prop), string_literal(value))
    for contributor in meta.contributors:
        g.add(source, Iri(DCTERMS_CONTRIBUTOR), string_literal(contributor))
    for subject in meta.subjects:
        g.add(source, Iri(DCTERMS_SUBJECT), Iri(subject))

    for name, category, mapping, profile in attrs:
        domain = Iri(mint_iri("domain", parent=source.value, name=name))
        g.add(source, Iri(DL_CONTAINS), domain)
        g.add(domain, RDF_TYPE, Iri(DL_DOMAIN))
        g.add(domain, Iri(DL_ATTRIBUTE_CATEGORY), string_literal(category.value))
        if mapping is not None:
            g.add(domain, Iri(DL_MAP_TO), Iri(mapping.target_iri))
        if profile is not None:
            _emit_profile(g, domain, profile)
    return g


def _emit_profile(g: MetaGraph, domain: Iri, profile: Profile) -> None:
    if isinstance(profile, DimensionalProfile):
        _emit_dimensional(g, domain, profile)
    else:
        _emit_iprofile(g, domain, profile)


def _emit_dimensional(g: MetaGraph, domain: Iri, profile: DimensionalProfile) -> None:
    node = Iri(mint_iri("profile", parent=domain.value, name="dprofile"))
    g.add(domain, Iri(DL_HAS_DPROFILE), node)
    g.add(node, RDF_TYPE, Iri(DL_DPROFILE))
    for i, (member_iri, freq) in enumerate(profile.elements):
        el = Iri(mint_iri("profile-element", parent=node.value, index=i))
        g.add(node, Iri(DL_HAS_DPROFILE_ELEMENT), el)
        g.add(el, RDF_TYPE, Iri(DL_DPROFILE_ELEMENT))
        g.add(el, Iri(DL_TO_MEMBER), Iri(member_iri))
        g.add(el, Iri(DL_FREQUENCY), integer_literal(freq))
    # One dedicated element carries everything that could not be mapped.
    others = Iri(
        mint_iri("profile-element", parent=node.value, index=len(profile.elements))
    )
    g.add(node, Iri(DL_HAS_DPROFILE_ELEMENT), others)
    g.add(others, RDF_TYPE, Iri(DL_DPROFILE_ELEMENT))
    g.add(others, Iri(DL_OTHERS), integer_literal(profile.others))


def _emit_iprofile(g: MetaGraph, domain: Iri, profile: Profile) -> None:
    node = Iri(mint_iri("profile", parent=domain.value, name="iprofile"))
    g.add(domain, Iri(DL_HAS_IPROFILE), node)
    g.add(node, RDF_TYPE, Iri(DL_IPROFILE))

    if isinstance(profile, NumericProfile):
        g.add(node, Iri(DL_MAX), decimal_literal(profile.max))
        g.add(node, Iri(DL_MIN), decimal_literal(profile.min))
        g.add(node, Iri(DL_MEAN), decimal_literal(profile.mean))
        g.add(node, Iri(DL_MEDIAN), decimal_literal(profile.median))
        g.add(node, Iri(DL_DISTINCT), integer_literal(profile.distinct))
        g.add(node, Iri(DL_NULL), integer_literal(profile.null))
        dist = Iri(mint_iri("profile", parent=node.value, name="distribution"))
        g.add(node, Iri(DL_HAS_DISTRIBUTION), dist)
        g.add(dist, RDF_TYPE, Iri(DL_DISTRIBUTION))
        for i, (start, end, count) in enumerate(profile.distribution.elements):
            el = Iri(mint_iri("profile-element", parent=dist.value, index=i))
            g.add(dist, Iri(DL_HAS_DISTRIBUTION_ELEMENT), el)
            g.add(el, RDF_TYPE, Iri(DL_DISTRIBUTION_ELEMENT))
            g.add(el, Iri(DL_START_RANGE), decimal_literal(start))
            g.add(el, Iri(DL_END_RANGE), decimal_literal(end))
            g.add(el, Iri(DL_COUNT), integer_literal(count))
    elif isinstance(profile, CategoricalProfile):
        g.add(node, Iri(DL_NULL), integer_literal(profile.null))
        cats = Iri(mint_iri("profile", parent=node.value, name="categories"))
        g.add(node, Iri(DL_HAS_CATEGORIES), cats)
        g.add(cats, RDF_TYPE, Iri(DL_CATEGORIES))
        for i, (category, count) in enumerate(profile.categories):
            el = Iri(mint_iri("profile-element", parent=cats.value, index=i))
            g.add(cats, Iri(DL_HAS_CATEGORY_ELEMENT), el)
            g.add(el, RDF_TYPE, Iri(DL_CATEGORY_ELEMENT))
            g.add(el, Iri(DL_CATEGORY), string_literal(category))
            g.add(el, Iri(DL_CATEGORY_COUNT), integer_literal(count))
    elif isinstance(profile, DatetimeProfile):
        g.add(node, Iri(DL_DISTINCT), integer_literal(profile.distinct))
        g.add(node, Iri(DL_NULL), integer_literal(profile.null))
        g.add(node, Iri(DL_MIN_DATE), date_literal(profile.min_date))
        g.add(node, Iri(DL_MAX_DATE), date_literal(profile.max_date))
        years = Iri(mint_iri("profile", parent=node.value, name="years"))
        g.add(node, Iri(DL_HAS_YEARS), years)
        g.add(years, RDF_TYPE, Iri(DL_YEARS))
        for i, (year, count) in enumerate(profile.years):
            el = Iri(mint_iri("profile-element", parent=years.value, index=i))
            g.add(years, Iri(DL_HAS_YEAR_ELEMENT), el)
            g.add(el, RDF_TYPE, Iri(DL_YEAR_ELEMENT))
            g.add(el, Iri(DL_YEAR), integer_literal(year))
            g.add(el, Iri(DL_YEAR_COUNT), integer_literal(count))
    elif isinstance(profile, TextualProfile):
        g.add(node, Iri(DL_NULL), integer_literal(profile.null))
        g.add(node, Iri(DL_WORDS), integer_literal(profile.words_total))
        words = Iri(mint_iri("profile", parent=node.value, name="words"))
        g.add(node, Iri(DL_HAS_WORDS), words)
        g.add(words, RDF_TYPE, Iri(DL_WORDS_CLASS))
        for i, (word, count) in enumerate(profile.words):
            el = Iri(mint_iri("profile-element", parent=words.value, index=i))
            g.add(words, Iri(DL_HAS_WORD_ELEMENT), el)
            g.add(el, RDF_TYPE, Iri(DL_WORD_ELEMENT))
            g.add(el, Iri(DL_WORD), string_literal(word))
            g.add(el, Iri(DL_WORD_COUNT), integer_literal(count))
    elif isinstance(profile, EmptyProfile):
        g.add(node, Iri(DL_NULL), integer_literal(profile.null))
    else:
        raise ProfileCategoryMismatch(f"unknown profile type {type(profile).__name__}")


# ---------------------------------------------------------------------------
# Reading profiles back out of a graph


def find_source_iri(g: MetaGraph) -> str:
    sources = g.subjects_of_type(DL_SOURCE)
    if len(sources) != 1:
        raise ValueError(f"expected exactly one dl:Source node, found {len(sources)}")
    return sources[0].value


def _element_index(iri: str) -> int:
    _, _, tail = iri.rpartition("/e")
    try:
        return int(tail)
    except ValueError:
        return -1


def _sorted_elements(objects: Iterable[Object]) -> list[str]:
    iris = [o.value for o in objects if isinstance(o, Iri)]
    return sorted(iris, key=_element_index)


def _single(spo, subject: str, prop: str):
    values = spo.get(subject, {}).get(prop, [])
    return values[0] if values else None


def read_attribute(
    g: MetaGraph, source_iri: str, attribute: str
) -> tuple[AttributeCategory, str | None, Profile | None]:
    """Reconstruct (category, mapping target IRI, profile) for one attribute.

    Raises KeyError when the source has no such attribute.
    """
    spo = g.spo()
    domain_iri = mint_iri("domain", parent=source_iri, name=attribute)
    props = spo.get(domain_iri)
    if props is None:
        raise KeyError(attribute)

    category_lit = _single(spo, domain_iri, DL_ATTRIBUTE_CATEGORY)
    category = (
        AttributeCategory(category_lit.lexical)
        if isinstance(category_lit, Literal)
        else AttributeCategory.UNRECOGNIZED
    )
    map_obj = _single(spo, domain_iri, DL_MAP_TO)
    mapping_iri = map_obj.value if isinstance(map_obj, Iri) else None

    dprofile = _single(spo, domain_iri, DL_HAS_DPROFILE)
    if isinstance(dprofile, Iri):
        return category, mapping_iri, _read_dimensional(spo, dprofile.value)
    iprofile = _single(spo, domain_iri, DL_HAS_IPROFILE)
    if isinstance(iprofile, Iri):
        return category, mapping_iri, _read_iprofile(spo, iprofile.value)
    return category, mapping_iri, None


def _read_dimensional(spo, node: str) -> DimensionalProfile:
    elements: list[tuple[str, int]] = []
    others = 0
    level_iri = ""
    for el in _sorted_elements(spo.get(node, {}).get(DL_HAS_DPROFILE_ELEMENT, [])):
        member = _single(spo, el, DL_TO_MEMBER)
        if isinstance(member, Iri):
            freq = _single(spo, el, DL_FREQUENCY)
            elements.append((member.value, parse_integer(freq)))
        else:
            others_lit = _single(spo, el, DL_OTHERS)
            if others_lit is not None:
                others = parse_integer(others_lit)
    # The level is the domain's mapping target; recover it from the caller's
    # mapTo edge via the domain that owns this node.
    domain = node.rsplit("/", 1)[0]
    map_obj = _single(spo, domain, DL_MAP_TO)
    if isinstance(map_obj, Iri):
        level_iri = map_obj.value
    return DimensionalProfile(
        level_iri=level_iri, elements=tuple(elements), others=others
    )


def _read_iprofile(spo, node: str) -> Profile:
    props = spo.get(node, {})
    null = parse_integer(_single(spo, node, DL_NULL))

    if DL_MEAN in props:
        dist_node = _single(spo, node, DL_HAS_DISTRIBUTION)
        bins: list[tuple[float, float, int]] = []
        if isinstance(dist_node, Iri):
            for el in _sorted_elements(
                spo.get(dist_node.value, {}).get(DL_HAS_DISTRIBUTION_ELEMENT, [])
            ):
                bins.append(
                    (
                        parse_decimal(_single(spo, el, DL_START_RANGE)),
                        parse_decimal(_single(spo, el, DL_END_RANGE)),
                        parse_integer(_single(spo, el, DL_COUNT)),
                    )
                )
        return NumericProfile(
            max=parse_decimal(_single(spo, node, DL_MAX)),
            min=parse_decimal(_single(spo, node, DL_MIN)),
            mean=parse_decimal(_single(spo, node, DL_MEAN)),
            median=parse_decimal(_single(spo, node, DL_MEDIAN)),
            distinct=parse_integer(_single(spo, node, DL_DISTINCT)),
            null=null,
            distribution=Distribution(tuple(bins)),
        )
    if DL_HAS_CATEGORIES in props:
        cats_node = _single(spo, node, DL_HAS_CATEGORIES)
        categories: list[tuple[str, int]] = []
        for el in _sorted_elements(
            spo.get(cats_node.value, {}).get(DL_HAS_CATEGORY_ELEMENT, [])
        ):
            categories.append(
                (
                    _single(spo, el, DL_CATEGORY).lexical,
                    parse_integer(_single(spo, el, DL_CATEGORY_COUNT)),
                )
            )
        return CategoricalProfile(null=null, categories=tuple(categories))
    if DL_MAX_DATE in props:
        years_node = _single(spo, node, DL_HAS_YEARS)
        years: list[tuple[int, int]] = []
        if isinstance(years_node, Iri):
            for el in _sorted_elements(
                spo.get(years_node.value, {}).get(DL_HAS_YEAR_ELEMENT, [])
            ):
                years.append(
                    (
                        parse_integer(_single(spo, el, DL_YEAR)),
                        parse_integer(_single(spo, el, DL_YEAR_COUNT)),
                    )
                )
        return DatetimeProfile(
            distinct=parse_integer(_single(spo, node, DL_DISTINCT)),
            null=null,
            min_date=parse_date(_single(spo, node, DL_MIN_DATE)),
            max_date=parse_date(_single(spo, node, DL_MAX_DATE)),
            years=tuple(years),
        )
    if DL_WORDS in props:
        words_node = _single(spo, node, DL_HAS_WORDS)
        words: list[tuple[str, int]] = []
        if isinstance(words_node, Iri):
            for el in _sorted_elements(
                spo.get(words_node.value, {}).get(DL_HAS_WORD_ELEMENT, [])
            ):
                words.append(
                    (
                        _single(spo, el, DL_WORD).lexical,
                        parse_integer(_single(spo, el, DL_WORD_COUNT)),
                    )
                )
        return TextualProfile(
            null=null,
            words_total=parse_integer(_single(spo, node, DL_WORDS)),
            words=tuple(words),
        )
    return EmptyProfile(null=null)


@dataclass(frozen=True)
class SourceSummary:
    """Index-friendly digest of one stored metadata graph."""

    source_iri: str
    items: int
    domains: int
    attributes: tuple[str, ...]
    levels: tuple[str, ...]
    indicators: tuple[str, ...]
    categories: tuple[str, ...]


def summarize(g: MetaGraph) -> SourceSummary:
    spo = g.spo()
    source_iri = find_source_iri(g)
    items_lit = _single(spo, source_iri, DL_ITEMS)
    domains_lit = _single(spo, source_iri, DL_DOMAINS)

    attributes: list[str] = []
    levels: set[str] = set()
    indicators: set[str] = set()
    categories: set[str] = set()
    for obj in spo.get(source_iri, {}).get(DL_CONTAINS, []):
        if not isinstance(obj, Iri):
            continue
        domain = obj.value
        attributes.append(attribute_name_from_domain_iri(domain))
        cat = _single(spo, domain, DL_ATTRIBUTE_CATEGORY)
        if isinstance(cat, Literal):
            categories.add(cat.lexical)
        target = _single(spo, domain, DL_MAP_TO)
        if isinstance(target, Iri):
            if _single(spo, domain, DL_HAS_DPROFILE) is not None:
                levels.add(target.value)
            else:
                indicators.add(target.value)

    return SourceSummary(
        source_iri=source_iri,
        items=parse_integer(items_lit) if items_lit else 0,
        domains=parse_integer(domains_lit) if domains_lit else 0,
        attributes=tuple(sorted(attributes)),
        levels=tuple(sorted(levels)),
        indicators=tuple(sorted(indicators)),
        categories=tuple(sorted(categories)),
    )
