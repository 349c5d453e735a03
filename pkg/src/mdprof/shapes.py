"""Structural validation of metadata graphs against the vocabulary.

Checks domain and range of every property, literal datatypes, that exactly
one dl:Source (also typed void:Dataset) is present, that every dl:Domain
hangs off it via dl:contains, that every profile node is reachable from its
domain, and that the dl:domains count matches the emitted domains.
"""

from __future__ import annotations

from .graph import (
    DCTERMS_CONTRIBUTOR,
    DCTERMS_SUBJECT,
    DL_ATTRIBUTE_CATEGORY,
    DL_CATEGORIES,
    DL_CATEGORY,
    DL_CATEGORY_COUNT,
    DL_CATEGORY_ELEMENT,
    DL_CONTAINS,
    DL_COUNT,
    DL_DISTINCT,
    DL_DISTRIBUTION,
    DL_DISTRIBUTION_ELEMENT,
    DL_DOMAIN,
    DL_DOMAINS,
    DL_DPROFILE,
    DL_DPROFILE_ELEMENT,
    DL_END_RANGE,
    DL_FREQUENCY,
    DL_HAS_CATEGORIES,
    DL_HAS_CATEGORY_ELEMENT,
    DL_HAS_DISTRIBUTION,
    DL_HAS_DISTRIBUTION_ELEMENT,
    DL_HAS_DPROFILE,
    DL_HAS_DPROFILE_ELEMENT,
    DL_HAS_IPROFILE,
    DL_HAS_WORDS,
    DL_HAS_WORD_ELEMENT,
    DL_HAS_YEARS,
    DL_HAS_YEAR_ELEMENT,
    DL_IPROFILE,
    DL_ITEMS,
    DL_LOCATION,
    DL_MAP_TO,
    DL_MAX,
    DL_MAX_DATE,
    DL_MEAN,
    DL_MEDIAN,
    DL_MIN,
    DL_MIN_DATE,
    DL_NULL,
    DL_OTHERS,
    DL_SOURCE,
    DL_START_RANGE,
    DL_TO_MEMBER,
    DL_WORD,
    DL_WORDS,
    DL_WORDS_CLASS,
    DL_WORD_COUNT,
    DL_WORD_ELEMENT,
    DL_YEAR,
    DL_YEARS,
    DL_YEAR_COUNT,
    DL_YEAR_ELEMENT,
    MetaGraph,
    VOID_DATASET,
)
from .rdfterms import (
    DCTERMS,
    RDF_TYPE,
    XSD_DATE,
    XSD_DATETIME,
    XSD_DECIMAL,
    XSD_INTEGER,
    Iri,
    Literal,
)

KNOWN_CLASSES = frozenset(
    {
        DL_SOURCE,
        VOID_DATASET,
        DL_DOMAIN,
        DL_DPROFILE,
        DL_DPROFILE_ELEMENT,
        DL_IPROFILE,
        DL_DISTRIBUTION,
        DL_DISTRIBUTION_ELEMENT,
        DL_CATEGORIES,
        DL_CATEGORY_ELEMENT,
        DL_YEARS,
        DL_YEAR_ELEMENT,
        DL_WORDS_CLASS,
        DL_WORD_ELEMENT,
    }
)

_PLAIN = ("literal", None)
_INT = ("literal", (XSD_INTEGER,))
_DEC = ("literal", (XSD_DECIMAL, XSD_INTEGER))
_DATE = ("literal", (XSD_DATE, XSD_DATETIME))
_IRI = ("iri", None)

# property -> (allowed subject classes, range requirement)
PROPERTY_SCHEMA: dict[str, tuple[tuple[str, ...], tuple]] = {
    DL_LOCATION: ((DL_SOURCE,), _PLAIN),
    DL_ITEMS: ((DL_SOURCE,), _INT),
    DL_DOMAINS: ((DL_SOURCE,), _INT),
    DL_CONTAINS: ((DL_SOURCE,), ("class", DL_DOMAIN)),
    DCTERMS + "title": ((DL_SOURCE,), _PLAIN),
    DCTERMS + "description": ((DL_SOURCE,), _PLAIN),
    DCTERMS + "format": ((DL_SOURCE,), _PLAIN),
    DCTERMS + "creator": ((DL_SOURCE,), _PLAIN),
    DCTERMS + "publisher": ((DL_SOURCE,), _PLAIN),
    DCTERMS_CONTRIBUTOR: ((DL_SOURCE,), _PLAIN),
    DCTERMS + "date": ((DL_SOURCE,), _PLAIN),
    DCTERMS + "license": ((DL_SOURCE,), _PLAIN),
    DCTERMS_SUBJECT: ((DL_SOURCE,), _IRI),
    DL_ATTRIBUTE_CATEGORY: ((DL_DOMAIN,), _PLAIN),
    DL_MAP_TO: ((DL_DOMAIN,), _IRI),  # kpi:Level or kpi:Indicator, external
    DL_HAS_DPROFILE: ((DL_DOMAIN,), ("class", DL_DPROFILE)),
    DL_HAS_IPROFILE: ((DL_DOMAIN,), ("class", DL_IPROFILE)),
    DL_HAS_DPROFILE_ELEMENT: ((DL_DPROFILE,), ("class", DL_DPROFILE_ELEMENT)),
    DL_TO_MEMBER: ((DL_DPROFILE_ELEMENT,), _IRI),  # kpi:Member, external
    DL_FREQUENCY: ((DL_DPROFILE_ELEMENT,), _INT),
    DL_OTHERS: ((DL_DPROFILE_ELEMENT,), _INT),
    DL_MAX: ((DL_IPROFILE,), _DEC),
    DL_MIN: ((DL_IPROFILE,), _DEC),
    DL_MEAN: ((DL_IPROFILE,), _DEC),
    DL_MEDIAN: ((DL_IPROFILE,), _DEC),
    DL_DISTINCT: ((DL_IPROFILE,), _INT),
    DL_NULL: ((DL_IPROFILE,), _INT),
    DL_HAS_DISTRIBUTION: ((DL_IPROFILE,), ("class", DL_DISTRIBUTION)),
    DL_HAS_DISTRIBUTION_ELEMENT: (
        (DL_DISTRIBUTION,),
        ("class", DL_DISTRIBUTION_ELEMENT),
    ),
    DL_START_RANGE: ((DL_DISTRIBUTION_ELEMENT,), _DEC),
    DL_END_RANGE: ((DL_DISTRIBUTION_ELEMENT,), _DEC),
    DL_COUNT: ((DL_DISTRIBUTION_ELEMENT,), _INT),
    DL_HAS_CATEGORIES: ((DL_IPROFILE,), ("class", DL_CATEGORIES)),
    DL_HAS_CATEGORY_ELEMENT: ((DL_CATEGORIES,), ("class", DL_CATEGORY_ELEMENT)),
    DL_CATEGORY: ((DL_CATEGORY_ELEMENT,), _PLAIN),
    DL_CATEGORY_COUNT: ((DL_CATEGORY_ELEMENT,), _INT),
    DL_MIN_DATE: ((DL_IPROFILE,), _DATE),
    DL_MAX_DATE: ((DL_IPROFILE,), _DATE),
    DL_HAS_YEARS: ((DL_IPROFILE,), ("class", DL_YEARS)),
    DL_HAS_YEAR_ELEMENT: ((DL_YEARS,), ("class", DL_YEAR_ELEMENT)),
    DL_YEAR: ((DL_YEAR_ELEMENT,), _INT),
    DL_YEAR_COUNT: ((DL_YEAR_ELEMENT,), _INT),
    DL_WORDS: ((DL_IPROFILE,), _INT),
    DL_HAS_WORDS: ((DL_IPROFILE,), ("class", DL_WORDS_CLASS)),
    DL_HAS_WORD_ELEMENT: ((DL_WORDS_CLASS,), ("class", DL_WORD_ELEMENT)),
    DL_WORD: ((DL_WORD_ELEMENT,), _PLAIN),
    DL_WORD_COUNT: ((DL_WORD_ELEMENT,), _INT),
}


def _short(term) -> str:
    if isinstance(term, Iri):
        return f"<{term.value}>"
    if isinstance(term, Literal):
        return f'"{term.lexical}"'
    return str(term)


def validate(g: MetaGraph) -> list[str]:
    """Return all shape violations; an empty list means the graph conforms."""
    violations: list[str] = []
    types: dict = {}
    for s, p, o in g.triples:
        if p == RDF_TYPE:
            if not isinstance(o, Iri):
                violations.append(f"rdf:type of {_short(s)} is not an IRI")
                continue
            if o.value not in KNOWN_CLASSES:
                violations.append(f"unknown class {_short(o)} on {_short(s)}")
            types.setdefault(s, set()).add(o.value)

    for s, p, o in sorted(g.triples, key=lambda t: (str(t[0]), t[1].value, str(t[2]))):
        if p == RDF_TYPE:
            continue
        schema = PROPERTY_SCHEMA.get(p.value)
        if schema is None:
            violations.append(f"unknown property <{p.value}> on {_short(s)}")
            continue
        domains, (range_kind, detail) = schema
        subject_types = types.get(s, set())
        if not subject_types.intersection(domains):
            violations.append(
                f"<{p.value}> used on {_short(s)} which is not typed "
                + " or ".join(f"<{d}>" for d in domains)
            )
        if range_kind == "literal":
            if not isinstance(o, Literal):
                violations.append(f"<{p.value}> expects a literal, got {_short(o)}")
            elif detail is not None and o.datatype not in detail:
                violations.append(
                    f"<{p.value}> expects a literal typed "
                    + " or ".join(f"<{d}>" for d in detail)
                    + f", got {_short(o)}^^<{o.datatype}>"
                )
        elif range_kind == "iri":
            if not isinstance(o, Iri):
                violations.append(f"<{p.value}> expects an IRI, got {_short(o)}")
        else:  # class
            if not isinstance(o, Iri):
                violations.append(f"<{p.value}> expects a node, got {_short(o)}")
            elif detail not in types.get(o, set()):
                violations.append(
                    f"object {_short(o)} of <{p.value}> is not typed <{detail}>"
                )

    violations.extend(_structural(g, types))
    return violations


def _structural(g: MetaGraph, types: dict) -> list[str]:
    out: list[str] = []
    sources = [s for s, ts in types.items() if DL_SOURCE in ts]
    if len(sources) != 1:
        out.append(f"expected exactly one dl:Source node, found {len(sources)}")
        return out
    source = sources[0]
    if VOID_DATASET not in types.get(source, set()):
        out.append(f"source {_short(source)} is not typed void:Dataset")

    contained = {
        o for s, p, o in g.triples if p == Iri(DL_CONTAINS) and s == source
    }
    domains = {s for s, ts in types.items() if DL_DOMAIN in ts}
    for d in sorted(domains, key=str):
        count = sum(
            1 for s, p, o in g.triples if p == Iri(DL_CONTAINS) and o == d
        )
        if count != 1:
            out.append(f"domain {_short(d)} is contained {count} times, expected 1")
        elif d not in contained:
            out.append(f"domain {_short(d)} is not contained by the source")

    declared = g.objects(source, Iri(DL_DOMAINS))
    if declared and isinstance(declared[0], Literal):
        if int(declared[0].lexical) != len(domains):
            out.append(
                f"dl:domains says {declared[0].lexical} but the graph holds "
                f"{len(domains)} domain nodes"
            )

    profile_classes = {DL_DPROFILE, DL_IPROFILE}
    attach = {DL_DPROFILE: DL_HAS_DPROFILE, DL_IPROFILE: DL_HAS_IPROFILE}
    for node, ts in sorted(types.items(), key=lambda kv: str(kv[0])):
        for cls in ts.intersection(profile_classes):
            owners = [
                s
                for s, p, o in g.triples
                if p == Iri(attach[cls]) and o == node and s in domains
            ]
            if len(owners) != 1:
                out.append(
                    f"profile {_short(node)} is attached to {len(owners)} domains, "
                    "expected 1"
                )
    return out
