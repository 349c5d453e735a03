"""RDF term model, namespaces, and typed literal constructors."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from decimal import Decimal

XSD = "http://www.w3.org/2001/XMLSchema#"
DCTERMS = "http://purl.org/dc/terms/"
VOID = "http://rdfs.org/ns/void#"
KPI = "http://w3id.org/kpionto/"
DL = "http://kdmg.dii.univpm.it/dl/"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"

# Prefixes bound in serialized output.
PREFIXES: dict[str, str] = {
    "xsd": XSD,
    "dcterms": DCTERMS,
    "void": VOID,
    "kpi": KPI,
    "dl": DL,
}

XSD_STRING = XSD + "string"
XSD_INTEGER = XSD + "integer"
XSD_DECIMAL = XSD + "decimal"
XSD_DOUBLE = XSD + "double"
XSD_BOOLEAN = XSD + "boolean"
XSD_DATE = XSD + "date"
XSD_DATETIME = XSD + "dateTime"


@dataclass(frozen=True)
class Iri:
    value: str

    def __repr__(self) -> str:
        return f"Iri({self.value!r})"


@dataclass(frozen=True)
class BlankNode:
    id: str


@dataclass(frozen=True)
class Literal:
    """A literal with lexical form; plain literals have no datatype or tag."""

    lexical: str
    datatype: str | None = None
    lang: str | None = None


RDF_TYPE = Iri(RDF + "type")

Subject = Iri | BlankNode
Object = Iri | BlankNode | Literal
Triple = tuple[Subject, Iri, Object]


def local_name(iri: str) -> str:
    """The part after the last '#' or '/'."""
    for sep in ("#", "/"):
        idx = iri.rfind(sep)
        if idx >= 0:
            return iri[idx + 1 :]
    return iri


def integer_literal(value: int) -> Literal:
    return Literal(str(int(value)), XSD_INTEGER)


def decimal_literal(value: float | int) -> Literal:
    """xsd:decimal forbids exponents, so the lexical form is plain notation.

    repr() gives the shortest string that round-trips the float, so parsing
    the emitted form recovers the exact value.
    """
    if isinstance(value, int) and not isinstance(value, bool):
        return Literal(str(value), XSD_DECIMAL)
    return Literal(format(Decimal(repr(float(value))), "f"), XSD_DECIMAL)


def date_literal(value: datetime) -> Literal:
    """xsd:date at midnight, xsd:dateTime otherwise."""
    if (value.hour, value.minute, value.second, value.microsecond) == (0, 0, 0, 0):
        return Literal(value.date().isoformat(), XSD_DATE)
    return Literal(value.isoformat(), XSD_DATETIME)


def string_literal(value: str) -> Literal:
    return Literal(value)


def parse_decimal(lit: Literal) -> float:
    return float(lit.lexical)


def parse_integer(lit: Literal) -> int:
    return int(lit.lexical)


def parse_date(lit: Literal) -> datetime:
    return datetime.fromisoformat(lit.lexical)
