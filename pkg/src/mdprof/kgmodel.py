"""Knowledge graph fragment: levels, members, indicators, and mapping discovery.

A column maps to a dimensional level when enough of its distinct values match
member names: score = |distinct values that match a member| / |distinct
values|, computed after trimming whitespace and folding case. Members match
by IRI local name or by rdfs:label. Measure candidates map to indicators by
name equality after dropping case and non-alphanumeric characters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping as TMapping

from . import turtle
from .errors import AmbiguousIndicator, DanglingMember
from .ingest import Column
from .rdfterms import KPI, RDF_TYPE, Iri, Literal, local_name

KPI_LEVEL = KPI + "Level"
KPI_MEMBER = KPI + "Member"
KPI_INDICATOR = KPI + "Indicator"
KPI_IN_LEVEL = KPI + "inLevel"
KPI_ROLLUP = KPI + "rollupTo"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"

# Namespace used by bundled fixtures for local data.
LOCAL_DATA_NS = "http://kdmg.dii.univpm.it/kg/"


def normalize_label(text: str) -> str:
    """Trim surrounding whitespace and fold case."""
    return text.strip().casefold()


def normalize_name(text: str) -> str:
    """Fold case and drop everything that is not a letter or digit."""
    return re.sub(r"[^0-9a-z]", "", text.casefold())


@dataclass(frozen=True)
class LevelRef:
    iri: str
    name: str


@dataclass(frozen=True)
class IndicatorRef:
    iri: str
    name: str


@dataclass(frozen=True)
class Member:
    iri: str
    label: str | None = None

    def match_keys(self) -> set[str]:
        keys = {normalize_label(local_name(self.iri))}
        if self.label is not None:
            keys.add(normalize_label(self.label))
        return keys


@dataclass(frozen=True)
class Mapping:
    """A discovered attribute-to-graph association."""

    attribute: str
    target_iri: str
    target_kind: str  # "level" or "indicator"
    score: float


@dataclass
class KnowledgeGraph:
    levels: tuple[LevelRef, ...]
    members: dict[str, tuple[Member, ...]]  # level IRI -> members
    indicators: tuple[IndicatorRef, ...]
    rollups: tuple[tuple[str, str], ...] = ()  # (lower level, upper level)

    def __post_init__(self):
        level_iris = {lv.iri for lv in self.levels}
        for iri in self.members:
            if iri not in level_iris:
                raise DanglingMember(f"members attached to undeclared level <{iri}>")
        self._check_acyclic()
        self._member_index_cache: dict[str, dict[str, str]] = {}

    def _check_acyclic(self) -> None:
        children: dict[str, list[str]] = {}
        for lower, upper in self.rollups:
            children.setdefault(lower, []).append(upper)
        visiting: set[str] = set()
        done: set[str] = set()

        def visit(node: str) -> None:
            if node in done:
                return
            if node in visiting:
                raise ValueError(f"roll-up cycle through <{node}>")
            visiting.add(node)
            for nxt in children.get(node, ()):
                visit(nxt)
            visiting.discard(node)
            done.add(node)

        for node in children:
            visit(node)

    def level(self, iri: str) -> LevelRef | None:
        for lv in self.levels:
            if lv.iri == iri:
                return lv
        return None

    def member_count(self) -> int:
        return sum(len(ms) for ms in self.members.values())

    def member_index(self, level_iri: str) -> dict[str, str]:
        """Normalized match key -> member IRI for one level.

        Members are visited in IRI order so key collisions resolve the same
        way on every run.
        """
        cached = self._member_index_cache.get(level_iri)
        if cached is not None:
            return cached
        index: dict[str, str] = {}
        for member in sorted(self.members.get(level_iri, ()), key=lambda m: m.iri):
            for key in sorted(member.match_keys()):
                index.setdefault(key, member.iri)
        self._member_index_cache[level_iri] = index
        return index


def load_kg(
    path: str | Path,
    member_level_prop: str = KPI_IN_LEVEL,
    rollup_prop: str = KPI_ROLLUP,
) -> KnowledgeGraph:
    """Load a Turtle or N-Triples fragment holding levels, members, indicators.

    Entity names come from rdfs:label when present, otherwise from the IRI
    local name. A member whose level link points at an IRI that is not
    declared as a level raises DanglingMember.
    """
    triples, _ = turtle.parse_file(path)
    return kg_from_triples(triples, member_level_prop, rollup_prop)


def kg_from_triples(
    triples: Iterable[tuple],
    member_level_prop: str = KPI_IN_LEVEL,
    rollup_prop: str = KPI_ROLLUP,
) -> KnowledgeGraph:
    types: dict[str, set[str]] = {}
    labels: dict[str, str] = {}
    level_links: dict[str, list[str]] = {}
    rollups: list[tuple[str, str]] = []

    for s, p, o in triples:
        if not isinstance(s, Iri):
            continue
        if p == RDF_TYPE and isinstance(o, Iri):
            types.setdefault(s.value, set()).add(o.value)
        elif p.value == RDFS_LABEL and isinstance(o, Literal):
            labels.setdefault(s.value, o.lexical)
        elif p.value == member_level_prop and isinstance(o, Iri):
            level_links.setdefault(s.value, []).append(o.value)
        elif p.value == rollup_prop and isinstance(o, Iri):
            rollups.append((s.value, o.value))

    def name_of(iri: str) -> str:
        return labels.get(iri, local_name(iri))

    level_iris = sorted(i for i, ts in types.items() if KPI_LEVEL in ts)
    indicator_iris = sorted(i for i, ts in types.items() if KPI_INDICATOR in ts)
    member_iris = sorted(i for i, ts in types.items() if KPI_MEMBER in ts)

    levels = tuple(LevelRef(iri, name_of(iri)) for iri in level_iris)
    indicators = tuple(IndicatorRef(iri, name_of(iri)) for iri in indicator_iris)

    members: dict[str, list[Member]] = {iri: [] for iri in level_iris}
    declared = set(level_iris)
    for miri in member_iris:
        links = level_links.get(miri)
        if not links:
            continue  # member outside the fragment's hierarchy
        for liri in links:
            if liri not in declared:
                raise DanglingMember(
                    f"member <{miri}> links to undeclared level <{liri}>"
                )
            members[liri].append(Member(miri, labels.get(miri)))

    rollup_edges = tuple(
        (a, b) for a, b in sorted(set(rollups)) if a in declared and b in declared
    )
    return KnowledgeGraph(
        levels=levels,
        members={iri: tuple(ms) for iri, ms in members.items()},
        indicators=indicators,
        rollups=rollup_edges,
    )


def distinct_normalized(column: Column) -> set[str]:
    return {normalize_label(c) for c in column.cells if c is not None}


def discover_level_mapping(
    column: Column,
    kg: KnowledgeGraph,
    threshold: float = 0.5,
) -> Mapping | None:
    """Best level whose members cover at least `threshold` of the distinct
    column values; ties break toward the lexicographically smaller level IRI.
    """
    if not (0 < threshold <= 1):
        raise ValueError("threshold must be in (0, 1]")
    distinct = distinct_normalized(column)
    if not distinct:
        return None

    best: tuple[float, str] | None = None
    for level in sorted(kg.levels, key=lambda lv: lv.iri):
        keys = kg.member_index(level.iri)
        hits = sum(1 for value in distinct if value in keys)
        score = hits / len(distinct)
        if score >= threshold and (best is None or score > best[0]):
            best = (score, level.iri)
    if best is None:
        return None
    return Mapping(
        attribute=column.name,
        target_iri=best[1],
        target_kind="level",
        score=best[0],
    )


def discover_indicator_mapping(
    attribute_name: str,
    kg: KnowledgeGraph,
) -> Mapping | None:
    """Indicator whose normalized name equals the attribute's normalized name.

    Raises AmbiguousIndicator when several indicators share the matched name.
    """
    key = normalize_name(attribute_name)
    if not key:
        return None
    matches = []
    for ind in sorted(kg.indicators, key=lambda i: i.iri):
        if key in (normalize_name(ind.name), normalize_name(local_name(ind.iri))):
            matches.append(ind)
    if not matches:
        return None
    if len(matches) > 1:
        iris = ", ".join(f"<{m.iri}>" for m in matches)
        raise AmbiguousIndicator(
            f"attribute {attribute_name!r} matches several indicators: {iris}"
        )
    return Mapping(
        attribute=attribute_name,
        target_iri=matches[0].iri,
        target_kind="indicator",
        score=1.0,
    )
