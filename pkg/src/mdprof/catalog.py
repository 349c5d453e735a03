"""File-backed catalog of metadata graphs with conjunctive queries.

Layout: one Turtle document per source plus an index.json digest. Every file
is written to a temporary name and atomically renamed, so readers never see
partial writes; writers serialize on a catalog-level lock file. Graphs are
validated against the vocabulary shapes before they are accepted.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import tempfile
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable
from urllib.parse import quote

from filelock import FileLock

from . import shapes
from .errors import (
    MalformedQuery,
    ShapeViolation,
    StorageError,
    UnknownAttribute,
    UnknownSource,
)
from .graph import (
    DL_ATTRIBUTE_CATEGORY,
    DL_ITEMS,
    DL_MAP_TO,
    MetaGraph,
    SourceSummary,
    find_source_iri,
    parse_graph_file,
    read_attribute,
    source_name_from_iri,
    summarize,
)
from .inference import AttributeCategory
from .profiles import NumericProfile, Profile
from .rdfterms import PREFIXES, Iri, Literal, local_name

_INDEX_NAME = "index.json"
_LOCK_NAME = ".lock"

_OPS = (">=", "<=", "=", ">", "<")
_STAT_KEYS = ("max", "min", "mean", "median")
_KEY_RE = re.compile(r"(?P<key>[A-Za-z]+)(?:\((?P<attr>[^()]*)\))?\Z")


@dataclass(frozen=True)
class Predicate:
    key: str
    op: str
    value: str
    attribute: str | None = None


def parse_predicate(expression: str) -> Predicate:
    """Parse one `key op value` expression.

    Keys: mapTo, category (op =), items, and max/min/mean/median which may
    scope to one attribute as stat(attr).
    """
    expr = expression.strip()
    for op in _OPS:
        idx = expr.find(op)
        if idx > 0:
            lhs = expr[:idx].strip()
            rhs = expr[idx + len(op) :].strip()
            break
    else:
        raise MalformedQuery(f"no comparison operator in {expression!r}")
    if not rhs:
        raise MalformedQuery(f"missing value in {expression!r}")

    m = _KEY_RE.match(lhs)
    if not m:
        raise MalformedQuery(f"malformed key {lhs!r}")
    key = m.group("key")
    attr = m.group("attr")

    if key in ("mapTo", "category"):
        if op != "=":
            raise MalformedQuery(f"{key} supports only '='")
        if attr is not None:
            raise MalformedQuery(f"{key} does not take an attribute scope")
        if key == "category":
            valid = {c.value for c in AttributeCategory}
            if rhs not in valid:
                raise MalformedQuery(
                    f"unknown category {rhs!r}; expected one of {sorted(valid)}"
                )
        return Predicate(key=key, op=op, value=rhs)
    if key == "items" or key in _STAT_KEYS:
        if key == "items" and attr is not None:
            raise MalformedQuery("items does not take an attribute scope")
        try:
            float(rhs)
        except ValueError:
            raise MalformedQuery(f"{key} needs a numeric value, got {rhs!r}")
        return Predicate(key=key, op=op, value=rhs, attribute=attr)
    raise MalformedQuery(f"unknown query key {key!r}")


def _compare(op: str, left: float, right: float) -> bool:
    if op == "=":
        return left == right
    if op == ">":
        return left > right
    if op == ">=":
        return left >= right
    if op == "<":
        return left < right
    return left <= right


def _iri_matches(target: str, value: str, prefixes: dict[str, str]) -> bool:
    """Full IRIs match exactly, CURIEs expand over known prefixes, anything
    else matches by local name (so kg:City finds .../kg/City even when the
    kg prefix is not bound anywhere)."""
    v = value.strip("<>")
    if "://" in v:
        return target == v
    if ":" in v:
        prefix, _, local = v.partition(":")
        if prefix in prefixes:
            return target == prefixes[prefix] + local
        return local_name(target) == local
    return local_name(target) == v


class CatalogStore:
    """A directory of registered metadata graphs."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        try:
            self.root.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise StorageError(f"cannot create catalog at {self.root}: {exc}") from exc
        self._lock = FileLock(str(self.root / _LOCK_NAME))

    # -- index ------------------------------------------------------------

    def _read_index(self) -> dict:
        path = self.root / _INDEX_NAME
        if not path.exists():
            return {}
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise StorageError(f"cannot read catalog index: {exc}") from exc

    def _atomic_write(self, path: Path, data: str) -> None:
        try:
            fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    fh.write(data)
                os.replace(tmp, path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
        except OSError as exc:
            raise StorageError(f"cannot write {path}: {exc}") from exc

    def _document_name(self, source_iri: str) -> str:
        digest = hashlib.sha1(source_iri.encode("utf-8")).hexdigest()[:8]
        safe = quote(source_name_from_iri(source_iri), safe="")[:80]
        return f"{safe}-{digest}.ttl"

    # -- operations ---------------------------------------------------------

    def register(self, graph: MetaGraph) -> str:
        """Validate and store one graph; re-registering replaces the document.

        Returns the source IRI.
        """
        violations = shapes.validate(graph)
        if violations:
            raise ShapeViolation(
                f"graph breaks {len(violations)} shape rule(s)", violations
            )
        source_iri = find_source_iri(graph)
        summary = summarize(graph)
        doc_name = self._document_name(source_iri)
        with self._lock:
            self._atomic_write(self.root / doc_name, graph.to_turtle())
            index = self._read_index()
            index[source_iri] = {
                "path": doc_name,
                "registered_at": datetime.now(timezone.utc).isoformat(),
                "items": summary.items,
                "domains": summary.domains,
                "attributes": list(summary.attributes),
                "levels": list(summary.levels),
                "indicators": list(summary.indicators),
                "categories": list(summary.categories),
            }
            self._atomic_write(
                self.root / _INDEX_NAME,
                json.dumps(index, indent=2, sort_keys=True) + "\n",
            )
        return source_iri

    def sources(self) -> list[str]:
        return sorted(self._read_index())

    def load_graph(self, source_iri: str) -> MetaGraph:
        index = self._read_index()
        entry = index.get(source_iri)
        if entry is None:
            raise UnknownSource(f"no source <{source_iri}> in the catalog")
        return parse_graph_file(self.root / entry["path"])

    def summary(self, source_iri: str) -> SourceSummary:
        return summarize(self.load_graph(source_iri))

    def get_attribute(
        self, source_iri: str, attribute: str
    ) -> tuple[AttributeCategory, str | None, Profile | None]:
        graph = self.load_graph(source_iri)
        try:
            return read_attribute(graph, source_iri, attribute)
        except KeyError:
            raise UnknownAttribute(
                f"source <{source_iri}> has no attribute {attribute!r}"
            )

    def get_profile(self, source_iri: str, attribute: str) -> Profile | None:
        return self.get_attribute(source_iri, attribute)[2]

    def find_sources(self, expressions: Iterable[str] | str) -> list[str]:
        """Source IRIs whose graphs satisfy every `key op value` expression,
        in IRI order."""
        if isinstance(expressions, str):
            expressions = [expressions]
        predicates = [parse_predicate(e) for e in expressions]
        result = []
        for source_iri in self.sources():
            graph = self.load_graph(source_iri)
            if all(self._satisfies(graph, source_iri, p) for p in predicates):
                result.append(source_iri)
        return result

    def _satisfies(self, graph: MetaGraph, source_iri: str, pred: Predicate) -> bool:
        spo = graph.spo()
        if pred.key == "items":
            lit = spo.get(source_iri, {}).get(DL_ITEMS, [None])[0]
            if not isinstance(lit, Literal):
                return False
            return _compare(pred.op, float(lit.lexical), float(pred.value))
        if pred.key == "mapTo":
            prefixes = dict(PREFIXES)
            prefixes.update(graph.prefixes)
            for subject, props in spo.items():
                for obj in props.get(DL_MAP_TO, []):
                    if isinstance(obj, Iri) and _iri_matches(
                        obj.value, pred.value, prefixes
                    ):
                        return True
            return False
        if pred.key == "category":
            for subject, props in spo.items():
                for obj in props.get(DL_ATTRIBUTE_CATEGORY, []):
                    if isinstance(obj, Literal) and obj.lexical == pred.value:
                        return True
            return False
        # numeric stat over IProfiles, optionally scoped to one attribute
        want = float(pred.value)
        for attr in self._attribute_names(graph, source_iri):
            if pred.attribute is not None and attr != pred.attribute:
                continue
            try:
                _, _, profile = read_attribute(graph, source_iri, attr)
            except KeyError:
                continue
            if isinstance(profile, NumericProfile):
                value = getattr(profile, pred.key)
                if _compare(pred.op, float(value), want):
                    return True
        return False

    @staticmethod
    def _attribute_names(graph: MetaGraph, source_iri: str) -> list[str]:
        return list(summarize(graph).attributes)
