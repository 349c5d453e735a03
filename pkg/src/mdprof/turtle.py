"""Turtle and N-Triples serialization and parsing.

Output is deterministic: N-Triples lines are sorted lexicographically, and
Turtle groups subjects in sorted order with sorted predicates and objects, so
equal triple sets always serialize to identical bytes.

The parser reads the Turtle constructs that metadata documents and knowledge
graph fragments actually use (prefix and base directives in both Turtle and
SPARQL style, `a`, predicate and object lists, every literal quoting form,
numeric and boolean shorthands, blank node labels and property lists).
RDF collections are rejected with a clear error. N-Triples documents parse
as a subset.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Iterable

from .errors import RdfParseError, UnreadablePath
from .rdfterms import (
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
    XSD_STRING,
    BlankNode,
    Iri,
    Literal,
    Object,
    Subject,
    Triple,
)

# ---------------------------------------------------------------------------
# Serialization


_ECHAR = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
    "\b": "\\b",
    "\f": "\\f",
}


def _escape_literal(text: str) -> str:
    out = []
    for ch in text:
        if ch in _ECHAR:
            out.append(_ECHAR[ch])
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def _escape_iri(value: str) -> str:
    out = []
    for ch in value:
        if ord(ch) <= 0x20 or ch in '<>"{}|^`\\':
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def _term_sort_key(term) -> tuple:
    if isinstance(term, Iri):
        return (0, term.value, "", "")
    if isinstance(term, BlankNode):
        return (1, term.id, "", "")
    return (2, term.lexical, term.datatype or "", term.lang or "")


def _nt_term(term) -> str:
    if isinstance(term, Iri):
        return f"<{_escape_iri(term.value)}>"
    if isinstance(term, BlankNode):
        return f"_:{term.id}"
    if isinstance(term, Literal):
        base = f'"{_escape_literal(term.lexical)}"'
        if term.lang:
            return f"{base}@{term.lang}"
        if term.datatype:
            return f"{base}^^<{_escape_iri(term.datatype)}>"
        return base
    raise TypeError(f"not an RDF term: {term!r}")


def serialize_ntriples(triples: Iterable[Triple]) -> str:
    lines = sorted(
        f"{_nt_term(s)} {_nt_term(p)} {_nt_term(o)} ." for s, p, o in triples
    )
    return "".join(line + "\n" for line in lines)


# Conservative subset of PN_LOCAL: names that are safe to abbreviate.
_SAFE_LOCAL = re.compile(r"[A-Za-z0-9_](?:[A-Za-z0-9_.-]*[A-Za-z0-9_-])?\Z")


def _prefixed_or_iri(iri: str, namespaces: list[tuple[str, str]]) -> str:
    for prefix, ns in namespaces:
        if iri.startswith(ns):
            local = iri[len(ns) :]
            if local and _SAFE_LOCAL.match(local):
                return f"{prefix}:{local}"
    return f"<{_escape_iri(iri)}>"


def _turtle_term(term, namespaces: list[tuple[str, str]]) -> str:
    if isinstance(term, Iri):
        return _prefixed_or_iri(term.value, namespaces)
    if isinstance(term, BlankNode):
        return f"_:{term.id}"
    if isinstance(term, Literal):
        base = f'"{_escape_literal(term.lexical)}"'
        if term.lang:
            return f"{base}@{term.lang}"
        if term.datatype:
            return f"{base}^^{_prefixed_or_iri(term.datatype, namespaces)}"
        return base
    raise TypeError(f"not an RDF term: {term!r}")


def serialize_turtle(triples: Iterable[Triple], prefixes: dict[str, str]) -> str:
    """Serialize to Turtle with a sorted prefix prologue and sorted body."""
    # Longest namespace wins when several prefixes share a base.
    namespaces = sorted(prefixes.items(), key=lambda kv: (-len(kv[1]), kv[0]))
    lines = [f"@prefix {p}: <{_escape_iri(ns)}> ." for p, ns in sorted(prefixes.items())]

    by_subject: dict[Subject, dict[Iri, list[Object]]] = {}
    for s, p, o in triples:
        by_subject.setdefault(s, {}).setdefault(p, []).append(o)

    for subject in sorted(by_subject, key=_term_sort_key):
        lines.append("")
        preds = by_subject[subject]
        # rdf:type first, abbreviated to `a`; other predicates in IRI order.
        ordered = sorted(preds, key=lambda p: (p != RDF_TYPE, p.value))
        pred_lines = []
        for pred in ordered:
            objects = ", ".join(
                _turtle_term(o, namespaces)
                for o in sorted(preds[pred], key=_term_sort_key)
            )
            name = "a" if pred == RDF_TYPE else _turtle_term(pred, namespaces)
            pred_lines.append(f"{name} {objects}")
        subj = _turtle_term(subject, namespaces)
        body = " ;\n    ".join(pred_lines)
        lines.append(f"{subj} {body} .")

    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Parsing

_SCHEME = re.compile(r"[A-Za-z][A-Za-z0-9+.-]*:")
_PNAME_PREFIX = re.compile(r"[A-Za-z_][A-Za-z0-9_.-]*")
_LOCAL_CHARS = set(
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_-~.:%"
)
_LANGTAG = re.compile(r"[A-Za-z]+(?:-[A-Za-z0-9]+)*")
_NUMBER = re.compile(r"[+-]?(?:\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1

    def error(self, message: str) -> RdfParseError:
        return RdfParseError(message, line=self.line)

    def _advance(self, n: int) -> str:
        chunk = self.text[self.pos : self.pos + n]
        self.line += chunk.count("\n")
        self.pos += n
        return chunk

    def skip_ws(self) -> None:
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in " \t\r\n":
                self._advance(1)
            elif ch == "#":
                end = self.text.find("\n", self.pos)
                self._advance((end if end >= 0 else len(self.text)) - self.pos)
            else:
                return

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek_char(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_char(self, expected: str) -> None:
        if self.peek_char() != expected:
            found = self.peek_char() or "end of input"
            raise self.error(f"expected {expected!r}, found {found!r}")
        self._advance(1)

    # -- token readers ----------------------------------------------------

    def read_iriref(self) -> str:
        # caller consumed nothing; text[pos] == '<'
        self._advance(1)
        end = self.pos
        while end < len(self.text) and self.text[end] not in ">\n":
            end += 1
        if end >= len(self.text) or self.text[end] != ">":
            raise self.error("unterminated IRI")
        raw = self.text[self.pos : end]
        self._advance(end - self.pos + 1)
        return self._unescape_unicode(raw)

    def _unescape_unicode(self, raw: str) -> str:
        if "\\" not in raw:
            return raw
        out = []
        i = 0
        while i < len(raw):
            ch = raw[i]
            if ch != "\\":
                out.append(ch)
                i += 1
                continue
            if i + 1 >= len(raw):
                raise self.error("dangling backslash in IRI")
            kind = raw[i + 1]
            if kind == "u":
                out.append(chr(int(raw[i + 2 : i + 6], 16)))
                i += 6
            elif kind == "U":
                out.append(chr(int(raw[i + 2 : i + 10], 16)))
                i += 10
            else:
                raise self.error(f"invalid IRI escape \\{kind}")
        return "".join(out)

    def read_string(self) -> str:
        quote = self.text[self.pos]
        long_quote = self.text[self.pos : self.pos + 3] == quote * 3
        delim = quote * 3 if long_quote else quote
        self._advance(len(delim))
        out = []
        while True:
            if self.pos >= len(self.text):
                raise self.error("unterminated string literal")
            if self.text.startswith(delim, self.pos):
                self._advance(len(delim))
                return "".join(out)
            ch = self.text[self.pos]
            if ch == "\\":
                out.append(self._read_escape())
                continue
            if ch == "\n" and not long_quote:
                raise self.error("newline in single-line string literal")
            out.append(ch)
            self._advance(1)

    def _read_escape(self) -> str:
        esc = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f",
               '"': '"', "'": "'", "\\": "\\"}
        kind = self.text[self.pos + 1 : self.pos + 2]
        if kind in esc:
            self._advance(2)
            return esc[kind]
        if kind == "u":
            code = self.text[self.pos + 2 : self.pos + 6]
            self._advance(6)
            return chr(int(code, 16))
        if kind == "U":
            code = self.text[self.pos + 2 : self.pos + 10]
            self._advance(10)
            return chr(int(code, 16))
        raise self.error(f"invalid string escape \\{kind}")

    def read_pname(self) -> tuple[str, str]:
        """Read prefix:local, returning (prefix, local) without expansion."""
        m = _PNAME_PREFIX.match(self.text, self.pos)
        prefix = ""
        if m:
            prefix = m.group(0)
            self._advance(len(prefix))
        if self.text[self.pos : self.pos + 1] != ":":
            raise self.error(f"expected ':' in prefixed name after {prefix!r}")
        self._advance(1)
        out = []
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "\\":
                nxt = self.text[self.pos + 1 : self.pos + 2]
                out.append(nxt)
                self._advance(2)
                continue
            if ch not in _LOCAL_CHARS:
                break
            if ch == ".":
                # A dot followed by whitespace or EOF terminates the statement.
                nxt = self.text[self.pos + 1 : self.pos + 2]
                if not nxt or nxt not in _LOCAL_CHARS:
                    break
            out.append(ch)
            self._advance(1)
        return prefix, "".join(out)

    def read_word(self) -> str:
        m = re.compile(r"[A-Za-z]+").match(self.text, self.pos)
        if not m:
            raise self.error(f"unexpected character {self.text[self.pos]!r}")
        self._advance(len(m.group(0)))
        return m.group(0)


class _Parser:
    def __init__(self, text: str):
        self.s = _Scanner(text)
        self.prefixes: dict[str, str] = {}
        self.base: str | None = None
        self.triples: set[Triple] = set()
        self._bnodes: dict[str, BlankNode] = {}
        self._anon = 0

    # -- term construction -------------------------------------------------

    def _resolve(self, iri: str) -> str:
        if self.base and not _SCHEME.match(iri):
            from urllib.parse import urljoin

            return urljoin(self.base, iri)
        return iri

    def _expand(self, prefix: str, local: str) -> Iri:
        if prefix not in self.prefixes:
            raise self.s.error(f"undeclared prefix {prefix!r}")
        return Iri(self.prefixes[prefix] + local)

    def _labeled_bnode(self, label: str) -> BlankNode:
        if label not in self._bnodes:
            self._bnodes[label] = BlankNode(f"b{len(self._bnodes) + self._anon}")
        return self._bnodes[label]

    def _fresh_bnode(self) -> BlankNode:
        self._anon += 1
        return BlankNode(f"a{self._anon + len(self._bnodes)}")

    # -- grammar -----------------------------------------------------------

    def parse(self) -> tuple[set[Triple], dict[str, str]]:
        while not self.s.at_end():
            ch = self.s.peek_char()
            if ch == "@":
                self._directive_at()
            else:
                save = self.s.pos
                if ch.isalpha() and self._try_sparql_directive():
                    continue
                self.s.pos = save
                self._triples_statement()
        return self.triples, self.prefixes

    def _directive_at(self) -> None:
        self.s.take_char("@")
        word = self.s.read_word()
        if word == "prefix":
            self._prefix_directive()
            self.s.take_char(".")
        elif word == "base":
            self._base_directive()
            self.s.take_char(".")
        else:
            raise self.s.error(f"unknown directive @{word}")

    def _try_sparql_directive(self) -> bool:
        word = self.s.read_word()
        if word.lower() == "prefix" and self.s.peek_char() not in ":":
            self._prefix_directive()
            return True
        if word.lower() == "base" and self.s.peek_char() == "<":
            self._base_directive()
            return True
        return False

    def _prefix_directive(self) -> None:
        self.s.skip_ws()
        prefix, local = self.s.read_pname()
        if local:
            raise self.s.error("prefix declaration must end with ':'")
        if self.s.peek_char() != "<":
            raise self.s.error("expected IRI in prefix declaration")
        self.prefixes[prefix] = self._resolve(self.s.read_iriref())

    def _base_directive(self) -> None:
        if self.s.peek_char() != "<":
            raise self.s.error("expected IRI in base declaration")
        self.base = self._resolve(self.s.read_iriref())

    def _triples_statement(self) -> None:
        ch = self.s.peek_char()
        if ch == "[":
            subject = self._bnode_property_list()
            if self.s.peek_char() != ".":
                self._predicate_object_list(subject)
        else:
            subject = self._subject()
            self._predicate_object_list(subject)
        self.s.take_char(".")

    def _subject(self) -> Subject:
        ch = self.s.peek_char()
        if ch == "<":
            return Iri(self._resolve(self.s.read_iriref()))
        if ch == "_":
            return self._blank_label()
        if ch == "(":
            raise self.s.error("RDF collections are not supported")
        if not ch:
            raise self.s.error("unexpected end of input")
        prefix, local = self.s.read_pname()
        return self._expand(prefix, local)

    def _blank_label(self) -> BlankNode:
        # text[pos] == '_'
        self.s.take_char("_")
        self.s.take_char(":")
        m = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.-]*").match(self.s.text, self.s.pos)
        if not m:
            raise self.s.error("invalid blank node label")
        label = m.group(0).rstrip(".")
        self.s._advance(len(label))
        return self._labeled_bnode(label)

    def _predicate(self) -> Iri:
        ch = self.s.peek_char()
        if ch == "<":
            return Iri(self._resolve(self.s.read_iriref()))
        if ch == "a":
            nxt = self.s.text[self.s.pos + 1 : self.s.pos + 2]
            if not nxt or nxt in " \t\r\n<#[":
                self.s._advance(1)
                return RDF_TYPE
        prefix, local = self.s.read_pname()
        return self._expand(prefix, local)

    def _predicate_object_list(self, subject: Subject) -> None:
        while True:
            pred = self._predicate()
            while True:
                obj = self._object()
                self.triples.add((subject, pred, obj))
                if self.s.peek_char() == ",":
                    self.s.take_char(",")
                    continue
                break
            if self.s.peek_char() == ";":
                while self.s.peek_char() == ";":
                    self.s.take_char(";")
                if self.s.peek_char() in (".", "]", ""):
                    return
                continue
            return

    def _bnode_property_list(self) -> BlankNode:
        self.s.take_char("[")
        node = self._fresh_bnode()
        if self.s.peek_char() == "]":
            self.s.take_char("]")
            return node
        self._predicate_object_list(node)
        self.s.take_char("]")
        return node

    def _object(self) -> Object:
        ch = self.s.peek_char()
        if not ch:
            raise self.s.error("unexpected end of input")
        if ch == "<":
            return Iri(self._resolve(self.s.read_iriref()))
        if ch == "_":
            return self._blank_label()
        if ch == "[":
            return self._bnode_property_list()
        if ch == "(":
            raise self.s.error("RDF collections are not supported")
        if ch in "\"'":
            return self._literal()
        if ch.isdigit() or (ch in "+-." and _NUMBER.match(self.s.text, self.s.pos)):
            return self._number()
        # bare words: true/false, otherwise a prefixed name
        save = self.s.pos
        if ch in "tf":
            word = self.s.read_word()
            if word in ("true", "false") and self.s.peek_char() != ":":
                return Literal(word, XSD_BOOLEAN)
            self.s.pos = save
        prefix, local = self.s.read_pname()
        return self._expand(prefix, local)

    def _number(self) -> Literal:
        m = _NUMBER.match(self.s.text, self.s.pos)
        if not m:
            raise self.s.error("malformed number")
        lex = m.group(0)
        # Trailing dot belongs to the statement, not the number.
        if lex.endswith(".") and "e" not in lex and "E" not in lex:
            lex = lex[:-1]
        self.s._advance(len(lex))
        if "e" in lex or "E" in lex:
            return Literal(lex, XSD_DOUBLE)
        if "." in lex:
            return Literal(lex, XSD_DECIMAL)
        return Literal(lex, XSD_INTEGER)

    def _literal(self) -> Literal:
        value = self.s.read_string()
        nxt = self.s.text[self.s.pos : self.s.pos + 2]
        if nxt == "^^":
            self.s._advance(2)
            ch = self.s.peek_char()
            if ch == "<":
                dt = self._resolve(self.s.read_iriref())
            else:
                prefix, local = self.s.read_pname()
                dt = self._expand(prefix, local).value
            if dt == XSD_STRING:
                return Literal(value)
            return Literal(value, dt)
        if self.s.text[self.s.pos : self.s.pos + 1] == "@":
            self.s._advance(1)
            m = _LANGTAG.match(self.s.text, self.s.pos)
            if not m:
                raise self.s.error("malformed language tag")
            self.s._advance(len(m.group(0)))
            return Literal(value, lang=m.group(0))
        return Literal(value)


def parse_text(text: str) -> tuple[set[Triple], dict[str, str]]:
    """Parse Turtle (or N-Triples) text into (triples, prefixes)."""
    return _Parser(text).parse()


def parse_file(path: str | Path) -> tuple[set[Triple], dict[str, str]]:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise UnreadablePath(f"cannot read {p}: {exc}") from exc
    return parse_text(text)
