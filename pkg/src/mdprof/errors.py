"""Domain errors raised across the pipeline.

Every error carries a short stable code so the command line tool can map
failures to documented diagnostics.
"""

from __future__ import annotations


class MdprofError(Exception):
    """Base class for all errors raised by this package."""

    code = "E_GENERIC"


class UnreadablePath(MdprofError):
    """The input path does not exist or cannot be opened."""

    code = "E_UNREADABLE"


class UnknownFormat(MdprofError):
    """The input format could not be detected or is unsupported."""

    code = "E_FORMAT"


class ParseError(MdprofError):
    """The input does not parse; carries a line or item position when known."""

    code = "E_PARSE"

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"{message} (line {line})"
        super().__init__(message)
        self.line = line


class RaggedRows(ParseError):
    """A CSV row has a different arity than the header."""

    code = "E_RAGGED"


class IncompatibleCategory(MdprofError):
    """A forced category fails on more cells than its tolerance allows."""

    code = "E_CATEGORY"


class RdfParseError(ParseError):
    """Turtle or N-Triples input does not parse."""

    code = "E_RDF_PARSE"


class DanglingMember(MdprofError):
    """A member links to a level that is not declared in the graph."""

    code = "E_DANGLING_MEMBER"


class AmbiguousIndicator(MdprofError):
    """Two indicators normalize to the same matched name."""

    code = "E_AMBIGUOUS_INDICATOR"


class MappingLevelMissing(MdprofError):
    """A mapping references a level the knowledge graph does not hold."""

    code = "E_MAPPING_LEVEL"


class EmptyAfterNulls(MdprofError):
    """No non-null values remain, so the statistic is undefined."""

    code = "E_EMPTY"


class ProfileCategoryMismatch(MdprofError):
    """A profile variant does not belong to the attribute's category."""

    code = "E_PROFILE_MISMATCH"


class DuplicateAttributeName(MdprofError):
    """Two attributes of one source share a name."""

    code = "E_DUPLICATE_ATTR"


class ShapeViolation(MdprofError):
    """A metadata graph breaks the vocabulary shape rules."""

    code = "E_SHAPE"

    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message)
        self.violations = list(violations or [])


class StorageError(MdprofError):
    """The catalog directory cannot be read or written."""

    code = "E_STORAGE"


class MalformedQuery(MdprofError):
    """A catalog query expression does not parse."""

    code = "E_QUERY"


class UnknownSource(MdprofError):
    """The catalog holds no source with the given IRI."""

    code = "E_UNKNOWN_SOURCE"


class UnknownAttribute(MdprofError):
    """The source has no attribute with the given name."""

    code = "E_UNKNOWN_ATTR"


DIAGNOSTIC_CODES: dict[str, str] = {
    cls.code: (cls.__doc__ or cls.__name__).strip().rstrip(".")
    for cls in [
        UnreadablePath,
        UnknownFormat,
        ParseError,
        RaggedRows,
        IncompatibleCategory,
        RdfParseError,
        DanglingMember,
        AmbiguousIndicator,
        MappingLevelMissing,
        EmptyAfterNulls,
        ProfileCategoryMismatch,
        DuplicateAttributeName,
        ShapeViolation,
        StorageError,
        MalformedQuery,
        UnknownSource,
        UnknownAttribute,
    ]
}
