"""
Exception hierarchy. Every error maps onto a registry code and can be
reported as a Diagnostic.
"""

from typing import List, Optional

from .diagnostics import Code, Diagnostic, Location


class Uml2XmlError(Exception):
    """Base class for all conversion errors."""

    code: Code = Code.MALFORMED_RECORD

    def __init__(self, message: str, location: Optional[Location] = None, code: Optional[Code] = None):
        super().__init__(message)
        self.message = message
        self.location = location
        if code is not None:
            self.code = code

    def to_diagnostic(self) -> Diagnostic:
        return Diagnostic.error(self.code, self.message, self.location)

    def __str__(self) -> str:
        if self.location is not None and str(self.location):
            return f"{self.message} (at {self.location})"
        return self.message


class UnknownVisibilityError(Uml2XmlError, ValueError):
    code = Code.UNKNOWN_VISIBILITY


class CardinalityError(Uml2XmlError, ValueError):
    code = Code.BAD_CARDINALITY


class CodificationError(Uml2XmlError):
    """A strict parse failed; `diagnostics` holds every finding."""

    def __init__(self, diagnostics: List[Diagnostic]):
        errors = [d for d in diagnostics if d.is_error]
        first = errors[0] if errors else None
        summary = f"{len(errors)} error(s) in codification"
        if first is not None:
            summary += f"; first: {first.message}"
        super().__init__(
            summary,
            location=first.location if first else None,
            code=first.code if first else Code.MALFORMED_RECORD,
        )
        self.diagnostics = diagnostics


class XmlSyntaxError(Uml2XmlError):
    code = Code.XML_SYNTAX_ERROR

    def __init__(self, message: str, line: int, column: int):
        super().__init__(message, Location(line=line, column=column))
        self.line = line
        self.column = column


class UnsupportedXmlError(XmlSyntaxError):
    code = Code.UNSUPPORTED_XML


class ShapeError(Uml2XmlError):
    code = Code.SHAPE_ERROR

    def __init__(self, message: str, path: str):
        super().__init__(message, Location(path=path))
        self.path = path


class SchemaError(Uml2XmlError):
    code = Code.SCHEMA_SYNTAX_ERROR


class SchemaSyntaxError(SchemaError):
    code = Code.SCHEMA_SYNTAX_ERROR


class UnsupportedSchemaFeatureError(SchemaError):
    code = Code.UNSUPPORTED_SCHEMA_FEATURE


class AmbiguousParticlesError(SchemaError):
    code = Code.AMBIGUOUS_PARTICLES
