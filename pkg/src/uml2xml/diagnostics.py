"""
Diagnostics: coded findings shared by every stage.
"""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict


class Code(str, Enum):
    """Stable diagnostic codes shared by every stage."""
    # core model / codification
    UNKNOWN_VISIBILITY = "UnknownVisibility"
    BAD_CARDINALITY = "BadCardinality"
    NON_STANDARD_CARDINALITY = "NonStandardCardinality"
    MALFORMED_RECORD = "MalformedRecord"
    BAD_TUPLE = "BadTuple"
    BAD_COUNT = "BadCount"
    TRAILING_TOKEN = "TrailingToken"
    # diagram rules
    DUPLICATE_CLASS_NAME = "DuplicateClassName"
    UNKNOWN_TARGET = "UnknownTarget"
    SELF_GENERALIZATION = "SelfGeneralization"
    GENERALIZATION_CYCLE = "GeneralizationCycle"
    DUPLICATE_MEMBER = "DuplicateMember"
    SELF_RELATION_WARNING = "SelfRelationWarning"
    # xml / schema
    XML_SYNTAX_ERROR = "XmlSyntaxError"
    UNSUPPORTED_XML = "UnsupportedXml"
    SHAPE_ERROR = "ShapeError"
    UNSUPPORTED_SCHEMA_FEATURE = "UnsupportedSchemaFeature"
    SCHEMA_SYNTAX_ERROR = "SchemaSyntaxError"
    AMBIGUOUS_PARTICLES = "AmbiguousParticles"
    WRONG_ROOT = "WrongRoot"
    UNEXPECTED_ELEMENT = "UnexpectedElement"
    MISSING_ELEMENT = "MissingElement"
    TOO_MANY_OCCURRENCES = "TooManyOccurrences"
    MISSING_ATTRIBUTE = "MissingAttribute"
    UNEXPECTED_ATTRIBUTE = "UnexpectedAttribute"
    UNEXPECTED_TEXT = "UnexpectedText"
    # cli
    IO_ERROR = "IoError"


class Severity(str, Enum):
    """Diagnostic severities."""
    ERROR = "error"
    WARNING = "warning"


class Location(BaseModel):
    """Where a diagnostic applies. Line and token indexes are 1-based."""
    model_config = ConfigDict(frozen=True)

    class_name: Optional[str] = None
    member: Optional[str] = None
    line: Optional[int] = None
    token: Optional[int] = None
    column: Optional[int] = None
    path: Optional[str] = None

    def __str__(self) -> str:
        parts = []
        if self.line is not None:
            parts.append(f"line {self.line}")
            if self.token is not None:
                parts.append(f"token {self.token}")
            if self.column is not None:
                parts.append(f"column {self.column}")
        if self.class_name is not None:
            member = f".{self.member}" if self.member else ""
            parts.append(f"class {self.class_name}{member}")
        if self.path is not None:
            parts.append(self.path)
        return ", ".join(parts)


class Diagnostic(BaseModel):
    """A coded finding produced by a pipeline stage."""
    model_config = ConfigDict(frozen=True)

    severity: Severity
    code: Code
    message: str
    location: Optional[Location] = None

    @classmethod
    def error(cls, code: Code, message: str, location: Optional[Location] = None) -> "Diagnostic":
        return cls(severity=Severity.ERROR, code=code, message=message, location=location)

    @classmethod
    def warning(cls, code: Code, message: str, location: Optional[Location] = None) -> "Diagnostic":
        return cls(severity=Severity.WARNING, code=code, message=message, location=location)

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def render(self) -> str:
        """Render as `severity code: message (at location)`."""
        text = f"{self.severity.value} {self.code.value}: {self.message}"
        if self.location is not None:
            where = str(self.location)
            if where:
                text += f" (at {where})"
        return text

    def to_record(self) -> Dict[str, Any]:
        """Flat record for machine-readable reports."""
        return {
            "severity": self.severity.value,
            "code": self.code.value,
            "message": self.message,
            "location": str(self.location) if self.location is not None else None,
        }


def has_errors(diagnostics: List[Diagnostic]) -> bool:
    """True when any diagnostic has Error severity."""
    return any(d.is_error for d in diagnostics)

