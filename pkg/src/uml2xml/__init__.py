"""
uml2xml - convert codified UML class diagrams into schema-validated XML.
"""

__version__ = "0.1.0"

from .codec import ParseResult, emit_codification, parse_codification
from .diagnostics import Code, Diagnostic, Location, Severity
from .dom import XmlNode, parse_xml, serialize
from .errors import CodificationError, ShapeError, Uml2XmlError, XmlSyntaxError
from .generator import document_to_diagram, generate_document
from .models import (
    Attribute,
    Cardinality,
    Diagram,
    Method,
    RelationKind,
    Relationship,
    UmlClass,
    Visibility,
    format_cardinality,
    parse_cardinality,
    parse_visibility,
)
from .pipeline import ConversionPipeline, ConversionResult, Stage
from .schema import compile_schema, embedded_schema_text, validate_document
from .validator import validate_diagram

__all__ = [
    "Attribute",
    "Cardinality",
    "Code",
    "CodificationError",
    "ConversionPipeline",
    "ConversionResult",
    "Diagnostic",
    "Diagram",
    "Location",
    "Method",
    "ParseResult",
    "RelationKind",
    "Relationship",
    "Severity",
    "ShapeError",
    "Stage",
    "UmlClass",
    "Uml2XmlError",
    "Visibility",
    "XmlNode",
    "XmlSyntaxError",
    "compile_schema",
    "document_to_diagram",
    "embedded_schema_text",
    "emit_codification",
    "format_cardinality",
    "generate_document",
    "parse_cardinality",
    "parse_codification",
    "parse_visibility",
    "parse_xml",
    "serialize",
    "validate_diagram",
    "validate_document",
]
