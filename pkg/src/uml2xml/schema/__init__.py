"""
Embedded schema, the XSD-subset compiler and document validation.
"""

from functools import lru_cache
from importlib.resources import files

from .compiler import compile_schema
from .content_model import XSD_STRING, AttributeDecl, ContentModel, ElementDecl, Particle
from .validation import validate_document

SCHEMA_FILE = "uml_class.xsd"


@lru_cache(maxsize=1)
def embedded_schema_text() -> str:
    """Return the shipped schema text; identical on every call."""
    return files(__package__).joinpath(SCHEMA_FILE).read_text(encoding="utf-8")


@lru_cache(maxsize=1)
def embedded_content_model() -> ContentModel:
    """Compile the shipped schema once per process."""
    return compile_schema(embedded_schema_text())


__all__ = [
    "SCHEMA_FILE",
    "XSD_STRING",
    "AttributeDecl",
    "ContentModel",
    "ElementDecl",
    "Particle",
    "compile_schema",
    "embedded_content_model",
    "embedded_schema_text",
    "validate_document",
]
