"""
Compiler for the XML Schema subset used by the embedded schema.

Supported: xsd:schema, global and local xsd:element (name, ref, type
"xsd:string", minOccurs, maxOccurs), xsd:complexType holding at most one
xsd:sequence followed by xsd:attribute declarations (name, type
"xsd:string", use). Anything else is rejected rather than ignored.
"""

import re
from typing import Dict, List, Optional

from loguru import logger

from ..diagnostics import Location
from ..dom import XmlNode, child_path, parse_xml
from ..errors import AmbiguousParticlesError, SchemaSyntaxError, UnsupportedSchemaFeatureError
from .content_model import XSD_STRING, AttributeDecl, ContentModel, ElementDecl, Particle

SCHEMA = "xsd:schema"
ELEMENT = "xsd:element"
COMPLEX_TYPE = "xsd:complexType"
SEQUENCE = "xsd:sequence"
ATTRIBUTE = "xsd:attribute"
UNBOUNDED = "unbounded"

_LOCAL_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.-]*")
_GLOBAL_ELEMENT_ATTRIBUTES = {"name", "type"}
_LOCAL_ELEMENT_ATTRIBUTES = {"name", "type", "ref", "minOccurs", "maxOccurs"}
_ATTRIBUTE_ATTRIBUTES = {"name", "type", "use"}


def _syntax(message: str, path: str) -> SchemaSyntaxError:
    return SchemaSyntaxError(message, Location(path=path))


def _unsupported(message: str, path: str) -> UnsupportedSchemaFeatureError:
    return UnsupportedSchemaFeatureError(message, Location(path=path))


class _Compiler:
    def __init__(self, schema: XmlNode):
        self.schema = schema
        self.globals: Dict[str, XmlNode] = {}
        self.elements: Dict[str, ElementDecl] = {}

    def compile(self) -> ContentModel:
        path = f"/{self.schema.name}"
        if self.schema.name != SCHEMA:
            raise _syntax(f"schema root must be <{SCHEMA}>, found <{self.schema.name}>", path)
        for name, _ in self.schema.attributes:
            if name != "xmlns:xsd":
                raise _unsupported(f"schema attribute {name!r}", path)
        self._no_text(self.schema, path)

        global_paths: Dict[str, str] = {}
        for index, child in enumerate(self.schema.children):
            where = child_path(path, self.schema.children, index)
            if child.name != ELEMENT:
                raise _unsupported(f"<{child.name}> at schema level", where)
            self._check_attributes(child, _GLOBAL_ELEMENT_ATTRIBUTES, _LOCAL_ELEMENT_ATTRIBUTES, where)
            name = self._name(child, where)
            if name in self.globals:
                raise _syntax(f"global element {name!r} is declared twice", where)
            self.globals[name] = child
            global_paths[name] = where

        if not self.globals:
            raise _syntax("schema declares no global element", path)

        for name, node in self.globals.items():
            self._declare(name, node, global_paths[name])

        root = next(iter(self.globals))
        logger.debug(f"Compiled schema rooted at {root!r} with {len(self.elements)} element declaration(s)")
        return ContentModel(root=root, elements=self.elements)

    # -- helpers --------------------------------------------------------

    @staticmethod
    def _no_text(node: XmlNode, path: str) -> None:
        if node.text is not None and node.text.strip():
            raise _syntax(f"unexpected text in <{node.name}>", path)

    @staticmethod
    def _check_attributes(node: XmlNode, allowed: set, misplaced: set, path: str) -> None:
        for name, _ in node.attributes:
            if name in allowed:
                continue
            if name in misplaced:
                raise _syntax(f"attribute {name!r} is not allowed on <{node.name}> here", path)
            raise _unsupported(f"attribute {name!r} on <{node.name}>", path)

    @staticmethod
    def _name(node: XmlNode, path: str) -> str:
        name = node.get("name")
        if name is None:
            raise _syntax(f"<{node.name}> has no name", path)
        if not _LOCAL_NAME.fullmatch(name):
            raise _syntax(f"invalid declared name {name!r}", path)
        return name

    @staticmethod
    def _occurs(node: XmlNode, path: str) -> Particle:
        min_text = node.get("minOccurs", "1")
        max_text = node.get("maxOccurs", "1")
        if not (min_text.isascii() and min_text.isdigit()):
            raise _syntax(f"minOccurs {min_text!r} is not a non-negative integer", path)
        min_occurs = int(min_text)
        max_occurs: Optional[int]
        if max_text == UNBOUNDED:
            max_occurs = None
        elif max_text.isascii() and max_text.isdigit() and int(max_text) >= 1:
            max_occurs = int(max_text)
        else:
            raise _syntax(f"maxOccurs {max_text!r} is not a positive integer or 'unbounded'", path)
        if max_occurs is not None and min_occurs > max_occurs:
            raise _syntax(f"minOccurs {min_occurs} exceeds maxOccurs {max_occurs}", path)
        return Particle(name="_", min_occurs=min_occurs, max_occurs=max_occurs)

    # -- declarations ---------------------------------------------------

    def _declare(self, name: str, node: XmlNode, path: str) -> None:
        self._no_text(node, path)
        type_name = node.get("type")
        complex_types = []
        for index, child in enumerate(node.children):
            if child.name != COMPLEX_TYPE:
                raise _unsupported(f"<{child.name}> inside an element declaration", child_path(path, node.children, index))
            complex_types.append(child)

        if type_name is not None and complex_types:
            raise _syntax(f"element {name!r} has both a type and an inline complexType", path)
        if len(complex_types) > 1:
            raise _syntax(f"element {name!r} has more than one complexType", path)

        if type_name is not None:
            if type_name != XSD_STRING:
                raise _unsupported(f"element type {type_name!r} (only {XSD_STRING} is supported)", path)
            declaration = ElementDecl(name=name, text_allowed=True)
        elif complex_types:
            declaration = self._complex_type(name, complex_types[0], child_path(path, node.children, 0))
        else:
            raise _unsupported(f"element {name!r} without a type (anyType)", path)

        existing = self.elements.get(name)
        if existing is not None and existing != declaration:
            raise _unsupported(f"element {name!r} is declared twice with different content", path)
        self.elements[name] = declaration

    def _complex_type(self, name: str, node: XmlNode, path: str) -> ElementDecl:
        for attribute, _ in node.attributes:
            raise _unsupported(f"attribute {attribute!r} on <{COMPLEX_TYPE}>", path)
        self._no_text(node, path)

        particles: List[Particle] = []
        attributes: List[AttributeDecl] = []
        seen_sequence = False
        for index, child in enumerate(node.children):
            where = child_path(path, node.children, index)
            if child.name == SEQUENCE:
                if seen_sequence or attributes:
                    raise _syntax(f"<{SEQUENCE}> must come once, before attribute declarations", where)
                seen_sequence = True
                particles = self._sequence(child, where)
            elif child.name == ATTRIBUTE:
                declaration = self._attribute(child, where)
                if any(a.name == declaration.name for a in attributes):
                    raise _syntax(f"attribute {declaration.name!r} is declared twice", where)
                attributes.append(declaration)
            else:
                raise _unsupported(f"<{child.name}> inside <{COMPLEX_TYPE}>", where)
        return ElementDecl(name=name, attributes=attributes, particles=particles, text_allowed=False)

    def _sequence(self, node: XmlNode, path: str) -> List[Particle]:
        for attribute, _ in node.attributes:
            raise _unsupported(f"attribute {attribute!r} on <{SEQUENCE}>", path)
        self._no_text(node, path)

        particles: List[Particle] = []
        for index, child in enumerate(node.children):
            where = child_path(path, node.children, index)
            if child.name != ELEMENT:
                raise _unsupported(f"<{child.name}> inside <{SEQUENCE}>", where)
            self._check_attributes(child, _LOCAL_ELEMENT_ATTRIBUTES, set(), where)
            occurs = self._occurs(child, where)

            reference = child.get("ref")
            if reference is not None:
                if child.get("name") is not None or child.get("type") is not None or child.children:
                    raise _syntax("an element reference carries only ref, minOccurs and maxOccurs", where)
                if reference not in self.globals:
                    raise _syntax(f"reference to undeclared global element {reference!r}", where)
                name = reference
            else:
                name = self._name(child, where)
                self._declare(name, child, where)

            if any(p.name == name for p in particles):
                raise AmbiguousParticlesError(
                    f"element {name!r} appears twice in one sequence; greedy matching would be inexact",
                    Location(path=where),
                )
            particles.append(Particle(name=name, min_occurs=occurs.min_occurs, max_occurs=occurs.max_occurs))
        return particles

    def _attribute(self, node: XmlNode, path: str) -> AttributeDecl:
        self._check_attributes(node, _ATTRIBUTE_ATTRIBUTES, set(), path)
        if node.children:
            raise _unsupported(f"content inside <{ATTRIBUTE}>", path)
        self._no_text(node, path)
        name = self._name(node, path)
        type_name = node.get("type", XSD_STRING)
        if type_name != XSD_STRING:
            raise _unsupported(f"attribute type {type_name!r} (only {XSD_STRING} is supported)", path)
        use = node.get("use", "optional")
        if use == "prohibited":
            raise _unsupported("use='prohibited'", path)
        if use not in ("optional", "required"):
            raise _syntax(f"invalid use {use!r}", path)
        return AttributeDecl(name=name, type_name=type_name, required=use == "required")


def compile_schema(xsd_text: str) -> ContentModel:
    """
    Compile schema text into a ContentModel rooted at the first global element.

    Raises:
        UnsupportedSchemaFeatureError: a construct outside the subset.
        SchemaSyntaxError: missing names, dangling references, bad occurs.
        AmbiguousParticlesError: a sequence repeats an element name.
        XmlSyntaxError: the text is not well-formed.
    """
    return _Compiler(parse_xml(xsd_text)).compile()
