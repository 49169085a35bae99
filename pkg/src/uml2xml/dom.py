"""
Minimal document tree: construction, escaping, serialization and a parser
for the subset the serializer emits.
"""

import re
from typing import Iterator, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import UnsupportedXmlError, XmlSyntaxError

XML_DECLARATION = '<?xml version="1.0" encoding="utf-8"?>'
INDENT = "  "

_NCNAME = r"[A-Za-z_][A-Za-z0-9_.-]*"
NAME_RE = re.compile(rf"{_NCNAME}(?::{_NCNAME})?")

# Only the schema namespace prefix is understood, and only as literal text.
SCHEMA_PREFIX = "xsd"

# deeper documents are rejected as unsupported, keeping recursion bounded
MAX_DEPTH = 256

_ESCAPES = {"&": "&amp;", "<": "&lt;", ">": "&gt;", '"': "&quot;", "'": "&apos;"}
_ENTITIES = {"amp": "&", "lt": "<", "gt": ">", "quot": '"', "apos": "'"}
_ESCAPE_RE = re.compile(r"[&<>\"']")


def escape(text: str) -> str:
    """Escape the five XML special characters."""
    return _ESCAPE_RE.sub(lambda m: _ESCAPES[m.group(0)], text)


class XmlNode(BaseModel):
    """An element: name, ordered attributes, and either text or child elements."""
    model_config = ConfigDict(frozen=True)

    name: str
    attributes: List[Tuple[str, str]] = Field(default_factory=list)
    children: List["XmlNode"] = Field(default_factory=list)
    text: Optional[str] = None

    @field_validator("name")
    @classmethod
    def _check_name(cls, value: str) -> str:
        if not NAME_RE.fullmatch(value):
            raise ValueError(f"invalid element name {value!r}")
        return value

    @field_validator("attributes")
    @classmethod
    def _check_attributes(cls, value: List[Tuple[str, str]]) -> List[Tuple[str, str]]:
        seen = set()
        for name, _ in value:
            if not NAME_RE.fullmatch(name):
                raise ValueError(f"invalid attribute name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate attribute {name!r}")
            seen.add(name)
        return value

    @field_validator("text")
    @classmethod
    def _empty_text_is_none(cls, value: Optional[str]) -> Optional[str]:
        return value or None

    @model_validator(mode="after")
    def _no_mixed_content(self) -> "XmlNode":
        if self.text is not None and self.children:
            raise ValueError(f"element {self.name!r} has both text and element children")
        return self

    @classmethod
    def leaf(cls, name: str, text: Optional[str] = None) -> "XmlNode":
        return cls(name=name, text=text)

    def get(self, attribute: str, default: Optional[str] = None) -> Optional[str]:
        for name, value in self.attributes:
            if name == attribute:
                return value
        return default

    def iter_named(self, name: str) -> Iterator["XmlNode"]:
        return (child for child in self.children if child.name == name)


def serialize(root: XmlNode, with_declaration: bool = True) -> str:
    """Pretty-print with two-space indentation, one element per line."""
    lines: List[str] = [XML_DECLARATION] if with_declaration else []
    _write(root, 0, lines)
    return "\n".join(lines) + "\n"


def _write(node: XmlNode, depth: int, lines: List[str]) -> None:
    pad = INDENT * depth
    attributes = "".join(f' {name}="{escape(value)}"' for name, value in node.attributes)
    if node.children:
        lines.append(f"{pad}<{node.name}{attributes}>")
        for child in node.children:
            _write(child, depth + 1, lines)
        lines.append(f"{pad}</{node.name}>")
    elif node.text is not None:
        lines.append(f"{pad}<{node.name}{attributes}>{escape(node.text)}</{node.name}>")
    else:
        lines.append(f"{pad}<{node.name}{attributes}/>")


class _Parser:
    """Recursive-descent reader over the serializer's XML subset."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    # -- positions and errors -------------------------------------------

    def _line_col(self, pos: int) -> Tuple[int, int]:
        line = self.text.count("\n", 0, pos) + 1
        column = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, column

    def error(self, message: str, pos: Optional[int] = None) -> XmlSyntaxError:
        line, column = self._line_col(self.pos if pos is None else pos)
        return XmlSyntaxError(message, line, column)

    def unsupported(self, message: str, pos: Optional[int] = None) -> UnsupportedXmlError:
        line, column = self._line_col(self.pos if pos is None else pos)
        return UnsupportedXmlError(message, line, column)

    # -- scanning helpers -----------------------------------------------

    def startswith(self, literal: str) -> bool:
        return self.text.startswith(literal, self.pos)

    def skip_whitespace(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def expect(self, literal: str) -> None:
        if not self.startswith(literal):
            found = self.text[self.pos:self.pos + len(literal)] or "end of input"
            raise self.error(f"expected {literal!r}, found {found!r}")
        self.pos += len(literal)

    def read_name(self) -> str:
        match = NAME_RE.match(self.text, self.pos)
        if not match:
            raise self.error("expected a name")
        self.pos = match.end()
        return match.group(0)

    def decode(self, raw: str, start: int) -> str:
        """Resolve entity and character references in `raw`."""
        out: List[str] = []
        index = 0
        while True:
            amp = raw.find("&", index)
            if amp < 0:
                out.append(raw[index:])
                return "".join(out)
            out.append(raw[index:amp])
            semi = raw.find(";", amp)
            if semi < 0:
                raise self.error("unterminated entity reference", start + amp)
            reference = raw[amp + 1:semi]
            out.append(self._resolve(reference, start + amp))
            index = semi + 1

    def _resolve(self, reference: str, pos: int) -> str:
        if reference in _ENTITIES:
            return _ENTITIES[reference]
        try:
            if reference.startswith("#x"):
                return chr(int(reference[2:], 16))
            if reference.startswith("#"):
                return chr(int(reference[1:], 10))
        except (ValueError, OverflowError):
            pass
        raise self.error(f"bad entity reference '&{reference};'", pos)

    # -- grammar --------------------------------------------------------

    def document(self) -> XmlNode:
        if self.startswith("\ufeff"):
            self.pos += 1
        self.skip_whitespace()
        if self.startswith("<?xml") and self.text[self.pos + 5:self.pos + 6] in (" ", "?"):
            end = self.text.find("?>", self.pos)
            if end < 0:
                raise self.error("unterminated XML declaration")
            self.pos = end + 2
        self.misc()
        if self.pos >= len(self.text):
            raise self.error("document has no root element")
        root = self.element()
        self.misc()
        if self.pos < len(self.text):
            raise self.error("content after the root element")
        return root

    def misc(self) -> None:
        self.skip_whitespace()
        self.reject_unsupported()

    def reject_unsupported(self) -> None:
        if self.startswith("<!--"):
            raise self.unsupported("comments are not supported")
        if self.startswith("<![CDATA["):
            raise self.unsupported("CDATA sections are not supported")
        if self.startswith("<!"):
            raise self.unsupported("DOCTYPE and markup declarations are not supported")
        if self.startswith("<?"):
            raise self.unsupported("processing instructions are not supported")

    def element(self, depth: int = 1) -> XmlNode:
        start = self.pos
        if depth > MAX_DEPTH:
            raise self.unsupported(f"elements nested deeper than {MAX_DEPTH} levels are not supported")
        self.expect("<")
        name = self.read_name()
        self.check_prefix(name, start + 1, attribute=False)

        attributes: List[Tuple[str, str]] = []
        seen = set()
        while True:
            had_space = self.pos < len(self.text) and self.text[self.pos] in " \t\r\n"
            self.skip_whitespace()
            if self.startswith("/>"):
                self.pos += 2
                return XmlNode(name=name, attributes=attributes)
            if self.startswith(">"):
                self.pos += 1
                break
            if not had_space:
                raise self.error(f"malformed start tag <{name}>")
            attr_pos = self.pos
            attribute_name = self.read_name()
            self.check_prefix(attribute_name, attr_pos, attribute=True)
            if attribute_name in seen:
                raise self.error(f"duplicate attribute {attribute_name!r} on <{name}>", attr_pos)
            seen.add(attribute_name)
            self.skip_whitespace()
            self.expect("=")
            self.skip_whitespace()
            if self.startswith("'"):
                raise self.unsupported("single-quoted attribute values are not supported")
            self.expect('"')
            end = self.text.find('"', self.pos)
            if end < 0:
                raise self.error("unterminated attribute value")
            raw = self.text[self.pos:end]
            if "<" in raw:
                raise self.error("'<' in attribute value", self.pos + raw.index("<"))
            attributes.append((attribute_name, self.decode(raw, self.pos)))
            self.pos = end + 1

        children: List[XmlNode] = []
        texts: List[str] = []
        while True:
            text_start = self.pos
            lt = self.text.find("<", self.pos)
            if lt < 0:
                raise self.error(f"element <{name}> is never closed", start)
            raw = self.text[self.pos:lt]
            if raw:
                texts.append(self.decode(raw, text_start))
            self.pos = lt
            if self.startswith("</"):
                self.pos += 2
                close_pos = self.pos
                closing = self.read_name()
                if closing != name:
                    raise self.error(f"mismatched end tag </{closing}>, expected </{name}>", close_pos)
                self.skip_whitespace()
                self.expect(">")
                break
            self.reject_unsupported()
            children.append(self.element(depth + 1))

        text = "".join(texts)
        if children:
            if text.strip():
                raise self.unsupported(f"mixed content in <{name}>")
            return XmlNode(name=name, attributes=attributes, children=children)
        return XmlNode(name=name, attributes=attributes, text=text or None)

    def check_prefix(self, name: str, pos: int, attribute: bool) -> None:
        if attribute and name == "xmlns":
            raise self.unsupported("default namespace declarations are not supported", pos)
        if ":" not in name:
            return
        prefix = name.split(":", 1)[0]
        if attribute and prefix == "xmlns":
            if name != f"xmlns:{SCHEMA_PREFIX}":
                raise self.unsupported(f"namespace declaration {name!r} is not supported", pos)
            return
        if prefix != SCHEMA_PREFIX:
            raise self.unsupported(f"namespace prefix {prefix!r} is not supported", pos)


def parse_xml(text: str) -> XmlNode:
    """
    Parse a document produced by `serialize`.

    Whitespace between elements is ignored; text of leaf elements is kept
    exactly.

    Raises:
        XmlSyntaxError: malformed input, with line and column.
        UnsupportedXmlError: comments, CDATA, DOCTYPE, processing
            instructions, namespaces other than the schema prefix, or
            nesting deeper than MAX_DEPTH.
    """
    return _Parser(text).document()


def child_path(parent_path: str, children: List[XmlNode], index: int) -> str:
    """Path step `Name[k]` for `children[index]`, k counting same-named siblings from 1."""
    name = children[index].name
    position = sum(1 for child in children[:index + 1] if child.name == name)
    return f"{parent_path}/{name}[{position}]"
