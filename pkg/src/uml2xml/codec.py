"""
Reader and writer for the semicolon-delimited class codification.

One class per line:

    name ; NA ; (An:At:Av ; default ;)* NM ; (Mn:Mt:Mv ;)*
         NAS ; (card:target ;)* NAG ; (card:target ;)* NCO ; (card:target ;)*
         NGE ; (target ;)*

An empty default token means the default value is undefined.
"""

from typing import List, Optional, Tuple

from loguru import logger
from pydantic import BaseModel, Field, ValidationError

from .diagnostics import Code, Diagnostic, Location, has_errors
from .errors import CardinalityError, CodificationError, UnknownVisibilityError
from .models import (
    Attribute,
    Diagram,
    Method,
    RelationKind,
    Relationship,
    UmlClass,
    check_name,
    format_cardinality,
    parse_cardinality,
    parse_visibility,
)

DELIMITER = ";"
FIELD_SEPARATOR = ":"

# Count-prefixed relationship groups that carry a cardinality, in record order.
_CARDINAL_KINDS = (RelationKind.ASSOCIATION, RelationKind.AGGREGATION, RelationKind.COMPOSITION)


class ParseResult(BaseModel):
    """Decoded diagram plus everything the reader had to say about it."""
    diagram: Diagram
    diagnostics: List[Diagnostic] = Field(default_factory=list)

    @property
    def errors(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if d.is_error]

    @property
    def warnings(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if not d.is_error]

    @property
    def ok(self) -> bool:
        return not has_errors(self.diagnostics)


class _RecordError(Exception):
    """Aborts decoding of a single record."""

    def __init__(self, code: Code, message: str, token: Optional[int]):
        super().__init__(message)
        self.code = code
        self.message = message
        self.token = token


class _RecordReader:
    """Cursor over the tokens of one record."""

    def __init__(self, tokens: List[str], line: int):
        self.tokens = tokens
        self.line = line
        self.index = 0

    @property
    def position(self) -> int:
        """1-based index of the next token."""
        return self.index + 1

    @property
    def remaining(self) -> int:
        return len(self.tokens) - self.index

    def next(self, what: str) -> str:
        if self.index >= len(self.tokens):
            raise _RecordError(
                Code.MALFORMED_RECORD,
                f"record ends early: expected {what} after {len(self.tokens)} token(s)",
                self.position,
            )
        token = self.tokens[self.index]
        self.index += 1
        return token

    def count(self, what: str) -> int:
        token = self.next(f"number of {what}")
        if not token.isdigit() or not token.isascii():
            raise _RecordError(
                Code.BAD_COUNT,
                f"number of {what} must be a non-negative integer, got {token!r}",
                self.index,
            )
        try:
            return int(token)
        except ValueError as e:
            # past the interpreter's int conversion limit
            raise _RecordError(Code.BAD_COUNT, f"number of {what} is too large: {len(token)} digits", self.index) from e

    def fields(self, what: str, arity: int) -> Tuple[str, ...]:
        token = self.next(what)
        parts = tuple(part.strip() for part in token.split(FIELD_SEPARATOR))
        if len(parts) != arity:
            raise _RecordError(
                Code.BAD_TUPLE,
                f"{what} {token!r} has {len(parts)} ':'-separated field(s), expected {arity}",
                self.index,
            )
        return parts


def _name(value: str, what: str, code: Code, token: int) -> str:
    try:
        return check_name(value, what)
    except ValueError as e:
        raise _RecordError(code, str(e), token) from e


def _decode_attribute(reader: _RecordReader) -> Attribute:
    name, type_name, visibility = reader.fields("attribute", 3)
    token = reader.index
    _name(name, "attribute name", Code.BAD_TUPLE, token)
    _name(type_name, "attribute type", Code.BAD_TUPLE, token)
    try:
        parsed_visibility = parse_visibility(visibility)
    except UnknownVisibilityError as e:
        raise _RecordError(e.code, e.message, token) from e
    default = reader.next(f"default value of attribute {name!r}")
    try:
        return Attribute(
            name=name,
            type_name=type_name,
            visibility=parsed_visibility,
            default_value=default or None,
        )
    except ValidationError as e:
        raise _RecordError(Code.MALFORMED_RECORD, _first_message(e), reader.index) from e


def _decode_method(reader: _RecordReader) -> Method:
    name, return_type, visibility = reader.fields("method", 3)
    token = reader.index
    _name(name, "method name", Code.BAD_TUPLE, token)
    _name(return_type, "method type", Code.BAD_TUPLE, token)
    try:
        return Method(name=name, return_type=return_type, visibility=parse_visibility(visibility))
    except UnknownVisibilityError as e:
        raise _RecordError(e.code, e.message, token) from e


def _decode_relationship(reader: _RecordReader, kind: RelationKind) -> Relationship:
    cardinality_text, target = reader.fields(f"{kind.value.lower()} entry", 2)
    token = reader.index
    _name(target, "relationship target", Code.BAD_TUPLE, token)
    try:
        cardinality = parse_cardinality(cardinality_text)
    except CardinalityError as e:
        raise _RecordError(e.code, e.message, token) from e
    return Relationship(kind=kind, cardinality=cardinality, target=target)


def _decode_record(
    reader: _RecordReader, strict: bool, diagnostics: List[Diagnostic]
) -> UmlClass:
    name = _name(reader.next("class name"), "class name", Code.MALFORMED_RECORD, 1)

    attributes = [_decode_attribute(reader) for _ in range(reader.count("attributes"))]
    methods = [_decode_method(reader) for _ in range(reader.count("methods"))]

    relationships: List[Relationship] = []
    for kind in _CARDINAL_KINDS:
        plural = f"{kind.value.lower()}s"
        for _ in range(reader.count(plural)):
            relationship = _decode_relationship(reader, kind)
            if strict and not relationship.cardinality.is_standard:
                diagnostics.append(Diagnostic.warning(
                    Code.NON_STANDARD_CARDINALITY,
                    f"cardinality {format_cardinality(relationship.cardinality)} "
                    f"is outside {{0..*, 1..*, 0..1, 1}}",
                    Location(line=reader.line, token=reader.index, class_name=name),
                ))
            relationships.append(relationship)
    for _ in range(reader.count("generalizations")):
        target = reader.next("generalization target")
        relationships.append(
            Relationship.generalization(_name(target, "generalization target", Code.MALFORMED_RECORD, reader.index))
        )

    if reader.remaining:
        surplus = reader.tokens[reader.index:]
        if not strict and len(surplus) == 1 and surplus[0].isascii() and surplus[0].isdigit():
            logger.warning(f"Line {reader.line}: skipping trailing token {surplus[0]!r} of class {name}")
            diagnostics.append(Diagnostic.warning(
                Code.TRAILING_TOKEN,
                f"skipped spurious trailing token {surplus[0]!r}",
                Location(line=reader.line, token=reader.position, class_name=name),
            ))
        else:
            raise _RecordError(
                Code.MALFORMED_RECORD,
                f"{len(surplus)} token(s) left after the last declared entry of class {name}",
                reader.position,
            )

    return UmlClass(name=name, attributes=attributes, methods=methods, relationships=relationships)


def _first_message(error: ValidationError) -> str:
    details = error.errors()
    return details[0]["msg"] if details else str(error)


def parse_codification(text: str, strict: bool = True) -> ParseResult:
    """
    Decode codification text into a Diagram.

    Every line is decoded independently so one bad record does not hide
    the others. In strict mode any error raises CodificationError carrying
    all diagnostics; in lenient mode the decodable records are returned
    alongside the error diagnostics, and a single surplus numeric token at
    the end of a record is skipped with a TrailingToken warning.

    Raises:
        CodificationError: strict mode and at least one error diagnostic.
    """
    classes: List[UmlClass] = []
    diagnostics: List[Diagnostic] = []

    for line_number, raw_line in enumerate(text.split("\n"), start=1):
        line = raw_line.strip()
        if not line:
            continue

        parts = line.split(DELIMITER)
        if parts[-1].strip():
            diagnostics.append(Diagnostic.error(
                Code.MALFORMED_RECORD,
                "record must end with ';'",
                Location(line=line_number, token=len(parts)),
            ))
            continue

        reader = _RecordReader([part.strip() for part in parts[:-1]], line_number)
        record_diagnostics: List[Diagnostic] = []
        try:
            uml_class = _decode_record(reader, strict, record_diagnostics)
        except _RecordError as e:
            class_name = reader.tokens[0] if reader.tokens and reader.tokens[0] else None
            logger.debug(f"Line {line_number}: {e.code.value}: {e.message}")
            diagnostics.append(Diagnostic.error(
                e.code,
                e.message,
                Location(line=line_number, token=e.token, class_name=class_name),
            ))
            continue

        diagnostics.extend(record_diagnostics)
        classes.append(uml_class)
        logger.debug(f"Line {line_number}: decoded class {uml_class.name}")

    result = ParseResult(diagram=Diagram(classes=classes), diagnostics=diagnostics)
    if strict and not result.ok:
        raise CodificationError(diagnostics)
    return result


def _encode_class(uml_class: UmlClass) -> str:
    tokens: List[str] = [uml_class.name, str(len(uml_class.attributes))]
    for attribute in uml_class.attributes:
        tokens.append(FIELD_SEPARATOR.join((attribute.name, attribute.type_name, attribute.visibility.value)))
        tokens.append(attribute.default_value or "")

    tokens.append(str(len(uml_class.methods)))
    for method in uml_class.methods:
        tokens.append(FIELD_SEPARATOR.join((method.name, method.return_type, method.visibility.value)))

    for kind in _CARDINAL_KINDS:
        group = uml_class.relationships_of(kind)
        tokens.append(str(len(group)))
        for relationship in group:
            tokens.append(f"{format_cardinality(relationship.cardinality)}{FIELD_SEPARATOR}{relationship.target}")

    parents = uml_class.parents
    tokens.append(str(len(parents)))
    tokens.extend(parents)
    return DELIMITER.join(tokens) + DELIMITER


def emit_codification(diagram: Diagram) -> str:
    """Encode a diagram, one LF-terminated record per class."""
    return "".join(f"{_encode_class(uml_class)}\n" for uml_class in diagram.classes)
