"""
Data models for UML class diagrams.
"""

import re
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator

from .errors import CardinalityError, UnknownVisibilityError


class Visibility(str, Enum):
    """Member access levels."""
    PUBLIC = "Public"
    PRIVATE = "Private"
    PROTECTED = "Protected"


class RelationKind(str, Enum):
    """Relationship kinds, declared in canonical output order."""
    ASSOCIATION = "Association"
    AGGREGATION = "Aggregation"
    COMPOSITION = "Composition"
    GENERALIZATION = "Generalization"


RELATION_ORDER: List[RelationKind] = list(RelationKind)

_RESERVED_IN_NAMES = (";", ":", "\n", "\r")
_RESERVED_IN_VALUES = (";", "\n", "\r")


def _check_token(value: str, what: str, reserved: tuple) -> str:
    if not value:
        raise ValueError(f"{what} must not be empty")
    if value != value.strip():
        raise ValueError(f"{what} {value!r} has surrounding whitespace")
    bad = [c for c in reserved if c in value]
    if bad:
        raise ValueError(f"{what} {value!r} contains reserved character {bad[0]!r}")
    return value


def check_name(value: str, what: str = "name") -> str:
    """Validate a class, member, type or target name."""
    return _check_token(value, what, _RESERVED_IN_NAMES)


class Cardinality(BaseModel):
    """
    Multiplicity `min..max`; `max=None` means unbounded.

    Equality and hashing look at the bounds only. A (1,1) parsed from the
    single-bound literal `1` remembers that and formats back to `1`.
    """
    model_config = ConfigDict(frozen=True)

    min: int = Field(ge=0)
    max: Optional[int] = Field(default=None, ge=1)

    _single_bound: bool = PrivateAttr(default=False)

    @model_validator(mode="after")
    def _check_bounds(self) -> "Cardinality":
        if self.max is not None and self.min > self.max:
            raise ValueError(f"cardinality lower bound {self.min} exceeds upper bound {self.max}")
        return self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Cardinality):
            return (self.min, self.max) == (other.min, other.max)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.min, self.max))

    @property
    def unbounded(self) -> bool:
        return self.max is None

    @property
    def is_standard(self) -> bool:
        """True for 0..*, 1..*, 0..1 and 1."""
        return (self.min, self.max) in STANDARD_BOUNDS

    def __str__(self) -> str:
        return format_cardinality(self)


STANDARD_BOUNDS = {(0, None), (1, None), (0, 1), (1, 1)}


class Attribute(BaseModel):
    """Attribute (name, type, visibility, default)."""
    model_config = ConfigDict(frozen=True)

    name: str
    type_name: str
    visibility: Visibility = Visibility.PUBLIC
    default_value: Optional[str] = None

    @field_validator("name", "type_name")
    @classmethod
    def _check_names(cls, value: str) -> str:
        return check_name(value)

    @field_validator("default_value")
    @classmethod
    def _check_default(cls, value: Optional[str]) -> Optional[str]:
        if value is None:
            return None
        return _check_token(value, "default value", _RESERVED_IN_VALUES)


class Method(BaseModel):
    """Method (name, return type, visibility)."""
    model_config = ConfigDict(frozen=True)

    name: str
    return_type: str
    visibility: Visibility = Visibility.PUBLIC

    @field_validator("name", "return_type")
    @classmethod
    def _check_names(cls, value: str) -> str:
        return check_name(value)


class Relationship(BaseModel):
    """Relationship of a source class to `target`."""
    model_config = ConfigDict(frozen=True)

    kind: RelationKind
    target: str
    cardinality: Optional[Cardinality] = None

    @field_validator("target")
    @classmethod
    def _check_target(cls, value: str) -> str:
        return check_name(value, "target")

    @model_validator(mode="after")
    def _check_cardinality(self) -> "Relationship":
        if self.kind is RelationKind.GENERALIZATION:
            if self.cardinality is not None:
                raise ValueError("a generalization carries no cardinality")
        elif self.cardinality is None:
            raise ValueError(f"{self.kind.value} relationship needs a cardinality")
        return self

    @classmethod
    def generalization(cls, target: str) -> "Relationship":
        return cls(kind=RelationKind.GENERALIZATION, target=target)


class UmlClass(BaseModel):
    """One class of a diagram."""
    model_config = ConfigDict(frozen=True)

    name: str
    attributes: List[Attribute] = Field(default_factory=list)
    methods: List[Method] = Field(default_factory=list)
    relationships: List[Relationship] = Field(default_factory=list)

    @field_validator("name")
    @classmethod
    def _check_name(cls, value: str) -> str:
        return check_name(value, "class name")

    @field_validator("relationships")
    @classmethod
    def _canonical_order(cls, value: List[Relationship]) -> List[Relationship]:
        # the kind order both encodings write; stable within a kind
        return sorted(value, key=lambda r: RELATION_ORDER.index(r.kind))

    def relationships_of(self, kind: RelationKind) -> List[Relationship]:
        """Relationships of one kind, in declaration order."""
        return [r for r in self.relationships if r.kind is kind]

    @property
    def parents(self) -> List[str]:
        return [r.target for r in self.relationships_of(RelationKind.GENERALIZATION)]


class Diagram(BaseModel):
    """A class diagram: classes in input order."""
    model_config = ConfigDict(frozen=True)

    classes: List[UmlClass] = Field(default_factory=list)

    @property
    def class_names(self) -> List[str]:
        return [c.name for c in self.classes]

    def get_class(self, name: str) -> Optional[UmlClass]:
        for uml_class in self.classes:
            if uml_class.name == name:
                return uml_class
        return None


def parse_visibility(token: str) -> Visibility:
    """Case-insensitive visibility lookup."""
    lowered = token.strip().lower()
    for visibility in Visibility:
        if visibility.value.lower() == lowered:
            return visibility
    raise UnknownVisibilityError(f"unknown visibility {token!r} (expected Public, Private or Protected)")


_CARDINALITY_RE = re.compile(r"([0-9]+)(?:\.\.([0-9]+|\*))?")

# longer bounds are rejected before int() conversion
MAX_BOUND_DIGITS = 18


def _bound(text: str, token: str) -> int:
    if len(text) > MAX_BOUND_DIGITS:
        raise CardinalityError(f"cardinality {token!r} has a bound longer than {MAX_BOUND_DIGITS} digits")
    return int(text)


def parse_cardinality(token: str) -> Cardinality:
    """Parse `n`, `m..n` or `m..*`."""
    match = _CARDINALITY_RE.fullmatch(token.strip())
    if not match:
        raise CardinalityError(f"malformed cardinality {token!r}")
    low = _bound(match.group(1), token)
    high_text = match.group(2)
    if high_text is None:
        high: Optional[int] = low
    elif high_text == "*":
        high = None
    else:
        high = _bound(high_text, token)
    if high is not None and high < 1:
        raise CardinalityError(f"cardinality {token!r} has a zero upper bound")
    if high is not None and low > high:
        raise CardinalityError(f"cardinality {token!r} has lower bound greater than upper bound")
    cardinality = Cardinality(min=low, max=high)
    if high_text is None and low == 1:
        cardinality._single_bound = True
    return cardinality


def format_cardinality(cardinality: Cardinality) -> str:
    """Canonical `min..max` form, `*` for unbounded; `1` stays `1` when parsed that way."""
    if cardinality._single_bound:
        return "1"
    upper = "*" if cardinality.max is None else str(cardinality.max)
    return f"{cardinality.min}..{upper}"
