"""
Compiled form of a schema.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

XSD_STRING = "xsd:string"


class Particle(BaseModel):
    """One child slot of a sequence; `max_occurs=None` means unbounded."""
    model_config = ConfigDict(frozen=True)

    name: str
    min_occurs: int = Field(default=1, ge=0)
    max_occurs: Optional[int] = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _check_bounds(self) -> "Particle":
        if self.max_occurs is not None and self.min_occurs > self.max_occurs:
            raise ValueError(f"particle {self.name!r}: minOccurs exceeds maxOccurs")
        return self

    def describe(self) -> str:
        upper = "unbounded" if self.max_occurs is None else str(self.max_occurs)
        return f"{self.name}[{self.min_occurs}..{upper}]"


class AttributeDecl(BaseModel):
    """Declared attribute of an element."""
    model_config = ConfigDict(frozen=True)

    name: str
    type_name: str = XSD_STRING
    required: bool = False


class ElementDecl(BaseModel):
    """Content model of one element name."""
    model_config = ConfigDict(frozen=True)

    name: str
    attributes: List[AttributeDecl] = Field(default_factory=list)
    particles: List[Particle] = Field(default_factory=list)
    text_allowed: bool = False

    @property
    def required_attributes(self) -> List[AttributeDecl]:
        return [a for a in self.attributes if a.required]

    def attribute(self, name: str) -> Optional[AttributeDecl]:
        for declaration in self.attributes:
            if declaration.name == name:
                return declaration
        return None


class ContentModel(BaseModel):
    """Element declarations keyed by name, rooted at `root`."""
    model_config = ConfigDict(frozen=True)

    root: str
    elements: Dict[str, ElementDecl]

    @model_validator(mode="after")
    def _check_closed(self) -> "ContentModel":
        if self.root not in self.elements:
            raise ValueError(f"root element {self.root!r} has no declaration")
        for declaration in self.elements.values():
            for particle in declaration.particles:
                if particle.name not in self.elements:
                    raise ValueError(f"particle {particle.name!r} of {declaration.name!r} has no declaration")
        return self

    def __getitem__(self, name: str) -> ElementDecl:
        return self.elements[name]
