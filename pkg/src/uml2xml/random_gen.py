"""
Random diagram and document-tree generators for property tests.

Diagrams produced here satisfy every diagram rule: unique class and member
names, targets inside the diagram, generalizations only towards earlier
classes, relationships grouped in canonical kind order.
"""

import random
import string
from typing import List, Optional, Sequence

from .dom import XmlNode
from .models import (
    RELATION_ORDER,
    Attribute,
    Cardinality,
    Diagram,
    Method,
    RelationKind,
    Relationship,
    UmlClass,
    Visibility,
)

STANDARD_CARDINALITIES: List[Cardinality] = [
    Cardinality(min=0, max=None),
    Cardinality(min=1, max=None),
    Cardinality(min=0, max=1),
    Cardinality(min=1, max=1),
]

NAME_START = string.ascii_letters
NAME_REST = string.ascii_letters + string.digits + "_"
TYPE_NAMES = ["String", "Int", "Numeric", "Text", "Date", "Boolean", "Void", "NULL"]
# every XML special character plus the codification field separator
VALUE_ALPHABET = string.ascii_letters + string.digits + "&<>\"':" + " "
TREE_NAME_START = string.ascii_letters + "_"
TREE_NAME_REST = string.ascii_letters + string.digits + "_.-"


def _word(rng: random.Random, start: str, rest: str, max_length: int = 8) -> str:
    return rng.choice(start) + "".join(rng.choice(rest) for _ in range(rng.randint(0, max_length - 1)))


def _unique_words(rng: random.Random, count: int, start: str = NAME_START, rest: str = NAME_REST) -> List[str]:
    words: List[str] = []
    seen = set()
    while len(words) < count:
        word = _word(rng, start, rest)
        if word not in seen:
            seen.add(word)
            words.append(word)
    return words


def random_value(rng: random.Random, max_length: int = 12) -> str:
    """Non-empty text without surrounding whitespace over VALUE_ALPHABET."""
    body = "".join(rng.choice(VALUE_ALPHABET) for _ in range(rng.randint(1, max_length)))
    return body.strip() or rng.choice(string.ascii_letters)


def random_cardinality(rng: random.Random, max_bound: int = 9) -> Cardinality:
    """Any valid cardinality with bounds up to `max_bound`."""
    low = rng.randint(0, max_bound)
    if rng.random() < 0.3:
        return Cardinality(min=low, max=None)
    return Cardinality(min=low, max=rng.randint(max(low, 1), max(max_bound, 1)))


def random_diagram(
    rng: random.Random,
    max_classes: int = 6,
    max_members: int = 4,
    max_relationships: int = 4,
    cardinalities: Optional[Sequence[Cardinality]] = None,
) -> Diagram:
    """
    Build a rule-respecting diagram.

    Cardinalities are drawn from `cardinalities`, by default the four
    standard ones, so a strict parse of the emitted codification reports
    nothing.
    """
    pool = list(cardinalities) if cardinalities is not None else STANDARD_CARDINALITIES
    names = _unique_words(rng, rng.randint(0, max_classes))

    classes: List[UmlClass] = []
    for index, name in enumerate(names):
        attribute_names = _unique_words(rng, rng.randint(0, max_members))
        method_names = _unique_words(rng, rng.randint(0, max_members))
        attributes = [
            Attribute(
                name=attribute_name,
                type_name=rng.choice(TYPE_NAMES),
                visibility=rng.choice(list(Visibility)),
                default_value=random_value(rng) if rng.random() < 0.5 else None,
            )
            for attribute_name in attribute_names
        ]
        methods = [
            Method(name=method_name, return_type=rng.choice(TYPE_NAMES), visibility=rng.choice(list(Visibility)))
            for method_name in method_names
        ]

        others = [other for other in names if other != name]
        relationships: List[Relationship] = []
        for kind in RELATION_ORDER:
            if kind is RelationKind.GENERALIZATION:
                earlier = names[:index]
                if earlier:
                    count = rng.randint(0, min(2, len(earlier)))
                    relationships += [Relationship.generalization(p) for p in rng.sample(earlier, count)]
            elif others:
                for _ in range(rng.randint(0, max_relationships // 2)):
                    relationships.append(Relationship(
                        kind=kind,
                        target=rng.choice(others),
                        cardinality=rng.choice(pool),
                    ))
        classes.append(UmlClass(name=name, attributes=attributes, methods=methods, relationships=relationships))

    return Diagram(classes=classes)


def random_xml_tree(rng: random.Random, max_depth: int = 3, max_children: int = 4) -> XmlNode:
    """Build a tree with escape-rich text and attribute values."""
    name = _word(rng, TREE_NAME_START, TREE_NAME_REST)
    attributes = [
        (attribute, random_value(rng) if rng.random() < 0.8 else "")
        for attribute in _unique_words(rng, rng.randint(0, 3), TREE_NAME_START, TREE_NAME_REST)
    ]
    if max_depth > 0 and rng.random() < 0.6:
        children = [
            random_xml_tree(rng, max_depth - 1, max_children)
            for _ in range(rng.randint(1, max_children))
        ]
        return XmlNode(name=name, attributes=attributes, children=children)
    text = random_value(rng) if rng.random() < 0.7 else None
    return XmlNode(name=name, attributes=attributes, text=text)
