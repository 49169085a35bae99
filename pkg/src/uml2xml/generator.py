"""
Diagram <-> document tree mapping.

    <Diagram>
      <Class name-Class="C_N">
        <Attribute name="A_n"> Attr-Type, Visibility, Dvalue </Attribute>*
        <Method name-Method="M_n"> Method-type, Visibility </Method>*
        <Relationships> ASS*, Aggregation*, Composition*, Generalization* </Relationships>
      </Class>*
    </Diagram>
"""

from typing import Dict, List, Optional

from loguru import logger
from pydantic import ValidationError

from .errors import CardinalityError, ShapeError, UnknownVisibilityError
from .models import (
    RELATION_ORDER,
    Attribute,
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
from .dom import XmlNode, child_path

ROOT = "Diagram"
CLASS = "Class"
CLASS_NAME = "name-Class"
ATTRIBUTE = "Attribute"
ATTRIBUTE_NAME = "name"
ATTRIBUTE_TYPE = "Attr-Type"
VISIBILITY = "Visibility"
DEFAULT_VALUE = "Dvalue"
METHOD = "Method"
METHOD_NAME = "name-Method"
METHOD_TYPE = "Method-type"
RELATIONSHIPS = "Relationships"
CARDINALITY = "Cardinality"
CLASS_RELATION = "Class-Relation"

RELATION_ELEMENTS: Dict[RelationKind, str] = {
    RelationKind.ASSOCIATION: "ASS",
    RelationKind.AGGREGATION: "Aggregation",
    RelationKind.COMPOSITION: "Composition",
    RelationKind.GENERALIZATION: "Generalization",
}
_KIND_BY_ELEMENT = {element: kind for kind, element in RELATION_ELEMENTS.items()}


def _attribute_element(attribute: Attribute) -> XmlNode:
    return XmlNode(
        name=ATTRIBUTE,
        attributes=[(ATTRIBUTE_NAME, attribute.name)],
        children=[
            XmlNode.leaf(ATTRIBUTE_TYPE, attribute.type_name),
            XmlNode.leaf(VISIBILITY, attribute.visibility.value),
            XmlNode.leaf(DEFAULT_VALUE, attribute.default_value),
        ],
    )


def _method_element(method: Method) -> XmlNode:
    return XmlNode(
        name=METHOD,
        attributes=[(METHOD_NAME, method.name)],
        children=[
            XmlNode.leaf(METHOD_TYPE, method.return_type),
            XmlNode.leaf(VISIBILITY, method.visibility.value),
        ],
    )


def _relationship_element(relationship: Relationship) -> XmlNode:
    children = []
    if relationship.kind is not RelationKind.GENERALIZATION:
        children.append(XmlNode.leaf(CARDINALITY, format_cardinality(relationship.cardinality)))
    children.append(XmlNode.leaf(CLASS_RELATION, relationship.target))
    return XmlNode(name=RELATION_ELEMENTS[relationship.kind], children=children)


def _class_element(uml_class: UmlClass) -> XmlNode:
    relations = [
        _relationship_element(relationship)
        for kind in RELATION_ORDER
        for relationship in uml_class.relationships_of(kind)
    ]
    children = [_attribute_element(a) for a in uml_class.attributes]
    children += [_method_element(m) for m in uml_class.methods]
    children.append(XmlNode(name=RELATIONSHIPS, children=relations))
    return XmlNode(name=CLASS, attributes=[(CLASS_NAME, uml_class.name)], children=children)


def generate_document(diagram: Diagram) -> XmlNode:
    """Build the document tree for a validated diagram, one Class per class in input order."""
    root = XmlNode(name=ROOT, children=[_class_element(c) for c in diagram.classes])
    logger.debug(f"Generated document with {len(root.children)} Class element(s)")
    return root


# -- inverse ---------------------------------------------------------------


def _required_attribute(node: XmlNode, attribute: str, path: str) -> str:
    value = node.get(attribute)
    if value is None:
        raise ShapeError(f"<{node.name}> lacks required attribute {attribute!r}", path)
    return value


def _leaf_children(node: XmlNode, names: List[str], path: str) -> List[Optional[str]]:
    if node.text is not None:
        raise ShapeError(f"<{node.name}> must not contain text", path)
    actual = [child.name for child in node.children]
    if actual != names:
        raise ShapeError(f"<{node.name}> must contain {', '.join(names)}; found {', '.join(actual) or 'nothing'}", path)
    texts = []
    for index, child in enumerate(node.children):
        if child.children:
            raise ShapeError(f"<{child.name}> must be a text element", child_path(path, node.children, index))
        texts.append(child.text)
    return texts


def _required_text(value: Optional[str], element: str, path: str) -> str:
    if value is None:
        raise ShapeError(f"<{element}> must not be empty", path)
    return value


def _read_relationships(node: XmlNode, path: str) -> List[Relationship]:
    if node.text is not None:
        raise ShapeError(f"<{RELATIONSHIPS}> must not contain text", path)
    relationships: List[Relationship] = []
    last_rank = 0
    for index, child in enumerate(node.children):
        where = child_path(path, node.children, index)
        kind = _KIND_BY_ELEMENT.get(child.name)
        if kind is None:
            raise ShapeError(f"unexpected <{child.name}> in <{RELATIONSHIPS}>", where)
        rank = RELATION_ORDER.index(kind)
        if rank < last_rank:
            raise ShapeError(f"<{child.name}> appears after a later relationship group", where)
        last_rank = rank
        if kind is RelationKind.GENERALIZATION:
            (target,) = _leaf_children(child, [CLASS_RELATION], where)
            relationships.append(Relationship.generalization(_required_text(target, CLASS_RELATION, where)))
            continue
        cardinality_text, target = _leaf_children(child, [CARDINALITY, CLASS_RELATION], where)
        try:
            cardinality = parse_cardinality(_required_text(cardinality_text, CARDINALITY, where))
        except CardinalityError as e:
            raise ShapeError(e.message, where) from e
        relationships.append(Relationship(
            kind=kind,
            cardinality=cardinality,
            target=_required_text(target, CLASS_RELATION, where),
        ))
    return relationships


def _read_class(node: XmlNode, path: str) -> UmlClass:
    name = _required_attribute(node, CLASS_NAME, path)
    if node.text is not None:
        raise ShapeError(f"<{CLASS}> must not contain text", path)

    attributes: List[Attribute] = []
    methods: List[Method] = []
    relationships: Optional[List[Relationship]] = None
    for index, child in enumerate(node.children):
        where = child_path(path, node.children, index)
        if relationships is not None:
            raise ShapeError(f"<{child.name}> follows <{RELATIONSHIPS}>", where)
        if child.name == ATTRIBUTE:
            if methods:
                raise ShapeError(f"<{ATTRIBUTE}> follows a <{METHOD}>", where)
            attribute_name = _required_attribute(child, ATTRIBUTE_NAME, where)
            type_name, visibility, default = _leaf_children(
                child, [ATTRIBUTE_TYPE, VISIBILITY, DEFAULT_VALUE], where
            )
            attributes.append(Attribute(
                name=attribute_name,
                type_name=_required_text(type_name, ATTRIBUTE_TYPE, where),
                visibility=_visibility(visibility, where),
                default_value=default,
            ))
        elif child.name == METHOD:
            method_name = _required_attribute(child, METHOD_NAME, where)
            return_type, visibility = _leaf_children(child, [METHOD_TYPE, VISIBILITY], where)
            methods.append(Method(
                name=method_name,
                return_type=_required_text(return_type, METHOD_TYPE, where),
                visibility=_visibility(visibility, where),
            ))
        elif child.name == RELATIONSHIPS:
            relationships = _read_relationships(child, where)
        else:
            raise ShapeError(f"unexpected <{child.name}> in <{CLASS}>", where)

    if relationships is None:
        raise ShapeError(f"<{CLASS}> lacks <{RELATIONSHIPS}>", path)
    return UmlClass(name=name, attributes=attributes, methods=methods, relationships=relationships)


def _visibility(value: Optional[str], path: str) -> Visibility:
    try:
        return parse_visibility(_required_text(value, VISIBILITY, path))
    except UnknownVisibilityError as e:
        raise ShapeError(e.message, path) from e


def document_to_diagram(root: XmlNode) -> Diagram:
    """
    Rebuild the diagram a document was generated from.

    Raises:
        ShapeError: the tree deviates from the schema shape; names the
            offending element path.
    """
    path = f"/{root.name}"
    if root.name != ROOT:
        raise ShapeError(f"root element must be <{ROOT}>, found <{root.name}>", path)
    if root.text is not None:
        raise ShapeError(f"<{ROOT}> must not contain text", path)

    classes = []
    for index, child in enumerate(root.children):
        where = child_path(path, root.children, index)
        if child.name != CLASS:
            raise ShapeError(f"unexpected <{child.name}> in <{ROOT}>", where)
        try:
            classes.append(_read_class(child, where))
        except ValidationError as e:
            raise ShapeError(f"invalid content: {e.errors()[0]['msg']}", where) from e
    return Diagram(classes=classes)
