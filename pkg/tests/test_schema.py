"""
Tests for the embedded schema, the schema compiler and document validation.
"""

import os
import sys
import pytest

# Add parent directory to path for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.uml2xml.diagnostics import Code
from src.uml2xml.dom import XmlNode, parse_xml
from src.uml2xml.errors import (
    AmbiguousParticlesError,
    SchemaSyntaxError,
    UnsupportedSchemaFeatureError,
    XmlSyntaxError,
)
from src.uml2xml.schema import (
    Particle,
    compile_schema,
    embedded_content_model,
    embedded_schema_text,
    validate_document,
)

XSD_OPEN = '<xsd:schema xmlns:xsd="http://www.w3.org/2000/10/XMLSchema">'
XSD_CLOSE = "</xsd:schema>"


def _schema(body):
    return f"{XSD_OPEN}{body}{XSD_CLOSE}"


def _codes(diagnostics):
    return [d.code for d in diagnostics]


@pytest.fixture
def model():
    return embedded_content_model()


def _valid_document():
    return parse_xml(
        "<Diagram>"
        '<Class name-Class="A">'
        '<Attribute name="x"><Attr-Type>Int</Attr-Type><Visibility>Public</Visibility><Dvalue/></Attribute>'
        '<Method name-Method="m"><Method-type>Void</Method-type><Visibility>Private</Visibility></Method>'
        "<Relationships>"
        "<ASS><Cardinality>1..*</Cardinality><Class-Relation>B</Class-Relation></ASS>"
        "<Generalization><Class-Relation>B</Class-Relation></Generalization>"
        "</Relationships>"
        "</Class>"
        '<Class name-Class="B"><Relationships/></Class>'
        "</Diagram>"
    )


def test_embedded_schema_text_is_stable():
    text = embedded_schema_text()
    assert text == embedded_schema_text()
    assert text.startswith('<?xml version="1.0" encoding="utf-8"?>')
    assert "xsd:schema" in text


def test_embedded_schema_compiles(model):
    assert model.root == "Diagram"
    assert model["Diagram"].particles == [Particle(name="Class", min_occurs=0, max_occurs=None)]
    assert [p.describe() for p in model["Attribute"].particles] == [
        "Attr-Type[1..1]",
        "Visibility[1..1]",
        "Dvalue[1..1]",
    ]
    assert [p.name for p in model["Class"].particles] == ["Attribute", "Method", "Relationships"]
    assert [a.name for a in model["Class"].required_attributes] == ["name-Class"]
    assert model["Visibility"].text_allowed
    assert not model["Relationships"].text_allowed
    assert model["Generalization"].particles == [Particle(name="Class-Relation")]


def test_minimal_schema():
    model = compile_schema(_schema('<xsd:element name="Root" type="xsd:string"/>'))
    assert model.root == "Root"
    assert validate_document(XmlNode.leaf("Root", "anything"), model) == []


def test_references_to_global_elements():
    model = compile_schema(_schema(
        '<xsd:element name="Root"><xsd:complexType><xsd:sequence>'
        '<xsd:element ref="Item" minOccurs="0" maxOccurs="3"/>'
        "</xsd:sequence></xsd:complexType></xsd:element>"
        '<xsd:element name="Item" type="xsd:string"/>'
    ))
    assert model.root == "Root"
    assert model["Root"].particles == [Particle(name="Item", min_occurs=0, max_occurs=3)]


@pytest.mark.parametrize("body,error", [
    ('<xsd:element name="A"><xsd:complexType><xsd:choice/></xsd:complexType></xsd:element>',
     UnsupportedSchemaFeatureError),
    ('<xsd:element name="A" type="xsd:int"/>', UnsupportedSchemaFeatureError),
    ('<xsd:element name="A"/>', UnsupportedSchemaFeatureError),
    ('<xsd:complexType name="T"/>', UnsupportedSchemaFeatureError),
    ('<xsd:element name="A"><xsd:complexType><xsd:attribute name="a" use="prohibited"/>'
     "</xsd:complexType></xsd:element>", UnsupportedSchemaFeatureError),
    ('<xsd:element name="A" type="xsd:string" nillable="true"/>', UnsupportedSchemaFeatureError),
    ('<xsd:element type="xsd:string"/>', SchemaSyntaxError),
    ('<xsd:element name="A" type="xsd:string" minOccurs="0"/>', SchemaSyntaxError),
    ('<xsd:element name="A" type="xsd:string"/><xsd:element name="A" type="xsd:string"/>', SchemaSyntaxError),
    ("", SchemaSyntaxError),
    ('<xsd:element name="A"><xsd:complexType><xsd:sequence><xsd:element ref="Ghost"/>'
     "</xsd:sequence></xsd:complexType></xsd:element>", SchemaSyntaxError),
    ('<xsd:element name="A"><xsd:complexType><xsd:sequence>'
     '<xsd:element name="B" type="xsd:string" minOccurs="2" maxOccurs="1"/>'
     "</xsd:sequence></xsd:complexType></xsd:element>", SchemaSyntaxError),
    ('<xsd:element name="A"><xsd:complexType><xsd:sequence>'
     '<xsd:element name="B" type="xsd:string" maxOccurs="many"/>'
     "</xsd:sequence></xsd:complexType></xsd:element>", SchemaSyntaxError),
    ('<xsd:element name="A"><xsd:complexType><xsd:attribute name="a"/><xsd:sequence/>'
     "</xsd:complexType></xsd:element>", SchemaSyntaxError),
    ('<xsd:element name="A"><xsd:complexType><xsd:sequence>'
     '<xsd:element name="B" type="xsd:string"/><xsd:element name="B" type="xsd:string"/>'
     "</xsd:sequence></xsd:complexType></xsd:element>", AmbiguousParticlesError),
])
def test_schema_rejections(body, error):
    """Constructs outside the subset and broken declarations are rejected."""
    with pytest.raises(error):
        compile_schema(_schema(body))


def test_rejection_codes():
    with pytest.raises(UnsupportedSchemaFeatureError) as exc:
        compile_schema(_schema('<xsd:element name="A"><xsd:complexType><xsd:choice/></xsd:complexType></xsd:element>'))
    assert exc.value.to_diagnostic().code is Code.UNSUPPORTED_SCHEMA_FEATURE
    assert "xsd:choice" in exc.value.message


def test_wrong_schema_root():
    with pytest.raises(SchemaSyntaxError):
        compile_schema("<schema/>")


def test_malformed_schema_text():
    with pytest.raises(XmlSyntaxError):
        compile_schema("<xsd:schema>")


def test_valid_document(model):
    assert validate_document(_valid_document(), model) == []


def test_empty_diagram_is_valid(model):
    assert validate_document(XmlNode(name="Diagram"), model) == []


def test_wrong_root(model):
    diagnostics = validate_document(parse_xml("<Model/>"), model)
    assert _codes(diagnostics) == [Code.WRONG_ROOT]
    assert diagnostics[0].location.path == "/Model"


def test_attribute_before_method_order(model):
    """Method before Attribute breaks the sequence."""
    root = parse_xml(
        '<Diagram><Class name-Class="A">'
        '<Method name-Method="m"><Method-type>Void</Method-type><Visibility>Public</Visibility></Method>'
        '<Attribute name="x"><Attr-Type>Int</Attr-Type><Visibility>Public</Visibility><Dvalue/></Attribute>'
        "<Relationships/></Class></Diagram>"
    )
    diagnostics = validate_document(root, model)
    assert Code.UNEXPECTED_ELEMENT in _codes(diagnostics)
    assert "/Diagram/Class[1]/Attribute[1]" in [d.location.path for d in diagnostics]


def test_missing_relationships(model):
    diagnostics = validate_document(parse_xml('<Diagram><Class name-Class="A"/></Diagram>'), model)
    assert _codes(diagnostics) == [Code.MISSING_ELEMENT]
    assert diagnostics[0].location.path == "/Diagram/Class[1]"


def test_missing_and_unexpected_attributes(model):
    diagnostics = validate_document(parse_xml('<Diagram><Class kind="x"><Relationships/></Class></Diagram>'), model)
    assert _codes(diagnostics) == [Code.MISSING_ATTRIBUTE, Code.UNEXPECTED_ATTRIBUTE]


def test_too_many_occurrences(model):
    root = parse_xml(
        '<Diagram><Class name-Class="A"><Relationships/><Relationships/></Class></Diagram>'
    )
    diagnostics = validate_document(root, model)
    assert _codes(diagnostics) == [Code.TOO_MANY_OCCURRENCES]
    assert diagnostics[0].location.path == "/Diagram/Class[1]/Relationships[2]"


def test_text_where_elements_expected(model):
    root = parse_xml('<Diagram><Class name-Class="A"><Relationships>oops</Relationships></Class></Diagram>')
    assert _codes(validate_document(root, model)) == [Code.UNEXPECTED_TEXT]


def test_generalization_with_cardinality_is_rejected(model):
    root = parse_xml(
        '<Diagram><Class name-Class="A"><Relationships><Generalization>'
        "<Cardinality>1</Cardinality><Class-Relation>B</Class-Relation>"
        "</Generalization></Relationships></Class></Diagram>"
    )
    assert _codes(validate_document(root, model)) == [
        Code.MISSING_ELEMENT,
        Code.UNEXPECTED_ELEMENT,
        Code.UNEXPECTED_ELEMENT,
    ]


def test_removing_any_required_child_is_detected(model):
    """Deleting one mandatory element from a valid document always yields a diagnostic."""
    first_class, second_class = _valid_document().children

    without_relationships = XmlNode(
        name="Class", attributes=first_class.attributes, children=first_class.children[:-1]
    )
    mutated = XmlNode(name="Diagram", children=[without_relationships, second_class])
    assert _codes(validate_document(mutated, model)) == [Code.MISSING_ELEMENT]

    attribute = first_class.children[0]
    for index in range(len(attribute.children)):
        kept = [c for i, c in enumerate(attribute.children) if i != index]
        mutated_attribute = XmlNode(name="Attribute", attributes=attribute.attributes, children=kept)
        mutated_class = XmlNode(
            name="Class",
            attributes=first_class.attributes,
            children=[mutated_attribute] + list(first_class.children[1:]),
        )
        mutated = XmlNode(name="Diagram", children=[mutated_class, second_class])
        assert _codes(validate_document(mutated, model)) == [Code.MISSING_ELEMENT]


def test_validation_never_raises_on_odd_trees(model):
    root = XmlNode(name="Diagram", children=[XmlNode.leaf("Class", "text"), XmlNode(name="Unknown")])
    diagnostics = validate_document(root, model)
    assert diagnostics
    assert all(d.is_error for d in diagnostics)
