"""
Tests for the diagram to document mapping and its inverse.
"""

import os
import sys
import pytest

# Add parent directory to path for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.uml2xml.codec import parse_codification
from src.uml2xml.dom import XmlNode, parse_xml, serialize
from src.uml2xml.errors import ShapeError
from src.uml2xml.generator import document_to_diagram, generate_document
from src.uml2xml.models import Cardinality, Diagram, RelationKind, Relationship, UmlClass
from src.uml2xml.random_gen import random_diagram

PERSON = (
    "Person;3;Matricule:String:Public;;Name:String:Public;;Age:Int:Protected;;"
    "1;Working:String:public;1;1..*:Company;0;0;0;"
)
DIRECTOR = "Director;0;1;Manage:Void:Private;1;1..1:Project;0;0;1;Person;"


def _generate(text):
    return generate_document(parse_codification(text).diagram)


def test_empty_diagram():
    assert serialize(generate_document(Diagram()), with_declaration=False) == "<Diagram/>\n"


def test_person_structure():
    (person,) = _generate(PERSON).children
    assert person.name == "Class"
    assert person.attributes == [("name-Class", "Person")]
    assert [c.name for c in person.children] == ["Attribute", "Attribute", "Attribute", "Method", "Relationships"]

    age = person.children[2]
    assert age.get("name") == "Age"
    assert [(c.name, c.text) for c in age.children] == [
        ("Attr-Type", "Int"),
        ("Visibility", "Protected"),
        ("Dvalue", None),
    ]

    working = person.children[3]
    assert working.get("name-Method") == "Working"
    assert [(c.name, c.text) for c in working.children] == [("Method-type", "String"), ("Visibility", "Public")]

    (association,) = person.children[4].children
    assert association.name == "ASS"
    assert [(c.name, c.text) for c in association.children] == [
        ("Cardinality", "1..*"),
        ("Class-Relation", "Company"),
    ]


def test_generalization_has_no_cardinality():
    (director,) = _generate(DIRECTOR).children
    relationships = director.children[-1]
    assert [c.name for c in relationships.children] == ["ASS", "Generalization"]
    generalization = relationships.children[1]
    assert [(c.name, c.text) for c in generalization.children] == [("Class-Relation", "Person")]


def test_class_without_members_still_has_relationships():
    (empty,) = generate_document(Diagram(classes=[UmlClass(name="Empty")])).children
    assert [c.name for c in empty.children] == ["Relationships"]
    assert empty.children[0].children == []


def test_default_value_is_element_text():
    (uml_class,) = _generate("A;1;x:Int:Public;42;0;0;0;0;0;").children
    assert uml_class.children[0].children[2].text == "42"


def test_corpus_serializes_to_golden_file(corrected_corpus, expected_xml):
    assert serialize(generate_document(parse_codification(corrected_corpus).diagram)) == expected_xml


def test_element_counts_match_diagram(corrected_corpus):
    diagram = parse_codification(corrected_corpus).diagram
    root = generate_document(diagram)
    assert len(root.children) == len(diagram.classes)
    for uml_class, element in zip(diagram.classes, root.children):
        assert len(list(element.iter_named("Attribute"))) == len(uml_class.attributes)
        assert len(list(element.iter_named("Method"))) == len(uml_class.methods)
        (relationships,) = element.iter_named("Relationships")
        assert len(relationships.children) == len(uml_class.relationships)


def test_inverse_of_golden_file(corrected_corpus, expected_xml):
    assert document_to_diagram(parse_xml(expected_xml)) == parse_codification(corrected_corpus).diagram


@pytest.mark.parametrize("xml,path", [
    ("<Model/>", "/Model"),
    ("<Diagram><Other/></Diagram>", "/Diagram/Other[1]"),
    ("<Diagram><Class/></Diagram>", "/Diagram/Class[1]"),
    ('<Diagram><Class name-Class="A"/></Diagram>', "/Diagram/Class[1]"),
    (
        '<Diagram><Class name-Class="A"><Relationships/></Class>'
        '<Class name-Class="B"><Relationships><ASS><Class-Relation>A</Class-Relation></ASS></Relationships></Class>'
        "</Diagram>",
        "/Diagram/Class[2]/Relationships[1]/ASS[1]",
    ),
    (
        '<Diagram><Class name-Class="A"><Relationships><ASS><Cardinality>3..2</Cardinality>'
        "<Class-Relation>B</Class-Relation></ASS></Relationships></Class></Diagram>",
        "/Diagram/Class[1]/Relationships[1]/ASS[1]",
    ),
    (
        '<Diagram><Class name-Class="A"><Relationships><Generalization><Class-Relation>B</Class-Relation>'
        "</Generalization><ASS><Cardinality>1</Cardinality><Class-Relation>B</Class-Relation></ASS>"
        "</Relationships></Class></Diagram>",
        "/Diagram/Class[1]/Relationships[1]/ASS[1]",
    ),
    (
        '<Diagram><Class name-Class="A"><Method name-Method="m"><Method-type>Void</Method-type>'
        "<Visibility>friend</Visibility></Method><Relationships/></Class></Diagram>",
        "/Diagram/Class[1]/Method[1]",
    ),
    (
        '<Diagram><Class name-Class="A"><Attribute name="x"><Attr-Type/><Visibility>Public</Visibility>'
        "<Dvalue/></Attribute><Relationships/></Class></Diagram>",
        "/Diagram/Class[1]/Attribute[1]",
    ),
])
def test_shape_errors_name_the_offending_path(xml, path):
    with pytest.raises(ShapeError) as exc:
        document_to_diagram(parse_xml(xml))
    assert exc.value.path == path
    assert exc.value.to_diagnostic().code.value == "ShapeError"


def test_invalid_names_become_shape_errors():
    root = XmlNode(
        name="Diagram",
        children=[XmlNode(name="Class", attributes=[("name-Class", "a;b")], children=[XmlNode(name="Relationships")])],
    )
    with pytest.raises(ShapeError) as exc:
        document_to_diagram(root)
    assert exc.value.path == "/Diagram/Class[1]"


@pytest.mark.property
def test_document_round_trip(rng):
    """document_to_diagram(parse(serialize(generate(d)))) == d."""
    for _ in range(1000):
        diagram = random_diagram(rng)
        xml = serialize(generate_document(diagram))
        assert document_to_diagram(parse_xml(xml)) == diagram


def test_interleaved_relationships_round_trip():
    """Relationship kinds given out of order still come back equal."""
    one = Cardinality(min=1, max=1)
    diagram = Diagram(classes=[
        UmlClass(name="A"),
        UmlClass(
            name="B",
            relationships=[
                Relationship.generalization("A"),
                Relationship(kind=RelationKind.ASSOCIATION, target="A", cardinality=one),
            ],
        ),
    ])
    assert document_to_diagram(generate_document(diagram)) == diagram
    assert document_to_diagram(parse_xml(serialize(generate_document(diagram)))) == diagram


def test_single_bound_cardinality_text_is_kept():
    root = _generate("A;0;0;1;1:B;0;0;0;\nB;0;0;0;0;0;0;\n")
    (association,) = root.children[0].children[0].children
    assert association.children[0].text == "1"
    xml = serialize(root)
    assert serialize(generate_document(document_to_diagram(parse_xml(xml)))) == xml
