"""
Case-study corpus reproduction and end-to-end checks.
"""

import os
import sys
from collections import Counter

import pytest

# Add parent directory to path for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.uml2xml.cli import main
from src.uml2xml.codec import parse_codification
from src.uml2xml.diagnostics import Code
from src.uml2xml.dom import XmlNode, parse_xml, serialize
from src.uml2xml.errors import CodificationError
from src.uml2xml.generator import generate_document
from src.uml2xml.models import Cardinality, RelationKind, parse_cardinality
from src.uml2xml.random_gen import random_diagram
from src.uml2xml.schema import compile_schema, embedded_schema_text, validate_document
from src.uml2xml.validator import validate_diagram

pytestmark = pytest.mark.corpus

CORPUS_CLASSES = ["Person", "Company", "Department", "Director", "Project"]


def _assert_corpus_totals(diagram):
    assert diagram.class_names == CORPUS_CLASSES
    assert [len(c.attributes) for c in diagram.classes] == [3, 2, 1, 0, 2]
    assert [m.name for c in diagram.classes for m in c.methods] == ["Working", "Recruiting", "Manage"]
    kinds = Counter(r.kind for c in diagram.classes for r in c.relationships)
    assert kinds == {
        RelationKind.ASSOCIATION: 4,
        RelationKind.AGGREGATION: 1,
        RelationKind.GENERALIZATION: 1,
    }
    assert diagram.get_class("Director").parents == ["Person"]


def test_corrected_corpus_totals(corrected_corpus):
    result = parse_codification(corrected_corpus, strict=True)
    assert result.diagnostics == []
    _assert_corpus_totals(result.diagram)


def test_raw_corpus_strict_names_department_line(raw_corpus):
    with pytest.raises(CodificationError) as exc:
        parse_codification(raw_corpus, strict=True)
    (error,) = exc.value.diagnostics
    assert error.code is Code.MALFORMED_RECORD
    assert error.location.line == 5
    assert error.location.class_name == "Department"


def test_raw_corpus_lenient_totals(raw_corpus, corrected_corpus):
    result = parse_codification(raw_corpus, strict=False)
    assert [d.code for d in result.diagnostics] == [Code.TRAILING_TOKEN]
    _assert_corpus_totals(result.diagram)
    assert result.diagram == parse_codification(corrected_corpus).diagram


def test_end_to_end_convert_and_check(tmp_path, corrected_corpus_path, expected_xml):
    first, second = tmp_path / "first.xml", tmp_path / "second.xml"
    assert main(["convert", str(corrected_corpus_path), "-o", str(first)]) == 0
    assert main(["convert", str(corrected_corpus_path), "-o", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert first.read_text(encoding="utf-8") == expected_xml
    assert main(["check-xml", str(first)]) == 0


def test_corrected_corpus_has_no_rule_violations(corrected_corpus):
    assert validate_diagram(parse_codification(corrected_corpus).diagram) == []


@pytest.mark.parametrize("literal,bounds", [("0..*", (0, None)), ("1..*", (1, None)), ("0..1", (0, 1)), ("1", (1, 1))])
def test_published_cardinality_literals(literal, bounds):
    assert parse_cardinality(literal) == Cardinality(min=bounds[0], max=bounds[1])


@pytest.mark.property
def test_generated_documents_conform_to_schema(rng):
    """Every generated document validates against the compiled embedded schema."""
    model = compile_schema(embedded_schema_text())
    for _ in range(1000):
        document = generate_document(random_diagram(rng))
        assert validate_document(document, model) == []
        assert parse_xml(serialize(document)) == document


def _corpus_document(corrected_corpus):
    return generate_document(parse_codification(corrected_corpus).diagram)


def _replace_first_class(document, first_class):
    return XmlNode(name=document.name, children=[first_class] + list(document.children[1:]))


def test_mutations_are_detected(corrected_corpus):
    model = compile_schema(embedded_schema_text())
    document = _corpus_document(corrected_corpus)
    person = document.children[0]

    dropped_child = XmlNode(name="Class", attributes=person.attributes, children=person.children[:-1])
    dropped_name = XmlNode(name="Class", children=person.children)
    reordered = XmlNode(
        name="Class",
        attributes=person.attributes,
        children=[person.children[3]] + person.children[:3] + person.children[4:],
    )

    for mutated in (dropped_child, dropped_name, reordered):
        assert validate_document(_replace_first_class(document, mutated), model)
