"""
Tests for the document tree, its serializer and the subset parser.
"""

import os
import sys
import pytest
from pydantic import ValidationError

# Add parent directory to path for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.uml2xml.dom import MAX_DEPTH, XML_DECLARATION, XmlNode, child_path, escape, parse_xml, serialize
from src.uml2xml.errors import UnsupportedXmlError, XmlSyntaxError
from src.uml2xml.random_gen import random_xml_tree


def test_escape_all_special_characters():
    assert escape("a&b<c>d\"e'f") == "a&amp;b&lt;c&gt;d&quot;e&apos;f"
    assert escape("plain") == "plain"


def test_unescape_inverts_escape():
    """Parsing an escaped value returns the original text."""
    for value in ["&", "<<>>", "a & b", "&amp;", "\"quoted\" 'single'", "x:y"]:
        node = parse_xml(f'<a v="{escape(value)}">{escape(value)}</a>')
        assert node.get("v") == value
        assert node.text == value


def test_serialize_layout():
    """Two-space indentation, empty elements self-closed, trailing newline."""
    root = XmlNode(
        name="Diagram",
        children=[XmlNode(name="Class", attributes=[("name-Class", "A")], children=[XmlNode.leaf("Dvalue")])],
    )
    assert serialize(root) == (
        f"{XML_DECLARATION}\n"
        "<Diagram>\n"
        '  <Class name-Class="A">\n'
        "    <Dvalue/>\n"
        "  </Class>\n"
        "</Diagram>\n"
    )
    assert serialize(XmlNode(name="Diagram"), with_declaration=False) == "<Diagram/>\n"


def test_serialize_escapes_text_and_attributes():
    node = XmlNode(name="a", attributes=[("v", 'x"<y')], text="1 < 2 & 3")
    assert serialize(node, with_declaration=False) == '<a v="x&quot;&lt;y">1 &lt; 2 &amp; 3</a>\n'


def test_node_invariants():
    with pytest.raises(ValidationError):
        XmlNode(name="a", text="t", children=[XmlNode(name="b")])
    with pytest.raises(ValidationError):
        XmlNode(name="a", attributes=[("x", "1"), ("x", "2")])
    with pytest.raises(ValidationError):
        XmlNode(name="1a")
    assert XmlNode.leaf("a", "").text is None


def test_parse_keeps_leaf_text_exactly():
    node = parse_xml("<a>  padded text  </a>")
    assert node.text == "  padded text  "


def test_parse_ignores_whitespace_between_elements():
    node = parse_xml('<?xml version="1.0" encoding="utf-8"?>\n<a>\n  <b/>\n\t<c>x</c>\n</a>\n')
    assert [c.name for c in node.children] == ["b", "c"]
    assert node.text is None


def test_parse_byte_order_mark_and_crlf():
    node = parse_xml("\ufeff<a>\r\n  <b>1</b>\r\n</a>\r\n")
    assert node.children[0].text == "1"


@pytest.mark.parametrize("reference,char", [("&#65;", "A"), ("&#x41;", "A"), ("&#x20AC;", "€"), ("&apos;", "'")])
def test_character_references(reference, char):
    assert parse_xml(f"<a>{reference}</a>").text == char


def test_single_and_double_quote_handling():
    assert parse_xml('<a v="it\'s"/>').get("v") == "it's"
    with pytest.raises(UnsupportedXmlError):
        parse_xml("<a v='x'/>")


@pytest.mark.parametrize("text", [
    "<a></b>",
    "<a>",
    "<a x=\"1\" x=\"2\"/>",
    "<a>&bogus;</a>",
    "<a>&amp</a>",
    "<a/><b/>",
    "",
    "   ",
    "<a x=\"<\"/>",
    "<a x=\"1\"y=\"2\"/>",
])
def test_malformed_documents_raise_syntax_error(text):
    with pytest.raises(XmlSyntaxError):
        parse_xml(text)


def test_syntax_error_carries_position():
    with pytest.raises(XmlSyntaxError) as exc:
        parse_xml("<a>\n  <b></c>\n</a>")
    assert exc.value.line == 2
    assert exc.value.column == 8
    assert exc.value.to_diagnostic().code.value == "XmlSyntaxError"


@pytest.mark.parametrize("text", [
    "<a><!-- note --></a>",
    "<!-- lead --><a/>",
    "<a><![CDATA[x]]></a>",
    "<!DOCTYPE a><a/>",
    "<a><?pi data?></a>",
    "<ns:a/>",
    '<a xmlns="urn:x"/>',
    '<a xmlns:ns="urn:x"/>',
    "<a>text<b/></a>",
])
def test_unsupported_constructs(text):
    """Constructs outside the subset are rejected, never skipped."""
    with pytest.raises(UnsupportedXmlError) as exc:
        parse_xml(text)
    assert exc.value.to_diagnostic().code.value == "UnsupportedXml"


def test_schema_prefix_is_accepted():
    node = parse_xml('<xsd:schema xmlns:xsd="http://www.w3.org/2000/10/XMLSchema"><xsd:element name="A"/></xsd:schema>')
    assert node.name == "xsd:schema"
    assert node.children[0].get("name") == "A"


def test_child_path_counts_same_named_siblings():
    children = [XmlNode(name="Class"), XmlNode(name="Other"), XmlNode(name="Class")]
    assert child_path("/Diagram", children, 0) == "/Diagram/Class[1]"
    assert child_path("/Diagram", children, 1) == "/Diagram/Other[1]"
    assert child_path("/Diagram", children, 2) == "/Diagram/Class[2]"


@pytest.mark.property
def test_serialize_parse_round_trip(rng):
    """parse(serialize(t)) == t for random escape-rich trees."""
    for _ in range(1000):
        tree = random_xml_tree(rng)
        assert parse_xml(serialize(tree)) == tree
        assert parse_xml(serialize(tree, with_declaration=False)) == tree


def test_nesting_up_to_the_depth_limit_parses():
    depth = MAX_DEPTH
    node = parse_xml("<a>" * depth + "</a>" * depth)
    for _ in range(depth - 1):
        (node,) = node.children
    assert node.children == [] and node.text is None


def test_nesting_past_the_depth_limit_is_unsupported():
    """Deep documents are rejected at the start tag that crosses the limit."""
    depth = 3000
    with pytest.raises(UnsupportedXmlError) as exc:
        parse_xml("<a>" * depth + "</a>" * depth)
    assert (exc.value.line, exc.value.column) == (1, 3 * MAX_DEPTH + 1)
