"""
Structural validation of a document tree against a compiled ContentModel.
"""

from typing import List

from loguru import logger

from ..diagnostics import Code, Diagnostic, Location
from ..dom import XmlNode, child_path
from .content_model import ContentModel, ElementDecl


def _at(path: str) -> Location:
    return Location(path=path)


def _check_attributes(node: XmlNode, declaration: ElementDecl, path: str, found: List[Diagnostic]) -> None:
    present = {name for name, _ in node.attributes}
    for required in declaration.required_attributes:
        if required.name not in present:
            found.append(Diagnostic.error(
                Code.MISSING_ATTRIBUTE,
                f"<{node.name}> lacks required attribute {required.name!r}",
                _at(path),
            ))
    for name, _ in node.attributes:
        if declaration.attribute(name) is None:
            found.append(Diagnostic.error(
                Code.UNEXPECTED_ATTRIBUTE,
                f"<{node.name}> does not declare attribute {name!r}",
                _at(path),
            ))


def _check_children(node: XmlNode, declaration: ElementDecl, model: ContentModel, path: str,
                    found: List[Diagnostic]) -> None:
    children = node.children
    index = 0
    for particle in declaration.particles:
        count = 0
        while index < len(children) and children[index].name == particle.name:
            where = child_path(path, children, index)
            if particle.max_occurs is not None and count >= particle.max_occurs:
                found.append(Diagnostic.error(
                    Code.TOO_MANY_OCCURRENCES,
                    f"<{particle.name}> occurs more than {particle.max_occurs} time(s) in <{node.name}>",
                    _at(where),
                ))
            else:
                _check_element(children[index], model[particle.name], model, where, found)
            count += 1
            index += 1
        if count < particle.min_occurs:
            found.append(Diagnostic.error(
                Code.MISSING_ELEMENT,
                f"<{node.name}> expects {particle.describe()}, found {count}",
                _at(path),
            ))
    for leftover in range(index, len(children)):
        found.append(Diagnostic.error(
            Code.UNEXPECTED_ELEMENT,
            f"<{children[leftover].name}> is not allowed here in <{node.name}>",
            _at(child_path(path, children, leftover)),
        ))


def _check_element(node: XmlNode, declaration: ElementDecl, model: ContentModel, path: str,
                   found: List[Diagnostic]) -> None:
    _check_attributes(node, declaration, path, found)
    # whitespace between elements is not content
    if node.text is not None and not declaration.text_allowed and node.text.strip():
        found.append(Diagnostic.error(
            Code.UNEXPECTED_TEXT,
            f"<{node.name}> does not allow text content",
            _at(path),
        ))
    _check_children(node, declaration, model, path, found)


def validate_document(root: XmlNode, model: ContentModel) -> List[Diagnostic]:
    """
    Check a tree against a content model.

    Children are matched greedily against each element's particle
    sequence. Never raises; an empty list means the tree is valid.
    """
    path = f"/{root.name}"
    if root.name != model.root:
        return [Diagnostic.error(
            Code.WRONG_ROOT,
            f"root element is <{root.name}>, expected <{model.root}>",
            _at(path),
        )]
    found: List[Diagnostic] = []
    _check_element(root, model[model.root], model, path, found)
    logger.debug(f"Schema validation of <{root.name}> produced {len(found)} diagnostic(s)")
    return found
