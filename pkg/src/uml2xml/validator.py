"""
Diagram validation rules.

Rules, in reporting order within a class:
    DuplicateClassName    class names are unique
    UnknownTarget         every relationship targets a class of the diagram
    BadCardinality        non-generalizations carry a valid cardinality
    SelfGeneralization,
    GeneralizationCycle   the generalization graph is acyclic
    DuplicateMember       attribute and method names are unique per class
    SelfRelationWarning   (warning) a class associated with itself
"""

from typing import Dict, List, Optional, Set

from loguru import logger

from .diagnostics import Code, Diagnostic, Location
from .models import (
    Cardinality,
    Diagram,
    RelationKind,
    Relationship,
    UmlClass,
)


def _cardinality_problem(relationship: Relationship) -> Optional[str]:
    cardinality = relationship.cardinality
    if relationship.kind is RelationKind.GENERALIZATION:
        if cardinality is not None:
            return "a generalization must not carry a cardinality"
        return None
    if not isinstance(cardinality, Cardinality):
        return f"{relationship.kind.value} to {relationship.target} has no cardinality"
    if cardinality.min < 0:
        return f"cardinality lower bound {cardinality.min} is negative"
    if cardinality.max is not None and (cardinality.max < 1 or cardinality.min > cardinality.max):
        return f"cardinality {cardinality.min}..{cardinality.max} is not a valid range"
    return None


def _generalization_edges(diagram: Diagram) -> Dict[str, List[str]]:
    """Child -> parents, restricted to known classes and without self-edges."""
    known = set(diagram.class_names)
    edges: Dict[str, List[str]] = {}
    for uml_class in diagram.classes:
        parents = edges.setdefault(uml_class.name, [])
        for parent in uml_class.parents:
            if parent in known and parent != uml_class.name and parent not in parents:
                parents.append(parent)
    return edges


def find_generalization_cycles(diagram: Diagram) -> List[List[str]]:
    """
    Return witness cycles of the generalization graph.

    Depth-first traversal of child -> parent edges; a back edge to a class on
    the current path closes a cycle. Each cycle is rotated to start at the
    class that comes first in input order, and reported once.
    """
    edges = _generalization_edges(diagram)
    order = {name: i for i, name in reversed(list(enumerate(diagram.class_names)))}
    visiting: Set[str] = set()
    done: Set[str] = set()
    seen_cycles: Set[frozenset] = set()
    cycles: List[List[str]] = []

    def visit(name: str, path: List[str]) -> None:
        visiting.add(name)
        path.append(name)
        for parent in edges.get(name, []):
            if parent in visiting:
                cycle = path[path.index(parent):]
                key = frozenset(cycle)
                if key not in seen_cycles:
                    seen_cycles.add(key)
                    start = min(range(len(cycle)), key=lambda i: order[cycle[i]])
                    cycles.append(cycle[start:] + cycle[:start])
            elif parent not in done:
                visit(parent, path)
        path.pop()
        visiting.discard(name)
        done.add(name)

    for name in diagram.class_names:
        if name not in done:
            visit(name, [])
    return cycles


def validate_diagram(diagram: Diagram) -> List[Diagnostic]:
    """
    Check a diagram against every rule above.

    Never raises; an empty list means the diagram is valid. Diagnostics are
    ordered by class input order, then rule number.
    """
    names = set(diagram.class_names)
    per_class: List[List[Diagnostic]] = [[] for _ in diagram.classes]

    cycles_by_class: Dict[int, List[List[str]]] = {}
    first_index = {name: i for i, name in reversed(list(enumerate(diagram.class_names)))}
    for cycle in find_generalization_cycles(diagram):
        cycles_by_class.setdefault(first_index[cycle[0]], []).append(cycle)

    seen_names: Set[str] = set()
    for index, uml_class in enumerate(diagram.classes):
        found = per_class[index]
        where = Location(class_name=uml_class.name)

        # unique class names
        if uml_class.name in seen_names:
            found.append(Diagnostic.error(
                Code.DUPLICATE_CLASS_NAME,
                f"class name {uml_class.name!r} is declared more than once",
                where,
            ))
        seen_names.add(uml_class.name)

        # known targets
        for position, relationship in enumerate(uml_class.relationships, start=1):
            if relationship.target not in names:
                found.append(Diagnostic.error(
                    Code.UNKNOWN_TARGET,
                    f"{relationship.kind.value} of {uml_class.name} targets unknown class {relationship.target!r}",
                    Location(class_name=uml_class.name, member=f"relationships[{position}]"),
                ))

        # cardinalities
        for position, relationship in enumerate(uml_class.relationships, start=1):
            problem = _cardinality_problem(relationship)
            if problem:
                found.append(Diagnostic.error(
                    Code.BAD_CARDINALITY,
                    problem,
                    Location(class_name=uml_class.name, member=f"relationships[{position}]"),
                ))

        # acyclic generalization
        if uml_class.name in uml_class.parents:
            found.append(Diagnostic.error(
                Code.SELF_GENERALIZATION,
                f"class {uml_class.name} generalizes itself",
                where,
            ))
        for cycle in cycles_by_class.get(index, []):
            found.append(Diagnostic.error(
                Code.GENERALIZATION_CYCLE,
                "generalization cycle: " + " -> ".join(cycle + [cycle[0]]),
                where,
            ))

        # unique members
        found.extend(_duplicate_members(uml_class))

        # self relations
        for position, relationship in enumerate(uml_class.relationships, start=1):
            if relationship.kind is not RelationKind.GENERALIZATION and relationship.target == uml_class.name:
                found.append(Diagnostic.warning(
                    Code.SELF_RELATION_WARNING,
                    f"{relationship.kind.value} of {uml_class.name} targets the class itself",
                    Location(class_name=uml_class.name, member=f"relationships[{position}]"),
                ))

    diagnostics = [d for found in per_class for d in found]
    errors = sum(1 for d in diagnostics if d.is_error)
    logger.debug(f"Validated {len(diagram.classes)} class(es): {errors} error(s), {len(diagnostics) - errors} warning(s)")
    return diagnostics


def _duplicate_members(uml_class: UmlClass) -> List[Diagnostic]:
    found: List[Diagnostic] = []
    for member_kind, member_names in (
        ("attribute", [a.name for a in uml_class.attributes]),
        ("method", [m.name for m in uml_class.methods]),
    ):
        seen: Set[str] = set()
        for name in member_names:
            if name in seen:
                found.append(Diagnostic.error(
                    Code.DUPLICATE_MEMBER,
                    f"{member_kind} {name!r} is declared more than once in class {uml_class.name}",
                    Location(class_name=uml_class.name, member=name),
                ))
            seen.add(name)
    return found
