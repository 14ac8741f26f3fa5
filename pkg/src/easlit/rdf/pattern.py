"""Basic graph pattern matching: conjunctive quad patterns with variables."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .nquads import serialize_term
from .terms import Dataset, GraphTerm, Iri, Quad, Term

_VAR_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class Variable:
    name: str

    def __post_init__(self) -> None:
        if not _VAR_NAME_RE.match(self.name):
            raise PatternError(f"invalid variable name: {self.name!r}")


PatternTerm = Union[Term, Variable]
PatternGraph = Union[GraphTerm, Variable]
DEFAULT_GRAPH = None


@dataclass(frozen=True)
class QuadPattern:
    subject: PatternTerm
    predicate: PatternTerm
    object: PatternTerm
    graph: PatternGraph = None

    def positions(self) -> tuple[PatternTerm, PatternTerm, PatternTerm, PatternGraph]:
        return (self.subject, self.predicate, self.object, self.graph)

    def variables(self) -> set[str]:
        return {p.name for p in self.positions() if isinstance(p, Variable)}


Binding = dict[str, Term]


def _quad_positions(quad: Quad) -> tuple[Term, Term, Term, GraphTerm]:
    return (quad.subject, quad.predicate, quad.object, quad.graph)


def _match_quad(pattern: QuadPattern, quad: Quad, binding: Binding) -> Binding | None:
    extended = dict(binding)
    for pat, actual in zip(pattern.positions(), _quad_positions(quad)):
        if isinstance(pat, Variable):
            bound = extended.get(pat.name)
            if bound is None:
                if actual is None:
                    return None  # variables never bind the default-graph marker
                extended[pat.name] = actual
            elif bound != actual:
                return None
        elif pat != actual:
            return None
    return extended


def _binding_sort_key(binding: Binding) -> tuple:
    return tuple(
        (name, serialize_term(binding[name])) for name in sorted(binding)
    )


def match_pattern(ds: Dataset, bgp: list[QuadPattern]) -> list[Binding]:
    """All variable bindings under which every pattern occurs in the dataset.

    Conjunctive semantics with joins on shared variables; result is the set
    of solutions, sorted by bound-term serialization for determinism.
    """
    if not bgp:
        raise PatternError("basic graph pattern must contain at least one pattern")
    solutions: list[Binding] = [{}]
    for pattern in bgp:
        next_solutions: list[Binding] = []
        for binding in solutions:
            for quad in ds:
                extended = _match_quad(pattern, quad, binding)
                if extended is not None:
                    next_solutions.append(extended)
        solutions = next_solutions
        if not solutions:
            break
    unique = {_binding_sort_key(b): b for b in solutions}
    return [unique[k] for k in sorted(unique)]


def _wildcard_match(pattern: QuadPattern, quad: Quad) -> bool:
    seen: dict[str, object] = {}
    for pat, actual in zip(pattern.positions(), _quad_positions(quad)):
        if isinstance(pat, Variable):
            if pat.name in seen:
                if seen[pat.name] != actual:
                    return False
            else:
                seen[pat.name] = actual
        elif pat != actual:
            return False
    return True


def match_single(ds: Dataset, pattern: QuadPattern) -> list[Quad]:
    """Quads matched by a single pattern (used by deletes).

    Unlike :func:`match_pattern`, a variable here also matches the
    default-graph marker, so an all-variable pattern clears a store.
    """
    return [q for q in ds if _wildcard_match(pattern, q)]
