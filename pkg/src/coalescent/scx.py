"""The ``.scx`` complex format.

One maximal simplex per line as whitespace-separated vertex labels; ``#``
starts a comment line; an optional ``name: <string>`` header may precede the
facets.
"""
from __future__ import annotations

from .complex import SimplicialComplex, from_maximal
from .errors import DuplicateVertexInFacet, ParseError


def parse_scx(text: str) -> SimplicialComplex:
    name = ""
    ids: dict[str, int] = {}
    facets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower().startswith("name:"):
            if facets or name:
                raise ParseError("name header must come once, before the facets", lineno)
            name = line[5:].strip()
            continue
        labels = line.split()
        if any("#" in lab for lab in labels):
            raise ParseError("'#' is not allowed inside a vertex label", lineno)
        if len(set(labels)) != len(labels):
            raise DuplicateVertexInFacet(f"line {lineno}: facet repeats a vertex")
        facets.append([ids.setdefault(lab, len(ids)) for lab in labels])
    if not facets:
        raise ParseError("no facets found")
    labels = {i: lab for lab, i in ids.items()}
    return from_maximal(facets, labels, name)


def write_scx(c: SimplicialComplex) -> str:
    lines = []
    if c.name:
        lines.append(f"name: {c.name}")
    for v, lab in c.labels.items():
        if not lab or any(ch.isspace() for ch in lab) or "#" in lab:
            raise ValueError(f"vertex label {lab!r} cannot be written to .scx")
    for f in c.facets():
        lines.append(" ".join(c.label(v) for v in f))
    return "\n".join(lines) + "\n"


def labelled_simplices(c: SimplicialComplex) -> set:
    """Simplices as frozensets of labels, for id-independent comparison."""
    return {frozenset(c.label(v) for v in s) for s in c.simplices}
