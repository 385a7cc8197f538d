"""Edge-list text format, the canonical CLI input.

Comment lines start with '#'.  Data lines are `u w [len]` with len
defaulting to 1; vertex names are whitespace-free tokens.  Isolated
vertices can be declared on a line of their own.
"""

from __future__ import annotations

import hashlib

from .errors import InputError
from .graph import Edge, MultiGraph


def parse_edgelist(text: str) -> MultiGraph:
    vertices: set[str] = set()
    edges: list[Edge] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) == 1:
            vertices.add(parts[0])
            continue
        if len(parts) not in (2, 3):
            raise InputError(f"line {ln}: expected 'u w [len]', got {raw!r}")
        u, w = parts[0], parts[1]
        length = 1
        if len(parts) == 3:
            try:
                length = int(parts[2])
            except ValueError:
                raise InputError(f"line {ln}: bad length {parts[2]!r}") from None
            if length < 1:
                raise InputError(f"line {ln}: length must be >= 1")
        vertices.update((u, w))
        edges.append(Edge(f"e{len(edges)}", u, w, length))
    return MultiGraph(vertices, edges)


def read_graph(path: str) -> MultiGraph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_edgelist(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def format_edgelist(g: MultiGraph) -> str:
    lines = []
    covered: set[str] = set()
    for e in g.edges:
        covered.update(e.ends)
        if e.length == 1:
            lines.append(f"{e.u} {e.v}")
        else:
            lines.append(f"{e.u} {e.v} {e.length}")
    for v in g.vertices:
        if v not in covered:
            lines.append(v)
    return "\n".join(lines) + "\n"


def graph_hash(g: MultiGraph) -> str:
    """Stable content hash over the canonical serialization."""
    material = [";".join(g.vertices)]
    for e in g.edges:
        a, b = sorted((e.u, e.v))
        material.append(f"{e.eid},{a},{b},{e.length}")
    return hashlib.sha256("\n".join(material).encode()).hexdigest()
