"""Finite directed multigraphs with range/source maps, and their path words.

Edges point from source to range, ``s(e) -> r(e)``.  A path is a word
``w = e_k ... e_1`` of composable edges, stored left to right, so the
leftmost edge is applied last: ``s(e_i) = r(e_{i-1})``, ``r(w) = r(e_k)``
and ``s(w) = s(e_1)``.  Vertices are the words of length zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

from .errors import DuplicateIdError, GraphParseError, UnknownVertexError


class Edge(NamedTuple):
    id: str
    src: str
    rng: str


class Path(NamedTuple):
    """A composable edge word; ``edges == ()`` is the vertex ``src == rng``."""

    edges: tuple[str, ...]
    src: str
    rng: str

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class TailMeta:
    """Provenance of one tail vertex or edge added by :func:`add_tails`."""

    origin: str  # the source vertex of the original graph the tail feeds
    index: int  # 1-based position along the tail
    depth: int  # truncation depth the tail was built with


@dataclass(frozen=True)
class DirectedGraph:
    name: str
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    tail_vertices: Mapping[str, TailMeta] = field(default_factory=dict)
    tail_edges: Mapping[str, TailMeta] = field(default_factory=dict)

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_map(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def edges_into(self) -> dict[str, tuple[Edge, ...]]:
        """Edges e with r(e) = x, in declaration order, per vertex x."""
        into: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            into[e.rng].append(e)
        return {v: tuple(es) for v, es in into.items()}

    @cached_property
    def edges_out_of(self) -> dict[str, tuple[Edge, ...]]:
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e)
        return {v: tuple(es) for v, es in out.items()}

    def in_degree(self, x: str) -> int:
        return len(self.edges_into[x])

    def is_source(self, x: str) -> bool:
        return self.in_degree(x) == 0

    def sources(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if self.is_source(v))

    def has_sources(self) -> bool:
        return any(self.is_source(v) for v in self.vertices)

    def vertex_path(self, x: str) -> Path:
        if x not in self.vertex_index:
            raise UnknownVertexError(f"unknown vertex {x!r}")
        return Path((), x, x)

    def edge_path(self, e: str) -> Path:
        edge = self.edge_map[e]
        return Path((e,), edge.src, edge.rng)

    def path(self, edge_ids: Iterable[str]) -> Path:
        """Build the path with the given edge word (leftmost applied last)."""
        ids = tuple(edge_ids)
        if not ids:
            raise ValueError("a path of length 0 needs a vertex; use vertex_path")
        es = [self.edge_map[i] for i in ids]
        for left, right in zip(es, es[1:]):
            if left.src != right.rng:
                raise ValueError(f"edges {left.id!r}, {right.id!r} are not composable")
        return Path(ids, es[-1].src, es[0].rng)


def compose_paths(left: Path, right: Path) -> Path:
    """The composition left∘right (right applied first); requires s(left) = r(right)."""
    if left.src != right.rng:
        raise ValueError(f"paths are not composable: s={left.src!r} vs r={right.rng!r}")
    if not left.edges:
        return right
    if not right.edges:
        return left
    return Path(left.edges + right.edges, right.src, left.rng)


def strip_left(whole: Path, prefix: Path) -> Path | None:
    """Return rest with ``whole = prefix ∘ rest``, or None if prefix does not fit."""
    if not prefix.edges:
        return whole if whole.rng == prefix.rng else None
    k = len(prefix.edges)
    if whole.edges[:k] != prefix.edges:
        return None
    rest = whole.edges[k:]
    if not rest:
        return Path((), whole.src, whole.src)
    return Path(rest, whole.src, prefix.src)


@dataclass(frozen=True)
class VertexProfile:
    vertex: str
    in_degree: int
    is_source: bool
    ck_applicable: bool  # receives at least one edge (finiteness is automatic here)


class GraphSpec(NamedTuple):
    """Raw parse of the graph text format, before validation."""

    name: str
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]  # (id, src, rng)


def parse_graph_text(text: str, name: str = "G") -> GraphSpec:
    """Parse the line-oriented graph format ('#' comments, `graph` header)."""
    vertices: list[str] = []
    edges: list[tuple[str, str, str]] = []
    saw_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not saw_header:
            if line != "graph":
                raise GraphParseError(f"line {lineno}: expected 'graph' header, got {line!r}")
            saw_header = True
            continue
        if line.startswith("vertices:"):
            vertices.extend(line[len("vertices:"):].split())
            continue
        if line.startswith("edge "):
            body = line[len("edge "):]
            try:
                eid, rest = (t.strip() for t in body.split(":", 1))
                src, rng = (t.strip() for t in rest.split("->", 1))
            except ValueError:
                raise GraphParseError(f"line {lineno}: malformed edge line {line!r}") from None
            if not eid or not src or not rng or " " in src or " " in rng:
                raise GraphParseError(f"line {lineno}: malformed edge line {line!r}")
            edges.append((eid, src, rng))
            continue
        raise GraphParseError(f"line {lineno}: unrecognized directive {line!r}")
    if not saw_header:
        raise GraphParseError("missing 'graph' header")
    return GraphSpec(name, tuple(vertices), tuple(edges))


def validate_graph(spec: GraphSpec) -> DirectedGraph:
    """Check id uniqueness and edge endpoints; keep declaration order."""
    seen: set[str] = set()
    for v in spec.vertices:
        if v in seen:
            raise DuplicateIdError(f"duplicate vertex id {v!r}")
        seen.add(v)
    vset = set(spec.vertices)
    edges = []
    for eid, src, rng in spec.edges:
        if eid in seen:
            raise DuplicateIdError(f"duplicate id {eid!r}")
        seen.add(eid)
        if src not in vset:
            raise UnknownVertexError(f"edge {eid!r}: unknown vertex {src!r}")
        if rng not in vset:
            raise UnknownVertexError(f"edge {eid!r}: unknown vertex {rng!r}")
        edges.append(Edge(eid, src, rng))
    return DirectedGraph(spec.name, tuple(spec.vertices), tuple(edges))


def load_graph(path: str, name: str | None = None) -> DirectedGraph:
    from pathlib import Path as _P

    p = _P(path)
    return validate_graph(parse_graph_text(p.read_text(), name or p.stem))


def vertex_profiles(graph: DirectedGraph) -> list[VertexProfile]:
    """One profile per vertex, in declaration order."""
    out = []
    for v in graph.vertices:
        deg = graph.in_degree(v)
        out.append(VertexProfile(v, deg, deg == 0, deg >= 1))
    return out


def _fresh(base: str, taken: set[str]) -> str:
    cand = base
    while cand in taken:
        cand = "~" + cand
    return cand


def add_tails(graph: DirectedGraph, depth: int) -> DirectedGraph:
    """Feed every source of the graph with a chain of ``depth`` new edges.

    For a source x the new vertices x_1..x_T and edges e_1..e_T satisfy
    s(e_i) = x_i and r(e_i) = x_{i-1} with x_0 = x, so x stops being a
    source.  The only sources of the result are the depth-T endpoints,
    an artifact of the truncation that is recorded in the tail metadata.
    A graph without sources is returned unchanged, with empty metadata.
    """
    if depth < 1:
        raise ValueError("tail depth must be >= 1")
    sources = graph.sources()
    if not sources:
        return DirectedGraph(graph.name, graph.vertices, graph.edges)
    taken = set(graph.vertices) | set(graph.edge_map)
    vertices = list(graph.vertices)
    edges = list(graph.edges)
    tail_vertices: dict[str, TailMeta] = {}
    tail_edges: dict[str, TailMeta] = {}
    for x in sources:
        prev = x
        for i in range(1, depth + 1):
            xv = _fresh(f"{x}~{i}", taken)
            taken.add(xv)
            ev = _fresh(f"{x}~e{i}", taken)
            taken.add(ev)
            vertices.append(xv)
            edges.append(Edge(ev, xv, prev))
            tail_vertices[xv] = TailMeta(x, i, depth)
            tail_edges[ev] = TailMeta(x, i, depth)
            prev = xv
    return DirectedGraph(graph.name + "+tails", tuple(vertices), tuple(edges),
                         tail_vertices, tail_edges)
