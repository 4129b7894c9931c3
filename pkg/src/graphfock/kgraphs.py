"""Row-finite colored-graph categories with unique degree factorization.

A carrier is a skeleton (a directed multigraph whose edges carry one of k
colors) together with a commutation-square table: for every composable
2-path mixing two colors, the table names the unique 2-path with the same
source and range that applies the colors in the opposite order.  Words of
edges are kept in a canonical normal form in which colors are
non-increasing from left to right, i.e. all color-1 edges are applied
first.  Adjacent transpositions through the square table realize every
degree factorization.

Square lines are written ``square A.B = C.D``: on the left B is applied
first, on the right C is applied first, and the declared equality is
A∘B = D∘C with color(A) = color(C) and color(B) = color(D).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

from .errors import (
    ColorSourceError,
    ConflictingSquaresError,
    CubeConditionError,
    DuplicateIdError,
    GraphParseError,
    IncompleteSquaresError,
    MalformedSquareError,
    UnknownVertexError,
)
from .graphs import DirectedGraph, Edge, GraphSpec, validate_graph


@dataclass(frozen=True)
class Morphism:
    """An element of the category: a normal-form edge word with its degree."""

    word: tuple[str, ...]
    src: str
    rng: str
    degree: tuple[int, ...]

    @property
    def delta(self) -> int:
        """Total grading, the sum of the degree coordinates."""
        return sum(self.degree)

    def is_identity(self) -> bool:
        return not self.word


class SquareRule(NamedTuple):
    """One ``square A.B = C.D`` line (edge ids, in written order)."""

    a: str
    b: str
    c: str
    d: str


class KGraphSpec(NamedTuple):
    name: str
    k: int
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str, int], ...]  # (id, src, rng, color)
    squares: tuple[SquareRule, ...]


@dataclass(frozen=True)
class KGraph:
    name: str
    k: int
    skeleton: DirectedGraph
    colors: Mapping[str, int]
    # (left, right) -> (left', right') with left∘right = left'∘right',
    # registered in both directions, colors swapped
    squares: Mapping[tuple[str, str], tuple[str, str]]
    _norm_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def color(self, edge_id: str) -> int:
        return self.colors[edge_id]

    @cached_property
    def edge_index(self) -> dict[str, int]:
        return {e.id: i for i, e in enumerate(self.skeleton.edges)}

    @cached_property
    def edges_of_color_into(self) -> dict[tuple[str, int], tuple[str, ...]]:
        """Edge ids of a given color with a given range, declaration order."""
        table: dict[tuple[str, int], list[str]] = {}
        for e in self.skeleton.edges:
            table.setdefault((e.rng, self.colors[e.id]), []).append(e.id)
        for v in self.skeleton.vertices:
            for c in range(1, self.k + 1):
                table.setdefault((v, c), [])
        return {key: tuple(ids) for key, ids in table.items()}

    def identity(self, v: str) -> Morphism:
        if v not in self.skeleton.vertex_index:
            raise UnknownVertexError(f"unknown vertex {v!r}")
        return Morphism((), v, v, (0,) * self.k)

    def edge_morphism(self, e: str) -> Morphism:
        edge = self.skeleton.edge_map[e]
        deg = [0] * self.k
        deg[self.colors[e] - 1] = 1
        return Morphism((e,), edge.src, edge.rng, tuple(deg))

    def make(self, word: Iterable[str], at: str | None = None) -> Morphism:
        """Morphism from an arbitrary composable word; normalizes it."""
        w = tuple(word)
        if not w:
            if at is None:
                raise ValueError("an empty word needs an anchor vertex")
            return self.identity(at)
        emap = self.skeleton.edge_map
        for left, right in zip(w, w[1:]):
            if emap[left].src != emap[right].rng:
                raise ValueError(f"edges {left!r}, {right!r} are not composable")
        nf = self._normalize(w)
        deg = [0] * self.k
        for e in w:
            deg[self.colors[e] - 1] += 1
        return Morphism(nf, emap[w[-1]].src, emap[w[0]].rng, tuple(deg))

    def _swap(self, a: str, b: str) -> tuple[str, str]:
        try:
            return self.squares[(a, b)]
        except KeyError:
            raise IncompleteSquaresError(
                f"no square for the 2-path {a!r}∘{b!r}") from None

    def _normalize(self, word: tuple[str, ...]) -> tuple[str, ...]:
        """Sort colors non-increasing left to right via square transpositions."""
        cached = self._norm_cache.get(word)
        if cached is not None:
            return cached
        w = list(word)
        color = self.colors
        changed = True
        while changed:
            changed = False
            for j in range(len(w) - 1):
                if color[w[j]] < color[w[j + 1]]:
                    w[j], w[j + 1] = self._swap(w[j], w[j + 1])
                    changed = True
        nf = tuple(w)
        self._norm_cache[word] = nf
        return nf

    def sort_key(self, m: Morphism) -> tuple:
        idx = self.edge_index
        return (m.delta, m.degree, tuple(idx[e] for e in m.word),
                self.skeleton.vertex_index[m.rng])


def parse_kgraph_text(text: str, name: str = "Lambda") -> KGraphSpec:
    """Parse the k-graph format: header, colors, vertices, edges, squares."""
    k: int | None = None
    vertices: list[str] = []
    edges: list[tuple[str, str, str, int]] = []
    squares: list[SquareRule] = []
    saw_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not saw_header:
            if line != "kgraph":
                raise GraphParseError(f"line {lineno}: expected 'kgraph' header, got {line!r}")
            saw_header = True
            continue
        if line.startswith("colors"):
            try:
                k = int(line.split("=", 1)[1])
            except (IndexError, ValueError):
                raise GraphParseError(f"line {lineno}: malformed colors line {line!r}") from None
            continue
        if line.startswith("vertices:"):
            vertices.extend(line[len("vertices:"):].split())
            continue
        if line.startswith("edge "):
            body = line[len("edge "):]
            try:
                eid, rest = (t.strip() for t in body.split(":", 1))
                arrow, colpart = (t.strip() for t in rest.split("color", 1))
                src, rng = (t.strip() for t in arrow.split("->", 1))
                col = int(colpart)
            except (IndexError, ValueError):
                raise GraphParseError(f"line {lineno}: malformed edge line {line!r}") from None
            edges.append((eid, src, rng, col))
            continue
        if line.startswith("square "):
            body = line[len("square "):]
            try:
                lhs, rhs = (t.strip() for t in body.split("=", 1))
                a, b = (t.strip() for t in lhs.split(".", 1))
                c, d = (t.strip() for t in rhs.split(".", 1))
            except (IndexError, ValueError):
                raise GraphParseError(f"line {lineno}: malformed square line {line!r}") from None
            squares.append(SquareRule(a, b, c, d))
            continue
        raise GraphParseError(f"line {lineno}: unrecognized directive {line!r}")
    if not saw_header:
        raise GraphParseError("missing 'kgraph' header")
    if k is None:
        raise GraphParseError("missing 'colors = <k>' line")
    return KGraphSpec(name, k, tuple(vertices), tuple(edges), tuple(squares))


def _check_cube_condition(kg: KGraph) -> None:
    """Exhaustively verify confluence on all 3-paths with distinct colors.

    For each such word the orbit under square transpositions must contain
    exactly one word per color pattern (six patterns in total).
    """
    edges = kg.skeleton.edges
    emap = kg.skeleton.edge_map
    by_rng: dict[str, list[str]] = {}
    for e in edges:
        by_rng.setdefault(e.rng, []).append(e.id)
    checked: set[tuple[str, str, str]] = set()
    for a in edges:
        for b_id in by_rng.get(a.src, ()):
            b = emap[b_id]
            for c_id in by_rng.get(b.src, ()):
                word = (a.id, b_id, c_id)
                cols = (kg.color(a.id), kg.color(b_id), kg.color(c_id))
                if len(set(cols)) != 3 or word in checked:
                    continue
                seen_by_pattern: dict[tuple[int, int, int], tuple[str, str, str]] = {}
                queue = deque([word])
                orbit = {word}
                while queue:
                    w = queue.popleft()
                    pat = tuple(kg.color(e) for e in w)
                    prev = seen_by_pattern.get(pat)
                    if prev is None:
                        seen_by_pattern[pat] = w
                    elif prev != w:
                        raise CubeConditionError(
                            f"words {prev} and {w} share color pattern {pat}")
                    for j in (0, 1):
                        if kg.color(w[j]) != kg.color(w[j + 1]):
                            x, y = kg._swap(w[j], w[j + 1])
                            nw = w[:j] + (x, y) + w[j + 2:]
                            if nw not in orbit:
                                orbit.add(nw)
                                queue.append(nw)
                checked.update(orbit)
                if len(orbit) != 6:
                    raise CubeConditionError(
                        f"orbit of {word} has {len(orbit)} words, expected 6")


def validate_kgraph(spec: KGraphSpec) -> KGraph:
    """Validate a parsed k-graph description and build the carrier.

    Rejects malformed or conflicting squares, incomplete square tables,
    cube-condition failures for k >= 3, and skeletons in which some vertex
    receives no edge of some color.
    """
    if spec.k < 1:
        raise GraphParseError("colors must be >= 1")
    skeleton = validate_graph(GraphSpec(spec.name, spec.vertices,
                                        tuple((e, s, r) for e, s, r, _ in spec.edges)))
    colors: dict[str, int] = {}
    for eid, _, _, c in spec.edges:
        if not 1 <= c <= spec.k:
            raise GraphParseError(f"edge {eid!r}: color {c} out of range 1..{spec.k}")
        colors[eid] = c

    emap = skeleton.edge_map
    squares: dict[tuple[str, str], tuple[str, str]] = {}
    for rule in spec.squares:
        for eid in rule:
            if eid not in emap:
                raise MalformedSquareError(f"square uses unknown edge {eid!r}")
        a, b, c, d = rule
        if colors[a] == colors[b]:
            raise MalformedSquareError(f"square {a}.{b} = {c}.{d} does not mix two colors")
        if colors[a] != colors[c] or colors[b] != colors[d]:
            raise MalformedSquareError(f"square {a}.{b} = {c}.{d} has mismatched colors")
        if emap[a].src != emap[b].rng or emap[d].src != emap[c].rng:
            raise MalformedSquareError(f"square {a}.{b} = {c}.{d} is not composable")
        if emap[b].src != emap[c].src or emap[a].rng != emap[d].rng:
            raise MalformedSquareError(
                f"square {a}.{b} = {c}.{d} does not preserve source and range")
        for key, val in (((a, b), (d, c)), ((d, c), (a, b))):
            old = squares.get(key)
            if old is not None and old != val:
                raise ConflictingSquaresError(
                    f"2-path {key[0]}∘{key[1]} is paired with both {old} and {val}")
            squares[key] = val

    # totality: every composable mixed-color 2-path must be paired
    for left in skeleton.edges:
        for right in skeleton.edges:
            if left.src == right.rng and colors[left.id] != colors[right.id]:
                if (left.id, right.id) not in squares:
                    raise IncompleteSquaresError(
                        f"no square for the 2-path {left.id}∘{right.id}")

    # no sources, per color
    for v in spec.vertices:
        for c in range(1, spec.k + 1):
            if not any(e.rng == v and colors[e.id] == c for e in skeleton.edges):
                raise ColorSourceError(f"vertex {v!r} receives no edge of color {c}")

    kg = KGraph(spec.name, spec.k, skeleton, colors, squares)
    if spec.k >= 3:
        _check_cube_condition(kg)
    return kg


def load_kgraph(path: str, name: str | None = None) -> KGraph:
    from pathlib import Path as _P

    p = _P(path)
    return validate_kgraph(parse_kgraph_text(p.read_text(), name or p.stem))


def kgraph_from_graph(graph: DirectedGraph, name: str | None = None) -> KGraph:
    """View a directed graph as the k = 1 case (every edge color 1)."""
    spec = KGraphSpec(name or graph.name, 1, graph.vertices,
                      tuple((e.id, e.src, e.rng, 1) for e in graph.edges), ())
    return validate_kgraph(spec)


def compose(kg: KGraph, left: Morphism, right: Morphism) -> Morphism:
    """The composite left∘right (right applied first), in normal form."""
    if left.src != right.rng:
        raise ValueError(
            f"morphisms are not composable: s={left.src!r} vs r={right.rng!r}")
    if left.is_identity():
        return right
    if right.is_identity():
        return left
    word = kg._normalize(left.word + right.word)
    degree = tuple(a + b for a, b in zip(left.degree, right.degree))
    return Morphism(word, right.src, left.rng, degree)


def _peel_right_edge(kg: KGraph, word: list[str], color: int) -> str:
    """Move the rightmost edge of the given color to the end and pop it."""
    j = max(i for i, e in enumerate(word) if kg.color(e) == color)
    while j < len(word) - 1:
        word[j], word[j + 1] = kg._swap(word[j], word[j + 1])
        j += 1
    return word.pop()


def factor(kg: KGraph, m: Morphism, head_degree: tuple[int, ...]) -> tuple[Morphism, Morphism]:
    """The unique (head, tail) with m = head∘tail and degree(head) = head_degree."""
    if len(head_degree) != kg.k:
        raise ValueError(f"degree vector must have {kg.k} coordinates")
    if any(h < 0 or h > d for h, d in zip(head_degree, m.degree)):
        raise ValueError(f"degree {head_degree} out of range 0..{m.degree}")
    tail_degree = tuple(d - h for d, h in zip(m.degree, head_degree))
    word = list(m.word)
    peeled: list[str] = []
    for c in range(1, kg.k + 1):
        for _ in range(tail_degree[c - 1]):
            peeled.append(_peel_right_edge(kg, word, c))
    tail_word = tuple(reversed(peeled))
    head = kg.make(word, at=m.rng)
    emap = kg.skeleton.edge_map
    if tail_word:
        tail = Morphism(tail_word, m.src, emap[tail_word[0]].rng, tail_degree)
    else:
        tail = kg.identity(m.src)
    return head, tail


def enumerate_morphisms(kg: KGraph, degree: tuple[int, ...], v: str) -> list[Morphism]:
    """All morphisms of the given degree with range v, in normal-form order."""
    if len(degree) != kg.k or any(d < 0 for d in degree):
        raise ValueError(f"bad degree vector {degree!r}")
    if v not in kg.skeleton.vertex_index:
        raise UnknownVertexError(f"unknown vertex {v!r}")
    pattern = [c for c in range(kg.k, 0, -1) for _ in range(degree[c - 1])]
    out: list[Morphism] = []
    word: list[str] = []
    emap = kg.skeleton.edge_map

    def rec(pos: int, need_rng: str) -> None:
        if pos == len(pattern):
            out.append(Morphism(tuple(word), need_rng, v, tuple(degree)))
            return
        for eid in kg.edges_of_color_into[(need_rng, pattern[pos])]:
            word.append(eid)
            rec(pos + 1, emap[eid].src)
            word.pop()

    rec(0, v)
    return out


def all_morphisms(kg: KGraph, max_delta: int) -> list[Morphism]:
    """Every morphism with total grading <= max_delta, deterministic order."""
    out: list[Morphism] = []
    for s in range(max_delta + 1):
        for degree in _degree_vectors(kg.k, s):
            for v in kg.skeleton.vertices:
                out.extend(enumerate_morphisms(kg, degree, v))
    return out


def _degree_vectors(k: int, total: int) -> list[tuple[int, ...]]:
    """All vectors in N^k with coordinate sum equal to total, lex order."""
    if k == 1:
        return [(total,)]
    out = []
    for first in range(total, -1, -1):
        for rest in _degree_vectors(k - 1, total - first):
            out.append((first,) + rest)
    return sorted(out)
