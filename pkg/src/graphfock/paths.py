"""Truncated bases: path spaces, chosen tail families, and reduced classes.

Three indexed orthonormal bases are built here:

* the path space of a directed graph up to a length cutoff,
* the morphism space of a k-graph up to a grading cutoff,
* the space of reduced classes ``(numerator, anchor vertex, tail index)``
  obtained by formally inverting a chosen family of tail paths.

All enumerations are deterministic: declaration order of vertices and
edges drives every tie-break, so identical inputs give identical bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

import numpy as np

from .graphs import DirectedGraph, Path
from .kgraphs import KGraph, Morphism, all_morphisms, factor


@dataclass(frozen=True, eq=False)
class FockBasis:
    """Paths (or morphisms) of level at most N, with index bookkeeping."""

    carrier: object
    kind: str  # "graph-fock" or "kgraph-fock"
    N: int
    labels: tuple
    index: Mapping
    levels: np.ndarray  # level of each label: word length, or total grading
    gauge_exponents: np.ndarray  # (dim, k) integer exponents of the torus action
    id: str
    _ops: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def level(self, label) -> int:
        return int(self.levels[self.index[label]])

    def symbol_degree(self, sym: str) -> int:
        """Grading contribution of a generator symbol: 1 for edges, 0 for vertices."""
        graph = self.carrier if self.kind == "graph-fock" else self.carrier.skeleton
        if sym in graph.edge_map:
            return 1
        if sym in graph.vertex_index:
            return 0
        raise KeyError(f"unknown generator symbol {sym!r}")

    def interior_mask(self, margin: int) -> np.ndarray:
        """Labels of level <= N - margin, where compressed identities are exact."""
        mask = self.levels <= self.N - margin
        if not mask.any():
            raise ValueError(f"interior with margin {margin} is empty at N={self.N}")
        return mask


class GammaClass(NamedTuple):
    """A reduced class: numerator morphism over the tail of a vertex."""

    num: Morphism
    vertex: str
    i: int


@dataclass(frozen=True)
class TailFamily:
    """Deterministic tail path per vertex: round-robin colors, minimal edge ids.

    ``edges[v][j-1]`` is the j-th tail edge of v (1-based j), with range
    anchored at the previous one and at v for j = 1.  ``anchors[v][i]`` is
    the source of the length-i tail prefix, and ``prefix_degrees[v][i]``
    its degree; index 0 is the vertex itself.
    """

    kg: KGraph
    depth: int
    edges: Mapping[str, tuple[str, ...]]
    anchors: Mapping[str, tuple[str, ...]]
    prefix_degrees: Mapping[str, tuple[tuple[int, ...], ...]]

    def tail_edge(self, v: str, i: int) -> str:
        return self.edges[v][i - 1]

    def anchor(self, v: str, i: int) -> str:
        return self.anchors[v][i]


def choose_tails(kg: KGraph, depth: int) -> TailFamily:
    """Pick the tail family: edge j has color ((j-1) mod k) + 1, minimal id.

    The round-robin coloring guarantees the prefix degrees dominate every
    vector with coordinates up to depth // k.
    """
    if depth < 1:
        raise ValueError("tail depth must be >= 1")
    edges: dict[str, tuple[str, ...]] = {}
    anchors: dict[str, tuple[str, ...]] = {}
    prefixes: dict[str, tuple[tuple[int, ...], ...]] = {}
    emap = kg.skeleton.edge_map
    for v in kg.skeleton.vertices:
        chain: list[str] = []
        anc = [v]
        degs = [(0,) * kg.k]
        cur = v
        deg = [0] * kg.k
        for j in range(1, depth + 1):
            c = (j - 1) % kg.k + 1
            candidates = kg.edges_of_color_into[(cur, c)]
            if not candidates:
                raise ValueError(f"vertex {cur!r} has no incoming edge of color {c}")
            e = candidates[0]
            chain.append(e)
            deg[c - 1] += 1
            degs.append(tuple(deg))
            cur = emap[e].src
            anc.append(cur)
        edges[v] = tuple(chain)
        anchors[v] = tuple(anc)
        prefixes[v] = tuple(degs)
    return TailFamily(kg, depth, edges, anchors, prefixes)


@dataclass(frozen=True, eq=False)
class GammaBasis:
    """Reduced classes (num, v, i) with grading and tail-index truncations."""

    carrier: KGraph
    tails: TailFamily
    N: int
    M: int
    labels: tuple[GammaClass, ...]
    index: Mapping
    levels: np.ndarray  # grading of the numerator
    tail_indices: np.ndarray
    gauge_exponents: np.ndarray  # d(tail prefix) - d(numerator), per class
    id: str
    kind: str = "gamma"
    _ops: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def symbol_degree(self, sym: str) -> int:
        skel = self.carrier.skeleton
        if sym in skel.edge_map:
            return 1
        if sym in skel.vertex_index:
            return 0
        raise KeyError(f"unknown generator symbol {sym!r}")

    def interior_mask(self, margin: int, tail_margin: int = 0) -> np.ndarray:
        mask = (self.levels <= self.N - margin) & (self.tail_indices <= self.M - tail_margin)
        if not mask.any():
            raise ValueError(
                f"interior with margins ({margin}, {tail_margin}) is empty "
                f"at (N={self.N}, M={self.M})")
        return mask


def enumerate_paths(graph: DirectedGraph, N: int) -> FockBasis:
    """All paths of length <= N, by level then lexicographic on edge indices."""
    if N < 0:
        raise ValueError("N must be >= 0")
    levels: list[list[Path]] = [[graph.vertex_path(v) for v in graph.vertices]]
    for _ in range(N):
        prev = levels[-1]
        nxt = [Path((e.id,) + w.edges, w.src, e.rng)
               for e in graph.edges for w in prev if e.src == w.rng]
        levels.append(nxt)
    labels: list[Path] = [w for lvl in levels for w in lvl]
    lv = np.array([len(w.edges) for w in labels], dtype=np.int64)
    return FockBasis(
        carrier=graph,
        kind="graph-fock",
        N=N,
        labels=tuple(labels),
        index={w: i for i, w in enumerate(labels)},
        levels=lv,
        gauge_exponents=(-lv).reshape(-1, 1),
        id=f"fock[{graph.name};N={N}]",
    )


def kgraph_fock_basis(kg: KGraph, N: int) -> FockBasis:
    """All morphisms of total grading <= N, deterministic order."""
    if N < 0:
        raise ValueError("N must be >= 0")
    labels = tuple(all_morphisms(kg, N))
    lv = np.array([m.delta for m in labels], dtype=np.int64)
    degs = np.array([m.degree for m in labels], dtype=np.int64)
    return FockBasis(
        carrier=kg,
        kind="kgraph-fock",
        N=N,
        labels=labels,
        index={m: i for i, m in enumerate(labels)},
        levels=lv,
        gauge_exponents=-degs,
        id=f"fock[{kg.name};N={N}]",
    )


def fock_basis(carrier, N: int) -> FockBasis:
    if isinstance(carrier, DirectedGraph):
        return enumerate_paths(carrier, N)
    if isinstance(carrier, KGraph):
        return kgraph_fock_basis(carrier, N)
    raise TypeError(f"not a carrier: {carrier!r}")


def _ends_with_tail_edge(kg: KGraph, num: Morphism, edge_id: str) -> bool:
    """Does num factor as something ∘ edge?  Decided by one degree factorization."""
    c = kg.color(edge_id)
    if num.degree[c - 1] < 1:
        return False
    head_degree = list(num.degree)
    head_degree[c - 1] -= 1
    _, tail = factor(kg, num, tuple(head_degree))
    return tail.word == (edge_id,)


def reduce_class(kg: KGraph, tails: TailFamily, num: Morphism, v: str, i: int
                 ) -> GammaClass:
    """Strip trailing tail edges, decrementing the index, until reduced."""
    if i < 0 or i > tails.depth:
        raise ValueError(f"tail index {i} outside 0..{tails.depth}")
    if num.src != tails.anchor(v, i):
        raise ValueError(
            f"class precondition failed: s(num)={num.src!r} but the tail prefix "
            f"of {v!r} at index {i} ends at {tails.anchor(v, i)!r}")
    while i >= 1:
        e = tails.tail_edge(v, i)
        if not _ends_with_tail_edge(kg, num, e):
            break
        c = kg.color(e)
        head_degree = list(num.degree)
        head_degree[c - 1] -= 1
        num, _ = factor(kg, num, tuple(head_degree))
        i -= 1
    return GammaClass(num, v, i)


def gamma_basis(kg: KGraph, tails: TailFamily, N: int, M: int) -> GammaBasis:
    """All reduced classes with numerator grading <= N and tail index <= M.

    The classes with tail index 0 are exactly the Fock labels, in the same
    order, so the Fock space sits as the leading block.
    """
    if M < 0 or M > tails.depth:
        raise ValueError(f"need 0 <= M <= tail depth {tails.depth}, got {M}")
    if N < 0:
        raise ValueError("N must be >= 0")
    fock = all_morphisms(kg, N)
    fock_pos = {m: j for j, m in enumerate(fock)}
    by_src: dict[str, list[Morphism]] = {}
    for m in fock:
        by_src.setdefault(m.src, []).append(m)
    vidx = kg.skeleton.vertex_index
    classes: list[tuple[tuple, GammaClass]] = []
    for i in range(M + 1):
        for v in kg.skeleton.vertices:
            anchor = tails.anchor(v, i)
            for num in by_src.get(anchor, ()):
                if i > 0 and _ends_with_tail_edge(kg, num, tails.tail_edge(v, i)):
                    continue
                classes.append(((i, fock_pos[num], vidx[v]), GammaClass(num, v, i)))
    classes.sort(key=lambda t: t[0])
    labels = tuple(cls for _, cls in classes)
    lv = np.array([cls.num.delta for cls in labels], dtype=np.int64)
    ti = np.array([cls.i for cls in labels], dtype=np.int64)
    expo = np.array(
        [tuple(p - d for p, d in zip(tails.prefix_degrees[cls.vertex][cls.i],
                                     cls.num.degree))
         for cls in labels], dtype=np.int64).reshape(len(labels), kg.k)
    return GammaBasis(
        carrier=kg,
        tails=tails,
        N=N,
        M=M,
        labels=labels,
        index={cls: i for i, cls in enumerate(labels)},
        levels=lv,
        tail_indices=ti,
        gauge_exponents=expo,
        id=f"gamma[{kg.name};N={N},M={M},D={tails.depth}]",
    )
