"""Exact arithmetic in the span of products (creation path)·(creation path)*.

Elements are finite sums  sum c_{μ,ν} · S_μ S_ν*  over path pairs with a
common source, with complex-rational coefficients.  Multiplication is the
prefix-cancellation calculus the defining relations generate; no floating
point enters, which makes this module the anti-drift oracle for the
truncated matrix representations.  Scoped to ordinary directed graphs:
for several colors the analogous products leave the span.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from .graphs import DirectedGraph, Path, strip_left
from .operators import SparseOperator, creation_op
from .paths import FockBasis


@dataclass(frozen=True)
class QC:
    """A complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, re=0, im=0) -> "QC":
        return cls(Fraction(re), Fraction(im))

    def __add__(self, other: "QC") -> "QC":
        return QC(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QC") -> "QC":
        return QC(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        if not isinstance(other, QC):
            return NotImplemented
        return QC(self.re * other.re - self.im * other.im,
                  self.re * other.im + self.im * other.re)

    def __neg__(self) -> "QC":
        return QC(-self.re, -self.im)

    def conjugate(self) -> "QC":
        return QC(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __complex__(self) -> complex:
        return float(self.re) + 1j * float(self.im)


QC_ONE = QC.of(1)
QC_I = QC.of(0, 1)


@dataclass(frozen=True)
class ToeplitzElement:
    """An exact element: mapping (μ, ν) -> coefficient, with s(μ) = s(ν)."""

    graph: DirectedGraph
    terms: Mapping[tuple[Path, Path], QC]

    def __post_init__(self):
        for (mu, nu), c in self.terms.items():
            if mu.src != nu.src:
                raise ValueError(f"pair ({mu}, {nu}) has mismatched sources")
            if not c:
                raise ValueError("zero coefficients must not be stored")

    def __add__(self, other: "ToeplitzElement") -> "ToeplitzElement":
        self._same_graph(other)
        acc = dict(self.terms)
        for pair, c in other.terms.items():
            s = acc.get(pair, QC()) + c
            if s:
                acc[pair] = s
            else:
                acc.pop(pair, None)
        return ToeplitzElement(self.graph, acc)

    def __sub__(self, other: "ToeplitzElement") -> "ToeplitzElement":
        return self + (QC.of(-1) * other)

    def __rmul__(self, scalar: QC) -> "ToeplitzElement":
        if not scalar:
            return ToeplitzElement(self.graph, {})
        return ToeplitzElement(self.graph,
                               {pair: scalar * c for pair, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, ToeplitzElement):
            return te_mul(self, other)
        return NotImplemented

    def adjoint(self) -> "ToeplitzElement":
        return te_adjoint(self)

    def is_zero(self) -> bool:
        return not self.terms

    def _same_graph(self, other: "ToeplitzElement") -> None:
        if self.graph is not other.graph and self.graph != other.graph:
            raise ValueError("elements live over different carrier graphs")


def te(graph: DirectedGraph, terms: Mapping[tuple[Path, Path], QC]) -> ToeplitzElement:
    return ToeplitzElement(graph, dict(terms))


def te_zero(graph: DirectedGraph) -> ToeplitzElement:
    return ToeplitzElement(graph, {})


def te_generator(graph: DirectedGraph, edge_id: str) -> ToeplitzElement:
    """S_e, encoded as the pair (edge path, source vertex)."""
    p = graph.edge_path(edge_id)
    return ToeplitzElement(graph, {(p, graph.vertex_path(p.src)): QC_ONE})


def te_vertex(graph: DirectedGraph, vertex_id: str) -> ToeplitzElement:
    """The vertex projection, the pair (x, x)."""
    v = graph.vertex_path(vertex_id)
    return ToeplitzElement(graph, {(v, v): QC_ONE})


def te_mul(a: ToeplitzElement, b: ToeplitzElement) -> ToeplitzElement:
    """Bilinear extension of the product of spanning pairs.

    (S_μ S_ν*)(S_α S_β*) is S_{μα'} S_β* when α = ν∘α', is S_μ S_{β∘ν'}*
    when ν = α∘ν', and vanishes otherwise; the two branches agree when
    ν = α.
    """
    a._same_graph(b)
    acc: dict[tuple[Path, Path], QC] = {}
    for (mu, nu), ca in a.terms.items():
        for (alpha, beta), cb in b.terms.items():
            rest = strip_left(alpha, nu)
            if rest is not None:
                pair = (_compose(mu, rest), beta)
            else:
                rest = strip_left(nu, alpha)
                if rest is None:
                    continue
                pair = (mu, _compose(beta, rest))
            s = acc.get(pair, QC()) + ca * cb
            if s:
                acc[pair] = s
            else:
                acc.pop(pair, None)
    return ToeplitzElement(a.graph, acc)


def _compose(left: Path, right: Path) -> Path:
    if not left.edges:
        return right
    if not right.edges:
        return left
    return Path(left.edges + right.edges, right.src, left.rng)


def te_adjoint(a: ToeplitzElement) -> ToeplitzElement:
    """Swap each pair and conjugate its coefficient."""
    return ToeplitzElement(a.graph,
                           {(nu, mu): c.conjugate() for (mu, nu), c in a.terms.items()})


def te_to_matrix(a: ToeplitzElement, basis: FockBasis) -> SparseOperator:
    """Evaluate  sum c · L_μ L_ν*  on a truncated path basis."""
    if basis.kind != "graph-fock" or basis.carrier != a.graph:
        raise ValueError("basis does not match the element's carrier graph")
    from scipy import sparse as _sp

    acc = _sp.csr_matrix((basis.dim, basis.dim), dtype=np.complex128)
    for (mu, nu), c in a.terms.items():
        lm = creation_op(basis, mu if mu.edges else mu.rng)
        ln = creation_op(basis, nu if nu.edges else nu.rng)
        acc = acc + complex(c) * (lm.mat @ ln.mat.conj().T)
    return SparseOperator(acc.tocsr(), basis.id, basis.id)
