"""Sparse operators on truncated bases: creation operators, matrix-valued
noncommutative polynomials, and diagonal torus unitaries.

Generator matrices have entries that are exactly 0 or 1, so every relation
residual computed here is exact in floating point; tolerances enter only
through norm estimation.  Operators act between named bases; a column is
zero whenever the image label falls outside the codomain truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy import sparse

from .graphs import DirectedGraph, Path, compose_paths
from .kgraphs import KGraph, Morphism, compose
from .paths import FockBasis, GammaBasis, reduce_class


@dataclass(frozen=True, eq=False)
class SparseOperator:
    """A complex sparse matrix between two named bases."""

    mat: sparse.csr_matrix
    domain: str
    codomain: str

    @property
    def shape(self) -> tuple[int, int]:
        return self.mat.shape

    @property
    def nnz(self) -> int:
        return self.mat.nnz

    @classmethod
    def from_entries(cls, rows: Sequence[int], cols: Sequence[int],
                     vals: Sequence[complex], shape: tuple[int, int],
                     domain: str, codomain: str) -> "SparseOperator":
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        if rows.size:
            if rows.min() < 0 or rows.max() >= shape[0] or cols.min() < 0 or cols.max() >= shape[1]:
                raise ValueError("entry outside the basis dimensions")
            flat = rows * shape[1] + cols
            if np.unique(flat).size != flat.size:
                raise ValueError("duplicate (row, col) coordinates are forbidden")
        mat = sparse.coo_matrix((np.asarray(vals, dtype=np.complex128), (rows, cols)),
                                shape=shape).tocsr()
        return cls(mat, domain, codomain)

    @classmethod
    def zero(cls, shape: tuple[int, int], domain: str, codomain: str) -> "SparseOperator":
        return cls(sparse.csr_matrix(shape, dtype=np.complex128), domain, codomain)

    def adjoint(self) -> "SparseOperator":
        return SparseOperator(self.mat.conj().T.tocsr(), self.codomain, self.domain)

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        if self.domain != other.codomain:
            raise ValueError(f"composition mismatch: {self.domain!r} vs {other.codomain!r}")
        return SparseOperator((self.mat @ other.mat).tocsr(), other.domain, self.codomain)

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        self._same_spaces(other)
        return SparseOperator((self.mat + other.mat).tocsr(), self.domain, self.codomain)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        self._same_spaces(other)
        return SparseOperator((self.mat - other.mat).tocsr(), self.domain, self.codomain)

    def __rmul__(self, scalar: complex) -> "SparseOperator":
        return SparseOperator((complex(scalar) * self.mat).tocsr(), self.domain, self.codomain)

    __mul__ = __rmul__

    def _same_spaces(self, other: "SparseOperator") -> None:
        if self.domain != other.domain or self.codomain != other.codomain:
            raise ValueError(f"space mismatch: ({self.codomain!r}<-{self.domain!r}) "
                             f"vs ({other.codomain!r}<-{other.domain!r})")

    def max_abs(self) -> float:
        return float(np.abs(self.mat.data).max()) if self.mat.nnz else 0.0

    def masked(self, row_mask: np.ndarray, col_mask: np.ndarray | None = None
               ) -> "SparseOperator":
        """Zero all entries outside the given row/column masks (dims unchanged)."""
        if col_mask is None:
            col_mask = row_mask
        coo = self.mat.tocoo()
        keep = row_mask[coo.row] & col_mask[coo.col]
        mat = sparse.coo_matrix((coo.data[keep], (coo.row[keep], coo.col[keep])),
                                shape=self.shape).tocsr()
        return SparseOperator(mat, self.domain, self.codomain)

    def toarray(self) -> np.ndarray:
        return self.mat.toarray()

    def to_coordinate_text(self) -> str:
        """Debug dump, one 'row col re im' line per stored entry."""
        coo = self.mat.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return "\n".join(
            f"{coo.row[i]} {coo.col[i]} {float(coo.data[i].real)!r} "
            f"{float(coo.data[i].imag)!r}"
            for i in order)


def identity_operator(basis) -> SparseOperator:
    return SparseOperator(sparse.identity(basis.dim, dtype=np.complex128, format="csr"),
                          basis.id, basis.id)


def _ones(pairs: list[tuple[int, int]], dim: int, basis_id: str) -> SparseOperator:
    rows = [r for r, _ in pairs]
    cols = [c for _, c in pairs]
    return SparseOperator.from_entries(rows, cols, np.ones(len(pairs)), (dim, dim),
                                       basis_id, basis_id)


def creation_op(basis, g) -> SparseOperator:
    """The generator g realized on the basis.

    On a path or morphism basis an edge acts by left concatenation and a
    vertex is the diagonal projection onto labels with that range; longer
    paths/morphisms act by concatenation as well.  On a reduced-class
    basis, concatenation is followed by class reduction.  Images outside
    the truncation give zero columns.  All entries are 0 or 1.
    """
    key = g
    cached = basis._ops.get(key)
    if cached is not None:
        return cached
    if basis.kind == "graph-fock":
        op = _graph_creation(basis, g)
    elif basis.kind == "kgraph-fock":
        op = _kgraph_creation(basis, g)
    elif basis.kind == "gamma":
        op = _gamma_creation(basis, g)
    else:
        raise TypeError(f"unknown basis kind {basis.kind!r}")
    basis._ops[key] = op
    return op


def _graph_creation(basis: FockBasis, g) -> SparseOperator:
    graph: DirectedGraph = basis.carrier
    if isinstance(g, str):
        if g in graph.vertex_index:
            pairs = [(j, j) for j, w in enumerate(basis.labels) if w.rng == g]
            return _ones(pairs, basis.dim, basis.id)
        if g in graph.edge_map:
            g = graph.edge_path(g)
        else:
            raise KeyError(f"unknown generator symbol {g!r}")
    if not isinstance(g, Path):
        raise TypeError(f"cannot interpret {g!r} on {basis.id}")
    pairs = []
    for j, w in enumerate(basis.labels):
        if g.src == w.rng and len(g.edges) + len(w.edges) <= basis.N:
            pairs.append((basis.index[compose_paths(g, w)], j))
    return _ones(pairs, basis.dim, basis.id)


def _kgraph_creation(basis: FockBasis, g) -> SparseOperator:
    kg: KGraph = basis.carrier
    if isinstance(g, str):
        if g in kg.skeleton.vertex_index:
            pairs = [(j, j) for j, m in enumerate(basis.labels) if m.rng == g]
            return _ones(pairs, basis.dim, basis.id)
        if g in kg.skeleton.edge_map:
            g = kg.edge_morphism(g)
        else:
            raise KeyError(f"unknown generator symbol {g!r}")
    if not isinstance(g, Morphism):
        raise TypeError(f"cannot interpret {g!r} on {basis.id}")
    pairs = []
    for j, m in enumerate(basis.labels):
        if g.src == m.rng and g.delta + m.delta <= basis.N:
            pairs.append((basis.index[compose(kg, g, m)], j))
    return _ones(pairs, basis.dim, basis.id)


def _gamma_creation(basis: GammaBasis, g) -> SparseOperator:
    kg = basis.carrier
    if isinstance(g, str):
        if g in kg.skeleton.vertex_index:
            pairs = [(j, j) for j, cls in enumerate(basis.labels) if cls.num.rng == g]
            return _ones(pairs, basis.dim, basis.id)
        if g in kg.skeleton.edge_map:
            g = kg.edge_morphism(g)
        else:
            raise KeyError(f"unknown generator symbol {g!r}")
    if not isinstance(g, Morphism):
        raise TypeError(f"cannot interpret {g!r} on {basis.id}")
    pairs = []
    for j, cls in enumerate(basis.labels):
        if g.src != cls.num.rng:
            continue
        reduced = reduce_class(kg, basis.tails, compose(kg, g, cls.num),
                               cls.vertex, cls.i)
        target = basis.index.get(reduced)
        if target is not None:
            pairs.append((target, j))
    return _ones(pairs, basis.dim, basis.id)


def right_creation_op(domain: FockBasis, codomain: FockBasis, w: Path) -> SparseOperator:
    """Right concatenation by the path w, mapping one truncation into another."""
    if domain.kind != "graph-fock" or codomain.kind != "graph-fock":
        raise TypeError("right creation operators are built on path bases")
    if domain.carrier is not codomain.carrier:
        raise ValueError("bases live over different carriers")
    pairs = []
    for j, u in enumerate(domain.labels):
        if u.src == w.rng and len(u.edges) + len(w.edges) <= codomain.N:
            target = codomain.index.get(compose_paths(u, w))
            if target is not None:
                pairs.append((target, j))
    rows = [r for r, _ in pairs]
    cols = [c for _, c in pairs]
    return SparseOperator.from_entries(rows, cols, np.ones(len(pairs)),
                                       (codomain.dim, domain.dim),
                                       domain.id, codomain.id)


Word = tuple[tuple[str, bool], ...]


def _norm_word(word) -> Word:
    out = []
    for sym in word:
        if isinstance(sym, str):
            out.append((sym, False))
        else:
            name, adj = sym
            out.append((str(name), bool(adj)))
    if not out:
        raise ValueError("words must be nonempty; scalar identity terms are not allowed")
    return tuple(out)


@dataclass(frozen=True)
class NcPolynomial:
    """A matrix of formal sums of generator words (no scalar identity term).

    Each term is (row, col, coefficient, word); a word is a nonempty
    sequence of (symbol, adjoint flag).  Words that fail composability
    evaluate to the zero operator, not an error.
    """

    shape: tuple[int, int]
    terms: tuple[tuple[int, int, complex, Word], ...]

    @classmethod
    def scalar(cls, terms: Iterable[tuple[complex, Iterable]]) -> "NcPolynomial":
        flat = tuple((0, 0, complex(c), _norm_word(w)) for c, w in terms)
        return cls((1, 1), flat)

    @classmethod
    def matrix(cls, rows: Sequence[Sequence[Iterable[tuple[complex, Iterable]]]]
               ) -> "NcPolynomial":
        n = len(rows)
        flat = []
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("matrix polynomial must be square")
            for j, entry in enumerate(row):
                for c, w in entry:
                    flat.append((i, j, complex(c), _norm_word(w)))
        return cls((n, n), tuple(flat))

    def symbols(self) -> list[str]:
        seen: dict[str, None] = {}
        for _, _, _, word in self.terms:
            for name, _ in word:
                seen.setdefault(name)
        return list(seen)

    def is_adjoint_free(self) -> bool:
        return all(not adj for _, _, _, word in self.terms for _, adj in word)

    def degree(self, basis) -> int:
        """Largest total grading displacement of any word on the given carrier."""
        best = 0
        for _, _, _, word in self.terms:
            best = max(best, sum(basis.symbol_degree(name) for name, _ in word))
        return best


def eval_poly(p: NcPolynomial, basis, generators: Mapping | None = None
              ) -> SparseOperator:
    """Assemble the matrix polynomial as one operator on the inflated space.

    ``generators`` may override the operator assigned to any symbol (the
    rest resolve through :func:`creation_op` on the basis).
    """
    def resolve(name: str) -> SparseOperator:
        if generators is not None and name in generators:
            return generators[name]
        return creation_op(basis, name)

    dim = basis.dim
    n = p.shape[0]
    blocks: list[list] = [[None] * n for _ in range(n)]
    for i, j, coeff, word in p.terms:
        name, adj = word[0]
        mat = resolve(name).mat
        mat = mat.conj().T.tocsr() if adj else mat
        for name, adj in word[1:]:
            nxt = resolve(name).mat
            nxt = nxt.conj().T.tocsr() if adj else nxt
            mat = (mat @ nxt).tocsr()
        contrib = coeff * mat
        blocks[i][j] = contrib if blocks[i][j] is None else blocks[i][j] + contrib
    zero = sparse.csr_matrix((dim, dim), dtype=np.complex128)
    grid = [[blk if blk is not None else zero for blk in row] for row in blocks]
    big = sparse.bmat(grid, format="csr").astype(np.complex128)
    space = basis.id if n == 1 else f"{basis.id}(x{n})"
    return SparseOperator(big, space, space)


def ampliate(mask_or_op, n: int):
    """Inflate a basis mask (or operator) blockwise to the n-fold space."""
    if isinstance(mask_or_op, SparseOperator):
        mat = sparse.block_diag([mask_or_op.mat] * n, format="csr")
        return SparseOperator(mat, f"{mask_or_op.domain}(x{n})",
                              f"{mask_or_op.codomain}(x{n})")
    return np.tile(np.asarray(mask_or_op, dtype=bool), n)


@dataclass(frozen=True)
class GaugeUnitary:
    """Diagonal torus unitary: label w gets the phase prod_c t_c ** m_c(w)."""

    basis_id: str
    phase: tuple[complex, ...]
    diag: np.ndarray

    def as_operator(self) -> SparseOperator:
        return SparseOperator(sparse.diags(self.diag).tocsr(), self.basis_id, self.basis_id)

    def conjugate(self, a: SparseOperator) -> SparseOperator:
        """U* A U, computed by entrywise phase scaling."""
        if a.shape != (self.diag.size, self.diag.size):
            raise ValueError("operator does not act on this basis")
        coo = a.mat.tocoo()
        data = coo.data * np.conj(self.diag[coo.row]) * self.diag[coo.col]
        mat = sparse.coo_matrix((data, (coo.row, coo.col)), shape=a.shape).tocsr()
        return SparseOperator(mat, a.domain, a.codomain)


def gauge_unitary(basis, phase) -> GaugeUnitary:
    """The diagonal unitary for a point of the torus (componentwise |t_c| = 1)."""
    k = basis.gauge_exponents.shape[1]
    if np.isscalar(phase) or isinstance(phase, complex):
        phases = (complex(phase),) * k if k == 1 else None
        if phases is None:
            raise ValueError(f"phase must have {k} components")
    else:
        phases = tuple(complex(z) for z in phase)
        if len(phases) != k:
            raise ValueError(f"phase must have {k} components")
    for z in phases:
        if abs(abs(z) - 1.0) > 1e-12:
            raise ValueError(f"phase component {z!r} is not unimodular")
    diag = np.ones(basis.dim, dtype=np.complex128)
    for c, z in enumerate(phases):
        diag *= z ** basis.gauge_exponents[:, c]
    return GaugeUnitary(basis.id, phases, diag)


def gauge_expectation(a: SparseOperator, basis, order: int) -> SparseOperator:
    """Average of U* A U over the full grid of order-th roots of unity.

    The average keeps exactly the entries whose row and column labels have
    equal torus exponents and kills all others, provided the order exceeds
    twice the largest exponent magnitude in the basis; a smaller order is
    rejected because the average would alias.
    """
    expo = basis.gauge_exponents
    max_abs = int(np.abs(expo).max()) if expo.size else 0
    if order <= 2 * max_abs:
        raise ValueError(f"order {order} is too small for exact annihilation; "
                         f"need > {2 * max_abs}")
    if a.shape != (basis.dim, basis.dim):
        raise ValueError("operator does not act on this basis")
    roots = np.exp(2j * np.pi * np.arange(order) / order)
    coo = a.mat.tocoo()
    delta = expo[coo.row] - expo[coo.col]
    # sanity-check the discrete averages this filter stands for
    for d in np.unique(delta):
        mean = complex(np.mean(roots ** int(d)))
        target = 1.0 if d == 0 else 0.0
        if abs(mean - target) > 1e-9:
            raise ArithmeticError(f"root-of-unity average degenerated at offset {d}")
    keep = np.all(delta == 0, axis=1)
    mat = sparse.coo_matrix((coo.data[keep], (coo.row[keep], coo.col[keep])),
                            shape=a.shape).tocsr()
    return SparseOperator(mat, a.domain, a.codomain)
