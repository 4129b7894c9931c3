"""Verification suites over carriers, with machine-readable reports.

Every suite asserts identities on explicitly computed interior subspaces,
where truncation error is provably zero, so the relation residuals are
exact; tolerances appear only where spectral norms are estimated.  Each
report carries an anchor naming the identity it certifies.  Suites are
deterministic given (carrier, parameters, seed).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .graphs import DirectedGraph, Path, add_tails
from .kgraphs import KGraph, all_morphisms, compose, enumerate_morphisms
from .norms import op_norm
from .operators import (
    NcPolynomial,
    SparseOperator,
    ampliate,
    creation_op,
    eval_poly,
    gauge_expectation,
    gauge_unitary,
    identity_operator,
    right_creation_op,
)
from .paths import GammaBasis, choose_tails, enumerate_paths, gamma_basis, kgraph_fock_basis

EXACT = 1e-14  # absorbs rounding in adjoint products of 0/1 matrices
GAUGE_EXACT = 1e-12


@dataclass(frozen=True)
class CheckReport:
    suite: str
    carrier: str
    N: int
    M: int | None
    tol: float
    seed: int
    value: float
    bound: float
    anchor: str
    passed: bool
    extras: tuple[tuple[str, str], ...] = ()

    def line(self) -> str:
        m = "-" if self.M is None else str(self.M)
        status = "PASS" if self.passed else "FAIL"
        return (f"CHECK {self.suite} {self.carrier} N={self.N} M={m} "
                f"tol={self.tol:g} seed={self.seed} value={self.value:.12e} "
                f"bound={self.bound:.12e} anchor=\"{self.anchor}\" {status}")

    def text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        m = "-" if self.M is None else str(self.M)
        extra = "".join(f" {k}={v}" for k, v in self.extras)
        return (f"[{status}] {self.suite}: {self.anchor} | carrier={self.carrier} "
                f"N={self.N} M={m} value={self.value:.6e} bound={self.bound:.6e}"
                f"{extra}")


GeneratorOverride = Callable | Mapping | None


def _resolver(generators: GeneratorOverride):
    if generators is None:
        return lambda basis, sym: None
    if callable(generators):
        return generators
    return lambda basis, sym: generators.get(sym)


def _ops(basis, symbols, generators: GeneratorOverride) -> dict[str, SparseOperator]:
    resolve = _resolver(generators)
    out = {}
    for sym in symbols:
        out[sym] = resolve(basis, sym) or creation_op(basis, sym)
    return out


def _symbol_key(g):
    """Morphisms that are single generators resolve under their string id."""
    from .kgraphs import Morphism

    if isinstance(g, Morphism):
        if g.is_identity():
            return g.rng
        if len(g.word) == 1:
            return g.word[0]
    return g


def _projection_defect(d: SparseOperator) -> float:
    """Distance of an operator from being a diagonal 0/1 projection."""
    coo = d.mat.tocoo()
    off = coo.row != coo.col
    worst = float(np.abs(coo.data[off]).max()) if off.any() else 0.0
    diag = d.mat.diagonal()
    worst = max(worst, float(np.abs(diag.imag).max()) if diag.size else 0.0)
    re = diag.real
    worst = max(worst, float(np.abs(re * re - re).max()) if re.size else 0.0)
    worst = max(worst, float(max(0.0, -re.min())) if re.size else 0.0)
    return worst


def _masked_residual(a: SparseOperator, mask: np.ndarray) -> float:
    return a.masked(mask, mask).max_abs()


# ---------------------------------------------------------------------------
# relation suite


def check_tck(carrier, N: int, M: int | None = None, *, tol: float = 1e-8,
              seed: int = 0, generators: GeneratorOverride = None
              ) -> list[CheckReport]:
    """Interior residuals of the defining partial-isometry relations."""
    if isinstance(carrier, DirectedGraph):
        return _tck_graph(carrier, N, tol, seed, generators)
    if isinstance(carrier, KGraph):
        if M is None:
            basis = kgraph_fock_basis(carrier, N)
        else:
            basis = gamma_basis(carrier, choose_tails(carrier, max(M, 1)), N, M)
        return _tck_kgraph(carrier, basis, N, M, tol, seed, generators)
    raise TypeError(f"not a carrier: {carrier!r}")


def _tck_graph(graph: DirectedGraph, N: int, tol: float, seed: int,
               generators: GeneratorOverride) -> list[CheckReport]:
    basis = enumerate_paths(graph, N)
    syms = list(graph.vertex_index) + list(graph.edge_map)
    ops = _ops(basis, syms, generators)
    full = np.ones(basis.dim, dtype=bool)
    inner = basis.interior_mask(1)

    def report(anchor: str, value: float) -> CheckReport:
        return CheckReport("tck", graph.name, N, None, tol, seed, value, EXACT,
                           anchor, value <= EXACT)

    out = []
    worst = 0.0
    for x in graph.vertices:
        for y in graph.vertices:
            if x != y:
                worst = max(worst, _masked_residual(ops[x] @ ops[y], full))
    out.append(report("orthogonal vertex projections", worst))

    worst = 0.0
    for e in graph.edge_map:
        for f in graph.edge_map:
            if e != f:
                worst = max(worst, _masked_residual(ops[e].adjoint() @ ops[f], inner))
    out.append(report("adjoint cross-annihilation", worst))

    worst = 0.0
    for e, edge in graph.edge_map.items():
        res = ops[e].adjoint() @ ops[e] - ops[edge.src]
        worst = max(worst, _masked_residual(res, inner))
    out.append(report("isometry onto source projection", worst))

    worst = 0.0
    for x in graph.vertices:
        d = ops[x]
        for edge in graph.edges_into[x]:
            d = d - ops[edge.id] @ ops[edge.id].adjoint()
        worst = max(worst, _projection_defect(d.masked(inner, inner)))
    out.append(report("range sum dominated by vertex projection", worst))
    return out


def _tck_kgraph(kg: KGraph, basis, N: int, M: int | None, tol: float, seed: int,
                generators: GeneratorOverride) -> list[CheckReport]:
    resolve = _resolver(generators)

    def op(g) -> SparseOperator:
        key = _symbol_key(g)
        return resolve(basis, key) or creation_op(basis, key if isinstance(key, str) else g)

    def inner(margin: int) -> np.ndarray:
        if isinstance(basis, GammaBasis):
            return basis.interior_mask(margin, 0)
        return basis.interior_mask(margin)

    def report(anchor: str, value: float) -> CheckReport:
        return CheckReport("tck", kg.name, N, M, tol, seed, value, EXACT,
                           anchor, value <= EXACT)

    out = []
    full = np.ones(basis.dim, dtype=bool)
    worst = 0.0
    for x in kg.skeleton.vertices:
        for y in kg.skeleton.vertices:
            if x != y:
                worst = max(worst, _masked_residual(op(x) @ op(y), full))
    out.append(report("orthogonal vertex projections", worst))

    pair_cap = min(N, 3)
    worst = 0.0
    pool = [m for m in all_morphisms(kg, max(pair_cap - 1, 0)) if not m.is_identity()]
    for left in pool:
        for right in pool:
            if left.src != right.rng or left.delta + right.delta > pair_cap:
                continue
            margin = left.delta + right.delta
            res = op(compose(kg, left, right)) - op(left) @ op(right)
            worst = max(worst, _masked_residual(res, inner(margin)))
    out.append(report("word multiplicativity", worst))

    worst = 0.0
    for m in all_morphisms(kg, min(N, 2)):
        if m.is_identity():
            continue
        res = op(m).adjoint() @ op(m) - op(m.src)
        worst = max(worst, _masked_residual(res, inner(m.delta)))
    out.append(report("isometry onto source projection", worst))

    worst = 0.0
    for degree in _default_degrees(kg, N):
        weight = sum(degree)
        mask = inner(weight)
        for v in kg.skeleton.vertices:
            d = op(v)
            for lam in enumerate_morphisms(kg, degree, v):
                d = d - op(lam) @ op(lam).adjoint()
            worst = max(worst, _projection_defect(d.masked(mask, mask)))
    out.append(report("range sum dominated by vertex projection", worst))
    return out


def _default_degrees(kg: KGraph, N: int) -> list[tuple[int, ...]]:
    degrees = [tuple(1 if i == c else 0 for i in range(kg.k)) for c in range(kg.k)]
    ones = (1,) * kg.k
    if kg.k > 1 and sum(ones) <= N:
        degrees.append(ones)
    return [d for d in degrees if sum(d) <= N]


# ---------------------------------------------------------------------------
# defect / equality suite


def check_ck_defects(carrier, N: int, M: int | None = None, *,
                     degrees: Sequence[tuple[int, ...]] | None = None,
                     rank_tol: float = 1e-10, tol: float = 1e-8, seed: int = 0,
                     generators: GeneratorOverride = None,
                     tails=None) -> list[CheckReport]:
    """Finite-rank defects of the range-sum equality, and its exact form
    on reduced-class bases.

    A graph with sources is desingularized first (tails of depth N, noted
    in the report extras).  Every vertex that receives an edge then has
    defect projection of rank exactly one, the line through its own label.
    """
    if isinstance(carrier, DirectedGraph):
        return _ck_graph(carrier, N, rank_tol, tol, seed, generators)
    if isinstance(carrier, KGraph):
        if M is None:
            raise ValueError("k-graph defect checks need the tail truncation M")
        return _ck_kgraph(carrier, N, M, degrees, tol, seed, generators, tails)
    raise TypeError(f"not a carrier: {carrier!r}")


def _ck_graph(graph: DirectedGraph, N: int, rank_tol: float, tol: float,
              seed: int, generators: GeneratorOverride) -> list[CheckReport]:
    from .norms import numeric_rank

    applied_t = None
    if graph.has_sources():
        applied_t = N
        graph = add_tails(graph, N)
    basis = enumerate_paths(graph, N)
    syms = list(graph.vertex_index) + list(graph.edge_map)
    ops = _ops(basis, syms, generators)
    inner = basis.interior_mask(1)
    extras = (("T", str(applied_t)),) if applied_t is not None else ()
    out = []
    for x in graph.vertices:
        if graph.in_degree(x) == 0:
            continue  # truncation endpoint of a tail; equality not asserted
        d = ops[x]
        for edge in graph.edges_into[x]:
            d = d - ops[edge.id] @ ops[edge.id].adjoint()
        d = d.masked(inner, inner)
        rank = numeric_rank(d, rank_tol)
        fixes = abs(d.mat[basis.index[graph.vertex_path(x)],
                          basis.index[graph.vertex_path(x)]] - 1.0)
        passed = rank == 1 and fixes <= EXACT
        out.append(CheckReport("ck", graph.name, N, None, tol, seed, float(rank),
                               1.0, f"defect rank one at vertex {x}", passed,
                               extras + (("fixes_own_label", f"{fixes:.1e}"),)))
    return out


def _ck_kgraph(kg: KGraph, N: int, M: int, degrees, tol: float, seed: int,
               generators: GeneratorOverride, tails=None) -> list[CheckReport]:
    if tails is None:
        tails = choose_tails(kg, max(M, 1))
    basis = gamma_basis(kg, tails, N, M)
    resolve = _resolver(generators)

    def op(g) -> SparseOperator:
        key = _symbol_key(g)
        return resolve(basis, key) or creation_op(basis, key if isinstance(key, str) else g)

    if degrees is None:
        # keep only degrees whose witnessing extensions fit inside (N, M)
        degrees = [deg for deg in _default_degrees(kg, N)
                   if kg.k * max(deg) <= M]
        if not degrees:
            raise ValueError(f"tail truncation M={M} is too small for any "
                             f"degree at k={kg.k}")
    out = []
    for degree in degrees:
        weight = sum(degree)
        tail_margin = kg.k * max(degree)
        mask = basis.interior_mask(weight, tail_margin)
        worst = 0.0
        for v in kg.skeleton.vertices:
            d = op(v)
            for lam in enumerate_morphisms(kg, tuple(degree), v):
                d = d - op(lam) @ op(lam).adjoint()
            worst = max(worst, _masked_residual(d, mask))
        out.append(CheckReport(
            "ck", kg.name, N, M, tol, seed, worst, EXACT,
            f"range sum equality on reduced classes, degree {tuple(degree)}",
            worst <= EXACT))
    return out


# ---------------------------------------------------------------------------
# shift intertwining (the essential-norm mechanism)


def check_commutant_shift(graph: DirectedGraph, d: int, poly: NcPolynomial,
                          N: int, *, tol: float = 1e-8, seed: int = 0,
                          generators: GeneratorOverride = None) -> CheckReport:
    """Right-shift isometry between truncations intertwines compressions.

    With one length-d path chosen into every vertex (minimal edge ids), the
    summed right operator R satisfies R*R = 1 on the lower truncation and
    R* (p at N+d) R = (p at N) exactly, for adjoint-free p, ampliations
    included.
    """
    if graph.has_sources():
        raise ValueError("the shift construction needs a graph with no sources")
    if d < 1:
        raise ValueError("shift length d must be >= 1")
    if not poly.is_adjoint_free():
        raise ValueError("the intertwining identity applies to adjoint-free polynomials")
    lo = enumerate_paths(graph, N)
    hi = enumerate_paths(graph, N + d)
    r = None
    for x in graph.vertices:
        w = _minimal_path_into(graph, x, d)
        rw = right_creation_op(lo, hi, w)
        r = rw if r is None else r + rw
    res1 = (r.adjoint() @ r - identity_operator(lo)).max_abs()
    resolve = _resolver(generators)
    gens_lo = {s: resolve(lo, s) or creation_op(lo, s) for s in poly.symbols()}
    gens_hi = {s: resolve(hi, s) or creation_op(hi, s) for s in poly.symbols()}
    a_lo = eval_poly(poly, lo, gens_lo)
    a_hi = eval_poly(poly, hi, gens_hi)
    n = poly.shape[0]
    r_amp = ampliate(r, n) if n > 1 else r
    res2 = (r_amp.adjoint() @ a_hi @ r_amp - a_lo).max_abs()
    value = max(res1, res2)
    return CheckReport("shift", graph.name, N, None, tol, seed, value, EXACT,
                       "right isometry intertwines compressions",
                       value <= EXACT,
                       (("d", str(d)), ("isometry", f"{res1:.1e}"),
                        ("intertwine", f"{res2:.1e}"), ("shape", str(n))))


def _minimal_path_into(graph: DirectedGraph, x: str, d: int) -> Path:
    ids = []
    cur = x
    for _ in range(d):
        edge = graph.edges_into[cur][0]
        ids.append(edge.id)
        cur = edge.src
    return Path(tuple(ids), cur, x)


# ---------------------------------------------------------------------------
# tail grafting preserves norms


def check_identify(graph: DirectedGraph, T: int, poly: NcPolynomial, N: int,
                   *, tol: float = 1e-8, seed: int = 0,
                   generators: GeneratorOverride = None) -> CheckReport:
    """Grafting tails changes no norm at matched truncation.

    The compression of an adjoint-free polynomial in the original
    generators has the same norm over the original graph and over the
    desingularized one, and it vanishes identically on the labels whose
    range lies on a tail.
    """
    if T < N:
        raise ValueError(f"tails of depth {T} are too short for exactness at N={N}")
    if not poly.is_adjoint_free():
        raise ValueError("matched-truncation equality applies to adjoint-free polynomials")
    basis_g = enumerate_paths(graph, N)
    if poly.degree(basis_g) > N:
        raise ValueError("polynomial degree exceeds the truncation")
    grafted = add_tails(graph, T)
    basis_s = enumerate_paths(grafted, N)
    resolve = _resolver(generators)
    gens_g = {s: resolve(basis_g, s) or creation_op(basis_g, s) for s in poly.symbols()}
    gens_s = {s: resolve(basis_s, s) or creation_op(basis_s, s) for s in poly.symbols()}
    est_g = op_norm(eval_poly(poly, basis_g, gens_g), tol=tol, seed=seed)
    a_s = eval_poly(poly, basis_s, gens_s)
    est_s = op_norm(a_s, tol=tol, seed=seed)
    gap = abs(est_g.value - est_s.value)

    tail_mask = np.array([w.rng in grafted.tail_vertices for w in basis_s.labels])
    n = poly.shape[0]
    if n > 1:
        tail_mask = ampliate(tail_mask, n)
    every = np.ones(tail_mask.size, dtype=bool)
    vanish = max(a_s.masked(tail_mask, every).max_abs(),
                 a_s.masked(every, tail_mask).max_abs())
    passed = gap <= 2 * tol and vanish <= EXACT
    return CheckReport("identify", graph.name, N, None, tol, seed, gap, 2 * tol,
                       "matched-truncation norms agree after grafting tails",
                       passed,
                       (("T", str(T)), ("norm_graph", f"{est_g.value:.12e}"),
                        ("norm_grafted", f"{est_s.value:.12e}"),
                        ("tail_vanish", f"{vanish:.1e}"), ("shape", str(n))))


# ---------------------------------------------------------------------------
# reduced-class sandwich


def check_hrlemma(kg: KGraph, poly: NcPolynomial, N: int, M: int, *,
                  tol: float = 1e-8, seed: int = 0,
                  generators: GeneratorOverride = None) -> CheckReport:
    """Compression norms on the reduced-class space sit between two
    morphism-space compressions.

    The leading block of the reduced-class truncation (tail index 0) is the
    morphism space at N, so its norm bounds from below; extending every
    class to tail index M embeds the truncation into the morphism space at
    N + M, bounding from above.  At M = 0 the two coincide.
    """
    if not poly.is_adjoint_free():
        raise ValueError("the sandwich applies to adjoint-free polynomials")
    fock_lo = kgraph_fock_basis(kg, N)
    if poly.degree(fock_lo) > N:
        raise ValueError("polynomial degree exceeds the truncation")
    tails = choose_tails(kg, max(M, 1))
    gamma = gamma_basis(kg, tails, N, M)
    fock_hi = kgraph_fock_basis(kg, N + M) if M > 0 else fock_lo
    resolve = _resolver(generators)

    def gens(basis):
        return {s: resolve(basis, s) or creation_op(basis, s) for s in poly.symbols()}

    est_lo = op_norm(eval_poly(poly, fock_lo, gens(fock_lo)), tol=tol, seed=seed)
    est_mid = op_norm(eval_poly(poly, gamma, gens(gamma)), tol=tol, seed=seed)
    est_hi = (op_norm(eval_poly(poly, fock_hi, gens(fock_hi)), tol=tol, seed=seed)
              if M > 0 else est_lo)
    low_violation = max(0.0, est_lo.value - est_mid.value)
    high_violation = max(0.0, est_mid.value - est_hi.value)
    value = max(low_violation, high_violation)
    if M == 0:
        value = max(value, abs(est_lo.value - est_mid.value))
    return CheckReport("hrlemma", kg.name, N, M, tol, seed, value, 2 * tol,
                       "reduced-class compression sandwich",
                       value <= 2 * tol,
                       (("norm_low", f"{est_lo.value:.12e}"),
                        ("norm_mid", f"{est_mid.value:.12e}"),
                        ("norm_high", f"{est_hi.value:.12e}")))


# ---------------------------------------------------------------------------
# gauge suite


def check_gauge(carrier, N: int, M: int | None = None, *, sample_count: int = 8,
                expectation_order: int | None = None, seed: int = 0,
                generators: GeneratorOverride = None) -> list[CheckReport]:
    """Conjugation by the torus unitaries scales each generator by its
    degree character, and the discrete average kills off-degree entries."""
    bases = []
    if isinstance(carrier, DirectedGraph):
        name = carrier.name
        bases.append(enumerate_paths(carrier, N))
        edge_degrees = {e: (1,) for e in carrier.edge_map}
        vertex_ids = list(carrier.vertex_index)
    elif isinstance(carrier, KGraph):
        name = carrier.name
        bases.append(kgraph_fock_basis(carrier, N))
        if M is not None:
            bases.append(gamma_basis(carrier, choose_tails(carrier, max(M, 1)), N, M))
        edge_degrees = {}
        for e in carrier.skeleton.edge_map:
            deg = [0] * carrier.k
            deg[carrier.color(e) - 1] = 1
            edge_degrees[e] = tuple(deg)
        vertex_ids = list(carrier.skeleton.vertex_index)
    else:
        raise TypeError(f"not a carrier: {carrier!r}")

    resolve = _resolver(generators)
    out = []
    for basis in bases:
        k = basis.gauge_exponents.shape[1]
        phases = _torus_grid(k, sample_count)
        worst = 0.0
        for t in phases:
            u = gauge_unitary(basis, t if k > 1 else t[0])
            for e, deg in edge_degrees.items():
                op = resolve(basis, e) or creation_op(basis, e)
                character = np.prod([t[c] ** deg[c] for c in range(k)])
                worst = max(worst, (u.conjugate(op) - complex(character) * op).max_abs())
            for x in vertex_ids:
                op = resolve(basis, x) or creation_op(basis, x)
                worst = max(worst, (u.conjugate(op) - op).max_abs())
        out.append(CheckReport(
            "gauge", name, N, basis.M if isinstance(basis, GammaBasis) else None,
            GAUGE_EXACT, seed, worst, GAUGE_EXACT,
            "conjugation scales generators by their degree character",
            worst <= GAUGE_EXACT, (("grid", str(sample_count)),)))

        max_expo = int(np.abs(basis.gauge_exponents).max())
        order = expectation_order if expectation_order is not None else 2 * max_expo + 2
        worst_off = 0.0
        worst_fix = 0.0
        for e in edge_degrees:
            op = resolve(basis, e) or creation_op(basis, e)
            worst_off = max(worst_off, gauge_expectation(op, basis, order).max_abs())
            fixed = op @ op.adjoint()
            worst_fix = max(worst_fix,
                            (gauge_expectation(fixed, basis, order) - fixed).max_abs())
        for x in vertex_ids:
            op = resolve(basis, x) or creation_op(basis, x)
            worst_fix = max(worst_fix,
                            (gauge_expectation(op, basis, order) - op).max_abs())
        out.append(CheckReport(
            "gauge", name, N, basis.M if isinstance(basis, GammaBasis) else None,
            GAUGE_EXACT, seed, max(worst_off, worst_fix), 0.0,
            "discrete average kills off-degree terms and fixes degree zero",
            max(worst_off, worst_fix) == 0.0, (("Q", str(order)),)))
    return out


def _torus_grid(k: int, count: int) -> list[tuple[complex, ...]]:
    roots = [np.exp(2j * np.pi * j / count) for j in range(count)]
    grid = [()]
    for _ in range(k):
        grid = [t + (z,) for t in grid for z in roots]
    return grid


# ---------------------------------------------------------------------------
# seeded random polynomials


COEFF_POOL = (1, -1, 1j, -1j, 0.5, -0.5)


def random_nc_polynomial(carrier, rng: np.random.Generator, max_degree: int = 3,
                         shape: int = 1) -> NcPolynomial:
    """A random matrix polynomial with words drawn from composable paths
    and coefficients from {±1, ±i, ±1/2}."""
    pool: list[tuple] = []
    if isinstance(carrier, DirectedGraph):
        for w in enumerate_paths(carrier, max_degree).labels:
            pool.append(w.edges if w.edges else (w.rng,))
    elif isinstance(carrier, KGraph):
        for m in all_morphisms(carrier, max_degree):
            pool.append(m.word if m.word else (m.rng,))
    else:
        raise TypeError(f"not a carrier: {carrier!r}")

    def entry() -> list[tuple[complex, tuple]]:
        n_terms = int(rng.integers(1, 4))
        terms = []
        for _ in range(n_terms):
            word = pool[int(rng.integers(0, len(pool)))]
            coeff = COEFF_POOL[int(rng.integers(0, len(COEFF_POOL)))]
            terms.append((complex(coeff), word))
        return terms

    if shape == 1:
        return NcPolynomial.scalar(entry())
    rows = [[entry() if rng.random() < 0.75 else [] for _ in range(shape)]
            for _ in range(shape)]
    if all(not cell for row in rows for cell in row):
        rows[0][0] = entry()
    return NcPolynomial.matrix(rows)


def generator_sum_poly(carrier) -> NcPolynomial:
    """The canonical element: sum of all vertex projections and all edges."""
    if isinstance(carrier, DirectedGraph):
        verts, edges = carrier.vertices, list(carrier.edge_map)
    else:
        verts, edges = carrier.skeleton.vertices, list(carrier.skeleton.edge_map)
    return NcPolynomial.scalar([(1.0, (v,)) for v in verts]
                               + [(1.0, (e,)) for e in edges])


# ---------------------------------------------------------------------------
# suite orchestration


SUITES = ("tck", "ck", "shift", "identify", "hrlemma", "gauge", "all")


def run_suite(suite: str, carrier, N: int, M: int | None = None,
              T: int | None = None, d: int = 1, tol: float = 1e-8,
              seed: int = 42, count: int = 20) -> list[CheckReport]:
    """Run one named suite (or all applicable ones) over a carrier."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    is_graph = isinstance(carrier, DirectedGraph)
    reports: list[CheckReport] = []

    def want(name: str) -> bool:
        return suite in (name, "all")

    if want("tck"):
        reports += check_tck(carrier, N, M, tol=tol, seed=seed)
    if want("ck"):
        if is_graph:
            reports += check_ck_defects(carrier, N, tol=tol, seed=seed)
        elif M is not None:
            reports += check_ck_defects(carrier, N, M, tol=tol, seed=seed)
        elif suite == "ck":
            raise ValueError("k-graph defect checks need the tail truncation M")
    if want("shift"):
        if is_graph:
            if carrier.has_sources():
                if suite == "shift":
                    raise ValueError(
                        "the shift construction needs a graph with no sources")
                # under "all", skip: grafted tails keep their truncation
                # endpoints as sources, so the hypothesis stays unmet
            else:
                rng = np.random.default_rng(seed)
                for i in range(count):
                    p = random_nc_polynomial(carrier, rng, shape=1 + i % 2)
                    reports.append(check_commutant_shift(carrier, d, p, N,
                                                         tol=tol, seed=seed))
        elif suite == "shift":
            raise ValueError("the shift suite runs on ordinary graphs only")
    if want("identify"):
        if is_graph:
            rng = np.random.default_rng(seed)
            t_eff = T if T is not None else N
            for i in range(count):
                p = random_nc_polynomial(carrier, rng, shape=1 + i % 2)
                reports.append(check_identify(carrier, t_eff, p, N, tol=tol, seed=seed))
        elif suite == "identify":
            raise ValueError("the identify suite runs on ordinary graphs only")
    if want("hrlemma"):
        if not is_graph:
            rng = np.random.default_rng(seed)
            m_eff = M if M is not None else 0
            polys = [generator_sum_poly(carrier)]
            polys += [random_nc_polynomial(carrier, rng, shape=1 + i % 2)
                      for i in range(max(count - 1, 0))]
            for p in polys:
                reports.append(check_hrlemma(carrier, p, N, m_eff, tol=tol, seed=seed))
        elif suite == "hrlemma":
            raise ValueError("the hrlemma suite runs on k-graph carriers only")
    if want("gauge"):
        reports += check_gauge(carrier, N, M, seed=seed)
    return reports
