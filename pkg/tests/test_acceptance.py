"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one pass/fail line; run with ``pytest -s`` to see them.
"""

import itertools

import numpy as np
import pytest

from graphfock import fixtures
from graphfock.checks import (
    check_ck_defects,
    check_commutant_shift,
    check_gauge,
    check_hrlemma,
    check_identify,
    check_tck,
    random_nc_polynomial,
)
from graphfock.kgraphs import (
    KGraphSpec,
    SquareRule,
    all_morphisms,
    compose,
    factor,
    validate_kgraph,
)
from graphfock.errors import (
    ConflictingSquaresError,
    IncompleteSquaresError,
    MalformedSquareError,
)
from graphfock.norms import dense_spectral_norm, op_norm, truncated_norm_profile
from graphfock.operators import NcPolynomial, SparseOperator, creation_op, eval_poly
from graphfock.paths import enumerate_paths
from graphfock.toeplitz import QC, ToeplitzElement, te_mul, te_to_matrix


def _verdict(num: int, name: str, ok: bool, detail: str = "") -> None:
    line = f"ACCEPTANCE {num:02d} {name}: {'PASS' if ok else 'FAIL'}"
    if detail and not ok:
        line += f"  ({detail})"
    print(line)
    assert ok, line


GRAPHS = ("loop1", "cuntz2", "flag", "arrow")
KGRAPHS = ("torus2", "sq22")


def test_criterion_1_relation_suite():
    failures = []
    for name in GRAPHS:
        for rep in check_tck(fixtures.fixture_graph(name), 6):
            if not (rep.passed and rep.value <= 1e-14):
                failures.append(f"{name}:{rep.anchor}={rep.value}")
    for name in KGRAPHS:
        for rep in check_tck(fixtures.fixture_kgraph(name), 4, 4):
            if not (rep.passed and rep.value <= 1e-14):
                failures.append(f"{name}:{rep.anchor}={rep.value}")

    # mutation control: a flipped matrix entry must be caught
    def flip(basis, sym):
        if sym != "e1":
            return None
        op = creation_op(basis, sym)
        m = op.mat.tolil(copy=True)
        m[0, 0] = m[0, 0] + 1e-3
        return SparseOperator(m.tocsr(), op.domain, op.codomain)

    mutated = check_tck(fixtures.fixture_graph("cuntz2"), 6, generators=flip)
    if not any(not r.passed for r in mutated):
        failures.append("mutation control did not fail")
    _verdict(1, "relation suite", not failures, "; ".join(failures))


def test_criterion_2_ck_defects():
    failures = []
    for name in GRAPHS:
        for rep in check_ck_defects(fixtures.fixture_graph(name), 6,
                                    rank_tol=1e-10):
            if not (rep.passed and rep.value == 1.0):
                failures.append(f"{name}:{rep.anchor}={rep.value}")
    wanted = {(1, 0), (0, 1), (1, 1)}
    for name in KGRAPHS:
        reps = check_ck_defects(fixtures.fixture_kgraph(name), 3, 4,
                                degrees=sorted(wanted))
        for rep in reps:
            if not (rep.passed and rep.value == 0.0):
                failures.append(f"{name}:{rep.anchor}={rep.value}")
        if len(reps) != len(wanted):
            failures.append(f"{name}: missing degrees")
    _verdict(2, "defect rank and reduced-class equality", not failures,
             "; ".join(failures))


def test_criterion_3_shift_intertwining():
    g = fixtures.fixture_graph("cuntz2")
    rng = np.random.default_rng(1203)
    failures = []
    for d in (1, 2):
        for i in range(20):
            p = random_nc_polynomial(g, rng, max_degree=3, shape=1 + i % 2)
            rep = check_commutant_shift(g, d, p, 5)
            if not (rep.passed and rep.value <= 1e-14):
                failures.append(f"d={d} poly={i} value={rep.value}")
    _verdict(3, "shift intertwining", not failures, "; ".join(failures))


def test_criterion_4_tail_grafting_norms():
    rng = np.random.default_rng(1204)
    failures = []
    for name in ("flag", "arrow"):
        g = fixtures.fixture_graph(name)
        for i in range(20):
            p = random_nc_polynomial(g, rng, max_degree=3, shape=1 + i % 2)
            rep = check_identify(g, 8, p, 8, tol=1e-8)
            vanish = float(dict(rep.extras)["tail_vanish"])
            if not (rep.value <= 2e-8 and vanish == 0.0 and rep.passed):
                failures.append(f"{name} poly={i} gap={rep.value} vanish={vanish}")
    _verdict(4, "matched-truncation norm equality", not failures, "; ".join(failures))


def test_criterion_5_sandwich():
    failures = []
    rng = np.random.default_rng(1205)
    for name in KGRAPHS:
        kg = fixtures.fixture_kgraph(name)
        for m in (0, 2, 3):
            polys = [NcPolynomial.scalar(
                [(1.0, ("v",))] + [(1.0, (e,)) for e in kg.skeleton.edge_map])]
            polys.append(random_nc_polynomial(kg, rng, shape=2))
            for j, p in enumerate(polys):
                rep = check_hrlemma(kg, p, 6, m, tol=1e-8)
                if not (rep.passed and rep.value <= 2e-8):
                    failures.append(f"{name} M={m} poly={j} value={rep.value}")
    # the single loop reproduces the closed form for the middle norm
    lk = fixtures.fixture_kgraph("loop1k")
    p = NcPolynomial.scalar([(1.0, ("v",)), (1.0, ("e",))])
    for m in (0, 2, 3):
        rep = check_hrlemma(lk, p, 6, m, tol=1e-9)
        mid = float(dict(rep.extras)["norm_mid"])
        closed = 2 * np.cos(np.pi / (2 * (6 + m + 1) + 1))
        if abs(mid - closed) > 1e-8:
            failures.append(f"loop1k M={m} mid={mid} closed={closed}")
    _verdict(5, "reduced-class sandwich", not failures, "; ".join(failures))


def test_criterion_6_disc_algebra_limit():
    g = fixtures.fixture_graph("loop1")
    p = NcPolynomial.scalar([(1.0, ("v",)), (1.0, ("e",))])
    profile = truncated_norm_profile(p, g, range(1, 201), tol=2e-10)
    failures = []
    if abs(profile[-1].value - 2.0) > 5e-4:
        failures.append(f"limit at N=200: {profile[-1].value}")
    for n, est in zip(range(1, 201), profile):
        if abs(est.value - 2 * np.cos(np.pi / (2 * n + 3))) > 1e-9:
            failures.append(f"closed form at N={n}: {est.value}")
            break
    for n in range(1, 61, 7):
        a = eval_poly(p, enumerate_paths(g, n))
        if abs(dense_spectral_norm(a) - 2 * np.cos(np.pi / (2 * n + 3))) > 1e-9:
            failures.append(f"dense oracle at N={n}")
    _verdict(6, "disc-algebra norm limit", not failures, "; ".join(failures))


def test_criterion_7_two_loop_isometry():
    g = fixtures.fixture_graph("cuntz2")
    p = NcPolynomial.scalar([(1.0, ("e1",)), (1.0, ("e2",))])
    failures = []
    for n in range(1, 9):
        est = op_norm(eval_poly(p, enumerate_paths(g, n)), tol=1e-11)
        if abs(est.value - np.sqrt(2.0)) > 1e-10:
            failures.append(f"N={n}: {est.value}")
    _verdict(7, "two-loop generator sum has norm sqrt(2)", not failures,
             "; ".join(failures))


def test_criterion_8_exact_oracle_equivalence():
    g = fixtures.fixture_graph("cuntz2")
    rng = np.random.default_rng(1208)
    basis = enumerate_paths(g, 8)
    interior = basis.levels <= 8 - 6  # both factors carry words up to length 3
    paths = enumerate_paths(g, 3).labels
    coeffs = [QC.of(1), QC.of(-1), QC.of(0, 1), QC.of(0, -1), QC.of(0.5)]

    def random_element():
        terms = {}
        for _ in range(int(rng.integers(1, 7))):
            mu = paths[int(rng.integers(0, len(paths)))]
            nu = paths[int(rng.integers(0, len(paths)))]
            if mu.src != nu.src:
                continue
            c = coeffs[int(rng.integers(0, len(coeffs)))]
            tot = terms.get((mu, nu), QC()) + c
            if tot:
                terms[(mu, nu)] = tot
            else:
                terms.pop((mu, nu), None)
        return ToeplitzElement(g, terms)

    failures = []
    for trial in range(200):
        a, b = random_element(), random_element()
        lhs = te_to_matrix(te_mul(a, b), basis).masked(interior, interior)
        rhs = (te_to_matrix(a, basis) @ te_to_matrix(b, basis)).masked(interior, interior)
        if (lhs - rhs).max_abs() != 0.0:
            failures.append(f"trial {trial}")
            break
    _verdict(8, "exact oracle matches matrices", not failures, "; ".join(failures))


def test_criterion_9_gauge_suite():
    failures = []
    for name in GRAPHS:
        g = fixtures.fixture_graph(name)
        for rep in check_gauge(g, 6, expectation_order=2 * 6 + 2):
            if not rep.passed:
                failures.append(f"{name}:{rep.anchor}={rep.value}")
    for name in KGRAPHS:
        kg = fixtures.fixture_kgraph(name)
        for rep in check_gauge(kg, 4, 4, sample_count=4,
                               expectation_order=2 * 4 + 2):
            if not rep.passed:
                failures.append(f"{name}:{rep.anchor}={rep.value}")
    _verdict(9, "gauge covariance and expectation", not failures, "; ".join(failures))


SQ22_EDGES = (("b1", "v", "v", 1), ("b2", "v", "v", 1),
              ("r1", "v", "v", 2), ("r2", "v", "v", 2))
SQ22_RULES = tuple(SquareRule(b, r, b, r) for b in ("b1", "b2") for r in ("r1", "r2"))


def test_criterion_10_kgraph_validation_and_roundtrip():
    failures = []
    if validate_kgraph(KGraphSpec("sq22", 2, ("v",), SQ22_EDGES, SQ22_RULES)).k != 2:
        failures.append("sq22 rejected")
    mutations = [
        (SQ22_RULES[1:], IncompleteSquaresError),
        (SQ22_RULES[:1] + SQ22_RULES[2:], IncompleteSquaresError),
        (SQ22_RULES[:2] + SQ22_RULES[3:], IncompleteSquaresError),
        (SQ22_RULES[:3], IncompleteSquaresError),
        ((SquareRule("b1", "r1", "b1", "r2"),) + SQ22_RULES[1:], ConflictingSquaresError),
        ((SquareRule("b1", "r1", "b2", "r1"),) + SQ22_RULES[1:], ConflictingSquaresError),
        (SQ22_RULES + (SquareRule("b2", "r2", "b1", "r2"),), ConflictingSquaresError),
        ((SquareRule("b1", "r1", "r1", "b1"),) + SQ22_RULES[1:], MalformedSquareError),
    ]
    for idx, (rules, err) in enumerate(mutations):
        try:
            validate_kgraph(KGraphSpec("mut", 2, ("v",), SQ22_EDGES, rules))
            failures.append(f"mutation {idx} accepted")
        except err:
            pass
        except Exception as exc:  # wrong class
            failures.append(f"mutation {idx} raised {type(exc).__name__}")

    for name in KGRAPHS:
        kg = fixtures.fixture_kgraph(name)
        for lam in all_morphisms(kg, 6):
            if any(c > 3 for c in lam.degree):
                continue
            for m in itertools.product(range(lam.degree[0] + 1),
                                       range(lam.degree[1] + 1)):
                head, tail = factor(kg, lam, m)
                if compose(kg, head, tail) != lam:
                    failures.append(f"{name}: round trip failed at {lam} {m}")
    _verdict(10, "k-graph validation and factorization round trip",
             not failures, "; ".join(failures))
