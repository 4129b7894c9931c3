"""Suite behavior: positive runs, hypothesis errors, negative controls."""

import numpy as np
import pytest

from graphfock.checks import (
    check_ck_defects,
    check_commutant_shift,
    check_gauge,
    check_hrlemma,
    check_identify,
    check_tck,
    generator_sum_poly,
    random_nc_polynomial,
    run_suite,
)
from graphfock.operators import NcPolynomial, SparseOperator, creation_op
from graphfock.paths import TailFamily, choose_tails


def _perturb(symbol: str, eps: float = 1e-3):
    """Generator override flipping one matrix entry of the named symbol."""

    def override(basis, sym):
        if sym != symbol:
            return None
        op = creation_op(basis, sym)
        mat = op.mat.tolil(copy=True)
        mat[0, 0] = mat[0, 0] + eps
        return SparseOperator(mat.tocsr(), op.domain, op.codomain)

    return override


def test_tck_passes_on_fixtures(loop1, cuntz2, flag, arrow, torus2, sq22):
    for g in (loop1, cuntz2, flag, arrow):
        assert all(r.passed for r in check_tck(g, 4))
    for kg in (torus2, sq22):
        assert all(r.passed for r in check_tck(kg, 3))
        assert all(r.passed for r in check_tck(kg, 3, 3))


def test_tck_negative_control(cuntz2, torus2):
    reports = check_tck(cuntz2, 4, generators=_perturb("e1"))
    assert any(not r.passed for r in reports)
    reports = check_tck(torus2, 3, 3, generators=_perturb("b"))
    assert any(not r.passed for r in reports)


def test_ck_rank_one_defects(loop1, flag):
    for r in check_ck_defects(loop1, 4):
        assert r.passed and r.value == 1.0
    reports = check_ck_defects(flag, 6)
    assert all(r.passed for r in reports)
    assert dict(reports[0].extras)["T"] == "6"  # tails were applied automatically
    # the original vertices x and y are both covered
    anchors = {r.anchor for r in reports}
    assert any("vertex x" in a for a in anchors)
    assert any("vertex y" in a for a in anchors)


def test_ck_gamma_equality(torus2, sq22):
    for kg in (torus2, sq22):
        reports = check_ck_defects(kg, 3, 4)
        assert len(reports) == 3  # degrees (1,0), (0,1), (1,1)
        assert all(r.passed and r.value == 0.0 for r in reports)


def test_ck_negative_controls(cuntz2, torus2):
    reports = check_ck_defects(cuntz2, 4, generators=_perturb("e2", eps=0.5))
    assert any(not r.passed for r in reports)
    # corrupt the tail family: a chain that never uses color 2
    good = choose_tails(torus2, 4)
    bad = TailFamily(
        torus2, 4,
        {"v": ("b", "b", "b", "b")},
        {"v": ("v",) * 5},
        {"v": tuple((j, 0) for j in range(5))},
    )
    assert all(r.passed for r in check_ck_defects(torus2, 3, 4, tails=good))
    reports = check_ck_defects(torus2, 3, 4, tails=bad)
    assert any(not r.passed for r in reports)


def test_shift_exact_and_hypothesis(cuntz2, loop1, flag):
    rng = np.random.default_rng(2)
    for d in (1, 2):
        p = random_nc_polynomial(cuntz2, rng, shape=2)
        rep = check_commutant_shift(cuntz2, d, p, 4)
        assert rep.passed and rep.value == 0.0
    p = NcPolynomial.scalar([(1.0, ("v",)), (1.0, ("e",))])
    rep = check_commutant_shift(loop1, 1, p, 5)
    assert rep.passed
    with pytest.raises(ValueError):
        check_commutant_shift(flag, 1, p, 4)


def test_shift_rejects_adjoints(cuntz2):
    p = NcPolynomial.scalar([(1.0, (("e1", True),))])
    with pytest.raises(ValueError):
        check_commutant_shift(cuntz2, 1, p, 4)


def test_shift_negative_control(cuntz2):
    p = NcPolynomial.scalar([(1.0, ("e1",)), (1.0, ("e2",))])
    rep = check_commutant_shift(cuntz2, 1, p, 4, generators=_perturb("e1"))
    assert not rep.passed


def test_identify_gap_and_vanishing(flag, arrow):
    rng = np.random.default_rng(3)
    for g in (flag, arrow):
        for shape in (1, 2):
            p = random_nc_polynomial(g, rng, shape=shape)
            rep = check_identify(g, 8, p, 8, tol=1e-8)
            assert rep.passed
            assert float(dict(rep.extras)["tail_vanish"]) == 0.0


def test_identify_vertex_projection_trivial(flag):
    p = NcPolynomial.scalar([(1.0, ("x",))])
    rep = check_identify(flag, 6, p, 6, tol=1e-10)
    assert rep.passed and rep.value <= 2e-10
    extras = dict(rep.extras)
    assert float(extras["norm_graph"]) == pytest.approx(1.0, abs=1e-9)


def test_identify_preconditions(flag):
    p = NcPolynomial.scalar([(1.0, ("a",))])
    with pytest.raises(ValueError):
        check_identify(flag, 3, p, 4)  # T < N
    with pytest.raises(ValueError):
        check_identify(flag, 8, NcPolynomial.scalar([(1.0, (("a", True),))]), 8)


def test_identify_negative_control(flag):
    # perturb the generator only on the grafted side, at a tail-vertex entry
    def override(basis, sym):
        if sym != "f" or not basis.carrier.tail_vertices:
            return None
        op = creation_op(basis, sym)
        mat = op.mat.tolil(copy=True)
        tail_row = next(j for j, w in enumerate(basis.labels)
                        if w.rng in basis.carrier.tail_vertices)
        mat[tail_row, tail_row] = 2.0
        return SparseOperator(mat.tocsr(), op.domain, op.codomain)

    p = NcPolynomial.scalar([(1.0, ("a",)), (1.0, ("f",))])
    rep = check_identify(flag, 6, p, 6, generators=override)
    assert not rep.passed


def test_hrlemma_sandwich(torus2, sq22):
    rng = np.random.default_rng(4)
    for kg in (torus2, sq22):
        for m in (0, 2):
            rep = check_hrlemma(kg, generator_sum_poly(kg), 4, m)
            assert rep.passed
        p = random_nc_polynomial(kg, rng, shape=2)
        assert check_hrlemma(kg, p, 4, 2).passed


def test_hrlemma_preconditions(torus2):
    with pytest.raises(ValueError):
        check_hrlemma(torus2, NcPolynomial.scalar([(1.0, (("b", True),))]), 4, 2)
    deep = NcPolynomial.scalar([(1.0, ("b",) * 5)])
    with pytest.raises(ValueError):
        check_hrlemma(torus2, deep, 4, 2)


def test_hrlemma_negative_control(torus2):
    p = generator_sum_poly(torus2)
    rep = check_hrlemma(torus2, p, 4, 2, generators=_mid_only_perturb("b", 5.0))
    assert not rep.passed


def _mid_only_perturb(symbol: str, eps: float):
    from graphfock.paths import GammaBasis

    def override(basis, sym):
        if sym != symbol or not isinstance(basis, GammaBasis):
            return None
        op = creation_op(basis, sym)
        mat = op.mat.tolil(copy=True)
        mat[0, 0] = mat[0, 0] + eps
        return SparseOperator(mat.tocsr(), op.domain, op.codomain)

    return override


def test_range_sum_equality_distinguishes_bases(torus2):
    # on the morphism space the range sum is strictly dominated (rank-1
    # defect at the vertex label); on the reduced classes it is an equality
    from graphfock.kgraphs import enumerate_morphisms
    from graphfock.norms import numeric_rank
    from graphfock.paths import gamma_basis, kgraph_fock_basis

    fock = kgraph_fock_basis(torus2, 3)
    d = creation_op(fock, "v")
    for lam in enumerate_morphisms(torus2, (1, 1), "v"):
        s = creation_op(fock, lam)
        d = d - s @ s.adjoint()
    inner = fock.interior_mask(2)
    assert d.masked(inner, inner).max_abs() == 1.0
    assert numeric_rank(d.masked(inner, inner), 1e-10) == 1

    basis = gamma_basis(torus2, choose_tails(torus2, 4), 3, 4)
    dg = creation_op(basis, "v")
    for lam in enumerate_morphisms(torus2, (1, 1), "v"):
        s = creation_op(basis, lam)
        dg = dg - s @ s.adjoint()
    mask = basis.interior_mask(2, 4)
    assert dg.masked(mask, mask).max_abs() == 0.0


def test_interior_margins_are_sharp(loop1, torus2):
    # outside the stated interiors the truncated identities genuinely fail,
    # so the masked checks are not vacuously true
    from graphfock.paths import enumerate_paths, gamma_basis, kgraph_fock_basis

    basis = enumerate_paths(loop1, 4)
    le = creation_op(basis, "e")
    res = le.adjoint() @ le - creation_op(basis, "v")
    assert res.max_abs() == 1.0  # the top level sees the truncation
    assert res.masked(basis.interior_mask(1), basis.interior_mask(1)).max_abs() == 0.0

    kg_basis = gamma_basis(torus2, choose_tails(torus2, 4), 3, 4)
    from graphfock.kgraphs import enumerate_morphisms

    d = creation_op(kg_basis, "v")
    for lam in enumerate_morphisms(torus2, (1, 1), "v"):
        s = creation_op(kg_basis, lam)
        d = d - s @ s.adjoint()
    full = np.ones(kg_basis.dim, dtype=bool)
    assert d.masked(full, full).max_abs() == 1.0  # boundary classes uncovered


def test_gauge_suite(loop1, torus2):
    assert all(r.passed for r in check_gauge(loop1, 6))
    assert all(r.passed for r in check_gauge(torus2, 4, 4, sample_count=4))


def test_gauge_negative_control(cuntz2):
    reports = check_gauge(cuntz2, 4, generators=_perturb("e1", eps=0.2))
    assert any(not r.passed for r in reports)


def test_run_suite_dispatch(loop1, torus2):
    reports = run_suite("tck", loop1, 4)
    assert reports and all(r.passed for r in reports)
    reports = run_suite("all", torus2, 3, M=2, count=2)
    suites = {r.suite for r in reports}
    assert suites == {"tck", "ck", "hrlemma", "gauge"}
    with pytest.raises(ValueError):
        run_suite("bogus", loop1, 4)
    with pytest.raises(ValueError):
        run_suite("hrlemma", loop1, 4)
    with pytest.raises(ValueError):
        run_suite("shift", torus2, 4)


def test_reports_are_byte_stable(cuntz2):
    a = [r.line() for r in run_suite("tck", cuntz2, 4)]
    b = [r.line() for r in run_suite("tck", cuntz2, 4)]
    assert a == b
    c = [r.line() for r in run_suite("shift", cuntz2, 4, d=1, count=3)]
    d = [r.line() for r in run_suite("shift", cuntz2, 4, d=1, count=3)]
    assert c == d
