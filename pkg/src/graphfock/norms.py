"""Spectral-norm estimation, numeric rank, and truncated norm profiles.

The largest singular value is found by Krylov (Lanczos) iteration on A*A
from a seeded start vector: power iteration accelerated by Rayleigh-Ritz
over the whole iteration history.  The reported value is the top Ritz
value, always a lower bound on the true norm; convergence is declared
when the residual-based upper bracket closes to the requested tolerance.
Identical inputs and seeds give bitwise-identical estimates.

Dense decompositions are reserved for test oracles and for the tiny
compressed blocks used by the rank counter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.linalg import eigh_tridiagonal

from .operators import NcPolynomial, SparseOperator, eval_poly
from .paths import fock_basis


@dataclass(frozen=True)
class NormEstimate:
    value: float  # top Ritz estimate, a lower bound for the spectral norm
    tolerance: float  # achieved upper-bracket width
    iterations: int
    converged: bool


def op_norm(a: SparseOperator, tol: float = 1e-8, max_iter: int = 5000,
            seed: int = 0) -> NormEstimate:
    """Largest singular value of a sparse operator, with a two-sided bracket."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    mat = a.mat.tocsr()
    m, n = mat.shape
    if mat.nnz == 0 or min(m, n) == 0:
        return NormEstimate(0.0, 0.0, 0, True)
    adj = mat.conj().T.tocsr()
    rng = np.random.default_rng(seed)
    q = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    q /= np.linalg.norm(q)

    cap = int(min(n, max_iter))
    basis_vecs = np.empty((min(cap, 32), n), dtype=np.complex128)
    basis_vecs[0] = q
    alphas: list[float] = []
    betas: list[float] = []
    value = 0.0
    gap = np.inf
    steps = 0
    scale = None
    for j in range(cap):
        steps = j + 1
        w = adj @ (mat @ basis_vecs[j])
        alpha = float(np.vdot(basis_vecs[j], w).real)
        alphas.append(alpha)
        if scale is None:
            scale = max(abs(alpha), 1e-300)
        w -= alpha * basis_vecs[j]
        if j > 0:
            w -= betas[-1] * basis_vecs[j - 1]
        # full reorthogonalization, twice, to keep Ritz values trustworthy
        for _ in range(2):
            w -= basis_vecs[: j + 1].T @ (basis_vecs[: j + 1].conj() @ w)
        beta = float(np.linalg.norm(w))
        theta, resid = _top_ritz(alphas, betas, beta)
        value = float(np.sqrt(max(theta, 0.0)))
        upper = float(np.sqrt(max(theta + resid, 0.0)))
        gap = upper - value
        if gap <= tol:
            return NormEstimate(value, gap, steps, True)
        if beta <= 1e-14 * np.sqrt(scale) or j + 1 == cap:
            break
        betas.append(beta)
        if j + 1 == basis_vecs.shape[0]:
            grown = np.empty((min(cap, 2 * basis_vecs.shape[0]), n), dtype=np.complex128)
            grown[: j + 1] = basis_vecs[: j + 1]
            basis_vecs = grown
        basis_vecs[j + 1] = w / beta
    # Krylov space exhausted or iteration budget reached
    return NormEstimate(value, gap, steps, gap <= tol)


def _top_ritz(alphas: list[float], betas: list[float], last_beta: float
              ) -> tuple[float, float]:
    """Top eigenvalue of the Lanczos tridiagonal and its residual bound."""
    j = len(alphas)
    if j == 1:
        return alphas[0], last_beta
    try:
        vals, vecs = eigh_tridiagonal(np.asarray(alphas), np.asarray(betas),
                                      select="i", select_range=(j - 1, j - 1))
        return float(vals[0]), float(last_beta * abs(vecs[-1, 0]))
    except np.linalg.LinAlgError:  # pragma: no cover - LAPACK corner case
        t = np.diag(alphas) + np.diag(betas, 1) + np.diag(betas, -1)
        vals, vecs = np.linalg.eigh(t)
        return float(vals[-1]), float(last_beta * abs(vecs[-1, -1]))


def numeric_rank(a: SparseOperator, tol: float) -> int:
    """Number of singular values above tol.

    The nonzero rows and columns are compressed into a dense block first;
    that compression is exact and keeps the block small for the finite-rank
    defects this is used on.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    coo = a.mat.tocoo()
    if coo.nnz == 0:
        return 0
    rows = np.unique(coo.row)
    cols = np.unique(coo.col)
    block = np.asarray(a.mat[rows][:, cols].todense())
    svals = np.linalg.svd(block, compute_uv=False)
    return int(np.count_nonzero(svals > tol))


def truncated_norm_profile(p: NcPolynomial, carrier, n_list, tol: float = 1e-8,
                           seed: int = 0) -> list[NormEstimate]:
    """Compression norms of p over an ascending list of truncation levels.

    Compression monotonicity makes the values nondecreasing; a drop beyond
    twice the tolerance means a bug and raises.
    """
    ns = list(n_list)
    if ns != sorted(ns):
        raise ValueError("truncation levels must be ascending")
    out: list[NormEstimate] = []
    for n in ns:
        basis = fock_basis(carrier, n)
        est = op_norm(eval_poly(p, basis), tol=tol, seed=seed)
        if out and est.value < out[-1].value - 2 * tol:
            raise ArithmeticError(
                f"compression monotonicity violated at level {n}: "
                f"{est.value} < {out[-1].value}")
        out.append(est)
    return out


def isometry_gap(p: NcPolynomial, basis_a, basis_b, tol: float = 1e-8,
                 seed: int = 0) -> float:
    """| ||p on basis_a|| - ||p on basis_b|| | at the given truncations."""
    na = op_norm(eval_poly(p, basis_a), tol=tol, seed=seed)
    nb = op_norm(eval_poly(p, basis_b), tol=tol, seed=seed)
    return abs(na.value - nb.value)


def dense_spectral_norm(a: SparseOperator) -> float:
    """Dense singular-value oracle; intended for tests and small dimensions."""
    if min(a.shape) == 0 or a.mat.nnz == 0:
        return 0.0
    return float(np.linalg.norm(a.toarray(), 2))
