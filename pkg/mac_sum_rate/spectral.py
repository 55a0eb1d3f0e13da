#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
File: spectral.py
License: BSD 3-Clause
Description:
    Singular value machinery for the normalized joint matrix P~.

    For a valid joint distribution the SVD of P~ has the form
        P~ = sqrt(p_X) sqrt(p_Y)^T + sum_{i>=2} lambda_i u_i v_i^T
    with 1 = lambda_1 >= lambda_2 >= ... >= 0. lambda_2 is the maximal
    (Hirschfeld-Gebelein-Renyi) correlation of the pair and equals 1
    exactly when the joint decomposes into two blocks.

    The SVD itself is a one-sided (Hestenes) Jacobi iteration on the
    smaller side: the matrices are tiny and the fixed sweep order makes
    the output reproducible bit for bit.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np
from scipy.sparse import csr_matrix, bmat
from scipy.sparse.csgraph import connected_components

from probcore import (MAX_ALPHABET, SUPPORT_TOL, SizeCapExceeded, make_rng, marginals, tilde,
                      verboseprint)

RANK_TOL = 1e-10
JACOBI_TOL = 1e-12
MAX_SWEEPS = 60
PRINCIPAL_TIE_TOL = 1e-9
STRUCTURE_TOL = 1e-8
TINY = 1e-300


class NoConvergence(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class SpectralProfile:
    singular_values: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray
    rank_tol: float = RANK_TOL

    @property
    def rank(self):
        return int(np.count_nonzero(self.singular_values > self.rank_tol))

    def reconstruct(self):
        return (self.left_vectors * self.singular_values) @ self.right_vectors.T


@dataclass(frozen=True)
class Theorem1Report:
    is_valid_joint: bool
    lambda1_deviation: float
    principal_left_deviation: float
    principal_right_deviation: float
    max_excess: float


def _one_sided_jacobi(b):
    # Orthogonalize the columns of b (m >= n) by plane rotations: b V = W
    w = np.array(b, dtype=float)
    n = w.shape[1]
    v = np.eye(n)
    for sweep in range(MAX_SWEEPS):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = w[:, p] @ w[:, p]
                beta = w[:, q] @ w[:, q]
                gamma = w[:, p] @ w[:, q]
                if alpha < TINY or beta < TINY:
                    continue
                if abs(gamma) <= JACOBI_TOL * np.sqrt(alpha) * np.sqrt(beta):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                if zeta == 0.0:
                    t = 1.0
                else:
                    t = np.sign(zeta) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                rot = np.array([[c, s], [-s, c]])
                w[:, [p, q]] = w[:, [p, q]] @ rot
                v[:, [p, q]] = v[:, [p, q]] @ rot
        if not rotated:
            return (w, v, sweep + 1)
    raise NoConvergence("Jacobi SVD did not converge in {} sweeps".format(MAX_SWEEPS))


def _complete_basis(vectors, dim):
    # Extend orthonormal columns to dim columns with Gram-Schmidt on e_1, e_2, ...
    basis = [vectors[:, i] for i in range(vectors.shape[1])]
    for k in range(dim):
        if len(basis) == dim:
            break
        candidate = np.zeros(dim)
        candidate[k] = 1.0
        for _ in range(2):
            for b in basis:
                candidate = candidate - (b @ candidate) * b
        norm = np.linalg.norm(candidate)
        if norm > 1e-8:
            basis.append(candidate / norm)
    return np.column_stack(basis) if basis else np.zeros((dim, 0))


def svd_small(matrix, rank_tol=RANK_TOL):
    """
    Full SVD of a small dense matrix.

    Returns a SpectralProfile with min(m, n) singular values in descending
    order. Sign convention: the first nonzero component of every left vector
    is positive.

    Raises:
        NoConvergence: if the Jacobi sweeps do not settle
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or not np.all(np.isfinite(a)):
        raise ValueError("svd_small needs a finite 2-D matrix")
    if max(a.shape) > MAX_ALPHABET:
        raise SizeCapExceeded("matrix of shape {} exceeds the SVD size cap".format(a.shape))

    transposed = a.shape[0] < a.shape[1]
    b = a.T if transposed else a
    (w, v, sweeps) = _one_sided_jacobi(b)

    sigma = np.linalg.norm(w, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    w = w[:, order]
    v = v[:, order]

    kept = sigma > rank_tol
    u = w[:, kept] / sigma[kept]
    u = _complete_basis(u, b.shape[0])[:, :b.shape[1]]
    if transposed:
        (u, v) = (v, u)

    for i in range(u.shape[1]):
        lead = np.flatnonzero(np.abs(u[:, i]) > SUPPORT_TOL)
        if len(lead) > 0 and u[lead[0], i] < 0.0:
            u[:, i] = -u[:, i]
            v[:, i] = -v[:, i]
    return SpectralProfile(sigma, u, v, rank_tol)


def _align_principal(profile, sqrt_px):
    # Rotate the singular subspace of the largest value so that u_1 follows sqrt(p_X)
    sigma = profile.singular_values
    u = profile.left_vectors.copy()
    v = profile.right_vectors.copy()
    if len(sigma) == 0:
        return profile
    cluster = np.flatnonzero(sigma >= sigma[0] - PRINCIPAL_TIE_TOL)

    coeffs = u[:, cluster].T @ sqrt_px
    if len(cluster) > 1 and np.linalg.norm(coeffs) > 1e-12:
        first = coeffs / np.linalg.norm(coeffs)
        rotation = _complete_basis(first[:, None], len(cluster))
        u[:, cluster] = u[:, cluster] @ rotation
        v[:, cluster] = v[:, cluster] @ rotation
    elif len(cluster) > 1:
        best = cluster[np.argmax(np.abs(coeffs))]
        for mat in (u, v):
            mat[:, [cluster[0], best]] = mat[:, [best, cluster[0]]]

    if u[:, 0] @ sqrt_px < 0.0:
        u[:, 0] = -u[:, 0]
        v[:, 0] = -v[:, 0]
    return SpectralProfile(sigma, u, v, profile.rank_tol)


def profile_of(joint):
    (p_x, p_y) = marginals(joint)
    return _align_principal(svd_small(tilde(joint)), np.sqrt(p_x))


def verify_theorem1(joint):
    (p_x, p_y) = marginals(joint)
    profile = profile_of(joint)
    lam = profile.singular_values
    report = Theorem1Report(
        is_valid_joint=False,
        lambda1_deviation=float(abs(lam[0] - 1.0)),
        principal_left_deviation=float(np.linalg.norm(profile.left_vectors[:, 0] - np.sqrt(p_x))),
        principal_right_deviation=float(np.linalg.norm(profile.right_vectors[:, 0] - np.sqrt(p_y))),
        max_excess=float(max(np.max(lam - 1.0), 0.0)))
    valid = max(report.lambda1_deviation, report.principal_left_deviation,
                report.principal_right_deviation, report.max_excess) <= STRUCTURE_TOL
    return Theorem1Report(valid, report.lambda1_deviation, report.principal_left_deviation,
                          report.principal_right_deviation, report.max_excess)


def lambda2(joint):
    if min(joint.shape) < 2:
        return 0.0
    return float(profile_of(joint).singular_values[1])


# Same quantity under its statistics name
maximal_correlation = lambda2


def kron_power_spectrum(joint, n):
    m_rows, m_cols = joint.shape
    if m_rows ** n > MAX_ALPHABET or m_cols ** n > MAX_ALPHABET:
        raise SizeCapExceeded("{}x{} to the power {} exceeds the cap of {} symbols per axis".format(
            m_rows, m_cols, n, MAX_ALPHABET))
    values = profile_of(joint).singular_values
    return np.sort(reduce(np.kron, [values] * n))[::-1]


def detect_decomposition(joint):
    """
    Look for S1, S2 with P((X - S1) x S2) = P(S1 x (Y - S2)) = 0.

    The witness is a connected component of the bipartite support graph
    (rows and columns as vertices, entries >= SUPPORT_TOL as edges).

    Returns:
        (S1, S2) as tuples of row and column indices, the one with the
        lexicographically smallest S1, or None if the joint does not decompose
    """
    m_rows, m_cols = joint.shape
    support = csr_matrix(joint.matrix >= SUPPORT_TOL, dtype=float)
    graph = bmat([[None, support], [support.T, None]], format="csr")
    (n_components, labels) = connected_components(graph, directed=False)
    if n_components < 2:
        return None

    (p_x, p_y) = marginals(joint)
    row_labels = labels[:m_rows]
    col_labels = labels[m_rows:]
    witnesses = []
    for component in range(n_components):
        s1 = np.flatnonzero(row_labels == component)
        s2 = np.flatnonzero(col_labels == component)
        if len(s1) == 0 or len(s2) == 0:
            continue
        masses = (p_x[s1].sum(), 1.0 - p_x[s1].sum(), p_y[s2].sum(), 1.0 - p_y[s2].sum())
        if min(masses) <= 0.0:
            continue
        witnesses.append((tuple(int(i) for i in s1), tuple(int(j) for j in s2)))
    if not witnesses:
        return None
    verboseprint("decomposition: {} components".format(n_components))
    return min(witnesses)


def _orthonormal_with_first(first, rng):
    dim = len(first)
    (q, _) = np.linalg.qr(np.column_stack([first, rng.standard_normal((dim, dim - 1))]))
    if q[:, 0] @ first < 0.0:
        q = -q
    return q


def verify_theorem1_converse(seed, m_rows, m_cols):
    """
    Build sqrt(p_X) sqrt(p_Y)^T + sum lambda_i u_i v_i^T with random orthonormal
    completions and lambda_i in [0, 1], and map it back through P_X^1/2 (.) P_Y^1/2.

    Returns:
        marginal_error: max deviation of the row/column sums from p_X, p_Y
        nonnegative: whether the rebuilt matrix is entrywise >= -1e-12
        matrix: the rebuilt matrix
    """
    rng = make_rng(seed)
    p_x = rng.dirichlet(np.ones(m_rows))
    p_y = rng.dirichlet(np.ones(m_cols))
    l = min(m_rows, m_cols)
    u = _orthonormal_with_first(np.sqrt(p_x), rng)[:, :l]
    v = _orthonormal_with_first(np.sqrt(p_y), rng)[:, :l]
    lam = np.concatenate([[1.0], np.sort(rng.uniform(0.0, 1.0, l - 1))[::-1]])
    matrix = np.sqrt(p_x)[:, None] * ((u * lam) @ v.T) * np.sqrt(p_y)[None, :]
    marginal_error = max(np.max(np.abs(matrix.sum(axis=1) - p_x)), np.max(np.abs(matrix.sum(axis=0) - p_y)))
    return (float(marginal_error), bool(matrix.min() >= -1e-12), matrix)


if __name__ == '__main__':
    profile = svd_small([[2/3, 1/3], [1/3, 2/3]])
    assert np.allclose(profile.singular_values, [1.0, 1/3])
    assert np.allclose(profile.reconstruct(), [[2/3, 1/3], [1/3, 2/3]])
    profile = svd_small([[0.0, 1/3], [1/3, 8/9]])
    assert np.allclose(profile.singular_values, [1.0, 1/9])
    print(profile.singular_values)
