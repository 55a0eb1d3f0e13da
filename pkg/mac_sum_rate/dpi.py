#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
File: dpi.py
License: BSD 3-Clause
Description:
    Markov chains X -> Y -> Z and the spectral data processing inequality

        lambda_i(P~_XZ) <= lambda_i(P~_XY) lambda_2(P~_YZ) <= lambda_i(P~_XY)

    for i = 2, ..., rank(P~_XZ). It follows from the product identity
    P~_XZ = P~_XY P~_YZ, which both functions below check numerically.

    Also holds the seeded generators for random joints and kernels used
    by the property suites.
"""

from dataclasses import dataclass

import numpy as np

from probcore import (Alphabet, ConditionalKernel, JointDistribution, AlphabetMismatch, make_rng,
                      marginals, mutual_information, strip_zero_mass, tilde)
from spectral import RANK_TOL, lambda2, profile_of

SLACK_TOL = -1e-9
IDENTITY_TOL = 1e-10
SPARSE_PROBABILITY = 0.1


@dataclass(frozen=True, eq=False)
class MarkovTriple:
    joint_xy: JointDistribution
    kernel_z_given_y: ConditionalKernel

    def __post_init__(self):
        if self.kernel_z_given_y.from_alphabet != self.joint_xy.col_alphabet:
            raise AlphabetMismatch("kernel reads {} but Y takes values in {}".format(
                self.kernel_z_given_y.from_alphabet.symbols, self.joint_xy.col_alphabet.symbols))


def triple_from_chain(joint_xy, kernel):
    return MarkovTriple(joint_xy, kernel)


def compose(triple):
    """P_XZ(i, k) = sum_j P_XY(i, j) P(z_k | y_j)"""
    kernel = triple.kernel_z_given_y
    matrix = triple.joint_xy.matrix @ kernel.matrix.T
    return JointDistribution(triple.joint_xy.row_alphabet, kernel.to_alphabet, matrix)


def joint_yz(triple):
    (_, p_y) = marginals(triple.joint_xy)
    kernel = triple.kernel_z_given_y
    return JointDistribution(triple.joint_xy.col_alphabet, kernel.to_alphabet, p_y[:, None] * kernel.matrix.T)


def _stripped_pair(triple):
    # Drop the Z symbols nobody reaches, in both P_XZ and P_YZ
    xz = compose(triple)
    keep = np.flatnonzero(xz.matrix.sum(axis=0) > 0.0)
    yz = joint_yz(triple)
    xz = JointDistribution(xz.row_alphabet, xz.col_alphabet.subset(keep), xz.matrix[:, keep])
    yz = JointDistribution(yz.row_alphabet, yz.col_alphabet.subset(keep), yz.matrix[:, keep])
    return (strip_zero_mass(xz), yz)


def product_identity_error(triple):
    (xz, yz) = _stripped_pair(triple)
    return float(np.max(np.abs(tilde(xz) - tilde(triple.joint_xy) @ tilde(yz))))


def _ranked(values):
    # Only the singular values of P~_XZ well above the rank threshold count
    return int(np.count_nonzero(values > 10.0 * RANK_TOL))


def check_dpi(triple):
    """
    Slack of the middle inequality for i = 2 .. rank(P~_XZ).

    Returns:
        vector of lambda_i(P~_XY) lambda_2(P~_YZ) - lambda_i(P~_XZ), which
        must be >= SLACK_TOL everywhere
    """
    (xz, yz) = _stripped_pair(triple)
    lam_xy = profile_of(triple.joint_xy).singular_values
    lam_xz = profile_of(xz).singular_values
    lam2_yz = lambda2(yz)
    rank = _ranked(lam_xz)
    return lam_xy[1:rank] * lam2_yz - lam_xz[1:rank]


def check_dpi_outer(triple):
    (xz, _) = _stripped_pair(triple)
    lam_xy = profile_of(triple.joint_xy).singular_values
    lam_xz = profile_of(xz).singular_values
    rank = _ranked(lam_xz)
    return lam_xy[1:rank] - lam_xz[1:rank]


def classical_dpi_gap(triple):
    return mutual_information(triple.joint_xy) - mutual_information(compose(triple))


def chain_slack(joint_xy, kernels):
    """
    Spectral inequality along X -> Y -> Z -> ... with one kernel per link:
    lambda_i(P~_X,last) <= lambda_i(P~_XY) * prod_links lambda_2(P~_link).
    """
    bound_factor = 1.0
    joint = joint_xy
    for kernel in kernels:
        triple = MarkovTriple(joint, kernel)
        bound_factor *= lambda2(strip_zero_mass(joint_yz(triple)))
        # Unreached symbols stay in the alphabet so the next kernel lines up
        joint = compose(triple)
    lam_xy = profile_of(strip_zero_mass(joint_xy)).singular_values
    lam_end = profile_of(strip_zero_mass(joint)).singular_values
    rank = _ranked(lam_end)
    return lam_xy[1:rank] * bound_factor - lam_end[1:rank]


def random_joint(seed, m_rows, m_cols):
    """
    Seeded random joint distribution.

    Normalized exponential draws; with probability SPARSE_PROBABILITY one
    entry is zeroed when that keeps every marginal positive.
    """
    rng = make_rng(seed)
    matrix = rng.exponential(size=(m_rows, m_cols))
    if rng.uniform() < SPARSE_PROBABILITY and m_rows * m_cols > 1:
        trial = matrix.copy()
        trial[rng.integers(m_rows), rng.integers(m_cols)] = 0.0
        if np.all(trial.sum(axis=1) > 0.0) and np.all(trial.sum(axis=0) > 0.0):
            matrix = trial
    return JointDistribution.fromMatrix(matrix / matrix.sum())


def random_kernel(seed, n_from, n_to):
    """Seeded random kernel P(to | from) with n_from columns and n_to rows."""
    rng = make_rng(seed)
    matrix = rng.exponential(size=(n_to, n_from))
    if rng.uniform() < SPARSE_PROBABILITY and n_to > 1:
        trial = matrix.copy()
        trial[rng.integers(n_to), rng.integers(n_from)] = 0.0
        if np.all(trial.sum(axis=1) > 0.0) and np.all(trial.sum(axis=0) > 0.0):
            matrix = trial
    return ConditionalKernel(Alphabet.ofSize(n_from), Alphabet.ofSize(n_to), matrix / matrix.sum(axis=0))


def random_decomposable_joint(seed, m_rows, m_cols):
    """Seeded joint made of two blocks with zero cross mass, rows and columns shuffled."""
    rng = make_rng(seed)
    split_rows = int(rng.integers(1, m_rows))
    split_cols = int(rng.integers(1, m_cols))
    weight = rng.uniform(0.1, 0.9)
    matrix = np.zeros((m_rows, m_cols))
    block = rng.exponential(size=(split_rows, split_cols))
    matrix[:split_rows, :split_cols] = weight * block / block.sum()
    block = rng.exponential(size=(m_rows - split_rows, m_cols - split_cols))
    matrix[split_rows:, split_cols:] = (1.0 - weight) * block / block.sum()
    matrix = matrix[rng.permutation(m_rows)][:, rng.permutation(m_cols)]
    return JointDistribution.fromMatrix(matrix / matrix.sum())


def degenerate_kernel(seed, alphabet, kind):
    """Identity, constant or permutation kernel on the given Y alphabet."""
    rng = make_rng(seed)
    size = len(alphabet)
    if kind == "identity":
        return ConditionalKernel.identity(alphabet)
    if kind == "constant":
        q = rng.dirichlet(np.ones(size))
        return ConditionalKernel.constant(alphabet, alphabet, q)
    if kind == "permutation":
        return ConditionalKernel(alphabet, alphabet, np.eye(size)[:, rng.permutation(size)])
    raise ValueError("unknown kernel kind {!r}".format(kind))


if __name__ == '__main__':
    joint = JointDistribution.fromMatrix([[1/3, 1/6], [1/6, 1/3]])
    kernel = ConditionalKernel(joint.col_alphabet, Alphabet.ofSize(2), [[0.9, 0.2], [0.1, 0.8]])
    triple = MarkovTriple(joint, kernel)
    assert product_identity_error(triple) < IDENTITY_TOL
    assert np.all(check_dpi(triple) >= SLACK_TOL)
    assert classical_dpi_gap(triple) >= -1e-9
    print(compose(triple).matrix)
