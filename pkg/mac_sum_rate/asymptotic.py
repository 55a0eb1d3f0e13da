#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
    Copyright (c) 2024 the mac_sum_rate authors
    Redistribution and use in source and binary forms, with or without
    modification, are permitted provided that the following conditions
    are met:

    1. Redistributions of source code must retain the above copyright
    notice, this list of conditions and the following disclaimer.
    2. Redistributions in binary form must reproduce the above copyright
    notice, this list of conditions and the following disclaimer in
    the documentation and/or other materials provided with the
    distribution.
    3. Neither the name of the copyright holder nor the names of its
    contributors may be used to endorse or promote products derived from
    this software without specific prior written permission.

    THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS
    "AS IS" AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT
    LIMITED TO, THE IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS
    FOR A PARTICULAR PURPOSE ARE DISCLAIMED. IN NO EVENT SHALL THE
    COPYRIGHT OWNER OR CONTRIBUTORS BE LIABLE FOR ANY DIRECT, INDIRECT,
    INCIDENTAL, SPECIAL, EXEMPLARY, OR CONSEQUENTIAL DAMAGES (INCLUDING,
    BUT NOT LIMITED TO, PROCUREMENT OF SUBSTITUTE GOODS OR SERVICES; LOSS
    OF USE, DATA, OR PROFITS; OR BUSINESS INTERRUPTION) HOWEVER CAUSED
    AND ON ANY THEORY OF LIABILITY, WHETHER IN CONTRACT, STRICT
    LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE) ARISING IN
    ANY WAY OUT OF THE USE OF THIS SOFTWARE, EVEN IF ADVISED OF THE
    POSSIBILITY OF SUCH DAMAGE.

File: asymptotic.py
License: BSD 3-Clause
Description:
    Joints of X1 and U^n that decompose in the limit n -> inf.

    Starting from the independent joint P^i = p_X1 (p_U^n)^T, pick S1 in
    the alphabet of X1 and S2 in the alphabet of U^n with
    b = P(S2) >= a = P(S1) as close as possible, and rescale the blocks

        P = [[P11^i / b,                    0            ],
             [P21^i (b-a) / ((1-a) b),      P22^i / (1-a)]]

    P keeps both marginals. Moving the mass of the lower left block up gives
    the block diagonal P' = P + E with P'11 = P11^i / a, which decomposes.
    With x = p_max^(n/2) and

        c1 = 1 / (min(a, 1-a) b)      c2 = sqrt((1-a) / (1-b)) c1
        c3 = 1 / sqrt(a)              c4 = 1 / sqrt(1-a)

    the second singular value of P~ satisfies
    (1 - c4 x)(1 - c2 x) <= lambda_2(P~) <= 1. When b < a both sets are
    replaced by their complements, which restores b >= a.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np

from probcore import (Alphabet, JointDistribution, MAX_ALPHABET, ProbabilityModelError, SizeCapExceeded,
                      ZeroMassSymbol, InvariantViolation, TOTAL_MASS_TOL, induced_input, kron_power,
                      strip_zero_mass, verboseprint)
from spectral import detect_decomposition, lambda2, profile_of, svd_small

GAP_IMPROVEMENT_TOL = 1e-15


class DegenerateSplit(ProbabilityModelError):
    pass


@dataclass(frozen=True)
class ConstructionCertificate:
    n: int
    p_max: float
    gap: float
    c1: float
    c2: float
    c3: float
    c4: float
    lower_bound: float
    lambda2_P: float
    lambda2_Pprime: float
    s1: tuple = ()
    s2: tuple = ()
    mirrored: bool = False
    lower_bound_strong: float = 0.0
    error_frobenius: float = 0.0
    error_spectral: float = 0.0
    perturbation_gap: float = 0.0
    perturbation_norm: float = 0.0

    @property
    def gap_ok(self):
        return self.gap <= self.p_max ** self.n + GAP_IMPROVEMENT_TOL

    @property
    def frobenius_ok(self):
        return self.error_frobenius <= self.c1 * self.p_max ** self.n + 1e-12


@dataclass(frozen=True)
class ConstructionRow:
    n: int
    lower_bound: float
    lambda2_actual: float
    running_max: float
    certificate: ConstructionCertificate


def _probability_vector(p, name):
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or len(p) < 1 or not np.all(np.isfinite(p)):
        raise InvariantViolation("{} must be a finite probability vector".format(name))
    if np.any(p < 0.0) or abs(p.sum() - 1.0) > TOTAL_MASS_TOL:
        raise InvariantViolation("{} must be nonnegative and sum to 1 (sum {!r})".format(name, p.sum()))
    if np.any(p == 0.0):
        raise ZeroMassSymbol("{} has zero-probability atoms {}".format(name, np.flatnonzero(p == 0.0).tolist()))
    return p


def _best_move(p, chosen, total, target):
    gap = abs(total - target)
    inside = np.flatnonzero(chosen)
    outside = np.flatnonzero(~chosen)
    best_gap = gap - GAP_IMPROVEMENT_TOL
    best = None

    # Never empty or fill the set completely
    if len(outside) > 1:
        gaps = np.abs(total + p[outside] - target)
        k = int(np.argmin(gaps))
        if gaps[k] < best_gap:
            (best_gap, best) = (gaps[k], ([], [outside[k]]))
    if len(inside) > 1:
        gaps = np.abs(total - p[inside] - target)
        k = int(np.argmin(gaps))
        if gaps[k] < best_gap:
            (best_gap, best) = (gaps[k], ([inside[k]], []))
    if len(inside) > 0 and len(outside) > 0:
        order = np.argsort(p[outside], kind="stable")
        values = p[outside][order]
        wanted = target - total + p[inside]
        position = np.searchsorted(values, wanted)
        for k in (np.clip(position - 1, 0, len(values) - 1), np.clip(position, 0, len(values) - 1)):
            gaps = np.abs(total - p[inside] + values[k] - target)
            i = int(np.argmin(gaps))
            if gaps[i] < best_gap:
                (best_gap, best) = (gaps[i], ([inside[i]], [outside[order[k[i]]]]))

    if best is None:
        return None
    chosen = chosen.copy()
    chosen[best[0]] = False
    chosen[best[1]] = True
    return chosen


def greedy_subset(p, target):
    """
    Subset of atoms whose mass is close to target.

    Fill with the atoms in descending order while they fit, then apply single
    additions, removals and swaps while they shrink the gap. The gap never
    exceeds the largest atom.

    Returns:
        (indices, gap): sorted index tuple of the subset and |P(subset) - target|
    """
    p = np.asarray(p, dtype=float)
    if not 0.0 < target < 1.0:
        raise ValueError("target must lie in (0, 1), got {!r}".format(target))
    chosen = np.zeros(len(p), dtype=bool)
    total = 0.0
    for i in np.argsort(-p, kind="stable"):
        if total + p[i] <= target:
            chosen[i] = True
            total += p[i]
    total = float(p[chosen].sum())

    for _ in range(len(p)):
        improved = _best_move(p, chosen, total, target)
        if improved is None:
            break
        chosen = improved
        total = float(p[chosen].sum())
    return (tuple(int(i) for i in np.flatnonzero(chosen)), abs(total - target))


def default_s1(p_x1):
    return (int(np.argmax(p_x1)),)


def _power_marginal(p_u, n):
    if len(p_u) ** n > MAX_ALPHABET:
        raise SizeCapExceeded("|U|^n = {}^{} exceeds the cap of {} symbols".format(len(p_u), n, MAX_ALPHABET))
    return reduce(np.kron, [p_u] * n)


def construct_near_decomposable(p_x1, s1, p_u, n):
    """
    Block-rescaled joint P of X1 and U^n, its decomposable neighbour P' and the certificate.

    Args:
        p_x1: marginal of X1
        s1: indices of S1 in the alphabet of X1, None for the largest atom
        p_u: marginal of one letter of U, every atom in (0, 1)
        n: block length

    Raises:
        DegenerateSplit: if P(S1) or the chosen P(S2) is 0 or 1
        InvariantViolation: if S1 repeats an index or leaves the alphabet of X1
        SizeCapExceeded: if |U|^n exceeds the alphabet cap
    """
    p_x1 = _probability_vector(p_x1, "p_X1")
    p_u = _probability_vector(p_u, "p_U")
    if int(n) != n or n < 1:
        raise ValueError("block length must be a positive integer, got {!r}".format(n))
    n = int(n)
    s1 = default_s1(p_x1) if s1 is None else tuple(sorted(int(i) for i in s1))
    if any(not 0 <= i < len(p_x1) for i in s1) or len(set(s1)) != len(s1):
        raise InvariantViolation("S1 = {} must be distinct indices into the {} symbols of X1".format(s1, len(p_x1)))
    if len(s1) in (0, len(p_x1)):
        raise DegenerateSplit("S1 = {} is not a proper subset of the alphabet of X1".format(s1))
    p_un = _power_marginal(p_u, n)

    in_s1 = np.zeros(len(p_x1), dtype=bool)
    in_s1[list(s1)] = True
    a = float(p_x1[in_s1].sum())
    if not 0.0 < a < 1.0:
        raise DegenerateSplit("P(S1) = {!r} leaves nothing to split".format(a))
    (s2, gap) = greedy_subset(p_un, a)
    in_s2 = np.zeros(len(p_un), dtype=bool)
    in_s2[list(s2)] = True
    b = float(p_un[in_s2].sum())
    if not 0.0 < b < 1.0:
        raise DegenerateSplit("no proper subset of U^n comes close to P(S1) = {!r}".format(a))

    mirrored = b < a
    (rows, cols) = (~in_s1, ~in_s2) if mirrored else (in_s1, in_s2)
    if mirrored:
        (a, b) = (1.0 - a, 1.0 - b)
    verboseprint("n={}: P(S1)={:.6f} P(S2)={:.6f} gap={:.3e} mirrored={}".format(n, a, b, gap, mirrored))

    independent = np.outer(p_x1, p_un)
    r = rows[:, None]
    c = cols[None, :]
    scale = np.where(r & c, 1.0 / b,
                     np.where(r, 0.0,
                              np.where(c, (b - a) / ((1.0 - a) * b), 1.0 / (1.0 - a))))
    p = independent * scale
    e = np.where(r & c, independent * (b - a) / (a * b), np.where(c, -p, 0.0))
    p_prime = p + e

    x_alphabet = Alphabet.ofSize(len(p_x1))
    u_alphabet = Alphabet.ofSize(len(p_u)).power(n)
    joint = JointDistribution(x_alphabet, u_alphabet, p / p.sum())
    joint_prime = JointDistribution(x_alphabet, u_alphabet, p_prime / p_prime.sum())

    p_max = float(p_u.max())
    c1 = 1.0 / (min(a, 1.0 - a) * b)
    c2 = np.sqrt((1.0 - a) / (1.0 - b)) * c1
    c3 = 1.0 / np.sqrt(a)
    c4 = 1.0 / np.sqrt(1.0 - a)
    x = p_max ** (n / 2.0)
    lower_bound = max(0.0, 1.0 - c4 * x) * max(0.0, 1.0 - c2 * x)
    lower_bound_strong = max(0.0, 1.0 - c4 * x) * max(0.0, 1.0 - c2 * p_max ** n)

    # Normalized error term and the marginal rescaling M of X1
    normalized_error = e / np.sqrt(np.outer(p_x1, p_un))
    m_diag = joint_prime.matrix.sum(axis=1) / p_x1
    scaled_tilde = (joint.matrix / np.sqrt(np.outer(p_x1, p_un))) / np.sqrt(m_diag)[:, None]
    lam_scaled = svd_small(scaled_tilde).singular_values
    lam_prime = profile_of(joint_prime).singular_values

    certificate = ConstructionCertificate(
        n=n, p_max=p_max, gap=float(gap), c1=float(c1), c2=float(c2), c3=float(c3), c4=float(c4),
        lower_bound=float(lower_bound),
        lambda2_P=lambda2(joint),
        lambda2_Pprime=float(lam_prime[1]) if len(lam_prime) > 1 else 0.0,
        s1=s1, s2=s2, mirrored=bool(mirrored),
        lower_bound_strong=float(lower_bound_strong),
        error_frobenius=float(np.linalg.norm(normalized_error)),
        error_spectral=float(svd_small(normalized_error).singular_values[0]),
        perturbation_gap=float(np.max(np.abs(lam_prime - lam_scaled))),
        perturbation_norm=float(svd_small(normalized_error / np.sqrt(m_diag)[:, None]).singular_values[0]))
    return (joint, joint_prime, certificate)


def witness_matches(joint_prime, certificate):
    """True if the decomposition found in P' is the split (S1, S2), up to taking complements."""
    witness = detect_decomposition(joint_prime)
    if witness is None:
        return False
    (m_rows, m_cols) = joint_prime.shape
    s1 = set(certificate.s1)
    s2 = set(certificate.s2)
    complement = (set(range(m_rows)) - s1, set(range(m_cols)) - s2)
    return (set(witness[0]), set(witness[1])) in ((s1, s2), complement)


def verify_theorem3(p_x1, s1, p_u, n_max):
    """
    Run the construction for n = 1 .. n_max.

    Returns:
        list of ConstructionRow; running_max is the best lambda_2(P~) seen up to n,
        which is what approaches 1 as p_max^(n/2) -> 0
    """
    p_u = np.asarray(p_u, dtype=float)
    if p_u.max() >= 1.0:
        raise DegenerateSplit("U is deterministic, there is nothing to approach")
    rows = []
    running_max = 0.0
    for n in range(1, int(n_max) + 1):
        (_, _, cert) = construct_near_decomposable(p_x1, s1, p_u, n)
        running_max = max(running_max, cert.lambda2_P)
        rows.append(ConstructionRow(n, cert.lower_bound, cert.lambda2_P, running_max, cert))
    return rows


def attach_independent(joint, p_u):
    """Joint of X and (Y, U) with U independent of both; the normalized spectrum is unchanged."""
    p_u = _probability_vector(p_u, "p_U")
    matrix = np.kron(joint.matrix, p_u[None, :])
    return JointDistribution(joint.row_alphabet, joint.col_alphabet.product(Alphabet.ofSize(len(p_u))), matrix)


def necessary_condition_chain(p_uv, n, encoder1, encoder2):
    """
    Spectral chain along X1 -> U^n -> V^n -> X2 for block encoders.

    Args:
        p_uv: single-letter source joint
        n: block length
        encoder1: ConditionalKernel from the alphabet of U^n to X1
        encoder2: ConditionalKernel from the alphabet of V^n to X2

    Returns:
        (slack, factors): slack_i = lambda_2(X1;U^n) lambda_2(U;V) lambda_2(V^n;X2)
        - lambda_i(P~_X1X2) for i >= 2, and the three factors
    """
    block = kron_power(p_uv, n)
    (p_un, p_vn) = (block.matrix.sum(axis=1), block.matrix.sum(axis=0))
    x1_un = JointDistribution(encoder1.to_alphabet, encoder1.from_alphabet, encoder1.matrix * p_un[None, :])
    vn_x2 = JointDistribution(encoder2.from_alphabet, encoder2.to_alphabet, (encoder2.matrix * p_vn[None, :]).T)
    factors = (lambda2(strip_zero_mass(x1_un)), lambda2(p_uv), lambda2(strip_zero_mass(vn_x2)))
    inputs = strip_zero_mass(induced_input(block, encoder1, encoder2))
    lam = profile_of(inputs).singular_values
    return (np.prod(factors) - lam[1:], factors)


def perturbation_gap(a, a_prime):
    """
    Returns:
        (max_i |lambda_i(A') - lambda_i(A)|, ||A' - A||_2); the first never exceeds the second
    """
    lam = svd_small(a).singular_values
    lam_prime = svd_small(a_prime).singular_values
    norm = svd_small(np.asarray(a_prime, dtype=float) - np.asarray(a, dtype=float)).singular_values[0]
    return (float(np.max(np.abs(lam_prime - lam))), float(norm))


def scaling_ratio_bounds(a, scale, rank_tol=1e-10):
    """
    Ratios lambda_i(S A) / lambda_i(A) for an invertible S, with the bracket
    [||S^-1||_2^-1, ||S||_2] they must fall in.
    """
    scale = np.asarray(scale, dtype=float)
    if scale.ndim == 1:
        scale = np.diag(scale)
    lam = svd_small(a).singular_values
    lam_scaled = svd_small(scale @ np.asarray(a, dtype=float)).singular_values
    kept = lam > rank_tol
    lower = 1.0 / svd_small(np.linalg.inv(scale)).singular_values[0]
    upper = svd_small(scale).singular_values[0]
    return (lam_scaled[kept] / lam[kept], float(lower), float(upper))


if __name__ == '__main__':
    assert greedy_subset([0.5, 0.25, 0.25], 0.5) == ((0,), 0.0)
    (joint, joint_prime, cert) = construct_near_decomposable([0.3, 0.7], (0,), [0.6, 0.4], 2)
    assert cert.gap_ok and cert.frobenius_ok
    assert abs(cert.lambda2_Pprime - 1.0) < 1e-8
    assert cert.lower_bound <= cert.lambda2_P <= 1.0 + 1e-8
    for row in verify_theorem3([0.3, 0.7], None, [0.6, 0.4], 8):
        print(row.n, row.lower_bound, row.lambda2_actual)
