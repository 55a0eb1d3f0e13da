#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
File: property_suites.py
License: BSD 3-Clause
Description:
    Seeded property suites over the spectral results: the singular value
    structure of valid joints, the spectral data processing inequality,
    the spectrum of i.i.d. pairs, block decomposition and the
    asymptotic construction. Every record names the seed that produced
    it so a failure can be replayed alone.
"""

from dataclasses import dataclass, field

import numpy as np

from asymptotic import construct_near_decomposable, verify_theorem3, witness_matches
from dpi import (IDENTITY_TOL, SLACK_TOL, MarkovTriple, check_dpi, check_dpi_outer, classical_dpi_gap,
                 degenerate_kernel, product_identity_error, random_decomposable_joint, random_joint,
                 random_kernel)
from probcore import kron_power, make_rng, tilde, verboseprint
from spectral import (STRUCTURE_TOL, detect_decomposition, kron_power_spectrum, lambda2, svd_small,
                      verify_theorem1, verify_theorem1_converse)

KERNEL_SEED_OFFSET = 1 << 32
SPECTRUM_TOL = 1e-8
MULTIPLICITY_TOL = 1e-10
DECOMPOSITION_TOL = 1e-8
PERTURBATION_TOL = 1e-12
# The construction must come within APPROACH_TOL of a decomposable source by n = APPROACH_N
APPROACH_N = 8
APPROACH_TOL = 0.02


@dataclass
class SuiteResult:
    name: str
    total: int = 0
    passed: int = 0
    worst_value: float = float("nan")
    worst_seed: int = -1
    failures: list = field(default_factory=list)

    def record(self, seed, ok, value, worse):
        # worse(a, b) is True when a is a worse value than b
        self.total += 1
        if ok:
            self.passed += 1
        else:
            self.failures.append(seed)
        if self.worst_seed < 0 or worse(value, self.worst_value):
            self.worst_value = float(value)
            self.worst_seed = seed

    @property
    def ok(self):
        return self.passed == self.total


def _lower(a, b):
    return a < b


def _higher(a, b):
    return a > b


def _shape(seed, low, high):
    rng = make_rng(seed)
    return (int(rng.integers(low, high + 1)), int(rng.integers(low, high + 1)))


def run_theorem1_suite(seeds):
    result = SuiteResult("theorem1")
    for seed in seeds:
        (m_rows, m_cols) = _shape(seed, 2, 6)
        report = verify_theorem1(random_joint(seed, m_rows, m_cols))
        (marginal_error, _, _) = verify_theorem1_converse(seed, m_rows, m_cols)
        deviation = max(report.lambda1_deviation, report.principal_left_deviation,
                        report.principal_right_deviation, report.max_excess)
        ok = report.is_valid_joint and marginal_error <= IDENTITY_TOL
        result.record(seed, ok, max(deviation, marginal_error), _higher)
    verboseprint("theorem1: {}/{}".format(result.passed, result.total))
    return result


def dpi_triple(seed, max_alphabet=5):
    """Markov triple for one seed; seeds ending in 0, 1, 2 use identity, constant, permutation kernels."""
    rng = make_rng(seed)
    (m_x, m_y, m_z) = (int(n) for n in rng.integers(2, max_alphabet + 1, size=3))
    joint = random_joint(seed, m_x, m_y)
    kind = {0: "identity", 1: "constant", 2: "permutation"}.get(seed % 10)
    if kind is not None:
        kernel = degenerate_kernel(seed, joint.col_alphabet, kind)
    else:
        kernel = random_kernel(seed + KERNEL_SEED_OFFSET, m_y, m_z)
    return MarkovTriple(joint, kernel)


def run_dpi_suite(seeds, max_alphabet=5):
    result = SuiteResult("dpi")
    for seed in seeds:
        triple = dpi_triple(seed, max_alphabet)
        slack = np.concatenate([check_dpi(triple), check_dpi_outer(triple), [classical_dpi_gap(triple)]])
        min_slack = float(slack.min())
        ok = min_slack >= SLACK_TOL and product_identity_error(triple) <= IDENTITY_TOL
        result.record(seed, ok, min_slack, _lower)
    verboseprint("dpi: {}/{}".format(result.passed, result.total))
    return result


def run_iid_suite(seeds):
    result = SuiteResult("iid")
    for seed in seeds:
        (m_rows, m_cols) = _shape(seed, 2, 3)
        joint = random_joint(seed, m_rows, m_cols)
        lam2 = lambda2(joint)
        error = 0.0
        ok = True
        for n in (1, 2, 3):
            predicted = kron_power_spectrum(joint, n)
            computed = svd_small(tilde(kron_power(joint, n))).singular_values
            error = max(error, float(np.max(np.abs(predicted - computed))))
            ok = ok and bool(np.all(np.abs(predicted[1:n + 1] - lam2) <= MULTIPLICITY_TOL))
            ok = ok and bool(np.all(np.abs(computed[1:n + 1] - lam2) <= SPECTRUM_TOL))
        ok = ok and error <= SPECTRUM_TOL
        result.record(seed, ok, error, _higher)
    verboseprint("iid: {}/{}".format(result.passed, result.total))
    return result


def run_decomposition_suite(seeds):
    result = SuiteResult("decomposition")
    for seed in seeds:
        (m_rows, m_cols) = _shape(seed, 2, 5)
        if seed % 2 == 0:
            joint = random_decomposable_joint(seed, m_rows, m_cols)
        else:
            joint = random_joint(seed, m_rows, m_cols)
        distance = abs(lambda2(joint) - 1.0)
        ok = (detect_decomposition(joint) is not None) == (distance <= DECOMPOSITION_TOL)
        result.record(seed, ok, distance, _lower)
    verboseprint("decomposition: {}/{}".format(result.passed, result.total))
    return result


def run_appendix_suite(p_u, p_x1, s1=None, n_max=8, approach_tol=APPROACH_TOL):
    """
    Construction sweep for n = 1 .. n_max, one record per block length.

    A row passes when its certificate holds every bound, P' splits along
    (S1, S2) and the running maximum of lambda_2 has not dropped. The row
    at n = APPROACH_N also needs 1 - running_max < approach_tol.
    """
    result = SuiteResult("appendix")
    previous = 0.0
    for row in verify_theorem3(p_x1, s1, p_u, n_max):
        cert = row.certificate
        (_, joint_prime, _) = construct_near_decomposable(p_x1, s1, p_u, row.n)
        ok = (cert.gap_ok
              and cert.frobenius_ok
              and cert.perturbation_gap <= cert.perturbation_norm + PERTURBATION_TOL
              and abs(cert.lambda2_Pprime - 1.0) <= STRUCTURE_TOL
              and row.lambda2_actual >= row.lower_bound - 1e-9
              and row.running_max >= previous
              and witness_matches(joint_prime, cert))
        if row.n == APPROACH_N:
            ok = ok and 1.0 - row.running_max < approach_tol
        previous = row.running_max
        result.record(cert.n, ok, 1.0 - row.lambda2_actual, _higher)
    return result


if __name__ == '__main__':
    for suite in (run_theorem1_suite(range(20)), run_dpi_suite(range(20)), run_iid_suite(range(5)),
                  run_decomposition_suite(range(20))):
        assert suite.ok, suite
        print(suite)
