#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
File: spectral_symbolic.py
License: BSD 3-Clause
Description:
    Derivation of the second singular value of P~ for a 2x2 joint
    P = [[p00, p01], [p10, p11]].

    Since the largest singular value is 1, the product of the two singular
    values is |det(P~)| and therefore

        lambda_2 = |p00 p11 - p01 p10| / sqrt(p0. p1. p.0 p.1)

    The binary grid of the constrained upper bound relies on this form
    (bounds.lambda2_binary). Run the script to print it.
"""

from functools import lru_cache

from sympy import Abs, Matrix, Rational, Symbol, diag, expand, factor, simplify, sqrt


@lru_cache(maxsize=None)
def derive_lambda2_2x2():
    p00 = Symbol("p00", positive=True)
    p01 = Symbol("p01", positive=True)
    p10 = Symbol("p10", positive=True)
    p11 = Symbol("p11", positive=True)

    P = Matrix([[p00, p01], [p10, p11]])
    r0 = p00 + p01
    r1 = p10 + p11
    c0 = p00 + p10
    c1 = p01 + p11
    P_tilde = diag(1 / sqrt(r0), 1 / sqrt(r1)) * P * diag(1 / sqrt(c0), 1 / sqrt(c1))

    # 1 must be an eigenvalue of P~ P~^T once the entries sum to one
    gram = P_tilde * P_tilde.T
    total = {p11: 1 - p00 - p01 - p10}
    char_at_one = simplify(expand((gram - Matrix.eye(2)).det().subs(total)))

    det_tilde = factor(simplify(P_tilde.det()))
    lambda2 = Abs(p00 * p11 - p01 * p10) / sqrt(r0 * r1 * c0 * c1)
    return {
        "symbols": (p00, p01, p10, p11),
        "P_tilde": P_tilde,
        "char_at_one": char_at_one,
        "det_tilde": det_tilde,
        "lambda2": lambda2,
    }


def lambda2_exact(matrix):
    """lambda_2 of a 2x2 joint given with rational entries, as an exact sympy number."""
    derivation = derive_lambda2_2x2()
    entries = [Rational(x) for row in matrix for x in row]
    return simplify(derivation["lambda2"].subs(dict(zip(derivation["symbols"], entries))))


if __name__ == '__main__':
    derivation = derive_lambda2_2x2()
    print("# P~ = P_X^-1/2 P P_Y^-1/2")
    print("P_tilde = {}".format(derivation["P_tilde"]))
    print("det(P~ P~^T - I) on the simplex = {}".format(derivation["char_at_one"]))
    print("det(P~) = {}".format(derivation["det_tilde"]))
    print("")
    print("# Algorithm")
    print("lambda2 = {}".format(derivation["lambda2"]))
    print("")
    for matrix in ([["1/3", "1/6"], ["1/6", "1/3"]], [["0", "1/10"], ["1/10", "4/5"]]):
        print("lambda2({}) = {}".format(matrix, lambda2_exact(matrix)))
