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

File: probcore.py
License: BSD 3-Clause
Description:
    Distribution algebra for pairs of discrete random variables.

    A joint distribution of X and Y is stored as the matrix
    P_XY(i, j) = Pr(X = x_i, Y = y_j). From it we get the marginals
    p_X = P_XY e and p_Y = P_XY^T e, the conditionals
    P_X|Y = P_XY P_Y^-1 and the normalized matrix

        P~_XY = P_X^-1/2 P_XY P_Y^-1/2

    whose singular values carry the correlation structure of (X, Y).

    All logarithms are base 2 (bits) and 0*log(0) = 0.
"""

from dataclasses import dataclass
from functools import reduce
import itertools
import sys

import numpy as np
from scipy.special import entr

TOTAL_MASS_TOL = 1e-12
SUPPORT_TOL = 1e-15
MAX_ALPHABET = 4096
LN2 = np.log(2.0)
RNG_ALGORITHM = "PCG64"

verbose = False


def verboseprint(*args):
    # Print each argument separately so caller doesn't need to
    # stuff everything to be printed into a single string
    if not verbose:
        return
    for arg in args:
        print(arg, end=" ", file=sys.stderr)
    print("", file=sys.stderr)


class ProbabilityModelError(ValueError):
    pass


class ZeroMassSymbol(ProbabilityModelError):
    pass


class SizeCapExceeded(ProbabilityModelError):
    pass


class AlphabetMismatch(ProbabilityModelError):
    pass


class InvariantViolation(ProbabilityModelError):
    pass


def make_rng(seed):
    # Explicit bit generator so that seeded runs replay identically
    return np.random.Generator(np.random.PCG64(seed))


def _frozen(matrix):
    matrix = np.array(matrix, dtype=float)
    matrix.setflags(write=False)
    return matrix


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of symbol labels. The order is the row/column order of every matrix."""
    symbols: tuple

    def __post_init__(self):
        symbols = tuple(str(s) for s in self.symbols)
        if len(symbols) < 1:
            raise InvariantViolation("an alphabet needs at least one symbol")
        if len(set(symbols)) != len(symbols):
            raise InvariantViolation("duplicate symbols in alphabet {}".format(symbols))
        if len(symbols) > MAX_ALPHABET:
            raise SizeCapExceeded("alphabet of {} symbols exceeds the cap of {}".format(len(symbols), MAX_ALPHABET))
        object.__setattr__(self, "symbols", symbols)

    @classmethod
    def ofSize(cls, n):
        return cls(tuple(str(i) for i in range(n)))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def index(self, label):
        try:
            return self.symbols.index(str(label))
        except ValueError:
            raise AlphabetMismatch("unknown symbol '{}' in alphabet {}".format(label, self.symbols))

    def subset(self, indices):
        return Alphabet(tuple(self.symbols[i] for i in indices))

    def product(self, other):
        # Lexicographic order, the same as the row order of np.kron
        return Alphabet(tuple(_join(pair) for pair in itertools.product(self.symbols, other.symbols)))

    def power(self, n):
        return Alphabet(tuple(_join(word) for word in itertools.product(self.symbols, repeat=n)))


def _join(word):
    if all(len(s) == 1 for s in word):
        return "".join(word)
    return ",".join(word)


def _check_size(shape):
    if max(shape) > MAX_ALPHABET:
        raise SizeCapExceeded("matrix of shape {} exceeds the cap of {} symbols per axis".format(shape, MAX_ALPHABET))


@dataclass(frozen=True, eq=False)
class JointDistribution:
    row_alphabet: Alphabet
    col_alphabet: Alphabet
    matrix: np.ndarray

    def __post_init__(self):
        matrix = _frozen(self.matrix)
        if matrix.ndim != 2 or matrix.shape != (len(self.row_alphabet), len(self.col_alphabet)):
            raise AlphabetMismatch("matrix of shape {} does not match alphabets of size {}x{}".format(
                matrix.shape, len(self.row_alphabet), len(self.col_alphabet)))
        _check_size(matrix.shape)
        if not np.all(np.isfinite(matrix)):
            raise InvariantViolation("joint distribution has non-finite entries")
        if np.any(matrix < 0.0):
            raise InvariantViolation("joint distribution has negative entries (min {})".format(matrix.min()))
        total = matrix.sum()
        if abs(total - 1.0) > TOTAL_MASS_TOL:
            raise InvariantViolation("joint distribution sums to {!r}, not 1".format(total))
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def fromMatrix(cls, matrix, row_labels=None, col_labels=None):
        matrix = np.asarray(matrix, dtype=float)
        rows = Alphabet(row_labels) if row_labels is not None else Alphabet.ofSize(matrix.shape[0])
        cols = Alphabet(col_labels) if col_labels is not None else Alphabet.ofSize(matrix.shape[1])
        return cls(rows, cols, matrix)

    @classmethod
    def unchecked(cls, matrix, row_labels=None, col_labels=None):
        # Skips the mass invariants, only for exercising the spectral checks
        # with matrices that are not distributions
        matrix = _frozen(matrix)
        joint = object.__new__(cls)
        rows = Alphabet(row_labels) if row_labels is not None else Alphabet.ofSize(matrix.shape[0])
        cols = Alphabet(col_labels) if col_labels is not None else Alphabet.ofSize(matrix.shape[1])
        object.__setattr__(joint, "row_alphabet", rows)
        object.__setattr__(joint, "col_alphabet", cols)
        object.__setattr__(joint, "matrix", matrix)
        return joint

    @property
    def shape(self):
        return self.matrix.shape

    def transpose(self):
        return JointDistribution(self.col_alphabet, self.row_alphabet, self.matrix.T)


@dataclass(frozen=True, eq=False)
class ConditionalKernel:
    """Column-stochastic matrix, entry (i, j) = P(to = i | from = j)."""
    from_alphabet: Alphabet
    to_alphabet: Alphabet
    matrix: np.ndarray

    def __post_init__(self):
        matrix = _frozen(self.matrix)
        if matrix.ndim != 2 or matrix.shape != (len(self.to_alphabet), len(self.from_alphabet)):
            raise AlphabetMismatch("kernel of shape {} does not match alphabets (to {}, from {})".format(
                matrix.shape, len(self.to_alphabet), len(self.from_alphabet)))
        _check_stochastic(matrix, "kernel")
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def identity(cls, alphabet):
        return cls(alphabet, alphabet, np.eye(len(alphabet)))

    @classmethod
    def constant(cls, from_alphabet, to_alphabet, q):
        q = np.asarray(q, dtype=float)
        return cls(from_alphabet, to_alphabet, np.tile(q[:, None], (1, len(from_alphabet))))

    @classmethod
    def deterministic(cls, from_alphabet, to_alphabet, mapping):
        # mapping: from-label -> to-label
        matrix = np.zeros((len(to_alphabet), len(from_alphabet)))
        for j, label in enumerate(from_alphabet):
            matrix[to_alphabet.index(mapping[label]), j] = 1.0
        return cls(from_alphabet, to_alphabet, matrix)


def _check_stochastic(matrix, what):
    _check_size(matrix.shape)
    if not np.all(np.isfinite(matrix)):
        raise InvariantViolation("{} has non-finite entries".format(what))
    if np.any(matrix < 0.0) or np.any(matrix > 1.0 + TOTAL_MASS_TOL):
        raise InvariantViolation("{} entries must lie in [0, 1]".format(what))
    deviation = np.max(np.abs(matrix.sum(axis=0) - 1.0))
    if deviation > TOTAL_MASS_TOL:
        raise InvariantViolation("{} columns must sum to 1 (max deviation {!r})".format(what, deviation))


@dataclass(frozen=True, eq=False)
class ChannelModel:
    """
    Discrete memoryless multiple access channel p(y | x1, x2).

    transition has |Y| rows and |X1|*|X2| columns in x1-major order:
    (x1_0, x2_0), (x1_0, x2_1), ..., (x1_1, x2_0), ...
    """
    x1_alphabet: Alphabet
    x2_alphabet: Alphabet
    y_alphabet: Alphabet
    transition: np.ndarray

    def __post_init__(self):
        transition = _frozen(self.transition)
        expected = (len(self.y_alphabet), len(self.x1_alphabet) * len(self.x2_alphabet))
        if transition.shape != expected:
            raise AlphabetMismatch("transition of shape {} does not match {}".format(transition.shape, expected))
        _check_stochastic(transition, "channel transition")
        object.__setattr__(self, "transition", transition)

    @classmethod
    def fromFunction(cls, x1_alphabet, x2_alphabet, y_alphabet, law):
        # law(x1_label, x2_label) -> sequence of probabilities over y_alphabet
        columns = [np.asarray(law(a, b), dtype=float) for a in x1_alphabet for b in x2_alphabet]
        return cls(x1_alphabet, x2_alphabet, y_alphabet, np.column_stack(columns))

    @property
    def input_alphabet(self):
        return self.x1_alphabet.product(self.x2_alphabet)


def marginals(joint):
    return (joint.matrix.sum(axis=1), joint.matrix.sum(axis=0))


def strip_zero_mass(joint):
    p_x, p_y = marginals(joint)
    rows = np.flatnonzero(p_x > 0.0)
    cols = np.flatnonzero(p_y > 0.0)
    if len(rows) == len(p_x) and len(cols) == len(p_y):
        return joint
    return JointDistribution(joint.row_alphabet.subset(rows), joint.col_alphabet.subset(cols),
                             joint.matrix[np.ix_(rows, cols)])


def _require_positive(p, alphabet, axis_name):
    zero = np.flatnonzero(p <= 0.0)
    if len(zero) > 0:
        labels = [alphabet.symbols[i] for i in zero]
        raise ZeroMassSymbol("{} symbols {} have zero probability, apply strip_zero_mass first".format(axis_name, labels))


def conditional(joint, given="col"):
    """
    Conditional kernel of one variable given the other.

    Args:
        joint: the JointDistribution P_XY
        given: "col" for P_X|Y = P_XY P_Y^-1, "row" for P_Y|X

    Raises:
        ZeroMassSymbol: if a conditioning symbol has zero probability
    """
    p_x, p_y = marginals(joint)
    if given == "col":
        _require_positive(p_y, joint.col_alphabet, "column")
        return ConditionalKernel(joint.col_alphabet, joint.row_alphabet, _normalize_columns(joint.matrix / p_y))
    if given == "row":
        _require_positive(p_x, joint.row_alphabet, "row")
        return ConditionalKernel(joint.row_alphabet, joint.col_alphabet, _normalize_columns(joint.matrix.T / p_x))
    raise ValueError("given must be 'row' or 'col', not {!r}".format(given))


def _normalize_columns(matrix):
    # Division by the marginal leaves column sums off by a few ulps
    return matrix / matrix.sum(axis=0)


def tilde(joint):
    p_x, p_y = marginals(joint)
    _require_positive(p_x, joint.row_alphabet, "row")
    _require_positive(p_y, joint.col_alphabet, "column")
    return joint.matrix / np.sqrt(np.outer(p_x, p_y))


def kron_power(joint, n):
    if int(n) != n or n < 1:
        raise ValueError("Kronecker power needs a positive integer, got {!r}".format(n))
    n = int(n)
    m_rows, m_cols = joint.shape
    if m_rows ** n > MAX_ALPHABET or m_cols ** n > MAX_ALPHABET:
        raise SizeCapExceeded("{}x{} to the power {} exceeds the cap of {} symbols per axis".format(
            m_rows, m_cols, n, MAX_ALPHABET))
    if n == 1:
        return joint
    matrix = reduce(np.kron, [joint.matrix] * n)
    return JointDistribution(joint.row_alphabet.power(n), joint.col_alphabet.power(n), matrix)


def entropy(p):
    return float(np.sum(entr(np.asarray(p, dtype=float))) / LN2)


def joint_entropy(joint):
    return entropy(joint.matrix.ravel())


def conditional_entropy(joint, given="col"):
    p_x, p_y = marginals(joint)
    return joint_entropy(joint) - entropy(p_y if given == "col" else p_x)


def mutual_information(joint):
    p_x, p_y = marginals(joint)
    return entropy(p_x) + entropy(p_y) - joint_entropy(joint)


def product_distribution(p_x, p_y, row_alphabet=None, col_alphabet=None):
    p_x = np.asarray(p_x, dtype=float)
    p_y = np.asarray(p_y, dtype=float)
    rows = row_alphabet if row_alphabet is not None else Alphabet.ofSize(len(p_x))
    cols = col_alphabet if col_alphabet is not None else Alphabet.ofSize(len(p_y))
    return JointDistribution(rows, cols, np.outer(p_x, p_y))


def output_entropies(transition):
    # H(Y | composite input = x) for every column of the transition matrix
    return np.sum(entr(transition), axis=0) / LN2


def composite_mutual_information(p, transition, h_out=None):
    """I(X;Y) for an input vector p over the composite alphabet (vectorized over leading axes of p)."""
    if h_out is None:
        h_out = output_entropies(transition)
    q = p @ transition.T
    return np.sum(entr(q), axis=-1) / LN2 - p @ h_out


def channel_mutual_information(joint, channel):
    if joint.row_alphabet != channel.x1_alphabet or joint.col_alphabet != channel.x2_alphabet:
        raise AlphabetMismatch("input alphabets {}x{} do not match the channel inputs {}x{}".format(
            joint.row_alphabet.symbols, joint.col_alphabet.symbols,
            channel.x1_alphabet.symbols, channel.x2_alphabet.symbols))
    # Row-major flattening is the x1-major composite order
    return float(composite_mutual_information(joint.matrix.ravel(), channel.transition))


def induced_input(source, encoder1, encoder2):
    """p(x1, x2) = sum_uv p(u, v) p(x1 | u) p(x2 | v)"""
    if encoder1.from_alphabet != source.row_alphabet or encoder2.from_alphabet != source.col_alphabet:
        raise AlphabetMismatch("encoders must read the source alphabets {} and {}".format(
            source.row_alphabet.symbols, source.col_alphabet.symbols))
    matrix = encoder1.matrix @ source.matrix @ encoder2.matrix.T
    return JointDistribution(encoder1.to_alphabet, encoder2.to_alphabet, matrix / matrix.sum())


if __name__ == '__main__':
    joint = JointDistribution.fromMatrix([[1/3, 1/6], [1/6, 1/3]])
    (p_x, p_y) = marginals(joint)
    assert np.allclose(p_x, [0.5, 0.5]) and np.allclose(p_y, [0.5, 0.5])
    assert np.allclose(tilde(joint), [[2/3, 1/3], [1/3, 2/3]])
    assert abs(joint_entropy(joint) - 1.918) < 1e-3
    assert abs(kron_power(joint, 2).matrix.sum() - 1.0) < 1e-12
    print(mutual_information(joint))
