"""
File: probcore_test.py
License: BSD 3-Clause
Description:
    Distribution algebra: validation, marginals, P~, Kronecker powers and
    the information measures in bits.
"""

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from probcore import (Alphabet, AlphabetMismatch, ChannelModel, ConditionalKernel, InvariantViolation,
                      JointDistribution, SizeCapExceeded, ZeroMassSymbol, channel_mutual_information,
                      conditional, conditional_entropy, entropy, induced_input, joint_entropy, kron_power,
                      marginals, mutual_information, product_distribution, strip_zero_mass, tilde)

SOURCE_1 = [[1/3, 1/6], [1/6, 1/3]]
SOURCE_2 = [[0.0, 0.1], [0.1, 0.8]]
SOURCE_3 = [[0.0, 0.85], [0.1, 0.05]]
BINARY = Alphabet(("0", "1"))

positive_joints = arrays(np.float64, st.tuples(st.integers(2, 4), st.integers(2, 4)),
                         elements=st.floats(min_value=0.01, max_value=1.0))


def adder_channel():
    # Y = 1 for (1, 1), Y = 0 for (0, 0), a fair coin otherwise
    return ChannelModel(BINARY, BINARY, Alphabet(("1", "0")), [[0.0, 0.5, 0.5, 1.0], [1.0, 0.5, 0.5, 0.0]])


def normalized(matrix):
    return JointDistribution.fromMatrix(matrix / matrix.sum())


def test_alphabet_rejects_duplicates_and_empty():
    with pytest.raises(InvariantViolation):
        Alphabet(("a", "a"))
    with pytest.raises(InvariantViolation):
        Alphabet(())
    with pytest.raises(AlphabetMismatch):
        BINARY.index("2")


def test_alphabet_product_follows_kron_order():
    assert BINARY.product(BINARY).symbols == ("00", "01", "10", "11")
    assert Alphabet(("a", "bc")).power(2).symbols == ("aa", "a,bc", "bc,a", "bc,bc")


@pytest.mark.parametrize("matrix", [
    [[0.5, 0.5], [0.5, 0.5]],
    [[-0.1, 0.6], [0.25, 0.25]],
    [[np.nan, 0.5], [0.25, 0.25]],
])
def test_joint_rejects_invalid_mass(matrix):
    with pytest.raises(InvariantViolation):
        JointDistribution.fromMatrix(matrix)


def test_joint_rejects_shape_mismatch():
    with pytest.raises(AlphabetMismatch):
        JointDistribution(BINARY, Alphabet.ofSize(3), np.full((2, 2), 0.25))


def test_joint_matrix_is_read_only():
    joint = JointDistribution.fromMatrix(SOURCE_1)
    with pytest.raises(ValueError):
        joint.matrix[0, 0] = 1.0


def test_size_cap():
    with pytest.raises(SizeCapExceeded):
        Alphabet.ofSize(5000)
    with pytest.raises(SizeCapExceeded):
        kron_power(JointDistribution.fromMatrix(np.full((3, 3), 1/9)), 8)


def test_marginals_and_tilde_of_symmetric_source():
    joint = JointDistribution.fromMatrix(SOURCE_1)
    (p_x, p_y) = marginals(joint)
    np.testing.assert_allclose(p_x, [0.5, 0.5])
    np.testing.assert_allclose(p_y, [0.5, 0.5])
    np.testing.assert_allclose(tilde(joint), [[2/3, 1/3], [1/3, 2/3]], atol=1e-15)


def test_tilde_of_sparse_source():
    np.testing.assert_allclose(tilde(JointDistribution.fromMatrix(SOURCE_2)), [[0.0, 1/3], [1/3, 8/9]],
                               atol=1e-15)


def test_tilde_needs_positive_marginals():
    joint = JointDistribution.fromMatrix([[0.5, 0.0], [0.5, 0.0]])
    with pytest.raises(ZeroMassSymbol):
        tilde(joint)
    stripped = strip_zero_mass(joint)
    assert stripped.col_alphabet.symbols == ("0",)
    np.testing.assert_allclose(tilde(stripped), [[np.sqrt(0.5)], [np.sqrt(0.5)]])
    assert strip_zero_mass(stripped) is stripped


def test_conditional_kernels():
    joint = JointDistribution.fromMatrix(SOURCE_2)
    x_given_y = conditional(joint, "col")
    np.testing.assert_allclose(x_given_y.matrix, [[0.0, 1/9], [1.0, 8/9]])
    y_given_x = conditional(joint, "row")
    np.testing.assert_allclose(y_given_x.matrix, [[0.0, 1/9], [1.0, 8/9]])
    with pytest.raises(ValueError):
        conditional(joint, "both")


def test_kron_power_entries_and_marginals():
    joint = JointDistribution.fromMatrix(SOURCE_1)
    square = kron_power(joint, 2)
    assert square.shape == (4, 4)
    # entry ((a, b), (c, d)) = J(a, c) J(b, d)
    assert square.matrix[1, 2] == pytest.approx(joint.matrix[0, 1] * joint.matrix[1, 0])
    (p_x, p_y) = marginals(square)
    np.testing.assert_allclose(p_x, np.full(4, 0.25))
    np.testing.assert_allclose(p_y, np.full(4, 0.25))
    with pytest.raises(ValueError):
        kron_power(joint, 0)


@pytest.mark.parametrize("matrix, expected", [
    (SOURCE_1, 1.918),
    (SOURCE_2, 0.922),
    (SOURCE_3, 0.748),
])
def test_joint_entropy_of_example_sources(matrix, expected):
    assert joint_entropy(JointDistribution.fromMatrix(matrix)) == pytest.approx(expected, abs=1e-3)


def test_entropy_conventions():
    assert entropy([0.5, 0.5]) == pytest.approx(1.0)
    assert entropy([1.0, 0.0]) == 0.0
    joint = JointDistribution.fromMatrix(SOURCE_1)
    assert conditional_entropy(joint, "col") == pytest.approx(joint_entropy(joint) - 1.0)


@pytest.mark.parametrize("matrix, expected", [
    ([[0.5, 0.0], [0.0, 0.5]], 1.0),
    ([[0.25, 0.25], [0.25, 0.25]], 0.0),
    (SOURCE_1, 2.0 - 1.9183),
])
def test_mutual_information(matrix, expected):
    assert mutual_information(JointDistribution.fromMatrix(matrix)) == pytest.approx(expected, abs=2e-3)


def test_channel_mutual_information_examples():
    channel = adder_channel()
    extremes = JointDistribution(BINARY, BINARY, [[0.5, 0.0], [0.0, 0.5]])
    assert channel_mutual_information(extremes, channel) == pytest.approx(1.0)
    uniform = JointDistribution(BINARY, BINARY, np.full((2, 2), 0.25))
    assert channel_mutual_information(uniform, channel) == pytest.approx(0.5)
    flat = ChannelModel(BINARY, BINARY, BINARY, [[0.3] * 4, [0.7] * 4])
    assert channel_mutual_information(extremes, flat) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(AlphabetMismatch):
        channel_mutual_information(JointDistribution.fromMatrix(np.full((2, 3), 1/6)), channel)


def test_channel_from_function_matches_matrix():
    def law(a, b):
        ones = int(a) + int(b)
        return [ones / 2.0, 1.0 - ones / 2.0]

    channel = ChannelModel.fromFunction(BINARY, BINARY, Alphabet(("1", "0")), law)
    np.testing.assert_allclose(channel.transition, adder_channel().transition)
    assert channel.input_alphabet.symbols == ("00", "01", "10", "11")


def test_channel_rejects_bad_columns():
    with pytest.raises(InvariantViolation):
        ChannelModel(BINARY, BINARY, BINARY, [[0.5] * 4, [0.6] * 4])
    with pytest.raises(AlphabetMismatch):
        ChannelModel(BINARY, BINARY, BINARY, [[0.5] * 3, [0.5] * 3])


def test_kernel_constructors():
    identity = ConditionalKernel.identity(BINARY)
    np.testing.assert_array_equal(identity.matrix, np.eye(2))
    constant = ConditionalKernel.constant(BINARY, Alphabet.ofSize(3), [0.2, 0.3, 0.5])
    np.testing.assert_allclose(constant.matrix[:, 1], [0.2, 0.3, 0.5])
    flip = ConditionalKernel.deterministic(BINARY, BINARY, {"0": "1", "1": "0"})
    np.testing.assert_array_equal(flip.matrix, [[0.0, 1.0], [1.0, 0.0]])


def test_induced_input_with_identity_encoders_is_the_source():
    source = JointDistribution(BINARY, BINARY, SOURCE_1)
    identity = ConditionalKernel.identity(BINARY)
    np.testing.assert_allclose(induced_input(source, identity, identity).matrix, source.matrix)
    flip = ConditionalKernel.deterministic(BINARY, BINARY, {"0": "1", "1": "0"})
    np.testing.assert_allclose(induced_input(source, flip, identity).matrix, source.matrix[::-1])
    with pytest.raises(AlphabetMismatch):
        induced_input(source, ConditionalKernel.identity(Alphabet.ofSize(3)), identity)


def test_channel_mutual_information_is_label_equivariant():
    rng = np.random.default_rng(7)
    channel_matrix = rng.dirichlet(np.ones(3), size=6).T
    channel = ChannelModel(Alphabet.ofSize(2), Alphabet.ofSize(3), Alphabet.ofSize(3), channel_matrix)
    joint = JointDistribution.fromMatrix(rng.dirichlet(np.ones(6)).reshape(2, 3))

    (perm1, perm2, perm_y) = ([1, 0], [2, 0, 1], [1, 2, 0])
    cube = channel_matrix.reshape(3, 2, 3)[perm_y][:, perm1][:, :, perm2]
    permuted_channel = ChannelModel(channel.x1_alphabet.subset(perm1), channel.x2_alphabet.subset(perm2),
                                    channel.y_alphabet.subset(perm_y), cube.reshape(3, 6))
    permuted_joint = JointDistribution(joint.row_alphabet.subset(perm1), joint.col_alphabet.subset(perm2),
                                       joint.matrix[perm1][:, perm2])
    assert channel_mutual_information(permuted_joint, permuted_channel) == pytest.approx(
        channel_mutual_information(joint, channel), abs=1e-12)


@seed(3)
@settings(deadline=None, max_examples=50)
@given(matrix=positive_joints)
def test_tilde_reconstructs_the_joint(matrix):
    joint = normalized(matrix)
    (p_x, p_y) = marginals(joint)
    rebuilt = np.sqrt(p_x)[:, None] * tilde(joint) * np.sqrt(p_y)[None, :]
    np.testing.assert_allclose(rebuilt, joint.matrix, atol=1e-12)


@seed(4)
@settings(deadline=None, max_examples=30)
@given(matrix=positive_joints, n=st.integers(1, 3))
def test_kron_power_is_iid(matrix, n):
    joint = normalized(matrix)
    power = kron_power(joint, n)
    (p_x, p_y) = marginals(joint)
    (q_x, q_y) = marginals(power)
    expected_x = p_x
    expected_y = p_y
    for _ in range(n - 1):
        expected_x = np.kron(expected_x, p_x)
        expected_y = np.kron(expected_y, p_y)
    np.testing.assert_allclose(q_x, expected_x, atol=1e-12)
    np.testing.assert_allclose(q_y, expected_y, atol=1e-12)
    assert joint_entropy(power) == pytest.approx(n * joint_entropy(joint), abs=1e-9)


@seed(5)
@settings(deadline=None, max_examples=50)
@given(matrix=positive_joints)
def test_mutual_information_vanishes_only_for_products(matrix):
    joint = normalized(matrix)
    (p_x, p_y) = marginals(joint)
    assert mutual_information(joint) >= -1e-12
    assert mutual_information(product_distribution(p_x, p_y)) == pytest.approx(0.0, abs=1e-9)
    if np.max(np.abs(joint.matrix - np.outer(p_x, p_y))) > 1e-3:
        assert mutual_information(joint) > 1e-9
