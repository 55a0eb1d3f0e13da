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

File: bounds.py
License: BSD 3-Clause
Description:
    Sum-rate bounds for sending the correlated pair (U, V) over a multiple
    access channel p(y | x1, x2):

    trivial:     max over all p(x1, x2) of I(X1, X2; Y) (Blahut-Arimoto)
    achievable:  max of I(X1, X2; Y) over encoders p(x1 | u), p(x2 | v)
                 (alternating projected-gradient ascent with restarts)
    upper:       max of I(X1, X2; Y) over p(x1, x2) with
                 lambda_i(P~_X1X2) <= lambda_2(P~_UV) for all i >= 2
                 (exhaustive simplex grid with SLSQP polish for binary
                 inputs, multistart SLSQP otherwise)

    H(U, V) above the trivial or the upper bound rules the source out;
    H(U, V) below the achievable rate makes it a candidate.
"""

from dataclasses import dataclass, asdict
import itertools

import numpy as np
from scipy.optimize import minimize
from scipy.special import entr, rel_entr

from probcore import (LN2, RNG_ALGORITHM, ConditionalKernel, JointDistribution, composite_mutual_information,
                      channel_mutual_information, induced_input, joint_entropy, make_rng, mutual_information,
                      output_entropies, strip_zero_mass, verboseprint)
from spectral import NoConvergence, lambda2

LOG2E = 1.0 / LN2
TINY_MASS = 1e-300
MIN_STEP = 1e-12
MAX_STEP = 1e3
MAX_DETERMINISTIC_STARTS = 256
BISECTION_STEPS = 60
SLSQP_ITERATIONS = 2000

INFEASIBLE_BY_TRIVIAL = "INFEASIBLE_BY_TRIVIAL"
INFEASIBLE_BY_UPPER = "INFEASIBLE_BY_UPPER"
FEASIBLE_CANDIDATE = "FEASIBLE_CANDIDATE"
INCONCLUSIVE = "INCONCLUSIVE"


class ConfigError(ValueError):
    pass


class InfeasibleConstraint(RuntimeError):
    pass


@dataclass(frozen=True)
class OptimizerConfig:
    seed: int = 42
    restarts: int = 32
    grid_resolution: float = 0.0025
    convergence_tol: float = 1e-9
    max_iterations: int = 100000
    feasibility_tol: float = 1e-9
    polish_points: int = 10
    armijo: float = 1e-4
    backtrack: float = 0.5
    inner_iterations: int = 50
    outer_iterations: int = 200
    rng_algorithm: str = RNG_ALGORITHM

    def __post_init__(self):
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be a 64-bit unsigned integer, got {!r}".format(self.seed))
        if self.restarts < 1:
            raise ConfigError("need at least one restart")
        if not 0.0 < self.grid_resolution <= 0.1:
            raise ConfigError("grid_resolution must lie in (0, 0.1], got {!r}".format(self.grid_resolution))
        if not 0.0 < self.convergence_tol <= 1e-3:
            raise ConfigError("convergence_tol must lie in (0, 1e-3], got {!r}".format(self.convergence_tol))
        if self.max_iterations < 1 or self.inner_iterations < 1 or self.outer_iterations < 1:
            raise ConfigError("iteration limits must be positive")
        if self.feasibility_tol < 0.0:
            raise ConfigError("feasibility_tol must be nonnegative")
        if self.polish_points < 1:
            raise ConfigError("polish_points must be positive")
        if not 0.0 < self.armijo < 1.0 or not 0.0 < self.backtrack < 1.0:
            raise ConfigError("line search constants must lie in (0, 1)")
        if self.rng_algorithm != RNG_ALGORITHM:
            raise ConfigError("only the {} generator is supported".format(RNG_ALGORITHM))

    @property
    def grid_steps(self):
        return int(round(1.0 / self.grid_resolution))


@dataclass(frozen=True)
class BoundReport:
    source_entropy: float
    lambda2_uv: float
    trivial_bound: float
    achievable_rate: float
    upper_bound: float
    verdict: str
    upper_bound_certified: bool = True
    upper_bound_error: float = 0.0
    classical_dpi_upper: float = float("nan")

    def asdict(self):
        return asdict(self)


@dataclass(frozen=True, eq=False)
class SearchResult:
    value: float
    argmax: JointDistribution
    certified: bool
    error: float
    evaluated: int = 0
    feasible: int = 0


def _divergences(p, transition):
    # D(W_x || q) in bits for every composite input x
    q = np.maximum(transition @ p, TINY_MASS)
    return np.sum(rel_entr(transition, q[:, None]), axis=0) / LN2


def _input_gradient(p, transition):
    # dI/dp_x = D(W_x || q) - log2(e)
    return _divergences(p, transition) - LOG2E


def _normalized(p):
    p = np.clip(np.asarray(p, dtype=float), 0.0, None)
    return p / p.sum()


def _removable_inputs(p, d, transition, lower, upper):
    """
    Inputs that carry no mass in any capacity-achieving distribution.

    D(q* || q) <= upper - lower bounds the distance to the optimal output law
    (Pinsker gives ||q* - q||_1 <= eps), so D(W_x || q*) is at most
    D(W_x || q) + max_y log2(q(y) / (q(y) - eps)) over the support of W_x.
    An input whose bound stays below lower < C is never used at the optimum.
    """
    q = np.maximum(transition @ p, TINY_MASS)
    eps = np.sqrt(2.0 * LN2 * max(upper - lower, 0.0))
    margin = np.full(len(q), np.inf)
    far = q > eps
    margin[far] = np.log2(q[far] / (q[far] - eps))
    worst = np.max(np.where(transition > 0.0, margin[:, None], -np.inf), axis=0)
    return (p > 0.0) & (d + worst < lower)


class BlahutArimoto(object):
    """
    Capacity of a discrete memoryless channel with transition W (|Y| x K).

    Each update() multiplies p_x by 2^D(W_x || q). I(p) is a lower and
    max_x D(W_x || q) an upper estimate of the capacity; iterations stop
    when they are closer than tol. Inputs proven unused at the optimum are
    set to zero mass as soon as the bounds allow it.
    """

    def __init__(self, transition, tol=1e-9, max_iterations=100000, p0=None):
        self._w = np.asarray(transition, dtype=float)
        n_inputs = self._w.shape[1]
        self._p = np.full(n_inputs, 1.0 / n_inputs) if p0 is None else _normalized(p0)
        self._tol = tol
        self._max_iterations = max_iterations
        self._just_eliminated = False
        self.iterations = 0
        self.converged = False
        self.history = []
        self.upper_history = []
        self.eliminated = []

    def update(self):
        d = _divergences(self._p, self._w)
        lower = float(self._p @ d)
        upper = float(d.max())
        # Blahut-Arimoto never decreases the objective, except right after an elimination
        assert self._just_eliminated or not self.history or lower >= self.history[-1] - 1e-12, \
            "objective dropped from {} to {}".format(self.history[-1], lower)
        self.history.append(lower)
        self.upper_history.append(upper)
        if upper - lower <= self._tol:
            self.converged = True
            return
        removable = _removable_inputs(self._p, d, self._w, lower, upper)
        p = self._p * np.exp2(d - upper)
        p[removable] = 0.0
        self._p = p / p.sum()
        self._just_eliminated = bool(np.any(removable))
        for x in np.flatnonzero(removable):
            verboseprint("Blahut-Arimoto: input {} eliminated at iteration {}".format(x, self.iterations))
            self.eliminated.append((self.iterations, int(x)))
        self.iterations += 1

    def run(self):
        while not self.converged:
            if self.iterations >= self._max_iterations:
                raise NoConvergence("Blahut-Arimoto gap {:.3e} after {} iterations".format(
                    self.upper_history[-1] - self.history[-1], self.iterations))
            self.update()
        verboseprint("Blahut-Arimoto: {:.9f} bits after {} iterations".format(self.history[-1], self.iterations))
        return (self.history[-1], self._p.copy())

    @property
    def p(self):
        return self._p.copy()


def trivial_bound(channel, cfg):
    """
    max over every input joint of I(X1, X2; Y)

    Returns:
        (value in bits, maximizing JointDistribution over X1 x X2)
    """
    solver = BlahutArimoto(channel.transition, cfg.convergence_tol, cfg.max_iterations)
    (value, p) = solver.run()
    shape = (len(channel.x1_alphabet), len(channel.x2_alphabet))
    return (value, JointDistribution(channel.x1_alphabet, channel.x2_alphabet, (p / p.sum()).reshape(shape)))


def _project_columns(matrix):
    # Euclidean projection of every column onto the probability simplex
    n = matrix.shape[0]
    u = -np.sort(-matrix, axis=0)
    css = np.cumsum(u, axis=0) - 1.0
    ind = np.arange(1, n + 1)[:, None]
    rho = np.count_nonzero(u - css / ind > 0.0, axis=0)
    theta = css[rho - 1, np.arange(matrix.shape[1])] / rho
    return np.maximum(matrix - theta, 0.0)


def _projected_ascent(x, value_of, gradient_of, cfg):
    f = value_of(x)
    step = 1.0
    for _ in range(cfg.inner_iterations):
        g = gradient_of(x)
        while True:
            candidate = _project_columns(x + step * g)
            f_candidate = value_of(candidate)
            if f_candidate >= f + cfg.armijo * np.sum(g * (candidate - x)):
                break
            step *= cfg.backtrack
            if step < MIN_STEP:
                return (x, f)
        gain = f_candidate - f
        (x, f) = (candidate, f_candidate)
        step = min(step / cfg.backtrack, MAX_STEP)
        if gain <= cfg.convergence_tol:
            break
    return (x, f)


def _alternate(a, b, joint, w, h_out, cfg):
    """Alternating maximization over the two encoders, from (a, b)."""
    def rate(a, b):
        return float(composite_mutual_information((a @ joint @ b.T).ravel(), w, h_out))

    def gradient(a, b):
        return _input_gradient((a @ joint @ b.T).ravel(), w).reshape(a.shape[0], b.shape[0])

    f = rate(a, b)
    for _ in range(cfg.outer_iterations):
        (a, _) = _projected_ascent(a, lambda x: rate(x, b), lambda x: gradient(x, b) @ b @ joint.T, cfg)
        (b, f_next) = _projected_ascent(b, lambda x: rate(a, x), lambda x: gradient(a, x).T @ (a @ joint), cfg)
        if f_next - f <= cfg.convergence_tol:
            return (a, b, f_next, True)
        f = f_next
    return (a, b, f, False)


def _deterministic_kernels(n_from, n_to):
    for images in itertools.product(range(n_to), repeat=n_from):
        kernel = np.zeros((n_to, n_from))
        kernel[list(images), np.arange(n_from)] = 1.0
        yield kernel


def _encoder_starts(n_u, n_v, m1, m2, cfg):
    if m1 ** n_u * m2 ** n_v <= MAX_DETERMINISTIC_STARTS:
        for a in _deterministic_kernels(n_u, m1):
            for b in _deterministic_kernels(n_v, m2):
                yield (a, b)
    rng = make_rng(cfg.seed)
    for _ in range(cfg.restarts):
        yield (rng.dirichlet(np.ones(m1), size=n_u).T, rng.dirichlet(np.ones(m2), size=n_v).T)


def achievable_sum_rate(source, channel, cfg):
    """
    Best found I(X1, X2; Y) with p(x1, x2) = sum_uv p(u, v) p(x1 | u) p(x2 | v).

    Starts from every pair of deterministic encoders (when there are few)
    and from cfg.restarts seeded random pairs. The value is recomputed from
    the returned encoders, so it is a valid lower estimate of the maximum.

    Returns:
        (value in bits, (encoder1, encoder2)) with encoder1 = p(x1 | u), encoder2 = p(x2 | v)

    Raises:
        NoConvergence: if no start settled within cfg.outer_iterations rounds
    """
    joint = source.matrix
    w = channel.transition
    h_out = output_entropies(w)
    (m1, m2) = (len(channel.x1_alphabet), len(channel.x2_alphabet))
    (n_u, n_v) = joint.shape

    best = None
    any_converged = False
    for (start, (a, b)) in enumerate(_encoder_starts(n_u, n_v, m1, m2, cfg)):
        (a, b, value, converged) = _alternate(a, b, joint, w, h_out, cfg)
        any_converged = any_converged or converged
        verboseprint("start {}: {:.6f} bits{}".format(start, value, "" if converged else " (not settled)"))
        if best is None or value > best[0]:
            best = (value, a, b)
    if not any_converged:
        raise NoConvergence("no encoder start settled within {} rounds".format(cfg.outer_iterations))

    encoder1 = ConditionalKernel(source.row_alphabet, channel.x1_alphabet, best[1] / best[1].sum(axis=0))
    encoder2 = ConditionalKernel(source.col_alphabet, channel.x2_alphabet, best[2] / best[2].sum(axis=0))
    value = channel_mutual_information(induced_input(source, encoder1, encoder2), channel)
    return (value, (encoder1, encoder2))


@dataclass(frozen=True)
class _Constraint:
    # Feasible set of input joints on the flattened x1-major vector p
    grid_mask: object
    smooth: object
    slack: object


def _lambda2_matrix(matrix):
    matrix = np.asarray(matrix, dtype=float)
    joint = strip_zero_mass(JointDistribution.fromMatrix(matrix / matrix.sum()))
    return lambda2(joint)


def lambda2_binary(points):
    """
    lambda_2 of 2x2 joints given as rows (p00, p01, p10, p11), vectorized.

    |p00 p11 - p01 p10| / sqrt(p0. p1. p.0 p.1), 0 when a marginal vanishes.
    """
    (p00, p01, p10, p11) = np.asarray(points, dtype=float).T
    det = np.abs(p00 * p11 - p01 * p10)
    prod = (p00 + p01) * (p10 + p11) * (p00 + p10) * (p01 + p11)
    positive = prod > 0.0
    return np.where(positive, det / np.sqrt(np.where(positive, prod, 1.0)), 0.0)


def _singular_value_constraint(limit, tol, shape):
    bound = limit + tol

    def grid_mask(points):
        return lambda2_binary(points) <= bound

    def smooth(p):
        if shape == (2, 2):
            (p00, p01, p10, p11) = p
            det = p00 * p11 - p01 * p10
            return bound * bound * (p00 + p01) * (p10 + p11) * (p00 + p10) * (p01 + p11) - det * det
        return bound - _lambda2_matrix(_normalized(p).reshape(shape))

    def slack(p):
        return bound - _lambda2_matrix(p.reshape(shape))

    return _Constraint(grid_mask, smooth, slack)


def _mutual_information_rows(points, shape):
    joint = points.reshape(-1, *shape)
    return (np.sum(entr(joint.sum(axis=2)), axis=1) + np.sum(entr(joint.sum(axis=1)), axis=1)
            - np.sum(entr(joint), axis=(1, 2))) / LN2


def _mutual_information_constraint(limit, tol, shape):
    bound = limit + tol

    def grid_mask(points):
        return _mutual_information_rows(points, shape) <= bound

    def slack(p):
        return bound - float(_mutual_information_rows(_normalized(p)[None, :], shape)[0])

    return _Constraint(grid_mask, slack, slack)


def _shrink_to_feasible(p, shape, slack):
    # Mix with the product of the marginals; mixing keeps the marginals and
    # scales every non-principal singular value by (1 - t)
    if slack(p) >= 0.0:
        return p
    matrix = p.reshape(shape)
    independent = np.outer(matrix.sum(axis=1), matrix.sum(axis=0)).ravel()
    if slack(independent) < 0.0:
        raise InfeasibleConstraint("even independent inputs violate the constraint")
    (lo, hi) = (0.0, 1.0)
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if slack((1.0 - mid) * p + mid * independent) >= 0.0:
            hi = mid
        else:
            lo = mid
    return (1.0 - hi) * p + hi * independent


def _polish(p0, w, h_out, constraint, shape, cfg):
    k = len(p0)
    result = minimize(lambda p: -float(composite_mutual_information(np.clip(p, 0.0, None), w, h_out)),
                      p0, jac=lambda p: -_input_gradient(np.clip(p, 0.0, None), w), method="SLSQP",
                      bounds=[(0.0, 1.0)] * k,
                      constraints=[{"type": "eq", "fun": lambda p: p.sum() - 1.0, "jac": lambda p: np.ones(k)},
                                   {"type": "ineq", "fun": constraint.smooth}],
                      options={"maxiter": SLSQP_ITERATIONS, "ftol": cfg.convergence_tol})
    if not np.all(np.isfinite(result.x)) or result.x.sum() <= 0.0:
        return (p0, float(composite_mutual_information(p0, w, h_out)))
    p = _shrink_to_feasible(_normalized(result.x), shape, constraint.slack)
    return (p, float(composite_mutual_information(p, w, h_out)))


def _grid_search(w, h_out, constraint, cfg):
    """Every point of the 3-simplex with coordinates in multiples of 1/steps, in chunks of fixed p00."""
    steps = cfg.grid_steps
    keep = cfg.polish_points
    best_values = np.empty(0)
    best_points = np.empty((0, 4))
    (evaluated, feasible) = (0, 0)
    for i in range(steps + 1):
        rest = steps - i
        (jj, kk) = np.meshgrid(np.arange(rest + 1), np.arange(rest + 1), indexing="ij")
        inside = jj + kk <= rest
        (j, k) = (jj[inside], kk[inside])
        points = np.column_stack([np.full(len(j), i), j, k, rest - j - k]) / steps
        evaluated += len(points)
        points = points[constraint.grid_mask(points)]
        feasible += len(points)
        if len(points) == 0:
            continue
        values = composite_mutual_information(points, w, h_out)
        if len(values) > keep:
            top = np.argpartition(-values, keep)[:keep]
            (values, points) = (values[top], points[top])
        best_values = np.concatenate([best_values, values])
        best_points = np.vstack([best_points, points])
        if len(best_values) > keep:
            top = np.argpartition(-best_values, keep)[:keep]
            (best_values, best_points) = (best_values[top], best_points[top])
    order = np.argsort(-best_values, kind="stable")
    verboseprint("grid: {} points, {} feasible, best {:.6f}".format(evaluated, feasible, best_values[order[0]]))
    return (best_values[order], best_points[order], evaluated, feasible)


def _maximize_binary(channel, constraint, cfg):
    w = channel.transition
    h_out = output_entropies(w)
    (values, points, evaluated, feasible) = _grid_search(w, h_out, constraint, cfg)
    (best_value, best_p) = (float(values[0]), points[0])
    g = _input_gradient(best_p, w)
    error = float(g.max() - g.min()) / cfg.grid_steps
    for p0 in points:
        (p, value) = _polish(p0, w, h_out, constraint, (2, 2), cfg)
        if value > best_value:
            (best_value, best_p) = (value, p)
    return SearchResult(best_value, JointDistribution(channel.x1_alphabet, channel.x2_alphabet,
                                                      _normalized(best_p).reshape(2, 2)),
                        True, error, evaluated, feasible)


def _maximize_multistart(channel, constraint, cfg):
    w = channel.transition
    h_out = output_entropies(w)
    shape = (len(channel.x1_alphabet), len(channel.x2_alphabet))
    # The unconstrained optimum is only a start point, an unsettled iterate will do
    solver = BlahutArimoto(w, cfg.convergence_tol, cfg.max_iterations)
    try:
        (_, unconstrained) = solver.run()
    except NoConvergence:
        unconstrained = solver.p
    rng = make_rng(cfg.seed)
    starts = [np.full(w.shape[1], 1.0 / w.shape[1]), unconstrained]
    starts += [rng.dirichlet(np.ones(w.shape[1])) for _ in range(cfg.restarts)]

    (best_value, best_p) = (-np.inf, None)
    for (i, p0) in enumerate(starts):
        (p, value) = _polish(_shrink_to_feasible(_normalized(p0), shape, constraint.slack), w, h_out,
                             constraint, shape, cfg)
        verboseprint("multistart {}: {:.6f} bits".format(i, value))
        if value > best_value:
            (best_value, best_p) = (value, p)
    return SearchResult(best_value, JointDistribution(channel.x1_alphabet, channel.x2_alphabet,
                                                      _normalized(best_p).reshape(shape)),
                        False, float("nan"), len(starts), len(starts))


def search_upper_bound(limit, channel, cfg):
    """
    max I(X1, X2; Y) over input joints with lambda_i(P~_X1X2) <= limit for i >= 2.

    Binary inputs: certified grid search with polish, error is the first-order
    change of I over one grid cell at the best grid point. Otherwise:
    multistart SLSQP, uncertified.
    """
    shape = (len(channel.x1_alphabet), len(channel.x2_alphabet))
    constraint = _singular_value_constraint(limit, cfg.feasibility_tol, shape)
    if shape == (2, 2):
        return _maximize_binary(channel, constraint, cfg)
    return _maximize_multistart(channel, constraint, cfg)


def constrained_upper_bound(source, channel, cfg):
    """
    Returns:
        (value in bits, maximizing JointDistribution over X1 x X2)
    """
    result = search_upper_bound(lambda2(strip_zero_mass(source)), channel, cfg)
    return (result.value, result.argmax)


def classical_dpi_upper(source, channel, cfg):
    """max I(X1, X2; Y) subject to I(X1; X2) <= I(U; V)"""
    shape = (len(channel.x1_alphabet), len(channel.x2_alphabet))
    constraint = _mutual_information_constraint(mutual_information(source), cfg.feasibility_tol, shape)
    if shape == (2, 2):
        return _maximize_binary(channel, constraint, cfg)
    return _maximize_multistart(channel, constraint, cfg)


def verdict_for(source_entropy, trivial, upper, achievable, tol, upper_error=0.0):
    # A tie never counts as infeasible; the upper bound is only trusted up to
    # its discretization error, an unknown (nan) error leaves the margin at tol
    upper_margin = max(tol, upper_error) if np.isfinite(upper_error) else tol
    if source_entropy > trivial + tol:
        return INFEASIBLE_BY_TRIVIAL
    if source_entropy > upper + upper_margin:
        return INFEASIBLE_BY_UPPER
    if source_entropy <= achievable - tol:
        return FEASIBLE_CANDIDATE
    return INCONCLUSIVE


def assess(source, channel, cfg):
    h = joint_entropy(source)
    lam2 = lambda2(strip_zero_mass(source))
    (trivial, _) = trivial_bound(channel, cfg)
    (achievable, _) = achievable_sum_rate(source, channel, cfg)
    upper = search_upper_bound(lam2, channel, cfg)
    classical = classical_dpi_upper(source, channel, cfg)
    verdict = verdict_for(h, trivial, upper.value, achievable, cfg.convergence_tol, upper.error)
    verboseprint("H={:.6f} trivial={:.6f} achievable={:.6f} upper={:.6f} -> {}".format(
        h, trivial, achievable, upper.value, verdict))
    return BoundReport(source_entropy=h, lambda2_uv=lam2, trivial_bound=trivial, achievable_rate=achievable,
                       upper_bound=upper.value, verdict=verdict, upper_bound_certified=upper.certified,
                       upper_bound_error=upper.error, classical_dpi_upper=classical.value)


if __name__ == '__main__':
    from probcore import Alphabet, ChannelModel

    binary = Alphabet(("0", "1"))
    channel = ChannelModel(binary, binary, binary, [[1.0, 0.5, 0.5, 0.0], [0.0, 0.5, 0.5, 1.0]])
    cfg = OptimizerConfig(grid_resolution=0.01, restarts=4)
    (value, argmax) = trivial_bound(channel, cfg)
    assert abs(value - 1.0) < 1e-6
    print(argmax.matrix)
    source = JointDistribution.fromMatrix([[1/3, 1/6], [1/6, 1/3]], ("0", "1"), ("0", "1"))
    (upper, _) = constrained_upper_bound(source, channel, cfg)
    assert abs(upper - 2/3) < 0.01
    print(upper)
