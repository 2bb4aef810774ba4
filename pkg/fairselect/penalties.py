"""
Least squares fits with a fairness penalty,

    min_theta ||Y - X theta||^2 + lam L(theta),

for the two quadratic penalties used as regularization benchmarks. Both keep
the problem quadratic, so ``theta`` solves one linear system.
"""
import math
from enum import Enum

import numpy as np
from scipy import sparse

from fairselect.conf import get_setting
from fairselect.estimation import ols_fit, solve_normal_equations
from fairselect.exceptions import MissingSubgroupError, ParameterError, SingularDesignError


class Penalty(Enum):
    PAIRWISE_WEIGHTED = "pairwise"
    GROUP_MEAN_RESIDUAL = "group_mean"


def _check_history(history):
    for group, count in ((0, history.n0), (1, history.n1)):
        if count == 0:
            raise MissingSubgroupError(
                "penalized fits need both subgroups, the history has no z=%d records" % group
            )
    if history.n < history.p:
        raise SingularDesignError(
            "need at least %d records to fit %d coefficients, got %d"
            % (history.p, history.p, history.n)
        )


def _check_lambda(lam):
    lam = float(lam)
    if not math.isfinite(lam) or lam < 0:
        raise ParameterError("lambda must be a finite nonnegative number, got %r" % lam)
    return lam


def pairwise_penalty_matrix(history, cutoff=None):
    """
    ``M`` with ``theta'M theta`` the average over cross group pairs of
    ``w(y, y') (theta'x - theta'x')^2``, ``w(y, y') = exp(-(y - y')^2)``.

    Weights below ``cutoff`` (the ``PAIRWISE_WEIGHT_CUTOFF`` setting) are
    dropped, which keeps the weight matrix sparse.
    """

    if cutoff is None:
        cutoff = get_setting("PAIRWISE_WEIGHT_CUTOFF")
    features1, y1 = history.subgroup(1)
    features0, y0 = history.subgroup(0)
    weights = np.exp(-np.subtract.outer(y1, y0) ** 2)
    weights[weights < cutoff] = 0.0
    weights = sparse.csr_matrix(weights)

    row_sums = np.asarray(weights.sum(axis=1)).ravel()
    column_sums = np.asarray(weights.sum(axis=0)).ravel()
    cross = features1.T @ np.asarray(weights @ features0)
    matrix = (
        (features1.T * row_sums) @ features1
        + (features0.T * column_sums) @ features0
        - cross
        - cross.T
    )
    matrix = 0.5 * (matrix + matrix.T)
    return matrix / (history.n1 * history.n0)


def group_mean_terms(history):
    """``(d, c)``: the subgroup gaps of the mean response and of the mean features."""

    features1, y1 = history.subgroup(1)
    features0, y0 = history.subgroup(0)
    return float(y1.mean() - y0.mean()), features1.mean(axis=0) - features0.mean(axis=0)


def penalty_value(history, penalty, theta, matrix=None):
    theta = np.asarray(theta, dtype=float)
    if Penalty(penalty) is Penalty.PAIRWISE_WEIGHTED:
        if matrix is None:
            matrix = pairwise_penalty_matrix(history)
        return float(theta @ matrix @ theta)
    gap, center = group_mean_terms(history)
    return float((gap - theta @ center) ** 2)


def penalized_objective(history, penalty, lam, theta):
    """``||Y - X theta||^2 + lam L(theta)``."""

    residual = history.y - history.features @ np.asarray(theta, dtype=float)
    return float(residual @ residual) + _check_lambda(lam) * penalty_value(
        history, penalty, theta
    )


def penalized_fit(history, penalty, lam, matrix=None):
    """
    The minimizer of ``penalized_objective``.

    ``lam = 0`` returns the OLS fit itself. ``matrix`` can carry a precomputed
    pairwise penalty matrix for this history.
    """

    penalty = Penalty(penalty)
    lam = _check_lambda(lam)
    _check_history(history)
    if lam == 0:
        return ols_fit(history)

    features = history.features
    gram = features.T @ features
    rhs = features.T @ history.y
    if penalty is Penalty.PAIRWISE_WEIGHTED:
        if matrix is None:
            matrix = pairwise_penalty_matrix(history)
        gram = gram + lam * matrix
    else:
        gap, center = group_mean_terms(history)
        gram = gram + lam * np.outer(center, center)
        rhs = rhs + lam * gap * center
    return solve_normal_equations(gram, rhs)
