from dataclasses import dataclass

import numpy as np
from django.utils.functional import cached_property
from scipy import linalg

from fairselect.conf import get_setting
from fairselect.exceptions import MissingSubgroupError, ParameterError, SingularDesignError
from fairselect.models.datasets import frozen_array


class EmpiricalCdf:
    """
    The right continuous empirical distribution function of a sample.

    Ties are kept, so the function jumps by ``multiplicity / n`` at a repeated
    value.
    """

    def __init__(self, samples):
        values = np.sort(np.asarray(samples, dtype=float).ravel())
        if values.shape[0] == 0:
            raise ParameterError("an empirical cdf needs at least one sample")
        values.setflags(write=False)
        self.values = values

    def __len__(self):
        return int(self.values.shape[0])

    def __repr__(self):
        return "<EmpiricalCdf n=%d>" % len(self)

    def counts(self, r):
        """Number of samples ``<= r``."""

        return np.searchsorted(self.values, r, side="right")

    def __call__(self, r):
        fraction = self.counts(r) / len(self)
        if np.ndim(fraction) == 0:
            return float(fraction)
        return fraction


def cdf_eval(cdf, r):
    return cdf(r)


def solve_normal_equations(gram, rhs):
    """
    Solves the symmetric system ``gram @ x = rhs`` through a Cholesky factor.

    Raises ``SingularDesignError`` when the condition number of ``gram`` exceeds
    the ``CONDITION_LIMIT`` setting.
    """

    limit = get_setting("CONDITION_LIMIT")
    with np.errstate(all="ignore"):
        condition = np.linalg.cond(gram)
    if not np.isfinite(condition) or condition > limit:
        raise SingularDesignError(
            "normal equations are singular (condition number %.3g > %.3g)"
            % (condition, limit)
        )
    try:
        factor = linalg.cho_factor(gram)
    except linalg.LinAlgError:
        raise SingularDesignError("normal equations are not positive definite")
    return linalg.cho_solve(factor, rhs)


def ols_fit(history):
    """The least squares coefficients ``(X'X)^-1 X'Y`` of a history."""

    if history.n < history.p:
        raise SingularDesignError(
            "need at least %d records to fit %d coefficients, got %d"
            % (history.p, history.p, history.n)
        )
    features = history.features
    return solve_normal_equations(features.T @ features, features.T @ history.y)


@dataclass(frozen=True, eq=False)
class FittedSelector:
    """
    OLS coefficients plus the historical scores of each subgroup.

    Group one scores are sorted descending and group zero scores ascending,
    which are the orderings the empirical quantile search walks over.
    """

    beta_hat: np.ndarray
    scores_z1_desc: np.ndarray
    scores_z0_asc: np.ndarray

    def __post_init__(self):
        for name in ("beta_hat", "scores_z1_desc", "scores_z0_asc"):
            object.__setattr__(self, name, frozen_array(getattr(self, name)))
        if self.scores_z1_desc.shape[0] < 1:
            raise MissingSubgroupError("no historical scores for z=1")
        if self.scores_z0_asc.shape[0] < 1:
            raise MissingSubgroupError("no historical scores for z=0")
        if np.any(np.diff(self.scores_z1_desc) > 0):
            raise ParameterError("scores_z1_desc must be sorted descending")
        if np.any(np.diff(self.scores_z0_asc) < 0):
            raise ParameterError("scores_z0_asc must be sorted ascending")

    @property
    def n0(self):
        return int(self.scores_z0_asc.shape[0])

    @property
    def n1(self):
        return int(self.scores_z1_desc.shape[0])

    @cached_property
    def cdf0(self):
        return EmpiricalCdf(self.scores_z0_asc)

    @cached_property
    def cdf1(self):
        return EmpiricalCdf(self.scores_z1_desc)

    def cdf(self, group):
        return self.cdf1 if group == 1 else self.cdf0

    def score(self, features):
        return np.asarray(features, dtype=float) @ self.beta_hat


def fit_selector(history, beta_hat=None):
    """
    Fits OLS on ``history`` and tabulates the per subgroup scores.

    ``beta_hat`` can be passed when the OLS fit of this history is already known.
    """

    for group, count in ((0, history.n0), (1, history.n1)):
        if count == 0:
            raise MissingSubgroupError(
                "the history has no records with z=%d, the fair policy needs both subgroups"
                % group
            )
    if beta_hat is None:
        beta_hat = ols_fit(history)
    scores = history.features @ beta_hat
    return FittedSelector(
        beta_hat=beta_hat,
        scores_z1_desc=np.sort(scores[history.z == 1])[::-1],
        scores_z0_asc=np.sort(scores[history.z == 0]),
    )


def check_group_sizes(K0, K1):
    for name, value in (("K0", K0), ("K1", K1)):
        if isinstance(value, bool) or int(value) != value or value < 1:
            raise ParameterError("%s must be a positive integer, got %r" % (name, value))
    return int(K0), int(K1)


def that_eval(selector, K0, K1, t):
    """
    The centered functional

        T(t) = 1/n0 sum_m F1(s_m + t)^K1 F0(s_m)^(K0 - 1) - 1/K

    over the group zero scores ``s_m``, with the plug-in empirical cdfs.
    """

    K0, K1 = check_group_sizes(K0, K1)
    scores0 = selector.scores_z0_asc
    upper = selector.cdf1(scores0 + t) ** K1
    lower = selector.cdf0(scores0) ** (K0 - 1)
    return float(np.mean(upper * lower) - 1.0 / (K0 + K1))
