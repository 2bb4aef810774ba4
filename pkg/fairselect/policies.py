"""
Selection policies. Each one is a pure function of its fitted inputs and a
``CandidatePool`` returning a ``PolicyDecision``; ties always go to the lowest
candidate index.
"""
import numpy as np

from fairselect.estimation import FittedSelector
from fairselect.exceptions import ParameterError
from fairselect.ideal import IdealModel, ideal_quantile
from fairselect.models.decision import PolicyDecision
from fairselect.quantiles import QuantileMode


def _best(values, rows):
    """Index of the largest value among ``rows``, lowest index on ties."""

    return int(rows[np.argmax(values[rows])])


def _subgroup_bests(values, pool):
    bests = []
    for group in (0, 1):
        rows = pool.members(group)
        bests.append(float(values[rows].max()) if rows.shape[0] else None)
    return bests


def _ranking_decision(values, pool):
    values = np.asarray(values, dtype=float)
    index = int(np.argmax(values))
    r_hat_0, r_hat_1 = _subgroup_bests(values, pool)
    return PolicyDecision(
        selected_index=index,
        selected_subgroup=int(pool.z[index]),
        scores=values,
        r_hat_0=r_hat_0,
        r_hat_1=r_hat_1,
    )


def _threshold_decision(scores, pool, threshold_for):
    """
    Picks the best candidate of subgroup one when ``R1 - R0 >= q`` and the best
    of subgroup zero otherwise. ``threshold_for(K0, K1)`` is only called for
    pools mixing both subgroups.
    """

    scores = np.asarray(scores, dtype=float)
    if not pool.is_mixed:
        return _ranking_decision(scores, pool)
    r_hat_0, r_hat_1 = _subgroup_bests(scores, pool)
    threshold = float(threshold_for(pool.K0, pool.K1))
    group = 1 if r_hat_1 - r_hat_0 >= threshold else 0
    index = _best(scores, pool.members(group))
    return PolicyDecision(
        selected_index=index,
        selected_subgroup=group,
        scores=scores,
        r_hat_0=r_hat_0,
        r_hat_1=r_hat_1,
        threshold=threshold,
    )


def policy_parity_of_treatment(beta, pool):
    """The unconstrained ``argmax_k beta'X^k``."""

    return _ranking_decision(pool.features @ np.asarray(beta, dtype=float), pool)


def policy_penalized(theta, pool):
    """``argmax_k theta'X^k`` for coefficients from a penalized fit."""

    return policy_parity_of_treatment(theta, pool)


def policy_fair_prediction(model_or_selector, pool):
    """
    Ranks candidates by their percentile within their own subgroup,
    ``U^k = F_{Z^k}(score)``, using the true laws of an ``IdealModel`` or the
    plug-in empirical cdfs of a ``FittedSelector``.
    """

    source = model_or_selector
    if isinstance(source, IdealModel):
        scores = source.score(pool.features)
        return _ranking_decision(source.percentile(scores, pool.z), pool)
    if isinstance(source, FittedSelector):
        scores = source.score(pool.features)
        percentiles = np.where(pool.z == 1, source.cdf1(scores), source.cdf0(scores))
        return _ranking_decision(percentiles, pool)
    raise ParameterError(
        "fair prediction needs an IdealModel or a FittedSelector, got %r" % (source,)
    )


def policy_ideal_fair(model, pool, method=None):
    """The optimal statistically fair policy when the true model is known."""

    if method is None:
        threshold_for = model.quantile
    else:

        def threshold_for(K0, K1):
            return ideal_quantile(model, K0, K1, method=method)

    return _threshold_decision(model.score(pool.features), pool, threshold_for)


def policy_empirical_fair(selector, pool, quantile_mode=None, rng_stream=None):
    """
    The plug-in fair policy: OLS scores compared against the empirical
    quantile of the historical subgroup scores.
    """

    quantile_mode = quantile_mode or QuantileMode()

    def threshold_for(K0, K1):
        return quantile_mode.estimate(selector, K0, K1, rng_stream)

    return _threshold_decision(selector.score(pool.features), pool, threshold_for)
