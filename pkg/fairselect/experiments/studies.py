import logging
import math
from dataclasses import dataclass
from functools import partial
from typing import Optional, Tuple

import numpy as np

from fairselect.conf import get_setting
from fairselect.estimation import fit_selector
from fairselect.exceptions import FairSelectError, ParameterError
from fairselect.ideal import ContinuousScoreLaw, IdealModel
from fairselect.models.process import make_synthetic_dgp, sample_history, sample_pool
from fairselect.policies import policy_empirical_fair, policy_ideal_fair
from fairselect.quantiles import QuantileMode
from fairselect.rng import derive_stream

from .harness import check_failures, map_replications

logger = logging.getLogger(__name__)


def _binomial_se(p, count):
    return math.sqrt(p * (1.0 - p) / count) if count else float("nan")


def _check_schedule(name, schedule):
    schedule = tuple(int(value) for value in schedule)
    if not schedule or schedule[0] < 1:
        raise ParameterError("%s must hold positive integers" % name)
    if any(later <= earlier for earlier, later in zip(schedule, schedule[1:])):
        raise ParameterError("%s must be strictly increasing" % name)
    return schedule


@dataclass(frozen=True)
class DeviationPoint:
    n: int
    p_deviation: float
    se: float
    replications: int


@dataclass(frozen=True)
class DeviationStudy:
    """How often the empirical fair policy picks another candidate than the ideal one."""

    points: Tuple[DeviationPoint, ...]
    slope: Optional[float]


def _deviations(dgp, model, K, schedule, quantile_mode, seed, pool_subgroup, replication):
    history = sample_history(dgp, schedule[-1], derive_stream(seed, replication, "history"))
    cells = []
    for n in schedule:
        pool = sample_pool(
            dgp,
            K,
            derive_stream(seed, replication, "pool-%d" % n),
            subgroup=pool_subgroup,
        )
        try:
            selector = fit_selector(history.prefix(n))
            stream = derive_stream(seed, replication, "quantile-%d" % n)
            empirical = policy_empirical_fair(selector, pool, quantile_mode, stream)
        except FairSelectError as e:
            logger.debug("replication %d failed at n=%d: %s", replication, n, e)
            cells.append(None)
            continue
        ideal = policy_ideal_fair(model, pool)
        cells.append(empirical.selected_index != ideal.selected_index)
    return cells


def estimate_deviation_rate(
    dgp,
    K,
    n_schedule,
    macro_reps,
    seed,
    quantile_mode=None,
    threads=None,
    pool_subgroup=None,
):
    """
    Estimates ``P(pi_hat != pi_star)`` at every history size in ``n_schedule``
    and fits the slope of ``log p`` against ``log n``.

    Sizes where no deviation was observed are left out of the fit. With fewer
    than two usable sizes the slope is ``None``. ``pool_subgroup`` draws every
    candidate from one subgroup.
    """

    schedule = _check_schedule("n_schedule", n_schedule)
    quantile_mode = quantile_mode or QuantileMode()
    threads = threads or get_setting("THREADS")
    model = IdealModel.from_process(dgp)
    model.quantile_table(K)

    task = partial(
        _deviations, dgp, model, K, schedule, quantile_mode, seed, pool_subgroup
    )
    results = map_replications(task, macro_reps, threads)

    points = []
    for position, n in enumerate(schedule):
        cells = [result[position] for result in results]
        done = [cell for cell in cells if cell is not None]
        check_failures(len(cells) - len(done), len(cells), "n=%d" % n)
        p_deviation = float(np.mean(done)) if done else float("nan")
        points.append(
            DeviationPoint(n, p_deviation, _binomial_se(p_deviation, len(done)), len(done))
        )

    usable = [point for point in points if point.p_deviation > 0]
    for point in points:
        if not point.p_deviation > 0:
            logger.info("no deviations at n=%d, leaving it out of the slope fit", point.n)
    slope = None
    if len(usable) >= 2:
        slope = float(
            np.polyfit(
                np.log([point.n for point in usable]),
                np.log([point.p_deviation for point in usable]),
                1,
            )[0]
        )
    else:
        logger.warning("fewer than two sizes with deviations, no slope fitted")
    return DeviationStudy(tuple(points), slope)


@dataclass(frozen=True)
class ExtremeValuePoint:
    K: int
    p_minority: float
    se: float


def run_extreme_value_study(
    tau0,
    tau1,
    K_schedule,
    macro_reps,
    seed,
    rho=0.15,
    p=30,
    chunk_size=10000,
):
    """
    How often the unconstrained argmax with the true coefficients selects a
    minority candidate, for growing pool sizes.

    Both subgroups share one covariance factor, so their score laws are
    ``N(0, tau_z s^2)`` and only differ through ``tau0`` and ``tau1``. Pools are
    drawn straight from these score laws in chunks of ``chunk_size``.
    """

    schedule = _check_schedule("K_schedule", K_schedule)
    if isinstance(macro_reps, bool) or int(macro_reps) != macro_reps or macro_reps < 1:
        raise ParameterError("macro_reps must be a positive integer, got %r" % (macro_reps,))
    dgp = make_synthetic_dgp(p, rho, tau0, tau1, noise_sd=1.0, seed=seed, shared_factor=True)
    law0, law1 = IdealModel.from_process(dgp).laws

    points = []
    for K in schedule:
        hits = 0
        for chunk, start in enumerate(range(0, macro_reps, chunk_size)):
            size = min(chunk_size, macro_reps - start)
            generator = derive_stream(seed, chunk, "extreme-value-%d" % K).generator
            minority = generator.random((size, K)) < dgp.rho
            scores = np.where(
                minority,
                law1.sample((size, K), generator),
                law0.sample((size, K), generator),
            )
            winners = scores.argmax(axis=1)
            hits += int(minority[np.arange(size), winners].sum())
        p_minority = hits / macro_reps
        logger.info("K=%d: minority selected in %d of %d pools", K, hits, macro_reps)
        points.append(ExtremeValuePoint(K, p_minority, _binomial_se(p_minority, macro_reps)))
    return points


@dataclass(frozen=True)
class CounterexampleResult:
    """
    Conditional expected performance given ``Z = (0, 1)`` of the percentile
    ranking, of the policy hiring candidate two iff its percentile exceeds one
    half, and of the ideal fair policy.
    """

    pi_u_value: float
    alt_policy_value: float
    pi_star_value: float
    pi_u_se: float
    alt_policy_se: float
    pi_star_se: float
    threshold: float
    samples: int


def counterexample_model():
    """Two candidates, scores ``3/8 + U/4`` for ``z=0`` and ``U`` for ``z=1``."""

    return IdealModel(
        beta=[1.0],
        law0=ContinuousScoreLaw.uniform(3.0 / 8.0, 5.0 / 8.0),
        law1=ContinuousScoreLaw.uniform(0.0, 1.0),
    )


def verify_counterexample(mc_samples, seed):
    """
    Monte Carlo check that ranking by within group percentile is fair but not
    optimal: the ideal fair policy beats both it and the alternative rule.
    """

    if isinstance(mc_samples, bool) or int(mc_samples) != mc_samples or mc_samples < 10000:
        raise ParameterError(
            "mc_samples must be an integer of at least 10000, got %r" % (mc_samples,)
        )
    mc_samples = int(mc_samples)
    model = counterexample_model()
    law0, law1 = model.laws
    threshold = model.quantile(1, 1)

    generator = derive_stream(seed, 0, "counterexample").generator
    score0 = law0.sample(mc_samples, generator)
    score1 = law1.sample(mc_samples, generator)
    percentile0 = law0.cdf(score0)
    percentile1 = law1.cdf(score1)

    # candidate 0 wins ties, as everywhere else
    values = {
        "pi_u": np.where(percentile1 > percentile0, score1, score0),
        "alt_policy": np.where(percentile1 > 0.5, score1, score0),
        "pi_star": np.where(score1 - score0 >= threshold, score1, score0),
    }
    means = {name: float(value.mean()) for name, value in values.items()}
    errors = {
        name: float(value.std(ddof=1)) / math.sqrt(mc_samples) for name, value in values.items()
    }
    return CounterexampleResult(
        pi_u_value=means["pi_u"],
        alt_policy_value=means["alt_policy"],
        pi_star_value=means["pi_star"],
        pi_u_se=errors["pi_u"],
        alt_policy_se=errors["alt_policy"],
        pi_star_se=errors["pi_star"],
        threshold=float(threshold),
        samples=mc_samples,
    )
