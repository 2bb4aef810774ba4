import logging
from concurrent.futures import ThreadPoolExecutor
from functools import partial

from fairselect.conf import get_setting
from fairselect.exceptions import ExperimentError, FairSelectError, ParameterError
from fairselect.ideal import IdealModel
from fairselect.models.process import sample_history, sample_pool
from fairselect.penalties import Penalty
from fairselect.rng import derive_stream
from fairselect.strategies import DecisionContext, get_strategy

from .metrics import MetricsRow, SweepRow

logger = logging.getLogger(__name__)


def map_replications(task, reps, threads):
    """``[task(0), ..., task(reps - 1)]``, in replication order whatever ``threads`` is."""

    if threads == 1:
        return [task(replication) for replication in range(reps)]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(task, range(reps)))


def check_failures(failures, total, label):
    budget = get_setting("FAILURE_BUDGET")
    if failures:
        logger.warning("%d of %d replications failed at %s", failures, total, label)
    if failures > budget * total:
        raise ExperimentError(
            "%d of %d replications failed at %s, over the %g%% failure budget"
            % (failures, total, label, 100 * budget)
        )


def performance(process, pool, index):
    """The recorded outcome of a bootstrapped candidate, else its true score."""

    if pool.outcomes is not None:
        return float(pool.outcomes[index])
    return float(pool.features[index] @ process.beta)


def _replicate(config, deciders, model, schedule, replication):
    """
    One macro-replication: a single history, then a fresh pool for every
    sample size. A sample size where any policy fails yields ``None``.
    """

    process = config.process
    history = sample_history(
        process, config.n, derive_stream(config.seed, replication, "history")
    )
    cells = []
    for m in schedule:
        pool = sample_pool(
            process, config.K, derive_stream(config.seed, replication, "pool-%d" % m)
        )
        context = DecisionContext(
            history.prefix(m),
            model=model,
            quantile_mode=config.quantile_mode,
            seed=config.seed,
            replication=replication,
            penalty_lambda=config.penalty_lambda,
        )
        try:
            decisions = [strategy(context, pool) for _, strategy in deciders]
        except FairSelectError as e:
            logger.debug("replication %d failed at m=%d: %s", replication, m, e)
            cells.append(None)
            continue
        for (label, _), decision in zip(deciders, decisions):
            try:
                decision.validate(pool)
            except ParameterError as e:
                raise ParameterError(
                    "strategy '%s' returned an inconsistent decision: %s" % (label, e)
                )
        cells.append(
            tuple(
                (performance(process, pool, decision.selected_index), decision.selected_subgroup)
                for decision in decisions
            )
        )
    return cells


def _collect(config, deciders, schedule):
    model = None
    if any(strategy.requires_model for _, strategy in deciders):
        model = IdealModel.from_process(config.process)
        # filled up front so threads only ever read the cache
        model.quantile_table(config.K)

    task = partial(_replicate, config, deciders, model, schedule)
    results = map_replications(task, config.macro_reps, config.threads)

    rows = {}
    for position, m in enumerate(schedule):
        cells = [result[position] for result in results]
        done = [cell for cell in cells if cell is not None]
        check_failures(len(cells) - len(done), len(cells), "m=%d" % m)
        for column, (label, _) in enumerate(deciders):
            rows[label, m] = MetricsRow.aggregate(
                label,
                m,
                [cell[column][0] for cell in done],
                [cell[column][1] for cell in done],
            )
        logger.info("m=%d: %d replications aggregated", m, len(done))
    return rows


def run_selection_experiment(config):
    """
    Performance and parity of every configured policy at every sample size,
    as a list of ``MetricsRow`` ordered by policy then sample size.
    """

    deciders = [
        (name, get_strategy(name)(penalty_lambda=config.penalty_lambda))
        for name in config.policies
    ]
    logger.info(
        "running %d replications of %s over m=%s",
        config.macro_reps,
        ", ".join(config.policies),
        ",".join(str(m) for m in config.schedule),
    )
    rows = _collect(config, deciders, config.schedule)
    return [rows[name, m] for name in config.policies for m in config.schedule]


def run_lambda_sweep(config, penalty, lambdas):
    """
    A penalized benchmark at every strength in ``lambdas``, evaluated on the
    full histories of ``config``. Replications reuse the histories and pools of
    ``run_selection_experiment`` with the same seed.
    """

    penalty = Penalty(penalty)
    lambdas = [float(lam) for lam in lambdas]
    if not lambdas:
        raise ParameterError("the lambda sweep needs at least one lambda")
    strategy_class = get_strategy(penalty.value)
    deciders = [
        ("%s:%r" % (penalty.value, lam), strategy_class(penalty_lambda=lam))
        for lam in lambdas
    ]
    rows = _collect(config, deciders, (config.n,))
    return [
        SweepRow(penalty.value, lam, rows[label, config.n])
        for (label, _), lam in zip(deciders, lambdas)
    ]
