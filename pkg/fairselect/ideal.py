import logging
import threading
from enum import Enum

import numpy as np
from scipy import optimize, stats

from fairselect.conf import get_setting
from fairselect.estimation import EmpiricalCdf, check_group_sizes, ols_fit
from fairselect.exceptions import NumericError, ParameterError
from fairselect.models.datasets import frozen_array
from fairselect.quantiles import difference_quantile, quantile_rank

logger = logging.getLogger(__name__)

UNIT_INTERVAL = (np.finfo(float).tiny, 1.0 - np.finfo(float).epsneg)


class ScoreLaw:
    """The law of the true score ``beta'X`` within one subgroup."""

    finite = False

    def cdf(self, r):
        raise NotImplementedError

    def sample(self, shape, generator):
        raise NotImplementedError

    def sample_max(self, k, size, generator):
        """``size`` draws of the best of ``k`` independent scores."""
        raise NotImplementedError

    @property
    def mean(self):
        raise NotImplementedError

    @property
    def variance(self):
        raise NotImplementedError


class ContinuousScoreLaw(ScoreLaw):
    """A score law backed by a frozen ``scipy.stats`` distribution."""

    def __init__(self, distribution):
        self.distribution = distribution

    def __repr__(self):
        return "<ContinuousScoreLaw %s%r>" % (
            self.distribution.dist.name,
            self.distribution.args or self.distribution.kwds,
        )

    @classmethod
    def gaussian(cls, mean, sd):
        """``N(mean, sd^2)``, collapsing to a point mass when ``sd`` is zero."""

        if sd <= 0:
            return FiniteScoreLaw([mean])
        return cls(stats.norm(loc=mean, scale=sd))

    @classmethod
    def uniform(cls, low, high):
        return cls(stats.uniform(loc=low, scale=high - low))

    def cdf(self, r):
        return self.distribution.cdf(r)

    def sample(self, shape, generator):
        return self.distribution.rvs(size=shape, random_state=generator)

    def sample_max(self, k, size, generator):
        levels = np.clip(generator.random(size) ** (1.0 / k), *UNIT_INTERVAL)
        return self.distribution.ppf(levels)

    @property
    def mean(self):
        return float(self.distribution.mean())

    @property
    def variance(self):
        return float(self.distribution.var())

    def bounds(self, center, spread):
        low, high = self.distribution.support()
        return max(low, center - spread), min(high, center + spread)


class FiniteScoreLaw(ScoreLaw):
    """The uniform law over a finite multiset of scores."""

    finite = True

    def __init__(self, values):
        self.ecdf = EmpiricalCdf(values)

    def __repr__(self):
        return "<FiniteScoreLaw atoms=%d>" % len(self.ecdf)

    @property
    def values(self):
        return self.ecdf.values

    def cdf(self, r):
        return self.ecdf(r)

    def sample(self, shape, generator):
        return self.values[generator.integers(0, len(self.ecdf), size=shape)]

    def sample_max(self, k, size, generator):
        picks = generator.integers(0, len(self.ecdf), size=(size, k))
        return self.values[picks.max(axis=1)]

    @property
    def mean(self):
        return float(np.mean(self.values))

    @property
    def variance(self):
        return float(np.var(self.values))

    def bounds(self, center, spread):
        return float(self.values[0]), float(self.values[-1])


class QuantileMethod(Enum):
    ANALYTIC_GRID = "grid"
    EXACT_FINITE = "exact"
    MONTE_CARLO = "monte_carlo"


class IdealModel:
    """
    Everything the ideal fair policy is allowed to know: the true coefficients
    and the score law of each subgroup.

    Quantiles are cached per ``(K0, K1)``; the cache is guarded so a model can
    be shared by threads.
    """

    def __init__(self, beta, law0, law1, rho=0.5):
        self.beta = frozen_array(beta)
        self.laws = (law0, law1)
        self.rho = float(rho)
        self._quantiles = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return "<IdealModel p=%d laws=%r>" % (self.beta.shape[0], self.laws)

    @classmethod
    def from_process(cls, dgp):
        """
        Synthetic processes give Gaussian score laws ``N(beta'mu_z, beta'C_z beta)``.
        Empirical ones use OLS on the whole population as ``beta`` and the
        population scores of each subgroup as finite laws.
        """

        if dgp.is_synthetic:
            beta = dgp.beta
            laws = [
                ContinuousScoreLaw.gaussian(
                    float(beta @ dgp.means[group]),
                    float(np.sqrt(max(beta @ dgp.covariance(group) @ beta, 0.0))),
                )
                for group in (0, 1)
            ]
            return cls(beta, laws[0], laws[1], rho=dgp.rho)

        population = dgp.population
        beta = ols_fit(population.as_history())
        scores = population.features @ beta
        laws = [FiniteScoreLaw(scores[population.z == group]) for group in (0, 1)]
        return cls(beta, laws[0], laws[1], rho=dgp.rho)

    def score(self, features):
        return np.asarray(features, dtype=float) @ self.beta

    def percentile(self, scores, z):
        """``U = F_z(score)`` for every candidate."""

        law0, law1 = self.laws
        return np.where(np.asarray(z) == 1, law1.cdf(scores), law0.cdf(scores))

    def mixture_moments(self):
        law0, law1 = self.laws
        weights = (1.0 - self.rho, self.rho)
        mean = weights[0] * law0.mean + weights[1] * law1.mean
        second = sum(
            weight * (law.variance + law.mean ** 2) for weight, law in zip(weights, self.laws)
        )
        return mean, float(np.sqrt(max(second - mean ** 2, 0.0)))

    def default_method(self):
        if all(law.finite for law in self.laws):
            return QuantileMethod.EXACT_FINITE
        return QuantileMethod.ANALYTIC_GRID

    def quantile(self, K0, K1):
        key = check_group_sizes(K0, K1)
        with self._lock:
            if key in self._quantiles:
                return self._quantiles[key]
        value = ideal_quantile(self, *key)
        with self._lock:
            return self._quantiles.setdefault(key, value)

    def quantile_table(self, K):
        """``q(K0, K - K0)`` for every split of a pool of ``K`` mixing both subgroups."""

        return {(K0, K - K0): self.quantile(K0, K - K0) for K0 in range(1, K)}


def _grid_integrand(model, K0, K1):
    """
    Returns ``excess(q) = P(R1 - R0 <= q) - K0/K`` and a bracket for its root.

    A finite group zero law is integrated over its atoms exactly. A continuous
    one is cut into ``GRID_POINTS`` cells over its support clipped to
    ``GRID_WIDTH`` mixture standard deviations around the mixture mean, and the
    Stieltjes integral against ``F0^K0`` uses the trapezoid rule.
    """

    law0, law1 = model.laws
    target = K0 / (K0 + K1)
    center, sd = model.mixture_moments()
    spread = get_setting("GRID_WIDTH") * sd

    if law0.finite:
        n0 = len(law0.ecdf)
        masses = np.diff((np.arange(n0 + 1) / n0) ** K0)
        nodes = law0.values

        def expected(q):
            return np.dot(masses, law1.cdf(nodes + q) ** K1)

    else:
        low, high = law0.bounds(center, spread)
        if not np.isfinite(low) or not np.isfinite(high) or not low < high:
            raise NumericError("cannot build an integration grid over [%r, %r]" % (low, high))
        nodes = np.linspace(low, high, get_setting("GRID_POINTS"))
        masses = np.diff(law0.cdf(nodes) ** K0)
        total = masses.sum()
        if not total > 0:
            raise NumericError("the integration grid carries no probability mass")
        masses = masses / total

        def expected(q):
            heights = law1.cdf(nodes + q) ** K1
            return np.dot(masses, 0.5 * (heights[1:] + heights[:-1]))

    nodes = np.asarray(nodes)
    low1, high1 = law1.bounds(center, spread)

    def excess(q):
        with np.errstate(over="raise", invalid="raise"):
            try:
                value = float(expected(q)) - target
            except FloatingPointError as e:
                raise NumericError("grid integration overflowed: %s" % e)
        if not np.isfinite(value):
            raise NumericError("grid integration produced a non-finite value")
        return value

    bracket = (low1 - nodes[-1] - 1.0, high1 - nodes[0] + 1.0)
    if not np.all(np.isfinite(bracket)):
        raise NumericError("the quantile bracket is unbounded")
    return excess, bracket


def _grid_quantile(model, K0, K1):
    excess, (low, high) = _grid_integrand(model, K0, K1)
    if excess(low) >= 0:
        return low
    tolerance = get_setting("QUANTILE_TOLERANCE")
    return float(optimize.bisect(excess, low, high, xtol=tolerance))


def _finite_quantile(model, K0, K1):
    law0, law1 = model.laws
    if not (law0.finite and law1.finite):
        raise ParameterError("exact ideal quantiles need finite score laws for both subgroups")
    return difference_quantile(law1.values, law0.values, K0, K1)


def _monte_carlo_quantile(model, K0, K1, samples, rng_stream):
    if rng_stream is None:
        raise ParameterError("Monte Carlo quantiles need a random stream")
    if samples < 1:
        raise ParameterError("samples must be positive, got %r" % samples)
    law0, law1 = model.laws
    generator = rng_stream.generator
    differences = np.sort(
        law1.sample_max(K1, samples, generator) - law0.sample_max(K0, samples, generator)
    )
    return float(differences[quantile_rank(samples, K0, K0 + K1) - 1])


def ideal_quantile(model, K0, K1, method=None, samples=100000, rng_stream=None):
    """
    The smallest ``q`` with ``P(R1 - R0 <= q) >= K0/K`` under the true score laws,
    where ``R_z`` is the best true score among the ``K_z`` candidates of subgroup ``z``.
    """

    K0, K1 = check_group_sizes(K0, K1)
    method = QuantileMethod(method) if method is not None else model.default_method()
    if method is QuantileMethod.EXACT_FINITE:
        return _finite_quantile(model, K0, K1)
    if method is QuantileMethod.MONTE_CARLO:
        return _monte_carlo_quantile(model, K0, K1, samples, rng_stream)
    value = _grid_quantile(model, K0, K1)
    logger.debug("ideal quantile for K0=%d K1=%d is %.10g", K0, K1, value)
    return value
