import logging
import math
from enum import Enum

import numpy as np

from fairselect.conf import get_setting
from fairselect.exceptions import ParameterError
from fairselect.rng import derive_stream

from .datasets import CandidatePool, HistoryDataset, PopulationTable, frozen_array

logger = logging.getLogger(__name__)


class ProcessKind(Enum):
    SYNTHETIC_GAUSSIAN = "synthetic"
    EMPIRICAL_BOOTSTRAP = "empirical"


def _check_probability(rho):
    rho = float(rho)
    if not 0.0 < rho < 1.0:
        raise ParameterError("rho must be strictly inside (0, 1), got %r" % rho)
    return rho


def _check_positive(name, value, allow_zero=False):
    value = float(value)
    if not math.isfinite(value) or value < 0 or (value == 0 and not allow_zero):
        kind = "nonnegative" if allow_zero else "positive"
        raise ParameterError("%s must be a finite %s number, got %r" % (name, kind, value))
    return value


def _cholesky(covariance):
    try:
        return np.linalg.cholesky(covariance)
    except np.linalg.LinAlgError:
        jitter = get_setting("CHOLESKY_JITTER")
        logger.warning(
            "covariance is not numerically positive definite, retrying with %g "
            "diagonal jitter",
            jitter,
        )
    try:
        return np.linalg.cholesky(covariance + jitter * np.eye(covariance.shape[0]))
    except np.linalg.LinAlgError:
        raise ParameterError("covariance matrix is not positive semidefinite")


class DataGeneratingProcess:
    """
    The law of applicants ``(X, Z)`` and their responses ``Y``.

    A synthetic process draws ``Z ~ Bernoulli(rho)``, ``X | Z=z ~ N(mu_z, C_z)``
    with ``C_z = tau_z A_z A_z'`` and ``Y = beta'X + eps``. An empirical process
    draws whole rows uniformly, with replacement, from a ``PopulationTable``.

    Build one with ``make_synthetic_dgp`` or ``make_empirical_dgp``; instances
    are never modified afterwards and can be shared between threads.
    """

    def __init__(
        self,
        kind,
        rho,
        beta=None,
        noise_sd=0.0,
        cov_factors=None,
        scales=None,
        means=None,
        population=None,
    ):
        self.kind = ProcessKind(kind)
        self.rho = _check_probability(rho)
        self.population = population
        if self.kind is ProcessKind.EMPIRICAL_BOOTSTRAP:
            if not isinstance(population, PopulationTable):
                raise ParameterError("an empirical process needs a PopulationTable")
            self.beta = None
            self.noise_sd = None
            self.cov_factors = self.scales = self.means = None
            self._chol = None
            return

        self.beta = frozen_array(beta)
        p = self.beta.shape[0]
        if self.beta.ndim != 1 or p < 1 or not np.all(np.isfinite(self.beta)):
            raise ParameterError("beta must be a finite vector")
        self.noise_sd = _check_positive("noise_sd", noise_sd, allow_zero=True)
        self.cov_factors = tuple(frozen_array(factor) for factor in cov_factors)
        self.scales = tuple(_check_positive("tau", tau) for tau in scales)
        if means is None:
            means = (np.zeros(p), np.zeros(p))
        self.means = tuple(frozen_array(mean) for mean in means)
        for factor, mean in zip(self.cov_factors, self.means):
            if factor.shape != (p, p) or not np.all(np.isfinite(factor)):
                raise ParameterError("covariance factors must be finite %dx%d matrices" % (p, p))
            if mean.shape != (p,) or not np.all(np.isfinite(mean)):
                raise ParameterError("means must be finite vectors of length %d" % p)
        self._chol = tuple(_cholesky(self.covariance(group)) for group in (0, 1))

    def __repr__(self):
        return "<DataGeneratingProcess %s p=%d rho=%g>" % (
            self.kind.value,
            self.p,
            self.rho,
        )

    @property
    def is_synthetic(self):
        return self.kind is ProcessKind.SYNTHETIC_GAUSSIAN

    @property
    def p(self):
        if self.is_synthetic:
            return int(self.beta.shape[0])
        return self.population.p

    def covariance(self, group):
        """``C_z = tau_z A_z A_z'``, symmetric positive semidefinite."""

        factor = self.cov_factors[group]
        return self.scales[group] * (factor @ factor.T)

    def draw(self, size, generator, subgroup=None, with_responses=True):
        """
        Draws ``size`` i.i.d. records as ``(features, z, y)``.

        ``subgroup`` restricts every draw to one subgroup (the conditional law
        given ``Z``); ``y`` is ``None`` for synthetic draws without responses.
        """

        if self.is_synthetic:
            return self._draw_synthetic(size, generator, subgroup, with_responses)
        return self._draw_empirical(size, generator, subgroup)

    def _draw_synthetic(self, size, generator, subgroup, with_responses):
        if subgroup is None:
            z = (generator.random(size) < self.rho).astype(np.int8)
        else:
            z = np.full(size, subgroup, dtype=np.int8)
        noise = generator.standard_normal((size, self.p))
        features = np.empty((size, self.p))
        for group in (0, 1):
            rows = z == group
            features[rows] = self.means[group] + noise[rows] @ self._chol[group].T
        y = None
        if with_responses:
            y = features @ self.beta + self.noise_sd * generator.standard_normal(size)
        return features, z, y

    def _draw_empirical(self, size, generator, subgroup):
        population = self.population
        if subgroup is None:
            rows = generator.integers(0, population.N, size=size)
        else:
            members = population.members(subgroup)
            rows = members[generator.integers(0, members.shape[0], size=size)]
        return population.features[rows], population.z[rows], population.y[rows]


def make_synthetic_dgp(
    p,
    rho,
    tau0,
    tau1,
    noise_sd,
    seed,
    mean0=None,
    mean1=None,
    shared_factor=False,
):
    """
    Builds a synthetic Gaussian process with ``beta ~ N(0, I_p)`` and standard
    normal covariance factors drawn once from ``seed``.

    With ``shared_factor`` both subgroups use the same factor ``A`` so their
    covariances only differ by the scales ``tau0`` and ``tau1``.
    """

    if isinstance(p, bool) or int(p) != p or p < 1:
        raise ParameterError("p must be a positive integer, got %r" % (p,))
    p = int(p)
    tau0 = _check_positive("tau0", tau0)
    tau1 = _check_positive("tau1", tau1)
    generator = derive_stream(seed, 0, "process").generator
    beta = generator.standard_normal(p)
    factor0 = generator.standard_normal((p, p))
    factor1 = factor0 if shared_factor else generator.standard_normal((p, p))
    means = None
    if mean0 is not None or mean1 is not None:
        means = tuple(np.zeros(p) if mean is None else mean for mean in (mean0, mean1))
    return DataGeneratingProcess(
        ProcessKind.SYNTHETIC_GAUSSIAN,
        rho,
        beta=beta,
        noise_sd=noise_sd,
        cov_factors=(factor0, factor1),
        scales=(tau0, tau1),
        means=means,
    )


def make_empirical_dgp(population):
    """Builds a bootstrap process treating ``population`` as the whole population."""

    return DataGeneratingProcess(
        ProcessKind.EMPIRICAL_BOOTSTRAP,
        population.count(1) / population.N,
        population=population,
    )


def _check_size(name, size):
    if isinstance(size, bool) or int(size) != size or size < 1:
        raise ParameterError("%s must be a positive integer, got %r" % (name, size))
    return int(size)


def sample_history(dgp, n, rng_stream):
    n = _check_size("n", n)
    features, z, y = dgp.draw(n, rng_stream.generator)
    return HistoryDataset(features, z, y)


def sample_pool(dgp, K, rng_stream, subgroup=None):
    K = _check_size("K", K)
    features, z, y = dgp.draw(
        K, rng_stream.generator, subgroup=subgroup, with_responses=False
    )
    return CandidatePool(features, z, outcomes=y)


def sample_population(dgp, N, rng_stream):
    """Draws a finite population with responses, e.g. to build a CSV fixture."""

    N = _check_size("N", N)
    features, z, y = dgp.draw(N, rng_stream.generator)
    return PopulationTable(features, z, y)
