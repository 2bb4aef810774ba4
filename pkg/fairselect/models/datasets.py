from dataclasses import dataclass

import numpy as np

from fairselect.exceptions import MissingSubgroupError, ParameterError


def frozen_array(values, dtype=float):
    """A read only copy of ``values``."""

    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


def _check_features(features, rows=None):
    features = frozen_array(features)
    if features.ndim != 2 or features.shape[1] < 1:
        raise ParameterError("features must be a matrix with at least one column")
    if rows is not None and features.shape[0] != rows:
        raise ParameterError(
            "expected %d feature rows, got %d" % (rows, features.shape[0])
        )
    if not np.all(np.isfinite(features)):
        raise ParameterError("features must be finite")
    return features


def _check_groups(z):
    raw = np.asarray(z)
    if raw.ndim != 1:
        raise ParameterError("z must be a vector")
    if not np.all(np.isin(raw, (0, 1))):
        raise ParameterError("z must only contain 0 and 1")
    return frozen_array(raw, dtype=np.int8)


def _check_responses(y, rows):
    y = frozen_array(y)
    if y.ndim != 1 or y.shape[0] != rows:
        raise ParameterError("y must be a vector of length %d" % rows)
    if not np.all(np.isfinite(y)):
        raise ParameterError("y must be finite")
    return y


class _Records:
    """Shared validation for row oriented tables of ``(x, z)`` pairs."""

    def __init__(self, features, z):
        self.z = _check_groups(z)
        self.features = _check_features(features, rows=self.z.shape[0])

    def __len__(self):
        return int(self.z.shape[0])

    @property
    def p(self):
        return int(self.features.shape[1])

    def count(self, group):
        return int(np.count_nonzero(self.z == group))

    def members(self, group):
        """Row indices belonging to ``group``, ascending."""

        return np.flatnonzero(self.z == group)


class HistoryDataset(_Records):
    """The labeled historical records ``(X_m, Z_m, Y_m)`` of past decisions."""

    def __init__(self, features, z, y):
        super().__init__(features, z)
        if len(self) < 1:
            raise ParameterError("a history needs at least one record")
        self.y = _check_responses(y, len(self))
        self.n1 = self.count(1)
        self.n0 = len(self) - self.n1

    def __repr__(self):
        return "<HistoryDataset n=%d p=%d n0=%d n1=%d>" % (
            self.n,
            self.p,
            self.n0,
            self.n1,
        )

    @property
    def n(self):
        return len(self)

    def prefix(self, m):
        """The first ``m`` records, as seen by a policy shown part of the history."""

        if not 1 <= m <= self.n:
            raise ParameterError("prefix length must be in [1, %d], got %d" % (self.n, m))
        return HistoryDataset(self.features[:m], self.z[:m], self.y[:m])

    def subgroup(self, group):
        """The ``(features, y)`` rows of one subgroup."""

        rows = self.members(group)
        return self.features[rows], self.y[rows]


class CandidatePool(_Records):
    """
    The ``K`` applicants a single decision chooses from.

    ``outcomes`` holds recorded responses when candidates are bootstrapped from
    a finite population. Policies never look at it, it is only read when the
    performance of a decision is measured.
    """

    def __init__(self, features, z, outcomes=None):
        super().__init__(features, z)
        if len(self) < 1:
            raise ParameterError("a pool needs at least one candidate")
        self.outcomes = None if outcomes is None else _check_responses(outcomes, len(self))
        self.K1 = self.count(1)
        self.K0 = len(self) - self.K1

    def __repr__(self):
        return "<CandidatePool K=%d K0=%d K1=%d>" % (self.K, self.K0, self.K1)

    @property
    def K(self):
        return len(self)

    @property
    def is_mixed(self):
        return self.K0 > 0 and self.K1 > 0


@dataclass(frozen=True)
class PopulationSummary:
    N: int
    p: int
    n0: int
    n1: int
    mean_y0: float
    mean_y1: float

    @property
    def disparity(self):
        """The outcome gap ``E(Y|Z=1) - E(Y|Z=0)`` between the subgroups."""

        return self.mean_y1 - self.mean_y0

    def lines(self):
        return [
            "N = %d" % self.N,
            "p = %d" % self.p,
            "n0 = %d" % self.n0,
            "n1 = %d" % self.n1,
            "mean_y0 = %r" % self.mean_y0,
            "mean_y1 = %r" % self.mean_y1,
            "disparity = %r" % self.disparity,
        ]


class PopulationTable(_Records):
    """A finite population with recorded responses, used as a data generating law."""

    def __init__(self, features, z, y):
        super().__init__(features, z)
        if len(self) < 2:
            raise ParameterError("a population needs at least two records")
        self.y = _check_responses(y, len(self))
        for group in (0, 1):
            if self.count(group) == 0:
                raise MissingSubgroupError(
                    "the population has no records with z=%d" % group
                )

    def __repr__(self):
        return "<PopulationTable N=%d p=%d>" % (self.N, self.p)

    @property
    def N(self):
        return len(self)

    def as_history(self):
        return HistoryDataset(self.features, self.z, self.y)

    def summary(self):
        means = [float(np.mean(self.y[self.z == group])) for group in (0, 1)]
        return PopulationSummary(
            N=self.N,
            p=self.p,
            n0=self.count(0),
            n1=self.count(1),
            mean_y0=means[0],
            mean_y1=means[1],
        )
