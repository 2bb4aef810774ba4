import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class MetricsRow:
    """Average performance ``E(beta'X^pi)`` and parity ``P(Z^pi = 1)`` of one policy."""

    policy: str
    m: int
    mean_performance: float
    std_err_performance: float
    parity: float
    std_err_parity: float
    replications: int

    @classmethod
    def aggregate(cls, policy, m, performances, subgroups):
        """
        Summarizes per replication outcomes. Standard errors are the sample
        standard deviation over ``sqrt(R)`` for performance and the binomial
        ``sqrt(p(1-p)/R)`` for parity.
        """

        performances = np.asarray(performances, dtype=float)
        subgroups = np.asarray(subgroups, dtype=float)
        count = int(performances.shape[0])
        if count == 0:
            nan = float("nan")
            return cls(policy, m, nan, nan, nan, nan, 0)
        parity = float(subgroups.mean())
        spread = float(performances.std(ddof=1)) if count > 1 else 0.0
        return cls(
            policy=policy,
            m=m,
            mean_performance=float(performances.mean()),
            std_err_performance=spread / math.sqrt(count),
            parity=parity,
            std_err_parity=math.sqrt(parity * (1.0 - parity) / count),
            replications=count,
        )


@dataclass(frozen=True)
class SweepRow:
    """A penalized benchmark's metrics at one penalty strength."""

    penalty: str
    lam: float
    metrics: MetricsRow

    @property
    def performance(self):
        return self.metrics.mean_performance

    @property
    def parity(self):
        return self.metrics.parity
