from dataclasses import dataclass
from typing import Optional

import numpy as np

from fairselect.exceptions import ParameterError


@dataclass(frozen=True, eq=False)
class PolicyDecision:
    """
    The candidate a policy picked plus what it looked at.

    ``scores`` are the per candidate ranking values the policy used, and
    ``r_hat_0`` / ``r_hat_1`` the best of them within each subgroup (``None``
    when the subgroup is absent from the pool). ``threshold`` is only set by
    policies comparing the subgroup bests against a quantile.
    """

    selected_index: int
    selected_subgroup: int
    scores: np.ndarray
    r_hat_0: Optional[float] = None
    r_hat_1: Optional[float] = None
    threshold: Optional[float] = None

    @property
    def gap(self):
        if self.r_hat_0 is None or self.r_hat_1 is None:
            return None
        return self.r_hat_1 - self.r_hat_0

    def validate(self, pool):
        """Raises ``ParameterError`` unless the pick is a candidate of ``pool`` with its z."""

        index = self.selected_index
        if isinstance(index, bool) or int(index) != index or not 0 <= index < pool.K:
            raise ParameterError(
                "selected_index %r is not a candidate of a pool of %d" % (index, pool.K)
            )
        actual = int(pool.z[int(index)])
        if self.selected_subgroup != actual:
            raise ParameterError(
                "selected_subgroup is %r but candidate %d has z=%d"
                % (self.selected_subgroup, index, actual)
            )
        if self.scores is not None and np.shape(self.scores) != (pool.K,):
            raise ParameterError(
                "expected %d scores, got shape %s" % (pool.K, np.shape(self.scores))
            )
