import numpy as np

from fairselect.models import PolicyDecision
from fairselect.strategies import BaseStrategy, register


@register("lottery")
class LotteryStrategy(BaseStrategy):
    """Picks a candidate uniformly at random, a floor every other policy should beat."""

    label = "Lottery"

    def decide(self, context, pool):
        generator = context.stream("lottery").generator
        index = int(generator.integers(0, pool.K))
        return PolicyDecision(
            selected_index=index,
            selected_subgroup=int(pool.z[index]),
            scores=np.zeros(pool.K),
        )
