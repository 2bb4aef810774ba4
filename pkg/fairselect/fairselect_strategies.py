from django.utils.translation import gettext_lazy as _

from fairselect.conf import get_setting
from fairselect.penalties import Penalty
from fairselect.policies import (
    policy_empirical_fair,
    policy_fair_prediction,
    policy_ideal_fair,
    policy_parity_of_treatment,
    policy_penalized,
)
from fairselect.strategies import BaseStrategy, register


class ParityOfTreatmentStrategy(BaseStrategy):
    label = _("Parity of treatment")

    def decide(self, context, pool):
        return policy_parity_of_treatment(context.beta_hat, pool)


class EmpiricalFairStrategy(BaseStrategy):
    label = _("Empirical fair policy")

    def decide(self, context, pool):
        stream = context.stream("quantile") if context.quantile_mode.needs_stream else None
        return policy_empirical_fair(context.selector, pool, context.quantile_mode, stream)


class FairPredictionStrategy(BaseStrategy):
    label = _("Fair prediction (plug-in percentiles)")

    def decide(self, context, pool):
        return policy_fair_prediction(context.selector, pool)


class PenalizedStrategy(BaseStrategy):
    penalty = None

    def decide(self, context, pool):
        theta = context.penalized(self.penalty, self.options.get("penalty_lambda"))
        return policy_penalized(theta, pool)


class PairwiseWeightedStrategy(PenalizedStrategy):
    label = _("Pairwise weighted penalty")
    penalty = Penalty.PAIRWISE_WEIGHTED


class GroupMeanResidualStrategy(PenalizedStrategy):
    label = _("Group mean residual penalty")
    penalty = Penalty.GROUP_MEAN_RESIDUAL


class IdealFairStrategy(BaseStrategy):
    label = _("Ideal fair policy")
    requires_model = True

    def decide(self, context, pool):
        return policy_ideal_fair(context.model, pool)


class OracleMaxStrategy(BaseStrategy):
    label = _("Parity of treatment (true coefficients)")
    requires_model = True

    def decide(self, context, pool):
        return policy_parity_of_treatment(context.model.beta, pool)


STRATEGY_MAPPING = {
    "max": ParityOfTreatmentStrategy,
    "fair": EmpiricalFairStrategy,
    "percentile": FairPredictionStrategy,
    "pairwise": PairwiseWeightedStrategy,
    "group_mean": GroupMeanResidualStrategy,
    "ideal": IdealFairStrategy,
    "oracle_max": OracleMaxStrategy,
}

enabled_strategies = get_setting("ENABLED_STRATEGIES")

for strategy_name in enabled_strategies:
    cls = STRATEGY_MAPPING.get(strategy_name, None)
    if not cls:
        raise KeyError("Strategy with name '%s' does not exist" % strategy_name)
    register(strategy_name, cls)
