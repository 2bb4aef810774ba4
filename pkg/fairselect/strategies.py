from django.core.exceptions import ImproperlyConfigured
from django.utils.functional import cached_property

from fairselect.conf import get_setting
from fairselect.estimation import fit_selector, ols_fit
from fairselect.penalties import Penalty, pairwise_penalty_matrix, penalized_fit
from fairselect.quantiles import QuantileMode
from fairselect.rng import derive_stream
from fairselect.utils.apps import get_app_submodules

_strategies = {}
_searched_for_strategies = False

BUILTIN_STRATEGY_MODULES = ["fairselect.fairselect_strategies"]


def register(strategy_name, cls=None):
    """
    Register strategy for ``strategy_name``. Can be used as a decorator::
        @register('coin')
        class CoinFlipStrategy(BaseStrategy):
            label = 'Coin flip'
    or as a function call::
        class CoinFlipStrategy(BaseStrategy):
            label = 'Coin flip'
        register('coin', CoinFlipStrategy)
    """

    if cls is None:

        def decorator(cls):
            register(strategy_name, cls)
            return cls

        return decorator

    _strategies[strategy_name] = cls


def search_for_strategies():
    global _searched_for_strategies
    if not _searched_for_strategies:
        list(get_app_submodules("fairselect_strategies"))
        _searched_for_strategies = True


def get_strategies():
    """Return the registered strategy classes."""

    search_for_strategies()
    builtin_enabled = get_setting("ENABLE_BUILTIN_STRATEGIES")
    return {
        name: cls
        for name, cls in _strategies.items()
        # builtins can be switched off so projects can override them
        if builtin_enabled or cls.__module__ not in BUILTIN_STRATEGY_MODULES
    }


def get_strategy(strategy_name):
    strategies = get_strategies()
    if strategy_name not in strategies:
        raise ImproperlyConfigured(
            "Could not find a registered strategy named '%s', available strategies "
            "are: %s" % (strategy_name, ", ".join(sorted(strategies)))
        )
    return strategies[strategy_name]


class DecisionContext:
    """
    What a strategy may look at for one replication at one sample size.

    Fits are computed on first use and shared by every strategy deciding on
    the same history. ``model`` is the ``IdealModel`` of the process, only
    present when a strategy asked for it.
    """

    def __init__(
        self,
        history,
        model=None,
        quantile_mode=None,
        seed=0,
        replication=0,
        penalty_lambda=1.0,
    ):
        self.history = history
        self.model = model
        self.quantile_mode = quantile_mode or QuantileMode()
        self.seed = seed
        self.replication = replication
        self.penalty_lambda = penalty_lambda
        self._penalized = {}

    @cached_property
    def beta_hat(self):
        return ols_fit(self.history)

    @cached_property
    def selector(self):
        return fit_selector(self.history, beta_hat=self.beta_hat)

    @cached_property
    def pairwise_matrix(self):
        return pairwise_penalty_matrix(self.history)

    def penalized(self, penalty, lam=None):
        penalty = Penalty(penalty)
        lam = self.penalty_lambda if lam is None else lam
        key = (penalty, lam)
        if key not in self._penalized:
            if lam == 0:
                self._penalized[key] = self.beta_hat
            else:
                matrix = self.pairwise_matrix if penalty is Penalty.PAIRWISE_WEIGHTED else None
                self._penalized[key] = penalized_fit(self.history, penalty, lam, matrix=matrix)
        return self._penalized[key]

    def stream(self, purpose):
        """A random stream owned by this replication, sample size and purpose."""

        return derive_stream(
            self.seed, self.replication, "%s-%d" % (purpose, self.history.n)
        )


class BaseStrategy:
    """A base selection strategy, all strategies must inherit this class.

    Usage::

        @register('oracle_max')
        class OracleMaxStrategy(BaseStrategy):
            label = 'Parity of treatment (true coefficients)'
            requires_model = True

            def decide(self, context, pool):
                return policy_parity_of_treatment(context.model.beta, pool)

    """

    label = None
    requires_model = False

    def __init__(self, **options):
        self.options = options

    def __repr__(self):
        return "<%s>" % self.__class__.__name__

    def decide(self, context, pool):
        """
        Return the ``PolicyDecision`` for ``pool``.

        Override this method to make a decision.
        """

        raise NotImplementedError("must implement decide(context, pool)")

    def __call__(self, context, pool):
        return self.decide(context, pool)
