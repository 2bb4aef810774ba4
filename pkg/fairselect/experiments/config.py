from dataclasses import dataclass, field
from typing import Optional, Tuple

from fairselect.conf import get_setting
from fairselect.exceptions import ParameterError
from fairselect.models.process import DataGeneratingProcess
from fairselect.quantiles import QuantileMode


def _positive_int(name, value):
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise ParameterError("%s must be a positive integer, got %r" % (name, value))
    return int(value)


@dataclass(frozen=True)
class ExperimentConfig:
    """
    One macro-replicated selection experiment.

    Every replication draws a history of ``n`` records (``n`` defaults to the
    last entry of ``schedule``), and at each sample size ``m`` of the schedule
    the policies are shown its first ``m`` records and decide on a fresh pool
    of ``K`` candidates.
    """

    process: DataGeneratingProcess
    K: int
    schedule: Tuple[int, ...]
    macro_reps: int
    policies: Tuple[str, ...] = ("max", "fair")
    quantile_mode: QuantileMode = field(default_factory=QuantileMode)
    seed: int = 0
    n: Optional[int] = None
    threads: Optional[int] = None
    penalty_lambda: float = 1.0

    def __post_init__(self):
        schedule = tuple(_positive_int("schedule entry", m) for m in self.schedule)
        if not schedule:
            raise ParameterError("the sample size schedule is empty")
        if any(later <= earlier for earlier, later in zip(schedule, schedule[1:])):
            raise ParameterError("the sample size schedule must be strictly increasing")
        n = schedule[-1] if self.n is None else _positive_int("n", self.n)
        if schedule[-1] > n:
            raise ParameterError(
                "the schedule goes up to %d but histories only have %d records"
                % (schedule[-1], n)
            )
        if not self.policies:
            raise ParameterError("at least one policy is needed")
        if self.seed < 0:
            raise ParameterError("seed must be nonnegative, got %r" % self.seed)
        threads = get_setting("THREADS") if self.threads is None else self.threads
        object.__setattr__(self, "K", _positive_int("K", self.K))
        object.__setattr__(self, "schedule", schedule)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "macro_reps", _positive_int("macro_reps", self.macro_reps))
        object.__setattr__(self, "threads", _positive_int("threads", threads))
        object.__setattr__(self, "policies", tuple(self.policies))
