from .datasets import CandidatePool, HistoryDataset, PopulationSummary, PopulationTable
from .decision import PolicyDecision
from .process import (
    DataGeneratingProcess,
    ProcessKind,
    make_empirical_dgp,
    make_synthetic_dgp,
    sample_history,
    sample_pool,
    sample_population,
)

__all__ = [
    "CandidatePool",
    "DataGeneratingProcess",
    "HistoryDataset",
    "PolicyDecision",
    "PopulationSummary",
    "PopulationTable",
    "ProcessKind",
    "make_empirical_dgp",
    "make_synthetic_dgp",
    "sample_history",
    "sample_pool",
    "sample_population",
]
