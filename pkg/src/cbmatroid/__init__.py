"""Exact matroid computations around the Cayley-Bacharach property for flats."""

__version__ = "0.1.0"

from .errors import (ConventionMismatchError, DegenerateError, InvalidPartitionError,  # noqa: E402
                     MatroidInputError, ParameterError, ScopeError, SearchBudgetExceeded)
from .matroid import (Matroid, cycle_matroid, direct_sum, free, from_m_partition,  # noqa: E402
                      minor_interval, uniform)
from .mcb import (McbVerdict, check_mcb, check_mcb_exhaustive, check_mcb_naive,  # noqa: E402
                  check_smcb, cover_profiles, min_total_rank_cover, validate_witness)

__all__ = [
    "ConventionMismatchError", "DegenerateError", "InvalidPartitionError", "MatroidInputError",
    "ParameterError", "ScopeError", "SearchBudgetExceeded", "Matroid", "cycle_matroid",
    "direct_sum", "free", "from_m_partition", "minor_interval", "uniform", "McbVerdict",
    "check_mcb", "check_mcb_exhaustive", "check_mcb_naive", "check_smcb", "cover_profiles",
    "min_total_rank_cover", "validate_witness",
]
