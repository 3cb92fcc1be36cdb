"""Fair allocation of indivisible chores under binary supermodular costs."""

from .clean import Decomposition, augment, check_decomposition, compute_min_cost_allocation, decompose
from .core import (
    Allocation,
    Instance,
    Ordering,
    lex_compare,
    sorted_weighted_vector,
    utility_vector,
    weighted_utility_vector,
)
from .costs import ApprovalCapCost, CostOracle, ExplicitCost, PartitionCapCost, validate_binary_supermodular
from .yankee import (
    USW,
    WeightedLeximin,
    WeightedPMalfare,
    criterion_compare,
    gain_p_mean_malfare,
    gain_weighted_leximin,
    make_criterion,
    run_general_yankee_swap,
    select_agent,
)

__version__ = "0.1.0"
