"""Engine for the multi-agent prophet game.

Thin re-export of the compiled core: build instances from reward
distributions, compute guarantee thresholds, solve the selection value
function, evaluate strategy profiles exactly or by Monte Carlo, and check
equilibria.
"""

from ._core import (
    AgentEquilibriumCheck,
    ConfigError,
    Distribution,
    GameReport,
    Instance,
    NashReport,
    OrderStatReport,
    ProphError,
    Strategy,
    ThresholdTable,
    TieRule,
    WorstCaseCertificate,
    best_ell_random,
    best_ell_ranked,
    best_response_value,
    expected_order_stats_exact,
    expected_order_stats_mc,
    expected_utilities_exact,
    expected_utilities_mc,
    instance_from_json,
    random_tie_threshold,
    ranked_tie_threshold,
    reproduce_prop4,
    reproduce_prop6,
    solve_k_select,
    spe_profile,
    verify_nash,
    worst_case_utility_random,
    worst_case_utility_ranked,
)

__all__ = [
    "AgentEquilibriumCheck",
    "ConfigError",
    "Distribution",
    "GameReport",
    "Instance",
    "NashReport",
    "OrderStatReport",
    "ProphError",
    "Strategy",
    "ThresholdTable",
    "TieRule",
    "WorstCaseCertificate",
    "best_ell_random",
    "best_ell_ranked",
    "best_response_value",
    "expected_order_stats_exact",
    "expected_order_stats_mc",
    "expected_utilities_exact",
    "expected_utilities_mc",
    "instance_from_json",
    "random_tie_threshold",
    "ranked_tie_threshold",
    "reproduce_prop4",
    "reproduce_prop6",
    "solve_k_select",
    "spe_profile",
    "verify_nash",
    "worst_case_utility_random",
    "worst_case_utility_ranked",
]

__version__ = "0.1.0"
