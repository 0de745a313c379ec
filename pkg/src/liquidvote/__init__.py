"""Winner determination and bribery for liquid democracy election graphs."""

from .delegation_bribery import AchievabilityResult, BribeSet, achievable, apply_bribes, bribe_majority, bribe_plurality
from .election_bribery import (
    BriberyQuery,
    CostModel,
    EditSet,
    Goal,
    InvalidEditError,
    SearchMode,
    apply_edits,
    solve_election_bribery,
)
from .formats import (
    ParseError,
    parse_bribes,
    parse_delegation,
    parse_edits,
    parse_instance,
    serialize_bribes,
    serialize_delegation,
    serialize_edits,
    serialize_instance,
)
from .graph import (
    MAJORITY,
    PLURALITY,
    DelegationGraph,
    ElectionGraph,
    GraphError,
    InvalidDelegationError,
    ValidationReport,
    VotingRule,
    is_delegation_subgraph,
    res_rev_bfs,
    rev_bfs,
    some_delegation,
    validate_election_graph,
    vertex_key,
    vote_counts,
    voting_power,
    winner_set,
)
from .winner_determination import (
    Decision,
    Quantifier,
    SearchBudgetExceeded,
    VoteBounds,
    all_majority,
    all_plurality,
    decide,
    equal_power,
    one_majority,
    one_plurality,
    vote_bounds,
)

__version__ = "0.1.0"
