"""Two flavours of bribery.

First the briber edits the election graph itself: with two arc deletions in
a graph built from a triangle, s becomes the majority winner in every
delegation.  Then the briber works on one fixed delegation and pays a single
agent to redirect its accumulated votes.
"""

from liquidvote import (
    MAJORITY,
    PLURALITY,
    BriberyQuery,
    DelegationGraph,
    Quantifier,
    apply_bribes,
    apply_edits,
    bribe_plurality,
    decide,
    solve_election_bribery,
    vote_counts,
    voting_power,
)
from liquidvote.reductions import UndirectedGraph, clique_to_all_eb

triangle = UndirectedGraph(("a", "b", "c"), (("a", "b"), ("b", "c"), ("a", "c")))
inst = clique_to_all_eb(triangle, 2)
g = inst.graph
print(f"graph: {g.n_agents} agents, budget {inst.budget}")
print("s always wins before bribery:", decide(g, "s", MAJORITY, Quantifier.ALL).answer)

edits = solve_election_bribery(g, BriberyQuery("s", inst.budget, MAJORITY, Quantifier.ALL))
print("deleted arcs:", sorted(edits.deletions))
print("s always wins after bribery: ", decide(apply_edits(g, edits), "s", MAJORITY, Quantifier.ALL).answer)

# A fixed delegation in which s, t and r receive 6, 5 and 12 votes.
choice = {"p6": "s", "p5": "t", "r1": "r", "r2": "r", "r3": "r"}
for head, extra in (("p6", 5), ("p5", 4), ("r1", 3), ("r2", 3), ("r3", 3)):
    for i in range(extra):
        choice[f"{head}_{i}"] = head
d = DelegationGraph(["s", "t", "r"], choice)
vp = voting_power(d)
print()
print("votes before:", vote_counts(d))
print("direct voters:", {a: vp[a] for a in ("p6", "p5", "r1", "r2", "r3")})

bribes = bribe_plurality(d, "s", 1)
print("bribe:", bribes.as_dict())
print("votes after: ", vote_counts(apply_bribes(d, bribes)))
