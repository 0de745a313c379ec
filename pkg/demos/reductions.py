"""Hard instances built from classic graph problems.

A path on three vertices has a vertex cover of size one (its middle vertex).
The generated election graph has a delegation giving both alternatives
exactly half of the votes, and from that delegation the cover can be read
back.  Asking for a cover of size zero yields an instance with no such
delegation.
"""

from liquidvote import equal_power, validate_election_graph, vote_counts
from liquidvote.reductions import UndirectedGraph, extract_vertex_cover, vc_to_equal_power

path = UndirectedGraph(("w1", "w2", "w3"), (("w1", "w2"), ("w2", "w3")))

for ell in (1, 0):
    out = vc_to_equal_power(path, ell)
    stats = validate_election_graph(out.graph).stats
    roles = {r: out.count(r) for r in sorted(set(out.roles.values()))}
    print(f"cover size {ell}: {out.graph.n_agents} agents {roles}, depth {stats.depth}")
    d = equal_power(out.graph)
    if d is None:
        print("  no delegation splits the votes evenly")
    else:
        print("  votes:", vote_counts(d), " cover:", sorted(extract_vertex_cover(out, d)))
