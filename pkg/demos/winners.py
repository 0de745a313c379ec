"""Who can win, and who must win, when agents may pick among several delegates.

Three agents and two alternatives: a1 trusts c, a2 trusts d, and a3 is happy
to hand its vote to either a1 or a2.  Depending on a3's pick, c ends up with
one or two votes.
"""

from liquidvote import (
    MAJORITY,
    PLURALITY,
    ElectionGraph,
    Quantifier,
    decide,
    serialize_delegation,
    vote_bounds,
    vote_counts,
)

g = ElectionGraph(["c", "d"], {"a1": ["c"], "a2": ["d"], "a3": ["a1", "a2"]})

for s in g.alternatives:
    b = vote_bounds(g, s)
    print(f"{s}: between {b.lo} and {b.hi} votes")
    print(f"  worst case  {vote_counts(b.witness_lo)}")
    print(f"  best case   {vote_counts(b.witness_hi)}")

print()
for rule, label in ((MAJORITY, "majority"), (PLURALITY, "plurality")):
    for q in Quantifier:
        d = decide(g, "c", rule, q)
        print(f"c wins under {label}, {q.name.lower()} delegation(s): {d.answer}")
        if d.certificate is not None:
            kind = "witness" if q is Quantifier.ONE else "counterexample"
            print(f"  {kind}:")
            for line in serialize_delegation(d.certificate).splitlines():
                print("   ", line)
