"""Shared fixtures, corpora and strategies for the test suite."""

from __future__ import annotations

import random
from itertools import combinations

from hypothesis import strategies as st

from liquidvote.graph import DelegationGraph, ElectionGraph, validate_election_graph
from liquidvote.reductions import UndirectedGraph, random_election_graph


def footnote_graph() -> ElectionGraph:
    return ElectionGraph(["c", "d"], {"a1": ["c"], "a2": ["d"], "a3": ["a1", "a2"]})


def worked_example() -> DelegationGraph:
    """Direct voters with power 6 (s), 5 (t) and 4, 4, 4 (r); 23 agents."""
    choice = {"p6": "s", "p5": "t", "r1": "r", "r2": "r", "r3": "r"}
    blocks = [("p6", 5), ("p5", 4), ("r1", 3), ("r2", 3), ("r3", 3)]
    i = 0
    for head, extra in blocks:
        prev = head
        for _ in range(extra):
            i += 1
            # alternate between chains and stars so that inner agents carry power too
            name = f"b{i}"
            choice[name] = prev if i % 2 else head
            prev = name
    return DelegationGraph(["s", "t", "r"], choice)


def chain_example() -> DelegationGraph:
    return DelegationGraph(["s", "t"], {"a2": "a1", "a3": "a1", "a1": "t", "a4": "s"})


def wd_corpus(count: int = 500, max_agents: int = 12) -> list[ElectionGraph]:
    """Seeded random election graphs: up to ``max_agents`` agents, 2-4
    alternatives, out-degree up to 3, alternating acyclic and cyclic."""
    out = []
    for seed in range(count):
        rng = random.Random(seed)
        out.append(
            random_election_graph(
                rng.randint(0, max_agents),
                rng.randint(2, 4),
                rng.randint(1, 3),
                acyclic=seed % 2 == 0,
                seed=seed,
            )
        )
    return out


def delegation_corpus(count: int = 300, max_agents: int = 10) -> list[DelegationGraph]:
    out = []
    for seed in range(count):
        rng = random.Random(10_000 + seed)
        alts = [f"x{i}" for i in range(1, rng.randint(2, 4) + 1)]
        agents = [f"a{i}" for i in range(1, rng.randint(1, max_agents) + 1)]
        order = agents[:]
        rng.shuffle(order)
        choice = {}
        for pos, a in enumerate(order):
            # delegate to an earlier agent in a random order, or vote directly
            pool = alts + order[:pos]
            choice[a] = rng.choice(pool)
        out.append(DelegationGraph(alts, choice, agents=agents))
    return out


def undirected_graphs(n: int) -> list[UndirectedGraph]:
    verts = tuple(f"w{i}" for i in range(1, n + 1))
    pairs = list(combinations(verts, 2))
    out = []
    for mask in range(1 << len(pairs)):
        out.append(UndirectedGraph(verts, tuple(p for j, p in enumerate(pairs) if mask >> j & 1)))
    return out


@st.composite
def election_graphs(draw, max_agents: int = 7, max_alts: int = 3, max_outdeg: int = 3, min_alts: int = 1):
    """Arbitrary election graphs: random arcs, then agents without a path to
    an alternative are pruned.  Names mix digit widths to exercise ordering."""
    k = draw(st.integers(min_alts, max_alts))
    n = draw(st.integers(0, max_agents))
    alts = [f"x{i}" for i in range(1, k + 1)]
    agents = [f"a{3 * i + 1}" for i in range(n)]
    verts = agents + alts
    arcs = {}
    for a in agents:
        others = [v for v in verts if v != a]
        arcs[a] = draw(st.lists(st.sampled_from(others), min_size=1, max_size=max_outdeg, unique=True))
    report = validate_election_graph(ElectionGraph(alts, arcs, agents=agents), prune=True)
    assert report.ok
    return report.graph


@st.composite
def delegations(draw, max_agents: int = 8, max_alts: int = 3):
    k = draw(st.integers(1, max_alts))
    n = draw(st.integers(0, max_agents))
    alts = [f"x{i}" for i in range(1, k + 1)]
    order = [f"a{i}" for i in draw(st.permutations(range(1, n + 1)))]
    choice = {}
    for pos, a in enumerate(order):
        choice[a] = draw(st.sampled_from(alts + order[:pos]))
    return DelegationGraph(alts, choice, agents=order)
