"""Brute-force ground truth for small instances.

Nothing here uses the reachability kernels of the rest of the package: every
answer comes from enumerating delegations one by one and following each
agent's chain of choices to its alternative.  The functions refuse instances
above explicit size limits instead of silently truncating.
"""

from __future__ import annotations

import math
from collections import Counter
from itertools import combinations, product
from typing import Callable, Iterator, Optional

import numpy as np

from .delegation_bribery import BribeSet
from .election_bribery import BriberyQuery, CostModel, EditSet, Goal
from .graph import DelegationGraph, ElectionGraph, VertexId, VotingRule
from .winner_determination import Quantifier

MAX_CHOICE_MAPS = 1 << 22


class OracleLimitError(RuntimeError):
    """Instance too large for the oracle."""


# --------------------------------------------------------------------------
# Small independent helpers over successor lists
# --------------------------------------------------------------------------


def _lists(g: ElectionGraph) -> tuple[list[list[int]], list[bool]]:
    succ = [[] for _ in range(g.n)]
    for u, v in g.arcs():
        succ[g.index[u]].append(g.index[v])
    return succ, [bool(x) for x in g.is_alt]


def _valid(succ: list[list[int]], is_alt: list[bool]) -> bool:
    """Election-graph check by repeated relaxation; quadratic, deliberately plain."""
    n = len(succ)
    for v in range(n):
        if is_alt[v]:
            if succ[v]:
                return False
        elif not succ[v] or v in succ[v] or len(set(succ[v])) != len(succ[v]):
            return False
    ok = list(is_alt)
    changed = True
    while changed:
        changed = False
        for v in range(n):
            if not ok[v] and any(ok[x] for x in succ[v]):
                ok[v] = changed = True
    return all(ok)


def _sinks(choice: list[int], is_alt: list[bool]) -> list[int]:
    """Alternative reached by each vertex under a complete acyclic choice map."""
    n = len(choice)
    sink = [v if is_alt[v] else -1 for v in range(n)]
    for v in range(n):
        path = []
        x = v
        while sink[x] < 0:
            path.append(x)
            x = choice[x]
        for y in path:
            sink[y] = sink[x]
    return sink


def _tally(choice: list[int], is_alt: list[bool]) -> dict[int, int]:
    votes = {v: 0 for v in range(len(choice)) if is_alt[v]}
    for v, t in enumerate(_sinks(choice, is_alt)):
        if not is_alt[v]:
            votes[t] += 1
    return votes


def _wins(votes: dict[int, int], s: int, rule: VotingRule, n_agents: int) -> bool:
    if rule.is_majority:
        return rule.passes(votes[s], n_agents)
    return votes[s] == max(votes.values())


def _choice_maps(succ: list[list[int]], is_alt: list[bool], limit: int) -> Iterator[list[int]]:
    """Every acyclic choice map, lexicographic in (agent index, successor index).

    The yielded list is reused between iterations; copy it to keep it.
    """
    agents = [v for v in range(len(succ)) if not is_alt[v]]
    total = math.prod(len(succ[v]) for v in agents)
    if total > limit:
        raise OracleLimitError(f"instance too large for oracle: {total} choice maps exceed {limit}")
    choice = [-1] * len(succ)

    def cyclic(v: int, x: int) -> bool:
        # assigned choices always form a forest, so this walk terminates
        while x >= 0 and not is_alt[x]:
            if x == v:
                return True
            x = choice[x]
        return False

    # agents with a single option are the same in every map; fix them first
    free = []
    for v in agents:
        if len(succ[v]) == 1:
            if cyclic(v, succ[v][0]):
                return
            choice[v] = succ[v][0]
        else:
            free.append(v)

    # backtracking over the remaining agents, options in index order
    nxt = [0] * len(free)
    i = 0
    while i >= 0:
        if i == len(free):
            yield choice
            i -= 1
            continue
        v = free[i]
        opts = succ[v]
        choice[v] = -1
        j = nxt[i]
        while j < len(opts) and cyclic(v, opts[j]):
            j += 1
        if j == len(opts):
            nxt[i] = 0
            i -= 1
            continue
        choice[v] = opts[j]
        nxt[i] = j + 1
        i += 1


# --------------------------------------------------------------------------
# Delegations and winner determination
# --------------------------------------------------------------------------


def iter_delegations(g: ElectionGraph, limit: int = MAX_CHOICE_MAPS) -> Iterator[DelegationGraph]:
    """All delegation subgraphs of ``g`` in lexicographic order of their choice maps."""
    succ, is_alt = _lists(g)
    for choice in _choice_maps(succ, is_alt, limit):
        yield DelegationGraph._from_arrays(g.names, g.is_alt, choice, g.index)


def enumerate_delegations(
    g: ElectionGraph,
    visitor: Optional[Callable[[DelegationGraph], None]] = None,
    limit: int = MAX_CHOICE_MAPS,
) -> int:
    """Visit every delegation subgraph once; returns how many there are."""
    succ, is_alt = _lists(g)
    count = 0
    for choice in _choice_maps(succ, is_alt, limit):
        count += 1
        if visitor is not None:
            visitor(DelegationGraph._from_arrays(g.names, g.is_alt, choice, g.index))
    return count


def vote_profiles(g: ElectionGraph, limit: int = MAX_CHOICE_MAPS) -> Counter:
    """Multiset of vote vectors (ordered like ``g.alternatives``) over all delegations."""
    succ, is_alt = _lists(g)
    alts = np.flatnonzero(g.is_alt)
    agents = np.flatnonzero(~g.is_alt)
    out: Counter = Counter()
    for choice in _choice_maps(succ, is_alt, limit):
        # pointer jumping until every vertex points at its alternative
        ptr = np.array(choice)
        ptr[alts] = alts
        while True:
            nxt = ptr[ptr]
            if np.array_equal(nxt, ptr):
                break
            ptr = nxt
        votes = np.bincount(ptr[agents], minlength=g.n)[alts]
        out[tuple(votes.tolist())] += 1
    return out


def _answer(profiles, alts: list[int], s: int, rule: VotingRule, quantifier: Quantifier, n_agents: int) -> bool:
    j = alts.index(s)
    results = (_wins(dict(zip(alts, p)), alts[j], rule, n_agents) for p in profiles)
    return any(results) if quantifier is Quantifier.ONE else all(results)


def oracle_winner(
    g: ElectionGraph,
    s: VertexId,
    rule: VotingRule,
    quantifier: Quantifier,
    limit: int = MAX_CHOICE_MAPS,
    profiles: Optional[Counter] = None,
) -> bool:
    """Is ``s`` a winner in one / in all delegations?  By full enumeration.

    Pass ``profiles`` (from :func:`vote_profiles`) to reuse one enumeration
    across many queries on the same graph.
    """
    s_id = g.alt_id(s)
    alts = [int(a) for a in range(g.n) if g.is_alt[a]]
    if profiles is None:
        profiles = vote_profiles(g, limit)
    return _answer(profiles, alts, s_id, rule, quantifier, g.n_agents)


def oracle_vote_range(
    g: ElectionGraph, s: VertexId, limit: int = MAX_CHOICE_MAPS, profiles: Optional[Counter] = None
) -> tuple[int, int]:
    """Smallest and largest vote count of ``s`` over all delegations."""
    j = g.alternatives.index(s)
    counts = [p[j] for p in (vote_profiles(g, limit) if profiles is None else profiles)]
    return min(counts), max(counts)


def oracle_equal_power(g: ElectionGraph, limit: int = MAX_CHOICE_MAPS, profiles: Optional[Counter] = None) -> bool:
    if len(g.alternatives) != 2:
        raise ValueError("equal power needs exactly two alternatives")
    return any(p[0] == p[1] for p in (vote_profiles(g, limit) if profiles is None else profiles))


# --------------------------------------------------------------------------
# Election bribery
# --------------------------------------------------------------------------


def _wd(succ, is_alt, s, rule, quantifier, limit) -> bool:
    alts = [v for v in range(len(succ)) if is_alt[v]]
    n_agents = len(succ) - len(alts)
    profiles = []
    for choice in _choice_maps(succ, is_alt, limit):
        votes = _tally(choice, is_alt)
        profiles.append(tuple(votes[a] for a in alts))
    return _answer(profiles, alts, s, rule, quantifier, n_agents)


def oracle_election_bribery(
    g: ElectionGraph,
    q: BriberyQuery,
    max_agents: int = 8,
    max_budget: int = 2,
    limit: int = MAX_CHOICE_MAPS,
) -> Optional[EditSet]:
    """Minimum-cost edit set by trying every edit set, cheapest first.

    Under the Arcs model every set of toggled ordered pairs is tried; under
    the Agents model every choice of bribed agents and every new
    out-neighbourhood for each of them.  ``q.mode`` is ignored.
    """
    if g.n_agents > max_agents or q.budget > max_budget:
        raise OracleLimitError(
            f"instance too large for oracle: {g.n_agents} agents, budget {q.budget} "
            f"(limits {max_agents}, {max_budget})"
        )
    succ, is_alt = _lists(g)
    n = g.n
    s = g.alt_id(q.target)
    want = q.goal is Goal.CONSTRUCTIVE

    def check(new_succ) -> bool:
        return _valid(new_succ, is_alt) and _wd(new_succ, is_alt, s, q.rule, q.quantifier, limit) == want

    if q.cost_model is CostModel.ARCS:
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
        have = {(u, v) for u in range(n) for v in succ[u]}
        for c in range(q.budget + 1):
            for toggles in combinations(pairs, c):
                new_succ = [list(row) for row in succ]
                for u, v in toggles:
                    if (u, v) in have:
                        new_succ[u].remove(v)
                    else:
                        new_succ[u].append(v)
                if check(new_succ):
                    return EditSet(
                        additions={(g.names[u], g.names[v]) for u, v in toggles if (u, v) not in have},
                        deletions={(g.names[u], g.names[v]) for u, v in toggles if (u, v) in have},
                    )
        return None

    agents = [v for v in range(n) if not is_alt[v]]
    for c in range(q.budget + 1):
        for group in combinations(agents, c):
            options = []
            for b in group:
                others = [v for v in range(n) if v != b]
                subsets = [
                    sorted(sub)
                    for r in range(1, len(others) + 1)
                    for sub in combinations(others, r)
                    if sorted(sub) != sorted(succ[b])
                ]
                options.append(subsets)
            for pick in product(*options):
                new_succ = [list(row) for row in succ]
                for b, row in zip(group, pick):
                    new_succ[b] = list(row)
                if check(new_succ):
                    adds, dels = set(), set()
                    for b, row in zip(group, pick):
                        adds |= {(g.names[b], g.names[v]) for v in row if v not in succ[b]}
                        dels |= {(g.names[b], g.names[v]) for v in succ[b] if v not in row}
                    return EditSet(additions=adds, deletions=dels)
    return None


# --------------------------------------------------------------------------
# Delegation bribery
# --------------------------------------------------------------------------


def oracle_delegation_bribery(
    d: DelegationGraph,
    s: VertexId,
    k: int,
    rule: VotingRule,
    goal: Goal = Goal.CONSTRUCTIVE,
    direct_voters_only: bool = False,
    limit: int = 1 << 23,
) -> Optional[BribeSet]:
    """Smallest rewire set making ``s`` win (or lose) by trying all of them.

    Each bribed agent may be pointed at any other vertex; cyclic results are
    discarded.  ``limit`` caps the number of rewire sets tried.  With ``direct_voters_only`` only agents currently voting for
    an alternative may be bribed.
    """
    s_id = d.alt_id(s)
    is_alt = [bool(x) for x in d.is_alt]
    base = [int(x) for x in d.succ]
    n = len(base)
    pool = [v for v in range(n) if not is_alt[v] and (not direct_voters_only or is_alt[base[v]])]
    work = sum(math.comb(len(pool), c) * max(n - 2, 1) ** c for c in range(k + 1))
    if work > limit:
        raise OracleLimitError(f"instance too large for oracle: {work} rewire sets exceed {limit}")
    want = goal is Goal.CONSTRUCTIVE
    n_agents = d.n_agents

    def acyclic(choice) -> bool:
        for v in range(n):
            steps = 0
            x = v
            while not is_alt[x]:
                x = choice[x]
                steps += 1
                if steps > n:
                    return False
        return True

    for c in range(k + 1):
        for group in combinations(pool, c):
            targets = [[x for x in range(n) if x != b and x != base[b]] for b in group]
            for pick in product(*targets):
                choice = list(base)
                for b, x in zip(group, pick):
                    choice[b] = x
                if not acyclic(choice):
                    continue
                if _wins(_tally(choice, is_alt), s_id, rule, n_agents) == want:
                    return BribeSet.of((d.names[b], d.names[x]) for b, x in zip(group, pick))
    return None


# --------------------------------------------------------------------------
# Source problems of the hardness constructions
# --------------------------------------------------------------------------


def has_vertex_cover(vertices, edges, size: int) -> bool:
    """Is there a set of at most ``size`` vertices touching every edge?"""
    vertices = list(vertices)
    edges = [tuple(e) for e in edges]
    for r in range(min(size, len(vertices)) + 1):
        for cover in combinations(vertices, r):
            chosen = set(cover)
            if all(u in chosen or v in chosen for u, v in edges):
                return True
    return False


def has_clique(vertices, edges, size: int) -> bool:
    """Is there a set of ``size`` pairwise adjacent vertices?"""
    adj = {frozenset(e) for e in edges}
    return any(
        all(frozenset((u, v)) in adj for u, v in combinations(group, 2))
        for group in combinations(list(vertices), size)
    )


def has_independent_set(vertices, edges, size: int) -> bool:
    """Is there a set of ``size`` pairwise non-adjacent vertices?"""
    adj = {frozenset(e) for e in edges}
    return any(
        not any(frozenset((u, v)) in adj for u, v in combinations(group, 2))
        for group in combinations(list(vertices), size)
    )
