"""Bribing agents of a fixed delegation so that a given alternative wins.

Both algorithms only ever rewire agents that vote directly, and always to
vote directly for the target: moving a direct voter moves its whole block of
votes, and no other direct voter's block changes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

import numpy as np

from .graph import MAJORITY, DelegationGraph, GraphError, VertexId, VotingRule, vertex_key


@dataclass(frozen=True)
class BribeSet:
    """Agents told to change their outgoing arc, as sorted ``(agent, new_target)`` pairs."""

    rewires: tuple[tuple[VertexId, VertexId], ...] = ()

    @classmethod
    def of(cls, rewires: Mapping[VertexId, VertexId] | Iterable[tuple[VertexId, VertexId]]) -> "BribeSet":
        pairs = dict(rewires.items() if isinstance(rewires, Mapping) else rewires)
        return cls(tuple(sorted(pairs.items(), key=lambda kv: vertex_key(kv[0]))))

    def as_dict(self) -> dict[VertexId, VertexId]:
        return dict(self.rewires)

    def __len__(self) -> int:
        return len(self.rewires)


@dataclass(frozen=True)
class AchievabilityResult:
    p: int
    achievable: bool
    bribes_used: int
    bribe_set: Optional[BribeSet]


def apply_bribes(d: DelegationGraph, bribes: BribeSet) -> DelegationGraph:
    """The delegation after rewiring; raises if an agent is unknown or the result has a cycle."""
    succ = d.succ.copy()
    for agent, target in bribes.rewires:
        i = d.vid(agent)
        if d.is_alt[i]:
            raise GraphError(f"{agent!r} is an alternative, not an agent")
        succ[i] = d.vid(target)
    return DelegationGraph._from_arrays(d.names, d.is_alt, succ, d.index)


def _direct_voters(d: DelegationGraph) -> tuple[np.ndarray, np.ndarray]:
    """Direct voters sorted by decreasing voting power, then VertexId; and the power array."""
    vp = d._power()
    direct = np.flatnonzero((d.succ >= 0) & d.is_alt[np.maximum(d.succ, 0)])
    order = np.argsort(-vp[direct], kind="stable")
    return direct[order], vp


def bribe_majority(
    d: DelegationGraph, s: VertexId, k: int, rule: VotingRule = MAJORITY
) -> Optional[BribeSet]:
    """Greedy majority bribery.

    Rewires direct voters of other alternatives, strongest first, to vote for
    ``s`` and stops as soon as ``s`` passes the rule.  Returns the (shortest)
    bribe prefix, or ``None`` if ``k`` bribes are not enough.
    """
    if not rule.is_majority:
        raise ValueError(f"expected a majority rule, got {rule}")
    if k < 0:
        raise ValueError("budget must be non-negative")
    si = d.alt_id(s)
    direct, vp = _direct_voters(d)
    candidates = direct[d.succ[direct] != si]
    n = d.n_agents
    votes = int(vp[si])
    chosen: list[int] = []
    for v in candidates[:k].tolist():
        if rule.passes(votes, n):
            break
        votes += int(vp[v])
        chosen.append(v)
    if not rule.passes(votes, n):
        return None
    return BribeSet.of((d.names[v], s) for v in chosen)


class _Plan:
    """Precomputed per-alternative direct-voter queues for the plurality check."""

    def __init__(self, d: DelegationGraph, s: VertexId):
        self.d = d
        self.s = s
        self.si = d.alt_id(s)
        direct, vp = _direct_voters(d)
        self.vp = vp.tolist()
        self.direct = direct.tolist()
        self.rivals = [int(a) for a in np.flatnonzero(d.is_alt) if a != self.si]
        by_alt: dict[int, list[int]] = {a: [] for a in self.rivals}
        for v in self.direct:
            t = int(d.succ[v])
            if t != self.si:
                by_alt[t].append(v)
        self.by_alt = by_alt

    def achievable(self, p: int) -> tuple[int, list[int]]:
        """Bribes needed so that ``s`` has at least ``p`` votes and every rival at most ``p``."""
        vp = self.vp
        s_votes = vp[self.si]
        bribed: list[int] = []
        taken = set()
        for a in self.rivals:
            votes = vp[a]
            for v in self.by_alt[a]:
                if votes <= p:
                    break
                votes -= vp[v]
                s_votes += vp[v]
                bribed.append(v)
                taken.add(v)
        if s_votes < p:
            for v in self.direct:
                if s_votes >= p:
                    break
                if v in taken or self.d.succ[v] == self.si:
                    continue
                s_votes += vp[v]
                bribed.append(v)
        if s_votes < p:
            return len(self.direct) + 1, bribed
        return len(bribed), bribed

    def bribe_set(self, bribed: list[int]) -> BribeSet:
        return BribeSet.of((self.d.names[v], self.s) for v in bribed)


def achievable(d: DelegationGraph, s: VertexId, p: int, k: int) -> AchievabilityResult:
    """Can ``s`` reach at least ``p`` votes with every rival at most ``p`` using at most ``k`` bribes?

    First each rival loses its strongest direct voters until it holds at most
    ``p`` votes; then, if ``s`` still has fewer than ``p``, the strongest
    remaining direct voters of other alternatives switch to ``s``.
    """
    if not 0 <= p <= d.n_agents:
        raise ValueError(f"p must lie in [0, {d.n_agents}]")
    plan = _Plan(d, s)
    used, bribed = plan.achievable(p)
    ok = used <= k
    return AchievabilityResult(p, ok, used, plan.bribe_set(bribed) if ok else None)


def bribe_plurality(d: DelegationGraph, s: VertexId, k: int) -> Optional[BribeSet]:
    """Plurality bribery by trying every target vote count ``p``.

    Among the achievable ``p`` the one needing the fewest bribes wins (ties go
    to the smaller ``p``); ``None`` if no ``p`` is achievable within ``k``.
    Quadratic in the number of vertices.
    """
    if k < 0:
        raise ValueError("budget must be non-negative")
    plan = _Plan(d, s)
    n = d.n_agents
    best: Optional[tuple[int, list[int]]] = None
    for p in range(0 if n == 0 else 1, n + 1):
        used, bribed = plan.achievable(p)
        if used <= k and (best is None or used < best[0]):
            best = (used, bribed)
            if used == 0:
                break
    if best is None:
        return None
    return plan.bribe_set(best[1])


def bribe(d: DelegationGraph, s: VertexId, k: int, rule: VotingRule) -> Optional[BribeSet]:
    if rule.is_majority:
        return bribe_majority(d, s, k, rule)
    return bribe_plurality(d, s, k)
