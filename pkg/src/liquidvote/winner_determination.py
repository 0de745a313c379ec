"""Winner determination over all delegations of an election graph.

The four quantifier/rule combinations plus Equal Power Delegation.  The
majority variants and the all-plurality variant reduce to the tight vote
bounds and run in linear time on the CSR kernels of :mod:`liquidvote.graph`.
One-plurality and equal power are NP-hard; they run an exact depth-first
search over per-agent choices with bound-based pruning.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .graph import (
    MAJORITY,
    DelegationGraph,
    ElectionGraph,
    GraphError,
    VertexId,
    VotingRule,
    layered_choice,
    res_mask,
    rev_mask,
)


class Quantifier(enum.Enum):
    ONE = "one"
    ALL = "all"


class SearchBudgetExceeded(RuntimeError):
    """The exact search visited more nodes than its ``node_budget`` allowed."""

    def __init__(self, budget: int):
        super().__init__(f"search budget of {budget} nodes exhausted")
        self.budget = budget


@dataclass(frozen=True)
class VoteBounds:
    lo: int
    hi: int
    witness_lo: DelegationGraph
    witness_hi: DelegationGraph


@dataclass(frozen=True)
class Decision:
    """``certificate`` is a witness for a yes on One-queries and a
    counterexample for a no on All-queries; otherwise ``None``."""

    answer: bool
    certificate: Optional[DelegationGraph] = None


def _delegation(g: ElectionGraph, stages) -> DelegationGraph:
    succ = layered_choice(g, stages)
    return DelegationGraph._from_arrays(g.names, g.is_alt, succ, g.index)


def _other_alts(g: ElectionGraph, *exclude: int) -> np.ndarray:
    alts = np.flatnonzero(g.is_alt)
    return alts[~np.isin(alts, exclude)]


def _count_agents(g: ElectionGraph, mask: np.ndarray) -> int:
    return int(np.count_nonzero(mask & ~g.is_alt))


def vote_bounds(g: ElectionGraph, s: VertexId) -> VoteBounds:
    """Tight minimum and maximum vote counts of ``s`` over all delegations,
    each with a delegation attaining it."""
    g.require_valid()
    si = g.alt_id(s)
    res, _ = res_mask(g, si)
    rev = rev_mask(g, [si])
    others = _other_alts(g, si)
    return VoteBounds(
        lo=_count_agents(g, res),
        hi=_count_agents(g, rev),
        witness_lo=_delegation(g, [others, [si]]),
        witness_hi=_delegation(g, [[si], others]),
    )


def _require_majority(rule: VotingRule) -> None:
    if not rule.is_majority:
        raise ValueError(f"expected a majority rule, got {rule}")


def all_majority(g: ElectionGraph, s: VertexId, rule: VotingRule = MAJORITY) -> Decision:
    """Is ``s`` a majority winner in every delegation?  Linear time."""
    _require_majority(rule)
    g.require_valid()
    si = g.alt_id(s)
    res, _ = res_mask(g, si)
    if rule.passes(_count_agents(g, res), g.n_agents):
        return Decision(True)
    return Decision(False, _delegation(g, [_other_alts(g, si), [si]]))


def one_majority(g: ElectionGraph, s: VertexId, rule: VotingRule = MAJORITY) -> Decision:
    """Is ``s`` a majority winner in at least one delegation?  Linear time."""
    _require_majority(rule)
    g.require_valid()
    si = g.alt_id(s)
    rev = rev_mask(g, [si])
    if rule.passes(_count_agents(g, rev), g.n_agents):
        return Decision(True, _delegation(g, [[si], _other_alts(g, si)]))
    return Decision(False)


def all_plurality(g: ElectionGraph, s: VertexId) -> Decision:
    """Is ``s`` a plurality winner (ties allowed) in every delegation?

    Compares the guaranteed votes of ``s`` with the attainable votes of each
    rival.  On a no, the counterexample gives ``s`` its minimum and the
    strongest rival its maximum simultaneously.
    """
    g.require_valid()
    si = g.alt_id(s)
    res, _ = res_mask(g, si)
    lo = _count_agents(g, res)
    worst, worst_hi = -1, lo
    for a in _other_alts(g, si):
        hi = _count_agents(g, rev_mask(g, [a]))
        if hi > worst_hi:
            worst, worst_hi = int(a), hi
    if worst < 0:
        return Decision(True)
    return Decision(False, _delegation(g, [[worst], _other_alts(g, si, worst), [si]]))


# --------------------------------------------------------------------------
# Compact pure-Python kernel for small graphs and the exact search
# --------------------------------------------------------------------------


class Compact:
    """List-based view of a graph for repeated evaluation on small instances.

    ``succ`` holds successor lists by vertex index; ``is_alt`` flags the
    alternatives.  Bit ``j`` of a reach mask stands for ``alts[j]``.
    """

    __slots__ = ("n", "succ", "pred", "is_alt", "alts", "agents", "bit")

    def __init__(self, succ: Sequence[Sequence[int]], is_alt: Sequence[bool]):
        self.n = len(succ)
        self.succ = [list(row) for row in succ]
        self.is_alt = list(is_alt)
        self.alts = [v for v in range(self.n) if self.is_alt[v]]
        self.agents = [v for v in range(self.n) if not self.is_alt[v]]
        self.bit = {a: j for j, a in enumerate(self.alts)}
        pred: list[list[int]] = [[] for _ in range(self.n)]
        for u, row in enumerate(self.succ):
            for v in row:
                pred[v].append(u)
        self.pred = pred

    @classmethod
    def of(cls, g: ElectionGraph) -> "Compact":
        return cls(g.succ_lists(), g.is_alt.tolist())

    def reach(self, choice: Optional[list[int]] = None) -> list[int]:
        """Alternatives reachable from each vertex, as bitmasks.

        With ``choice``, agents whose entry is non-negative are restricted to
        that single arc (a partial delegation).
        """
        reach = [0] * self.n
        pred = self.pred
        for j, a in enumerate(self.alts):
            b = 1 << j
            reach[a] |= b
            stack = [a]
            while stack:
                v = stack.pop()
                for u in pred[v]:
                    if reach[u] & b:
                        continue
                    if choice is not None and choice[u] >= 0 and choice[u] != v:
                        continue
                    reach[u] |= b
                    stack.append(u)
        return reach

    def bounds(self, choice: Optional[list[int]] = None) -> Optional[tuple[list[int], list[int]]]:
        """Per-alternative ``(lo, hi)`` vote bounds, or ``None`` if some agent
        cannot reach any alternative."""
        return mask_bounds(self.reach(choice), self.agents, len(self.alts))

    def is_valid(self) -> bool:
        for v in range(self.n):
            row = self.succ[v]
            if self.is_alt[v]:
                if row:
                    return False
            elif not row or v in row or len(set(row)) != len(row):
                return False
        return self.bounds() is not None

    def closes_cycle(self, choice: list[int], v: int, x: int) -> bool:
        while x >= 0 and not self.is_alt[x]:
            if x == v:
                return True
            x = choice[x]
        return False

    def search(
        self,
        feasible: Callable[[list[int], list[int]], bool],
        node_budget: Optional[int] = None,
    ) -> Optional[list[int]]:
        """Depth-first search for a delegation whose vote counts satisfy ``feasible``.

        ``feasible(lo, hi)`` is evaluated on the bounds of every partial
        delegation and must be admissible (false only if no completion can
        succeed) and exact once all choices are fixed (``lo == hi``).
        Branching: agents by decreasing out-degree then index, successors by
        index; the first delegation found is returned as a choice list.
        """
        choice = [-1] * self.n
        order = []
        for v in self.agents:
            if len(self.succ[v]) == 1:
                choice[v] = self.succ[v][0]
            else:
                order.append(v)
        order.sort(key=lambda v: (-len(self.succ[v]), v))

        nodes = 1

        def ok() -> bool:
            b = self.bounds(choice)
            return b is not None and feasible(*b)

        if not ok():
            return None
        depth = 0
        width = len(order)
        if width == 0:
            return choice
        nxt = [0] * width
        while depth >= 0:
            v = order[depth]
            opts = self.succ[v]
            advanced = False
            while nxt[depth] < len(opts):
                x = opts[nxt[depth]]
                nxt[depth] += 1
                if self.closes_cycle(choice, v, x):
                    continue
                choice[v] = x
                nodes += 1
                if node_budget is not None and nodes > node_budget:
                    raise SearchBudgetExceeded(node_budget)
                if ok():
                    if depth + 1 == width:
                        return choice
                    depth += 1
                    nxt[depth] = 0
                    advanced = True
                    break
            if not advanced:
                choice[v] = -1
                depth -= 1
        return None

    def one_plurality(self, s: int, node_budget: Optional[int] = None) -> Optional[list[int]]:
        j = self.bit[s]

        def feasible(lo: list[int], hi: list[int]) -> bool:
            return all(hi[j] >= lo[i] for i in range(len(lo)) if i != j)

        return self.search(feasible, node_budget)

    def equal_power(self, node_budget: Optional[int] = None) -> Optional[list[int]]:
        if len(self.alts) != 2:
            raise ValueError("equal power needs exactly two alternatives")
        n = len(self.agents)
        if n % 2:
            return None
        half = n // 2

        def feasible(lo: list[int], hi: list[int]) -> bool:
            return lo[0] <= half <= hi[0] and lo[1] <= half <= hi[1]

        return self.search(feasible, node_budget)

    def decide(
        self,
        s: int,
        rule: VotingRule,
        quantifier: Quantifier,
        node_budget: Optional[int] = None,
    ) -> bool:
        """Winner-determination answer; assumes the graph is valid."""
        if quantifier is Quantifier.ONE and not rule.is_majority:
            return self.one_plurality(s, node_budget) is not None
        lo, hi = self.bounds()
        return bounds_verdict(lo, hi, self.bit[s], len(self.agents), rule, quantifier)


def mask_bounds(reach: list[int], agents: Sequence[int], k: int) -> Optional[tuple[list[int], list[int]]]:
    """Vote bounds from per-vertex reach bitmasks; ``None`` if an agent reaches nothing."""
    lo = [0] * k
    hi = [0] * k
    for u in agents:
        m = reach[u]
        if m == 0:
            return None
        if m & (m - 1) == 0:
            lo[m.bit_length() - 1] += 1
        j = 0
        while m:
            if m & 1:
                hi[j] += 1
            m >>= 1
            j += 1
    return lo, hi


def bounds_verdict(lo: list[int], hi: list[int], j: int, n: int, rule: VotingRule, quantifier: Quantifier) -> bool:
    """Answer for alternative ``j`` wherever bounds alone decide it
    (every case except one-plurality)."""
    if rule.is_majority:
        return rule.passes(hi[j] if quantifier is Quantifier.ONE else lo[j], n)
    return all(hi[i] <= lo[j] for i in range(len(lo)) if i != j)


def _as_delegation(g: ElectionGraph, choice: list[int]) -> DelegationGraph:
    return DelegationGraph._from_arrays(g.names, g.is_alt, np.asarray(choice, dtype=np.int64), g.index)


def one_plurality(g: ElectionGraph, s: VertexId, node_budget: Optional[int] = None) -> Decision:
    """Is ``s`` a plurality winner in at least one delegation?

    Exact, worst-case exponential.  Raises :class:`SearchBudgetExceeded` if
    ``node_budget`` search nodes do not suffice.
    """
    g.require_valid()
    si = g.alt_id(s)
    found = Compact.of(g).one_plurality(si, node_budget)
    if found is None:
        return Decision(False)
    return Decision(True, _as_delegation(g, found))


def equal_power(g: ElectionGraph, node_budget: Optional[int] = None) -> Optional[DelegationGraph]:
    """A delegation splitting the votes evenly between the two alternatives, or ``None``."""
    g.require_valid()
    if int(g.is_alt.sum()) != 2:
        raise GraphError("equal power needs exactly two alternatives")
    found = Compact.of(g).equal_power(node_budget)
    return None if found is None else _as_delegation(g, found)


def decide(
    g: ElectionGraph,
    s: VertexId,
    rule: VotingRule,
    quantifier: Quantifier,
    node_budget: Optional[int] = None,
) -> Decision:
    """Dispatch to the matching winner-determination variant."""
    if rule.is_majority:
        if quantifier is Quantifier.ONE:
            return one_majority(g, s, rule)
        return all_majority(g, s, rule)
    if quantifier is Quantifier.ONE:
        return one_plurality(g, s, node_budget)
    return all_plurality(g, s)
