"""Election bribery: edit the election graph so that a winner query flips.

Candidates are enumerated level by level in increasing cost and verified
with the winner-determination kernels, so the first hit is an optimal edit
set.  Within a cost level candidates are tried in lexicographic order of
their sorted ``(tail, head, op)`` triples (by vertex index; deletions before
additions on the same arc position), making the result deterministic.

Restricted mode only looks at edits that can matter for constructive goals:
arcs ``(v, s)`` added for One-queries; arc deletions plus the fewest arcs
into ``s`` that keep every agent connected for All-queries.  Exhaustive
mode looks at every edit set, with the Agents cost model reduced to the
dominant rewrite per bribed agent (see :func:`_exhaustive_agents`).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import chain, combinations, product
from typing import Iterator, Optional

from .graph import MAJORITY, ElectionGraph, GraphError, VertexId, VotingRule, validate_election_graph, vertex_key
from .winner_determination import Compact, Quantifier, bounds_verdict, mask_bounds


class CostModel(enum.Enum):
    ARCS = "arcs"
    AGENTS = "agents"


class Goal(enum.Enum):
    CONSTRUCTIVE = "constructive"
    DESTRUCTIVE = "destructive"


class SearchMode(enum.Enum):
    RESTRICTED = "restricted"
    EXHAUSTIVE = "exhaustive"


class InvalidEditError(GraphError):
    pass


Arc = tuple[VertexId, VertexId]


def _arc_key(arc: Arc) -> tuple:
    return vertex_key(arc[0]), vertex_key(arc[1])


@dataclass(frozen=True)
class EditSet:
    additions: frozenset[Arc] = field(default_factory=frozenset)
    deletions: frozenset[Arc] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "additions", frozenset(self.additions))
        object.__setattr__(self, "deletions", frozenset(self.deletions))

    @property
    def arc_cost(self) -> int:
        return len(self.additions) + len(self.deletions)

    @property
    def touched_agents(self) -> frozenset[VertexId]:
        return frozenset(u for u, _ in self.additions | self.deletions)

    @property
    def agent_cost(self) -> int:
        return len(self.touched_agents)

    def cost(self, model: CostModel) -> int:
        return self.arc_cost if model is CostModel.ARCS else self.agent_cost

    def sorted_additions(self) -> list[Arc]:
        return sorted(self.additions, key=_arc_key)

    def sorted_deletions(self) -> list[Arc]:
        return sorted(self.deletions, key=_arc_key)

    def __bool__(self) -> bool:
        return bool(self.additions or self.deletions)


@dataclass(frozen=True)
class BriberyQuery:
    target: VertexId
    budget: int
    rule: VotingRule = MAJORITY
    quantifier: Quantifier = Quantifier.ONE
    cost_model: CostModel = CostModel.ARCS
    goal: Goal = Goal.CONSTRUCTIVE
    mode: SearchMode = SearchMode.RESTRICTED

    def __post_init__(self):
        if self.budget < 0:
            raise ValueError("budget must be non-negative")
        if self.goal is Goal.DESTRUCTIVE and self.mode is not SearchMode.EXHAUSTIVE:
            raise ValueError("destructive bribery is only supported in exhaustive mode")


def check_edits(g: ElectionGraph, e: EditSet) -> None:
    """Raise :class:`InvalidEditError` unless ``e`` is a legal edit set for ``g``."""
    for u, v in e.additions | e.deletions:
        if u not in g.index or v not in g.index:
            raise InvalidEditError(f"unknown vertex in arc {u} -> {v}")
    for u, v in e.additions:
        if u == v:
            raise InvalidEditError(f"added arc {u} -> {v} is a self-loop")
        if g.has_arc(u, v):
            raise InvalidEditError(f"added arc {u} -> {v} already exists")
        if g.is_alt[g.index[u]]:
            raise InvalidEditError(f"alternative {u} gains an out-arc")
    for u, v in e.deletions:
        if not g.has_arc(u, v):
            raise InvalidEditError(f"deleted arc {u} -> {v} does not exist")


def apply_edits(g: ElectionGraph, e: EditSet) -> ElectionGraph:
    """The edited graph, validated to be an election graph with the same alternatives."""
    check_edits(g, e)
    if not e:
        return g
    arcs: dict[VertexId, set[VertexId]] = {u: set(g.successors(u)) for u in g.agents}
    for u, v in e.deletions:
        arcs[u].discard(v)
    for u, v in e.additions:
        arcs[u].add(v)
    for u in g.agents:
        if not arcs[u]:
            raise InvalidEditError(f"agent {u} becomes a sink")
    out = ElectionGraph(g.alternatives, arcs, agents=g.agents)
    report = validate_election_graph(out)
    if not report.ok:
        v = report.violations[0]
        if v.code == "no-sink-path":
            raise InvalidEditError(f"sink path destroyed: {v.message}")
        raise InvalidEditError(v.message)
    return out


# --------------------------------------------------------------------------
# Candidate generation (integer arcs; op 0 = deletion, 1 = addition)
# --------------------------------------------------------------------------

Edit = tuple[int, int, int]


class _Space:
    def __init__(self, g: ElectionGraph, q: BriberyQuery):
        self.g = g
        self.q = q
        self.s = g.alt_id(q.target)
        self.succ = g.succ_lists()
        self.is_alt = g.is_alt.tolist()
        self.n = g.n
        self.agents = [v for v in range(self.n) if not self.is_alt[v]]
        self.arcs = [(u, v) for u in self.agents for v in self.succ[u]]
        self.arc_set = set(self.arcs)
        self.alts = [v for v in range(self.n) if self.is_alt[v]]
        self.pred: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            self.pred[v].append(u)

    def cost(self, edits: tuple[Edit, ...]) -> int:
        if self.q.cost_model is CostModel.ARCS:
            return len(edits)
        return len({u for u, _, _ in edits})

    def edited(self, edits) -> list[list[int]]:
        succ = list(self.succ)
        rows: dict[int, set[int]] = {}
        for u, v, op in edits:
            row = rows.setdefault(u, set(succ[u]))
            if op:
                row.add(v)
            else:
                row.discard(v)
        for u, row in rows.items():
            succ[u] = sorted(row)
        return succ

    def reach(self, edits) -> list[int]:
        """Reach bitmasks (bit ``j`` for ``alts[j]``) in the edited graph,
        without materializing it.  ``edits`` never add an arc that exists."""
        dropped = {(u, v) for u, v, op in edits if not op}
        added: dict[int, list[int]] = {}
        for u, v, op in edits:
            if op:
                added.setdefault(v, []).append(u)
        pred = self.pred
        reach = [0] * self.n
        for j, a in enumerate(self.alts):
            b = 1 << j
            reach[a] = b
            stack = [a]
            while stack:
                v = stack.pop()
                for u in chain(pred[v], added.get(v, ())):
                    if reach[u] & b or (u, v) in dropped:
                        continue
                    reach[u] |= b
                    stack.append(u)
        return reach

    def all_goal_after(self, deletions: list[tuple[int, int]]) -> bool:
        """Would the All/constructive goal hold after ``deletions`` plus compensation?

        Compensating arcs only enter ``s``, so rival reach is settled by the
        deletions alone and every agent reaching no rival ends up voting ``s``.
        """
        dropped = set(deletions)
        pred = self.pred
        n = len(self.agents)
        rivals = [a for a in self.alts if a != self.s]
        # majority needs only the union of rival reach: one multi-source search
        groups = [rivals] if self.q.rule.is_majority else [[a] for a in rivals]
        reached = [False] * self.n
        hi = []
        for sources in groups:
            seen = [False] * self.n
            for a in sources:
                seen[a] = True
            stack = list(sources)
            count = 0
            while stack:
                v = stack.pop()
                for u in pred[v]:
                    if not seen[u] and (u, v) not in dropped:
                        seen[u] = reached[u] = True
                        count += 1
                        stack.append(u)
            hi.append(count)
        lo = n - sum(reached)
        if self.q.rule.is_majority:
            return self.q.rule.passes(lo, n)
        return all(h <= lo for h in hi)

    def compensation(self, deletions: list[tuple[int, int]], touched: set[int]) -> Optional[list[tuple[int, int]]]:
        """Fewest arcs into ``s`` that reconnect every agent cut off by ``deletions``.

        One arc per bottom strongly connected component of the cut-off region,
        leaving from an already touched agent when possible.  Returns ``None``
        if a required arc was itself deleted.
        """
        succ = self.edited([(u, v, 0) for u, v in deletions])
        reach = self.reach([(u, v, 0) for u, v in deletions])
        dead = [v for v in self.agents if reach[v] == 0]
        if not dead:
            return []
        fwd: dict[int, set[int]] = {}
        for v in dead:
            seen = {v}
            stack = [v]
            while stack:
                x = stack.pop()
                for y in succ[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            fwd[v] = seen
        done: set[int] = set()
        extra = []
        deleted = set(deletions)
        for v in dead:
            if v in done:
                continue
            if all(v in fwd[y] for y in fwd[v]):
                scc = sorted(fwd[v])
                done.update(scc)
                pick = next((x for x in scc if x in touched), scc[0])
                if (pick, self.s) in deleted:
                    return None
                extra.append((pick, self.s))
        return extra

    # -- restricted -------------------------------------------------------

    def restricted(self) -> Iterator[tuple[int, list[tuple[Edit, ...]]]]:
        k = self.q.budget
        if self.q.quantifier is Quantifier.ONE:
            cands = [v for v in self.agents if (v, self.s) not in self.arc_set]
            if self.q.rule.is_majority:
                yield from self._one_majority_levels(cands)
                return
            for c in range(k + 1):
                yield c, [tuple((v, self.s, 1) for v in combo) for combo in combinations(cands, c)]
            return
        # Only deletions into the region that reaches a rival can shrink a
        # rival's support or grow the target's guaranteed voters; any other
        # deletion just adds cost, so no minimum-cost hit contains one.
        rivals = ~(1 << self.alts.index(self.s))
        base = self.reach(())
        useful = [(u, v) for u, v in self.arcs if base[v] & rivals]
        levels: list[list[tuple[Edit, ...]]] = [[] for _ in range(k + 1)]
        best = k

        def consider(dels: list[tuple[int, int]], touched: set[int]) -> None:
            nonlocal best
            if not self.all_goal_after(dels):
                return
            extra = self.compensation(dels, touched)
            if extra is None:
                return
            edits = tuple(sorted([(u, v, 0) for u, v in dels] + [(u, v, 1) for u, v in extra]))
            cost = self.cost(edits)
            if cost <= best:
                levels[cost].append(edits)
                best = cost

        # a deletion set of size c costs at least c, so stop past the best hit
        if self.q.cost_model is CostModel.ARCS:
            for c in range(k + 1):
                if c > best:
                    break
                for dels in combinations(useful, c):
                    consider(list(dels), {u for u, _ in dels})
        else:
            heads: dict[int, list[int]] = {}
            for u, v in useful:
                heads.setdefault(u, []).append(v)
            owners = sorted(heads)
            for c in range(k + 1):
                if c > best:
                    break
                for group in combinations(owners, c):
                    options = [
                        [sub for r in range(1, len(heads[b]) + 1) for sub in combinations(heads[b], r)]
                        for b in group
                    ]
                    for pick in product(*options):
                        consider([(b, v) for b, sub in zip(group, pick) for v in sub], set(group))
        for c, cands in enumerate(levels):
            yield c, cands

    def _one_majority_levels(self, cands: list[int]) -> Iterator[tuple[int, list[tuple[Edit, ...]]]]:
        """Addition sets for One/majority, pruned by a coverage bound.

        After adding arcs ``(v, s)`` the agents reaching ``s`` are those that
        did before plus the ancestors of each ``v`` (arcs into a sink create
        no other paths).  Combinations come out in lexicographic order; a
        branch is cut when even the largest remaining ancestor sets cannot
        reach the number of votes the rule needs.
        """
        q = self.q
        n = len(self.agents)
        need = next((t for t in range(n + 1) if q.rule.passes(t, n)), None)
        agent_bits = sum(1 << v for v in self.agents)
        s_bit = 1 << self.alts.index(self.s)
        base = self.reach(())
        covered0 = sum(1 << v for v in self.agents if base[v] & s_bit)
        anc = []
        for v in cands:
            seen = 1 << v
            stack = [v]
            while stack:
                x = stack.pop()
                for u in self.pred[x]:
                    if not seen >> u & 1:
                        seen |= 1 << u
                        stack.append(u)
            anc.append(seen & agent_bits)
        gain = [(a & ~covered0).bit_count() for a in anc]
        top = [sorted(gain[i:], reverse=True) for i in range(len(cands) + 1)]
        for c in range(q.budget + 1):
            hits: list[tuple[Edit, ...]] = []
            chosen: list[int] = []

            def dfs(start: int, covered: int) -> None:
                left = c - len(chosen)
                have = covered.bit_count()
                if left == 0:
                    if have >= need:
                        hits.append(tuple((v, self.s, 1) for v in chosen))
                    return
                if len(cands) - start < left or have + sum(top[start][:left]) < need:
                    return
                for i in range(start, len(cands)):
                    chosen.append(cands[i])
                    dfs(i + 1, covered | anc[i])
                    chosen.pop()

            if need is not None:
                dfs(0, covered0)
            yield c, hits

    # -- exhaustive -------------------------------------------------------

    def exhaustive(self) -> Iterator[tuple[int, list[tuple[Edit, ...]]]]:
        k = self.q.budget
        if self.q.cost_model is CostModel.ARCS:
            toggles = sorted(
                [(u, v, 0) for u, v in self.arcs]
                + [
                    (u, v, 1)
                    for u in self.agents
                    for v in range(self.n)
                    if v != u and (u, v) not in self.arc_set
                ]
            )
            for c in range(k + 1):
                yield c, list(combinations(toggles, c))
            return
        yield from self._exhaustive_agents()

    def _exhaustive_agents(self) -> Iterator[tuple[int, list[tuple[Edit, ...]]]]:
        """Agents cost model over all rewrites, reduced by dominance.

        Adding arcs to an agent only adds delegations and removing arcs only
        removes them, as long as the graph stays valid.  So when the goal
        holds more easily with more delegations (One/constructive and
        All/destructive) each bribed agent may as well approve everything;
        otherwise each bribed agent may as well keep a single arc, the one it
        uses in some delegation of the better edited graph.
        """
        q = self.q
        grows = (q.quantifier is Quantifier.ONE) == (q.goal is Goal.CONSTRUCTIVE)
        k = q.budget
        for c in range(k + 1):
            cands = []
            for group in combinations(self.agents, c):
                options = []
                for b in group:
                    have = set(self.succ[b])
                    if grows:
                        full = [v for v in range(self.n) if v != b]
                        opts = [tuple(sorted([(b, v, 1) for v in full if v not in have]))]
                        if not opts[0]:
                            opts = []
                    else:
                        opts = [
                            tuple(sorted([(b, y, 0) for y in have if y != x] + ([] if x in have else [(b, x, 1)])))
                            for x in range(self.n)
                            if x != b and have != {x}
                        ]
                    options.append(opts)
                for pick in product(*options):
                    cands.append(tuple(sorted(e for edits in pick for e in edits)))
            cands.sort()
            yield c, cands

    # -- verification -----------------------------------------------------

    def holds(self, edits: tuple[Edit, ...], node_budget: Optional[int]) -> bool:
        # candidates never add self-loops or alternative out-arcs, so the
        # edited graph is valid iff every agent still reaches an alternative
        q = self.q
        if q.quantifier is Quantifier.ONE and not q.rule.is_majority:
            comp = Compact(self.edited(edits), self.is_alt)
            if not comp.is_valid():
                return False
            answer = comp.decide(self.s, q.rule, q.quantifier, node_budget)
        else:
            b = mask_bounds(self.reach(edits), self.agents, len(self.alts))
            if b is None:
                return False
            answer = bounds_verdict(*b, self.alts.index(self.s), len(self.agents), q.rule, q.quantifier)
        return answer == (q.goal is Goal.CONSTRUCTIVE)

    def to_edit_set(self, edits: tuple[Edit, ...]) -> EditSet:
        names = self.g.names
        return EditSet(
            additions=frozenset((names[u], names[v]) for u, v, op in edits if op),
            deletions=frozenset((names[u], names[v]) for u, v, op in edits if not op),
        )


def solve_election_bribery(
    g: ElectionGraph, q: BriberyQuery, node_budget: Optional[int] = None
) -> Optional[EditSet]:
    """A minimum-cost edit set within budget making the query hold, or ``None``.

    ``node_budget`` bounds each exact one-plurality search (see
    :class:`~liquidvote.winner_determination.SearchBudgetExceeded`).
    """
    g.require_valid()
    space = _Space(g, q)
    levels = space.restricted() if q.mode is SearchMode.RESTRICTED else space.exhaustive()
    for _, cands in levels:
        for edits in sorted(cands):
            if space.holds(edits, node_budget):
                return space.to_edit_set(edits)
    return None
