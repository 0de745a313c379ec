"""Election graphs, delegation graphs and the reachability kernels on top of them.

Vertices are named by string tokens.  Internally every graph keeps its vertices
sorted by :func:`vertex_key`, so integer index order and name order coincide;
that order is the tie-break used by every algorithm in the package.

Adjacency is stored in CSR form (``indptr``/``indices`` numpy arrays, successor
lists sorted by index).  The kernels here are level-synchronous breadth-first
searches over those arrays and run in time linear in the graph size.
"""

from __future__ import annotations

import enum
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

VertexId = str

_DIGIT_RUNS = re.compile(r"(\d+)")


def vertex_key(name: str) -> tuple:
    """Sort key giving natural order (``a2 < a10``), ties broken by the raw string."""
    parts = _DIGIT_RUNS.split(name)
    return tuple(int(p) if i % 2 else p for i, p in enumerate(parts)), name


class GraphError(ValueError):
    """Raised for malformed graphs, unknown vertices and similar misuse."""


class InvalidDelegationError(GraphError):
    pass


# --------------------------------------------------------------------------
# CSR helpers
# --------------------------------------------------------------------------


def _gather(indptr: np.ndarray, data: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Concatenate ``data[indptr[r]:indptr[r+1]]`` for every ``r`` in ``rows``."""
    starts = indptr[rows]
    counts = indptr[rows + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return data[:0]
    offsets = np.repeat(starts - np.cumsum(counts) + counts, counts)
    return data[offsets + np.arange(total)]


def _stable_order(keys: np.ndarray) -> np.ndarray:
    """Stable argsort of non-negative integer keys in linear time.

    numpy's stable sort is a radix sort only for 16-bit keys, so sort by
    16-bit digits, least significant first.
    """
    keys = np.asarray(keys, dtype=np.int64)
    order = np.argsort((keys & 0xFFFF).astype(np.uint16), kind="stable")
    high = keys >> 16
    while high.size and high.max() > 0:
        digit = (high[order] & 0xFFFF).astype(np.uint16)
        order = order[np.argsort(digit, kind="stable")]
        high = high >> 16
    return order


def _transpose(n: int, indptr: np.ndarray, indices: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    tails = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
    order = _stable_order(indices)
    rindices = tails[order]
    rptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(indices, minlength=n), out=rptr[1:])
    return rptr, rindices


def _bfs(
    n: int,
    rptr: np.ndarray,
    rindices: np.ndarray,
    sources: np.ndarray,
    blocked: Optional[np.ndarray] = None,
    fwd: Optional[tuple[np.ndarray, np.ndarray]] = None,
) -> tuple[np.ndarray, Optional[np.ndarray]]:
    """Reverse BFS from ``sources``; returns ``(dist, parent)``.

    ``blocked`` vertices are never entered.  When the forward CSR ``fwd`` is
    given, each discovered vertex also gets a parent: its smallest-index
    successor lying one level closer to the sources.
    """
    dist = np.full(n, -1, dtype=np.int64)
    seen = np.zeros(n, dtype=bool) if blocked is None else blocked.copy()
    parent = None if fwd is None else np.full(n, -1, dtype=np.int64)
    frontier = np.unique(np.asarray(sources, dtype=np.int64))
    seen[frontier] = True
    dist[frontier] = 0
    level = 0
    while frontier.size:
        nb = _gather(rptr, rindices, frontier)
        nb = nb[~seen[nb]]
        if nb.size == 0:
            break
        nb = np.unique(nb)
        level += 1
        seen[nb] = True
        dist[nb] = level
        if fwd is not None:
            indptr, indices = fwd
            rows = np.repeat(nb, indptr[nb + 1] - indptr[nb])
            succ = _gather(indptr, indices, nb)
            ok = dist[succ] == level - 1
            rows, succ = rows[ok], succ[ok]
            _, first = np.unique(rows, return_index=True)
            parent[rows[first]] = succ[first]
        frontier = nb
    return dist, parent


# --------------------------------------------------------------------------
# Election graphs
# --------------------------------------------------------------------------


class ElectionGraph:
    """A directed graph with an explicitly declared set of alternatives.

    ``arcs`` maps each tail to its successors.  Any vertex that is mentioned
    but not declared as an alternative is an agent.  Construction does not
    enforce the election-graph invariants (use :func:`validate_election_graph`
    for that); the solvers call :meth:`require_valid` before doing any work.

    Instances are immutable.  The integer view (``names``, ``is_alt``,
    ``indptr``, ``indices``) is exposed for the other modules of the package.
    """

    __slots__ = ("names", "index", "is_alt", "indptr", "indices", "_rev", "_report")

    def __init__(
        self,
        alternatives: Iterable[VertexId],
        arcs: Mapping[VertexId, Iterable[VertexId]],
        agents: Iterable[VertexId] = (),
    ):
        alternatives = list(alternatives)
        arcs = {u: list(vs) for u, vs in arcs.items()}
        pool = set(alternatives) | set(agents) | set(arcs)
        for vs in arcs.values():
            pool.update(vs)
        for name in pool:
            if not isinstance(name, str) or not name or any(c.isspace() for c in name):
                raise GraphError(f"invalid vertex name {name!r}")
        names = tuple(sorted(pool, key=vertex_key))
        index = {v: i for i, v in enumerate(names)}
        n = len(names)
        is_alt = np.zeros(n, dtype=bool)
        is_alt[[index[a] for a in alternatives]] = True
        counts = np.zeros(n, dtype=np.int64)
        flat: list[int] = []
        for u in names:
            heads = sorted(index[v] for v in arcs.get(u, ()))
            counts[index[u]] = len(heads)
            flat.extend(heads)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        self._setup(names, index, is_alt, indptr, np.asarray(flat, dtype=np.int64))

    def _setup(self, names, index, is_alt, indptr, indices) -> None:
        self.names: tuple[str, ...] = names
        self.index: dict[str, int] = index
        self.is_alt: np.ndarray = is_alt
        self.indptr: np.ndarray = indptr
        self.indices: np.ndarray = indices
        for arr in (is_alt, indptr, indices):
            arr.setflags(write=False)
        self._rev = None
        self._report = None

    @classmethod
    def from_csr(
        cls,
        names: tuple[str, ...],
        is_alt: np.ndarray,
        indptr: np.ndarray,
        indices: np.ndarray,
    ) -> "ElectionGraph":
        """Build from arrays.  ``names`` must already be in :func:`vertex_key` order
        and each successor row sorted ascending; this is not re-checked."""
        g = cls.__new__(cls)
        g._setup(
            tuple(names),
            {v: i for i, v in enumerate(names)},
            np.array(is_alt, dtype=bool),
            np.array(indptr, dtype=np.int64),
            np.array(indices, dtype=np.int64),
        )
        return g

    # -- basic queries ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def vertices(self) -> tuple[VertexId, ...]:
        return self.names

    @property
    def alternatives(self) -> tuple[VertexId, ...]:
        return tuple(self.names[i] for i in np.flatnonzero(self.is_alt))

    @property
    def agents(self) -> tuple[VertexId, ...]:
        return tuple(self.names[i] for i in np.flatnonzero(~self.is_alt))

    @property
    def n_agents(self) -> int:
        return int(self.n - self.is_alt.sum())

    @property
    def n_arcs(self) -> int:
        return int(self.indices.size)

    def vid(self, name: VertexId) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise GraphError(f"unknown vertex {name!r}") from None

    def alt_id(self, name: VertexId) -> int:
        i = self.vid(name)
        if not self.is_alt[i]:
            raise GraphError(f"{name!r} is not an alternative")
        return i

    def successors(self, name: VertexId) -> tuple[VertexId, ...]:
        i = self.vid(name)
        return tuple(self.names[j] for j in self.indices[self.indptr[i] : self.indptr[i + 1]])

    def succ_ids(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def has_arc(self, u: VertexId, v: VertexId) -> bool:
        return v in self.successors(u)

    def arcs(self) -> list[tuple[VertexId, VertexId]]:
        """All arcs in (tail, head) VertexId order."""
        tails = np.repeat(np.arange(self.n), np.diff(self.indptr))
        return [(self.names[u], self.names[v]) for u, v in zip(tails.tolist(), self.indices.tolist())]

    def adjacency(self) -> dict[VertexId, tuple[VertexId, ...]]:
        return {v: self.successors(v) for v in self.names if not self.is_alt[self.index[v]]}

    def out_degree(self) -> np.ndarray:
        return np.diff(self.indptr)

    def reverse_csr(self) -> tuple[np.ndarray, np.ndarray]:
        if self._rev is None:
            self._rev = _transpose(self.n, self.indptr, self.indices)
        return self._rev

    def succ_lists(self) -> list[list[int]]:
        ptr = self.indptr.tolist()
        ind = self.indices.tolist()
        return [ind[ptr[i] : ptr[i + 1]] for i in range(self.n)]

    def require_valid(self) -> "ElectionGraph":
        if self._report is None:
            self._report = validate_election_graph(self)
        if not self._report.ok:
            first = self._report.violations[0]
            raise GraphError(f"not a valid election graph: {first.message}")
        return self

    # -- dunder -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElectionGraph):
            return NotImplemented
        return (
            self.names == other.names
            and np.array_equal(self.is_alt, other.is_alt)
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __hash__(self) -> int:
        return hash((self.names, self.is_alt.tobytes(), self.indices.tobytes()))

    def __repr__(self) -> str:
        return f"ElectionGraph(agents={self.n_agents}, alternatives={list(self.alternatives)}, arcs={self.n_arcs})"


# --------------------------------------------------------------------------
# Delegation graphs
# --------------------------------------------------------------------------


def _forest_levels(succ: np.ndarray, is_alt: np.ndarray) -> list[np.ndarray]:
    """Depth levels of the in-forest rooted at the alternatives.

    Level 0 holds the alternatives.  Agents missing from every level sit on
    (or behind) a cycle.  Depths come from pointer doubling, so the work is
    O(n log depth) with no per-level Python loop over neighbours.
    """
    n = succ.size
    ptr = np.where(is_alt, np.arange(n), succ)
    depth = (~is_alt).astype(np.int64)
    for _ in range(n.bit_length() + 1):
        nxt = ptr[ptr]
        if np.array_equal(nxt, ptr):
            break
        depth += depth[ptr]
        ptr = nxt
    rooted = is_alt[ptr]
    ids = np.flatnonzero(rooted)
    depth = depth[rooted]
    order = _stable_order(depth)
    return np.split(ids[order], np.cumsum(np.bincount(depth))[:-1])


class DelegationGraph:
    """Each agent picks exactly one successor; acyclic; sinks are the alternatives.

    ``choice`` maps every agent to its chosen successor (agent or alternative).
    Raises :class:`InvalidDelegationError` if an agent has no choice, an
    alternative has one, or the choices contain a cycle.
    """

    __slots__ = ("names", "index", "is_alt", "succ", "_levels", "_vp", "_sink", "_eg")

    def __init__(
        self,
        alternatives: Iterable[VertexId],
        choice: Mapping[VertexId, VertexId],
        agents: Iterable[VertexId] = (),
    ):
        alternatives = set(alternatives)
        pool = alternatives | set(choice) | set(choice.values()) | set(agents)
        names = tuple(sorted(pool, key=vertex_key))
        index = {v: i for i, v in enumerate(names)}
        is_alt = np.zeros(len(names), dtype=bool)
        is_alt[[index[a] for a in alternatives]] = True
        succ = np.full(len(names), -1, dtype=np.int64)
        for u, v in choice.items():
            if u in alternatives:
                raise InvalidDelegationError(f"alternative {u!r} cannot delegate")
            if u == v:
                raise InvalidDelegationError(f"agent {u!r} delegates to itself")
            succ[index[u]] = index[v]
        self._setup(names, index, is_alt, succ)

    def _setup(self, names, index, is_alt, succ) -> None:
        self.names: tuple[str, ...] = names
        self.index: dict[str, int] = index
        self.is_alt: np.ndarray = is_alt
        self.succ: np.ndarray = succ
        missing = np.flatnonzero((~is_alt) & (succ < 0))
        if missing.size:
            raise InvalidDelegationError(f"agent {names[missing[0]]!r} has no delegation choice")
        levels = _forest_levels(succ, is_alt)
        reached = sum(lv.size for lv in levels)
        if reached != len(names):
            stuck = np.ones(len(names), dtype=bool)
            for lv in levels:
                stuck[lv] = False
            raise InvalidDelegationError(
                f"delegation contains a cycle (agent {names[np.flatnonzero(stuck)[0]]!r} reaches no alternative)"
            )
        for arr in (is_alt, succ):
            arr.setflags(write=False)
        self._levels = levels
        self._vp = None
        self._sink = None
        self._eg = None

    @classmethod
    def from_election(cls, g: ElectionGraph, choice: Mapping[VertexId, VertexId]) -> "DelegationGraph":
        """A delegation over exactly the vertex set of ``g``."""
        succ = np.full(g.n, -1, dtype=np.int64)
        for u, v in choice.items():
            i = g.vid(u)
            if g.is_alt[i]:
                raise InvalidDelegationError(f"alternative {u!r} cannot delegate")
            succ[i] = g.vid(v)
        return cls._from_arrays(g.names, g.is_alt, succ, g.index)

    @classmethod
    def _from_arrays(cls, names, is_alt, succ, index=None) -> "DelegationGraph":
        d = cls.__new__(cls)
        d._setup(
            tuple(names),
            index if index is not None else {v: i for i, v in enumerate(names)},
            np.array(is_alt, dtype=bool),
            np.array(succ, dtype=np.int64),
        )
        return d

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def vertices(self) -> tuple[VertexId, ...]:
        return self.names

    @property
    def alternatives(self) -> tuple[VertexId, ...]:
        return tuple(self.names[i] for i in np.flatnonzero(self.is_alt))

    @property
    def agents(self) -> tuple[VertexId, ...]:
        return tuple(self.names[i] for i in np.flatnonzero(~self.is_alt))

    @property
    def n_agents(self) -> int:
        return int(self.n - self.is_alt.sum())

    @property
    def choice(self) -> dict[VertexId, VertexId]:
        return {self.names[u]: self.names[v] for u, v in enumerate(self.succ.tolist()) if v >= 0}

    def vid(self, name: VertexId) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise GraphError(f"unknown vertex {name!r}") from None

    def alt_id(self, name: VertexId) -> int:
        i = self.vid(name)
        if not self.is_alt[i]:
            raise GraphError(f"{name!r} is not an alternative")
        return i

    def target(self, agent: VertexId) -> VertexId:
        return self.names[self.succ[self.vid(agent)]]

    def _power(self) -> np.ndarray:
        if self._vp is None:
            vp = (~self.is_alt).astype(np.int64)
            for level in reversed(self._levels[1:]):
                np.add.at(vp, self.succ[level], vp[level])
            vp.setflags(write=False)
            self._vp = vp
        return self._vp

    def sink_ids(self) -> np.ndarray:
        """For every vertex, the index of the alternative its vote ends at."""
        if self._sink is None:
            sink = np.arange(self.n, dtype=np.int64)
            for level in self._levels[1:]:
                sink[level] = sink[self.succ[level]]
            sink.setflags(write=False)
            self._sink = sink
        return self._sink

    def votes_for(self, alternative: VertexId) -> int:
        return int(self._power()[self.alt_id(alternative)])

    def as_election_graph(self) -> ElectionGraph:
        if self._eg is None:
            agents = np.flatnonzero(self.succ >= 0)
            counts = np.zeros(self.n, dtype=np.int64)
            counts[agents] = 1
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(counts, out=indptr[1:])
            self._eg = ElectionGraph.from_csr(self.names, self.is_alt, indptr, self.succ[agents])
        return self._eg

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DelegationGraph):
            return NotImplemented
        return (
            self.names == other.names
            and np.array_equal(self.is_alt, other.is_alt)
            and np.array_equal(self.succ, other.succ)
        )

    def __hash__(self) -> int:
        return hash((self.names, self.succ.tobytes()))

    def __repr__(self) -> str:
        return f"DelegationGraph({self.choice!r})"


# --------------------------------------------------------------------------
# Voting rules
# --------------------------------------------------------------------------


class RuleKind(enum.Enum):
    MAJORITY = "majority"
    PLURALITY = "plurality"


@dataclass(frozen=True)
class VotingRule:
    """Majority (at least half the agents, or at least ``threshold`` votes) or plurality."""

    kind: RuleKind
    threshold: Optional[int] = None

    def __post_init__(self):
        if self.threshold is not None:
            if self.kind is not RuleKind.MAJORITY:
                raise ValueError("a threshold only applies to the majority rule")
            if self.threshold < 0:
                raise ValueError("threshold must be non-negative")

    @classmethod
    def majority(cls, threshold: Optional[int] = None) -> "VotingRule":
        return cls(RuleKind.MAJORITY, threshold)

    @classmethod
    def plurality(cls) -> "VotingRule":
        return cls(RuleKind.PLURALITY)

    @property
    def is_majority(self) -> bool:
        return self.kind is RuleKind.MAJORITY

    def passes(self, votes: int, n_agents: int) -> bool:
        """Majority test for a single vote count (integer arithmetic only)."""
        if not self.is_majority:
            raise ValueError("passes() is defined for the majority rule only")
        if self.threshold is None:
            return 2 * votes >= n_agents
        return votes >= self.threshold

    def __str__(self) -> str:
        if self.threshold is not None:
            return f"majority(t={self.threshold})"
        return self.kind.value


MAJORITY = VotingRule.majority()
PLURALITY = VotingRule.plurality()


# --------------------------------------------------------------------------
# Validation
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    code: str
    where: Union[VertexId, tuple[VertexId, VertexId]]
    message: str


@dataclass(frozen=True)
class GraphStats:
    n_agents: int
    n_alternatives: int
    max_outdegree: int
    is_dag: bool
    depth: Optional[int]


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]
    stats: GraphStats
    graph: Optional[ElectionGraph] = None
    pruned: tuple[VertexId, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations


def _dag_depth(g: ElectionGraph) -> Optional[int]:
    """Longest path length (in arcs) if ``g`` is acyclic, else ``None``."""
    remaining = g.out_degree().copy()
    rptr, rind = g.reverse_csr()
    frontier = np.flatnonzero(remaining == 0)
    done = frontier.size
    depth = 0
    while True:
        preds = _gather(rptr, rind, frontier)
        if preds.size == 0:
            break
        np.subtract.at(remaining, preds, 1)
        frontier = np.unique(preds[remaining[preds] == 0])
        if frontier.size == 0:
            break
        done += frontier.size
        depth += 1
    if done != g.n:
        return None
    return depth


def _sink_reach(g: ElectionGraph) -> np.ndarray:
    rptr, rind = g.reverse_csr()
    dist, _ = _bfs(g.n, rptr, rind, np.flatnonzero(g.is_alt))
    return dist >= 0


def validate_election_graph(
    g: Union[ElectionGraph, tuple[Iterable[VertexId], Mapping[VertexId, Iterable[VertexId]]]],
    prune: bool = False,
) -> ValidationReport:
    """Check every election-graph invariant and report all violations.

    ``g`` may be an :class:`ElectionGraph` or a raw ``(alternatives, arcs)``
    pair.  With ``prune=True`` agents without a path to an alternative are
    deleted first; the report then describes the repaired graph, which is
    returned in ``report.graph`` together with the removed agents.
    """
    if not isinstance(g, ElectionGraph):
        alternatives, arcs = g
        g = ElectionGraph(alternatives, arcs)
    if prune:
        reach = _sink_reach(g)
        keep = reach | g.is_alt
        pruned = tuple(g.names[i] for i in np.flatnonzero(~keep))
        if pruned:
            kept = {g.names[i] for i in np.flatnonzero(keep)}
            arcs = {u: [v for v in g.successors(u) if v in kept] for u in kept if not g.is_alt[g.index[u]]}
            g = ElectionGraph(g.alternatives, arcs, agents=kept)
        report = validate_election_graph(g)
        return ValidationReport(report.violations, report.stats, graph=g, pruned=pruned)

    violations: list[Violation] = []
    outdeg = g.out_degree()
    tails = np.repeat(np.arange(g.n, dtype=np.int64), outdeg)
    heads = g.indices
    for i in np.flatnonzero(g.is_alt & (outdeg > 0)):
        name = g.names[i]
        violations.append(Violation("alternative-out-arc", name, f"alternative {name} has an outgoing arc"))
    for i in np.flatnonzero(~g.is_alt & (outdeg == 0)):
        name = g.names[i]
        violations.append(Violation("agent-no-out-arc", name, f"agent {name} has no outgoing arc"))
    for k in np.flatnonzero(tails == heads):
        name = g.names[tails[k]]
        violations.append(Violation("self-loop", (name, name), f"self-loop at {name}"))
    dup = np.flatnonzero((tails[1:] == tails[:-1]) & (heads[1:] == heads[:-1])) + 1
    for k in dup:
        u, v = g.names[tails[k]], g.names[heads[k]]
        violations.append(Violation("duplicate-arc", (u, v), f"duplicate arc {u} -> {v}"))
    reach = _sink_reach(g)
    for i in np.flatnonzero(~reach & ~g.is_alt):
        name = g.names[i]
        violations.append(Violation("no-sink-path", name, f"agent {name} has no path to an alternative"))
    depth = _dag_depth(g)
    stats = GraphStats(
        n_agents=g.n_agents,
        n_alternatives=int(g.is_alt.sum()),
        max_outdegree=int(outdeg.max()) if g.n else 0,
        is_dag=depth is not None,
        depth=depth,
    )
    return ValidationReport(tuple(violations), stats)


# --------------------------------------------------------------------------
# Reachability
# --------------------------------------------------------------------------


def _as_election(g: Union[ElectionGraph, DelegationGraph]) -> ElectionGraph:
    return g.as_election_graph() if isinstance(g, DelegationGraph) else g


def rev_mask(g: ElectionGraph, sources, blocked: Optional[np.ndarray] = None) -> np.ndarray:
    rptr, rind = g.reverse_csr()
    dist, _ = _bfs(g.n, rptr, rind, np.atleast_1d(np.asarray(sources, dtype=np.int64)), blocked)
    return dist >= 0


def res_mask(g: ElectionGraph, s: int) -> tuple[np.ndarray, np.ndarray]:
    """Two-phase search: mark everything reaching another alternative, then
    search from ``s`` through unmarked vertices only.  Returns ``(res, marked)``."""
    others = np.flatnonzero(g.is_alt)
    others = others[others != s]
    marked = rev_mask(g, others)
    return rev_mask(g, [s], blocked=marked), marked


def rev_bfs(g: Union[ElectionGraph, DelegationGraph], v: VertexId) -> frozenset[VertexId]:
    """All vertices with a path to ``v`` (including ``v``)."""
    eg = _as_election(g)
    mask = rev_mask(eg, [eg.vid(v)])
    return frozenset(eg.names[i] for i in np.flatnonzero(mask))


def res_rev_bfs(g: ElectionGraph, s: VertexId) -> frozenset[VertexId]:
    """Vertices that can reach alternative ``s`` and no other alternative."""
    mask, _ = res_mask(g, g.alt_id(s))
    return frozenset(g.names[i] for i in np.flatnonzero(mask))


def layered_choice(g: ElectionGraph, stages: list) -> np.ndarray:
    """Build a delegation as a sequence of breadth-first forests.

    Each stage is a collection of alternative indices; it claims every still
    unassigned agent that can reach one of them without passing through an
    agent claimed earlier.  Every claimed agent delegates to its smallest
    successor one BFS level closer to the stage's alternatives.
    """
    rptr, rind = g.reverse_csr()
    fwd = (g.indptr, g.indices)
    succ = np.full(g.n, -1, dtype=np.int64)
    assigned = g.is_alt.copy()
    for sources in stages:
        sources = np.asarray(list(sources), dtype=np.int64)
        if sources.size == 0:
            continue
        dist, parent = _bfs(g.n, rptr, rind, sources, blocked=assigned, fwd=fwd)
        claimed = (dist > 0) & ~assigned
        succ[claimed] = parent[claimed]
        assigned |= claimed
    return succ


# --------------------------------------------------------------------------
# Per-delegation evaluation
# --------------------------------------------------------------------------


class VotingPower(Mapping):
    """Read-only vertex -> votes mapping over a delegation's power array."""

    __slots__ = ("_index", "_names", "_vp")

    def __init__(self, d: DelegationGraph):
        self._index = d.index
        self._names = d.names
        self._vp = d._power()

    def __getitem__(self, v: VertexId) -> int:
        return int(self._vp[self._index[v]])

    def __iter__(self):
        return iter(self._names)

    def __len__(self) -> int:
        return len(self._names)

    def array(self) -> np.ndarray:
        """Votes by vertex index (read-only)."""
        return self._vp

    def __repr__(self) -> str:
        return f"VotingPower({dict(zip(self._names[:8], self._vp[:8].tolist()))}{', ...' if len(self) > 8 else ''})"


def voting_power(d: DelegationGraph) -> VotingPower:
    """Votes held by each vertex: own vote plus delegated ones for agents,
    received votes for alternatives."""
    return VotingPower(d)


def vote_counts(d: DelegationGraph) -> dict[VertexId, int]:
    """Votes per alternative."""
    vp = d._power()
    return {d.names[i]: int(vp[i]) for i in np.flatnonzero(d.is_alt)}


def winner_set(d: DelegationGraph, rule: VotingRule) -> frozenset[VertexId]:
    counts = vote_counts(d)
    n = d.n_agents
    if rule.is_majority:
        return frozenset(a for a, c in counts.items() if rule.passes(c, n))
    if not counts:
        return frozenset()
    best = max(counts.values())
    return frozenset(a for a, c in counts.items() if c == best)


def is_delegation_subgraph(d: DelegationGraph, g: ElectionGraph) -> bool:
    """True iff every chosen arc of ``d`` is an arc of ``g`` and the sinks agree."""
    if d.names != g.names:
        raise GraphError("vertex sets differ")
    if not np.array_equal(d.is_alt, g.is_alt):
        return False
    for u in np.flatnonzero(~g.is_alt):
        row = g.succ_ids(u)
        v = d.succ[u]
        k = np.searchsorted(row, v)
        if k >= row.size or row[k] != v:
            return False
    return True


def some_delegation(g: ElectionGraph) -> DelegationGraph:
    """Deterministic delegation: breadth-first layers grown from all alternatives."""
    g.require_valid()
    succ = layered_choice(g, [np.flatnonzero(g.is_alt)])
    return DelegationGraph._from_arrays(g.names, g.is_alt, succ, g.index)
