"""Instance generators: hardness constructions from graph problems, and random graphs.

The four constructions map an undirected graph ``H`` and a size parameter
``ell`` to an election instance whose answer equals the source answer:

* vertex cover of size ``ell``      -> equal power delegation
* equal power delegation            -> one-plurality
* clique of size ``ell``            -> all-majority election bribery, budget ``ell``
* independent set of size ``ell``   -> one-majority election bribery, budget ``ell``
  (``H`` must be regular)

Generated vertices are named ``v_<w>``, ``u_<w>_<w'>``, ``dum_<w>_<i>``,
``fill_<i>`` and sinks ``s``, ``t``, ``r``.  Padding vertices added to ``H``
are named ``pad1``, ``pad2``, ...  Every output records a role per vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping, Optional

import numpy as np

from .graph import DelegationGraph, ElectionGraph, GraphError, VertexId, _sink_reach, vertex_key

SINK = "sink"
VERTEX = "vertex"
EDGE = "edge"
DUMMY = "dummy"
FILLING = "filling"
SUBDIVISION = "subdivision"
SOURCE = "source"


@dataclass(frozen=True)
class UndirectedGraph:
    vertices: tuple[VertexId, ...]
    edges: tuple[tuple[VertexId, VertexId], ...] = ()

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices), key=vertex_key))
        if len(verts) != len(tuple(self.vertices)):
            raise ValueError("duplicate vertex")
        known = set(verts)
        norm = set()
        for e in self.edges:
            u, v = tuple(e)
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if u not in known or v not in known:
                raise ValueError(f"edge {u}-{v} uses an unknown vertex")
            pair = tuple(sorted((u, v), key=vertex_key))
            if pair in norm:
                raise ValueError(f"parallel edge {u}-{v}")
            norm.add(pair)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(sorted(norm, key=lambda p: (vertex_key(p[0]), vertex_key(p[1])))))

    def degree(self, w: VertexId) -> int:
        return sum(w in e for e in self.edges)

    def regular_degree(self) -> Optional[int]:
        """The common degree if every vertex has the same degree, else ``None``."""
        degrees = {self.degree(w) for w in self.vertices}
        return degrees.pop() if len(degrees) == 1 else None

    def padded(self, count: int) -> tuple["UndirectedGraph", tuple[VertexId, ...]]:
        """Add ``count`` isolated vertices with fresh names."""
        taken = set(self.vertices)
        pads: list[VertexId] = []
        i = 0
        while len(pads) < count:
            i += 1
            name = f"pad{i}"
            if name not in taken:
                pads.append(name)
        return UndirectedGraph(self.vertices + tuple(pads), self.edges), tuple(pads)


@dataclass(frozen=True)
class ReductionOutput:
    """A generated instance with bookkeeping.

    ``roles`` tags every vertex; ``origin`` maps vertex agents to vertices of
    ``source`` and edge agents to its edges.  ``source`` is the padded input
    graph and ``padding`` the vertices added to it.  ``trivial_no`` flags
    an instance known to be a no-instance by a parity argument.
    """

    graph: ElectionGraph
    target: VertexId
    budget: Optional[int]
    roles: Mapping[VertexId, str]
    origin: Mapping[VertexId, object] = field(default_factory=dict)
    source: Optional[UndirectedGraph] = None
    padding: tuple[VertexId, ...] = ()
    ell: Optional[int] = None
    trivial_no: bool = False

    def count(self, role: str) -> int:
        return sum(1 for r in self.roles.values() if r == role)

    def with_role(self, role: str) -> list[VertexId]:
        return sorted((v for v, r in self.roles.items() if r == role), key=vertex_key)


class _Builder:
    def __init__(self):
        self.arcs: dict[VertexId, list[VertexId]] = {}
        self.roles: dict[VertexId, str] = {}
        self.origin: dict[VertexId, object] = {}
        self.alts: list[VertexId] = []

    def sink(self, name: VertexId) -> None:
        self.alts.append(name)
        self.roles[name] = SINK

    def agent(self, name: VertexId, role: str, targets: Iterable[VertexId], origin=None) -> None:
        if name in self.roles:
            raise GraphError(f"name clash on {name!r}")
        self.arcs[name] = list(targets)
        self.roles[name] = role
        if origin is not None:
            self.origin[name] = origin

    def graph(self) -> ElectionGraph:
        return ElectionGraph(self.alts, self.arcs)


def _vertex_edge_agents(b: _Builder, h: UndirectedGraph, vertex_targets) -> None:
    for w in h.vertices:
        b.agent(f"v_{w}", VERTEX, vertex_targets(w), origin=w)
    for w1, w2 in h.edges:
        b.agent(f"u_{w1}_{w2}", EDGE, [f"v_{w1}", f"v_{w2}"], origin=(w1, w2))


def vc_to_equal_power(h: UndirectedGraph, ell: int, subdivide: bool = False) -> ReductionOutput:
    """Vertex cover of size ``ell`` in ``h``  <=>  the instance has an equal power delegation.

    Each vertex agent ``v_w`` may vote ``s`` or ``t`` and carries
    ``|W|+|E|-1`` dummies; each edge agent follows one endpoint; filling
    agents vote ``t``.  ``h`` is padded with isolated vertices while the
    filling count would be negative.  With ``subdivide`` the two sink arcs of
    every vertex agent pass through a fresh agent each, so that no agent
    approves two alternatives (depth becomes three).
    """
    if ell < 0:
        raise ValueError("ell must be non-negative")
    pads = 0
    n_e = len(h.edges)
    while (len(h.vertices) + pads - 2 * ell) * (len(h.vertices) + pads + n_e) < n_e:
        pads += 1
    src, padding = h.padded(pads)
    n_w, n_e = len(src.vertices), len(src.edges)
    m = n_w + n_e
    b = _Builder()
    b.sink("s")
    b.sink("t")
    if subdivide:
        for w in src.vertices:
            b.agent(f"sub_v_{w}_s", SUBDIVISION, ["s"])
            b.agent(f"sub_v_{w}_t", SUBDIVISION, ["t"])
        _vertex_edge_agents(b, src, lambda w: [f"sub_v_{w}_s", f"sub_v_{w}_t"])
    else:
        _vertex_edge_agents(b, src, lambda w: ["s", "t"])
    for w in src.vertices:
        for i in range(1, m):
            b.agent(f"dum_{w}_{i}", DUMMY, [f"v_{w}"])
    for i in range(1, (n_w - 2 * ell) * m - n_e + 1):
        b.agent(f"fill_{i}", FILLING, ["t"])
    return ReductionOutput(b.graph(), "s", None, b.roles, b.origin, src, padding, ell)


def extract_vertex_cover(out: ReductionOutput, d: DelegationGraph) -> frozenset[VertexId]:
    """Vertices of the original graph whose vertex agent ends up voting ``t``."""
    sinks = d.sink_ids()
    s, t = d.alt_id("s"), d.alt_id("t")
    if int(np.count_nonzero(sinks[~d.is_alt] == s)) != int(np.count_nonzero(sinks[~d.is_alt] == t)):
        raise ValueError("delegation does not split the votes evenly")
    pads = set(out.padding)
    return frozenset(
        w for v, w in out.origin.items() if out.roles[v] == VERTEX and w not in pads and sinks[d.vid(v)] == t
    )


def _fresh(base: str, taken: set) -> str:
    name = base
    while name in taken:
        name += "_"
    return name


def epd_to_one_plurality(g: ElectionGraph) -> ReductionOutput:
    """Equal power in ``g``  <=>  a new alternative ``r`` is a plurality winner in some delegation.

    ``r`` receives half of the agents of ``g`` as dummies voting for it.  An
    odd agent count makes equal power impossible; the output then carries
    ``trivial_no`` and ``r`` gets no voters at all.
    """
    g.require_valid()
    if len(g.alternatives) != 2:
        raise GraphError("equal power needs exactly two alternatives")
    taken = set(g.names)
    r = _fresh("r", taken)
    n = g.n_agents
    b = _Builder()
    for a in g.alternatives:
        b.sink(a)
    b.sink(r)
    for v in g.agents:
        b.agent(v, SOURCE, g.successors(v), origin=v)
    trivial_no = n % 2 == 1
    if not trivial_no:
        for i in range(1, n // 2 + 1):
            b.agent(_fresh(f"dum_{r}_{i}", taken), DUMMY, [r])
    return ReductionOutput(b.graph(), r, None, b.roles, b.origin, trivial_no=trivial_no)


def clique_to_all_eb(h: UndirectedGraph, ell: int) -> ReductionOutput:
    """Clique of size ``ell``  <=>  ``ell`` arc edits make ``s`` a majority winner in all delegations."""
    if ell < 0:
        raise ValueError("ell must be non-negative")
    need = ell + comb(ell, 2)
    pads = max(0, 2 * need - len(h.vertices) - len(h.edges))
    src, padding = h.padded(pads)
    b = _Builder()
    b.sink("s")
    b.sink("t")
    _vertex_edge_agents(b, src, lambda w: ["s", "t"])
    for i in range(1, len(src.vertices) + len(src.edges) - 2 * need + 1):
        b.agent(f"fill_{i}", FILLING, ["s"])
    return ReductionOutput(b.graph(), "s", ell, b.roles, b.origin, src, padding, ell)


def is_to_one_eb(h: UndirectedGraph, ell: int) -> ReductionOutput:
    """Independent set of size ``ell`` in a regular ``h``  <=>  ``ell`` arc edits make ``s``
    a majority winner in some delegation."""
    if ell < 0:
        raise ValueError("ell must be non-negative")
    r = h.regular_degree()
    if not r:
        raise ValueError("graph must be r-regular with r > 0")
    m = len(h.vertices) + len(h.edges)
    b = _Builder()
    b.sink("s")
    b.sink("t")
    _vertex_edge_agents(b, h, lambda w: ["t"])
    gain = 2 * ell * (r + 1)
    if gain <= m:
        for i in range(1, m - gain + 1):
            b.agent(f"fill_{i}", FILLING, ["s"])
    else:
        for i in range(1, gain - m + 1):
            b.agent(f"fill_{i}", FILLING, ["t"])
    return ReductionOutput(b.graph(), "s", ell, b.roles, b.origin, h, (), ell)


def random_election_graph(
    n_agents: int,
    n_alts: int,
    max_outdeg: int,
    acyclic: bool = True,
    seed: int = 0,
) -> ElectionGraph:
    """Seeded random election graph with agents ``a1..an`` and alternatives ``x1..xk``.

    Out-degrees are uniform in ``[1, max_outdeg]`` before removing duplicate
    picks.  Acyclic graphs only allow arcs towards lower random rank (or to
    alternatives).  In cyclic graphs an agent without a path to an
    alternative has one of its arcs redirected to a random alternative.
    """
    if n_agents < 0 or n_alts < 1 or max_outdeg < 1:
        raise ValueError("need n_agents >= 0, n_alts >= 1 and max_outdeg >= 1")
    rng = np.random.default_rng(seed)
    n, k = n_agents, n_alts
    names = tuple(f"a{i}" for i in range(1, n + 1)) + tuple(f"x{i}" for i in range(1, k + 1))
    is_alt = np.zeros(n + k, dtype=bool)
    is_alt[n:] = True
    if n == 0:
        return ElectionGraph.from_csr(names, is_alt, np.zeros(k + 1, dtype=np.int64), np.zeros(0, dtype=np.int64))
    deg = rng.integers(1, max_outdeg + 1, size=n)
    if acyclic:
        rank = rng.permutation(n)
        by_rank = np.argsort(rank)
        raw = rng.integers(0, (k + rank)[:, None], size=(n, max_outdeg))
        targets = np.where(raw < k, n + raw, by_rank[np.maximum(raw - k, 0)])
    else:
        raw = rng.integers(0, n + k - 1, size=(n, max_outdeg))
        targets = raw + (raw >= np.arange(n)[:, None])
    targets = _finish_rows(targets, deg)
    if not acyclic:
        g = _csr(names, is_alt, targets)
        dead = np.flatnonzero(~_sink_reach(g)[:n])
        if dead.size:
            fix = n + rng.integers(0, k, size=dead.size)
            targets[dead, 0] = fix
            targets = _finish_rows(targets, (targets >= 0).sum(axis=1))
    return _csr(names, is_alt, targets)


def _finish_rows(targets: np.ndarray, deg: np.ndarray) -> np.ndarray:
    """Keep the first ``deg`` picks per row, sorted, duplicates dropped, padded with -1."""
    cols = np.arange(targets.shape[1])
    t = np.where(cols[None, :] < deg[:, None], targets, -1)
    big = np.iinfo(np.int64).max
    t = np.sort(np.where(t < 0, big, t), axis=1)
    dup = np.zeros_like(t, dtype=bool)
    dup[:, 1:] = t[:, 1:] == t[:, :-1]
    t[dup] = big
    t = np.sort(t, axis=1)
    t[t == big] = -1
    return t


def _csr(names, is_alt, targets: np.ndarray) -> ElectionGraph:
    n = targets.shape[0]
    counts = np.zeros(len(names), dtype=np.int64)
    counts[:n] = (targets >= 0).sum(axis=1)
    indptr = np.zeros(len(names) + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return ElectionGraph.from_csr(names, is_alt, indptr, targets[targets >= 0])
