"""Acceptance suite: one test per criterion, each reporting PASS/FAIL.

Run alone with ``pytest tests/test_acceptance.py -v -s`` to see the verdict
lines as they happen; they are also repeated in the terminal summary.
"""

import json
import random
import subprocess
import sys
from pathlib import Path

import pytest

from helpers import delegation_corpus, undirected_graphs, wd_corpus, worked_example
from liquidvote.delegation_bribery import BribeSet, apply_bribes, bribe_majority, bribe_plurality
from liquidvote.election_bribery import BriberyQuery, CostModel, SearchMode, apply_edits, solve_election_bribery
from liquidvote.formats import (
    parse_bribes,
    parse_delegation,
    parse_edits,
    parse_instance,
    serialize_bribes,
    serialize_delegation,
    serialize_edits,
    serialize_instance,
)
from liquidvote.graph import (
    MAJORITY,
    PLURALITY,
    VotingRule,
    is_delegation_subgraph,
    validate_election_graph,
    vote_counts,
    voting_power,
    winner_set,
)
from liquidvote.oracle import (
    has_clique,
    has_independent_set,
    has_vertex_cover,
    oracle_delegation_bribery,
    oracle_equal_power,
    oracle_vote_range,
    oracle_winner,
    vote_profiles,
)
from liquidvote.reductions import (
    UndirectedGraph,
    clique_to_all_eb,
    epd_to_one_plurality,
    extract_vertex_cover,
    is_to_one_eb,
    random_election_graph,
    vc_to_equal_power,
)
from liquidvote.winner_determination import (
    Quantifier,
    all_majority,
    all_plurality,
    decide,
    equal_power,
    one_majority,
    one_plurality,
    vote_bounds,
)

ONE, ALL = Quantifier.ONE, Quantifier.ALL
RULES = (MAJORITY, PLURALITY)


@pytest.fixture(scope="module")
def corpus():
    graphs = wd_corpus(500, max_agents=12)
    return [(g, vote_profiles(g)) for g in graphs]


# -- 1 -----------------------------------------------------------------------


def test_c01_winner_determination_matches_oracle(verdict, corpus):
    with verdict(1, "winner determination agrees with enumeration on 500 graphs"):
        shapes = {(validate_election_graph(g).stats.is_dag, len(g.alternatives)) for g, _ in corpus}
        assert {dag for dag, _ in shapes} == {True, False}
        assert {k for _, k in shapes} == {2, 3, 4}
        assert max(g.n_agents for g, _ in corpus) == 12
        ops = {
            (MAJORITY, ALL): all_majority,
            (MAJORITY, ONE): one_majority,
            (PLURALITY, ALL): lambda g, s, rule: all_plurality(g, s),
            (PLURALITY, ONE): lambda g, s, rule: one_plurality(g, s),
        }
        for g, prof in corpus:
            for s in g.alternatives:
                for (rule, q), op in ops.items():
                    truth = oracle_winner(g, s, rule, q, profiles=prof)
                    got = op(g, s, rule)
                    assert got.answer == truth, (serialize_instance(g), s, rule, q)
                    if got.certificate is not None:
                        assert is_delegation_subgraph(got.certificate, g)
                        assert (s in winner_set(got.certificate, rule)) == got.answer
            if len(g.alternatives) == 2:
                d = equal_power(g)
                assert (d is not None) == oracle_equal_power(g, profiles=prof), serialize_instance(g)
                if d is not None:
                    assert is_delegation_subgraph(d, g) and len(set(vote_counts(d).values())) == 1


# -- 2 -----------------------------------------------------------------------


def test_c02_vote_bounds_are_tight(verdict, corpus):
    with verdict(2, "vote bounds contain every delegation and are attained"):
        for g, prof in corpus:
            for s in g.alternatives:
                b = vote_bounds(g, s)
                assert oracle_vote_range(g, s, profiles=prof) == (b.lo, b.hi), (serialize_instance(g), s)
                for witness, bound in ((b.witness_lo, b.lo), (b.witness_hi, b.hi)):
                    assert is_delegation_subgraph(witness, g)
                    assert vote_counts(witness)[s] == bound


# -- 3 -----------------------------------------------------------------------


def test_c03_vertex_cover_on_path(verdict):
    with verdict(3, "path on three vertices, cover size 1: 20 agents, 10/10 split, cover {w2}"):
        h = UndirectedGraph(("w1", "w2", "w3"), (("w1", "w2"), ("w2", "w3")))
        out = vc_to_equal_power(h, 1)
        assert out.graph.n_agents == 20
        assert [out.count(r) for r in ("vertex", "edge", "dummy", "filling")] == [3, 2, 12, 3]
        d = equal_power(out.graph)
        assert d is not None and vote_counts(d) == {"s": 10, "t": 10}
        cover = extract_vertex_cover(out, d)
        assert len(cover) == 1 and all(u in cover or v in cover for u, v in h.edges)
        assert cover == {"w2"}


# -- 4 -----------------------------------------------------------------------


def _regular(n: int) -> list[UndirectedGraph]:
    return [h for h in undirected_graphs(n) if h.regular_degree()]


def _five_vertex_sample() -> list[UndirectedGraph]:
    rng = random.Random(2024)
    graphs = undirected_graphs(5)
    return rng.sample(graphs, 10)


def _check_reductions(h: UndirectedGraph, ells, stats: dict, subdivide: bool = False) -> None:
    w, e = h.vertices, h.edges
    for ell in ells:
        vc = has_vertex_cover(w, e, ell)
        out = vc_to_equal_power(h, ell)
        assert oracle_equal_power(out.graph) == vc, ("vc", h, ell)
        if subdivide:
            deep = vc_to_equal_power(h, ell, subdivide=True)
            assert oracle_equal_power(deep.graph) == vc, ("vc-subdivided", h, ell)
        plur = epd_to_one_plurality(out.graph)
        assert oracle_winner(plur.graph, plur.target, PLURALITY, ONE) == vc, ("epd", h, ell)
        stats["vc"] += 2

        clique = clique_to_all_eb(h, ell)
        _check_bribery(clique, ALL, has_clique(w, e, ell), stats)

        if h.regular_degree():
            ind = is_to_one_eb(h, ell)
            _check_bribery(ind, ONE, has_independent_set(w, e, ell), stats)


def _check_bribery(out, quantifier: Quantifier, truth: bool, stats: dict) -> None:
    modes = [SearchMode.RESTRICTED]
    # the exhaustive solver enumerates every edit set; affordable for budgets up to 2
    if out.budget <= 2:
        modes.append(SearchMode.EXHAUSTIVE)
    for mode in modes:
        q = BriberyQuery(out.target, out.budget, MAJORITY, quantifier, CostModel.ARCS, mode=mode)
        e = solve_election_bribery(out.graph, q)
        assert (e is not None) == truth, (quantifier, mode, out.source, out.ell)
        if e is not None:
            assert decide(apply_edits(out.graph, e), out.target, MAJORITY, quantifier).answer
        stats[mode.value] += 1


def test_c04_reductions_preserve_answers(verdict):
    with verdict(4, "all four constructions agree with brute-force source answers"):
        stats = {"vc": 0, "restricted": 0, "exhaustive": 0}
        for h in undirected_graphs(4):
            _check_reductions(h, range(len(h.vertices) + 1), stats, subdivide=True)
        for h in _five_vertex_sample():
            _check_reductions(h, range(len(h.vertices) + 1), stats)
        for h in _regular(5):
            ind_ells = range(len(h.vertices) + 1)
            for ell in ind_ells:
                _check_bribery(is_to_one_eb(h, ell), ONE, has_independent_set(h.vertices, h.edges, ell), stats)
        print(stats)


# -- 5 -----------------------------------------------------------------------


def test_c05_worked_bribery_example(verdict):
    with verdict(5, "plurality bribe of one agent lifts s to 10 over r 8 and t 5"):
        d = worked_example()
        assert d.n_agents == 23
        vp = voting_power(d)
        direct = {a: (d.target(a), vp[a]) for a in d.agents if d.target(a) in d.alternatives}
        assert sorted(direct.values()) == [("r", 4), ("r", 4), ("r", 4), ("s", 6), ("t", 5)]
        b = bribe_plurality(d, "s", 1)
        assert b is not None and len(b) == 1
        after = apply_bribes(d, b)
        assert vote_counts(after) == {"s": 10, "r": 8, "t": 5}
        assert winner_set(after, PLURALITY) == {"s"}
        (p5,) = [a for a, (t, power) in direct.items() if t == "t"]
        alt = vote_counts(apply_bribes(d, BribeSet.of({p5: "s"})))
        assert alt["s"] == 11 and alt["r"] == 12 and alt["s"] < alt["r"]


# -- 6 -----------------------------------------------------------------------


def test_c06_delegation_bribery_matches_oracle(verdict):
    with verdict(6, "delegation bribery agrees with exhaustive rewiring on 300 graphs"):
        corpus = delegation_corpus(300, max_agents=10)
        assert max(d.n_agents for d in corpus) == 10
        assert {len(d.alternatives) for d in corpus} == {2, 3, 4}
        for d in corpus:
            for s in d.alternatives:
                for k in range(4):
                    for rule, fast in ((MAJORITY, bribe_majority), (PLURALITY, bribe_plurality)):
                        got = fast(d, s, k)
                        truth = oracle_delegation_bribery(d, s, k, rule)
                        assert (got is not None) == (truth is not None), (serialize_delegation(d), s, k, rule)
                        if got is not None:
                            assert len(got) <= k and s in winner_set(apply_bribes(d, got), rule)


# -- 7 -----------------------------------------------------------------------


def _bribery_corpus(count: int):
    for seed in range(count):
        rng = random.Random(50_000 + seed)
        g = random_election_graph(rng.randint(1, 8), 2, rng.randint(1, 3), acyclic=seed % 2 == 0, seed=seed)
        yield g, g.alternatives[seed % 2]


def test_c07_restricted_equals_exhaustive(verdict):
    with verdict(7, "restricted and exhaustive election bribery agree on 200 instances"):
        hits = 0
        for g, s in _bribery_corpus(200):
            for rule in RULES:
                for q in (ONE, ALL):
                    for cost in CostModel:
                        for k in range(3):
                            found = []
                            for mode in SearchMode:
                                e = solve_election_bribery(g, BriberyQuery(s, k, rule, q, cost, mode=mode))
                                found.append(None if e is None else e.cost(cost))
                            assert found[0] == found[1], (serialize_instance(g), s, rule, q, cost, k, found)
                            hits += found[0] is not None and found[0] > 0
        assert hits > 0


# -- 8 -----------------------------------------------------------------------


def test_c08_zero_budget_is_winner_determination(verdict, corpus):
    with verdict(8, "election bribery with k=0 equals winner determination"):
        for g, _ in corpus:
            for s in g.alternatives:
                for rule in (MAJORITY, PLURALITY, VotingRule.majority(2)):
                    for q in (ONE, ALL):
                        answer = decide(g, s, rule, q).answer
                        for mode in SearchMode:
                            e = solve_election_bribery(g, BriberyQuery(s, 0, rule, q, mode=mode))
                            assert (e is not None) == answer
                            assert e is None or not e


# -- 9 -----------------------------------------------------------------------


@pytest.mark.slow
def test_c09_performance(verdict):
    with verdict(9, "linear-time operations on 10^6 agents under 5 s, growth at most 2.5x per doubling"):
        probe = Path(__file__).with_name("perf_probe.py")
        run = subprocess.run([sys.executable, str(probe)], capture_output=True, text=True, check=True)
        report = json.loads(run.stdout)
        print({k: round(v, 3) for k, v in report["big"].items()})
        assert all(t < 5.0 for t in report["big"].values()), report["big"]
        for name, t in report["growth"].items():
            print(name, [round(x, 4) for x in t])
            assert t[1] <= 2.5 * t[0] and t[2] <= 2.5 * t[1], (name, t)


# -- 10 ----------------------------------------------------------------------


def test_c10_round_trip_and_certificates(verdict):
    with verdict(10, "parse/serialize round-trips 1000 instances; certificates re-validate"):
        for seed in range(1000):
            rng = random.Random(90_000 + seed)
            g = random_election_graph(rng.randint(0, 40), rng.randint(1, 5), rng.randint(1, 4), acyclic=seed % 2 == 0, seed=seed)
            text = serialize_instance(g)
            assert parse_instance(text) == g
            assert serialize_instance(parse_instance(text)) == text
            if seed % 5 or g.n_agents > 14:
                continue
            for s in g.alternatives:
                for rule in RULES:
                    for q in (ONE, ALL):
                        dec = decide(g, s, rule, q)
                        if dec.certificate is None:
                            continue
                        back = parse_delegation(serialize_delegation(dec.certificate))
                        assert back == dec.certificate and is_delegation_subgraph(back, g)
                        assert (s in winner_set(back, rule)) == dec.answer
        for g, s in _bribery_corpus(60):
            e = solve_election_bribery(g, BriberyQuery(s, 2, MAJORITY, ALL))
            if e is not None:
                back = parse_edits(serialize_edits(e))
                assert back == e
                assert decide(apply_edits(g, back), s, MAJORITY, ALL).answer
        for d in delegation_corpus(60):
            for s in d.alternatives:
                b = bribe_plurality(d, s, 2)
                if b is not None:
                    back = parse_bribes(serialize_bribes(b))
                    assert back == b and s in winner_set(apply_bribes(d, back), PLURALITY)
