from math import comb

import pytest

from liquidvote.graph import DelegationGraph, ElectionGraph, validate_election_graph, vote_counts
from liquidvote.oracle import has_vertex_cover, oracle_equal_power, oracle_winner
from liquidvote.graph import PLURALITY
from liquidvote.reductions import (
    DUMMY,
    EDGE,
    FILLING,
    SUBDIVISION,
    VERTEX,
    UndirectedGraph,
    clique_to_all_eb,
    epd_to_one_plurality,
    extract_vertex_cover,
    is_to_one_eb,
    random_election_graph,
    vc_to_equal_power,
)
from liquidvote.winner_determination import Quantifier, equal_power

PATH3 = UndirectedGraph(("w1", "w2", "w3"), (("w1", "w2"), ("w2", "w3")))
K3 = UndirectedGraph(("a", "b", "c"), (("a", "b"), ("b", "c"), ("a", "c")))
C4 = UndirectedGraph(("w1", "w2", "w3", "w4"), (("w1", "w2"), ("w2", "w3"), ("w3", "w4"), ("w1", "w4")))


def stats(out):
    return validate_election_graph(out.graph).stats


class TestUndirected:
    def test_normalizes(self):
        h = UndirectedGraph(("b", "a"), (("b", "a"),))
        assert h.vertices == ("a", "b") and h.edges == (("a", "b"),)

    @pytest.mark.parametrize("edges", [(("a", "a"),), (("a", "b"), ("b", "a")), (("a", "z"),)])
    def test_rejects(self, edges):
        with pytest.raises(ValueError):
            UndirectedGraph(("a", "b"), edges)

    def test_regular(self):
        assert C4.regular_degree() == 2
        assert PATH3.regular_degree() is None


class TestVertexCover:
    def test_path3_counts(self):
        out = vc_to_equal_power(PATH3, 1)
        assert out.graph.n_agents == 20
        assert [out.count(r) for r in (VERTEX, EDGE, DUMMY, FILLING)] == [3, 2, 12, 3]
        assert out.padding == ()
        st = stats(out)
        assert st.is_dag and st.max_outdegree == 2 and st.depth == 2

    def test_path3_cover(self):
        out = vc_to_equal_power(PATH3, 1)
        d = equal_power(out.graph)
        assert vote_counts(d) == {"s": 10, "t": 10}
        assert extract_vertex_cover(out, d) == {"w2"}

    def test_path3_caption_delegation(self):
        out = vc_to_equal_power(PATH3, 1)
        g = out.graph
        choice = {a: g.successors(a)[0] for a in g.agents}
        choice.update({"v_w1": "s", "v_w2": "t", "v_w3": "s", "u_w1_w2": "v_w2", "u_w2_w3": "v_w2"})
        d = DelegationGraph.from_election(g, choice)
        assert vote_counts(d) == {"s": 10, "t": 10}
        assert extract_vertex_cover(out, d) == {"w2"}

    def test_not_equal_power(self):
        out = vc_to_equal_power(PATH3, 1)
        g = out.graph
        d = DelegationGraph.from_election(g, {a: g.successors(a)[0] for a in g.agents})
        with pytest.raises(ValueError):
            extract_vertex_cover(out, d)

    def test_edgeless(self):
        h = UndirectedGraph(("w1", "w2", "w3"))
        out = vc_to_equal_power(h, 0)
        assert out.count(FILLING) == 9
        assert oracle_equal_power(out.graph)

    def test_padding(self):
        out = vc_to_equal_power(PATH3, 2)
        assert out.padding == ("pad1", "pad2")
        n_w, n_e = 5, 2
        assert out.count(FILLING) == (n_w - 4) * (n_w + n_e) - n_e
        assert out.graph.n_agents == 2 * (n_w - 2) * (n_w + n_e)

    def test_subdivide(self):
        out = vc_to_equal_power(PATH3, 1, subdivide=True)
        assert out.count(SUBDIVISION) == 6
        st = stats(out)
        assert st.is_dag and st.max_outdegree == 2 and st.depth == 3
        for a in out.graph.agents:
            assert sum(v in ("s", "t") for v in out.graph.successors(a)) <= 1
        d = equal_power(out.graph)
        assert extract_vertex_cover(out, d) == {"w2"}

    @pytest.mark.parametrize("ell", [0, 1, 2, 3])
    def test_matches_source(self, ell):
        out = vc_to_equal_power(PATH3, ell)
        assert oracle_equal_power(out.graph) == has_vertex_cover(PATH3.vertices, PATH3.edges, ell)


class TestOnePlurality:
    def test_from_path3(self):
        out = epd_to_one_plurality(vc_to_equal_power(PATH3, 1).graph)
        assert out.target == "r" and out.count(DUMMY) == 10 and not out.trivial_no

    def test_no(self):
        out = epd_to_one_plurality(ElectionGraph(["s", "t"], {"a1": ["s"], "a2": ["s"], "a3": ["t"]}))
        assert out.trivial_no
        assert not oracle_winner(out.graph, out.target, PLURALITY, Quantifier.ONE)

    def test_yes(self):
        out = epd_to_one_plurality(ElectionGraph(["s", "t"], {"a1": ["s"], "a2": ["t"]}))
        assert out.count(DUMMY) == 1
        assert oracle_winner(out.graph, out.target, PLURALITY, Quantifier.ONE)

    def test_name_clash(self):
        out = epd_to_one_plurality(ElectionGraph(["r", "t"], {"a1": ["r"], "a2": ["t"]}))
        assert out.target == "r_"


class TestClique:
    def test_k3(self):
        out = clique_to_all_eb(K3, 2)
        assert [out.count(r) for r in (VERTEX, EDGE, FILLING)] == [3, 3, 0]
        assert out.budget == 2 and out.target == "s" and out.graph.n_agents == 6

    def test_counts_with_padding(self):
        h = UndirectedGraph(("w1", "w2"))
        out = clique_to_all_eb(h, 2)
        need = 2 + comb(2, 2)
        n_w, n_e = len(out.source.vertices), len(out.source.edges)
        assert 2 * need <= n_w + n_e
        assert out.count(FILLING) == n_w + n_e - 2 * need
        assert out.graph.n_agents == 2 * n_w + 2 * n_e - 2 * need


class TestIndependentSet:
    def test_c4(self):
        out = is_to_one_eb(C4, 1)
        assert [out.count(r) for r in (VERTEX, EDGE, FILLING)] == [4, 4, 2]
        assert out.graph.n_agents == 10 and out.budget == 1
        assert all(out.graph.successors(f) == ("s",) for f in out.with_role(FILLING))

    def test_k3_alternate(self):
        out = is_to_one_eb(K3, 2)
        assert out.count(FILLING) == 6
        assert all(out.graph.successors(f) == ("t",) for f in out.with_role(FILLING))

    def test_rejects_irregular(self):
        with pytest.raises(ValueError):
            is_to_one_eb(PATH3, 1)
        with pytest.raises(ValueError):
            is_to_one_eb(UndirectedGraph(("a", "b")), 1)


class TestRandom:
    def test_no_agents(self):
        g = random_election_graph(0, 2, 3, seed=1)
        assert g.alternatives == ("x1", "x2") and g.n_agents == 0

    def test_deterministic(self):
        assert random_election_graph(30, 3, 3, acyclic=False, seed=5) == random_election_graph(
            30, 3, 3, acyclic=False, seed=5
        )

    def test_valid(self):
        report = validate_election_graph(random_election_graph(12, 3, 3, acyclic=True, seed=7))
        assert report.ok and report.stats.is_dag and report.stats.max_outdegree <= 3

    @pytest.mark.parametrize("seed", range(30))
    def test_cyclic_valid(self, seed):
        assert validate_election_graph(random_election_graph(40, 2, 2, acyclic=False, seed=seed)).ok

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            random_election_graph(3, 0, 2)
        with pytest.raises(ValueError):
            random_election_graph(3, 1, 0)
