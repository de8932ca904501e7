"""Reachability oracles, connectivity, Betti numbers, and subdivision."""

import random

import pytest

from conftest import BruteGamma, all_small_graphs, cell_pair_probes
from ditopo.core import EdgeInterior, Vertex
from ditopo.errors import NotConnected
from ditopo.graph import (
    DirectedGraph,
    betti1,
    classical_tc_graph,
    cycle_graph,
    directed_circle,
    directed_interval,
    directed_loop,
    gamma,
    is_strongly_connected_dspace,
    parallel_edges,
    subdivide,
)


def figure_eight():
    return DirectedGraph(["v"], [("a", "v", "v"), ("b", "v", "v")])


class TestGammaExamples:
    def test_interval_ordering(self):
        oracle = gamma(directed_interval())
        assert oracle.membership(EdgeInterior("e", 0.2), EdgeInterior("e", 0.7))
        assert not oracle.membership(EdgeInterior("e", 0.7), EdgeInterior("e", 0.2))

    def test_circle_arcs_do_not_mix(self):
        oracle = gamma(directed_circle())
        assert not oracle.membership(EdgeInterior("top", 0.3), EdgeInterior("bot", 0.5))
        assert oracle.membership(Vertex("b"), EdgeInterior("bot", 0.5))
        assert oracle.membership(EdgeInterior("top", 0.3), Vertex("e"))

    def test_loop_wraps_backward(self):
        oracle = gamma(directed_loop())
        assert oracle.membership(EdgeInterior("l", 0.7), EdgeInterior("l", 0.2))

    def test_reflexive(self):
        oracle = gamma(directed_circle())
        for p in (Vertex("b"), Vertex("e"), EdgeInterior("top", 0.4)):
            assert oracle.membership(p, p)

    def test_interior_point_property_sampled(self, corpus):
        # reaching a target outside the edge must not depend on the parameter
        rng = random.Random(99)
        for g in corpus[:30]:
            oracle = gamma(g)
            for _ in range(20):
                x = oracle.sample_point(rng)
                y = oracle.sample_point(rng)
                if not isinstance(x, EdgeInterior):
                    continue
                if isinstance(y, EdgeInterior) and y.edge == x.edge:
                    continue
                expected = oracle.membership(x, y)
                for k in range(1, 11):
                    x2 = EdgeInterior(x.edge, k / 11)
                    assert oracle.membership(x2, y) == expected


class TestBruteForceEquivalence:
    def test_all_graphs_with_at_most_five_cells(self):
        graphs = all_small_graphs(5)
        assert len(graphs) > 100
        for g in graphs:
            oracle = gamma(g)
            brute = BruteGamma(g, 32)
            for x, y in cell_pair_probes(g, 32):
                assert oracle.membership(x, y) == brute.reachable(x, y), (
                    f"{g.to_json()} disagrees at ({x!r}, {y!r})")


class TestConnectivityAndBetti:
    def test_strongly_connected_examples(self):
        assert is_strongly_connected_dspace(directed_loop())
        assert not is_strongly_connected_dspace(directed_circle())
        assert is_strongly_connected_dspace(cycle_graph(3))
        assert is_strongly_connected_dspace(DirectedGraph(["v"], []))

    def test_betti_numbers(self):
        assert betti1(figure_eight()) == 2
        assert betti1(directed_interval()) == 0
        assert betti1(directed_circle()) == 1
        assert betti1(DirectedGraph(["a", "b"], [])) == 0

    def test_classical_complexity(self):
        assert classical_tc_graph(parallel_edges(3)) == 3
        assert classical_tc_graph(directed_interval()) == 1
        assert classical_tc_graph(figure_eight()) == 3
        assert classical_tc_graph(cycle_graph(5)) == 2

    def test_classical_complexity_needs_connectivity(self):
        with pytest.raises(NotConnected):
            classical_tc_graph(DirectedGraph(["a", "b"], []))


class TestSubdivide:
    def test_structure(self):
        g = subdivide(directed_circle())
        assert len(g.vertices) == 4
        assert len(g.edges) == 4
        assert betti1(g) == 1

    def test_preserves_betti(self, corpus):
        for g in corpus[:20]:
            assert betti1(subdivide(g)) == betti1(g)

    def test_fresh_names_do_not_collide(self):
        g = DirectedGraph(["m_e", "x"], [("e", "m_e", "x"), ("e_a", "x", "x")])
        sub = subdivide(g)
        assert len(set(sub.vertices)) == len(sub.vertices)
        assert len({e.id for e in sub.edges}) == len(sub.edges)


class TestSerialization:
    def test_json_round_trip(self):
        g = directed_circle()
        assert DirectedGraph.from_json(g.to_json()) == g

    def test_dot_mentions_every_edge(self):
        dot = directed_circle().to_dot()
        assert '"b" -> "e" [label="top"]' in dot
        assert '"b" -> "e" [label="bot"]' in dot
