"""Trace diagrams, functoriality, and bisimulation checks."""

import numpy as np
import pytest

from ditopo.core import EdgeInterior, Vertex
from ditopo.errors import InfiniteTraceSpace, NotIso
from ditopo.graph import (
    DirectedGraph,
    directed_circle,
    directed_interval,
    directed_loop,
    ditc,
)
from ditopo.nathom import (
    check_bisimulation,
    factorization_diagram,
    h_n,
    is_bisimilar_to_point,
    terminal_diagram,
)


def circle_diagram():
    return factorization_diagram(directed_circle(), [Vertex("b"), Vertex("e")])


def interval_diagram():
    return factorization_diagram(directed_interval(), [Vertex("0"), Vertex("1")])


class TestCircleDiagram:
    def test_ranks(self):
        d = circle_diagram()
        ranks = d.ranks()
        maximal = {oid for oid, r in ranks.items() if r == 2}
        assert maximal == {"v:b>v:e:top", "v:b>v:e:bot"}
        assert all(r == 1 for oid, r in ranks.items() if oid not in maximal)
        assert len(ranks) == 4

    def test_generator_lands_on_its_continuation(self):
        d = circle_diagram()
        # extending the constant at b by the top run sends the generator to
        # the top basis element of the rank-2 group
        ext = [m for m in d.morphisms
               if m.src == "v:b>v:b:const" and m.dst == "v:b>v:e:top"]
        assert len(ext) == 1
        top_index = d.object("v:b>v:e:top").basis.index(("top",))
        column = [row[0] for row in ext[0].matrix]
        assert column[top_index] == 1 and sum(column) == 1

    def test_not_bisimilar_to_point(self):
        ok, certificate = is_bisimilar_to_point(circle_diagram())
        assert not ok
        assert certificate["rank"] == 2


class TestIntervalDiagram:
    def test_all_ranks_one_and_identity_like(self):
        d = interval_diagram()
        assert set(d.ranks().values()) == {1}
        for m in d.morphisms:
            assert m.matrix == ((1,),)

    def test_bisimilar_to_point(self):
        ok, certificate = is_bisimilar_to_point(interval_diagram())
        assert ok
        assert len(certificate["pairing"]) == len(interval_diagram().objects)


class TestDiagramMechanics:
    def test_loop_raises_infinite(self):
        with pytest.raises(InfiniteTraceSpace):
            factorization_diagram(directed_loop(), [Vertex("v")])

    def test_empty_samples_give_empty_diagram(self):
        d = factorization_diagram(directed_circle(), [])
        assert d.objects == [] and d.morphisms == []
        assert h_n(d, 2).objects == []
        ok, certificate = is_bisimilar_to_point(d)
        assert not ok and "no objects" in certificate["reason"]

    def test_higher_degrees_vanish(self):
        z = h_n(circle_diagram(), 2)
        assert all(r == 0 for r in z.ranks().values())
        assert h_n(circle_diagram(), 1) is not z

    def test_functoriality_on_composable_extensions(self):
        d = factorization_diagram(
            DirectedGraph(["a", "b", "c"],
                          [("p", "a", "b"), ("q", "a", "b"), ("r", "b", "c")]),
            [Vertex("a"), Vertex("b"), Vertex("c")])
        by_src: dict = {}
        for m in d.morphisms:
            by_src.setdefault(m.src, []).append(m)
        checked = 0
        for f in d.morphisms:
            for g in by_src.get(f.dst, []):
                alpha = g.alpha + f.alpha
                beta = f.beta + g.beta
                composites = [m for m in by_src.get(f.src, [])
                              if m.dst == g.dst and m.alpha == alpha and m.beta == beta]
                assert composites, (f, g)
                assert np.array_equal(composites[0].array(),
                                      g.array() @ f.array())
                checked += 1
        assert checked > 10

    def test_basis_permanence(self):
        for d in (circle_diagram(), interval_diagram()):
            for m in d.morphisms:
                arr = m.array()
                assert set(arr.flatten()) <= {0, 1}
                assert all(arr[:, j].sum() == 1 for j in range(arr.shape[1]))

    def test_interior_samples_splice_partial_edges(self):
        d = factorization_diagram(
            directed_circle(),
            [Vertex("b"), EdgeInterior("top", 0.5), Vertex("e")])
        assert sorted(d.ranks().values()) == [1, 1, 1, 1, 1, 2, 2]
        # the class from b through the top sample into e stays a single run
        obj = d.object("v:b>v:e:top")
        assert obj.basis == (("bot",), ("top",))


class TestBisimulationChecker:
    def test_diagram_against_itself(self):
        d = circle_diagram()
        relation = [(o.id, np.eye(o.rank, dtype=int).tolist(), o.id)
                    for o in d.objects]
        assert check_bisimulation(d, d, relation)

    def test_interval_against_terminal(self):
        d = interval_diagram()
        relation = [(o.id, [[1]], "pt") for o in d.objects]
        assert check_bisimulation(d, terminal_diagram(), relation)

    def test_rank_mismatch_is_not_iso(self):
        d = circle_diagram()
        relation = [(o.id, [[1] for _ in range(o.rank)], "pt") for o in d.objects]
        with pytest.raises(NotIso):
            check_bisimulation(d, terminal_diagram(), relation)

    def test_wrong_pairing_fails_heredity(self):
        d = interval_diagram()
        # relate only one object; its outgoing extensions cannot close squares
        relation = [("v:0>v:0:const", [[1]], "pt")]
        assert not check_bisimulation(d, terminal_diagram(), relation)

    def test_circle_cannot_relate_to_terminal(self):
        d = circle_diagram()
        # full pairings hit the iso precondition on the rank-2 groups;
        # pairing only the rank-1 objects leaves squares that cannot close
        partial = [(o.id, [[1]], "pt") for o in d.objects if o.rank == 1]
        assert not check_bisimulation(d, terminal_diagram(), partial)
        with pytest.raises(NotIso):
            check_bisimulation(
                d, terminal_diagram(),
                [(o.id, [[1]] * o.rank, "pt") for o in d.objects])


class TestConsistencyWithComplexity:
    def test_exact_one_iff_point_like_on_corpus(self, corpus):
        checked = 0
        for g in corpus:
            try:
                d = factorization_diagram(g, [Vertex(v) for v in g.vertices])
            except InfiniteTraceSpace:
                continue
            checked += 1
            ok, _ = is_bisimilar_to_point(d)
            assert ok == (ditc(g).to_json()["lower"] == 1
                          and ditc(g).to_json()["upper"] == 1)
        assert checked > 10
