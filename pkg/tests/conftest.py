"""Shared fixtures: the random graph corpus and independent oracles.

The brute-force oracles here are deliberately written against different
state spaces than the library (discretized edge chains, program-step
automata) so they can certify the library's answers rather than echo them.
"""

import itertools
import random
from collections import deque

import pytest

from ditopo.core import EdgeInterior, Vertex
from ditopo.graph import DirectedGraph

CORPUS_SEED = 20260810
CORPUS_SIZE = 100


def random_connected_multigraph(rng: random.Random,
                                max_vertices: int = 8,
                                max_edges: int = 14) -> DirectedGraph:
    """Connected via a random spanning tree, then random extra edges
    (loops and parallels allowed)."""
    nv = rng.randint(1, max_vertices)
    vertices = [f"v{i}" for i in range(nv)]
    edges = []
    for i in range(1, nv):
        parent = rng.randrange(i)
        if rng.random() < 0.5:
            edges.append((f"e{len(edges)}", f"v{parent}", f"v{i}"))
        else:
            edges.append((f"e{len(edges)}", f"v{i}", f"v{parent}"))
    for _ in range(rng.randint(0, max_edges - len(edges))):
        edges.append((f"e{len(edges)}", rng.choice(vertices), rng.choice(vertices)))
    return DirectedGraph(vertices, edges)


@pytest.fixture(scope="session")
def corpus():
    rng = random.Random(CORPUS_SEED)
    return [random_connected_multigraph(rng) for _ in range(CORPUS_SIZE)]


# ---------------------------------------------------------------------------
# Independent oracle 1: reachability by BFS over discretized edges
# ---------------------------------------------------------------------------

class BruteGamma:
    """Each edge becomes a chain of `subdivisions` forward arcs; reachability
    is plain BFS over the chain nodes."""

    def __init__(self, g: DirectedGraph, subdivisions: int = 32):
        self.g = g
        self.s = subdivisions
        self.succ: dict = {("v", v): [] for v in g.vertices}
        for e in g.edges:
            prev = ("v", e.src)
            for k in range(1, self.s):
                node = ("e", e.id, k)
                self.succ.setdefault(node, [])
                self.succ[prev].append(node)
                prev = node
            self.succ[prev].append(("v", e.dst))
        self._cache: dict = {}

    def _node(self, p):
        if isinstance(p, Vertex):
            return ("v", p.vertex)
        k = round(p.t * self.s)
        assert 0 < k < self.s, "pick grid-aligned interior parameters"
        return ("e", p.edge, k)

    def reachable(self, x, y) -> bool:
        a, b = self._node(x), self._node(y)
        if a not in self._cache:
            seen = {a}
            queue = deque([a])
            while queue:
                cur = queue.popleft()
                for nxt in self.succ[cur]:
                    if nxt not in seen:
                        seen.add(nxt)
                        queue.append(nxt)
            self._cache[a] = seen
        return b in self._cache[a]


def cell_pair_probes(g: DirectedGraph, subdivisions: int = 32):
    """Representative point pairs covering every cell pair and same-edge
    regime, grid-aligned for the brute-force oracle."""
    s = subdivisions
    points = [Vertex(v) for v in g.vertices]
    quarter, half, three = 8 / s, 16 / s, 24 / s
    for x in points + [EdgeInterior(e.id, half) for e in g.edges]:
        for y in points + [EdgeInterior(f.id, half) for f in g.edges]:
            yield x, y
    for e in g.edges:
        yield EdgeInterior(e.id, quarter), EdgeInterior(e.id, three)
        yield EdgeInterior(e.id, three), EdgeInterior(e.id, quarter)
        yield EdgeInterior(e.id, half), EdgeInterior(e.id, half)
        for v in g.vertices:
            yield Vertex(v), EdgeInterior(e.id, quarter)
            yield EdgeInterior(e.id, three), Vertex(v)


def all_small_graphs(max_cells: int = 5):
    """Every directed multigraph with at most `max_cells` vertices + edges."""
    graphs = []
    for nv in range(1, max_cells + 1):
        vertices = [f"v{i}" for i in range(nv)]
        pair_types = [(a, b) for a in vertices for b in vertices]
        for ne in range(0, max_cells - nv + 1):
            for combo in itertools.combinations_with_replacement(pair_types, ne):
                edges = [(f"e{i}", a, b) for i, (a, b) in enumerate(combo)]
                graphs.append(DirectedGraph(vertices, edges))
    return graphs


# ---------------------------------------------------------------------------
# Independent oracle 2: PV reachability by stepping program actions
# ---------------------------------------------------------------------------

def _completed_holds(actions, i):
    held = set()
    for a in actions[:i]:
        if a.op == "P":
            held.add(a.semaphore)
        else:
            held.discard(a.semaphore)
    return held


def _open_holds(actions, pos):
    """Semaphores strictly held at integer position `pos` under open-interval
    lock semantics: acquired before pos, released after pos."""
    held = set()
    for idx, a in enumerate(actions):
        coord = idx + 1
        if a.op == "P" and coord < pos:
            held.add(a.semaphore)
        if a.op == "V" and coord <= pos:
            held.discard(a.semaphore)
    return held


class StepAutomaton:
    """Joint program positions with lock-compatible unit moves."""

    def __init__(self, prog):
        self.prog = prog
        self.n1, self.n2 = prog.shape

    def valid(self, state) -> bool:
        i, j = state
        return not (_open_holds(self.prog.process1, i)
                    & _open_holds(self.prog.process2, j))

    def moves(self, state):
        # transiting (i, i+1) holds exactly the locks open after i actions:
        # P'd at a coordinate <= i and V'd strictly later
        i, j = state
        if i < self.n1:
            if not (_completed_holds(self.prog.process1, i)
                    & _open_holds(self.prog.process2, j)):
                yield (i + 1, j)
        if j < self.n2:
            if not (_open_holds(self.prog.process1, i)
                    & _completed_holds(self.prog.process2, j)):
                yield (i, j + 1)

    def reachable(self, start, goal) -> bool:
        if not (self.valid(start) and self.valid(goal)):
            return False
        seen = {start}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            if cur == goal:
                return True
            for nxt in self.moves(cur):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return False


def balanced_pv_processes(max_actions: int = 4, semaphores=("a", "b")):
    """Every well-bracketed action sequence up to the given length."""
    from ditopo.pv import Action
    results = [()]
    frontier = [((), frozenset())]
    for _ in range(max_actions):
        nxt = []
        for seq, held in frontier:
            for s in semaphores:
                if s not in held:
                    item = (seq + (Action("P", s),), held | {s})
                else:
                    item = (seq + (Action("V", s),), held - {s})
                nxt.append(item)
        frontier = nxt
        results.extend(seq for seq, held in frontier if not held)
    return sorted(set(results), key=lambda seq: [str(a) for a in seq])