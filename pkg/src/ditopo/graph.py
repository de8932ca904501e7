"""Directed multigraphs as directed spaces.

Reachability over a directed graph splits into finitely many cell-level
cases (vertex/vertex, vertex/edge-interior, and so on), which makes the
reachability relation decidable exactly.  Trace classes of directed paths
are identified with reduced edge-id sequences: with no 2-cells, paths with
distinct edge sequences are never deformable into each other, while
reparametrizations collapse.

``ditc`` classifies a graph into tiers and returns certified bounds with a
witnessing patchwork; ``build_planner`` exposes the witness directly.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import (
    DiPath,
    DiTCReport,
    EdgeInterior,
    GraphPoint,
    PARAM_TOL,
    Patch,
    Patchwork,
    Reason,
    Step,
    Vertex,
    concatenate,
    points_equal,
)
from .errors import InvalidPoint, NotConnected


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str


class DirectedGraph:
    """Vertices plus oriented multi-edges; loops and parallel edges allowed."""

    def __init__(self, vertices: Iterable[str], edges: Iterable):
        self.vertices = tuple(dict.fromkeys(vertices))
        self.vertex_set = frozenset(self.vertices)
        parsed = []
        for e in edges:
            if not isinstance(e, Edge):
                e = Edge(*e)
            parsed.append(e)
        self.edges = tuple(parsed)
        self._edge_map = {}
        for e in self.edges:
            if e.id in self._edge_map:
                raise ValueError(f"duplicate edge id {e.id!r}")
            if e.src not in self.vertex_set or e.dst not in self.vertex_set:
                raise ValueError(f"edge {e.id!r} references unknown vertices")
            self._edge_map[e.id] = e
        self._out = {v: [] for v in self.vertices}
        self._in = {v: [] for v in self.vertices}
        for e in self.edges:
            self._out[e.src].append(e)
            self._in[e.dst].append(e)
        for v in self.vertices:
            self._out[v].sort(key=lambda e: e.id)
            self._in[v].sort(key=lambda e: e.id)
        self._vertex_dist: Optional[dict] = None

    # -- structure ---------------------------------------------------------

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edge_map[edge_id]
        except KeyError:
            raise KeyError(f"unknown edge {edge_id!r}") from None

    def out_edges(self, v: str) -> list[Edge]:
        return self._out[v]

    def in_edges(self, v: str) -> list[Edge]:
        return self._in[v]

    def point_at(self, edge_id: str, t: float) -> GraphPoint:
        """The point at parameter t of an edge; boundaries become vertices."""
        e = self.edge(edge_id)
        if t <= PARAM_TOL:
            return Vertex(e.src)
        if t >= 1.0 - PARAM_TOL:
            return Vertex(e.dst)
        return EdgeInterior(edge_id, t)

    def contains_point(self, p: GraphPoint) -> bool:
        if isinstance(p, Vertex):
            return p.vertex in self.vertex_set
        return p.edge in self._edge_map

    # -- undirected metric ---------------------------------------------------

    def _distances_from(self, source: str) -> dict:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for e in self._out[u] + self._in[u]:
                w = e.dst if e.src == u else e.src
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def vertex_distance(self, u: str, v: str) -> float:
        if self._vertex_dist is None:
            self._vertex_dist = {s: self._distances_from(s) for s in self.vertices}
        return self._vertex_dist[u].get(v, math.inf)

    def distance(self, a: GraphPoint, b: GraphPoint) -> float:
        """Shortest undirected path length with unit edge lengths."""
        if isinstance(a, Vertex) and isinstance(b, Vertex):
            return self.vertex_distance(a.vertex, b.vertex)
        if isinstance(a, Vertex):
            f = self.edge(b.edge)
            return min(self.vertex_distance(a.vertex, f.src) + b.t,
                       self.vertex_distance(a.vertex, f.dst) + 1.0 - b.t)
        if isinstance(b, Vertex):
            e = self.edge(a.edge)
            return min(a.t + self.vertex_distance(e.src, b.vertex),
                       1.0 - a.t + self.vertex_distance(e.dst, b.vertex))
        e, f = self.edge(a.edge), self.edge(b.edge)
        best = abs(a.t - b.t) if a.edge == b.edge else math.inf
        for da, u in ((a.t, e.src), (1.0 - a.t, e.dst)):
            for db, w in ((b.t, f.src), (1.0 - b.t, f.dst)):
                best = min(best, da + self.vertex_distance(u, w) + db)
        return best

    # -- connectivity --------------------------------------------------------

    def undirected_components(self) -> list[frozenset]:
        seen: set[str] = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            comp = set()
            queue = deque([v])
            while queue:
                u = queue.popleft()
                if u in comp:
                    continue
                comp.add(u)
                for e in self._out[u] + self._in[u]:
                    w = e.dst if e.src == u else e.src
                    if w not in comp:
                        queue.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.undirected_components()) <= 1

    def induced(self, vertices: frozenset) -> "DirectedGraph":
        keep = [v for v in self.vertices if v in vertices]
        edges = [e for e in self.edges if e.src in vertices and e.dst in vertices]
        return DirectedGraph(keep, edges)

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in self.edges],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "DirectedGraph":
        return cls(doc["vertices"], [(e["id"], e["src"], e["dst"]) for e in doc["edges"]])

    def to_dot(self) -> str:
        lines = ["digraph {"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for e in self.edges:
            lines.append(f'  "{e.src}" -> "{e.dst}" [label="{e.id}"];')
        lines.append("}")
        return "\n".join(lines)

    def __eq__(self, other):
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"DirectedGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


# ---------------------------------------------------------------------------
# Reachability
# ---------------------------------------------------------------------------

class GammaOracle:
    """Decidable membership in the reachability relation of a graph.

    Cell-level reachability tables make the interior-point property hold by
    construction: whether an edge-interior point reaches a target outside
    its edge depends only on the edge, never on the parameter.
    """

    def __init__(self, graph: DirectedGraph):
        self.graph = graph
        self._reach = {v: self._forward_closure(v) for v in graph.vertices}

    def _forward_closure(self, source: str) -> frozenset:
        seen = {source}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for e in self.graph.out_edges(u):
                if e.dst not in seen:
                    seen.add(e.dst)
                    queue.append(e.dst)
        return frozenset(seen)

    def reaches(self, u: str, v: str) -> bool:
        return v in self._reach[u]

    def membership(self, x: GraphPoint, y: GraphPoint) -> bool:
        if not (self.graph.contains_point(x) and self.graph.contains_point(y)):
            raise InvalidPoint(f"point outside graph: {x!r} or {y!r}")
        if isinstance(x, Vertex) and isinstance(y, Vertex):
            return self.reaches(x.vertex, y.vertex)
        if isinstance(x, Vertex):
            return self.reaches(x.vertex, self.graph.edge(y.edge).src)
        if isinstance(y, Vertex):
            return self.reaches(self.graph.edge(x.edge).dst, y.vertex)
        e, f = self.graph.edge(x.edge), self.graph.edge(y.edge)
        if x.edge == y.edge and x.t <= y.t:
            return True
        return self.reaches(e.dst, f.src)

    # -- sampling-space protocol --------------------------------------------

    def sample_point(self, rng: random.Random) -> GraphPoint:
        cells = len(self.graph.vertices) + len(self.graph.edges)
        idx = rng.randrange(cells)
        if idx < len(self.graph.vertices):
            return Vertex(self.graph.vertices[idx])
        edge = self.graph.edges[idx - len(self.graph.vertices)]
        t = rng.uniform(0.0, 1.0)
        while not (0.0 < t < 1.0):
            t = rng.uniform(0.0, 1.0)
        return EdgeInterior(edge.id, t)

    def distance(self, a: GraphPoint, b: GraphPoint) -> float:
        return self.graph.distance(a, b)

    def perturb_pair(self, pair, eps: float, rng: random.Random):
        """Jitter each endpoint within its own cell by at most eps."""
        def jitter(p: GraphPoint) -> GraphPoint:
            if isinstance(p, Vertex):
                return p
            t = p.t + rng.uniform(-eps, eps)
            t = min(max(t, 1e-12), 1.0 - 1e-12)
            return EdgeInterior(p.edge, t)
        x, y = pair
        return jitter(x), jitter(y)


def gamma(g: DirectedGraph) -> GammaOracle:
    """The reachability relation of a graph, as a decidable oracle."""
    return GammaOracle(g)


def is_strongly_connected_dspace(g: DirectedGraph) -> bool:
    """True iff every ordered pair of points is joined by a directed path."""
    oracle = gamma(g)
    return all(oracle.reaches(u, v) for u in g.vertices for v in g.vertices)


def betti1(g: DirectedGraph) -> int:
    """First Betti number of the underlying undirected multigraph."""
    return len(g.edges) - len(g.vertices) + len(g.undirected_components())


def classical_tc_graph(g: DirectedGraph) -> int:
    """Topological complexity of the underlying graph: min(b1, 2) + 1."""
    if not g.is_connected():
        raise NotConnected("classical complexity formula needs a connected graph")
    return min(betti1(g), 2) + 1


# ---------------------------------------------------------------------------
# Trace classes
# ---------------------------------------------------------------------------

@dataclass
class TraceClassSummary:
    """Distinct reduced edge sequences between two points.

    ``count`` is ``math.inf`` when a directed cycle can be inserted along
    some route, in which case ``representatives`` holds at most the cutoff.
    """

    count: float
    representatives: tuple

    @property
    def infinite(self) -> bool:
        return self.count == math.inf


def _on_cycle(oracle: GammaOracle, v: str) -> bool:
    return any(oracle.reaches(e.dst, v) for e in oracle.graph.out_edges(v))


def _route_anchors(x: GraphPoint, y: GraphPoint, g: DirectedGraph):
    """Exit vertex + prefix and entry vertex + suffix for routed classes."""
    if isinstance(x, Vertex):
        exit_v, prefix = x.vertex, ()
    else:
        exit_v, prefix = g.edge(x.edge).dst, (x.edge,)
    if isinstance(y, Vertex):
        entry_v, suffix = y.vertex, ()
    else:
        entry_v, suffix = g.edge(y.edge).src, (y.edge,)
    return exit_v, prefix, entry_v, suffix


def traces_between(g: DirectedGraph, x: GraphPoint, y: GraphPoint,
                   cutoff: int = 16) -> TraceClassSummary:
    """Enumerate trace classes from x to y as reduced edge-id sequences."""
    oracle = gamma(g)
    if not oracle.membership(x, y):
        return TraceClassSummary(0, ())
    classes: list[tuple] = []
    if isinstance(x, EdgeInterior) and isinstance(y, EdgeInterior) and x.edge == y.edge:
        if abs(x.t - y.t) <= PARAM_TOL:
            classes.append(())
        elif x.t < y.t:
            classes.append((x.edge,))

    exit_v, prefix, entry_v, suffix = _route_anchors(x, y, g)
    routed = oracle.reaches(exit_v, entry_v)
    infinite = False
    if routed:
        relevant = frozenset(v for v in g.vertices
                             if oracle.reaches(exit_v, v) and oracle.reaches(v, entry_v))
        infinite = any(_on_cycle(oracle, v) for v in relevant)
        max_len = 2 * len(g.edges) + 2
        walk: list[str] = []

        def dfs(v: str) -> bool:
            """Collect walks v -> entry; returns False once the cutoff hits."""
            if len(classes) >= cutoff and infinite:
                return False
            if v == entry_v:
                classes.append(prefix + tuple(walk) + suffix)
                if len(classes) >= cutoff and infinite:
                    return False
            if len(walk) >= max_len:
                return True
            for e in g.out_edges(v):
                if e.dst not in relevant:
                    continue
                walk.append(e.id)
                alive = dfs(e.dst)
                walk.pop()
                if not alive:
                    return False
            return True

        dfs(exit_v)
    if infinite:
        return TraceClassSummary(math.inf, tuple(dict.fromkeys(classes))[:cutoff])
    unique = tuple(dict.fromkeys(classes))
    return TraceClassSummary(len(unique), unique[:cutoff])


def path_from_class(g: DirectedGraph, x: GraphPoint, y: GraphPoint,
                    seq: Sequence[str]) -> DiPath:
    """The constant-velocity path from x to y realizing one trace class."""
    if not seq:
        return DiPath.constant(g, x)
    steps = []
    last = len(seq) - 1
    for k, eid in enumerate(seq):
        t0 = x.t if (k == 0 and isinstance(x, EdgeInterior) and x.edge == eid) else 0.0
        t1 = y.t if (k == last and isinstance(y, EdgeInterior) and y.edge == eid) else 1.0
        steps.append(Step(eid, t0, t1))
    return DiPath(g, steps)


# ---------------------------------------------------------------------------
# Complexity tiers
# ---------------------------------------------------------------------------

@dataclass
class _TierInfo:
    acyclic: bool
    strongly_connected: bool
    pair_counts: dict          # (u, v) -> saturating path count, acyclic only
    multi_pairs: list          # vertex pairs with >= 2 classes
    interior_unique: bool


_COUNT_CAP = 8


def _path_counts(g: DirectedGraph, oracle: GammaOracle) -> dict:
    """Saturating counts of directed edge-paths between vertices (DAG only)."""
    order: list[str] = []
    indeg = {v: len(g.in_edges(v)) for v in g.vertices}
    queue = deque(v for v in g.vertices if indeg[v] == 0)
    while queue:
        u = queue.popleft()
        order.append(u)
        for e in g.out_edges(u):
            indeg[e.dst] -= 1
            if indeg[e.dst] == 0:
                queue.append(e.dst)
    counts: dict = {}
    for target in g.vertices:
        for u in reversed(order):
            if not oracle.reaches(u, target):
                continue
            total = 1 if u == target else 0
            for e in g.out_edges(u):
                total += counts.get((e.dst, target), 0)
            counts[(u, target)] = min(total, _COUNT_CAP)
    return counts


def _tier_info(g: DirectedGraph, oracle: GammaOracle) -> _TierInfo:
    acyclic = not any(_on_cycle(oracle, v) for v in g.vertices)
    strongly = all(oracle.reaches(u, v) for u in g.vertices for v in g.vertices)
    counts = _path_counts(g, oracle) if acyclic else {}
    multi = sorted((u, v) for (u, v), c in counts.items() if c >= 2)
    interior_unique = acyclic and all(
        len(g.in_edges(u)) == 0 and len(g.out_edges(v)) == 0 for u, v in multi)
    return _TierInfo(acyclic, strongly, counts, multi, interior_unique)


def _unique_section(g: DirectedGraph):
    def section(x: GraphPoint, y: GraphPoint) -> DiPath:
        summary = traces_between(g, x, y, cutoff=2)
        if summary.count != 1:
            raise RuntimeError(f"pair ({x!r},{y!r}) does not have a unique trace class")
        return path_from_class(g, x, y, summary.representatives[0])
    return section


def _lex_shortest_paths(g: DirectedGraph, oracle: GammaOracle, source: str) -> dict:
    """Lexicographically least shortest edge sequence to each reachable vertex."""
    best = {source: ()}
    frontier = [source]
    while frontier:
        nxt: dict = {}
        for u in frontier:
            for e in g.out_edges(u):
                if e.dst in best:
                    continue
                cand = best[u] + (e.id,)
                if e.dst not in nxt or cand < nxt[e.dst]:
                    nxt[e.dst] = cand
        best.update(nxt)
        frontier = sorted(nxt)
    return best


class _FixedVertexPaths:
    """A fixed directed path for every reachable ordered vertex pair."""

    def __init__(self, g: DirectedGraph, oracle: GammaOracle):
        self.g = g
        self._seq = {u: _lex_shortest_paths(g, oracle, u) for u in g.vertices}

    def sequence(self, u: str, v: str) -> tuple:
        return self._seq[u][v]

    def path(self, u: str, v: str) -> DiPath:
        return path_from_class(self.g, Vertex(u), Vertex(v), self._seq[u][v])


def _run_to_end(g: DirectedGraph, p: EdgeInterior) -> DiPath:
    return DiPath(g, [Step(p.edge, p.t, 1.0)])


def _run_from_start(g: DirectedGraph, p: EdgeInterior) -> DiPath:
    return DiPath(g, [Step(p.edge, 0.0, p.t)])


def _three_patch_planner(g: DirectedGraph, oracle: GammaOracle) -> Patchwork:
    """The general construction: vertex pairs, mixed pairs, interior pairs."""
    fixed = _FixedVertexPaths(g, oracle)

    def member_vv(x, y):
        return isinstance(x, Vertex) and isinstance(y, Vertex) and oracle.membership(x, y)

    def member_mixed(x, y):
        mixed = isinstance(x, Vertex) != isinstance(y, Vertex)
        return mixed and oracle.membership(x, y)

    def member_ii(x, y):
        both = isinstance(x, EdgeInterior) and isinstance(y, EdgeInterior)
        return both and oracle.membership(x, y)

    def section_vv(x, y):
        return fixed.path(x.vertex, y.vertex)

    def section_mixed(x, y):
        if isinstance(x, EdgeInterior):
            e = g.edge(x.edge)
            return concatenate(_run_to_end(g, x), fixed.path(e.dst, y.vertex))
        f = g.edge(y.edge)
        return concatenate(fixed.path(x.vertex, f.src), _run_from_start(g, y))

    def section_ii(x, y):
        if x.edge == y.edge and x.t <= y.t:
            return DiPath(g, [Step(x.edge, x.t, y.t)])
        e, f = g.edge(x.edge), g.edge(y.edge)
        middle = fixed.path(e.dst, f.src)
        return concatenate(concatenate(_run_to_end(g, x), middle), _run_from_start(g, y))

    patches = [
        Patch("F1", member_vv, section_vv, lipschitz_bound=2.0),
        Patch("F2", member_mixed, section_mixed, lipschitz_bound=2.0),
        Patch("F3", member_ii, section_ii, lipschitz_bound=2.0),
    ]
    return Patchwork(patches, regular=True, space=oracle)


def _cycle_order(g: DirectedGraph) -> list[Edge]:
    """Edges of a single directed cycle, starting at the least vertex id."""
    for v in g.vertices:
        if len(g.out_edges(v)) != 1 or len(g.in_edges(v)) != 1:
            raise RuntimeError("graph is not a simple directed cycle")
    start = min(g.vertices)
    order = []
    v = start
    for _ in range(len(g.edges)):
        e = g.out_edges(v)[0]
        order.append(e)
        v = e.dst
    if v != start:
        raise RuntimeError("cycle does not close up")
    return order


def _cycle_planner(g: DirectedGraph, oracle: GammaOracle) -> Patchwork:
    """Diagonal pairs get constant paths; the rest run forward with constant
    velocity along the cycle, the angular gap taken in [0, circumference)."""
    order = _cycle_order(g)
    circumference = float(len(order))
    edge_pos = {e.id: float(i) for i, e in enumerate(order)}
    vertex_pos = {e.src: float(i) for i, e in enumerate(order)}
    edge_index = {e.id: i for i, e in enumerate(order)}

    def position(p: GraphPoint) -> float:
        if isinstance(p, Vertex):
            return vertex_pos[p.vertex]
        return edge_pos[p.edge] + p.t

    def member_diag(x, y):
        return points_equal(x, y)

    def member_off(x, y):
        return not points_equal(x, y)

    def section_diag(x, y):
        return DiPath.constant(g, x)

    def section_off(x, y):
        gap = (position(y) - position(x)) % circumference
        if gap <= 0.0:
            gap = circumference
        if isinstance(x, Vertex):
            idx, t = edge_index[g.out_edges(x.vertex)[0].id], 0.0
        else:
            idx, t = edge_index[x.edge], x.t
        steps = []
        left = gap
        while left > PARAM_TOL:
            take = min(1.0 - t, left)
            steps.append(Step(order[idx].id, t, t + take))
            left -= take
            t += take
            if t >= 1.0 - PARAM_TOL:
                idx = (idx + 1) % len(order)
                t = 0.0
        return DiPath(g, steps)

    patches = [
        Patch("diagonal", member_diag, section_diag, lipschitz_bound=1.0),
        Patch("offdiagonal", member_off, section_off, lipschitz_bound=2.0),
    ]
    return Patchwork(patches, regular=True, space=oracle)


def _unique_planner(g: DirectedGraph, oracle: GammaOracle) -> Patchwork:
    patches = [Patch("all", oracle.membership, _unique_section(g), lipschitz_bound=2.0)]
    return Patchwork(patches, regular=True, space=oracle)


def _conflict_planner(g: DirectedGraph, oracle: GammaOracle, multi_pairs) -> Patchwork:
    fixed = _FixedVertexPaths(g, oracle)
    conflicts = frozenset(multi_pairs)

    def member_conflict(x, y):
        return (isinstance(x, Vertex) and isinstance(y, Vertex)
                and (x.vertex, y.vertex) in conflicts)

    def member_rest(x, y):
        return oracle.membership(x, y) and not member_conflict(x, y)

    def section_conflict(x, y):
        return fixed.path(x.vertex, y.vertex)

    patches = [
        Patch("conflicts", member_conflict, section_conflict, lipschitz_bound=2.0),
        Patch("rest", member_rest, _unique_section(g), lipschitz_bound=2.0),
    ]
    return Patchwork(patches, regular=True, space=oracle)


def _constant_planner(g: DirectedGraph, oracle: GammaOracle) -> Patchwork:
    def section(x, y):
        return DiPath.constant(g, x)
    return Patchwork([Patch("all", oracle.membership, section, 1.0)],
                     regular=True, space=oracle)


def _connected_report(g: DirectedGraph) -> DiTCReport:
    oracle = gamma(g)
    info = _tier_info(g, oracle)
    if info.acyclic and not info.multi_pairs:
        return DiTCReport(1, 1, True, Reason.UNIQUE_TRACES, _unique_planner(g, oracle))
    if info.strongly_connected:
        k = min(betti1(g), 2) + 1
        if k == 1:
            planner = _constant_planner(g, oracle)
        elif k == 2:
            planner = _cycle_planner(g, oracle)
        else:
            planner = _three_patch_planner(g, oracle)
        return DiTCReport(k, k, True, Reason.STRONGLY_CONNECTED_FORMULA, planner)
    if info.interior_unique and info.multi_pairs:
        planner = _conflict_planner(g, oracle, info.multi_pairs)
        return DiTCReport(2, 2, True, Reason.FINITE_CONFLICT_TWO_PATCH, planner)
    return DiTCReport(2, 3, False, Reason.GENERAL_THREE_PATCH, _three_patch_planner(g, oracle))


def ditc(g: DirectedGraph, combine_components: bool = True) -> DiTCReport:
    """Certified directed-complexity bounds with a witnessing patchwork.

    Disconnected graphs are analyzed per component and the reports combined
    (the relation splits over components, so patchworks merge index-wise and
    the value is the max); pass combine_components=False to forbid that.
    """
    comps = g.undirected_components()
    if len(comps) <= 1:
        return _connected_report(g)
    if not combine_components:
        raise NotConnected(f"graph has {len(comps)} components")
    reports = [_connected_report(g.induced(c)) for c in comps]
    lower = max(r.lower for r in reports)
    upper = max(r.upper for r in reports)
    reason = max(reports, key=lambda r: r.upper).reason
    return DiTCReport(lower, upper, lower == upper, reason, None)


def build_planner(g: DirectedGraph) -> Patchwork:
    """The patchwork witnessing ditc(g).upper on a connected graph."""
    if not g.is_connected():
        raise NotConnected("planners are built for connected graphs only")
    return _connected_report(g).patchwork


def three_patch_planner(g: DirectedGraph) -> Patchwork:
    """The always-available 3-patch construction on any connected graph.

    Works regardless of what tier ``ditc`` assigns; ``build_planner``
    prefers smaller witnesses when it can certify them.
    """
    if not g.is_connected():
        raise NotConnected("planners are built for connected graphs only")
    return _three_patch_planner(g, gamma(g))


def subdivide(g: DirectedGraph) -> DirectedGraph:
    """Replace each edge u -> v by u -> m_<edge> -> v (same directed space)."""
    vertices = list(g.vertices)
    edges = []
    taken = set(g.vertices) | {e.id for e in g.edges}

    def fresh(name: str) -> str:
        while name in taken:
            name += "_"
        taken.add(name)
        return name

    for e in g.edges:
        mid = fresh(f"m_{e.id}")
        vertices.append(mid)
        edges.append((fresh(f"{e.id}_a"), e.src, mid))
        edges.append((fresh(f"{e.id}_b"), mid, e.dst))
    return DirectedGraph(vertices, edges)


# ---------------------------------------------------------------------------
# Built-in spaces
# ---------------------------------------------------------------------------

def directed_interval() -> DirectedGraph:
    """Two vertices joined by one oriented edge."""
    return DirectedGraph(["0", "1"], [("e", "0", "1")])


def directed_circle() -> DirectedGraph:
    """Two parallel oriented edges b -> e; homeomorphic to a circle."""
    return DirectedGraph(["b", "e"], [("top", "b", "e"), ("bot", "b", "e")])


def directed_loop() -> DirectedGraph:
    """One vertex with a single oriented loop edge."""
    return DirectedGraph(["v"], [("l", "v", "v")])


def cycle_graph(n: int) -> DirectedGraph:
    """A directed cycle with n vertices and n edges."""
    if n < 1:
        raise ValueError("cycle needs n >= 1")
    vertices = [f"v{i}" for i in range(n)]
    edges = [(f"e{i}", f"v{i}", f"v{(i + 1) % n}") for i in range(n)]
    return DirectedGraph(vertices, edges)


def parallel_edges(k: int) -> DirectedGraph:
    """k parallel oriented edges b -> e."""
    if k < 1:
        raise ValueError("need k >= 1 edges")
    return DirectedGraph(["b", "e"], [(f"e{i}", "b", "e") for i in range(k)])


def interval_planner() -> Patchwork:
    """The global linear section on the directed interval."""
    g = directed_interval()
    oracle = gamma(g)

    def coord(p: GraphPoint) -> float:
        if isinstance(p, Vertex):
            return 0.0 if p.vertex == "0" else 1.0
        return p.t

    def section(x, y):
        return DiPath(g, [Step("e", coord(x), coord(y))])

    return Patchwork([Patch("all", oracle.membership, section, 1.0)],
                     regular=True, space=oracle)


def circle_planner() -> Patchwork:
    """Two patches on the directed circle: pairs inside the top interval,
    then pairs inside the bottom interval minus the three shared pairs."""
    g = directed_circle()
    oracle = gamma(g)

    def on_arc(p: GraphPoint, edge: str) -> bool:
        if isinstance(p, Vertex):
            return True
        return p.edge == edge

    def coord(p: GraphPoint) -> float:
        if isinstance(p, Vertex):
            return 0.0 if p.vertex == "b" else 1.0
        return p.t

    def member_top(x, y):
        return on_arc(x, "top") and on_arc(y, "top") and coord(x) <= coord(y)

    def member_bot(x, y):
        both_vertices = isinstance(x, Vertex) and isinstance(y, Vertex)
        return (on_arc(x, "bot") and on_arc(y, "bot") and coord(x) <= coord(y)
                and not both_vertices)

    def section_on(edge):
        def section(x, y):
            return DiPath(g, [Step(edge, coord(x), coord(y))])
        return section

    patches = [
        Patch("top", member_top, section_on("top"), 1.0),
        Patch("bot", member_bot, section_on("bot"), 1.0),
    ]
    return Patchwork(patches, regular=True, space=oracle)


def loop_planner() -> Patchwork:
    """Constant paths on the diagonal; constant-velocity forward runs off it."""
    g = directed_loop()
    return _cycle_planner(g, gamma(g))
