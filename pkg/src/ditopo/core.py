"""Points, directed paths, patchwork planners, and the numeric testers.

A directed path on a graph is stored as a list of forward-traversed edge
segments; evaluation uses constant speed with respect to the summed
parameter spans (unit edge length).  Patchworks partition a reachability
relation into ordered patches, each carrying a local section; the testers
certify section validity and per-patch Lipschitz continuity by seeded
sampling.

Planners for other spaces (products, sphere boundaries) plug into the same
testers by providing path objects with ``start``/``end``/``evaluate``/
``validate`` and an oracle with ``membership``/``sample_point``/
``distance``/``perturb_pair``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Optional

from .errors import (
    EndpointMismatch,
    InvalidPath,
    InvalidPoint,
    NoGlobalSection,
    OutOfRange,
    PatchNotFound,
    Unreachable,
)

# Tolerance on edge parameters; vertex identity is exact.
PARAM_TOL = 1e-9


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Vertex:
    vertex: str

    def __repr__(self):
        return f"v:{self.vertex}"


@dataclass(frozen=True)
class EdgeInterior:
    edge: str
    t: float

    def __post_init__(self):
        if not (0.0 < self.t < 1.0):
            raise InvalidPoint(f"edge parameter must lie strictly in (0,1), got {self.t}")

    def __repr__(self):
        return f"e:{self.edge}:{self.t:g}"


GraphPoint = Vertex | EdgeInterior


def points_equal(a, b, tol: float = PARAM_TOL) -> bool:
    """Equality up to `tol` on edge/real parameters; vertex ids are exact.

    Handles graph points, bare floats, and (nested) tuples of either, so the
    same testers work for product and sphere planners.
    """
    if isinstance(a, Vertex) and isinstance(b, Vertex):
        return a.vertex == b.vertex
    if isinstance(a, EdgeInterior) and isinstance(b, EdgeInterior):
        return a.edge == b.edge and abs(a.t - b.t) <= tol
    if isinstance(a, (int, float)) and isinstance(b, (int, float)):
        return abs(a - b) <= tol
    if isinstance(a, tuple) and isinstance(b, tuple):
        return len(a) == len(b) and all(points_equal(x, y, tol) for x, y in zip(a, b))
    return False


def format_point(p: GraphPoint) -> str:
    if isinstance(p, Vertex):
        return f"v:{p.vertex}"
    return f"e:{p.edge}:{p.t!r}"


def parse_point(text: str) -> GraphPoint:
    parts = text.split(":")
    if len(parts) == 2 and parts[0] == "v":
        return Vertex(parts[1])
    if len(parts) == 3 and parts[0] == "e":
        return EdgeInterior(parts[1], float(parts[2]))
    raise InvalidPoint(f"cannot parse point {text!r}; expected 'v:<id>' or 'e:<id>:<t>'")


# ---------------------------------------------------------------------------
# Directed paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    """One forward traversal of (part of) an edge."""

    edge: str
    t_from: float
    t_to: float

    @property
    def span(self) -> float:
        return self.t_to - self.t_from


class DiPath:
    """A finite monotone piecewise-edge path with constant-speed evaluation.

    ``graph`` must provide ``edge(id)`` returning an object with ``src``/
    ``dst`` and ``point_at(edge_id, t)`` mapping boundary parameters to
    vertices.  A path with no steps is constant and carries its point in
    ``basepoint``.
    """

    __slots__ = ("graph", "steps", "basepoint")

    def __init__(self, graph, steps: Iterable[Step] = (), basepoint: Optional[GraphPoint] = None):
        self.graph = graph
        self.steps = tuple(steps)
        self.basepoint = basepoint
        if not self.steps and basepoint is None:
            raise InvalidPath("a path needs steps or a basepoint")
        if self.steps and basepoint is not None:
            raise InvalidPath("basepoint is only for constant (step-free) paths")

    @classmethod
    def constant(cls, graph, point: GraphPoint) -> "DiPath":
        if isinstance(point, EdgeInterior):
            return cls(graph, [Step(point.edge, point.t, point.t)])
        return cls(graph, (), basepoint=point)

    @classmethod
    def from_steps(cls, graph, steps: Iterable[tuple]) -> "DiPath":
        return cls(graph, [Step(e, a, b) for (e, a, b) in steps])

    def validate(self) -> None:
        """Raise InvalidPath unless every structural invariant holds."""
        if not self.steps:
            if not isinstance(self.basepoint, Vertex):
                raise InvalidPath("step-free paths must sit at a vertex")
            if self.basepoint.vertex not in self.graph.vertex_set:
                raise InvalidPath(f"unknown vertex {self.basepoint.vertex!r}")
            return
        for s in self.steps:
            self.graph.edge(s.edge)  # raises on unknown edge
            if not (-PARAM_TOL <= s.t_from <= s.t_to <= 1.0 + PARAM_TOL):
                raise InvalidPath(f"step {s} is not a forward traversal inside [0,1]")
        for prev, nxt in zip(self.steps, self.steps[1:]):
            p = self.graph.point_at(prev.edge, prev.t_to)
            q = self.graph.point_at(nxt.edge, nxt.t_from)
            if not points_equal(p, q):
                raise InvalidPath(f"steps {prev} and {nxt} are not incident ({p} vs {q})")

    def start(self) -> GraphPoint:
        if not self.steps:
            return self.basepoint
        s = self.steps[0]
        return self.graph.point_at(s.edge, s.t_from)

    def end(self) -> GraphPoint:
        if not self.steps:
            return self.basepoint
        s = self.steps[-1]
        return self.graph.point_at(s.edge, s.t_to)

    def length(self) -> float:
        """Total parameter span (unit edge length)."""
        return sum(s.span for s in self.steps)

    def evaluate(self, s: float) -> GraphPoint:
        if not (-PARAM_TOL <= s <= 1.0 + PARAM_TOL):
            raise OutOfRange(f"path parameter {s} outside [0,1]")
        s = min(max(s, 0.0), 1.0)
        total = self.length()
        if total <= 0.0:
            return self.start()
        target = s * total
        acc = 0.0
        for st in self.steps:
            if target <= acc + st.span or st is self.steps[-1]:
                if st.span <= 0.0:
                    t = st.t_from
                else:
                    t = st.t_from + min(max(target - acc, 0.0), st.span)
                return self.graph.point_at(st.edge, t)
            acc += st.span
        return self.end()

    def subpath(self, s0: float, s1: float) -> "DiPath":
        """The portion between fractions s0 <= s1 of the total span."""
        if not (0.0 <= s0 <= s1 <= 1.0 + PARAM_TOL):
            raise OutOfRange(f"subpath fractions ({s0}, {s1}) outside 0 <= s0 <= s1 <= 1")
        total = self.length()
        if total <= 0.0 or abs(s1 - s0) <= PARAM_TOL:
            return DiPath.constant(self.graph, self.evaluate(s0))
        lo, hi = s0 * total, s1 * total
        out: list[Step] = []
        acc = 0.0
        for st in self.steps:
            a, b = acc, acc + st.span
            acc = b
            if b <= lo or a >= hi:
                continue
            t_from = st.t_from + max(lo - a, 0.0)
            t_to = st.t_from + min(hi - a, st.span)
            if t_to > t_from:
                out.append(Step(st.edge, t_from, t_to))
        if not out:
            return DiPath.constant(self.graph, self.evaluate(s0))
        return DiPath(self.graph, out)

    def to_json(self) -> dict:
        doc = {"steps": [{"edge": s.edge, "from": s.t_from, "to": s.t_to} for s in self.steps]}
        if not self.steps:
            doc["at"] = format_point(self.basepoint)
        return doc

    @classmethod
    def from_json(cls, graph, doc: dict) -> "DiPath":
        steps = [Step(d["edge"], float(d["from"]), float(d["to"])) for d in doc.get("steps", [])]
        if steps:
            return cls(graph, steps)
        return cls(graph, (), basepoint=parse_point(doc["at"]))

    def __repr__(self):
        if not self.steps:
            return f"DiPath(const {self.basepoint!r})"
        inner = ", ".join(f"({s.edge},{s.t_from:g},{s.t_to:g})" for s in self.steps)
        return f"DiPath[{inner}]"


def concatenate(p: DiPath, q: DiPath) -> DiPath:
    """p followed by q; the endpoint of p must equal the start of q.

    Adjacent same-edge steps meeting mid-edge at the same parameter are
    merged into one step.
    """
    if p.graph is not q.graph and p.graph != q.graph:
        raise EndpointMismatch("paths live on different graphs")
    if not points_equal(p.end(), q.start()):
        raise EndpointMismatch(f"path ends at {p.end()!r} but next starts at {q.start()!r}")
    if not p.steps:
        return q
    if not q.steps:
        return p
    steps = list(p.steps)
    rest = list(q.steps)
    last, first = steps[-1], rest[0]
    if last.edge == first.edge and abs(last.t_to - first.t_from) <= PARAM_TOL:
        steps[-1] = Step(last.edge, last.t_from, first.t_to)
        rest = rest[1:]
    return DiPath(p.graph, steps + rest)


def evaluate(p: DiPath, s: float) -> GraphPoint:
    """Position at fraction s of total parameter length."""
    return p.evaluate(s)


def path_sup_distance(p, q, distance: Callable, samples: int = 64) -> float:
    """Max over sample fractions of the point distance between two paths."""
    if samples < 2:
        raise ValueError("need at least 2 sample fractions")
    worst = 0.0
    for i in range(samples):
        s = i / (samples - 1)
        worst = max(worst, distance(p.evaluate(s), q.evaluate(s)))
    return worst


def sup_distance(p: DiPath, q: DiPath, samples: int = 64) -> float:
    """Sampled sup metric between two paths on the same graph."""
    if p.graph is not q.graph and p.graph != q.graph:
        raise ValueError("paths live on different graphs")
    return path_sup_distance(p, q, p.graph.distance, samples)


# ---------------------------------------------------------------------------
# Patchworks and complexity reports
# ---------------------------------------------------------------------------

@dataclass
class Patch:
    """One piece of a patchwork: a membership predicate plus local section."""

    id: str
    membership: Callable[[object, object], bool]
    section: Callable[[object, object], object]
    lipschitz_bound: float


@dataclass
class Patchwork:
    """An ordered partition of a reachability relation into patches.

    Order is significant: it records the closed-prefix ordering of the
    construction; ``regular`` asserts that ordering analytically (it is not
    verified numerically).  ``space`` optionally carries the oracle the
    planner was built for, so testers can default to it.
    """

    patches: list[Patch]
    regular: bool = False
    space: object = None

    def patch_ids(self) -> list[str]:
        return [p.id for p in self.patches]

    def patch(self, patch_id: str) -> Patch:
        for p in self.patches:
            if p.id == patch_id:
                return p
        raise PatchNotFound(f"no patch {patch_id!r}; have {self.patch_ids()}")

    def claiming_patches(self, x, y) -> list[Patch]:
        return [p for p in self.patches if p.membership(x, y)]

    def plan(self, x, y):
        """The section value of the unique patch containing (x, y)."""
        claiming = self.claiming_patches(x, y)
        if not claiming:
            raise Unreachable(f"no patch contains ({x!r}, {y!r})")
        return claiming[0].section(x, y)


class Reason(str, Enum):
    UNIQUE_TRACES = "UniqueTraces"
    MULTI_CLASS_LOWER_BOUND = "MultiClassLowerBound"
    FINITE_CONFLICT_TWO_PATCH = "FiniteConflictTwoPatch"
    STRONGLY_CONNECTED_FORMULA = "StronglyConnectedFormula"
    GENERAL_THREE_PATCH = "GeneralThreePatch"
    KNOWN_BUILTIN = "KnownBuiltin"


@dataclass
class DiTCReport:
    """Certified bounds on directed topological complexity."""

    lower: int
    upper: int
    exact: bool
    reason: Reason
    patchwork: Optional[Patchwork] = None

    def __post_init__(self):
        if not (1 <= self.lower <= self.upper):
            raise ValueError(f"bad bounds: {self.lower}..{self.upper}")
        if self.exact != (self.lower == self.upper):
            raise ValueError("exact flag must mirror lower == upper")
        if self.patchwork is not None and len(self.patchwork.patches) != self.upper:
            raise ValueError("witness patch count must equal the upper bound")

    def to_json(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "reason": self.reason.value,
        }


# ---------------------------------------------------------------------------
# Section and continuity testers
# ---------------------------------------------------------------------------

@dataclass
class SectionCheckReport:
    samples: int
    membership_violations: list = field(default_factory=list)
    endpoint_violations: list = field(default_factory=list)
    path_violations: list = field(default_factory=list)

    @property
    def total_violations(self) -> int:
        return (len(self.membership_violations)
                + len(self.endpoint_violations)
                + len(self.path_violations))

    @property
    def ok(self) -> bool:
        return self.total_violations == 0

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "violations": self.total_violations,
            "membership_violations": self.membership_violations[:10],
            "endpoint_violations": self.endpoint_violations[:10],
            "path_violations": self.path_violations[:10],
        }


def sample_pair(oracle, rng: random.Random, max_tries: int = 10000):
    """One pair drawn from the reachability relation by rejection sampling."""
    for _ in range(max_tries):
        x = oracle.sample_point(rng)
        y = oracle.sample_point(rng)
        if oracle.membership(x, y):
            return x, y
    raise RuntimeError("rejection sampling failed to hit the relation")


def check_section(planner: Patchwork, oracle, samples: int = 1000, seed: int = 0) -> SectionCheckReport:
    """Sample pairs from the relation and test partition + section exactness.

    For each pair: exactly one patch must claim it, the section path must
    run from x to y (parameters within 1e-9), and the path must satisfy all
    structural invariants.  Violations are returned as data, not raised.
    """
    rng = random.Random(seed)
    report = SectionCheckReport(samples=samples)
    for _ in range(samples):
        x, y = sample_pair(oracle, rng)
        claiming = planner.claiming_patches(x, y)
        if len(claiming) != 1:
            report.membership_violations.append(
                {"pair": (repr(x), repr(y)), "claimed_by": [p.id for p in claiming]})
            continue
        patch = claiming[0]
        try:
            path = patch.section(x, y)
            path.validate()
        except Exception as exc:  # noqa: BLE001 - violations are data here
            report.path_violations.append(
                {"pair": (repr(x), repr(y)), "patch": patch.id, "error": str(exc)})
            continue
        if not (points_equal(path.start(), x) and points_equal(path.end(), y)):
            report.endpoint_violations.append(
                {"pair": (repr(x), repr(y)), "patch": patch.id,
                 "got": (repr(path.start()), repr(path.end()))})
    return report


@dataclass
class ContinuityReport:
    patch_id: str
    pairs_requested: int
    pairs_used: int
    lipschitz_bound: float
    max_ratio: float
    violations: list = field(default_factory=list)
    worst: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "patch": self.patch_id,
            "pairs_requested": self.pairs_requested,
            "pairs_used": self.pairs_used,
            "lipschitz_bound": self.lipschitz_bound,
            "max_ratio": self.max_ratio,
            "violations": len(self.violations),
            "worst": self.worst,
        }


def check_patch_continuity(planner: Patchwork, patch_id: str,
                           pair_samples: int = 200, perturbation: float = 0.01,
                           seed: int = 0, oracle=None,
                           sup_samples: int = 64) -> ContinuityReport:
    """Sampled Lipschitz certificate for one patch's section.

    Pairs are drawn from the patch; each endpoint is jittered within its own
    cell by at most min(perturbation, d(x, y) / 8), which keeps the
    perturbed pair in the combinatorial regime the pair already occupies
    (sections here are continuous, but not uniformly so near regime
    boundaries, so fixed-scale jitter would manufacture unbounded ratios
    that no declared constant could cover).  Perturbed pairs that leave the
    relation or the patch are discarded.  Reports the max observed ratio
    sup_distance / (d(x,x') + d(y,y')) and any sample exceeding the
    declared bound + 1e-6.
    """
    if oracle is None:
        oracle = planner.space
    if oracle is None:
        raise ValueError("no oracle supplied and the planner carries none")
    patch = planner.patch(patch_id)
    bound = patch.lipschitz_bound
    rng = random.Random(seed)
    report = ContinuityReport(patch_id=patch_id, pairs_requested=pair_samples,
                              pairs_used=0, lipschitz_bound=bound, max_ratio=0.0)
    for _ in range(pair_samples):
        try:
            x, y = sample_pair(oracle, rng)
        except RuntimeError:
            break
        if not patch.membership(x, y):
            continue
        eps = min(perturbation, oracle.distance(x, y) / 8.0)
        if eps <= 0.0:
            continue
        x2, y2 = oracle.perturb_pair((x, y), eps, rng)
        moved = oracle.distance(x, x2) + oracle.distance(y, y2)
        if moved <= 0.0:
            continue
        if not (oracle.membership(x2, y2) and patch.membership(x2, y2)):
            continue
        p = patch.section(x, y)
        q = patch.section(x2, y2)
        sup = path_sup_distance(p, q, oracle.distance, sup_samples)
        ratio = sup / moved
        report.pairs_used += 1
        sample = {"pair": (repr(x), repr(y)), "perturbed": (repr(x2), repr(y2)),
                  "sup": sup, "moved": moved, "ratio": ratio}
        if ratio > report.max_ratio:
            report.max_ratio = ratio
            report.worst = sample
        if sup > bound * moved + 1e-6:
            report.violations.append(sample)
    return report


def contraction_homotopy(planner: Patchwork, u: DiPath, t: float) -> DiPath:
    """Deform a path toward the planner's canonical path between its ends.

    At t = 1 the result is u itself; at t = 0 it is the section path from
    u(0) to u(1); in between, the first and last fractions t/2 of u are
    kept and the middle is replaced by the section path between u(t/2) and
    u(1 - t/2).  Requires a single-patch (global) section.
    """
    if len(planner.patches) != 1:
        raise NoGlobalSection(f"planner has {len(planner.patches)} patches; need exactly 1")
    if not (0.0 <= t <= 1.0):
        raise OutOfRange(f"homotopy parameter {t} outside [0,1]")
    section = planner.patches[0].section
    if t >= 1.0:
        return u
    left = u.subpath(0.0, t / 2.0)
    right = u.subpath(1.0 - t / 2.0, 1.0)
    mid = section(left.end(), right.start())
    return concatenate(concatenate(left, mid), right)


def dumps(doc: dict) -> str:
    """Canonical JSON used across CLIs and reports."""
    return json.dumps(doc, indent=2, sort_keys=True)
