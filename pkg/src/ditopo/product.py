"""Cartesian products of directed spaces and directed tori.

The reachability relation of a product is the product of the factor
relations, so membership is componentwise.  Patchworks combine by grading:
with factor patches indexed 0..n_i in their closed-prefix order, the
product patch G_j collects all index tuples summing to j, which stays a
partition with one continuous section per piece.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .core import (
    DiTCReport,
    EdgeInterior,
    Patch,
    Patchwork,
    Reason,
    Vertex,
)
from .errors import InvalidPoint, NotRegular, Unreachable
from .graph import loop_planner


class ProductPath:
    """A tuple of factor paths evaluated at a common fraction."""

    def __init__(self, components: Sequence):
        self.components = tuple(components)

    def start(self):
        return tuple(p.start() for p in self.components)

    def end(self):
        return tuple(p.end() for p in self.components)

    def evaluate(self, s: float):
        return tuple(p.evaluate(s) for p in self.components)

    def validate(self):
        for p in self.components:
            p.validate()

    def to_json(self) -> dict:
        return {"components": [p.to_json() for p in self.components]}

    def __repr__(self):
        return f"ProductPath({', '.join(repr(p) for p in self.components)})"


class ProductGamma:
    """Componentwise reachability oracle over tuples of factor points."""

    def __init__(self, factors: Sequence):
        if not factors:
            raise ValueError("need at least one factor")
        self.factors = tuple(factors)

    def _check(self, p):
        if len(p) != len(self.factors):
            raise InvalidPoint(f"point {p!r} has {len(p)} coordinates, "
                               f"expected {len(self.factors)}")

    def membership(self, x, y) -> bool:
        self._check(x)
        self._check(y)
        return all(f.membership(a, b) for f, a, b in zip(self.factors, x, y))

    def sample_point(self, rng: random.Random):
        return tuple(f.sample_point(rng) for f in self.factors)

    def distance(self, a, b) -> float:
        return sum(f.distance(p, q) for f, p, q in zip(self.factors, a, b))

    def perturb_pair(self, pair, eps: float, rng: random.Random):
        xs, ys = [], []
        for f, a, b in zip(self.factors, *pair):
            scaled = min(eps, f.distance(a, b) / 8.0)
            if scaled <= 0.0:
                xs.append(a)
                ys.append(b)
                continue
            a2, b2 = f.perturb_pair((a, b), scaled, rng)
            xs.append(a2)
            ys.append(b2)
        return tuple(xs), tuple(ys)


def product_gamma(factors: Sequence) -> ProductGamma:
    """Membership in the product relation, tested componentwise."""
    return ProductGamma(factors)


@dataclass
class ProductSpace:
    """Ordered factors, each a reachability oracle plus a regular patchwork."""

    factors: list  # list of (oracle, Patchwork)

    def oracle(self) -> ProductGamma:
        return ProductGamma([f[0] for f in self.factors])

    def planner(self) -> Patchwork:
        return product_planner(self.factors)


def _index_tuples(sizes: Sequence[int], total: int):
    if not sizes:
        if total == 0:
            yield ()
        return
    head, rest = sizes[0], sizes[1:]
    for j in range(min(head - 1, total) + 1):
        for tail in _index_tuples(rest, total - j):
            yield (j,) + tail


def product_planner(factors: Sequence) -> Patchwork:
    """Combine one regular patchwork per factor into the graded patchwork.

    Patch G_j holds the pairs whose per-factor patch indices sum to j;
    its section applies the factor sections componentwise.
    """
    oracles = [f[0] for f in factors]
    planners = [f[1] for f in factors]
    for p in planners:
        if not p.regular:
            raise NotRegular("every factor patchwork must carry the ordered-regular flag")
    sizes = [len(p.patches) for p in planners]
    top = sum(s - 1 for s in sizes)
    space = ProductGamma(oracles)

    def factor_index(i: int, a, b) -> int:
        for k, patch in enumerate(planners[i].patches):
            if patch.membership(a, b):
                return k
        return -1

    def grade(x, y) -> int:
        total = 0
        for i, (a, b) in enumerate(zip(x, y)):
            k = factor_index(i, a, b)
            if k < 0:
                return -1
            total += k
        return total

    def make_patch(j: int) -> Patch:
        def member(x, y):
            if len(x) != len(oracles) or len(y) != len(oracles):
                return False
            return grade(x, y) == j

        def section(x, y):
            parts = []
            for i, (a, b) in enumerate(zip(x, y)):
                k = factor_index(i, a, b)
                if k < 0:
                    raise Unreachable(f"coordinate {i} pair ({a!r},{b!r}) is unreachable")
                parts.append(planners[i].patches[k].section(a, b))
            return ProductPath(parts)

        bound = max(p.lipschitz_bound for planner in planners for p in planner.patches)
        return Patch(f"G{j}", member, section, bound)

    patches = [make_patch(j) for j in range(top + 1)]
    return Patchwork(patches, regular=True, space=space)


# ---------------------------------------------------------------------------
# Directed tori
# ---------------------------------------------------------------------------

def torus_factors(n: int) -> list:
    if n < 1:
        raise ValueError("torus dimension must be >= 1")
    factors = []
    for _ in range(n):
        planner = loop_planner()
        factors.append((planner.space, planner))
    return factors


def torus_planner(n: int) -> tuple[Patchwork, DiTCReport]:
    """The graded planner on the n-torus of directed loops; complexity n + 1.

    The upper bound is the graded patch count; the matching lower bound is
    the classical complexity of the n-torus, which applies because the
    space is strongly connected.
    """
    planner = product_planner(torus_factors(n))
    report = DiTCReport(n + 1, n + 1, True, Reason.KNOWN_BUILTIN, planner)
    return planner, report


def turns_to_point(t: float):
    """Angle in turns [0,1) to a point of the directed loop graph."""
    t = t % 1.0
    if t == 0.0:
        return Vertex("v")
    return EdgeInterior("l", t)


def point_to_turns(p) -> float:
    if isinstance(p, Vertex):
        return 0.0
    return p.t


def parse_torus_point(text: str, n: int):
    coords = [float(part) for part in text.split(",")]
    if len(coords) != n:
        raise InvalidPoint(f"expected {n} comma-separated turns, got {text!r}")
    return tuple(turns_to_point(c) for c in coords)
