"""Two-process PV programs as planar ordered spaces.

Each process is a dot-separated sequence of P (lock) and V (unlock)
actions on binary semaphores; the k-th action of a process executes at
coordinate k of its axis.  Holding the same semaphore in both processes is
impossible, which shades one open rectangle per pair of same-semaphore
lock intervals.  Schedules are monotone staircases on a grid refinement of
the square that avoid the open rectangles; boundary contact is allowed.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InvalidPoint, PVSyntaxError, UnbalancedLocks, Unreachable

_ACTION_RE = re.compile(r"^([PV])(\w+)$")


@dataclass(frozen=True)
class Action:
    op: str         # "P" or "V"
    semaphore: str

    def __str__(self):
        return f"{self.op}{self.semaphore}"


@dataclass(frozen=True)
class PVProgram:
    process1: tuple
    process2: tuple

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.process1), len(self.process2)

    def process(self, idx: int) -> tuple:
        return self.process1 if idx == 1 else self.process2

    def __str__(self):
        return (".".join(map(str, self.process1)) + "|"
                + ".".join(map(str, self.process2)))


def _parse_actions(text: str) -> tuple:
    if text == "":
        return ()
    actions = []
    for token in text.split("."):
        m = _ACTION_RE.match(token)
        if not m:
            raise PVSyntaxError(f"bad action {token!r}; expected P<name> or V<name>")
        actions.append(Action(m.group(1), m.group(2)))
    return tuple(actions)


def _check_bracketing(actions: Sequence[Action], which: int) -> None:
    holding: set[str] = set()
    for a in actions:
        if a.op == "P":
            if a.semaphore in holding:
                raise UnbalancedLocks(
                    f"process {which} locks {a.semaphore!r} while already holding it")
            holding.add(a.semaphore)
        else:
            if a.semaphore not in holding:
                raise UnbalancedLocks(
                    f"process {which} releases {a.semaphore!r} without holding it")
            holding.remove(a.semaphore)
    if holding:
        raise UnbalancedLocks(f"process {which} ends still holding {sorted(holding)}")


def parse_pv(text: str) -> PVProgram:
    """Parse "actions|actions" with dot-separated P<name>/V<name> actions."""
    parts = text.split("|")
    if len(parts) != 2:
        raise PVSyntaxError("program must be two action sequences separated by '|'")
    p1, p2 = _parse_actions(parts[0]), _parse_actions(parts[1])
    _check_bracketing(p1, 1)
    _check_bracketing(p2, 2)
    return PVProgram(p1, p2)


# ---------------------------------------------------------------------------
# Forbidden regions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Rect:
    """An open axis-aligned rectangle in program-step units."""

    semaphore: str
    x1: int
    x2: int
    y1: int
    y2: int

    def contains_open(self, x: float, y: float) -> bool:
        return self.x1 < x < self.x2 and self.y1 < y < self.y2

    def to_json(self) -> dict:
        return {"semaphore": self.semaphore,
                "x": [self.x1, self.x2], "y": [self.y1, self.y2]}


@dataclass
class ForbiddenRegion:
    rectangles: list

    def to_json(self) -> dict:
        return {"rectangles": [r.to_json() for r in self.rectangles]}


def _lock_intervals(actions: Sequence[Action]) -> dict:
    """semaphore -> list of open (P, V) coordinate intervals."""
    intervals: dict = {}
    pending: dict = {}
    for idx, a in enumerate(actions):
        coord = idx + 1
        if a.op == "P":
            pending[a.semaphore] = coord
        else:
            intervals.setdefault(a.semaphore, []).append((pending.pop(a.semaphore), coord))
    return intervals


def forbidden_regions(prog: PVProgram) -> ForbiddenRegion:
    """One open rectangle per same-semaphore pair of lock intervals."""
    iv1 = _lock_intervals(prog.process1)
    iv2 = _lock_intervals(prog.process2)
    rects = []
    for sem in sorted(set(iv1) & set(iv2)):
        for (x1, x2) in iv1[sem]:
            for (y1, y2) in iv2[sem]:
                rects.append(Rect(sem, x1, x2, y1, y2))
    return ForbiddenRegion(rects)


# ---------------------------------------------------------------------------
# Reachability on the grid
# ---------------------------------------------------------------------------

class PVGamma:
    """Monotone staircase reachability over a grid refinement of the square.

    Grid indices count steps of 1/resolution in program-step units; queries
    must be grid-aligned.  A point strictly inside a forbidden rectangle is
    not a point of the space, so nothing is reachable from or to it.
    """

    def __init__(self, prog: PVProgram, resolution: int = 8):
        if resolution < 2:
            raise ValueError("resolution must be >= 2 subdivisions per step unit")
        self.prog = prog
        self.r = resolution
        self.rects = forbidden_regions(prog).rectangles
        n1, n2 = prog.shape
        self.nx = n1 * resolution
        self.ny = n2 * resolution
        self._reach_cache: dict = {}
        self._coreach_cache: dict = {}

    # grid index <-> step-unit coordinate

    def snap(self, point) -> tuple[int, int]:
        x, y = point
        a, b = x * self.r, y * self.r
        ia, ib = round(a), round(b)
        if abs(a - ia) > 1e-9 or abs(b - ib) > 1e-9:
            raise InvalidPoint(f"point {point!r} is not aligned to the 1/{self.r} grid")
        if not (0 <= ia <= self.nx and 0 <= ib <= self.ny):
            raise InvalidPoint(f"point {point!r} outside the program square")
        return ia, ib

    def valid_node(self, node: tuple[int, int]) -> bool:
        a, b = node
        r = self.r
        return not any(q.x1 * r < a < q.x2 * r and q.y1 * r < b < q.y2 * r
                       for q in self.rects)

    def _h_blocked(self, a: int, b: int) -> bool:
        """Move (a,b) -> (a+1,b) crosses some open rectangle."""
        r = self.r
        return any(q.y1 * r < b < q.y2 * r and q.x1 * r <= a and a + 1 <= q.x2 * r
                   for q in self.rects)

    def _v_blocked(self, a: int, b: int) -> bool:
        r = self.r
        return any(q.x1 * r < a < q.x2 * r and q.y1 * r <= b and b + 1 <= q.y2 * r
                   for q in self.rects)

    def _moves(self, node):
        a, b = node
        if a < self.nx and not self._h_blocked(a, b):
            yield (a + 1, b)
        if b < self.ny and not self._v_blocked(a, b):
            yield (a, b + 1)

    def _back_moves(self, node):
        a, b = node
        if a > 0 and not self._h_blocked(a - 1, b):
            yield (a - 1, b)
        if b > 0 and not self._v_blocked(a, b - 1):
            yield (a, b - 1)

    def reachable_from(self, node: tuple[int, int]) -> frozenset:
        if node in self._reach_cache:
            return self._reach_cache[node]
        seen = {node}
        queue = deque([node])
        while queue:
            cur = queue.popleft()
            for nxt in self._moves(cur):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        result = frozenset(seen)
        self._reach_cache[node] = result
        return result

    def coreachable_to(self, node: tuple[int, int]) -> frozenset:
        if node in self._coreach_cache:
            return self._coreach_cache[node]
        seen = {node}
        queue = deque([node])
        while queue:
            cur = queue.popleft()
            for nxt in self._back_moves(cur):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        result = frozenset(seen)
        self._coreach_cache[node] = result
        return result

    def membership(self, x, y) -> bool:
        a = self.snap(x)
        b = self.snap(y)
        if not (self.valid_node(a) and self.valid_node(b)):
            return False
        if not (a[0] <= b[0] and a[1] <= b[1]):
            return False
        return b in self.reachable_from(a)


def pv_gamma(prog: PVProgram, resolution: int = 8) -> PVGamma:
    """Grid reachability oracle for a two-process program."""
    return PVGamma(prog, resolution)


# ---------------------------------------------------------------------------
# Schedules
# ---------------------------------------------------------------------------

@dataclass
class Schedule:
    """A monotone staircase plus the interleaving of actions it induces."""

    program: PVProgram
    resolution: int
    points: tuple        # grid corners in step units, monotone
    interleaving: tuple  # strings "1:Pa", "2:Va", ...

    def to_json(self) -> dict:
        return {
            "path": [[x, y] for (x, y) in self.points],
            "interleaving": list(self.interleaving),
        }


def schedule(prog: PVProgram, x, y, resolution: int = 8) -> Schedule:
    """A deterministic schedule from x to y, or Unreachable.

    Advances the coordinate with more remaining distance (diagonal-ish),
    sliding along rectangle boundaries when blocked; only moves that the
    backward reachability table approves are taken; ties prefer process 1.
    """
    oracle = PVGamma(prog, resolution)
    a = oracle.snap(x)
    b = oracle.snap(y)
    if not oracle.membership(x, y):
        raise Unreachable(f"no monotone schedule from {x!r} to {y!r}")
    good = oracle.coreachable_to(b)
    r = oracle.r
    points = [a]
    actions: list[str] = []
    cur = a
    while cur != b:
        options = []
        for nxt in oracle._moves(cur):
            if nxt in good and nxt[0] <= b[0] and nxt[1] <= b[1]:
                options.append(nxt)
        # prefer the coordinate with more ground left; ties go to process 1
        options.sort(key=lambda n: (-(b[0] - cur[0]) if n[0] > cur[0] else -(b[1] - cur[1]),
                                    0 if n[0] > cur[0] else 1))
        nxt = options[0]
        # Locks live on open intervals: a P action takes effect when the
        # path departs its coordinate, a V when the path arrives at its.
        if nxt[0] > cur[0]:
            if cur[0] % r == 0 and cur[0] >= r:
                act = prog.process1[cur[0] // r - 1]
                if act.op == "P":
                    actions.append(f"1:{act}")
            if nxt[0] % r == 0:
                act = prog.process1[nxt[0] // r - 1]
                if act.op == "V":
                    actions.append(f"1:{act}")
        else:
            if cur[1] % r == 0 and cur[1] >= r:
                act = prog.process2[cur[1] // r - 1]
                if act.op == "P":
                    actions.append(f"2:{act}")
            if nxt[1] % r == 0:
                act = prog.process2[nxt[1] // r - 1]
                if act.op == "V":
                    actions.append(f"2:{act}")
        points.append(nxt)
        cur = nxt
    coords = tuple((p[0] / r, p[1] / r) for p in points)
    return Schedule(prog, resolution, coords, tuple(actions))


def replay_interleaving(prog: PVProgram, interleaving: Sequence[str]) -> dict:
    """Run an interleaving against semaphore counters; returns the max
    counter value seen per semaphore (must stay <= 1 for binary semaphores)."""
    counters: dict = {}
    peak: dict = {}
    for item in interleaving:
        _, action_text = item.split(":", 1)
        op, sem = action_text[0], action_text[1:]
        if op == "P":
            counters[sem] = counters.get(sem, 0) + 1
        else:
            counters[sem] = counters.get(sem, 0) - 1
        peak[sem] = max(peak.get(sem, 0), counters[sem])
    return peak


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def render_svg(prog: PVProgram, sched: Optional[Schedule] = None, scale: int = 60) -> str:
    """The program square with shaded forbidden rectangles and a schedule."""
    n1, n2 = prog.shape
    w, h = max(n1, 1) * scale, max(n2, 1) * scale

    def sx(v: float) -> float:
        return v * scale

    def sy(v: float) -> float:
        return h - v * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w + 20}" height="{h + 20}">',
        f'<g transform="translate(10,10)">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="white" stroke="black"/>',
    ]
    for q in forbidden_regions(prog).rectangles:
        parts.append(
            f'<rect x="{sx(q.x1)}" y="{sy(q.y2)}" width="{sx(q.x2 - q.x1)}" '
            f'height="{sx(q.y2 - q.y1)}" fill="#bbbbbb" stroke="none">'
            f'<title>{q.semaphore}</title></rect>')
    if sched is not None:
        pts = " ".join(f"{sx(x):.1f},{sy(y):.1f}" for (x, y) in sched.points)
        parts.append(f'<polyline points="{pts}" fill="none" stroke="crimson" stroke-width="2"/>')
    parts.append("</g></svg>")
    return "\n".join(parts)
