"""Exact lattice geometry of plane Newton diagrams.

A diagram is stored as the chain of vertices of the compact part of its
border, listed from the top-left vertex to the bottom-right one.  All areas
are carried as twice-area integers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

# Coordinates and areas are kept inside a signed 64-bit range.
INT_LIMIT = 2**63

NU_PADDING_CAP = 16


class DiagramError(ValueError):
    pass


class NotNewtonDiagram(DiagramError):
    pass


class PaddingUnstable(DiagramError):
    pass


def checked(value: int) -> int:
    if not -INT_LIMIT < value < INT_LIMIT:
        raise OverflowError(f"integer {value} exceeds the 64-bit range")
    return value


class LatticePoint(NamedTuple):
    x: int
    y: int

    @classmethod
    def of(cls, x: int, y: int) -> "LatticePoint":
        if x < 0 or y < 0:
            raise DiagramError(f"lattice point ({x}, {y}) has a negative coordinate")
        return cls(checked(int(x)), checked(int(y)))

    def shift(self, dx: int, dy: int) -> "LatticePoint":
        return LatticePoint.of(self.x + dx, self.y + dy)


def cross(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class Segment:
    """The segment from (0, height) to (width, 0), up to translation."""

    width: int
    height: int

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise DiagramError(f"segment needs positive sides, got {self.width}x{self.height}")


@dataclass(frozen=True)
class SignedChainSpec:
    """Polygonal chain built from segments laid end to end.

    With ``sign=+1`` the chain is walked from its top endpoint down and to the
    right; with ``sign=-1`` it is walked from its bottom endpoint up and to
    the left.  ``parts`` holds ``(multiplier, Segment)`` pairs in walking
    order; zero multipliers are skipped.
    """

    sign: int
    parts: tuple

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DiagramError(f"chain sign must be +1 or -1, got {self.sign}")
        for mult, seg in self.parts:
            if mult < 0 or not isinstance(seg, Segment):
                raise DiagramError(f"bad chain part {(mult, seg)!r}")


@dataclass(frozen=True)
class Diagram:
    vertices: tuple

    def __post_init__(self):
        verts = tuple(LatticePoint.of(*v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise DiagramError("a diagram needs at least one vertex")
        for u, v in zip(verts, verts[1:]):
            if not (v.x > u.x and v.y < u.y):
                raise NotNewtonDiagram(f"vertices {u} -> {v} are not a descending staircase")
        edges = self.edges()
        for e, f in zip(edges, edges[1:]):
            # each edge must be strictly flatter than the previous one
            if cross(e, f) <= 0:
                raise NotNewtonDiagram(f"edges {e} and {f} break convexity")

    @property
    def top(self) -> LatticePoint:
        return self.vertices[0]

    @property
    def bottom(self) -> LatticePoint:
        return self.vertices[-1]

    def edges(self) -> list:
        return [(v.x - u.x, v.y - u.y) for u, v in zip(self.vertices, self.vertices[1:])]

    def touches_axes(self) -> bool:
        return self.top.x == 0 and self.bottom.y == 0

    def contains(self, point: Sequence[int]) -> bool:
        """True if ``point`` lies in the closed region on or above the diagram."""
        x, y = point
        if x < self.top.x or y < self.bottom.y:
            return False
        for u, v in zip(self.vertices, self.vertices[1:]):
            if cross((v.x - u.x, v.y - u.y), (x - u.x, y - u.y)) < 0:
                return False
        return True

    def twice_area_under(self) -> int:
        """Twice the area between the chain and the x-axis, over its x-span."""
        return checked(sum((v.x - u.x) * (u.y + v.y) for u, v in zip(self.vertices, self.vertices[1:])))

    def to_text(self) -> str:
        return ",".join(f"{v.x}:{v.y}" for v in self.vertices)

    def to_json(self) -> dict:
        return {"vertices": [[v.x, v.y] for v in self.vertices]}

    def __str__(self):
        return "[" + ", ".join(f"({v.x},{v.y})" for v in self.vertices) + "]"


def triangle(p: int, q: int) -> Diagram:
    """The single segment with endpoints (0, q) and (p, 0)."""
    Segment(p, q)
    return Diagram(((0, q), (p, 0)))


def diagram_from_points(points: Iterable[Sequence[int]]) -> Diagram:
    """Smallest diagram containing every given point."""
    pts = sorted({LatticePoint.of(*pt) for pt in points})
    if not pts:
        raise DiagramError("cannot build a diagram from an empty point set")
    lower: list = []
    for pt in pts:
        while len(lower) >= 2 and cross(
            (lower[-1].x - lower[-2].x, lower[-1].y - lower[-2].y),
            (pt.x - lower[-2].x, pt.y - lower[-2].y),
        ) <= 0:
            lower.pop()
        lower.append(pt)
    # lower hull starts at the leftmost-lowest point; keep its descending part
    ymin = min(pt.y for pt in pts)
    chain = []
    for pt in lower:
        chain.append(pt)
        if pt.y == ymin:
            break
    return Diagram(tuple(chain))


def deform(d: Diagram, pts: Iterable[Sequence[int]] = ()) -> Diagram:
    return diagram_from_points(list(d.vertices) + list(pts))


def lies_below(s: Diagram, g: Diagram) -> bool:
    """True if ``s`` lies below ``g``, i.e. the region of ``g`` sits inside that of ``s``."""
    return all(s.contains(v) for v in g.vertices)


def realize_chain(anchor: Sequence[int], spec: SignedChainSpec) -> Diagram:
    """Lay the chain's segments end to end from ``anchor`` and return the diagram.

    Consecutive parts of equal slope merge into one edge.  Raises
    ``NotNewtonDiagram`` when the merged chain is not convex.
    """
    x, y = anchor
    pts = [LatticePoint.of(x, y)]
    for mult, seg in spec.parts:
        if mult == 0:
            continue
        x += spec.sign * mult * seg.width
        y -= spec.sign * mult * seg.height
        if x < 0 or y < 0:
            raise NotNewtonDiagram(f"chain leaves the quadrant at ({x}, {y})")
        pts.append(LatticePoint.of(x, y))
    if spec.sign < 0:
        pts.reverse()
    merged = [pts[0]]
    for pt in pts[1:]:
        if len(merged) >= 2 and cross(
            (merged[-1].x - merged[-2].x, merged[-1].y - merged[-2].y),
            (pt.x - merged[-1].x, pt.y - merged[-1].y),
        ) == 0:
            merged[-1] = pt
        else:
            merged.append(pt)
    return Diagram(tuple(merged))


def nu_axes(d: Diagram) -> int:
    """Newton number ``2A - p - q + 1`` of a diagram meeting both axes."""
    if not d.touches_axes():
        raise DiagramError(f"diagram {d} does not meet both axes")
    if len(d.vertices) < 2:
        raise DiagramError("Newton number of a single-vertex diagram is undefined")
    return checked(d.twice_area_under() - d.bottom.x - d.top.y + 1)


def nu_general(d: Diagram, cap: int = NU_PADDING_CAP) -> int:
    """Newton number of a diagram within distance one of both axes.

    The diagram is closed up with the points (P, 0) and (0, Q); the padding
    starts one past the largest coordinate and its increment doubles until
    two consecutive paddings agree with every original vertex kept.
    """
    if d.top.x > 1 or d.bottom.y > 1:
        raise DiagramError(f"diagram {d} is farther than 1 from an axis")
    if d.touches_axes():
        return nu_axes(d)
    max_x = max(v.x for v in d.vertices)
    max_y = max(v.y for v in d.vertices)

    def padded(offset):
        pd = diagram_from_points(list(d.vertices) + [(max_x + offset, 0), (0, max_y + offset)])
        return nu_axes(pd), set(d.vertices) <= set(pd.vertices)

    offset = 1
    prev, _ = padded(offset)
    for _ in range(cap):
        offset *= 2
        value, keeps = padded(offset)
        if value == prev and keeps:
            return value
        prev = value
    raise PaddingUnstable(f"padding did not stabilize for {d} after {cap} doublings")


def twice_area_between(s: Diagram, g: Diagram) -> int:
    """Twice the area of the region of ``s`` outside the region of ``g``."""
    if s.top != g.top or s.bottom != g.bottom:
        raise DiagramError("diagrams do not share both endpoints")
    if not lies_below(s, g):
        raise DiagramError(f"{s} does not lie below {g}")
    return checked(g.twice_area_under() - s.twice_area_under())


def pick_area(polygon: Sequence[Sequence[int]], allow_degenerate: bool = False) -> tuple:
    """Return ``(twice_area, B, W)`` for a simple lattice polygon.

    B counts lattice points on the border (edge gcds), W the interior ones,
    the latter read off from ``2*area = B + 2W - 2``.
    """
    n = len(polygon)
    if n < 3 and not allow_degenerate:
        raise DiagramError("a polygon needs at least three vertices")
    twice = abs(sum(cross(polygon[i], polygon[(i + 1) % n]) for i in range(n)))
    boundary = sum(
        math.gcd(polygon[(i + 1) % n][0] - polygon[i][0], polygon[(i + 1) % n][1] - polygon[i][1])
        for i in range(n)
    )
    if twice == 0:
        if not allow_degenerate:
            raise DiagramError("degenerate polygon has zero area")
        return 0, boundary, 0
    interior = (twice - boundary + 2) // 2
    assert twice == boundary + 2 * interior - 2
    return checked(twice), boundary, interior


def lattice_count(polygon: Sequence[Sequence[int]]) -> tuple:
    """Count ``(boundary, interior)`` lattice points of a simple polygon by scanning its bounding box."""
    n = len(polygon)
    xs = [v[0] for v in polygon]
    ys = [v[1] for v in polygon]
    edges = [(polygon[i], polygon[(i + 1) % n]) for i in range(n)]
    boundary = interior = 0
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            on_edge = False
            crossings = 0
            for a, b in edges:
                if (
                    cross((b[0] - a[0], b[1] - a[1]), (x - a[0], y - a[1])) == 0
                    and min(a[0], b[0]) <= x <= max(a[0], b[0])
                    and min(a[1], b[1]) <= y <= max(a[1], b[1])
                ):
                    on_edge = True
                    break
                # horizontal ray to the right, half-open rule on y
                if (a[1] > y) != (b[1] > y):
                    t = cross((b[0] - a[0], b[1] - a[1]), (x - a[0], y - a[1]))
                    if (t > 0) == (b[1] > a[1]):
                        crossings += 1
            if on_edge:
                boundary += 1
            elif crossings % 2:
                interior += 1
    return boundary, interior


def parse_diagram(text: str) -> Diagram:
    """Parse ``x1:y1,x2:y2,...``, ``TRI p q`` or ``{"vertices": [[x, y], ...]}``.

    Point lists are read as the vertex chain itself, so a list that is not a
    convex staircase is rejected rather than silently hulled.
    """
    text = text.strip()
    if not text:
        raise DiagramError("empty diagram spec")
    if text.startswith("{"):
        try:
            data = json.loads(text)
            pts = [tuple(v) for v in data["vertices"]]
            if not all(len(v) == 2 and all(isinstance(c, int) for c in v) for v in pts):
                raise TypeError("vertices must be integer pairs")
        except (ValueError, KeyError, TypeError) as exc:
            raise DiagramError(f"malformed diagram JSON: {text!r}") from exc
        return Diagram(tuple(pts))
    tokens = text.split()
    if tokens[0].upper() == "TRI":
        if len(tokens) != 3:
            raise DiagramError(f"expected 'TRI p q', got {text!r}")
        try:
            return triangle(int(tokens[1]), int(tokens[2]))
        except ValueError as exc:
            raise DiagramError(f"malformed triangle spec {text!r}") from exc
    pts = []
    for chunk in text.replace(" ", "").split(","):
        try:
            x, y = chunk.split(":")
            pts.append((int(x), int(y)))
        except ValueError as exc:
            raise DiagramError(f"malformed point {chunk!r}") from exc
    return Diagram(tuple(pts))
