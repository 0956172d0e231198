"""Brute-force attainable Newton numbers of deformations of a diagram.

Enumerates every convex lattice chain from the y-axis to the x-axis that
stays in the closed region under a given diagram, never touching the smooth
points (0,0), (1,0), (0,1).  It deliberately avoids the EEA tables and the
procedures so that it can be used to check them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .diagram import Diagram, triangle

DEFAULT_CANDIDATE_CAP = 40

_SMOOTH = {(0, 0), (1, 0), (0, 1)}


class OracleError(ValueError):
    pass


@dataclass
class AttainableSet:
    origin: Diagram
    values: list
    witness: dict = field(default_factory=dict)

    def unit_prefix(self) -> int:
        count = 0
        for u, v in zip(self.values, self.values[1:]):
            if u - v != 1:
                break
            count += 1
        return count


def candidate_points(d: Diagram) -> list:
    """Lattice points strictly below ``d`` (outside its region), minus smooth points."""
    if not d.touches_axes():
        raise OracleError(f"{d} does not meet both axes")
    pts = []
    for x in range(d.bottom.x + 1):
        for y in range(d.top.y + 1):
            if not d.contains((x, y)) and (x, y) not in _SMOOTH:
                pts.append((x, y))
    return pts


def _on_chain(d: Diagram, pt) -> bool:
    x, y = pt
    for u, v in zip(d.vertices, d.vertices[1:]):
        if u.x <= x <= v.x and (v.x - u.x) * (y - u.y) + (u.y - v.y) * (x - u.x) == 0:
            return True
    return False


def enumerate_attainable(d: Diagram, floor: int = 1, cap: int = DEFAULT_CANDIDATE_CAP) -> AttainableSet:
    """All Newton numbers ``>= max(1, floor)`` of diagrams lying below ``d``.

    Depth-first search over convex chains ordered by slope, memoized on
    (vertex, incoming edge).  Each edge must pass on or under every vertex of
    ``d`` in its x-range, so the chain is the diagram supported by its own
    vertices together with those of ``d``.
    """
    cands = candidate_points(d)
    if len(cands) > cap:
        raise OracleError(f"{len(cands)} candidate points exceed the cap of {cap}")
    floor = max(1, floor)
    allowed = sorted(set(cands) | {pt for pt in _box(d) if _on_chain(d, pt) and pt not in _SMOOTH})
    dverts = [(v.x, v.y) for v in d.vertices]

    def edge_ok(x0, y0, x1, y1):
        for vx, vy in dverts:
            if x0 <= vx <= x1 and (x1 - x0) * (vy - y0) + (y0 - y1) * (vx - x0) < 0:
                return False
        return True

    @lru_cache(maxsize=None)
    def tails(x0, y0, dx, dy):
        # twice-area under the tail minus its end x  ->  tail vertices
        if y0 == 0:
            return {-x0: ((x0, y0),)}
        out = {}
        for x1, y1 in allowed:
            if x1 <= x0 or y1 >= y0:
                continue
            ex, ey = x1 - x0, y1 - y0
            if (dx or dy) and dx * ey - dy * ex <= 0:
                continue
            if not edge_ok(x0, y0, x1, y1):
                continue
            trap = ex * (y0 + y1)
            for key, verts in tails(x1, y1, ex, ey).items():
                out.setdefault(key + trap, ((x0, y0),) + verts)
        return out

    values = {}
    for x, y in allowed:
        if x != 0:
            continue
        for key, verts in tails(x, y, 0, 0).items():
            nu = key - y + 1
            if nu >= floor and nu not in values:
                values[nu] = verts
    tails.cache_clear()
    ordered = sorted(values, reverse=True)
    return AttainableSet(d, ordered, {nu: Diagram(values[nu]) for nu in ordered})


def _box(d: Diagram):
    return [(x, y) for x in range(d.bottom.x + 1) for y in range(d.top.y + 1)]


def verify_theorem(p: int, q: int, floor=None, cap: int = DEFAULT_CANDIDATE_CAP) -> dict:
    """Compare the oracle's attainable set with the master procedure's values."""
    from .eea import eea_table
    from .procedures import procedure6_master

    eea_table(p, q)  # validates the pair
    r = q % p
    expected = r * (p - r)
    nu0 = (p - 1) * (q - 1)
    lowest = nu0 - expected
    att = enumerate_attainable(triangle(p, q), lowest if floor is None else floor, cap)
    seq = procedure6_master(p, q)
    oracle_values = att.values
    procedure_values = seq.values
    oracle_set = set(oracle_values)
    return {
        "p": p,
        "q": q,
        "r": r,
        "expected_unit_jumps": expected,
        "oracle_values": oracle_values,
        "procedure_values": procedure_values,
        "subset_ok": oracle_set.issuperset(procedure_values),
        "unit_jumps_ok": all(v in oracle_set for v in range(lowest, nu0 + 1))
        and att.unit_prefix() >= expected,
    }
