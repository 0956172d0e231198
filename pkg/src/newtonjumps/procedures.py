"""Deformation sequences of a segment diagram with unit Newton-number jumps.

Every generator works inside a :class:`Frame`: the segment of slope
``q/p`` given by an EEA line, optionally preceded by a run of copies of the
second-row segment ``(a1, b1)`` so that the whole chain spans the original
segment ``(a0, b0)``.  Each emitted step carries the Newton number predicted
by the lattice counting argument and the one recomputed from the resulting
diagram; a mismatch aborts the run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .diagram import (
    Diagram,
    LatticePoint,
    Segment,
    SignedChainSpec,
    deform,
    diagram_from_points,
    lies_below,
    nu_axes,
    realize_chain,
    triangle,
)
from .eea import EeaLine, derived_table_N, eea_table, ensure_head_above_one, shift_line


class ProcedureError(ValueError):
    pass


@dataclass(frozen=True)
class DeformationStep:
    stage: int
    label: str
    base: Diagram
    added_points: tuple
    result: Diagram
    nu_predicted: int
    nu_computed: int
    duplicate: bool = False
    jump: Optional[int] = None

    def record(self) -> dict:
        return {
            "stage": self.stage,
            "label": self.label,
            "added_points": [list(pt) for pt in self.added_points],
            "vertices": [list(v) for v in self.result.vertices],
            "nu": self.nu_computed,
            "jump": self.jump,
            "duplicate": self.duplicate,
        }


@dataclass
class JumpSequence:
    origin: Diagram
    origin_nu: int
    steps: list = field(default_factory=list)
    stages: list = field(default_factory=list)  # (stage, procedure, p, q)

    @property
    def values(self) -> list:
        return sorted({self.origin_nu} | {s.nu_computed for s in self.steps}, reverse=True)

    @property
    def jumps(self) -> list:
        vals = self.values
        return [u - v for u, v in zip(vals, vals[1:])]

    def unit_prefix(self) -> int:
        """Number of leading jumps equal to 1."""
        count = 0
        for j in self.jumps:
            if j != 1:
                break
            count += 1
        return count

    @property
    def final(self) -> Diagram:
        if not self.steps:
            return self.origin
        low = min(s.nu_computed for s in self.steps)
        return next(s.result for s in self.steps if s.nu_computed == low)

    def final_shape(self) -> tuple:
        return final_shape(self.final)


def final_shape(d: Diagram) -> tuple:
    """``(M, N, m)`` for a diagram ``M(1, m+1) + N(1, m)`` read top to bottom."""
    edges = d.edges()
    if len(edges) != 2:
        raise ProcedureError(f"final diagram {d} is not a two-edge chain")
    (x1, y1), (x2, y2) = edges
    if y1 % x1 or y2 % x2:
        raise ProcedureError(f"final diagram {d} has non-unit-width directions")
    steep, flat = -y1 // x1, -y2 // x2
    if steep != flat + 1:
        raise ProcedureError(f"final diagram {d} is not of the form M(1,m+1)+N(1,m)")
    return x1, x2, flat


class _Recorder:
    def __init__(self, origin_nu: int):
        self.seen = {origin_nu}
        self.low = origin_nu
        self.steps: list = []

    def add(self, stage, label, base, points, predicted) -> DeformationStep:
        result = deform(base, points)
        computed = nu_axes(result)
        if computed != predicted:
            raise ProcedureError(f"{label}: predicted nu={predicted}, recomputed {computed}")
        duplicate = computed in self.seen
        jump = None
        if not duplicate:
            jump = self.low - computed
            self.seen.add(computed)
            self.low = min(self.low, computed)
        step = DeformationStep(stage, label, base, tuple(points), result, predicted, computed, duplicate, jump)
        self.steps.append(step)
        return step


def _prepared(line: EeaLine) -> EeaLine:
    return shift_line(line) if line.n == 1 else line


def _parts(*triples) -> tuple:
    return tuple((mult, Segment(w, h)) for mult, w, h in triples if mult)


@dataclass(frozen=True)
class Frame:
    """Placement of the local segment ``(line.p, line.q)`` inside an outer segment.

    ``prefix`` copies of the segment ``(a1, b1)`` run from the endpoint
    labelled Q to the local segment.  Q is the upper outer endpoint when the
    line's sign is -1 and the lower one when it is +1; P is the other end.
    """

    line: EeaLine
    top: LatticePoint
    bottom: LatticePoint
    prefix: int = 0

    @classmethod
    def standalone(cls, line: EeaLine, anchor=None) -> "Frame":
        top = LatticePoint.of(*(anchor if anchor is not None else (0, line.q)))
        return cls(line, top, top.shift(line.p, -line.q))

    def __post_init__(self):
        ln = self.line
        if (self.bottom.x - self.top.x, self.top.y - self.bottom.y) != (
            self.prefix * ln.a1 + ln.p,
            self.prefix * ln.b1 + ln.q,
        ):
            raise ProcedureError("frame endpoints do not span the prefixed segment")

    @property
    def s(self) -> int:
        return self.line.sign

    @property
    def q_end(self) -> LatticePoint:
        return self.top if self.s == -1 else self.bottom

    @property
    def p_end(self) -> LatticePoint:
        return self.bottom if self.s == -1 else self.top

    def _along(self, start, mult, vec) -> LatticePoint:
        # start - sign * mult * vec
        return start.shift(-self.s * mult * vec[0], -self.s * mult * vec[1])

    @property
    def q_loc(self) -> LatticePoint:
        ln = self.line
        return self._along(self.q_end, self.prefix, (ln.a1, -ln.b1))

    def _chain(self, *triples) -> Diagram:
        return realize_chain(self.q_end, SignedChainSpec(-self.s, _parts(*triples)))

    def _checked(self, support, *triples) -> Diagram:
        d = diagram_from_points(support)
        chain = self._chain(*triples)
        if chain != d:
            raise ProcedureError(f"chain {chain} differs from supported diagram {d}")
        return d

    def theta(self) -> Diagram:
        ln = self.line
        return self._checked(
            [self.q_end, self.q_loc, self.p_end],
            (self.prefix, ln.a1, ln.b1),
            (1, ln.p, ln.q),
        )

    def sigma_point(self, j: int) -> LatticePoint:
        ln = self.line
        return self._along(self.q_loc, ln.n * j, (ln.a1, -ln.b1))

    def sigma(self, j: int) -> Diagram:
        ln = self.line
        return self._checked(
            [self.q_end, self.q_loc, self.sigma_point(j), self.p_end],
            (self.prefix + ln.n * j, ln.a1, ln.b1),
            (1, ln.a1 + ln.n * (ln.a - j * ln.a1), ln.b1 + ln.n * (ln.b - j * ln.b1)),
        )

    def corners(self, j: int, k: int) -> tuple:
        """The two inner vertices ``(Q^k, P^k)`` of the k-th diagram over Sigma^j."""
        ln = self.line
        qk = self._along(self.q_loc, ln.n * j + k, (ln.a1, -ln.b1))
        pk = self._along(self.p_end, k, (-(ln.a - (j + 1) * ln.a1), ln.b - (j + 1) * ln.b1))
        return qk, pk

    def gamma(self, j: int, k: int) -> Diagram:
        ln = self.line
        if not 0 <= k <= ln.n:
            raise ProcedureError(f"k={k} outside 0..{ln.n}")
        qk, pk = self.corners(j, k)
        ha, hb = ln.a - j * ln.a1, ln.b - j * ln.b1
        pj, qj = ln.a1 + ln.n * ha, ln.b1 + ln.n * hb
        return self._checked(
            [self.q_end, self.q_loc, qk, pk, self.p_end],
            (self.prefix + ln.n * j + k, ln.a1, ln.b1),
            (1, pj - k * ha, qj - k * hb),
            (k, ha - ln.a1, hb - ln.b1),
        )

    def points(self, j: int, k: int) -> tuple:
        """Lists ``(P_i, D_i)`` for ``i = 1 .. n - k`` over Gamma^k(Sigma^j)."""
        ln = self.line
        if not 0 <= k < ln.n:
            raise ProcedureError(f"k={k} outside 0..{ln.n - 1}")
        _, pk = self.corners(j, k)
        ha, hb = ln.a - j * ln.a1, ln.b - j * ln.b1
        ps = [self._along(pk, i, (-ha, hb)) for i in range(1, ln.n - k + 1)]
        ds = [pt.shift(-self.s * ln.a1, self.s * ln.b1) for pt in ps]
        return ps, ds

    def theta_closing(self) -> Diagram:
        """Single segment ``(n n1 + 1)(a1, b1) + (a2, b2)`` followed by ``(n - 1)(a2, b2)``."""
        ln = self.line
        if not ln.a2:
            raise ProcedureError("needs a2 != 0")
        big = ln.n * ln.n1 + 1
        return self._chain(
            (self.prefix, ln.a1, ln.b1),
            (1, big * ln.a1 + ln.a2, big * ln.b1 + ln.b2),
            (ln.n - 1, ln.a2, ln.b2),
        )

    def upper_lower(self) -> tuple:
        ends = sorted([self.q_loc, self.p_end], key=lambda pt: -pt.y)
        return ends[0], ends[1]


def _sweep(frame: Frame, j: int, rec: _Recorder, stage: int, nu_sigma: int) -> int:
    """Deform Sigma^j through Gamma^0 .. Gamma^n; return nu(Gamma^n(Sigma^j))."""
    ln = frame.line
    n = ln.n
    nu_gamma = nu_sigma
    for k in range(n):
        base = frame.gamma(j, k)
        if nu_axes(base) != nu_gamma:
            raise ProcedureError(f"Gamma^{k}(Sigma^{j}): predicted {nu_gamma}, got {nu_axes(base)}")
        ps, ds = frame.points(j, k)
        for i, pt in enumerate(ps, 1):
            rec.add(stage, f"Gamma^{k}(Sigma^{j})+P_{i}", base, [pt], nu_gamma - i)
        for i, pt in enumerate(ds, 1):
            rec.add(stage, f"Gamma^{k}(Sigma^{j})+D_{i}", base, [pt], nu_gamma - (n - k + i))
        nu_gamma -= 2 * (n - k)
    last = frame.gamma(j, n)
    if nu_axes(last) != nu_gamma:
        raise ProcedureError(f"Gamma^{n}(Sigma^{j}): predicted {nu_gamma}, got {nu_axes(last)}")
    return nu_gamma


def _sigma_run(frame: Frame, js: range, rec: _Recorder, stage: int, nu_theta: int) -> None:
    ln = frame.line
    theta = frame.theta()
    nu_sigma = nu_theta
    for j in js:
        if j > js.start:
            rec.add(stage, f"Sigma^{j}", theta, [frame.sigma_point(j)], nu_sigma)
        nu_end = _sweep(frame, j, rec, stage, nu_sigma)
        nu_sigma = nu_end + ln.n


def _require_a_not_one(ln: EeaLine) -> None:
    if ln.a == 1:
        raise ProcedureError("a = 1: route the line to the short procedures")


def gamma_k(line: EeaLine, k: int, anchor=None) -> Diagram:
    return Frame.standalone(_prepared(line), anchor).gamma(0, k)


def points_PD(line: EeaLine, k: int, anchor=None) -> tuple:
    return Frame.standalone(_prepared(line), anchor).points(0, k)


def procedure1(line: EeaLine, anchor=None) -> JumpSequence:
    """Deform the segment down through Gamma^0 .. Gamma^n, n(n+1) unit jumps."""
    line = _prepared(line)
    _require_a_not_one(line)
    frame = Frame.standalone(line, anchor)
    origin = frame.theta()
    seq = JumpSequence(origin, nu_axes(origin), stages=[(1, "procedure1", line.p, line.q)])
    rec = _Recorder(seq.origin_nu)
    _sweep(frame, 0, rec, 1, seq.origin_nu)
    seq.steps = rec.steps
    return seq


def procedure2(line: EeaLine, j: int, anchor=None) -> JumpSequence:
    """Run the Gamma sweep over Sigma^j."""
    line = _prepared(line)
    _require_a_not_one(line)
    if line.n1 is None or not 0 <= j < line.n1:
        raise ProcedureError(f"j={j} outside 0..{(line.n1 or 1) - 1}")
    if j == line.n1 - 1 and not line.a2:
        raise ProcedureError("the last Sigma needs a2 != 0")
    frame = Frame.standalone(line, anchor)
    origin = frame.sigma(j)
    seq = JumpSequence(origin, nu_axes(origin), stages=[(1, f"procedure2[j={j}]", line.p, line.q)])
    rec = _Recorder(seq.origin_nu)
    _sweep(frame, j, rec, 1, seq.origin_nu)
    seq.steps = rec.steps
    return seq


def procedure2_full(line: EeaLine, anchor=None) -> JumpSequence:
    """Sweep Sigma^0 .. Sigma^{n1-1}; n(n n1 + 1) unit jumps when a2 != 0."""
    line = _prepared(line)
    _require_a_not_one(line)
    if not line.a2:
        raise ProcedureError("needs a2 != 0")
    frame = Frame.standalone(line, anchor)
    origin = frame.theta()
    seq = JumpSequence(origin, nu_axes(origin), stages=[(1, "procedure2", line.p, line.q)])
    rec = _Recorder(seq.origin_nu)
    _sigma_run(frame, range(line.n1), rec, 1, seq.origin_nu)
    seq.steps = rec.steps
    return seq


def procedure3(line: EeaLine, anchor=None) -> JumpSequence:
    """Short table with a2 = 0 and a != 1: sweep Sigma^0 .. Sigma^{n1-2}."""
    line = _prepared(line)
    _check_short(line)
    frame = Frame.standalone(line, anchor)
    origin = frame.theta()
    seq = JumpSequence(origin, nu_axes(origin), stages=[(1, "procedure3", line.p, line.q)])
    rec = _Recorder(seq.origin_nu)
    _sigma_run(frame, range(line.n1 - 1), rec, 1, seq.origin_nu)
    seq.steps = rec.steps
    return seq


def _check_short(line: EeaLine) -> None:
    if line.a2 != 0 or line.a1 != 1 or line.a == 1:
        raise ProcedureError(f"({line.p}, {line.q}) is not a short table with a != 1")


def _upper_steps(frame: Frame, rec: _Recorder, stage: int, nu_theta: int) -> None:
    ln = frame.line
    theta = frame.theta()
    upper, _ = frame.upper_lower()
    for i in range(1, ln.p):
        pt = upper.shift(i, -i * (ln.m + 1))
        rec.add(stage, f"Theta+Q_{i}", theta, [pt], nu_theta - i)


def _lower_steps(frame: Frame, rec: _Recorder, stage: int, nu_theta: int) -> None:
    ln = frame.line
    theta = frame.theta()
    _, lower = frame.upper_lower()
    for i in range(1, ln.p):
        pt = lower.shift(-i, i * ln.m)
        rec.add(stage, f"Theta+P_{i}", theta, [pt], nu_theta - i)


def procedure4(p: int, q: int, anchor=None) -> JumpSequence:
    """``q = -1 (mod p)``: add points stepping down from the upper endpoint."""
    line = eea_table(p, q).line
    if not (line.a == 1 and line.a1 == 1 and line.a2 == 0):
        raise ProcedureError(f"({p}, {q}) does not satisfy q = -1 (mod p) with p > 2")
    frame = Frame.standalone(line, anchor)
    origin = frame.theta()
    seq = JumpSequence(origin, nu_axes(origin), stages=[(1, "procedure4", p, q)])
    rec = _Recorder(seq.origin_nu)
    _upper_steps(frame, rec, 1, seq.origin_nu)
    seq.steps = rec.steps
    return seq


def procedure5(p: int, q: int, anchor=None) -> JumpSequence:
    """``q = 1 (mod p)``: add points stepping up from the lower endpoint."""
    line = eea_table(p, q).line
    if line.a1 != 0:
        raise ProcedureError(f"({p}, {q}) does not satisfy q = 1 (mod p)")
    frame = Frame.standalone(line, anchor)
    origin = frame.theta()
    seq = JumpSequence(origin, nu_axes(origin), stages=[(1, "procedure5", p, q)])
    rec = _Recorder(seq.origin_nu)
    _lower_steps(frame, rec, 1, seq.origin_nu)
    seq.steps = rec.steps
    return seq


def z_sequence(rows) -> list:
    """``z_0 = 1, z_1 = n_1, z_k = z_{k-2} + z_{k-1} n_k`` over a table's rows."""
    z = [1, rows[0][2]]
    for a, b, n in rows[1:]:
        if n is None:
            break
        z.append(z[-2] + z[-1] * n)
    return z


def procedure6_master(a0: int, b0: int) -> JumpSequence:
    """Chain the stage procedures along the whole table of ``(a0, b0)``.

    Stage k deforms ``Theta_k``: the segment ``(z_k a_k + a_{k+1}, z_k b_k +
    b_{k+1})`` preceded by ``z_{k-1} - 1`` copies of ``(a_{k+1}, b_{k+1})``.
    The value sequence falls by exactly 1 from ``(a0-1)(b0-1)`` through
    ``r(a0 - r)`` values, ``r = b0 mod a0``.
    """
    table = ensure_head_above_one(eea_table(a0, b0))
    origin = triangle(a0, b0)
    nu0 = nu_axes(origin)
    seq = JumpSequence(origin, nu0)
    rec = _Recorder(nu0)
    top, bottom = origin.top, origin.bottom
    z = z_sequence(table.rows)
    k = 1
    while True:
        line = table.line if k == 1 else derived_table_N(table.level(k - 2), z[k]).line
        frame = Frame(line, top, bottom, z[k - 1] - 1)
        theta = frame.theta()
        if not lies_below(theta, origin):
            raise ProcedureError(f"Theta_{k} does not lie below the original segment")
        nu_theta = nu0 - (z[k - 1] - 1) * z[k]
        if k > 1:
            if nu_theta not in rec.seen:
                raise ProcedureError(f"nu(Theta_{k})={nu_theta} was not attained before stage {k}")
            rec.add(k, f"Theta_{k}", origin, [frame.q_loc], nu_theta)
        if line.a1 == 0:
            seq.stages.append((k, "procedure5", line.p, line.q))
            _lower_steps(frame, rec, k, nu_theta)
            break
        if line.a2 == 0:
            if line.a == 1:
                seq.stages.append((k, "procedure4", line.p, line.q))
                _upper_steps(frame, rec, k, nu_theta)
            else:
                seq.stages.append((k, "procedure3", line.p, line.q))
                _sigma_run(frame, range(line.n1 - 1), rec, k, nu_theta)
            break
        seq.stages.append((k, "procedure2", line.p, line.q))
        _sigma_run(frame, range(line.n1), rec, k, nu_theta)
        k += 1
    seq.steps = rec.steps
    return seq


def expected_unit_jumps(p: int, q: int) -> int:
    r = q % p
    return r * (p - r)
