"""Chains of single-segment deformations that extend the unit-jump range.

A plan is a sequence of coprime pairs ``(p_s, q_s)``, both coordinates
non-increasing.  The segment ``(p_s, q_s)`` reaches every Newton number from
``mu_s = (p_s-1)(q_s-1)`` down to ``mu_s - r_s(p_s - r_s)``; consecutive
steps overlap when that lower end is at most ``mu_{s+1}``.  Once the lower
end of the last step drops below ``(p-1)(p-2) + 1`` the homogeneous
deformation of degree ``p`` covers the rest, by the external result that a
homogeneous singularity of degree ``d`` attains every positive integer
below ``mu_d - d + 2``.  That rule is applied here, not verified.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .diagram import nu_axes, triangle

DEFAULT_MAX_LEN = 64


class PlanError(ValueError):
    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message if index is None else f"step {index}: {message}")
        self.index = index


@dataclass(frozen=True)
class PlanStep:
    p: int
    q: int
    r: int

    @classmethod
    def of(cls, p: int, q: int) -> "PlanStep":
        return cls(p, q, q % p)

    @property
    def mu(self) -> int:
        return nu_axes(triangle(self.p, self.q))

    @property
    def covered_low(self) -> int:
        return self.mu - self.r * (self.p - self.r)

    def record(self) -> dict:
        return {"p": self.p, "q": self.q, "r": self.r, "mu": self.mu, "covered_low": self.covered_low}


@dataclass
class ChainPlan:
    start: PlanStep
    steps: list
    full_coverage: bool = False
    terminal_rule: Optional[dict] = None
    validated: bool = field(default=False, repr=False)

    @property
    def coverage(self) -> tuple:
        return self.steps[-1].covered_low, self.start.mu

    def record(self) -> dict:
        return {
            "start": [self.start.p, self.start.q],
            "steps": [s.record() for s in self.steps],
            "coverage": list(self.coverage),
            "full_coverage": self.full_coverage,
            "terminal_rule": self.terminal_rule,
        }


def _as_step(item) -> PlanStep:
    if isinstance(item, PlanStep):
        return item
    if len(item) == 3:
        return PlanStep(*item)
    return PlanStep.of(*item)


def _check_step(step: PlanStep, index: int) -> None:
    if step.p < 2 or step.p >= step.q:
        raise PlanError(f"need 2 <= p < q, got ({step.p}, {step.q})", index)
    if math.gcd(step.p, step.q) != 1:
        raise PlanError(f"({step.p}, {step.q}) are not coprime", index)
    if step.r != step.q % step.p:
        raise PlanError(f"r={step.r} but {step.q} mod {step.p} = {step.q % step.p}", index)


def validate_chain(start, steps) -> ChainPlan:
    """Check every chain condition; raise PlanError naming the failing step."""
    start = _as_step(start)
    _check_step(start, -1)
    steps = [_as_step(s) for s in steps]
    if not steps:
        raise PlanError("empty chain")
    if len(set(steps)) != len(steps):
        raise PlanError("chain repeats a pair")
    prev = start
    for i, step in enumerate(steps):
        _check_step(step, i)
        if step == start and i == 0:
            continue
        if step.p > prev.p or step.q > prev.q:
            raise PlanError(f"({step.p}, {step.q}) increases a coordinate of ({prev.p}, {prev.q})", i)
        if prev.covered_low > step.mu:
            raise PlanError(
                f"gap: ({prev.p}, {prev.q}) reaches {prev.covered_low} but ({step.p}, {step.q}) starts at {step.mu}",
                i,
            )
        prev = step
    plan = ChainPlan(start, steps, validated=True)
    plan.full_coverage = check_full_coverage(plan, start.p)
    return plan


def homogeneous_threshold(degree: int) -> int:
    """``mu_d - d + 2`` for a homogeneous singularity of degree ``d``."""
    return (degree - 1) ** 2 - degree + 2


def check_full_coverage(plan: ChainPlan, p: int) -> bool:
    """True when the plan plus one terminal rule reaches every positive integer."""
    if not plan.validated:
        raise PlanError("plan has not been validated")
    low = plan.steps[-1].covered_low
    if low <= 1:
        plan.terminal_rule = {"kind": "direct"}
        return True
    threshold = homogeneous_threshold(p)
    if low < (p - 1) * (p - 2) + 1:
        plan.terminal_rule = {"kind": "homogeneous", "degree": p, "threshold": threshold}
        return True
    plan.terminal_rule = None
    return False


def search_chain(p: int, q: int, max_len: int = DEFAULT_MAX_LEN) -> Optional[ChainPlan]:
    """Breadth-first search for a shortest fully covering plan.

    Successors of a pair are coprime pairs below it in both coordinates whose
    Newton number is at least the pair's covered lower end.  They are tried
    longest unit run ``r(p - r)`` first, then keeping ``p`` and lowering ``q``.  Without a full plan the one
    reaching the lowest value is returned, or None if no step is possible.
    """
    start = PlanStep.of(p, q)
    _check_step(start, -1)
    trivial = validate_chain(start, [start])
    if trivial.full_coverage:
        return trivial
    pool = sorted(
        (PlanStep.of(pp, qq) for pp in range(2, p + 1) for qq in range(pp + 1, q + 1) if math.gcd(pp, qq) == 1),
        key=lambda s: (-s.r * (s.p - s.r), -s.p, -s.q),
    )
    mus = {s: s.mu for s in pool}
    parent = {start: None}
    depth = {start: 0}
    best = None
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if depth[cur] >= max_len:
            continue
        low = cur.covered_low
        for nxt in pool:
            if nxt in parent or nxt.p > cur.p or nxt.q > cur.q or mus[nxt] < low:
                continue
            parent[nxt] = cur
            depth[nxt] = depth[cur] + 1
            plan = validate_chain(start, _path(parent, nxt))
            if plan.full_coverage:
                return plan
            if best is None or nxt.covered_low < best.covered_low:
                best = nxt
            queue.append(nxt)
    if best is None:
        return None
    return validate_chain(start, _path(parent, best))


def _path(parent: dict, node: PlanStep) -> list:
    out = []
    while parent[node] is not None:
        out.append(node)
        node = parent[node]
    return out[::-1]


def example_chain_40_73(extended: bool = False) -> list:
    """The hand-built chain for ``(40, 73)``: every intermediate pair listed."""
    pairs = [(39, 73), (38, 73)]
    pairs += [(37, q) for q in range(73, 40, -1)]
    if extended:
        pairs += [(p, 41) for p in range(36, 22, -1)]
        pairs += [(23, q) for q in range(40, 28, -1)]
        pairs += [(22, 29)]
    return pairs
