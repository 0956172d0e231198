"""Reversed, unsigned extended Euclid tables.

For coprime ``1 < p < q`` the table lists rows ``(a_k, b_k, n_k)`` for
``k = 1 .. k0 + 2`` under the header ``(p, q)``, where consecutive rows
satisfy ``a_{k-1} = n_k a_k + a_{k+1}`` (same for ``b``) and the
cross determinants ``a_k b_{k+1} - b_k a_{k+1}`` alternate in sign.  The
last two rows are always ``(1, q // p, a_{k0})`` and ``(0, 1)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional


class EeaError(ValueError):
    pass


class Shape(enum.Enum):
    VERY_SHORT = "very_short"  # q = 1 (mod p)
    SHORT_A1 = "short_a1"  # q = -1 (mod p), p > 2
    SHORT = "short"  # three data rows, a != 1
    LONG = "long"


def _check_pair(p: int, q: int) -> None:
    if p <= 1:
        raise EeaError(f"p must exceed 1, got p={p}")
    if p >= q:
        raise EeaError(f"need p < q, got p={p}, q={q}")
    if math.gcd(p, q) != 1:
        raise EeaError(f"p={p} and q={q} are not coprime")


@dataclass(frozen=True)
class EeaTable:
    p: int
    q: int
    rows: tuple  # ((a, b, n), ..., (0, 1, None))

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        self.validate()

    @property
    def k0(self) -> int:
        return len(self.rows) - 2

    @property
    def sign(self) -> int:
        a, b, _ = self.rows[0]
        return b * self.p - a * self.q

    @property
    def line(self) -> "EeaLine":
        return EeaLine.from_rows(self.p, self.q, self.rows)

    def level(self, i: int) -> "EeaLine":
        """Line of the sub-table headed by row ``i`` (row 0 is ``(p, q)``)."""
        if not 0 <= i <= self.k0:
            raise EeaError(f"level {i} outside 0..{self.k0}")
        if i == 0:
            return self.line
        a, b, _ = self.rows[i - 1]
        return EeaLine.from_rows(a, b, self.rows[i:])

    def column(self, idx: int) -> list:
        return [self.p if idx == 0 else self.q] + [r[idx] for r in self.rows]

    def validate(self) -> None:
        """Check every structural identity of the table; raise EeaError on failure."""
        p, q, rows = self.p, self.q, self.rows
        _check_pair(p, q)
        if len(rows) < 2:
            raise EeaError("table needs at least two rows")
        k0 = len(rows) - 2
        a = [p] + [r[0] for r in rows]
        b = [q] + [r[1] for r in rows]
        n = [None] + [r[2] for r in rows]
        if (a[k0 + 1], b[k0 + 1], n[k0 + 1]) != (1, q // p, a[k0]):
            raise EeaError(f"penultimate row {rows[-2]} should be (1, {q // p}, {a[k0]})")
        if (a[k0 + 2], b[k0 + 2], n[k0 + 2]) != (0, 1, None):
            raise EeaError(f"last row {rows[-1]} should be (0, 1, None)")
        for k in range(1, k0 + 2):
            if n[k] is None or n[k] < 1:
                raise EeaError(f"row {k} has multiplier {n[k]}")
            if a[k + 1] != a[k - 1] - n[k] * a[k] or b[k + 1] != b[k - 1] - n[k] * b[k]:
                raise EeaError(f"recurrence fails at row {k}")
        for k in range(0, k0 + 1):
            if not b[k] > a[k] >= 1:
                raise EeaError(f"row {k} violates b > a >= 1")
            if a[k] * b[k + 1] - b[k] * a[k + 1] != (-1) ** (k0 - k + 1):
                raise EeaError(f"cross determinant at row {k} has the wrong sign")


@dataclass(frozen=True)
class EeaLine:
    """The head of a table: ``(p, q)`` over rows ``(a, b, n)``, ``(a1, b1, n1)``, ``(a2, b2, n2)``.

    ``a1, b1`` are the primed entries of the second row and ``a2, b2`` the
    double-primed ones of the third.  Entries below the end of the table are
    ``None``.
    """

    p: int
    q: int
    a: int
    b: int
    n: int
    a1: int
    b1: int
    n1: Optional[int]
    a2: Optional[int]
    b2: Optional[int]
    n2: Optional[int]
    tail: tuple  # rows from (a2, b2, n2) on

    @classmethod
    def from_rows(cls, p, q, rows) -> "EeaLine":
        (a, b, n), (a1, b1, n1) = rows[0], rows[1]
        a2, b2, n2 = rows[2] if len(rows) > 2 else (None, None, None)
        return cls(p, q, a, b, n, a1, b1, n1, a2, b2, n2, tuple(rows[2:]))

    @property
    def rows(self) -> tuple:
        return ((self.a, self.b, self.n), (self.a1, self.b1, self.n1)) + self.tail

    @property
    def sign(self) -> int:
        return self.b * self.p - self.a * self.q

    @property
    def m(self) -> int:
        return self.q // self.p

    @property
    def r(self) -> int:
        return self.q % self.p

    def table(self) -> EeaTable:
        return EeaTable(self.p, self.q, self.rows)


def eea_table(p: int, q: int) -> EeaTable:
    """Run the classical extended Euclid algorithm and reverse its columns."""
    _check_pair(p, q)
    big_p, big_q = p, q
    a_col, b_col = 0, 1  # the primed coefficient columns
    a_prev, b_prev = 1, 0
    lines = []  # (|A'|, |B'|, N) per algorithm line
    while True:
        n = big_q // big_p if big_p else None
        lines.append((abs(a_col), abs(b_col), n))
        if big_p == 0:
            break
        big_p, big_q = big_q - n * big_p, big_p
        a_col, a_prev = a_prev - n * a_col, a_col
        b_col, b_prev = b_prev - n * b_col, b_col
    # algorithm line t holds row k0 + 2 - t; the last line is the header (p, q)
    assert lines[-1][:2] == (p, q)
    rows = [lines[t] for t in range(len(lines) - 2, 0, -1)] + [(0, 1, None)]
    return EeaTable(p, q, tuple(rows))


def sign_pq(p: int, q: int) -> int:
    return eea_table(p, q).sign


def shift_line(line: EeaLine) -> EeaLine:
    """Drop the head row, merging it into the next one (multiplier ``n1 + 1``)."""
    if line.n != 1 or line.n1 is None:
        raise EeaError(f"only a head multiplier of 1 can be shifted, got n={line.n}")
    return EeaTable(line.p, line.q, ((line.a1, line.b1, line.n1 + 1),) + line.tail).line


def ensure_head_above_one(table: EeaTable) -> EeaTable:
    """Table whose head multiplier exceeds 1, shifting once if needed."""
    if table.rows[0][2] > 1:
        return table
    return shift_line(table.line).table()


def derived_table_pj(line: EeaLine, j: int, l: int) -> EeaTable:
    """Table of ``(l(a - j a1) + a1, l(b - j b1) + b1)``."""
    if line.n1 is None or not 0 <= j < line.n1:
        raise EeaError(f"need 0 <= j < n1, got j={j}, n1={line.n1}")
    if l < 1:
        raise EeaError(f"need a positive multiplier, got l={l}")
    ha, hb = line.a - j * line.a1, line.b - j * line.b1
    rows = ((ha, hb, l), (line.a1, line.b1, line.n1 - j)) + line.tail
    return EeaTable(l * ha + line.a1, l * hb + line.b1, rows)


def derived_table_N(line: EeaLine, N: int) -> EeaTable:
    """Table of ``(N a1 + a2, N b1 + b2)``, headed by ``(a1, b1, N)``."""
    if not line.a2:
        raise EeaError("the third row must have a2 != 0")
    if N < 1:
        raise EeaError(f"need a positive multiplier, got N={N}")
    rows = ((line.a1, line.b1, N),) + line.tail
    return EeaTable(N * line.a1 + line.a2, N * line.b1 + line.b2, rows)


def short_eea_classify(p: int, q: int) -> Shape:
    line = eea_table(p, q).line
    if line.a1 == 0:
        return Shape.VERY_SHORT
    if line.a2 == 0:
        return Shape.SHORT_A1 if line.a == 1 else Shape.SHORT
    return Shape.LONG


def format_table(table: EeaTable) -> str:
    """Plain-text table in the header / rows / multiplier layout."""
    cells = [(str(table.p), str(table.q), "")]
    cells += [(str(a), str(b), "" if n is None else str(n)) for a, b, n in table.rows]
    wa = max(len(c[0]) for c in cells)
    wb = max(len(c[1]) for c in cells)
    out = []
    for i, (a, b, n) in enumerate(cells):
        out.append(f"{a:>{wa}} {b:>{wb}} | {n}".rstrip())
        if i == 0:
            out.append("-" * (wa + wb + 2) + "+" + "-" * 4)
    a, b, _ = table.rows[0]
    out.append(f"k0={table.k0} sign={table.sign:+d}")
    out.append(f"{b}*{table.p}-{a}*{table.q}={table.sign}")
    return "\n".join(out)


def table_json(table: EeaTable) -> dict:
    return {
        "p": table.p,
        "q": table.q,
        "rows": [[a, b, n] if n is not None else [a, b] for a, b, n in table.rows],
        "k0": table.k0,
        "sign": table.sign,
    }
