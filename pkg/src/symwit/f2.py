"""Dense linear algebra over F_2 on integer bitsets.

A matrix row is a Python int whose bit j holds the entry in column j, so
a row operation is a single bigint XOR.  Elimination always pivots on the
leftmost available column and the lowest available row, which makes every
result deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, SizeError

CORRESPONDENCE_WINDOW = 20


@dataclass(frozen=True)
class F2Matrix:
    """Matrix over F_2; bit j of ``bits[i]`` is the entry at (i, j)."""

    rows: int
    cols: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InputError("matrix dimensions must be nonnegative")
        if len(self.bits) != self.rows:
            raise InputError("bit payload length does not match row count")
        mask = (1 << self.cols) - 1
        for row in self.bits:
            if row < 0 or row & ~mask:
                raise InputError("row has bits outside the column range")

    @classmethod
    def from_rows(cls, rows, cols=None):
        """Build from an iterable of 0/1 iterables (row-major)."""
        packed = []
        width = cols
        for row in rows:
            row = list(row)
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise InputError("ragged rows")
            bits = 0
            for j, v in enumerate(row):
                if v not in (0, 1):
                    raise InputError("entries must be 0 or 1")
                bits |= v << j
            packed.append(bits)
        if width is None:
            width = 0
        return cls(len(packed), width, tuple(packed))

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(1 << i for i in range(n)))

    def entry(self, i, j):
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise InputError("index out of range")
        return (self.bits[i] >> j) & 1

    def row_support(self, k):
        """Column indices with a 1 in row k (the set S_k)."""
        return tuple(j for j in range(self.cols) if (self.bits[k] >> j) & 1)

    def col_support(self, j):
        """Row indices with a 1 in column j (the set T_j)."""
        return tuple(k for k in range(self.rows) if (self.bits[k] >> j) & 1)

    def dense(self):
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.bits]


@dataclass(frozen=True)
class LinSystem:
    """A linear system Mx = b over F_2; ``rhs`` is a bitset of length rows."""

    matrix: F2Matrix
    rhs: int = 0

    def __post_init__(self):
        if self.rhs < 0 or self.rhs >> self.matrix.rows:
            raise InputError("rhs length does not match row count")

    def rhs_bit(self, k):
        return (self.rhs >> k) & 1

    @property
    def homogeneous(self):
        return self.rhs == 0


def _eliminate(bits, cols):
    """Reduced row echelon form. Returns (rows, pivot column list)."""
    rows = list(bits)
    pivots = []
    r = 0
    for c in range(cols):
        mask = 1 << c
        piv = None
        for i in range(r, len(rows)):
            if rows[i] & mask:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & mask:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(m: F2Matrix) -> int:
    """Row rank over F_2."""
    return len(_eliminate(m.bits, m.cols)[1])


def nullspace_basis(m: F2Matrix) -> list[int]:
    """Basis of {x : Mx = 0}, one bitset per vector.

    One basis vector per free column, ordered by free column index, so the
    output is deterministic and has exactly cols - rank(m) entries.
    """
    rows, pivots = _eliminate(m.bits, m.cols)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        vec = 1 << f
        for r, p in enumerate(pivots):
            if (rows[r] >> f) & 1:
                vec |= 1 << p
        basis.append(vec)
    return basis


def matvec(m: F2Matrix, x: int) -> int:
    """Product Mx over F_2 with x as a column bitset."""
    out = 0
    for k, row in enumerate(m.bits):
        out |= ((row & x).bit_count() & 1) << k
    return out


def homogenize(sys: LinSystem) -> LinSystem:
    """Rewrite Mx = b with b != 0 as an equivalent homogeneous system.

    Appends two columns holding 1+b and the all-ones vector, plus one row
    tying the new columns together:

        [ M  1+b  1 ]
        [ 0   1   1 ]

    A system that is already homogeneous is returned unchanged.
    """
    if sys.rhs == 0:
        return sys
    m = sys.matrix
    n = m.cols
    new_rows = []
    for k, row in enumerate(m.bits):
        row |= (1 - sys.rhs_bit(k)) << n
        row |= 1 << (n + 1)
        new_rows.append(row)
    new_rows.append((1 << n) | (1 << (n + 1)))
    return LinSystem(F2Matrix(m.rows + 1, n + 2, tuple(new_rows)), 0)


def _parity_table(size):
    x = np.arange(size, dtype=np.int64)
    x ^= x >> 16
    x ^= x >> 8
    x ^= x >> 4
    x ^= x >> 2
    x ^= x >> 1
    return (x & 1).astype(np.uint8)


def solve_correspondence_check(sys: LinSystem) -> bool:
    """Exhaustively certify the homogenization solution correspondence.

    True iff the nullspace of the homogenized matrix equals
    {(y, t, t) : My = t*b}, checked over every candidate vector.
    """
    if sys.rhs == 0:
        raise InputError("correspondence check requires a nonzero rhs")
    n = sys.matrix.cols
    if n > CORRESPONDENCE_WINDOW:
        raise SizeError(
            f"brute-force window is cols <= {CORRESPONDENCE_WINDOW}, got {n}"
        )
    hom = homogenize(sys)
    xs = np.arange(1 << (n + 2), dtype=np.int64)
    par = _parity_table(1 << (n + 2))

    in_null = np.ones(len(xs), dtype=bool)
    for row in hom.matrix.bits:
        in_null &= par[xs & row] == 0

    t = ((xs >> n) & 1).astype(np.uint8)
    t2 = ((xs >> (n + 1)) & 1).astype(np.uint8)
    expected = t == t2
    for k, row in enumerate(sys.matrix.bits):
        expected &= par[xs & row] == (t * sys.rhs_bit(k))

    return bool(np.array_equal(in_null, expected))


def parse_system(text: str) -> LinSystem:
    """Parse the plain-text system format.

    Line 1 is ``m n``; then m lines of n characters from {0,1}; an optional
    final line ``b <m characters>`` gives the right-hand side (absent means
    b = 0).  Ragged lines are rejected.
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputError("empty system file")
    head = lines[0].split()
    if len(head) != 2:
        raise InputError("header must be 'm n'")
    try:
        m, n = int(head[0]), int(head[1])
    except ValueError as exc:
        raise InputError("header must contain two integers") from exc
    if m < 0 or n < 0:
        raise InputError("dimensions must be nonnegative")
    if len(lines) < 1 + m:
        raise InputError("missing matrix rows")
    bits = []
    for k in range(m):
        row = lines[1 + k]
        if len(row) != n or set(row) - {"0", "1"}:
            raise InputError(f"row {k} is not {n} characters of 0/1")
        bits.append(sum(1 << j for j, ch in enumerate(row) if ch == "1"))
    rest = lines[1 + m :]
    rhs = 0
    if rest:
        if len(rest) != 1 or not rest[0].startswith("b"):
            raise InputError("unexpected trailing lines")
        bstr = rest[0][1:].strip()
        if len(bstr) != m or set(bstr) - {"0", "1"}:
            raise InputError(f"b line is not {m} characters of 0/1")
        rhs = sum(1 << k for k, ch in enumerate(bstr) if ch == "1")
    return LinSystem(F2Matrix(m, n, tuple(bits)), rhs)


def format_system(sys: LinSystem) -> str:
    """Inverse of parse_system (the b line is omitted when b = 0)."""
    m, n = sys.matrix.rows, sys.matrix.cols
    out = [f"{m} {n}"]
    for row in sys.matrix.bits:
        out.append("".join("1" if (row >> j) & 1 else "0" for j in range(n)))
    if sys.rhs:
        out.append("b " + "".join("1" if sys.rhs_bit(k) else "0" for k in range(m)))
    return "\n".join(out) + "\n"
