"""Exact rational matrices.

Entries are :class:`fractions.Fraction`.  Rank uses fraction-free (Bareiss)
elimination on rows scaled to integers, and inertia reads eigenvalue signs off
the characteristic polynomial, which for a symmetric matrix has only real
roots, so Descartes' rule of signs is exact.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .graph import Graph

Rows = list[list[Fraction]]


class MatrixError(ValueError):
    pass


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (tuple, list)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    if isinstance(x, float):
        raise MatrixError("floating point entries are not accepted")
    return Fraction(x)


def as_rows(a: Iterable[Iterable]) -> Rows:
    rows = [[to_fraction(x) for x in r] for r in a]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise MatrixError("ragged matrix")
    return rows


class SymRatMatrix:
    """Immutable symmetric matrix with rational entries."""

    __slots__ = ("rows", "n")

    def __init__(self, rows: Iterable[Iterable]) -> None:
        data = as_rows(rows)
        n = len(data)
        if any(len(r) != n for r in data):
            raise MatrixError("matrix is not square")
        for i in range(n):
            for j in range(i):
                if data[i][j] != data[j][i]:
                    raise MatrixError(f"matrix is not symmetric at ({i}, {j})")
        self.rows: tuple[tuple[Fraction, ...], ...] = tuple(tuple(r) for r in data)
        self.n = n

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.rows[ij[0]][ij[1]]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymRatMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"SymRatMatrix({[[str(x) for x in r] for r in self.rows]})"

    def tolist(self) -> Rows:
        return [list(r) for r in self.rows]

    def permuted(self, perm: Sequence[int]) -> SymRatMatrix:
        """Entry ``(i, j)`` moves to ``(perm[i], perm[j])``."""
        n = self.n
        out = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                out[perm[i]][perm[j]] = self.rows[i][j]
        return SymRatMatrix(out)

    def to_text(self) -> str:
        lines = [str(self.n)]
        lines += [" ".join(str(x) for x in r) for r in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> SymRatMatrix:
        return cls(parse_matrix(text))

    @classmethod
    def identity(cls, n: int) -> SymRatMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence) -> SymRatMatrix:
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])


def _rows_of(a) -> Rows:
    if isinstance(a, SymRatMatrix):
        return a.tolist()
    return as_rows(a)


_ENTRY = re.compile(r"[+-]?\d+(/\d+)?")


def parse_matrix(text: str) -> Rows:
    """First line ``n``, then ``n`` rows of integers or ``p/q`` rationals."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MatrixError("empty matrix text")
    try:
        n = int(lines[0])
    except ValueError:
        raise MatrixError(f"first line must be the order, got {lines[0]!r}") from None
    if len(lines) - 1 != n:
        raise MatrixError(f"expected {n} rows, found {len(lines) - 1}")
    rows = [ln.split() for ln in lines[1:]]
    for i, r in enumerate(rows, 2):
        for tok in r:
            if not _ENTRY.fullmatch(tok):
                raise MatrixError(f"line {i}: entry {tok!r} is not an integer or p/q")
    try:
        return as_rows(rows)
    except ZeroDivisionError:
        raise MatrixError("zero denominator") from None


def _integer_rows(rows: Rows) -> list[list[int]]:
    out = []
    for r in rows:
        d = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * d) for x in r])
    return out


def rank(a) -> int:
    m = _integer_rows(_rows_of(a))
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            f = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c, ncols):
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rref(a) -> tuple[Rows, list[int]]:
    m = _rows_of(a)
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def nullspace_basis(a, ncols: int | None = None) -> list[list[Fraction]]:
    """Right nullspace basis in reduced echelon form.

    The basis vectors are the rows of the reduced row echelon form of any
    spanning set, so the result depends only on the null space itself.
    ``ncols`` gives the width when ``a`` has no rows.
    """
    rows = _rows_of(a)
    if not rows:
        if ncols is None:
            raise MatrixError("width of an empty matrix is unknown")
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    width = len(rows[0])
    m, pivots = rref(rows)
    basis = []
    for f in range(width):
        if f in pivots:
            continue
        x = [Fraction(0)] * width
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -m[i][f]
        basis.append(x)
    if not basis:
        return basis
    echelon, _ = rref(basis)
    return echelon


def matmul(a, b) -> Rows:
    ra, rb = _rows_of(a), _rows_of(b)
    if ra and rb and len(ra[0]) != len(rb):
        raise MatrixError(f"cannot multiply {len(ra)}x{len(ra[0])} by {len(rb)}x{len(rb[0])}")
    cols = list(zip(*rb))
    return [[sum((x * y for x, y in zip(r, c)), Fraction(0)) for c in cols] for r in ra]


def matvec(a, x: Sequence) -> list[Fraction]:
    return [sum((u * to_fraction(v) for u, v in zip(r, x)), Fraction(0)) for r in _rows_of(a)]


def transpose(a) -> Rows:
    return [list(c) for c in zip(*_rows_of(a))]


def submatrix(a, rows: Sequence[int], cols: Sequence[int]) -> Rows:
    m = _rows_of(a)
    n_r = len(m)
    n_c = len(m[0]) if m else 0
    for i in rows:
        if not 0 <= i < n_r:
            raise MatrixError(f"row index {i} out of range")
    for j in cols:
        if not 0 <= j < n_c:
            raise MatrixError(f"column index {j} out of range")
    return [[m[i][j] for j in sorted(cols)] for i in sorted(rows)]


def congruence(m, d) -> SymRatMatrix:
    """``M^T D M``."""
    rm, rd = _rows_of(m), _rows_of(d)
    if len(rd) != len(rm) or any(len(r) != len(rm) for r in rd):
        raise MatrixError("D must be square with as many rows as M")
    dm = matmul(rd, rm)
    return SymRatMatrix(matmul(transpose(rm), dm))


def charpoly(a) -> list[int] | list[Fraction]:
    """Coefficients of ``det(xI - A)``, leading coefficient first (Berkowitz)."""
    m = _rows_of(a)
    n = len(m)
    if n == 0:
        return [Fraction(1)]
    c = [Fraction(1), -m[0][0]]
    for r in range(1, n):
        s = [m[i][r] for i in range(r)]
        row = m[r][:r]
        col = [Fraction(1), -m[r][r]]
        v = s
        for _ in range(r):
            col.append(-sum((row[i] * v[i] for i in range(r)), Fraction(0)))
            v = [sum((m[i][j] * v[j] for j in range(r)), Fraction(0)) for i in range(r)]
        c = [
            sum((col[i - j] * c[j] for j in range(len(c)) if 0 <= i - j < len(col)), Fraction(0))
            for i in range(r + 2)
        ]
    return c


def _sign_changes(coeffs: Sequence) -> int:
    signs = [x > 0 for x in coeffs if x != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def inertia(a: SymRatMatrix) -> tuple[int, int, int]:
    """``(n_plus, n_minus, n_zero)``."""
    if not isinstance(a, SymRatMatrix):
        a = SymRatMatrix(a)
    n = a.n
    if n == 0:
        return 0, 0, 0
    # a positive rescaling keeps the signs and lets Berkowitz run on integers
    d = lcm(*(x.denominator for r in a.rows for x in r))
    p = charpoly([[x * d for x in r] for r in a.rows])
    zero = 0
    while zero < n and p[n - zero] == 0:
        zero += 1
    core = p[: n + 1 - zero]
    pos = _sign_changes(core)
    deg = len(core) - 1
    neg = _sign_changes([x if (deg - i) % 2 == 0 else -x for i, x in enumerate(core)])
    if pos + neg + zero != n:
        raise MatrixError("characteristic polynomial has non-real roots")
    return pos, neg, zero


def in_pattern(a: SymRatMatrix, g: Graph) -> bool:
    """Off-diagonal support equals the edge set; the diagonal is free."""
    if a.n != g.n:
        raise MatrixError(f"order {a.n} matrix against a graph on {g.n} vertices")
    for i in range(g.n):
        row = a.rows[i]
        for j in range(i + 1, g.n):
            if (row[j] != 0) != bool(g.adj[i] >> j & 1):
                return False
    return True


def pattern_graph(a: SymRatMatrix) -> Graph:
    edges = [(i, j) for i in range(a.n) for j in range(i + 1, a.n) if a.rows[i][j] != 0]
    return Graph.from_edges(a.n, edges)
