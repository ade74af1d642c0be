"""Small exact integer/rational matrix kernel.

Matrices are lists of rows of Python ints (or Fractions where noted).  Sizes
in this package stay around 10x30, so plain lists beat any conversion cost.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = tuple[int, ...]
Matrix = list[list[int]]


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def mat_vec(m: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [dot(row, v) for row in m]


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*m)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = transpose(b)
    return [[dot(row, col) for col in bt] for row in a]


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> Vector:
    """Divide by the gcd of the entries; the zero vector is returned as is."""
    g = content(v)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def det(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free row reduction."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(a)):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, len(a)):
            f = a[i][c]
            if f:
                a[i] = [p * x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def column_hnf(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, list[tuple[int, int]]]:
    """Column echelon form ``A U = H`` with ``U`` unimodular.

    Returns ``(H, U, pivots)`` where ``pivots`` lists ``(row, column)`` of the
    echelon pivots; columns of ``U`` past the last pivot span the integer
    kernel of ``A``.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    h = [list(r) for r in a]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_op(j1: int, j2: int, p: int, q: int, r: int, s: int) -> None:
        # (col j1, col j2) <- (p*c1 + q*c2, r*c1 + s*c2)
        for mat in (h, u):
            for row in mat:
                x, y = row[j1], row[j2]
                row[j1], row[j2] = p * x + q * y, r * x + s * y

    pivots: list[tuple[int, int]] = []
    c = 0
    for i in range(m):
        if c >= n:
            break
        for j in range(c + 1, n):
            if h[i][j] == 0:
                continue
            x, y = h[i][c], h[i][j]
            g, s, t = _ext_gcd(x, y)
            col_op(c, j, s, t, -y // g, x // g)
        if h[i][c] == 0:
            continue
        if h[i][c] < 0:
            for mat in (h, u):
                for row in mat:
                    row[c] = -row[c]
        # reduce earlier pivot columns in this row
        for k in range(c):
            q = h[i][k] // h[i][c]
            if q:
                for mat in (h, u):
                    for row in mat:
                        row[k] -= q * row[c]
        pivots.append((i, c))
        c += 1
    return h, u, pivots


def integer_kernel(a: Sequence[Sequence[int]], ncols: int | None = None) -> list[Vector]:
    """A basis of ``{x in Z^n : A x = 0}``."""
    if not a:
        n = ncols or 0
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    _, u, pivots = column_hnf(a)
    n = len(u)
    r = len(pivots)
    return [tuple(u[i][j] for i in range(n)) for j in range(r, n)]


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int]) -> tuple[Vector, list[Vector]] | None:
    """Solve ``A x = b`` over the integers.

    Returns a particular solution and a kernel basis, or ``None`` when no
    integral solution exists.
    """
    h, u, pivots = column_hnf(a)
    n = len(u)
    y = [0] * n
    for k, (i, c) in enumerate(pivots):
        rest = b[i] - sum(h[i][j] * y[j] for j in range(k))
        if rest % h[i][c]:
            return None
        y[c] = rest // h[i][c]
    x = tuple(dot(row, y) for row in u)
    if mat_vec(a, x) != list(b):
        return None
    r = len(pivots)
    kernel = [tuple(u[i][j] for i in range(n)) for j in range(r, n)]
    return x, kernel


def rational_solve(a: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction] | None:
    """Unique solution of a square nonsingular system over Q."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


def adjugate(m: Sequence[Sequence[int]]) -> tuple[list[list[int]], int]:
    """``(A, d)`` with ``M A = d I`` and ``|d| = |det M|``.

    Fraction-free Gauss-Jordan on ``[M | I]``: every division is exact and
    the left block ends as ``d I``.
    """
    n = len(m)
    a = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return [[0] * n for _ in range(n)], 0
            a[k], a[piv] = a[piv], a[k]
        p = a[k][k]
        rk = a[k]
        for i in range(n):
            if i == k:
                continue
            ri = a[i]
            f = ri[k]
            a[i] = [(p * x - f * y) // prev for x, y in zip(ri, rk)]
        prev = p
    d = a[0][0]
    return [row[n:] for row in a], d


def inverse_columns(a: Sequence[Sequence[int]]) -> list[Vector]:
    """Primitive integer vectors along the columns of ``A^{-1}``.

    Column ``j`` pairs to zero with every row of ``A`` except row ``j``, and
    positively with row ``j``.
    """
    adj, d = adjugate(a)
    if d == 0:
        raise ValueError("singular matrix")
    s = 1 if d > 0 else -1
    n = len(a)
    return [primitive([s * adj[i][j] for i in range(n)]) for j in range(n)]


def inertia(gram: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric form, via exact LDL.

    Symmetric pivoting picks a nonzero diagonal entry; when the remaining
    diagonal vanishes, a congruence ``e_i -> e_i + e_j`` creates one.
    """
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    pos = neg = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row/col i += row/col j
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            piv = i
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for row in a:
                row[k], row[piv] = row[piv], row[k]
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / d
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
        for j in range(k + 1, n):
            a[k][j] = Fraction(0)
        for i in range(k + 1, n):
            a[i][k] = Fraction(0)
        k += 1
    return pos, neg, n - pos - neg


class IntegerSolver:
    """Repeatedly solve ``A x = b`` over Z for a fixed ``A`` and varying ``b``."""

    def __init__(self, a: Sequence[Sequence[int]]):
        self.a = [list(r) for r in a]
        self.h, self.u, self.pivots = column_hnf(self.a)
        n = len(self.u)
        r = len(self.pivots)
        self.kernel = [tuple(self.u[i][j] for i in range(n)) for j in range(r, n)]

    def particular(self, b: Sequence[int]) -> Vector | None:
        n = len(self.u)
        h = self.h
        y = [0] * n
        for k, (i, c) in enumerate(self.pivots):
            rest = b[i] - sum(h[i][j] * y[j] for j in range(k))
            if rest % h[i][c]:
                return None
            y[c] = rest // h[i][c]
        x = tuple(dot(row, y) for row in self.u)
        if mat_vec(self.a, x) != list(b):
            return None
        return x
