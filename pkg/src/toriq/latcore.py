"""Exact integer linear algebra: Hermite and Smith normal forms, kernels,
cokernels, and integral linear solving.

All matrices are immutable ``LatticeMap`` objects with integer entries.
Hermite normal form is row-style: ``U @ A == H`` with ``U`` unimodular,
pivots positive, and entries above each pivot reduced into ``[0, pivot)``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class LatticeMapError(ValueError):
    pass


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = gcd(a, b) = s*a + t*b and g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


class LatticeMap:
    """An integer matrix, thought of as a map between free abelian groups.

    Entries are stored row-major as a tuple of tuples.  ``rows`` and ``cols``
    give the shape; a map sends column vectors of length ``cols`` to column
    vectors of length ``rows``.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]], rows: int | None = None,
                 cols: int | None = None):
        ents = tuple(tuple(int(e) for e in row) for row in entries)
        if rows is None:
            rows = len(ents)
        if cols is None:
            cols = len(ents[0]) if ents else 0
        if len(ents) != rows or any(len(r) != cols for r in ents):
            raise LatticeMapError("inconsistent matrix shape")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ents)

    def __setattr__(self, name, value):
        raise AttributeError("LatticeMap is immutable")

    def __eq__(self, other) -> bool:
        return (isinstance(other, LatticeMap) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"LatticeMap({list(map(list, self.entries))!r})"

    @staticmethod
    def identity(n: int) -> "LatticeMap":
        return LatticeMap([[1 if i == j else 0 for j in range(n)]
                           for i in range(n)], n, n)

    @staticmethod
    def zero(rows: int, cols: int) -> "LatticeMap":
        return LatticeMap([[0] * cols for _ in range(rows)], rows, cols)

    @staticmethod
    def from_columns(cols: Sequence[Sequence[int]], ambient: int | None = None) -> "LatticeMap":
        if not cols:
            if ambient is None:
                raise LatticeMapError("ambient dimension needed for empty column list")
            return LatticeMap([[] for _ in range(ambient)], ambient, 0)
        n = len(cols[0])
        return LatticeMap([[cols[j][i] for j in range(len(cols))]
                           for i in range(n)], n, len(cols))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def transpose(self) -> "LatticeMap":
        return LatticeMap([[self.entries[i][j] for i in range(self.rows)]
                           for j in range(self.cols)], self.cols, self.rows)

    def __matmul__(self, other: "LatticeMap") -> "LatticeMap":
        if self.cols != other.rows:
            raise LatticeMapError("shape mismatch in product")
        return LatticeMap(
            [[sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
              for j in range(other.cols)] for i in range(self.rows)],
            self.rows, other.cols)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise LatticeMapError("vector length mismatch")
        return tuple(sum(row[j] * vec[j] for j in range(self.cols))
                     for row in self.entries)

    def to_json(self) -> str:
        return json.dumps({"rows": self.rows, "cols": self.cols,
                           "entries": [list(r) for r in self.entries]})

    @staticmethod
    def from_json(text: str) -> "LatticeMap":
        data = json.loads(text)
        return LatticeMap(data["entries"], data["rows"], data["cols"])


def hermite_normal_form(a: LatticeMap) -> tuple[LatticeMap, LatticeMap]:
    """Row-style Hermite normal form.

    Returns (H, U) with U unimodular, U @ a == H, pivot entries positive,
    and every entry above a pivot reduced into [0, pivot).
    """
    m, n = a.rows, a.cols
    h = [list(r) for r in a.entries]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    pivot_row = 0
    pivots: list[tuple[int, int]] = []
    for col in range(n):
        # eliminate below pivot_row in this column via gcd combinations
        pr = None
        for i in range(pivot_row, m):
            if h[i][col]:
                pr = i
                break
        if pr is None:
            continue
        if pr != pivot_row:
            h[pivot_row], h[pr] = h[pr], h[pivot_row]
            u[pivot_row], u[pr] = u[pr], u[pivot_row]
        for i in range(pivot_row + 1, m):
            if not h[i][col]:
                continue
            g, s, t = _xgcd(h[pivot_row][col], h[i][col])
            p, q = h[pivot_row][col] // g, h[i][col] // g
            row_p, row_i = h[pivot_row], h[i]
            h[pivot_row] = [s * x + t * y for x, y in zip(row_p, row_i)]
            h[i] = [-q * x + p * y for x, y in zip(row_p, row_i)]
            urow_p, urow_i = u[pivot_row], u[i]
            u[pivot_row] = [s * x + t * y for x, y in zip(urow_p, urow_i)]
            u[i] = [-q * x + p * y for x, y in zip(urow_p, urow_i)]
        if h[pivot_row][col] < 0:
            h[pivot_row] = [-x for x in h[pivot_row]]
            u[pivot_row] = [-x for x in u[pivot_row]]
        pivots.append((pivot_row, col))
        pivot_row += 1
        if pivot_row == m:
            break
    # reduce entries above each pivot into [0, pivot)
    for prow, pcol in pivots:
        piv = h[prow][pcol]
        for i in range(prow):
            q = h[i][pcol] // piv
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[prow])]
                u[i] = [x - q * y for x, y in zip(u[i], u[prow])]
    return LatticeMap(h, m, n), LatticeMap(u, m, m)


class SmithData:
    """Smith normal form data: left @ a @ right == diag(d), both unimodular.

    ``d`` has length min(rows, cols); nonzero invariant factors come first
    and each divides the next (zeros trail, and everything divides zero).
    """

    __slots__ = ("d", "left", "right")

    def __init__(self, d: Sequence[int], left: LatticeMap, right: LatticeMap):
        object.__setattr__(self, "d", tuple(int(x) for x in d))
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def __setattr__(self, name, value):
        raise AttributeError("SmithData is immutable")

    def __repr__(self) -> str:
        return f"SmithData(d={list(self.d)!r})"


def smith_normal_form(a: LatticeMap) -> SmithData:
    m, n = a.rows, a.cols
    h = [list(r) for r in a.entries]
    left = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    right = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i: int, j: int, col: int):
        # combine rows i, j so that position (i, col) holds the gcd; when the
        # pivot already divides, plain elimination keeps row i untouched
        # (otherwise alternating row/column passes need not terminate)
        if h[j][col] % h[i][col] == 0:
            q = h[j][col] // h[i][col]
            h[j] = [y - q * x for x, y in zip(h[i], h[j])]
            left[j] = [y - q * x for x, y in zip(left[i], left[j])]
            return
        g, s, t = _xgcd(h[i][col], h[j][col])
        p, q = h[i][col] // g, h[j][col] // g
        ri, rj = h[i], h[j]
        h[i] = [s * x + t * y for x, y in zip(ri, rj)]
        h[j] = [-q * x + p * y for x, y in zip(ri, rj)]
        li, lj = left[i], left[j]
        left[i] = [s * x + t * y for x, y in zip(li, lj)]
        left[j] = [-q * x + p * y for x, y in zip(li, lj)]

    def col_op(i: int, j: int, row: int):
        if h[row][j] % h[row][i] == 0:
            q = h[row][j] // h[row][i]
            for r in h:
                r[j] -= q * r[i]
            for r in right:
                r[j] -= q * r[i]
            return
        g, s, t = _xgcd(h[row][i], h[row][j])
        p, q = h[row][i] // g, h[row][j] // g
        for r in h:
            r[i], r[j] = s * r[i] + t * r[j], -q * r[i] + p * r[j]
        for r in right:
            r[i], r[j] = s * r[i] + t * r[j], -q * r[i] + p * r[j]

    k = 0
    dim = min(m, n)
    while k < dim:
        # find a nonzero pivot in the remaining block
        piv = None
        for i in range(k, m):
            for j in range(k, n):
                if h[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        pi, pj = piv
        if pi != k:
            h[k], h[pi] = h[pi], h[k]
            left[k], left[pi] = left[pi], left[k]
        if pj != k:
            for r in h:
                r[k], r[pj] = r[pj], r[k]
            for r in right:
                r[k], r[pj] = r[pj], r[k]
        while True:
            for i in range(k + 1, m):
                if h[i][k]:
                    row_op(k, i, k)
            for j in range(k + 1, n):
                if h[k][j]:
                    col_op(k, j, k)
            if all(h[i][k] == 0 for i in range(k + 1, m)) and \
               all(h[k][j] == 0 for j in range(k + 1, n)):
                break
        if h[k][k] < 0:
            h[k] = [-x for x in h[k]]
            left[k] = [-x for x in left[k]]
        k += 1
    # enforce the divisibility chain d[i] | d[i+1] (zeros already trail)
    changed = True
    while changed:
        changed = False
        for i in range(dim - 1):
            di, dj = h[i][i], h[i + 1][i + 1]
            if di and dj and dj % di:
                # add row i+1 to row i, then rediagonalize the 2x2 block:
                # diag(di, dj) becomes diag(gcd, lcm)
                h[i] = [x + y for x, y in zip(h[i], h[i + 1])]
                left[i] = [x + y for x, y in zip(left[i], left[i + 1])]
                col_op(i, i + 1, i)
                if h[i + 1][i]:
                    q = h[i + 1][i] // h[i][i]
                    h[i + 1] = [x - q * y for x, y in zip(h[i + 1], h[i])]
                    left[i + 1] = [x - q * y for x, y in zip(left[i + 1], left[i])]
                if h[i][i] < 0:
                    h[i] = [-x for x in h[i]]
                    left[i] = [-x for x in left[i]]
                if h[i + 1][i + 1] < 0:
                    h[i + 1] = [-x for x in h[i + 1]]
                    left[i + 1] = [-x for x in left[i + 1]]
                changed = True
    d = [h[i][i] for i in range(dim)]
    return SmithData(d, LatticeMap(left, m, m), LatticeMap(right, n, n))


def kernel_basis(a: LatticeMap) -> LatticeMap:
    """Basis of {x : a @ x == 0} as the columns of the returned map.

    The basis is saturated (it spans ker(a) over Q intersected with Z^cols)
    and canonical: its transpose is in Hermite normal form.
    """
    h, u = hermite_normal_form(a.transpose())
    ker_rows = [u.entries[i] for i in range(h.rows)
                if all(x == 0 for x in h.entries[i])]
    if not ker_rows:
        return LatticeMap([[] for _ in range(a.cols)], a.cols, 0)
    canon, _ = hermite_normal_form(LatticeMap(ker_rows))
    return canon.transpose()


def cokernel_presentation(a: LatticeMap) -> tuple[int, list[int], LatticeMap]:
    """Present Z^rows / image(a) as Z^free_rank + sum of Z/t_i.

    Returns (free_rank, torsion, projection).  The projection matrix has
    free_rank + len(torsion) rows; applied to a vector in Z^rows it gives
    coordinates in the free part followed by representatives mod each t_i.
    Torsion factors are listed in divisibility order, each > 1.
    """
    snf = smith_normal_form(a)
    m = a.rows
    d = list(snf.d) + [0] * (m - len(snf.d))
    free_rows = [snf.left.entries[i] for i in range(m) if d[i] == 0]
    torsion: list[int] = []
    torsion_rows = []
    for i in range(m):
        if d[i] > 1:
            torsion.append(d[i])
            torsion_rows.append(snf.left.entries[i])
    proj = LatticeMap(free_rows + torsion_rows, len(free_rows) + len(torsion_rows), m)
    return len(free_rows), torsion, proj


def solve_integral(a: LatticeMap, b: Sequence[int]) -> tuple[int, ...] | None:
    """One integral solution of a @ x == b, or None when none exists.

    The solution returned is canonical: it is reduced modulo the kernel
    lattice of ``a`` using the Hermite normal form of that lattice, so equal
    inputs always produce the identical output.
    """
    if len(b) != a.rows:
        raise LatticeMapError("right-hand side length mismatch")
    snf = smith_normal_form(a)
    m, n = a.rows, a.cols
    lb = snf.left.apply(list(b))
    z = [0] * n
    for i in range(m):
        di = snf.d[i] if i < len(snf.d) else 0
        if di == 0:
            if lb[i] != 0:
                return None
        else:
            if lb[i] % di:
                return None
            if i < n:
                z[i] = lb[i] // di
    x = list(snf.right.apply(z))
    ker = kernel_basis(a)
    if ker.cols:
        # reduce x at each pivot position of the kernel's HNF row basis
        kt = ker.transpose()
        for i in range(kt.rows):
            row = kt.entries[i]
            pcol = next(j for j in range(len(row)) if row[j])
            q = x[pcol] // row[pcol]
            if q:
                x = [xv - q * rv for xv, rv in zip(x, row)]
    return tuple(x)


def rank(a: LatticeMap) -> int:
    h, _ = hermite_normal_form(a)
    return sum(1 for row in h.entries if any(row))


def solve_rational(a: LatticeMap, b: Sequence[Fraction]) -> list[Fraction] | None:
    """One rational solution of a @ x == b, or None when inconsistent.

    Gaussian elimination over Fraction; free variables are set to zero.
    """
    m, n = a.rows, a.cols
    mat = [[Fraction(e) for e in row] + [Fraction(b[i])]
           for i, row in enumerate(a.entries)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(m):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if mat[i][n]:
            return None
    x = [Fraction(0)] * n
    for pr, pc in pivots:
        x[pc] = mat[pr][n]
    return x
