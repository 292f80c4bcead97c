"""Exact matrix algebra over the ambient polynomial ring and over fields.

A matrix is a rectangular tuple-of-tuples grid; graded bookkeeping lives in
complexes.HomMatrix, which wraps one of these grids.  Everything here is
fraction free: determinants and polynomial ranks use Bareiss elimination
(each division is exact by the minor identity), small determinants and minor
enumeration use cofactor expansion with a shared memo keyed by (row set,
column set).

Field-level routines (rank, generalized inverse) take grids of field scalars
and use plain Gauss elimination with deterministic pivoting.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .errors import NotSquare
from .fields import Field
from .poly import Poly, PolyRing, exact_div

Grid = tuple[tuple[Poly, ...], ...]


def as_grid(rows: Sequence[Sequence[Poly]]) -> Grid:
    grid = tuple(tuple(r) for r in rows)
    if grid and any(len(r) != len(grid[0]) for r in grid):
        raise ValueError("ragged matrix")
    return grid


def mat_shape(rows: Sequence[Sequence[Poly]]) -> tuple[int, int]:
    grid = as_grid(rows)
    return (len(grid), len(grid[0]) if grid else 0)


def mat_mul(a: Sequence[Sequence[Poly]], b: Sequence[Sequence[Poly]], ring: PolyRing) -> Grid:
    m, k1 = mat_shape(a)
    k2, n = mat_shape(b)
    if k1 != k2:
        raise ValueError(f"shape mismatch {m}x{k1} times {k2}x{n}")
    out = []
    for i in range(m):
        row = []
        for j in range(n):
            acc = ring.zero()
            for t in range(k1):
                e = a[i][t]
                if e.is_zero() or b[t][j].is_zero():
                    continue
                acc = acc + e * b[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_sub(a, b) -> Grid:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a) -> Grid:
    return tuple(tuple(-x for x in r) for r in a)


def mat_transpose(a) -> Grid:
    m, n = mat_shape(a)
    return tuple(tuple(a[i][j] for i in range(m)) for j in range(n))


def identity(ring: PolyRing, n: int, scale: Poly | None = None) -> Grid:
    diag = ring.one() if scale is None else scale
    zero = ring.zero()
    return tuple(tuple(diag if i == j else zero for j in range(n)) for i in range(n))


def zero_matrix(ring: PolyRing, m: int, n: int) -> Grid:
    zero = ring.zero()
    return tuple((zero,) * n for _ in range(m))


def block_matrix(blocks: Sequence[Sequence[Sequence[Sequence[Poly]]]]) -> Grid:
    """Assemble a 2D arrangement of compatible blocks."""
    out: list[tuple[Poly, ...]] = []
    for block_row in blocks:
        grids = [as_grid(b) for b in block_row]
        height = len(grids[0])
        if any(len(g) != height for g in grids):
            raise ValueError("block heights differ")
        for i in range(height):
            out.append(tuple(x for g in grids for x in g[i]))
    return as_grid(out)


# ---------------------------------------------------------------------------
# determinants and minors
# ---------------------------------------------------------------------------

def _cofactor_det(grid: Grid, rset: tuple[int, ...], cset: tuple[int, ...], memo: dict, ring: PolyRing) -> Poly:
    if not rset:
        return ring.one()
    key = (rset, cset)
    hit = memo.get(key)
    if hit is not None:
        return hit
    r0 = rset[0]
    rest = rset[1:]
    acc = ring.zero()
    for t, c in enumerate(cset):
        e = grid[r0][c]
        if e.is_zero():
            continue
        sub = _cofactor_det(grid, rest, cset[:t] + cset[t + 1 :], memo, ring)
        if sub.is_zero():
            continue
        contrib = e * sub
        acc = acc + contrib if t % 2 == 0 else acc - contrib
    memo[key] = acc
    return acc


def all_minors(rows: Sequence[Sequence[Poly]], r: int, ring: PolyRing):
    """Yield every r x r minor determinant, rows and columns in ascending
    lexicographic order of index sets.  Shared memo across subsets."""
    grid = as_grid(rows)
    m, n = mat_shape(grid)
    if r < 0 or r > min(m, n):
        return
    memo: dict = {}
    for rset in combinations(range(m), r):
        for cset in combinations(range(n), r):
            yield _cofactor_det(grid, rset, cset, memo, ring)


def det(rows: Sequence[Sequence[Poly]], ring: PolyRing) -> Poly:
    """Exact determinant: cofactor expansion for n <= 3, Bareiss above."""
    grid = as_grid(rows)
    m, n = mat_shape(grid)
    if m != n:
        raise NotSquare(f"determinant of a {m}x{n} matrix")
    if n == 0:
        return ring.one()
    if n <= 3:
        return _cofactor_det(grid, tuple(range(n)), tuple(range(n)), {}, ring)
    return _bareiss(grid, ring, want_det=True)[1]


def rank_over_domain(rows: Sequence[Sequence[Poly]], ring: PolyRing) -> int:
    """Rank over the fraction field of the (integral) ambient ring."""
    grid = as_grid(rows)
    if not grid or not grid[0]:
        return 0
    return _bareiss(grid, ring, want_det=False)[0]


def _bareiss(grid: Grid, ring: PolyRing, want_det: bool) -> tuple[int, Poly]:
    """Fraction-free elimination.  Returns (rank, det-if-square).

    Pivots are chosen to minimize (term count, row, column) over the live
    block: deterministic, and keeping pivots sparse keeps the exact divisions
    cheap.  Column swaps are tracked only through the determinant sign.
    """
    M = [list(r) for r in grid]
    m, n = len(M), len(M[0])
    sign = 1
    prev = ring.one()
    rank = 0
    steps = min(m, n)
    for k in range(steps):
        best = None
        for i in range(k, m):
            row = M[i]
            for j in range(k, n):
                e = row[j]
                if not e.is_zero():
                    score = (len(e.terms), i, j)
                    if best is None or score < best[0]:
                        best = (score, i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != k:
            M[k], M[pi] = M[pi], M[k]
            sign = -sign
        if pj != k:
            for row in M:
                row[k], row[pj] = row[pj], row[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, m):
            mik = M[i][k]
            for j in range(k + 1, n):
                num = pivot * M[i][j]
                if not mik.is_zero() and not M[k][j].is_zero():
                    num = num - mik * M[k][j]
                M[i][j] = exact_div(num, prev)
            M[i][k] = ring.zero()
        prev = pivot
        rank += 1
    if not want_det:
        return rank, ring.zero()
    if rank < n:
        return rank, ring.zero()
    d = M[n - 1][n - 1]
    return rank, (-d if sign < 0 else d)


def rank_by_minors(rows: Sequence[Sequence[Poly]], ring: PolyRing) -> int:
    """Reference implementation: largest r with a nonzero r x r minor,
    searched downward by exhaustive enumeration.  Exponential; used as an
    independent oracle for small matrices."""
    grid = as_grid(rows)
    m, n = mat_shape(grid)
    for r in range(min(m, n), 0, -1):
        for minor in all_minors(grid, r, ring):
            if not minor.is_zero():
                return r
    return 0


# ---------------------------------------------------------------------------
# linear algebra over a field
# ---------------------------------------------------------------------------

def rank_over_field(rows: Sequence[Sequence], field: Field) -> int:
    """Gauss elimination rank; pivot = first nonzero entry in a row-major
    scan of the live block."""
    M = [list(r) for r in rows]
    if not M or not M[0]:
        return 0
    live_rows = list(range(len(M)))
    live_cols = list(range(len(M[0])))
    rank = 0
    while live_rows and live_cols:
        piv = None
        for i in live_rows:
            for j in live_cols:
                if not field.is_zero(M[i][j]):
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        pi, pj = piv
        inv = field.inv(M[pi][pj])
        for i in live_rows:
            if i == pi:
                continue
            factor = field.mul(M[i][pj], inv)
            if field.is_zero(factor):
                continue
            for j in live_cols:
                M[i][j] = field.sub(M[i][j], field.mul(factor, M[pi][j]))
        live_rows.remove(pi)
        live_cols.remove(pj)
        rank += 1
    return rank


def generalized_inverse(rows: Sequence[Sequence], field: Field) -> list[list]:
    """G with M*G*M = M, from the row-reduction certificate.

    Row reduce [M | I] to get X with X*M = RREF; if the pivot columns are
    j_1 < .. < j_r then G routes coordinate t of X back into slot j_t.  The
    RREF expresses every column of M through its pivot columns with the same
    coefficients, which is exactly M*G*M = M.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    A = [list(r) + [field.one if i == t else field.zero for t in range(m)] for i, r in enumerate(rows)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for j in range(n):
        piv = None
        for i in range(r, m):
            if not field.is_zero(A[i][j]):
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = field.inv(A[r][j])
        A[r] = [field.mul(v, inv) for v in A[r]]
        for i in range(m):
            if i != r and not field.is_zero(A[i][j]):
                f = A[i][j]
                A[i] = [field.sub(v, field.mul(f, w)) for v, w in zip(A[i], A[r])]
        pivots.append((r, j))
        r += 1
    G = [[field.zero] * m for _ in range(n)]
    for t, j in pivots:
        G[j] = A[t][n:]
    return G
