"""Exact linear algebra over polynomial rings and fields.

Oracle layout: Bareiss determinants against cofactor expansion and against
sympy; elimination rank against exhaustive minor search; field rank against
matrices of planted rank r built as products of r-column factors.
"""

import random
from fractions import Fraction

import pytest
import sympy

from ghrv.errors import NotSquare
from ghrv.fields import QQ, prime_field
from ghrv.matrix import (
    all_minors,
    block_matrix,
    det,
    generalized_inverse,
    identity,
    mat_mul,
    mat_transpose,
    rank_by_minors,
    rank_over_domain,
    rank_over_field,
    zero_matrix,
)
from ghrv.poly import Poly, PolyRing


@pytest.fixture(scope="module")
def ring():
    return PolyRing(prime_field(5), ("a", "b"), ("t",))


def _random_poly(ring, rng, max_terms=3):
    terms = {}
    for _ in range(rng.randrange(max_terms + 1)):
        mono = tuple(rng.randrange(3) for _ in range(ring.nvars))
        c = ring.field.from_int(rng.randrange(ring.field.order))
        if not ring.field.is_zero(c):
            terms[mono] = c
    return Poly(ring, terms)


def _random_grid(ring, rng, m, n, max_terms=3):
    return [[_random_poly(ring, rng, max_terms) for _ in range(n)] for _ in range(m)]


def _cofactor_det(grid, ring):
    n = len(grid)
    if n == 0:
        return ring.one()
    if n == 1:
        return grid[0][0]
    acc = ring.zero()
    for j in range(n):
        sub = [row[:j] + row[j + 1 :] for row in grid[1:]]
        term = grid[0][j] * _cofactor_det(sub, ring)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def test_det_bareiss_matches_cofactor(ring):
    rng = random.Random(47)
    for n in (1, 2, 3, 4, 5):
        for _ in range(6):
            g = _random_grid(ring, rng, n, n, max_terms=2)
            assert det(g, ring) == _cofactor_det(g, ring)


def test_det_matches_sympy_over_qq():
    rq = PolyRing(QQ, ("a", "b"), ())
    syms = sympy.symbols("a b")
    rng = random.Random(53)
    for n in (2, 3, 4):
        for _ in range(4):
            g = []
            for _ in range(n):
                row = []
                for _ in range(n):
                    terms = {}
                    for _ in range(rng.randrange(3)):
                        mono = (rng.randrange(2), rng.randrange(2))
                        c = Fraction(rng.randrange(-4, 5))
                        if c:
                            terms[mono] = c
                    row.append(Poly(rq, terms))
                g.append(row)
            sg = sympy.Matrix([
                [
                    sum(
                        sympy.Rational(c) * syms[0] ** m[0] * syms[1] ** m[1]
                        for m, c in e.terms.items()
                    )
                    for e in row
                ]
                for row in g
            ])
            ours = det(g, rq)
            ours_s = sum(
                sympy.Rational(c) * syms[0] ** m[0] * syms[1] ** m[1] for m, c in ours.terms.items()
            )
            assert sympy.expand(ours_s - sg.det()) == 0


def test_det_requires_square(ring):
    with pytest.raises(NotSquare):
        det([[ring.one(), ring.zero()]], ring)


def test_rank_matches_minor_search(ring):
    rng = random.Random(59)
    for _ in range(25):
        m, n = rng.randrange(1, 5), rng.randrange(1, 5)
        g = _random_grid(ring, rng, m, n, max_terms=2)
        assert rank_over_domain(g, ring) == rank_by_minors(g, ring)


def test_rank_of_outer_products(ring):
    # u * v^T has rank exactly 1 when both are nonzero
    rng = random.Random(61)
    for _ in range(10):
        u = [[_random_poly(ring, rng, 2)] for _ in range(3)]
        v = [[_random_poly(ring, rng, 2) for _ in range(3)]]
        if all(e[0].is_zero() for e in u) or all(e.is_zero() for e in v[0]):
            continue
        g = mat_mul(u, v, ring)
        assert rank_over_domain(g, ring) == 1
        assert rank_by_minors(g, ring) == 1


def test_zero_and_identity_ranks(ring):
    assert rank_over_domain(zero_matrix(ring, 3, 4), ring) == 0
    assert rank_over_domain(identity(ring, 4), ring) == 4
    w = ring.variable("a")
    assert det(identity(ring, 3, w), ring) == w**3


def test_all_minors_counts(ring):
    g = _random_grid(ring, random.Random(67), 3, 4)
    assert len(list(all_minors(g, 2, ring))) == 3 * 6
    assert len(list(all_minors(g, 5, ring))) == 0
    assert list(all_minors(g, 0, ring)) == [ring.one()]


def test_block_matrix_layout(ring):
    a = identity(ring, 2)
    z = zero_matrix(ring, 2, 2)
    g = block_matrix([[a, z], [z, a]])
    assert g == identity(ring, 4)
    assert mat_transpose(g) == g


def test_field_rank_planted(f5):
    rng = random.Random(71)
    for _ in range(30):
        n, r = rng.randrange(2, 6), rng.randrange(0, 3)
        u = [[f5.from_int(rng.randrange(5)) for _ in range(r)] for _ in range(n)]
        v = [[f5.from_int(rng.randrange(5)) for _ in range(n)] for _ in range(r)]
        prod = [
            [sum(u[i][t] * v[t][j] for t in range(r)) % 5 for j in range(n)]
            for i in range(n)
        ]
        got = rank_over_field(prod, f5)
        assert got <= min(r, rank_over_field(u, f5), rank_over_field(v, f5))
        if rank_over_field(u, f5) == r and rank_over_field(v, f5) == r:
            assert got == r


def test_field_rank_matches_lifted_minor_rank(f5):
    # independent oracle: embed scalars as constant polynomials and run the
    # exhaustive minor search over the polynomial ring
    lift = PolyRing(f5, ("t",), ())
    rng = random.Random(73)
    for _ in range(20):
        m, n = rng.randrange(1, 5), rng.randrange(1, 5)
        g = [[f5.from_int(rng.randrange(5)) for _ in range(n)] for _ in range(m)]
        lifted = [[lift.const(e) for e in row] for row in g]
        assert rank_over_field(g, f5) == rank_by_minors(lifted, lift)


def test_generalized_inverse_identity(f5):
    rng = random.Random(79)
    for _ in range(40):
        m, n = rng.randrange(1, 6), rng.randrange(1, 6)
        a = [[f5.from_int(rng.randrange(5)) for _ in range(n)] for _ in range(m)]
        g = generalized_inverse(a, f5)
        ag = [[sum(a[i][s] * g[s][j] for s in range(n)) % 5 for j in range(m)] for i in range(m)]
        aga = [[sum(ag[i][s] * a[s][j] for s in range(m)) % 5 for j in range(n)] for i in range(m)]
        assert aga == a
