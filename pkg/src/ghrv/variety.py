"""Rank varieties of periodic complexes.

For a valid pair (A, B) of size n over R the complex is contractible iff both
differentials have the expected minor ideals full, and the failure locus in
projective (c-1)-space is cut out by the images in k[x] of the critical minor
ideals:

    V(C) = Z(image I_rA(A)) union Z(image I_rB(B)),   rA + rB = n.

Ranks over R are computed by eliminating x_1: inverting f_1 identifies
R[1/f_1] with a localized polynomial ring in (x_2..x_c, y), sending x_1 to
-(f_2 x_2 + .. + f_c x_c)/f_1, and row scaling by powers of f_1 clears the
denominators without changing the rank.  Fraction-free elimination then gives
the rank.  The exhaustive descending minor search is kept in matrix.py as the
oracle this path is tested against.

Membership of a point is evaluation of generators, optionally through a
deterministic field embedding, so a variety computed over GF(p) can be
scanned over GF(p^j) towers.  Contractibility at a point specializes both
matrices along chosen preimages, reduces to the residue field, and tests
rank(A) + rank(B) = n; the verdict does not depend on the preimages.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .complexes import PeriodicComplex
from .errors import InvalidComplex, NotContractible, UnsupportedField
from .fields import ExtensionField, Field, PrimeField, make_extension
from .matrix import all_minors, generalized_inverse, identity, mat_mul, rank_over_domain, rank_over_field
from .poly import Poly, PolyRing, order_key
from .ring import Alpha, RingSpec, make_alpha, residue, specialize


# ---------------------------------------------------------------------------
# rank over R
# ---------------------------------------------------------------------------

def _eliminate_x1(rows, ring: RingSpec):
    """Image of the grid under x_1 -> -(f_2 x_2 + .. )/f_1 with per-row
    denominator clearing; entries stay in the ambient ring but are x_1-free."""
    amb = ring.ambient
    x1 = ring.xvars[0]
    f1 = ring.f[0]
    u = f1 * amb.variable(x1) - ring.w  # the x_1-free part, negated
    out = []
    for row in rows:
        degs = [e.degree_in(x1) for e in row]
        top = max((d for d in degs if d >= 0), default=0)
        top = max(int(top) if top >= 0 else 0, 0)
        new_row = []
        for e in row:
            if e.is_zero():
                new_row.append(e)
                continue
            acc = amb.zero()
            idx = amb.var_index(x1)
            by_exp: dict[int, dict] = {}
            for m, c in e.terms.items():
                t = m[idx]
                stripped = tuple(0 if k == idx else v for k, v in enumerate(m))
                by_exp.setdefault(t, {})[stripped] = c
            for t, terms in by_exp.items():
                piece = Poly(amb, terms) * u**t * f1 ** (top - t)
                acc = acc + piece
            new_row.append(acc)
        out.append(tuple(new_row))
    return tuple(out)


def rank_over_R(rows, ring: RingSpec) -> int:
    """Rank of a matrix of representatives as a matrix over R."""
    nf_rows = [[ring.normal_form(e) for e in row] for row in rows]
    if not nf_rows or not nf_rows[0]:
        return 0
    return rank_over_domain(_eliminate_x1(nf_rows, ring), ring.ambient)


def rank_over_R_by_minors(rows, ring: RingSpec) -> int:
    """Oracle path: largest r with some r x r minor nonzero mod w,
    descending exhaustive search.  Exponential; small matrices only."""
    nf_rows = [[ring.normal_form(e) for e in row] for row in rows]
    m = len(nf_rows)
    n = len(nf_rows[0]) if m else 0
    for r in range(min(m, n), 0, -1):
        for minor in all_minors(nf_rows, r, ring.ambient):
            if not ring.normal_form(minor).is_zero():
                return r
    return 0


# ---------------------------------------------------------------------------
# ideals and zero sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdealGens:
    """Homogeneous ideal of k[x] by monic generators in canonical order; the
    empty list is the zero ideal (zero set = all of projective space)."""

    ring: PolyRing
    gens: tuple[Poly, ...]

    @property
    def is_unit(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.gens)

    def describe(self) -> str:
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(g.to_string(strict=False) for g in self.gens) + ")"


def _canonical_gens(ring: PolyRing, gens) -> tuple[Poly, ...]:
    seen = {}
    for g in gens:
        if g.is_zero():
            continue
        g = g.monic()
        seen[frozenset(g.terms.items())] = g
    ordered = sorted(
        seen.values(),
        key=lambda g: (
            order_key(g.leading_monomial()),
            sorted(g.terms.items(), key=lambda kv: order_key(kv[0]), reverse=True).__repr__(),
        ),
        reverse=True,
    )
    if any(g.is_constant() for g in ordered):
        return (ring.one(),)
    return tuple(ordered)


def minor_ideal_image(rows, r: int, ring: RingSpec) -> IdealGens:
    """Image in k[x] of the ideal of r x r minors, taken mod w.  r <= 0 gives
    the unit ideal by the usual convention I_0 = (1)."""
    if r <= 0:
        return IdealGens(ring.kx, (ring.kx.one(),))
    nf_rows = [[ring.normal_form(e) for e in row] for row in rows]
    gens = []
    for minor in all_minors(nf_rows, r, ring.ambient):
        img = ring.image_in_kx(ring.normal_form(minor))
        if not img.is_zero():
            gens.append(img)
    return IdealGens(ring.kx, _canonical_gens(ring.kx, gens))


@dataclass(frozen=True)
class ZeroSetUnion:
    """Finite union of zero sets of homogeneous ideals in projective
    (c-1)-space over the base field of `ring`."""

    ring: PolyRing
    components: tuple[IdealGens, ...]

    def describe(self) -> str:
        return " union ".join(f"Z{c.describe()}" for c in self.components)


def rank_variety(C: PeriodicComplex, ring: RingSpec | None = None) -> ZeroSetUnion:
    """V(C) as the union of the two critical minor-ideal zero sets.  The two
    components are kept separate; they are not intersected or combined."""
    ring = ring if ring is not None else C.ring
    r_a = rank_over_R(C.A.entries, ring)
    r_b = rank_over_R(C.B.entries, ring)
    if r_a + r_b != C.size:
        raise InvalidComplex(
            f"rank(A) + rank(B) = {r_a} + {r_b} != {C.size}; pair is not a valid complex"
        )
    return ZeroSetUnion(
        ring.kx,
        (
            minor_ideal_image(C.A.entries, r_a, ring),
            minor_ideal_image(C.B.entries, r_b, ring),
        ),
    )


# ---------------------------------------------------------------------------
# projective points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjPoint:
    """Point of projective space, normalized so the first nonzero coordinate
    is 1; equality of tuples is then equality of points."""

    field: Field
    coords: tuple

    def __str__(self):
        return "(" + ":".join(self.field.format(a) for a in self.coords) + ")"


def proj_point(field: Field, coords) -> ProjPoint:
    coords = tuple(field.from_int(a) if isinstance(a, int) else a for a in coords)
    lead = next((a for a in coords if not field.is_zero(a)), None)
    if lead is None:
        raise ValueError("the zero tuple is not a projective point")
    inv = field.inv(lead)
    return ProjPoint(field, tuple(field.mul(a, inv) for a in coords))


def enumerate_points(field: Field, c: int) -> list[ProjPoint]:
    """All of P^(c-1) over a finite field: leading-one position ascending,
    trailing coordinates in field element order."""
    if not field.finite:
        raise UnsupportedField("point enumeration needs a finite field")
    pts = []
    elems = list(field.elements())
    one = field.one
    zero = field.zero
    for lead in range(c):
        for rest in product(elems, repeat=c - lead - 1):
            pts.append(ProjPoint(field, (zero,) * lead + (one,) + rest))
    return pts


def membership(V: ZeroSetUnion, point: ProjPoint) -> bool:
    """Evaluation test; scaling invariance holds because generators are
    homogeneous.  The point may live in an extension of V's field."""
    names = V.ring.vars
    assignment = dict(zip(names, point.coords))
    for comp in V.components:
        if all(
            point.field.is_zero(g.evaluate(assignment, target=point.field))
            for g in comp.gens
        ):
            return True
    return False


def extension_of(field: Field, j: int) -> Field:
    """The degree-j extension of a finite field, built deterministically;
    j = 1 returns the field itself."""
    if j <= 1:
        return field
    if isinstance(field, PrimeField):
        return make_extension(field.p, j, bound=j)
    if isinstance(field, ExtensionField):
        return make_extension(field.p, field.e * j, bound=field.e * j)
    raise UnsupportedField(f"cannot extend {field}")


@dataclass(frozen=True)
class EmptinessVerdict:
    empty_up_to: bool
    bound: int
    witness: ProjPoint | None = None
    witness_degree: int | None = None

    def describe(self) -> str:
        if self.empty_up_to:
            return f"no points over extensions of degree <= {self.bound}"
        return f"point {self.witness} found over the degree-{self.witness_degree} extension"


def is_empty(V: ZeroSetUnion, bound: int = 4) -> EmptinessVerdict:
    """Bounded semi-decision: scan P^(c-1)(F_(q^j)) for j = 1..bound in
    deterministic order and report the first witness, if any."""
    base = V.ring.field
    if not base.finite:
        raise UnsupportedField("emptiness scan needs a finite base field")
    c = len(V.ring.vars)
    for j in range(1, bound + 1):
        fld = extension_of(base, j)
        for pt in enumerate_points(fld, c):
            if membership(V, pt):
                return EmptinessVerdict(False, bound, witness=pt, witness_degree=j)
    return EmptinessVerdict(True, bound)


# ---------------------------------------------------------------------------
# contractibility at a point
# ---------------------------------------------------------------------------

def _as_alpha(C: PeriodicComplex, alpha) -> Alpha:
    if isinstance(alpha, Alpha):
        return alpha
    if isinstance(alpha, ProjPoint):
        return make_alpha(C.ring, alpha.coords, field=alpha.field)
    return make_alpha(C.ring, tuple(alpha))


def residue_matrices(C: PeriodicComplex, alpha) -> tuple[list[list], list[list], Alpha]:
    """Specialize both differentials along the preimages, then reduce y -> 0;
    returns field-scalar grids over alpha's field."""
    alpha = _as_alpha(C, alpha)
    ring = C.ring
    a_bar = [[residue(specialize(e, alpha, ring), ring) for e in row] for row in C.A.entries]
    b_bar = [[residue(specialize(e, alpha, ring), ring) for e in row] for row in C.B.entries]
    return a_bar, b_bar, alpha

def residue_ranks(C: PeriodicComplex, alpha) -> tuple[int, int]:
    a_bar, b_bar, alpha = residue_matrices(C, alpha)
    fld = alpha.field
    return rank_over_field(a_bar, fld), rank_over_field(b_bar, fld)


def contractible_at(C: PeriodicComplex, alpha) -> bool:
    """True iff the specialized complex at alpha is contractible: the residue
    ranks of the two differentials partition the size."""
    r_a, r_b = residue_ranks(C, alpha)
    return r_a + r_b == C.size


@dataclass
class ContractionData:
    """Explicit null-homotopy at contraction index 0: constant matrices s0
    (into odd) and s_minus1 (from even shifted) with A s0 + s_minus1 B = I
    at the residue level, hence invertible over the local specialized ring."""

    alpha: Alpha
    s0: list[list]
    s_minus1: list[list]
    index: int = 0
    verified: bool = False


def construct_contraction(C: PeriodicComplex, alpha) -> ContractionData:
    """Build contraction data from generalized inverses of the residue
    matrices; NotContractible at points of the variety."""
    a_bar, b_bar, alpha = residue_matrices(C, alpha)
    fld = alpha.field
    n = C.size
    if rank_over_field(a_bar, fld) + rank_over_field(b_bar, fld) != n:
        raise NotContractible(f"{alpha} lies in the rank variety")
    g_a = generalized_inverse(a_bar, fld)
    e = mat_mul_field(a_bar, g_a, fld)
    g_b = generalized_inverse(b_bar, fld)
    one_minus_e = [
        [fld.sub(fld.one if i == j else fld.zero, e[i][j]) for j in range(n)] for i in range(n)
    ]
    s_minus1 = mat_mul_field(one_minus_e, g_b, fld)
    composite = mat_add_field(mat_mul_field(a_bar, g_a, fld), mat_mul_field(s_minus1, b_bar, fld), fld)
    ok = all(
        composite[i][j] == (fld.one if i == j else fld.zero) for i in range(n) for j in range(n)
    )
    if not ok:  # pragma: no cover
        raise NotContractible("section construction failed")
    data = ContractionData(alpha=alpha, s0=g_a, s_minus1=s_minus1, verified=False)
    data.verified = verify_contraction(C, data)
    return data


def verify_contraction(C: PeriodicComplex, data: ContractionData) -> bool:
    """Lift the constant section over the specialized ring and check the
    composite A s0 + s_minus1 B is a unit there (residue = identity)."""
    ring = C.ring
    alpha = data.alpha
    amb = ring.ambient_over(alpha.field)
    a_spec = [[specialize(e, alpha, ring) for e in row] for row in C.A.entries]
    b_spec = [[specialize(e, alpha, ring) for e in row] for row in C.B.entries]
    s0 = [[amb.const(v) for v in row] for row in data.s0]
    sm1 = [[amb.const(v) for v in row] for row in data.s_minus1]
    total = mat_mul(a_spec, s0, amb)
    other = mat_mul(sm1, b_spec, amb)
    n = C.size
    fld = alpha.field
    for i in range(n):
        for j in range(n):
            entry = total[i][j] + other[i][j]
            want = fld.one if i == j else fld.zero
            if entry.constant_term() != want:
                return False
    return True


def mat_mul_field(a, b, fld: Field):
    m, k, n = len(a), len(b), len(b[0]) if b else 0
    out = [[fld.zero] * n for _ in range(m)]
    for i in range(m):
        for t in range(k):
            x = a[i][t]
            if fld.is_zero(x):
                continue
            row_b = b[t]
            row_o = out[i]
            for j in range(n):
                row_o[j] = fld.add(row_o[j], fld.mul(x, row_b[j]))
    return out


def mat_add_field(a, b, fld: Field):
    return [[fld.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


# ---------------------------------------------------------------------------
# preimage independence
# ---------------------------------------------------------------------------

@dataclass
class PerturbationReport:
    alpha: Alpha
    trials: int
    seed: int
    baseline: bool
    verdicts: list[bool]

    @property
    def stable(self) -> bool:
        return all(v == self.baseline for v in self.verdicts)


def preimage_independence_check(C: PeriodicComplex, alpha, trials: int, seed: int) -> PerturbationReport:
    """Re-test contractibility under seeded random perturbations of the
    preimages by y-terms of degree 1 and 2; the verdict must never move."""
    alpha = _as_alpha(C, alpha)
    fld = alpha.field
    if not fld.finite:
        raise UnsupportedField("perturbation sampling needs a finite field")
    ring = C.ring
    amb = ring.ambient_over(fld)
    baseline = contractible_at(C, alpha)
    rng = random.Random(seed)
    elems = list(fld.elements())

    monos = []
    nx, nd = ring.c, ring.d
    for i in range(nd):
        m = [0] * (nx + nd)
        m[nx + i] = 1
        monos.append(tuple(m))
    for i in range(nd):
        for j in range(i, nd):
            m = [0] * (nx + nd)
            m[nx + i] += 1
            m[nx + j] += 1
            monos.append(tuple(m))

    verdicts = []
    for _ in range(trials):
        preimages = []
        for a in alpha.point:
            p = amb.const(a)
            for m in monos:
                coef = elems[rng.randrange(len(elems))]
                if not fld.is_zero(coef):
                    p = p + amb.monomial(m, coef)
            preimages.append(p)
        perturbed = make_alpha(ring, alpha.point, preimages=tuple(preimages), field=fld)
        verdicts.append(contractible_at(C, perturbed))
    return PerturbationReport(alpha, trials, seed, baseline, verdicts)
