"""The generic hypersurface ring R = Q[x_1..x_c]/(w), w = f_1 x_1 + .. + f_c x_c.

Q is modeled as the polynomial ring k[y_1..y_d]; locality of Q enters only
through the residue map y -> 0 and the unit test "constant term nonzero", so
no localized arithmetic is ever materialized.  The ambient ring P = Q[x] is
poly.PolyRing with the x-block first; R-elements are represented by their
normal form under division by w (grevlex leading term), which is a canonical
coset representative because division by a single polynomial is.

The f_i must be nonconstant (classes in the maximal ideal); when every f_i is
a monomial, the regular-sequence hypothesis is certified by pairwise
coprimality, otherwise it is recorded as unverified and trusted.

Specialization at a point alpha with chosen preimages a_i in K[y] is the ring
map x_i -> a_i; reps land in K[y] and the residue map then evaluates y -> 0.
Composing the two equals evaluating at (x, y) = (alpha, 0) whenever the
preimages are constants.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BadArity,
    NotInMaximalIdeal,
    NotRegularSequence,
    RingMismatch,
    VariableLeak,
)
from .fields import Field, embedding
from .poly import Poly, PolyRing, divide_single


class RingSpec:
    """Immutable description of R plus its ambient rings."""

    def __init__(self, field: Field, yvars: tuple[str, ...], xvars: tuple[str, ...],
                 f: tuple[Poly, ...], regularity_verified: bool):
        self.field = field
        self.yvars = yvars
        self.xvars = xvars
        self.ambient = PolyRing(field, xvars, yvars)
        self.kx = PolyRing(field, xvars, ())
        self.f = f
        self.regularity_verified = regularity_verified
        w = self.ambient.zero()
        for name, fi in zip(xvars, f):
            w = w + self.ambient.variable(name) * fi
        self.w = w

    @property
    def c(self) -> int:
        return len(self.xvars)

    @property
    def d(self) -> int:
        return len(self.yvars)

    def parse(self, text: str) -> Poly:
        from .parser import parse_poly

        return parse_poly(self.ambient, text)

    def coerce(self, value) -> Poly:
        if isinstance(value, RElem):
            return value.rep
        if isinstance(value, str):
            return self.parse(value)
        return self.ambient.coerce(value)

    def normal_form(self, p) -> Poly:
        """Canonical representative of p mod w."""
        p = self.coerce(p)
        return divide_single(p, self.w)[1]

    def element(self, value) -> "RElem":
        return RElem(self.normal_form(value))

    def image_in_kx(self, p) -> Poly:
        """The map R -> k[x] killing every y; well defined on classes since
        each term of w has positive y-degree."""
        p = self.coerce(p)
        c = self.c
        out: dict = {}
        fld = self.field
        for m, coef in p.terms.items():
            if any(m[c:]):
                continue
            key = m[:c]
            if key in out:
                out[key] = fld.add(out[key], coef)
            else:
                out[key] = coef
        return Poly(self.kx, out)

    def ambient_over(self, field: Field) -> PolyRing:
        """Same variables over an extension coefficient field."""
        if field == self.field:
            return self.ambient
        embedding(self.field, field)  # raises RingMismatch if incompatible
        return PolyRing(field, self.xvars, self.yvars)

    def __eq__(self, other):
        return (
            isinstance(other, RingSpec)
            and other.field == self.field
            and other.xvars == self.xvars
            and other.yvars == self.yvars
            and other.f == self.f
        )

    def __hash__(self):
        return hash((self.field, self.xvars, self.yvars, self.f))

    def __repr__(self):
        fs = ", ".join(str(fi) for fi in self.f)
        return f"{self.field}[{', '.join(self.yvars)}][{', '.join(self.xvars)}] / (w), f = ({fs})"


@dataclass(frozen=True)
class RElem:
    """An element of R, stored as the canonical normal-form representative."""

    rep: Poly

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __str__(self):
        return str(self.rep)


def make_ring(field: Field, yvars, xvars, f) -> RingSpec:
    """Validate and build the hypersurface data.

    f entries may be Poly (in the ambient ring) or expression strings; they
    must involve only y-variables and have zero constant term.  Monomial
    coefficient sequences are certified regular via pairwise coprimality;
    anything else is recorded as unverified.
    """
    xvars = tuple(xvars)
    yvars = tuple(yvars)
    if len(xvars) < 2:
        raise BadArity(f"need at least two x-variables, got {len(xvars)}")
    ambient = PolyRing(field, xvars, yvars)  # validates names
    if len(f) != len(xvars):
        raise ValueError(f"expected {len(xvars)} coefficients f_i, got {len(f)}")

    from .parser import parse_poly

    polys: list[Poly] = []
    for fi in f:
        p = parse_poly(ambient, fi) if isinstance(fi, str) else ambient.coerce(fi)
        polys.append(p)

    c = len(xvars)
    for name, p in zip(xvars, polys):
        if p.is_zero():
            raise NotRegularSequence("a zero coefficient is never a regular element")
        for m in p.terms:
            if any(m[:c]):
                raise VariableLeak(f"coefficient for {name} mentions an x-variable")
        if not field.is_zero(p.constant_term()):
            raise NotInMaximalIdeal(f"coefficient for {name} has nonzero constant term")

    verified = all(len(p.terms) == 1 for p in polys)
    if verified:
        supports = []
        for p in polys:
            (mono,) = p.terms
            supports.append({i for i, e in enumerate(mono) if e})
        for i in range(len(supports)):
            for j in range(i + 1, len(supports)):
                if supports[i] & supports[j]:
                    raise NotRegularSequence(
                        f"monomial coefficients {polys[i]} and {polys[j]} share a variable"
                    )
    return RingSpec(field, yvars, xvars, tuple(polys), verified)


@dataclass(frozen=True)
class Alpha:
    """A nonzero point of K^c together with chosen preimages in K[y].

    Preimage i is a y-only polynomial whose constant term is coordinate i;
    the defaults are the constants themselves.  Every downstream verdict is
    independent of the choice, which the perturbation harness checks.
    """

    field: Field
    point: tuple
    preimages: tuple[Poly, ...]

    def __str__(self):
        return "(" + ", ".join(self.field.format(a) for a in self.point) + ")"


def make_alpha(ring: RingSpec, coords, preimages=None, field: Field | None = None) -> Alpha:
    """Validate point data against the ring; coordinates may be ints (mapped
    through the coefficient field) or scalars of `field`."""
    fld = field if field is not None else ring.field
    emb = embedding(ring.field, fld)  # compatibility check
    del emb
    if len(coords) != ring.c:
        raise ValueError(f"expected {ring.c} coordinates, got {len(coords)}")
    point = tuple(fld.from_int(a) if isinstance(a, int) else a for a in coords)
    if all(fld.is_zero(a) for a in point):
        raise ValueError("the zero tuple is not a point")
    ambient = ring.ambient_over(fld)
    if preimages is None:
        lifted = tuple(ambient.const(a) for a in point)
    else:
        if len(preimages) != ring.c:
            raise ValueError(f"expected {ring.c} preimages, got {len(preimages)}")
        from .parser import parse_poly

        lifted = []
        for a, pre in zip(point, preimages):
            p = parse_poly(ambient, pre) if isinstance(pre, str) else ambient.coerce(pre)
            cdx = ring.c
            if any(any(m[:cdx]) for m in p.terms):
                raise VariableLeak(f"preimage {p} mentions an x-variable")
            if p.constant_term() != a:
                raise ValueError(
                    f"preimage {p} has constant term {fld.format(p.constant_term())}, "
                    f"expected {fld.format(a)}"
                )
            lifted.append(p)
        lifted = tuple(lifted)
    return Alpha(fld, point, lifted)


def specialize(value, alpha: Alpha, ring: RingSpec) -> Poly:
    """Apply x_i -> a_i to a representative; result is a y-only polynomial
    over alpha's field, representing the image in the specialized ring."""
    p = ring.coerce(value)
    ambient = ring.ambient_over(alpha.field)
    if ambient is not ring.ambient:
        p = p.map_coefficients(ambient)
    bindings = dict(zip(ring.xvars, alpha.preimages))
    out = p.substitute(bindings)
    if any(any(m[: ring.c]) for m in out.terms):
        raise VariableLeak("specialization left an x-variable behind")  # pragma: no cover
    return out


def specialized_modulus(alpha: Alpha, ring: RingSpec) -> Poly:
    """w after substitution: sum f_i * a_i, the hypersurface equation of the
    specialized ring K[y]/(w_alpha)."""
    return specialize(ring.w, alpha, ring)


def residue(q: Poly, ring: RingSpec):
    """Evaluate a specialized (y-only) polynomial at y = 0, landing in the
    residue field of the local base."""
    cdx = ring.c
    for m in q.terms:
        if any(m[:cdx]):
            raise VariableLeak(f"{q} still mentions an x-variable")
    return q.constant_term()


def is_local_unit(q: Poly) -> bool:
    """Unit test in the local base ring: nonzero constant term."""
    return not q.ring.field.is_zero(q.constant_term())
