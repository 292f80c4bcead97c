"""Sparse multivariate polynomials over an exact coefficient field.

The ambient ring is k[x_1..x_c, y_1..y_d] with the internal grading
deg x_i = 1, deg y_j = 0 (the x-degree).  A monomial is an exponent tuple
indexed by (x_1, .., x_c, y_1, .., y_d); a polynomial is a dict mapping
monomials to nonzero coefficients.  Monomials are ordered by graded reverse
lexicographic order with x_1 > .. > x_c > y_1 > .. > y_d, which every
leading-term computation and the canonical printed form use.

Zero has no terms; its degree queries return NEG_INF.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping

from .errors import RingMismatch
from .fields import Field, embedding

NEG_INF = float("-inf")


def order_key(mono: tuple[int, ...]):
    """Sort key realizing grevlex: compare total degree, then reversed
    negated exponents lexicographically.  Larger key = larger monomial."""
    return (sum(mono), tuple(-e for e in reversed(mono)))


def monomial_divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_div(b: tuple[int, ...], a: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(y - x for x, y in zip(a, b))


def monomial_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


class PolyRing:
    """k[x_1..x_c, y_1..y_d]; owns variable names and the coefficient field."""

    __slots__ = ("field", "xvars", "yvars", "vars", "_index")

    def __init__(self, field: Field, xvars: Iterable[str], yvars: Iterable[str]):
        self.field = field
        self.xvars = tuple(xvars)
        self.yvars = tuple(yvars)
        self.vars = self.xvars + self.yvars
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        for name in self.vars:
            if not name.isidentifier():
                raise ValueError(f"bad variable name {name!r}")
        self._index = {name: i for i, name in enumerate(self.vars)}

    # -- basic data -----------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def c(self) -> int:
        return len(self.xvars)

    def var_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"{name!r} is not a variable of {self}") from None

    def x_degree_of(self, mono: tuple[int, ...]) -> int:
        return sum(mono[: self.c])

    # -- element constructors --------------------------------------------
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {(0,) * self.nvars: self.field.one})

    def const(self, c) -> "Poly":
        if self.field.is_zero(c):
            return self.zero()
        return Poly(self, {(0,) * self.nvars: c})

    def from_int(self, n: int) -> "Poly":
        return self.const(self.field.from_int(n))

    def variable(self, name: str) -> "Poly":
        i = self.var_index(name)
        mono = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Poly(self, {mono: self.field.one})

    def monomial(self, mono: tuple[int, ...], coeff=None) -> "Poly":
        if coeff is None:
            coeff = self.field.one
        if self.field.is_zero(coeff):
            return self.zero()
        return Poly(self, {tuple(mono): coeff})

    def coerce(self, value) -> "Poly":
        if isinstance(value, Poly):
            if value.ring is not self and value.ring != self:
                raise RingMismatch(f"{value!r} lives in {value.ring}, not {self}")
            return value
        if isinstance(value, int):
            return self.from_int(value)
        return self.const(value)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.field == self.field
            and other.xvars == self.xvars
            and other.yvars == self.yvars
        )

    def __hash__(self):
        return hash((self.field, self.xvars, self.yvars))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.vars)}]"


class Poly:
    """Immutable sparse polynomial; arithmetic goes through the ring's field."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, ...], object]):
        self.ring = ring
        fld = ring.field
        self.terms = {m: c for m, c in terms.items() if not fld.is_zero(c)}

    # -- predicates and degree data ---------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(m) for m in self.terms)

    def x_degree(self):
        if not self.terms:
            return NEG_INF
        xd = self.ring.x_degree_of
        return max(xd(m) for m in self.terms)

    def is_x_homogeneous(self) -> bool:
        xd = self.ring.x_degree_of
        degs = {xd(m) for m in self.terms}
        return len(degs) <= 1

    def x_homogeneous_degree(self):
        """The common x-degree, NEG_INF for zero; ValueError if inhomogeneous."""
        xd = self.ring.x_degree_of
        degs = {xd(m) for m in self.terms}
        if not degs:
            return NEG_INF
        if len(degs) > 1:
            raise ValueError(f"{self} is not x-homogeneous")
        return degs.pop()

    def leading_monomial(self) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order_key)

    def leading_coeff(self):
        return self.terms[self.leading_monomial()]

    def constant_term(self):
        zero_mono = (0,) * self.ring.nvars
        return self.terms.get(zero_mono, self.ring.field.zero)

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def mentions(self, name: str) -> bool:
        i = self.ring.var_index(name)
        return any(m[i] for m in self.terms)

    def degree_in(self, name: str):
        i = self.ring.var_index(name)
        if not self.terms:
            return NEG_INF
        return max(m[i] for m in self.terms)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring is self.ring or other.ring == self.ring:
                return other
            raise RingMismatch(f"operands in different rings: {self.ring} vs {other.ring}")
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        fld = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                out[m] = fld.add(out[m], c)
            else:
                out[m] = c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        fld = self.ring.field
        return Poly(self.ring, {m: fld.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        fld = self.ring.field
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_mul(m1, m2)
                c = fld.mul(c1, c2)
                if m in out:
                    out[m] = fld.add(out[m], c)
                else:
                    out[m] = c
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        acc = self.ring.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def scale(self, c) -> "Poly":
        fld = self.ring.field
        return Poly(self.ring, {m: fld.mul(coef, c) for m, coef in self.terms.items()})

    def mul_monomial(self, mono: tuple[int, ...], coeff) -> "Poly":
        fld = self.ring.field
        return Poly(
            self.ring,
            {monomial_mul(m, mono): fld.mul(c, coeff) for m, c in self.terms.items()},
        )

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coeff()))

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.from_int(other)
        return (
            isinstance(other, Poly)
            and (other.ring is self.ring or other.ring == self.ring)
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- substitution and base change ---------------------------------------
    def substitute(self, bindings: Mapping[str, object]) -> "Poly":
        """Simultaneous substitution; values are coerced into this ring."""
        ring = self.ring
        bound: dict[int, Poly] = {}
        for name, value in bindings.items():
            bound[ring.var_index(name)] = ring.coerce(value)
        if not bound:
            return self
        pow_cache: dict[tuple[int, int], Poly] = {}

        def power(i: int, e: int) -> Poly:
            key = (i, e)
            if key not in pow_cache:
                pow_cache[key] = bound[i] ** e
            return pow_cache[key]

        total = ring.zero()
        for m, c in self.terms.items():
            residual = tuple(0 if i in bound else e for i, e in enumerate(m))
            acc = ring.monomial(residual, c)
            for i, e in enumerate(m):
                if e and i in bound:
                    acc = acc * power(i, e)
            total = total + acc
        return total

    def map_coefficients(self, target: PolyRing, fn: Callable | None = None) -> "Poly":
        """Move to a ring with the same variables over another field."""
        if target.vars != self.ring.vars:
            raise RingMismatch(f"variable mismatch: {self.ring} vs {target}")
        if fn is None:
            fn = embedding(self.ring.field, target.field)
        return Poly(target, {m: fn(c) for m, c in self.terms.items()})

    def evaluate(self, assignment: Mapping[str, object], target: Field | None = None):
        """Full evaluation to a scalar; assignment must cover every mentioned
        variable.  With `target`, coefficients go through the field embedding."""
        ring = self.ring
        fld = target if target is not None else ring.field
        emb = embedding(ring.field, fld)
        values: dict[int, object] = {}
        for name, v in assignment.items():
            values[ring.var_index(name)] = v
        acc = fld.zero
        for m, c in self.terms.items():
            term = emb(c)
            for i, e in enumerate(m):
                if e:
                    if i not in values:
                        raise ValueError(f"no value for {ring.vars[i]}")
                    term = fld.mul(term, fld.pow(values[i], e))
            acc = fld.add(acc, term)
        return acc

    # -- printing -----------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: order_key(kv[0]), reverse=True)

    def to_string(self, strict: bool = True) -> str:
        """Canonical form: terms in descending monomial order, grammar-valid.

        Strict mode insists every coefficient has a grammar representation
        (always true for data built from expressions); non-strict falls back
        to a display form for extension elements outside the prime subfield.
        """
        if not self.terms:
            return "0"
        fld = self.ring.field
        fmt = fld.format_strict if strict else fld.format
        chunks: list[str] = []
        for m, c in self.sorted_terms():
            text = fmt(c)
            negative = text.startswith("-")
            if negative:
                text = text[1:]
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(self.ring.vars[i])
                elif e > 1:
                    factors.append(f"{self.ring.vars[i]}^{e}")
            if factors:
                body = "*".join(factors)
                if text != "1":
                    body = f"{text}*{body}"
            else:
                body = text
            if not chunks:
                chunks.append(f"-{body}" if negative else body)
            else:
                chunks.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(chunks)

    def __str__(self):
        return self.to_string(strict=False)

    def __repr__(self):
        return f"<{self.to_string(strict=False)}>"


def divide_single(p: Poly, d: Poly) -> tuple[Poly, Poly]:
    """Division with remainder by one divisor: p = q*d + r where no term of r
    is divisible by LM(d).  Deterministic: always cancels the current leading
    term of the running dividend."""
    if d.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    ring = p.ring
    if d.ring != ring:
        raise RingMismatch("divisor in a different ring")
    fld = ring.field
    lm = d.leading_monomial()
    lc = d.leading_coeff()
    lc_inv = fld.inv(lc)
    work = dict(p.terms)
    q: dict = {}
    r: dict = {}
    while work:
        m = max(work, key=order_key)
        c = work.pop(m)
        if monomial_divides(lm, m):
            factor_mono = monomial_div(m, lm)
            factor_coeff = fld.mul(c, lc_inv)
            q[factor_mono] = fld.add(q.get(factor_mono, fld.zero), factor_coeff)
            for dm, dc in d.terms.items():
                if dm == lm:
                    continue
                mm = monomial_mul(dm, factor_mono)
                cc = fld.neg(fld.mul(dc, factor_coeff))
                if mm in work:
                    s = fld.add(work[mm], cc)
                    if fld.is_zero(s):
                        del work[mm]
                    else:
                        work[mm] = s
                elif not fld.is_zero(cc):
                    work[mm] = cc
        else:
            r[m] = c
    return Poly(ring, q), Poly(ring, r)


def exact_div(p: Poly, d: Poly) -> Poly:
    """Quotient p/d when the division is exact; ArithmeticError otherwise.
    This is the denominator-clearing step of fraction-free elimination."""
    if p.is_zero():
        return p
    q, r = divide_single(p, d)
    if not r.is_zero():
        raise ArithmeticError(f"inexact division: remainder {r}")
    return q
