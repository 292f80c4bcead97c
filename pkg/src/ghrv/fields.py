"""Exact coefficient fields: GF(p), GF(p^e) and the rationals.

Elements are plain hashable Python values so they can sit in polynomial
coefficient dicts: ints in [0, p) for a prime field, coefficient tuples of
length e for an extension field (coordinates w.r.t. powers of the generator),
and fractions.Fraction for QQ.  The field object owns the arithmetic; values
never know their field.

Extension fields are built deterministically: moduli are enumerated in base-p
coefficient order (constant coefficient fastest) and the first monic degree-e
polynomial that passes the Rabin irreducibility test wins.  Embeddings
between extensions of the same characteristic are found by root search, again
in deterministic element order, so every tower computation is reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .errors import BoundExceeded, FieldError, NotIrreducible, RingMismatch, UnsupportedField


class Field:
    """Common interface; concrete fields fill in the arithmetic."""

    finite: bool
    char: int

    # -- arithmetic ---------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        acc = self.one
        base = a
        while n:
            if n & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            n >>= 1
        return acc

    # -- structure ----------------------------------------------------
    def from_int(self, n: int):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero

    def elements(self) -> Iterator:
        """All elements in deterministic order (finite fields only)."""
        raise UnsupportedField(f"{self} is not finite")

    def format(self, a) -> str:
        """Best-effort display form; see format_strict for grammar-safe output."""
        return str(a)

    def format_strict(self, a) -> str:
        """Grammar-parseable form; raises NotSerializable when none exists."""
        return self.format(a)

    def sort_key(self, a):
        """Total order on elements, used only for deterministic output."""
        raise NotImplementedError


class PrimeField(Field):
    """GF(p), elements are ints reduced to [0, p)."""

    finite = True

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.order = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n: int):
        return n % self.p

    def elements(self):
        return iter(range(self.p))

    def sort_key(self, a):
        return a

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class RationalField(Field):
    """QQ via fractions.Fraction."""

    finite = False
    char = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def from_int(self, n: int):
        return Fraction(n)

    def sort_key(self, a):
        return a

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "QQ"


# ---------------------------------------------------------------------------
# GF(p) polynomial helpers (coefficient lists, low degree first).  Used for
# extension-field arithmetic and the irreducibility certification.
# ---------------------------------------------------------------------------

def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _fp_trim(out)


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] = (out[i + j] + ca * cb) % p
    return _fp_trim(out)


def _fp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        coef = (a[-1] * inv_lead) % p
        if coef:
            q[shift] = coef
            for i, cb in enumerate(b):
                a[shift + i] = (a[shift + i] - coef * cb) % p
        a.pop()
    return _fp_trim(q), _fp_trim(a)


def _fp_mod(a, b, p):
    return _fp_divmod(a, b, p)[1]


def _fp_gcd(a, b, p):
    while b:
        a, b = b, _fp_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _fp_powmod(base, n, mod, p):
    acc = [1]
    base = _fp_mod(base, mod, p)
    while n:
        if n & 1:
            acc = _fp_mod(_fp_mul(acc, base, p), mod, p)
        base = _fp_mod(_fp_mul(base, base, p), mod, p)
        n >>= 1
    return acc


def _prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(coeffs: list[int], p: int) -> bool:
    """Rabin test for a monic polynomial over GF(p), low degree first.

    Certifies both halves: t^(p^e) = t mod m, and for every prime q | e,
    gcd(t^(p^(e/q)) - t, m) = 1.  The divisibility condition alone passes
    products of smaller-degree irreducibles when e is composite.
    """
    e = len(coeffs) - 1
    if e < 1 or coeffs[-1] != 1:
        return False
    t = [0, 1]
    frob = _fp_powmod(t, p**e, coeffs, p)
    if _fp_add(frob, [0, p - 1], p) != []:
        return False
    for q in _prime_factors(e):
        h = _fp_add(_fp_powmod(t, p ** (e // q), coeffs, p), [0, p - 1], p)
        if _fp_gcd(h, coeffs, p) != [1]:
            return False
    return True


class ExtensionField(Field):
    """GF(p^e) = GF(p)[t]/(modulus); elements are length-e coefficient tuples."""

    finite = True

    def __init__(self, p: int, e: int, modulus: tuple[int, ...]):
        if e < 2:
            raise FieldError("extension degree must be at least 2")
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree e")
        self.p = p
        self.e = e
        self.char = p
        self.order = p**e
        self.modulus = tuple(c % p for c in modulus)
        self.zero = (0,) * e
        self.one = tuple([1 % p] + [0] * (e - 1))

    def _wrap(self, coeffs: list[int]) -> tuple[int, ...]:
        return tuple(coeffs + [0] * (self.e - len(coeffs)))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        prod = _fp_mul(_fp_trim(list(a)), _fp_trim(list(b)), self.p)
        return self._wrap(_fp_mod(prod, list(self.modulus), self.p))

    def inv(self, a):
        if all(c == 0 for c in a):
            raise ZeroDivisionError("inverse of 0")
        # extended Euclid in GF(p)[t]
        r0, r1 = list(self.modulus), _fp_trim(list(a))
        s0, s1 = [], [1]
        p = self.p
        while r1:
            q, rem = _fp_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _fp_add(s0, [(-c) % p for c in _fp_mul(q, s1, p)], p)
        lead_inv = pow(r0[-1], p - 2, p)
        return self._wrap([(c * lead_inv) % p for c in s0])

    def from_int(self, n: int):
        return self._wrap([n % self.p])

    def generator(self):
        """The class of t, a root of the modulus."""
        return self._wrap([0, 1])

    def elements(self):
        for n in range(self.order):
            digits = []
            m = n
            for _ in range(self.e):
                digits.append(m % self.p)
                m //= self.p
            yield tuple(digits)

    def element_index(self, a) -> int:
        return sum(c * self.p**i for i, c in enumerate(a))

    def in_prime_subfield(self, a) -> bool:
        return all(c == 0 for c in a[1:])

    def format(self, a) -> str:
        if self.in_prime_subfield(a):
            return str(a[0])
        parts = []
        for i, c in enumerate(a):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                parts.append(f"{head}g" if i == 1 else f"{head}g^{i}")
        return "(" + " + ".join(parts) + ")"

    def format_strict(self, a) -> str:
        from .errors import NotSerializable

        if not self.in_prime_subfield(a):
            raise NotSerializable(
                f"element {self.format(a)} of {self} lies outside the prime "
                "subfield and has no expression-grammar form"
            )
        return str(a[0])

    def sort_key(self, a):
        return self.element_index(a)

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.p == self.p
            and other.e == self.e
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ExtensionField", self.p, self.e, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.e})"


QQ = RationalField()


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def make_extension(p: int, e: int, bound: int = 4) -> ExtensionField:
    """Deterministic GF(p^e): first monic irreducible modulus in base-p order.

    `bound` caps the extension degree for user-facing calls; internal tower
    constructions pass bound=e explicitly.
    """
    prime_field(p)  # validates primality
    if e < 2:
        raise FieldError("make_extension needs degree >= 2; use prime_field for e = 1")
    if e > bound:
        raise BoundExceeded(f"extension degree {e} exceeds bound {bound}")
    for n in range(p**e):
        digits = []
        m = n
        for _ in range(e):
            digits.append(m % p)
            m //= p
        candidate = digits + [1]
        if is_irreducible(candidate, p):
            return ExtensionField(p, e, tuple(candidate))
    raise NotIrreducible(f"no irreducible modulus of degree {e} over GF({p})")  # pragma: no cover


def finite_field(q: int, bound: int = 64) -> Field:
    """GF(q) for a prime power q, prime or extension as needed."""
    p, e = _prime_power(q)
    if e == 1:
        return prime_field(p)
    return make_extension(p, e, bound=bound)


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise FieldError(f"{q} is not a prime power")
            return p, e
    raise FieldError(f"{q} is not a prime power")  # pragma: no cover


def parse_field(text: str) -> Field:
    """Parse "QQ", "GF(q)" or "GF(p^e)" into a field object."""
    s = text.strip()
    if s in ("QQ", "Q"):
        return QQ
    if s.startswith("GF(") and s.endswith(")"):
        body = s[3:-1].strip()
        if "^" in body:
            p_str, e_str = body.split("^", 1)
            p, e = int(p_str), int(e_str)
            return prime_field(p) if e == 1 else make_extension(p, e, bound=max(4, e))
        return finite_field(int(body))
    raise FieldError(f"unrecognized field {text!r}; expected QQ or GF(q)")


def field_name(field: Field) -> str:
    if isinstance(field, RationalField):
        return "QQ"
    if isinstance(field, PrimeField):
        return f"GF({field.p})"
    if isinstance(field, ExtensionField):
        return f"GF({field.order})"
    raise FieldError(f"unknown field {field!r}")


@lru_cache(maxsize=None)
def embedding(src: Field, dst: Field):
    """A field homomorphism src -> dst as a callable, or RingMismatch.

    Identity for equal fields; from_int for a prime field into anything of the
    same characteristic; for extension towers GF(p^m) -> GF(p^(mj)) the image
    of the generator is the first root of src's modulus in dst's element
    order, which pins the embedding deterministically.
    """
    if src == dst:
        return lambda a: a
    if isinstance(src, RationalField) or isinstance(dst, RationalField):
        raise RingMismatch(f"no embedding {src} -> {dst}")
    if src.char != dst.char:
        raise RingMismatch(f"characteristic mismatch: {src} vs {dst}")
    if isinstance(src, PrimeField):
        return dst.from_int
    if isinstance(src, ExtensionField) and isinstance(dst, ExtensionField):
        if dst.e % src.e != 0:
            raise RingMismatch(f"{src} does not embed in {dst}")
        root = None
        for cand in dst.elements():
            acc = dst.zero
            for c in reversed(src.modulus):
                acc = dst.add(dst.mul(acc, cand), dst.from_int(c))
            if acc == dst.zero:
                root = cand
                break
        if root is None:
            raise RingMismatch(f"modulus of {src} has no root in {dst}")  # pragma: no cover

        def embed(a, _root=root, _dst=dst):
            acc = _dst.zero
            for c in reversed(a):
                acc = _dst.add(_dst.mul(acc, _root), _dst.from_int(c))
            return acc

        return embed
    raise RingMismatch(f"no embedding {src} -> {dst}")
