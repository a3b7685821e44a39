"""Exact coefficient fields.

Three kinds of field are supported:

* ``Q``   -- the rationals, elements are :class:`flint.fmpq`;
* ``Fp``  -- a prime field, elements are :class:`flint.nmod`;
* ``ext`` -- a simple extension ``Q[x]/(m(x))`` of the rationals by a monic
  irreducible integer polynomial, elements are :class:`ExtElement`.

All element types support the usual arithmetic operators, so generic code
can write ``a * b + c`` and stay exact.  The field object is responsible for
coercion, canonical forms, parsing and serialization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import random

import flint


class FieldError(ValueError):
    pass


def parse_rational(value) -> Fraction:
    """Parse ``3``, ``"3"``, ``"-5/2"`` or a Fraction-like into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, flint.fmpq):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"not a rational number: {value!r}") from exc
    raise FieldError(f"not a rational number: {value!r}")


@dataclass(frozen=True)
class FieldSpec:
    """Serializable description of a coefficient field.

    ``minpoly`` lists integer coefficients from the leading term down, so
    ``[1, 0, -2]`` is x^2 - 2.  ``t`` is the evaluation point of the loop
    parameter, kept as a Fraction.
    """

    kind: str = "Q"
    p: int | None = None
    minpoly: tuple[int, ...] | None = None
    t: Fraction | None = None

    @classmethod
    def from_json(cls, data: dict) -> FieldSpec:
        if not isinstance(data, dict):
            raise FieldError("field spec must be an object")
        kind = data.get("kind")
        if kind not in ("Q", "Fp", "ext"):
            raise FieldError(f"field.kind must be one of Q, Fp, ext (got {kind!r})")
        p = data.get("p")
        if kind == "Fp" and not isinstance(p, int):
            raise FieldError("field.p must be an integer for kind Fp")
        minpoly = data.get("minpoly")
        if kind == "ext":
            if not isinstance(minpoly, list) or not all(isinstance(c, int) for c in minpoly):
                raise FieldError("field.minpoly must be a list of integers for kind ext")
            minpoly = tuple(minpoly)
        t = data.get("t")
        return cls(kind, p if kind == "Fp" else None,
                   minpoly if kind == "ext" else None,
                   None if t is None else parse_rational(t))

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.p is not None:
            out["p"] = self.p
        if self.minpoly is not None:
            out["minpoly"] = list(self.minpoly)
        if self.t is not None:
            out["t"] = f"{self.t.numerator}/{self.t.denominator}"
        return out


class Field:
    """Common interface; concrete fields override the element hooks."""

    kind: str = ""

    def __call__(self, value):
        return self.coerce(value)

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def is_zero(self, a) -> bool:
        return a == self.zero

    def normalize(self, a):
        return self.coerce(a)

    def random_element(self, rng: random.Random, height: int = 5):
        return self.coerce(rng.randint(-height, height))

    def __eq__(self, other):
        return type(self) is type(other) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return (self.kind,)


class RationalField(Field):
    kind = "Q"
    characteristic = 0

    def coerce(self, value):
        if isinstance(value, flint.fmpq):
            return value
        if isinstance(value, (int, flint.fmpz)):
            return flint.fmpq(value)
        if isinstance(value, ExtElement):
            raise FieldError("cannot coerce an extension element into Q")
        fr = parse_rational(value)
        return flint.fmpq(fr.numerator, fr.denominator)

    def to_json(self, a) -> str:
        return f"{a.p}/{a.q}" if a.q != 1 else f"{a.p}"

    def from_json(self, s):
        return self.coerce(s)

    def random_element(self, rng, height=5):
        return flint.fmpq(rng.randint(-height, height), rng.randint(1, height))

    def __repr__(self):
        return "Q"


class PrimeField(Field):
    kind = "Fp"

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2 or not flint.fmpz(p).is_prime():
            raise FieldError(f"p = {p!r} is not prime")
        self.p = p
        self.characteristic = p

    def key(self):
        return (self.kind, self.p)

    def coerce(self, value):
        if isinstance(value, flint.nmod):
            if value.modulus() != self.p:
                raise FieldError("residue from a different prime field")
            return value
        if isinstance(value, (int, flint.fmpz)):
            return flint.nmod(int(value), self.p)
        fr = parse_rational(value)
        if fr.denominator % self.p == 0:
            raise FieldError(f"{fr} has no image in F_{self.p}")
        return flint.nmod(fr.numerator, self.p) / flint.nmod(fr.denominator, self.p)

    def to_json(self, a) -> str:
        return str(int(a))

    def from_json(self, s):
        return self.coerce(s)

    def random_element(self, rng, height=5):
        return flint.nmod(rng.randrange(self.p), self.p)

    def __repr__(self):
        return f"F{self.p}"


class ExtElement:
    """Element of Q[x]/(m) in the power basis 1, a, ..., a^(d-1)."""

    __slots__ = ("field", "c")

    def __init__(self, field: ExtensionField, coords):
        self.field = field
        self.c = tuple(coords)

    def _lift(self, other):
        if isinstance(other, ExtElement):
            return other
        return self.field.coerce(other)

    def __add__(self, other):
        o = self._lift(other)
        return ExtElement(self.field, (a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.field, (-a for a in self.c))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return self.field._mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def inverse(self):
        return self.field._inv(self)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = self.field.one, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except FieldError:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        if all(a == 0 for a in self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def __bool__(self):
        return any(a != 0 for a in self.c)

    def __repr__(self):
        return repr(self.field.to_json(self))


class ExtensionField(Field):
    """The field K = Q[x]/(m) together with its base field k = Q."""

    kind = "ext"
    characteristic = 0

    def __init__(self, minpoly):
        coeffs = [int(c) for c in minpoly]
        if len(coeffs) < 2 or coeffs[0] != 1:
            raise FieldError("defining polynomial must be monic of degree >= 1")
        fac = flint.fmpz_poly(list(reversed(coeffs))).factor()
        if len(fac[1]) != 1 or fac[1][0][1] != 1:
            raise FieldError(f"polynomial {coeffs} is reducible over Q")
        self.minpoly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self.base = RationalField()
        # a^d = -(c_1 a^(d-1) + ... + c_d)
        self._tail = [flint.fmpq(-c) for c in coeffs[1:]]

    def key(self):
        return (self.kind, self.minpoly)

    def coerce(self, value):
        if isinstance(value, ExtElement):
            if value.field != self:
                raise FieldError("element of a different extension")
            return value
        if isinstance(value, (list, tuple)):
            if len(value) != self.degree:
                raise FieldError("wrong number of extension coordinates")
            return ExtElement(self, (self.base.coerce(v) for v in value))
        q = self.base.coerce(value)
        return ExtElement(self, [q] + [flint.fmpq(0)] * (self.degree - 1))

    def generator(self):
        c = [flint.fmpq(0)] * self.degree
        if self.degree == 1:
            return self.coerce(-self.minpoly[1])
        c[1] = flint.fmpq(1)
        return ExtElement(self, c)

    def _mul(self, a, b):
        d = self.degree
        prod = [flint.fmpq(0)] * (2 * d - 1)
        for i, x in enumerate(a.c):
            if x == 0:
                continue
            for j, y in enumerate(b.c):
                if y != 0:
                    prod[i + j] += x * y
        for k in range(2 * d - 2, d - 1, -1):
            top = prod[k]
            if top == 0:
                continue
            prod[k] = flint.fmpq(0)
            # a^k = a^(k-d) * a^d
            for i, t in enumerate(self._tail):
                prod[k - 1 - i] += top * t
        return ExtElement(self, prod[:d])

    def _inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in extension field")
        # solve a * y = 1 with the multiplication matrix of a
        from .linalg import solve_dense
        d = self.degree
        cols = []
        for j in range(d):
            e = [flint.fmpq(0)] * d
            e[j] = flint.fmpq(1)
            cols.append((a * ExtElement(self, e)).c)
        mat = [[cols[j][i] for j in range(d)] for i in range(d)]
        rhs = [flint.fmpq(1)] + [flint.fmpq(0)] * (d - 1)
        y = solve_dense(mat, rhs, self.base)
        return ExtElement(self, y)

    def to_json(self, a):
        if all(x == 0 for x in a.c[1:]):
            return RationalField().to_json(a.c[0])
        return [RationalField().to_json(x) for x in a.c]

    def from_json(self, s):
        if isinstance(s, list):
            return self.coerce([parse_rational(x) for x in s])
        return self.coerce(s)

    def random_element(self, rng, height=5):
        return ExtElement(self, (flint.fmpq(rng.randint(-height, height), rng.randint(1, height))
                                 for _ in range(self.degree)))

    def __repr__(self):
        return f"Q[x]/({self.minpoly})"


def field_make(spec: FieldSpec | dict) -> Field:
    """Build the field described by ``spec``; raises FieldError on bad specs."""
    if isinstance(spec, dict):
        spec = FieldSpec.from_json(spec)
    if spec.kind == "Q":
        return RationalField()
    if spec.kind == "Fp":
        return PrimeField(spec.p)
    if spec.kind == "ext":
        return ExtensionField(spec.minpoly)
    raise FieldError(f"unknown field kind {spec.kind!r}")


def subfield_coordinates(x, field: Field) -> tuple:
    """Coordinates of ``x`` over the base field in the power basis.

    The first coordinate is the component along the base field k; the others
    span the fixed complement a k + ... + a^(d-1) k.
    """
    if not isinstance(field, ExtensionField):
        raise FieldError("subfield coordinates need an extension-pair field")
    return field.coerce(x).c


def field_to_json(field: Field) -> dict:
    if isinstance(field, PrimeField):
        return {"kind": "Fp", "p": field.p}
    if isinstance(field, ExtensionField):
        return {"kind": "ext", "minpoly": list(field.minpoly)}
    return {"kind": "Q"}
