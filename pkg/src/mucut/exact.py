"""Exact arithmetic substrate: Gaussian rationals, polynomials, lattice maps.

Rationals are stdlib :class:`fractions.Fraction` (always reduced, positive
denominator, arbitrary precision); this module layers the complex-rational
field, dense univariate polynomials over it, and the small amount of integer
lattice algebra the cone calculus needs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NonzeroRemainder, ZeroVector

Rational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def rational_to_str(value: Fraction) -> str:
    """Serialize a rational as ``"num/den"`` (canonical, reduced, den > 0)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def rational_from_str(text: str) -> Fraction:
    """Parse ``"num/den"`` or a bare integer string. Denominator 0 is rejected."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


_Scalarish = (int, Fraction)


class GaussianRational:
    """Complex number with rational real and imaginary parts.

    >>> z = GaussianRational(1, 2)
    >>> z * z
    GaussianRational(-3, 4)
    >>> z.conjugate() * z == GaussianRational(5)
    True
    >>> GaussianRational(1) / z
    GaussianRational(Fraction(1, 5), Fraction(-2, 5))
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im != 0:
                raise TypeError("imaginary part given twice")
            re, im = re.re, re.im
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _coerce(value) -> "GaussianRational | None":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, _Scalarish):
            return GaussianRational(value)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        parts = []
        for part in (self.re, self.im):
            if part.denominator == 1:
                parts.append(repr(part.numerator))
            else:
                parts.append(f"Fraction({part.numerator}, {part.denominator})")
        if self.im == 0:
            return f"GaussianRational({parts[0]})"
        return f"GaussianRational({parts[0]}, {parts[1]})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def to_json(self) -> dict:
        return {"re": rational_to_str(self.re), "im": rational_to_str(self.im)}

    @classmethod
    def from_json(cls, data) -> "GaussianRational":
        if not isinstance(data, dict) or set(data) - {"re", "im"}:
            raise ValueError(f"not a gaussian-rational object: {data!r}")
        return cls(rational_from_str(data.get("re", "0")),
                   rational_from_str(data.get("im", "0")))


I = GaussianRational(0, 1)

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


class Polynomial:
    """Dense univariate polynomial over the Gaussian rationals.

    Coefficients are stored lowest-degree first with trailing zeros stripped.
    The zero polynomial has an empty coefficient tuple and ``degree`` ``None``
    (a deliberate sentinel: callers must branch on it explicitly instead of
    relying on a numeric convention).

    >>> p = Polynomial([1, 1])        # 1 + x
    >>> (p * p).coefficients
    (GaussianRational(1), GaussianRational(2), GaussianRational(1))
    >>> p(3)
    GaussianRational(4)
    >>> Polynomial([]).degree is None
    True
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients=()):
        coeffs = [c if isinstance(c, GaussianRational) else GaussianRational(c)
                  for c in coefficients]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree: int, coefficient=1) -> "Polynomial":
        if degree < 0:
            raise ValueError("monomial degree must be nonnegative")
        return cls((0,) * degree + (coefficient,))

    @classmethod
    def from_roots(cls, roots) -> "Polynomial":
        result = cls.one()
        for r in roots:
            result = result * cls((GaussianRational(-1) * GaussianRational(r), 1))
        return result

    @property
    def degree(self):
        """Degree, or ``None`` for the zero polynomial."""
        if not self.coefficients:
            return None
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def leading_coefficient(self) -> GaussianRational:
        if not self.coefficients:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coefficients[-1]

    def __call__(self, x) -> GaussianRational:
        if not isinstance(x, GaussianRational):
            x = GaussianRational(x)
        acc = _ZERO
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        summed = list(a)
        for i, c in enumerate(b):
            summed[i] = summed[i] + c
        return Polynomial(summed)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Polynomial([-c for c in self.coefficients])

    def __mul__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return Polynomial.zero()
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.one()
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, divisor: "Polynomial"):
        divisor = _coerce_poly(divisor)
        if divisor is None:
            return NotImplemented
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self.coefficients)
        dcoeffs = divisor.coefficients
        dlead = dcoeffs[-1]
        dn = len(dcoeffs)
        if len(remainder) < dn:
            return Polynomial.zero(), self
        quotient = [_ZERO] * (len(remainder) - dn + 1)
        for top in range(len(remainder) - 1, dn - 2, -1):
            c = remainder[top]
            if not c:
                continue
            q = c / dlead
            pos = top - dn + 1
            quotient[pos] = q
            for j in range(dn):
                remainder[pos + j] = remainder[pos + j] - q * dcoeffs[j]
        return Polynomial(quotient), Polynomial(remainder)

    def shift(self, offset) -> "Polynomial":
        """Precompose with a translation: returns ``p(x + offset)``."""
        if not self.coefficients:
            return self
        translate = Polynomial((GaussianRational(offset), _ONE))
        acc = Polynomial.zero()
        for c in reversed(self.coefficients):
            acc = acc * translate + Polynomial((c,))
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial([c * n for n, c in enumerate(self.coefficients)][1:])

    def conjugate(self) -> "Polynomial":
        """Conjugate the coefficients (not the variable)."""
        return Polynomial([c.conjugate() for c in self.coefficients])

    def __bool__(self):
        return bool(self.coefficients)

    def __eq__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"Polynomial({list(self.coefficients)!r})"

    def __str__(self):
        if not self.coefficients:
            return "0"
        terms = []
        for n, c in enumerate(self.coefficients):
            if not c:
                continue
            if n == 0:
                terms.append(str(c))
            else:
                xpow = "x" if n == 1 else f"x^{n}"
                if c == _ONE:
                    terms.append(xpow)
                else:
                    coeff = str(c)
                    if c.im != 0 and c.re != 0:
                        coeff = f"({coeff})"
                    terms.append(f"{coeff}*{xpow}")
        return " + ".join(terms)

    def to_json(self) -> list:
        return [c.to_json() for c in self.coefficients]

    @classmethod
    def from_json(cls, data) -> "Polynomial":
        if not isinstance(data, list):
            raise ValueError(f"not a polynomial coefficient array: {data!r}")
        return cls([GaussianRational.from_json(c) for c in data])


def _coerce_poly(value):
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (GaussianRational,) + _Scalarish):
        return Polynomial((value,))
    return None


def poly_eval(p: Polynomial, x) -> GaussianRational:
    """Evaluate ``p`` at ``x`` (Horner, exact)."""
    return p(x)


def poly_shift(p: Polynomial, offset) -> Polynomial:
    """Return ``p(x + offset)``; exact, used by the composition rule."""
    return p.shift(offset)


def poly_divide_exact(p: Polynomial, divisor: Polynomial) -> Polynomial:
    """Divide ``p`` by ``divisor`` requiring a zero remainder.

    Raises :class:`NonzeroRemainder` (carrying the offending remainder) when
    the division does not come out exact.
    """
    quotient, remainder = divmod(p, divisor)
    if not remainder.is_zero():
        raise NonzeroRemainder(
            f"division left remainder {remainder}", remainder=remainder)
    return quotient


# --- integer lattice -------------------------------------------------------

Vec2 = tuple[int, int]


def primitive(v) -> Vec2:
    """Divide a nonzero integer vector by the gcd of its entries.

    The direction is preserved: ``primitive((4, -6)) == (2, -3)``.
    """
    vec = tuple(int(c) for c in v)
    if all(c == 0 for c in vec):
        raise ZeroVector("cannot primitivize the zero vector")
    g = 0
    for c in vec:
        g = gcd(g, abs(c))
    return tuple(c // g for c in vec)


def bezout(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns ``(g, u, v)`` with ``u*a + v*b == g == gcd(a, b)``.

    >>> bezout(3, 2)
    (1, 1, -1)
    """
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


@dataclass(frozen=True)
class Unimodular2:
    """Integer 2x2 matrix with determinant +-1, acting on column vectors."""

    rows: tuple[Vec2, Vec2]

    def __post_init__(self):
        rows = tuple(tuple(int(c) for c in row) for row in self.rows)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("expected two rows of two integers")
        object.__setattr__(self, "rows", rows)
        if self.det not in (1, -1):
            raise ValueError(f"determinant {self.det} is not a unit")

    @classmethod
    def from_rows(cls, r0, r1) -> "Unimodular2":
        return cls((tuple(r0), tuple(r1)))

    @classmethod
    def identity(cls) -> "Unimodular2":
        return cls(((1, 0), (0, 1)))

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.rows
        return a * d - b * c

    def apply(self, v) -> Vec2:
        (a, b), (c, d) = self.rows
        x, y = v
        return (a * x + b * y, c * x + d * y)

    def __matmul__(self, other):
        if isinstance(other, Unimodular2):
            (a, b), (c, d) = self.rows
            (e, f), (g, h) = other.rows
            return Unimodular2(((a * e + b * g, a * f + b * h),
                                (c * e + d * g, c * f + d * h)))
        return NotImplemented

    def inverse(self) -> "Unimodular2":
        (a, b), (c, d) = self.rows
        s = self.det  # +-1, so the adjugate divided by det stays integral
        return Unimodular2(((d * s, -b * s), (-c * s, a * s)))

    def to_json(self) -> list:
        return [list(self.rows[0]), list(self.rows[1])]

    @classmethod
    def from_json(cls, data) -> "Unimodular2":
        if (not isinstance(data, list) or len(data) != 2
                or any(not isinstance(r, list) or len(r) != 2 for r in data)):
            raise ValueError(f"not a 2x2 integer matrix: {data!r}")
        return cls((tuple(data[0]), tuple(data[1])))
