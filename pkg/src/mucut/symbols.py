"""Symbols on the cut cones: finite Laurent series in the angle, polynomial
in the radial action.

A symbol is a finite map ``k -> p_k(s)``; mode k carries the angular factor
``exp(i*k*t)``. Homogeneous symbols tag their common radial degree. Degree
``m < 0`` is allowed only in the homogeneous single-power form ``c * s**m``
(stored as the bare coefficient), which is what the residue functional
consumes.
"""

from __future__ import annotations

from .errors import (NotAdmissible, NotHomogeneous, NotInCommutant,
                     ZeroOperator)
from .exact import GaussianRational, Polynomial
from .operators import CanonicalOperator, Parity, shift_divisor, szego_commutes

import enum

_Scalar = (int, GaussianRational)


class SymbolVariant(enum.Enum):
    """Which cut cone the symbol lives on.

    M_PLUS_PLUS: the full-projector cut space (every shift allowed, radial
    degree at least |k|).
    M_PLUS_EVEN: the even-projector cut space (even shifts only, radial
    degree at least |k|/2).
    """

    M_PLUS_PLUS = "m++"
    M_PLUS_EVEN = "m+even"


def variant_for_parity(parity: Parity) -> SymbolVariant:
    return (SymbolVariant.M_PLUS_PLUS if Parity(parity) is Parity.FULL
            else SymbolVariant.M_PLUS_EVEN)


class LaurentSymbol:
    """Finite angular-mode expansion with polynomial radial parts."""

    __slots__ = ("_modes", "_degree")

    def __init__(self, modes=None, *, degree: int | None = None):
        cleaned = {}
        for k, poly in (modes or {}).items():
            if not isinstance(poly, Polynomial):
                poly = Polynomial(poly)
            if not poly.is_zero():
                cleaned[int(k)] = poly
        if not cleaned:
            degree = None
        elif degree is None:
            degree = _detect_degree(cleaned)
        elif degree < 0:
            for k, poly in cleaned.items():
                if poly.degree != 0:
                    raise ValueError(
                        "negative-degree symbols store bare coefficients; "
                        f"mode {k} has radial degree {poly.degree}")
        else:
            for k, poly in cleaned.items():
                if poly.degree != degree or _monomial_degree(poly) != degree:
                    raise ValueError(
                        f"mode {k} is not a degree-{degree} monomial")
        object.__setattr__(self, "_modes", cleaned)
        object.__setattr__(self, "_degree", degree)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSymbol is immutable")

    @classmethod
    def zero(cls) -> "LaurentSymbol":
        return cls({})

    @classmethod
    def homogeneous(cls, degree: int, coefficients: dict) -> "LaurentSymbol":
        """Build ``sum_k c_k * s**degree * exp(i*k*t)`` from bare
        coefficients; the only way to make a negative-degree symbol."""
        modes = {}
        for k, c in coefficients.items():
            c = GaussianRational(c)
            if not c:
                continue
            if degree >= 0:
                modes[k] = Polynomial.monomial(degree, c)
            else:
                modes[k] = Polynomial((c,))
        return cls(modes, degree=degree if modes else None)

    @property
    def modes(self) -> dict:
        return dict(self._modes)

    @property
    def degree(self) -> int | None:
        """Homogeneity degree, or ``None`` when mixed or zero."""
        return self._degree

    def is_zero(self) -> bool:
        return not self._modes

    def coefficient(self, k: int) -> Polynomial:
        return self._modes.get(k, Polynomial.zero())

    def homogeneous_coefficient(self, k: int) -> GaussianRational:
        """Bare coefficient of mode k for a degree-tagged symbol."""
        if self._degree is None:
            raise NotHomogeneous("symbol carries no homogeneity degree")
        poly = self._modes.get(k)
        if poly is None:
            return GaussianRational(0)
        return poly.coefficients[-1]

    def __add__(self, other):
        if not isinstance(other, LaurentSymbol):
            return NotImplemented
        _require_polynomial(self, other)
        merged = dict(self._modes)
        for k, poly in other._modes.items():
            merged[k] = merged.get(k, Polynomial.zero()) + poly
        return LaurentSymbol(merged)

    def __sub__(self, other):
        if not isinstance(other, LaurentSymbol):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return LaurentSymbol({k: -p for k, p in self._modes.items()},
                             degree=self._degree)

    def __mul__(self, other):
        if isinstance(other, _Scalar):
            scalar = GaussianRational(other)
            if not scalar:
                return LaurentSymbol.zero()
            return LaurentSymbol(
                {k: p * scalar for k, p in self._modes.items()},
                degree=self._degree)
        if not isinstance(other, LaurentSymbol):
            return NotImplemented
        _require_polynomial(self, other)
        out: dict[int, Polynomial] = {}
        for k, p in self._modes.items():
            for l, q in other._modes.items():
                key = k + l
                out[key] = out.get(key, Polynomial.zero()) + p * q
        return LaurentSymbol(out)

    def __rmul__(self, other):
        if isinstance(other, _Scalar):
            return self * other
        return NotImplemented

    def conjugate_reflect(self) -> "LaurentSymbol":
        """Complex-conjugate coefficients and reflect modes ``k -> -k``;
        the symbol-level image of the operator adjoint."""
        return LaurentSymbol(
            {-k: p.conjugate() for k, p in self._modes.items()},
            degree=self._degree)

    def __eq__(self, other):
        if not isinstance(other, LaurentSymbol):
            return NotImplemented
        return self._modes == other._modes and self._degree == other._degree

    def __hash__(self):
        return hash((tuple(sorted(self._modes.items())), self._degree))

    def __repr__(self):
        inner = ", ".join(f"{k}: {p}" for k, p in sorted(self._modes.items()))
        return f"LaurentSymbol({{{inner}}}, degree={self._degree})"

    def to_json(self) -> dict:
        return {
            "degree": self._degree,
            "modes": [{"k": k, "poly": self._modes[k].to_json()}
                      for k in sorted(self._modes)],
        }

    @classmethod
    def from_json(cls, data) -> "LaurentSymbol":
        if not isinstance(data, dict) or "modes" not in data:
            raise ValueError(f"not a symbol object: {data!r}")
        degree = data.get("degree")
        modes: dict[int, Polynomial] = {}
        for item in data["modes"]:
            k = item["k"]
            if not isinstance(k, int):
                raise ValueError(f"mode must be an integer, got {k!r}")
            poly = Polynomial.from_json(item["poly"])
            if k in modes:
                poly = modes[k] + poly
            modes[k] = poly
        return cls(modes, degree=degree)


def _monomial_degree(poly: Polynomial):
    """Degree if the polynomial is a single monomial, else ``None``."""
    nonzero = [n for n, c in enumerate(poly.coefficients) if c]
    if len(nonzero) == 1:
        return nonzero[0]
    return None


def _detect_degree(modes: dict) -> int | None:
    degrees = {_monomial_degree(p) for p in modes.values()}
    if len(degrees) == 1:
        (d,) = degrees
        return d
    return None


def _require_polynomial(*symbols: LaurentSymbol) -> None:
    for s in symbols:
        if s._degree is not None and s._degree < 0:
            raise ValueError(
                "negative-degree symbols only support the residue functional")


def leading_symbol(a: CanonicalOperator) -> LaurentSymbol:
    """Top-order part of an operator, as a homogeneous symbol.

    Shift k contributes ``lc * s**m * exp(i*k*t)`` whenever its polynomial
    attains the operator order m.
    """
    if a.is_zero():
        raise ZeroOperator("the zero operator has no leading symbol")
    m = a.order
    coeffs = {k: p.leading_coefficient()
              for k, p in a.terms.items() if p.degree == m}
    return LaurentSymbol.homogeneous(m, coeffs)


def is_admissible(sigma: LaurentSymbol, variant: SymbolVariant) -> bool:
    """Whether a homogeneous symbol extends to its cut cone.

    Raises :class:`NotHomogeneous` when the symbol has no degree tag.
    """
    variant = SymbolVariant(variant)
    if sigma.is_zero():
        return True
    m = sigma.degree
    if m is None:
        raise NotHomogeneous("admissibility is defined for homogeneous symbols")
    if m < 0:
        return False
    if variant is SymbolVariant.M_PLUS_PLUS:
        return all(m >= abs(k) for k in sigma.modes)
    return all(k % 2 == 0 and m >= abs(k) // 2 for k in sigma.modes)


def build_commuting_from_symbol(sigma: LaurentSymbol,
                                parity: Parity = Parity.FULL
                                ) -> CanonicalOperator:
    """Canonical commuting operator with the given leading symbol.

    Each mode k becomes ``c * x**(m - w(k)) * shift_divisor(k, parity)`` with
    ``w(k)`` the divisor degree, so the result commutes with the projector
    and its leading symbol reproduces the input exactly.
    """
    parity = Parity(parity)
    variant = variant_for_parity(parity)
    if not is_admissible(sigma, variant):
        raise NotAdmissible(
            f"symbol is not admissible on the {variant.value} cone")
    if sigma.is_zero():
        return CanonicalOperator.zero()
    m = sigma.degree
    terms = {}
    for k in sigma.modes:
        c = sigma.homogeneous_coefficient(k)
        divisor = shift_divisor(k, parity)
        terms[k] = Polynomial.monomial(m - divisor.degree, c) * divisor
    return CanonicalOperator(terms)


def poisson_bracket(f: LaurentSymbol, g: LaurentSymbol) -> LaurentSymbol:
    """Bracket induced by ``ds ^ dt``: ``{f, g} = f_s g_t - f_t g_s``,
    with the angular derivative acting as ``i*k`` on mode k."""
    _require_polynomial(f, g)
    out: dict[int, Polynomial] = {}
    for k, p in f.modes.items():
        dp = p.derivative()
        for l, q in g.modes.items():
            dq = q.derivative()
            term = dp * q * GaussianRational(0, l) - p * dq * GaussianRational(0, k)
            if term.is_zero():
                continue
            key = k + l
            out[key] = out.get(key, Polynomial.zero()) + term
    return LaurentSymbol(out)


def exactness_witness(a: CanonicalOperator, parity: Parity = Parity.FULL):
    """Split a commuting operator as ``lift(leading symbol) + remainder``.

    Returns ``(order, symbol, remainder)``; the remainder commutes and has
    strictly smaller order, so iterating yields the full symbol tower.
    """
    parity = Parity(parity)
    if not szego_commutes(a, parity):
        raise NotInCommutant(
            f"operator does not commute with the {parity.value} projector")
    if a.is_zero():
        raise ZeroOperator("the zero operator has no exactness witness")
    sigma = leading_symbol(a)
    remainder = a - build_commuting_from_symbol(sigma, parity)
    return a.order, sigma, remainder


def symbol_tower(a: CanonicalOperator, parity: Parity = Parity.FULL):
    """Full expansion of a commuting operator into homogeneous symbols.

    Returns ``[(order, symbol), ...]`` in strictly decreasing order; summing
    the lifts reconstructs the operator exactly. Terminates in at most
    ``order + 1`` steps.
    """
    tower = []
    current = a
    while not current.is_zero():
        order, sigma, current = exactness_witness(current, parity)
        tower.append((order, sigma))
    return tower
