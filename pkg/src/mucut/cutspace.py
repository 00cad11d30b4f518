"""Truncated Taylor data at the cone point and its exact transfer to symbols.

A jet stores the coefficients of ``z**k * conj(z)**l`` up to a total degree
bound. Only even jets (no odd-total-degree monomials) descend smoothly to the
cut cones; for those the pullback/pushforward pair below is an exact bijection
onto the admissible polynomial symbols.
"""

from __future__ import annotations

from .errors import NotAdmissible, OddJet
from .exact import GaussianRational, Polynomial
from .symbols import LaurentSymbol, SymbolVariant


class Jet:
    """Finite jet ``sum a_{k,l} z**k conj(z)**l`` with ``k + l <= dmax``.

    ``dmax`` is truncation capacity, not mathematical content: equality
    compares coefficient maps only.
    """

    __slots__ = ("_dmax", "_coeffs")

    def __init__(self, dmax: int, coeffs=None):
        dmax = int(dmax)
        if dmax < 0:
            raise ValueError("jet order bound must be nonnegative")
        cleaned = {}
        for (k, l), value in (coeffs or {}).items():
            k, l = int(k), int(l)
            if k < 0 or l < 0:
                raise ValueError(f"monomial exponents must be nonnegative: "
                                 f"({k}, {l})")
            if k + l > dmax:
                raise ValueError(f"monomial ({k}, {l}) exceeds order bound "
                                 f"{dmax}")
            if not isinstance(value, GaussianRational):
                value = GaussianRational(value)
            if value:
                cleaned[(k, l)] = value
        object.__setattr__(self, "_dmax", dmax)
        object.__setattr__(self, "_coeffs", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("Jet is immutable")

    @property
    def dmax(self) -> int:
        return self._dmax

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, k: int, l: int) -> GaussianRational:
        return self._coeffs.get((k, l), GaussianRational(0))

    def __add__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        merged = dict(self._coeffs)
        for key, value in other._coeffs.items():
            merged[key] = merged.get(key, GaussianRational(0)) + value
        return Jet(max(self._dmax, other._dmax), merged)

    def __sub__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Jet(self._dmax, {key: -v for key, v in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, GaussianRational)):
            scalar = GaussianRational(other)
            return Jet(self._dmax,
                       {key: v * scalar for key, v in self._coeffs.items()})
        if not isinstance(other, Jet):
            return NotImplemented
        out: dict[tuple, GaussianRational] = {}
        for (k1, l1), v1 in self._coeffs.items():
            for (k2, l2), v2 in other._coeffs.items():
                key = (k1 + k2, l1 + l2)
                out[key] = out.get(key, GaussianRational(0)) + v1 * v2
        return Jet(self._dmax + other._dmax, out)

    def __rmul__(self, other):
        if isinstance(other, (int, GaussianRational)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(sorted(self._coeffs.items(),
                                 key=lambda item: item[0])))

    def __repr__(self):
        inner = ", ".join(f"({k},{l}): {v}" for (k, l), v
                          in sorted(self._coeffs.items()))
        return f"Jet(dmax={self._dmax}, {{{inner}}})"

    def to_json(self) -> dict:
        return {
            "dmax": self._dmax,
            "coeffs": [{"k": k, "l": l, "value": self._coeffs[(k, l)].to_json()}
                       for (k, l) in sorted(self._coeffs)],
        }

    @classmethod
    def from_json(cls, data) -> "Jet":
        if not isinstance(data, dict) or "dmax" not in data:
            raise ValueError(f"not a jet object: {data!r}")
        coeffs: dict[tuple, GaussianRational] = {}
        for item in data.get("coeffs", ()):
            key = (item["k"], item["l"])
            value = GaussianRational.from_json(item["value"])
            if key in coeffs:
                value = coeffs[key] + value
            coeffs[key] = value
        return cls(data["dmax"], coeffs)


def odd_monomials(jet: Jet) -> list:
    """Monomials of odd total degree with nonzero coefficient."""
    return sorted((k, l) for (k, l) in jet._coeffs if (k + l) % 2)


def extends_smoothly(jet: Jet) -> bool:
    """Whether the jet descends to the cut cones: no odd-degree monomials."""
    return not odd_monomials(jet)


def pullback_jet(jet: Jet, variant: SymbolVariant) -> LaurentSymbol:
    """Exact symbol of an even jet on the chosen cut cone.

    ``z**k conj(z)**l`` becomes radial power ``(k+l)/2`` at angular mode
    ``l - k`` (even cone) or ``(l - k)/2`` (full cone, where the angle
    covers the circle once instead of twice).
    """
    variant = SymbolVariant(variant)
    odd = odd_monomials(jet)
    if odd:
        raise OddJet("jet has odd-degree monomials and does not descend",
                     monomials=odd)
    modes: dict[int, Polynomial] = {}
    for (k, l), value in jet._coeffs.items():
        power = (k + l) // 2
        if variant is SymbolVariant.M_PLUS_EVEN:
            mode = l - k
        else:
            mode = (l - k) // 2
        addition = Polynomial.monomial(power, value)
        modes[mode] = modes.get(mode, Polynomial.zero()) + addition
    return LaurentSymbol(modes)


def pushforward_symbol(sigma: LaurentSymbol, variant: SymbolVariant) -> Jet:
    """Inverse of :func:`pullback_jet` on polynomial symbols.

    Mode k at radial power d goes to ``z**a conj(z)**b`` with ``b - a = k``
    (even cone) or ``b - a = 2k`` (full cone) and ``a + b = 2d``. Raises
    :class:`NotAdmissible` when some term has no nonnegative solution.
    """
    variant = SymbolVariant(variant)
    if sigma.degree is not None and sigma.degree < 0:
        raise NotAdmissible("negative-degree symbols do not extend to jets")
    coeffs: dict[tuple, GaussianRational] = {}
    top = 0
    for k, poly in sigma.modes.items():
        for d, value in enumerate(poly.coefficients):
            if not value:
                continue
            if variant is SymbolVariant.M_PLUS_EVEN:
                if k % 2:
                    raise NotAdmissible(
                        f"odd mode {k} has no monomial preimage on the even cone")
                half = k // 2
            else:
                half = k
            a, b = d - half, d + half
            if a < 0 or b < 0:
                raise NotAdmissible(
                    f"mode {k} at radial power {d} has no monomial preimage")
            coeffs[(a, b)] = value
            top = max(top, a + b)
    return Jet(top, coeffs)
