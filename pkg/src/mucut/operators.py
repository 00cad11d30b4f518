"""Circle-mode operators in shift/polynomial normal form.

An operator is a finite sum of terms ``(k, q)`` acting on Fourier modes by
``e(n) -> q(n) * e(n + k)`` where ``e(n)`` is the n-th exponential mode. The
module provides the generator set, composition and adjoint in this normal
form, the exact commutation criteria against the Szego projector (full and
even-mode variants), the sparse commutator kernel, the commutant
factorization, and float realizations on finite mode windows.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from .errors import NotInCommutant, NotSelfAdjoint, WindowTooSmall
from .exact import GaussianRational, Polynomial, poly_shift

_Scalar = (int, GaussianRational)


class Parity(enum.Enum):
    """Which projector the commutation questions are asked against.

    FULL:  projection onto modes n >= 0.
    EVEN:  projection onto even modes n >= 0.
    """

    FULL = "full"
    EVEN = "even"


class GeneratorName(enum.Enum):
    D = "D"
    RAISE = "Raise"
    LOWER = "Lower"
    RAISE_EVEN = "RaiseEven"
    LOWER_EVEN = "LowerEven"


class CanonicalOperator:
    """Finite sum of shift-by-k terms with polynomial mode coefficients.

    Immutable. Terms with zero polynomial are dropped on construction, so two
    operators are equal iff their term maps are equal.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        cleaned = {}
        for k, poly in (terms or {}).items():
            if not isinstance(poly, Polynomial):
                poly = Polynomial(poly)
            if not poly.is_zero():
                cleaned[int(k)] = poly
        object.__setattr__(self, "_terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("CanonicalOperator is immutable")

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    @classmethod
    def zero(cls) -> "CanonicalOperator":
        return cls({})

    @classmethod
    def identity(cls) -> "CanonicalOperator":
        return cls({0: Polynomial.one()})

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def bandwidth(self) -> int:
        """Largest |k| over the nonzero terms (0 for the zero operator)."""
        if not self._terms:
            return 0
        return max(abs(k) for k in self._terms)

    @property
    def order(self):
        """Max polynomial degree across terms, or ``None`` for zero."""
        if not self._terms:
            return None
        return max(p.degree for p in self._terms.values())

    def apply_to_mode(self, n: int) -> dict:
        """Image of the single mode ``e(n)`` as ``{target_mode: coefficient}``."""
        out = {}
        for k, poly in self._terms.items():
            value = poly(n)
            if value:
                out[n + k] = value
        return out

    def __add__(self, other):
        if not isinstance(other, CanonicalOperator):
            return NotImplemented
        merged = dict(self._terms)
        for k, poly in other._terms.items():
            merged[k] = merged.get(k, Polynomial.zero()) + poly
        return CanonicalOperator(merged)

    def __sub__(self, other):
        if not isinstance(other, CanonicalOperator):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return CanonicalOperator({k: -p for k, p in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, CanonicalOperator):
            return compose(self, other)
        if isinstance(other, _Scalar):
            scalar = GaussianRational(other)
            return CanonicalOperator(
                {k: p * scalar for k, p in self._terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, _Scalar):
            return self * other
        return NotImplemented

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative operator power")
        result = CanonicalOperator.identity()
        base = self
        n = exponent
        while n:
            if n & 1:
                result = compose(result, base)
            base = compose(base, base)
            n >>= 1
        return result

    def adjoint(self) -> "CanonicalOperator":
        return adjoint(self)

    def __eq__(self, other):
        if not isinstance(other, CanonicalOperator):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(sorted(self._terms.items())))

    def __repr__(self):
        inner = ", ".join(f"{k}: {p}" for k, p in sorted(self._terms.items()))
        return f"CanonicalOperator({{{inner}}})"

    def to_json(self) -> dict:
        return {"terms": [{"k": k, "poly": self._terms[k].to_json()}
                          for k in sorted(self._terms)]}

    @classmethod
    def from_json(cls, data) -> "CanonicalOperator":
        if not isinstance(data, dict) or "terms" not in data:
            raise ValueError(f"not an operator object: {data!r}")
        terms = {}
        for item in data["terms"]:
            k = item["k"]
            if not isinstance(k, int):
                raise ValueError(f"shift must be an integer, got {k!r}")
            poly = Polynomial.from_json(item["poly"])
            if k in terms:
                poly = terms[k] + poly
            terms[k] = poly
        return cls(terms)


def compose(a: CanonicalOperator, b: CanonicalOperator) -> CanonicalOperator:
    """Operator composition ``a after b`` in normal form.

    Single terms combine by ``(k, p) . (l, q) = (k + l, p(x + l) * q(x))``.
    """
    out: dict[int, Polynomial] = {}
    for k, p in a.terms.items():
        for l, q in b.terms.items():
            term = poly_shift(p, l) * q
            key = k + l
            out[key] = out.get(key, Polynomial.zero()) + term
    return CanonicalOperator(out)


def commutator(a: CanonicalOperator, b: CanonicalOperator) -> CanonicalOperator:
    return compose(a, b) - compose(b, a)


def adjoint(a: CanonicalOperator) -> CanonicalOperator:
    """Formal adjoint on the mode basis: ``(k, q) -> (-k, conj(q)(x - k))``."""
    out: dict[int, Polynomial] = {}
    for k, q in a.terms.items():
        term = poly_shift(q.conjugate(), -k)
        key = -k
        out[key] = out.get(key, Polynomial.zero()) + term
    return CanonicalOperator(out)


def make_generator(name: GeneratorName | str) -> CanonicalOperator:
    """The distinguished generators of the two commutant algebras.

    D raises nothing (mode multiplication by n); Raise/Lower shift by +-1;
    RaiseEven/LowerEven shift by +-2. Raising generators multiply before
    differentiating, lowering generators differentiate first, which is what
    makes them commute with their projector.
    """
    name = GeneratorName(name)
    x = Polynomial.x()
    if name is GeneratorName.D:
        return CanonicalOperator({0: x})
    if name is GeneratorName.RAISE:
        return CanonicalOperator({1: x + 1})
    if name is GeneratorName.LOWER:
        return CanonicalOperator({-1: x})
    if name is GeneratorName.RAISE_EVEN:
        return CanonicalOperator({2: x + 2})
    if name is GeneratorName.LOWER_EVEN:
        return CanonicalOperator({-2: x})
    raise ValueError(f"unknown generator {name!r}")


def raising_product(k: int) -> Polynomial:
    """The exact polynomial carried by the k-th raising power: (x+1)...(x+k)."""
    if k < 0:
        raise ValueError("raising power must be nonnegative")
    return Polynomial.from_roots(range(-1, -k - 1, -1))


def verify_pk_identity(k: int) -> bool:
    """Check ``Raise**k == shift_k (x+1)...(x+k)`` exactly."""
    if k < 1:
        raise ValueError("identity is stated for k >= 1")
    power = make_generator(GeneratorName.RAISE) ** k
    return power == CanonicalOperator({k: raising_product(k)})


def shift_divisor(k: int, parity: Parity) -> Polynomial:
    """Canonical divisor of the k-shift coefficient inside the commutant.

    Its roots are exactly the mode indices where a commuting operator's k-th
    polynomial must vanish, so membership in the commutant is equivalent to
    exact divisibility by this polynomial.
    """
    parity = Parity(parity)
    if k == 0:
        return Polynomial.one()
    if parity is Parity.FULL:
        if k > 0:
            return Polynomial.from_roots(range(-1, -k - 1, -1))
        return Polynomial.from_roots(range(0, -k))
    if k % 2:
        raise ValueError("odd shifts do not occur in the even commutant")
    j = abs(k) // 2
    if k > 0:
        return Polynomial.from_roots(range(-2, -2 * j - 1, -2))
    return Polynomial.from_roots(range(0, 2 * j, 2))


def required_vanishing(k: int, parity: Parity, *,
                       uniform_negative_range: bool = False):
    """Mode indices where the k-shift polynomial of a commuting operator
    must vanish. ``None`` means the whole polynomial must be zero (odd
    shifts against the even projector).

    ``uniform_negative_range`` switches negative shifts to the mirrored
    index range ``{-|k|, ..., -1}``. That variant is wrong (the lowering
    generators themselves fail it); it exists as a diagnostic so the
    selftest can demonstrate the divergence against the matrix oracle.
    """
    parity = Parity(parity)
    if k == 0:
        return []
    if parity is Parity.FULL:
        if k > 0:
            return list(range(-k, 0))
        if uniform_negative_range:
            return list(range(k, 0))
        return list(range(0, -k))
    if k % 2:
        return None
    j = abs(k) // 2
    if k > 0:
        return list(range(-2 * j, 0, 2))
    if uniform_negative_range:
        return list(range(-2 * j, 0, 2))
    return list(range(0, 2 * j, 2))


def szego_commutes(a: CanonicalOperator, parity: Parity = Parity.FULL, *,
                   uniform_negative_range: bool = False) -> bool:
    """Exact commutation test against the projector, term by term."""
    for k, q in a.terms.items():
        where = required_vanishing(
            k, parity, uniform_negative_range=uniform_negative_range)
        if where is None:
            return False
        for n in where:
            if q(n):
                return False
    return True


def szego_commutator_entries(a: CanonicalOperator,
                             parity: Parity = Parity.FULL,
                             window: int | None = None):
    """Nonzero entries ``(row, col, value)`` of ``[projector, a]``.

    For the full projector the support is always finite and the complete set
    is returned. For the even projector, odd shifts make the support
    infinite (a nonzero polynomial survives at all large even modes); in
    that case entries are reported for column modes up to ``window``
    (default: enough candidates to witness every nonzero term). The list is
    empty iff the operator commutes with the projector.
    """
    parity = Parity(parity)
    entries = []
    for k, q in sorted(a.terms.items()):
        if k == 0:
            continue
        sign = 1 if k > 0 else -1
        if parity is Parity.FULL:
            columns = range(-k, 0) if k > 0 else range(0, -k)
        elif k % 2 == 0:
            j = abs(k) // 2
            columns = range(-2 * j, 0, 2) if k > 0 else range(0, 2 * j, 2)
        else:
            # Odd shift against the even projector: entries at every even
            # column n >= 0 (sign -) and every odd column n with
            # n + k >= 0 (sign +). Infinite support; truncate honestly.
            limit = window
            if limit is None:
                limit = abs(k) + 2 * ((q.degree or 0) + 1)
            cols = set(range(0, limit + 1, 2))
            cols.update(n for n in range(-k, limit + 1)
                        if n % 2 and n + k >= 0)
            for n in sorted(cols):
                if window is not None and abs(n + k) > window:
                    continue
                value = q(n)
                if not value:
                    continue
                entry_sign = -1 if n % 2 == 0 else 1
                entries.append((n + k, n, entry_sign * value))
            continue
        for n in columns:
            if window is not None and not (abs(n) <= window
                                           and abs(n + k) <= window):
                continue
            value = q(n)
            if value:
                entries.append((n + k, n, sign * value))
    entries.sort(key=lambda e: (e[1], e[0]))
    return entries


def commutant_factorize(a: CanonicalOperator,
                        parity: Parity = Parity.FULL) -> dict:
    """Factor each term of a commuting operator through its canonical divisor.

    Returns ``{k: cofactor}`` with ``cofactor * shift_divisor(k, parity)``
    reproducing the stored polynomial exactly. Raises
    :class:`NotInCommutant` when the operator does not commute.
    """
    from .exact import poly_divide_exact

    parity = Parity(parity)
    if not szego_commutes(a, parity):
        raise NotInCommutant(
            f"operator does not commute with the {parity.value} projector")
    return {k: poly_divide_exact(q, shift_divisor(k, parity))
            for k, q in a.terms.items()}


def recompose_factors(factors: dict, parity: Parity) -> CanonicalOperator:
    """Inverse of :func:`commutant_factorize`."""
    return CanonicalOperator(
        {k: r * shift_divisor(k, parity) for k, r in factors.items()})


@dataclass(frozen=True)
class TruncatedMatrix:
    """Dense float realization of an operator on modes ``-window..window``.

    ``entries[i, j]`` is the coefficient from mode ``j - window`` to mode
    ``i - window``. Truncation corrupts nothing inside the interior window
    ``[-window + bandwidth, window - bandwidth]``; claims of exactness are
    only ever made there.
    """

    window: int
    bandwidth: int
    entries: np.ndarray

    @property
    def modes(self) -> range:
        return range(-self.window, self.window + 1)

    def index(self, mode: int) -> int:
        if not -self.window <= mode <= self.window:
            raise IndexError(f"mode {mode} outside window {self.window}")
        return mode + self.window

    def interior_modes(self) -> range:
        lo = -self.window + self.bandwidth
        hi = self.window - self.bandwidth
        return range(lo, hi + 1)


def realize_matrix(a: CanonicalOperator, window: int) -> TruncatedMatrix:
    """Realize the operator as a dense complex matrix on a mode window."""
    if window < a.bandwidth:
        raise WindowTooSmall(
            f"window {window} smaller than operator bandwidth {a.bandwidth}")
    size = 2 * window + 1
    entries = np.zeros((size, size), dtype=complex)
    for k, poly in a.terms.items():
        for n in range(-window, window + 1):
            m = n + k
            if -window <= m <= window:
                entries[m + window, n + window] = complex(poly(n))
    return TruncatedMatrix(window=window, bandwidth=a.bandwidth,
                           entries=entries)


def require_self_adjoint(a: CanonicalOperator) -> None:
    """Raise :class:`NotSelfAdjoint` unless ``adjoint(a) == a`` exactly."""
    if adjoint(a) != a:
        raise NotSelfAdjoint("operator is not self-adjoint in normal form")
