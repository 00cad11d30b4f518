"""Strictly convex rational cones in the plane and their cut calculus.

Generators are primitive integer vectors; every equality is as unordered
generator pairs. Cuts intersect with integer half-planes; the normal form is
the complete unimodular invariant (lattice index together with the canonical
shear residue), computed constructively so equivalences come with an explicit
witness matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DegenerateCut, EmptyCut, NotCoprime
from .exact import Unimodular2, Vec2, bezout, primitive


def _det(u: Vec2, v: Vec2) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _dot(u: Vec2, v: Vec2) -> int:
    return u[0] * v[0] + u[1] * v[1]


def _rot90(n: Vec2) -> Vec2:
    """Counterclockwise quarter turn; spans the boundary of ``<.,n> >= 0``."""
    return (-n[1], n[0])


class FullPlane:
    """The ambient start value of a cut plan: all of the plane minus 0."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "FULL_PLANE"


FULL_PLANE = FullPlane()


@dataclass(frozen=True)
class HalfPlane:
    """Half-plane ``{x : <x, normal> >= 0}``; the result of one ambient cut.

    Its boundary generators are the antipodal pair spanning the edge line,
    which the second cut of a plan then resolves into a strict cone.
    """

    normal: Vec2

    def __post_init__(self):
        object.__setattr__(self, "normal", primitive(self.normal))

    @property
    def generators(self) -> tuple:
        d = _rot90(self.normal)
        return d, (-d[0], -d[1])

    def contains(self, w) -> bool:
        return _dot(tuple(w), self.normal) >= 0


@dataclass(frozen=True)
class Cone2:
    """Strictly convex full-dimensional rational cone, by generator pair."""

    u: Vec2
    v: Vec2

    def __post_init__(self):
        object.__setattr__(self, "u", primitive(self.u))
        object.__setattr__(self, "v", primitive(self.v))
        if _det(self.u, self.v) == 0:
            raise ValueError(
                f"generators {self.u} and {self.v} span no 2d cone")

    @property
    def generators(self) -> tuple:
        return self.u, self.v

    def contains(self, w) -> bool:
        return contains(self, w)

    def __eq__(self, other):
        if not isinstance(other, Cone2):
            return NotImplemented
        return {self.u, self.v} == {other.u, other.v}

    def __hash__(self):
        return hash(frozenset((self.u, self.v)))

    def to_json(self) -> dict:
        return {"generators": [list(self.u), list(self.v)]}

    @classmethod
    def from_json(cls, data) -> "Cone2":
        if (not isinstance(data, dict) or "generators" not in data
                or len(data["generators"]) != 2):
            raise ValueError(f"not a two-generator cone object: {data!r}")
        u, v = data["generators"]
        return cls(tuple(int(c) for c in u), tuple(int(c) for c in v))


def lens_cone(p: int, q: int) -> Cone2:
    """The standard lens cone ``cone((1,0), (p,q))`` for coprime p, q >= 1."""
    p, q = int(p), int(q)
    if p < 1 or q < 1:
        raise ValueError("lens parameters must be positive")
    if gcd(p, q) != 1:
        raise NotCoprime(f"lens parameters ({p}, {q}) share a factor")
    return Cone2((1, 0), (p, q))


def sphere_cone() -> Cone2:
    """Moment cone of the punctured cotangent space of the 2-sphere."""
    return Cone2((-1, 1), (1, 1))


def contains(cone: Cone2, w) -> bool:
    """Exact membership: solve ``w = t1*u + t2*v`` over the rationals."""
    w = tuple(int(c) for c in w)
    d = _det(cone.u, cone.v)
    t1 = Fraction(_det(w, cone.v), d)
    t2 = Fraction(_det(cone.u, w), d)
    return t1 >= 0 and t2 >= 0


def cut_cone(cone, normal):
    """Intersect with the half-plane ``{<x, normal> >= 0}``.

    Accepts the ambient :data:`FULL_PLANE` (result: a half-plane), a
    :class:`HalfPlane` (result: a strict cone, or the unchanged half-plane
    for a repeated cut), or a :class:`Cone2`. Raises :class:`EmptyCut` when
    both generators strictly fail and :class:`DegenerateCut` when less than
    a full cone survives.
    """
    normal = primitive(normal)
    if isinstance(cone, FullPlane):
        return HalfPlane(normal)
    if isinstance(cone, HalfPlane):
        return _cut_half_plane(cone, normal)
    if not isinstance(cone, Cone2):
        raise TypeError(f"cannot cut {cone!r}")
    pu = _dot(cone.u, normal)
    pv = _dot(cone.v, normal)
    if pu >= 0 and pv >= 0:
        return cone
    if pu < 0 and pv < 0:
        raise EmptyCut(f"cone lies strictly below the cut {normal}")
    if pu == 0 or pv == 0:
        survivor = cone.u if pu == 0 else cone.v
        raise DegenerateCut(
            f"cut {normal} leaves only the ray through {survivor}")
    boundary = _rot90(normal)
    if not contains(cone, boundary):
        boundary = (-boundary[0], -boundary[1])
    if pu < 0:
        new_u, new_v = boundary, cone.v
    else:
        new_u, new_v = cone.u, boundary
    if (_det(new_u, new_v) > 0) != (_det(cone.u, cone.v) > 0):
        new_u, new_v = new_v, new_u
    return Cone2(new_u, new_v)


def _cut_half_plane(half: HalfPlane, normal: Vec2):
    if normal == half.normal:
        return half
    if normal == (-half.normal[0], -half.normal[1]):
        raise DegenerateCut(
            f"cut {normal} collapses the half-plane to its boundary line")
    d, anti = half.generators
    kept = d if _dot(d, normal) > 0 else anti
    edge = _rot90(normal)
    if _dot(edge, half.normal) < 0:
        edge = (-edge[0], -edge[1])
    return Cone2(kept, edge)


def apply_unimodular(matrix: Unimodular2, cone: Cone2) -> Cone2:
    """Image cone under a determinant +-1 integer map."""
    new_u = matrix.apply(cone.u)
    new_v = matrix.apply(cone.v)
    # unit-determinant maps preserve primitivity; keep that as an assertion
    assert primitive(new_u) == new_u and primitive(new_v) == new_v
    return Cone2(new_u, new_v)


@dataclass(frozen=True)
class ConeNormalForm:
    """Complete unimodular invariant: lattice index p, shear residue q.

    ``p == 1`` (with ``q == 0``) tags the smooth cones, the orbit of the
    first quadrant.
    """

    p: int
    q: int

    def __post_init__(self):
        if not (self.p >= 1 and 0 <= self.q < self.p):
            raise ValueError(f"({self.p}, {self.q}) out of range")
        if self.q > 0 and gcd(self.p, self.q) != 1:
            raise ValueError(f"({self.p}, {self.q}) not coprime")
        if self.q == 0 and self.p != 1:
            raise ValueError(f"residue 0 only tags the smooth form, got "
                             f"p={self.p}")

    @property
    def is_smooth(self) -> bool:
        return self.p == 1

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q}


_FLIP = Unimodular2(((1, 0), (0, -1)))


def _ordered_candidate(g1: Vec2, g2: Vec2, allow_flip: bool):
    """Canonical data for one generator ordering: map g1 to (1,0), reduce.

    Returns ``((p, q), transform)`` or ``None`` when the ordering is
    negatively oriented and orientation flips are disallowed.
    """
    g, alpha, beta = bezout(g1[0], g1[1])
    assert g == 1
    transform = Unimodular2(((alpha, beta), (-g1[1], g1[0])))
    a, b = transform.apply(g2)
    if b < 0:
        if not allow_flip:
            return None
        transform = _FLIP @ transform
        a, b = a, -b
    q = a % b
    shear = Unimodular2(((1, (q - a) // b), (0, 1)))
    return (b, q), shear @ transform


def canonical_transform(cone: Cone2, *, det_plus_only: bool = False):
    """Normal form together with a witness matrix sending the cone to
    ``cone((1, 0), (q, p))``."""
    best = None
    for g1, g2 in ((cone.u, cone.v), (cone.v, cone.u)):
        candidate = _ordered_candidate(g1, g2, allow_flip=not det_plus_only)
        if candidate is None:
            continue
        if best is None or candidate[0] < best[0]:
            best = candidate
    (p, q), transform = best
    return ConeNormalForm(p, q), transform


def normal_form(cone: Cone2, *, det_plus_only: bool = False) -> ConeNormalForm:
    """The complete invariant of the cone under integer linear maps.

    ``p`` is the index ``|det(u, v)|`` of the generator pair; ``q`` is the
    canonical residue after mapping one generator to ``(1, 0)`` and shearing,
    minimized lexicographically over the two orderings. With
    ``det_plus_only`` the orientation-reversing reduction is disallowed and
    only the positively oriented ordering contributes, giving the finer
    orientation-preserving invariant.
    """
    form, _ = canonical_transform(cone, det_plus_only=det_plus_only)
    return form


def gl_equivalent(a: Cone2, b: Cone2, *, det_plus_only: bool = False) -> bool:
    """Whether an integer unit-determinant map carries one cone to the other."""
    return (normal_form(a, det_plus_only=det_plus_only)
            == normal_form(b, det_plus_only=det_plus_only))


def equivalence_witness(a: Cone2, b: Cone2) -> Unimodular2 | None:
    """An explicit unimodular matrix mapping ``a`` onto ``b``, if one exists."""
    form_a, t_a = canonical_transform(a)
    form_b, t_b = canonical_transform(b)
    if form_a != form_b:
        return None
    return t_b.inverse() @ t_a


def cut_plan(cone: Cone2) -> tuple:
    """Inward primitive facet normals, one per generator, in generator order.

    Cutting the ambient plane by the two normals in order reproduces the
    cone exactly.
    """
    d = _det(cone.u, cone.v)
    n_u = _rot90(cone.u)
    if d < 0:
        n_u = (-n_u[0], -n_u[1])
    n_v = _rot90(cone.v)
    if d > 0:
        n_v = (-n_v[0], -n_v[1])
    return n_u, n_v


@dataclass(frozen=True)
class ConeN:
    """Cone in n dimensions, by inward half-space normals only.

    The representation keeps every cut that was applied; duplicates are
    dropped exactly, nothing else is simplified.
    """

    dimension: int
    normals: tuple = ()

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        cleaned = []
        for n in self.normals:
            n = primitive(n)
            if len(n) != self.dimension:
                raise ValueError(
                    f"normal {n} does not have dimension {self.dimension}")
            if n not in cleaned:
                cleaned.append(n)
        object.__setattr__(self, "normals", tuple(cleaned))

    def contains(self, w) -> bool:
        w = tuple(int(c) for c in w)
        return all(sum(a * b for a, b in zip(w, n)) >= 0
                   for n in self.normals)

    def to_json(self) -> dict:
        return {"dimension": self.dimension,
                "normals": [list(n) for n in self.normals]}

    @classmethod
    def from_json(cls, data) -> "ConeN":
        if not isinstance(data, dict) or "dimension" not in data:
            raise ValueError(f"not a half-space cone object: {data!r}")
        return cls(int(data["dimension"]),
                   tuple(tuple(int(c) for c in n)
                         for n in data.get("normals", ())))


def cut_coneN(cone: ConeN, normal) -> ConeN:
    """Append one half-space constraint (exact duplicates are dropped)."""
    normal = primitive(normal)
    if len(normal) != cone.dimension:
        raise ValueError(
            f"normal {normal} does not have dimension {cone.dimension}")
    return ConeN(cone.dimension, cone.normals + (normal,))


def cone_from_normals(cone: ConeN) -> Cone2:
    """Generator form of a two-normal planar cone (the cut-plan inverse)."""
    if cone.dimension != 2 or len(cone.normals) != 2:
        raise ValueError("generator form needs exactly two planar normals")
    n1, n2 = cone.normals
    if _det(n1, n2) == 0:
        raise ValueError("normals are collinear; no strict cone")
    gens = []
    for mine, other in ((n1, n2), (n2, n1)):
        d = _rot90(mine)
        if _dot(d, other) < 0:
            d = (-d[0], -d[1])
        gens.append(d)
    return Cone2(gens[0], gens[1])


def lattice_index(cone: Cone2) -> int:
    """|det| of the primitive generator pair; 1 exactly for smooth cones."""
    return abs(_det(cone.u, cone.v))
