"""Coordinate rings of Weierstrass curves, Laurent in x.

An element is a polynomial in y with coefficients Laurent in x over a
base polynomial ring.  The normal form has y-degree at most 1: every
y^2 is replaced by the right-hand side of the registered relation.
"""
from __future__ import annotations

from typing import Callable

from ..errors import ConfigurationError, PreconditionError
from .poly import Poly, PolyRing
from .scalars import ZZ, Domain

_RELATIONS: dict[str, tuple[tuple[str, ...], Callable[[PolyRing], Poly]]] = {}


def register_relation(name: str, base_vars, rhs: Callable[[PolyRing], Poly]) -> None:
    """Register y^2 = rhs(R) where R contains x, y and ``base_vars``."""
    _RELATIONS[name] = (tuple(base_vars), rhs)


def registered_relations() -> list[str]:
    return sorted(_RELATIONS)


register_relation("Cq", ("q2", "q4"), lambda R: 4 * R.gen("x") ** 3 + 4 * R.gen("q2") * R.gen("x") ** 2
                  + 4 * R.gen("q4") * R.gen("x"))
register_relation("Cb", ("b2", "b4", "b6"), lambda R: 4 * R.gen("x") ** 3 + R.gen("b2") * R.gen("x") ** 2
                  + 2 * R.gen("b4") * R.gen("x") + R.gen("b6"))
register_relation("C", (), lambda R: R.gen("x") ** 3 - R.gen("x"))
register_relation("Ctilde", ("u1",), lambda R: 4 * R.gen("x") ** 3 + R.gen("u1") * R.gen("x") ** 2 + 2 * R.gen("x"))


class CurveRing:
    def __init__(self, relation: str, domain: Domain = ZZ, extra=()):
        if relation not in _RELATIONS:
            raise ConfigurationError(f"unregistered curve relation {relation!r}")
        base, rhs = _RELATIONS[relation]
        self.relation = relation
        self.poly_ring = PolyRing(tuple(base) + tuple(extra) + ("x", "y"), domain, invertible=("x",))
        self.rhs = rhs(self.poly_ring)

    def __eq__(self, other):
        return isinstance(other, CurveRing) and (self.relation, self.poly_ring) == (other.relation, other.poly_ring)

    def __hash__(self):
        return hash((self.relation, self.poly_ring))

    def __repr__(self):
        return f"CurveRing({self.relation}: y^2 = {self.rhs})"

    def __call__(self, p) -> "CurveRingElement":
        if isinstance(p, CurveRingElement):
            return p
        if isinstance(p, str):
            p = self.poly_ring(p)
        elif not isinstance(p, Poly):
            p = self.poly_ring(p)
        return curve_ring_normalize(CurveRingElement(self, p))

    def gen(self, name: str) -> "CurveRingElement":
        return self(self.poly_ring.gen(name))

    @property
    def x(self):
        return self.gen("x")

    @property
    def y(self):
        return self.gen("y")


class CurveRingElement:
    """Numerator/x-denominator pair, stored as a single Laurent polynomial."""

    __slots__ = ("ring", "poly")

    def __init__(self, ring: CurveRing, poly: Poly):
        if poly.ring != ring.poly_ring:
            poly = poly.change_ring(ring.poly_ring)
        self.ring = ring
        self.poly = poly

    def _lift(self, other):
        if isinstance(other, CurveRingElement):
            if other.ring != self.ring:
                raise PreconditionError("elements of different curve rings")
            return other
        return self.ring(other)

    def __add__(self, other):
        return CurveRingElement(self.ring, self.poly + self._lift(other).poly)

    __radd__ = __add__

    def __neg__(self):
        return CurveRingElement(self.ring, -self.poly)

    def __sub__(self, other):
        return CurveRingElement(self.ring, self.poly - self._lift(other).poly)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        return curve_ring_normalize(CurveRingElement(self.ring, self.poly * self._lift(other).poly))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.ring(1)
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, other):
        """Division by a unit monomial in x and base variables (no y)."""
        other = self._lift(other)
        if other.poly.degree("y") > 0:
            raise PreconditionError("can only divide by y-free monomials")
        return CurveRingElement(self.ring, self.poly * other.poly.inverse())

    def is_zero(self) -> bool:
        return curve_ring_normalize(self).poly.is_zero()

    def __eq__(self, other):
        try:
            other = self._lift(other)
        except (PreconditionError, TypeError):
            return NotImplemented
        return curve_ring_normalize(self).poly == curve_ring_normalize(other).poly

    def __hash__(self):
        return hash(curve_ring_normalize(self).poly)

    @property
    def x_denominator(self) -> int:
        """Exponent k such that x^k times the element is x-polynomial (minimal)."""
        return max(0, -curve_ring_normalize(self).poly.min_degree("x"))

    @property
    def numerator(self) -> Poly:
        k = self.x_denominator
        return curve_ring_normalize(self).poly * self.ring.poly_ring.gen("x") ** k

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"CurveRingElement({self.poly})"


def curve_ring_normalize(e: CurveRingElement) -> CurveRingElement:
    """Reduce to y-degree <= 1 using y^2 = rhs."""
    if e.ring.relation not in _RELATIONS:
        raise ConfigurationError(f"unregistered curve relation {e.ring.relation!r}")
    p = e.poly
    R = p.ring
    iy = R.index["y"]
    if p.degree("y") <= 1:
        return e
    rhs_pows = [R(1)]
    out = R(0)
    for exp, c in p.terms.items():
        k = exp[iy]
        q, r = divmod(k, 2)
        while len(rhs_pows) <= q:
            rhs_pows.append(rhs_pows[-1] * e.ring.rhs)
        base = list(exp)
        base[iy] = r
        out = out + Poly(R, {tuple(base): c}) * rhs_pows[q]
    return CurveRingElement(e.ring, out)
