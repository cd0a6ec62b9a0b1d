"""Weierstrass curves with a level-2 structure, the isogeny-induced ring maps,
and point / endomorphism arithmetic over finite fields of characteristic 3.

q-form:  y^2 = 4x(x^2 + q2 x + q4)    (2-torsion point (0, 0) marked)
b-form:  y^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .errors import ConfigurationError, PreconditionError
from .exact_algebra.curve_ring import CurveRing
from .exact_algebra.poly import Poly, PolyRing
from .exact_algebra.scalars import F3, GF, QQ, ZZ, FFElem, FiniteField

SEED = 0x5EED

MAP_RING = PolyRing(("q2", "q4", "r"), QQ)


def _as_poly(v, ring):
    return v if isinstance(v, Poly) else ring(v)


@dataclass(frozen=True)
class WeierstrassB:
    b2: Poly
    b4: Poly
    b6: Poly

    def discriminant(self) -> Poly:
        b2, b4, b6 = self.b2, self.b4, self.b6
        four_delta = -108 * b6 * b6 + (36 * b2 * b4 - b2 ** 3) * b6 - 32 * b4 ** 3 + b2 * b2 * b4 * b4
        return four_delta / 4

    def rhs(self, x):
        return 4 * x ** 3 + self.b2 * x * x + 2 * self.b4 * x + self.b6


@dataclass(frozen=True)
class WeierstrassQ:
    q2: Poly
    q4: Poly

    @classmethod
    def symbolic(cls, domain=ZZ):
        R = PolyRing(("q2", "q4"), domain)
        return cls(R.gen("q2"), R.gen("q4"))

    @classmethod
    def of(cls, q2, q4, ring: PolyRing | None = None):
        ring = ring or (q2.ring if isinstance(q2, Poly) else q4.ring if isinstance(q4, Poly) else PolyRing((), ZZ))
        return cls(_as_poly(q2, ring), _as_poly(q4, ring))

    @property
    def ring(self) -> PolyRing:
        return self.q2.ring

    def b_form(self) -> WeierstrassB:
        return WeierstrassB(4 * self.q2, 2 * self.q4, self.q2.ring(0))

    def rhs(self, x):
        return 4 * x * (x * x + self.q2 * x + self.q4)

    def check_unit_discriminant(self) -> bool | None:
        """True/False when the base ring is a field of constants, None when symbolic."""
        d = discriminant(self)
        if not d.is_constant():
            return None
        return bool(d)


def discriminant(c: WeierstrassQ) -> Poly:
    """q4^2 (16 q2^2 - 64 q4)."""
    q2, q4 = c.q2, c.q4
    return q4 * q4 * (16 * q2 * q2 - 64 * q4)


# --------------------------------------------------------------------------
# induced maps on MF_0(2) and Gamma

@dataclass(frozen=True)
class RingMapSpec:
    """Images of q2, q4, r; an image of None means undefined (map not defined on r)."""

    name: str
    images: dict = field(hash=False)

    def image(self, var: str) -> Poly | None:
        return self.images.get(var)

    def apply(self, p: Poly) -> Poly:
        used = p.variables()
        for v in used:
            if v in ("q2", "q4", "r") and self.images.get(v) is None:
                raise PreconditionError(f"{self.name} is undefined on {v}")
        ring = next(iter(v.ring for v in self.images.values() if v is not None))
        mapping = {v: img for v, img in self.images.items() if img is not None and v in p.ring.index}
        return p.change_ring(ring).subs(mapping) if p.ring != ring else p.subs(mapping)

    def check_weights(self) -> bool:
        expect = {"q2": 2, "q4": 4, "r": 2}
        for v, img in self.images.items():
            if img is None or img.is_zero():
                continue
            if not img.is_homogeneous() or img.weight != expect[v]:
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, RingMapSpec):
            return NotImplemented
        return self.images == other.images

    def __str__(self):
        parts = [f"{v} -> {'undefined' if self.images[v] is None else self.images[v]}" for v in ("q2", "q4", "r")]
        return f"{self.name}: " + ", ".join(parts)


def _map(name, q2, q4, r, ring=MAP_RING):
    q2v, q4v, rv = ring.gen("q2"), ring.gen("q4"), ring.gen("r")
    imgs = {}
    for v, f in (("q2", q2), ("q4", q4), ("r", r)):
        imgs[v] = None if f is None else _as_poly(f(q2v, q4v, rv), ring)
    return RingMapSpec(name, imgs)


def _translate_curve(q2, q4, r):
    """Coefficients of the q-form after x -> x + r on a curve with r^3 + q2 r^2 + q4 r = 0."""
    R = PolyRing(("q2", "q4", "r", "x"), QQ)
    x = R.gen("x")
    c = WeierstrassQ(R.gen("q2"), R.gen("q4"))
    shifted = c.rhs(x).subs({"x": x + R.gen("r")})
    new_q2 = shifted.coeff("x", 2) / 4
    new_q4 = shifted.coeff("x", 1) / 4
    const = shifted.coeff("x", 0)
    rr = R.gen("r")
    if const != 4 * (rr ** 3 + R.gen("q2") * rr ** 2 + R.gen("q4") * rr):
        raise AssertionError("translation constant term is not 4 f(r)")
    back = {"q2": q2, "q4": q4, "r": r}
    return new_q2.subs(back, q2.ring), new_q4.subs(back, q2.ring)


def derived_eta_r() -> RingMapSpec:
    """eta_R computed by substituting x -> x + r in the q-form."""
    R = MAP_RING
    nq2, nq4 = _translate_curve(R.gen("q2"), R.gen("q4"), R.gen("r"))
    return RingMapSpec("eta_R", {"q2": nq2, "q4": nq4, "r": R.gen("r")})


MAP_TABLE: dict[str, Callable[[], RingMapSpec]] = {
    "phi_f": lambda: _map("phi_f", lambda a, b, r: a, lambda a, b, r: b, lambda a, b, r: 0),
    "psi_2": lambda: _map("psi_2", lambda a, b, r: 4 * a, lambda a, b, r: 16 * b, lambda a, b, r: 4 * r),
    "psi_d": lambda: _map("psi_d", lambda a, b, r: -2 * a, lambda a, b, r: a * a - 4 * b, None),
    "phi_q": lambda: _map("phi_q", lambda a, b, r: -2 * a, lambda a, b, r: a * a - 4 * b, lambda a, b, r: 0),
    "eta_R": lambda: _map("eta_R", lambda a, b, r: a + 3 * r, lambda a, b, r: b + 2 * a * r + 3 * r * r,
                          lambda a, b, r: r),
    "psi_2_inverse": lambda: _map("psi_2_inverse", lambda a, b, r: a / 4, lambda a, b, r: b / 16,
                                  lambda a, b, r: r / 4),
}


def induced_map(name: str) -> RingMapSpec:
    try:
        return MAP_TABLE[name]()
    except KeyError:
        raise ConfigurationError(f"unknown induced map {name!r}") from None


def mu_lambda(lam: FFElem) -> RingMapSpec:
    """Scaling x -> lam^2 x, y -> lam^3 y over F_9: q2 -> lam^2 q2, q4 -> lam^4 q4, r -> lam^2 r."""
    R = PolyRing(("q2", "q4", "r"), lam.field)
    return RingMapSpec("mu_lambda", {"q2": R.gen("q2") * (lam ** 2), "q4": R.gen("q4") * (lam ** 4),
                                     "r": R.gen("r") * (lam ** 2)})


def compose(f: RingMapSpec, g: RingMapSpec, name: str | None = None) -> RingMapSpec:
    """Pullback along the geometric composite f o g: v -> g*(f*(v))."""
    imgs = {}
    for v, img in f.images.items():
        if img is None:
            imgs[v] = None
            continue
        try:
            imgs[v] = g.apply(img)
        except PreconditionError:
            imgs[v] = None
    return RingMapSpec(name or f"{f.name}.{g.name}", imgs)


def reduce_mod_3_q2(p: Poly) -> Poly:
    ring = PolyRing(tuple(n for n in p.ring.names), F3, invertible=[n for n, f in zip(p.ring.names, p.ring.invertible) if f])
    q = p.change_ring(ring)
    return q.subs({"q2": 0}) if "q2" in ring.index else q


# --------------------------------------------------------------------------
# quotient by the marked 2-torsion point

def quotient_by_canonical_2torsion(c: WeierstrassQ) -> tuple[WeierstrassB, WeierstrassQ]:
    """Quotient curve as a b-form (from x1 = x + q4/x) and as a q-form (after x -> x - q2)."""
    q2, q4 = c.q2, c.q4
    b = WeierstrassB(4 * q2, -8 * q4, -16 * q2 * q4)
    # shift the 2-torsion root x = -q2 of the quotient's cubic to 0
    R = PolyRing(tuple(c.ring.names) + ("x",), c.ring.domain)
    x = R.gen("x")
    bq = WeierstrassB(b.b2.change_ring(R), b.b4.change_ring(R), b.b6.change_ring(R))
    shifted = bq.rhs(x - q2.change_ring(R))
    if not shifted.coeff("x", 0).is_zero():
        raise AssertionError("x = -q2 is not a root of the quotient cubic")
    qf = WeierstrassQ(_drop_var(shifted.coeff("x", 2) / 4, c.ring, "x"),
                      _drop_var(shifted.coeff("x", 1) / 4, c.ring, "x"))
    return b, qf


def quotient_identity_residue(relation: str = "Cq") -> Poly:
    """y1^2 - (4x1^3 + 4q2x1^2 - 16q4x1 - 16q2q4) for x1 = x + q4/x, y1 = y - q4 y/x^2, in the curve ring."""
    C = CurveRing(relation)
    R = C.poly_ring
    x, y, q2, q4 = R.gen("x"), R.gen("y"), R.gen("q2"), R.gen("q4")
    x1 = C(x + q4 * x ** -1)
    y1 = C(y - q4 * y * x ** -2)
    q2c, q4c = C(q2), C(q4)
    res = y1 * y1 - (4 * x1 ** 3 + 4 * q2c * x1 ** 2 - 16 * q4c * x1 - 16 * q2c * q4c)
    return res.poly


# --------------------------------------------------------------------------
# etale check

def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = None
    for j in range(n):
        a = m[0][j]
        if not a:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = a * _det(minor)
        term = term if j % 2 == 0 else -term
        total = term if total is None else total + term
    return total if total is not None else m[0][0] * 0


def sylvester_resultant(f: Poly, g: Poly, var: str) -> Poly:
    m, n = f.degree(var), g.degree(var)
    fc = [f.coeff(var, k).subs({var: 0}) for k in range(m, -1, -1)]
    gc = [g.coeff(var, k).subs({var: 0}) for k in range(n, -1, -1)]
    zero = f.ring(0)
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - n - 1 - i))
    return _det(rows)


def etale_resultant_check(c: WeierstrassQ) -> Poly:
    """Res(f, f') for f(r) = r^3 + q2 r^2 + q4 r; asserts 16 Res = -Delta."""
    R = PolyRing(tuple(c.ring.names) + ("r",), c.ring.domain)
    r = R.gen("r")
    q2, q4 = c.q2.change_ring(R), c.q4.change_ring(R)
    f = r ** 3 + q2 * r ** 2 + q4 * r
    fp = 3 * r ** 2 + 2 * q2 * r + q4
    res = _drop_var(sylvester_resultant(f, fp, "r"), c.ring, "r")
    if 16 * res != -discriminant(c):
        raise AssertionError("16 Res(f, f') != -Delta")
    return res


def _drop_var(p: Poly, ring: PolyRing, var: str) -> Poly:
    out = {}
    for e, cf in p.terms.items():
        out[tuple(k for n, k in zip(p.ring.names, e) if n != var)] = cf
    return Poly(ring, out)


# --------------------------------------------------------------------------
# points over finite fields

class FFCurve:
    """y^2 = c3 x^3 + c2 x^2 + c1 x + c0 over a finite field, c3 in {1, 4}."""

    def __init__(self, field: FiniteField, c3=1, c2=0, c1=0, c0=0):
        self.field = field
        self.c = tuple(field(v) if not isinstance(v, FFElem) else v for v in (c3, c2, c1, c0))
        if self.c[0] == 0:
            raise PreconditionError("leading coefficient must be nonzero")
        # monic model Y^2 = x^3 + a2 x^2 + a4 x + a6 with y = k Y, k^2 = c3
        c3 = self.c[0]
        if not c3.is_square():
            raise PreconditionError("leading coefficient must be a square")
        self.k = c3.sqrt()
        self.a = tuple(ci / c3 for ci in self.c[1:])

    def __eq__(self, other):
        return isinstance(other, FFCurve) and (self.field, self.c) == (other.field, other.c)

    def __hash__(self):
        return hash((self.field, self.c))

    def rhs(self, x):
        c3, c2, c1, c0 = self.c
        return ((c3 * x + c2) * x + c1) * x + c0

    def contains(self, x, y) -> bool:
        return y * y == self.rhs(x)

    def __call__(self, x, y) -> "CurvePoint":
        x, y = self.field.convert(x), self.field.convert(y)
        if not self.contains(x, y):
            raise PreconditionError(f"({x}, {y}) is not on the curve")
        return CurvePoint(self, x, y)

    @property
    def infinity(self) -> "CurvePoint":
        return CurvePoint(self, None, None)

    def points(self) -> list:
        out = [self.infinity]
        for x in self.field.elements():
            v = self.rhs(x)
            if not v:
                out.append(CurvePoint(self, x, v))
            elif v.is_square():
                s = v.sqrt()
                out.extend([CurvePoint(self, x, s), CurvePoint(self, x, -s)])
        return out


class CurvePoint:
    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: FFCurve, x, y):
        self.curve, self.x, self.y = curve, x, y

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        return isinstance(other, CurvePoint) and self.curve == other.curve and (self.x, self.y) == (other.x, other.y)

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        return "O" if self.is_infinity else f"({self.x!r}, {self.y!r})"

    def __neg__(self):
        return point_arith("neg", self)

    def __add__(self, other):
        return point_arith("add", self, other)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, m: int):
        return point_arith("mul", self, m=m)


def _check_on(P: CurvePoint):
    if not P.is_infinity and not P.curve.contains(P.x, P.y):
        raise PreconditionError(f"{P} is not on the curve")


def _add(P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    E = P.curve
    a2, a4, _ = E.a
    k = E.k
    Y1, Y2 = P.y / k, Q.y / k
    if P.x == Q.x:
        if Y1 + Y2 == 0:
            return E.infinity
        lam = (3 * P.x * P.x + 2 * a2 * P.x + a4) / (2 * Y1)
    else:
        lam = (Y2 - Y1) / (Q.x - P.x)
    x3 = lam * lam - a2 - P.x - Q.x
    Y3 = -(Y1 + lam * (x3 - P.x))
    return CurvePoint(E, x3, Y3 * k)


def point_arith(op: str, *points: CurvePoint, m: int = 0) -> CurvePoint:
    """Group law on y^2 = c3 x^3 + ... computed on the monic model Y = y / sqrt(c3)."""
    for P in points:
        _check_on(P)
    if op == "neg":
        (P,) = points
        return P if P.is_infinity else CurvePoint(P.curve, P.x, -P.y)
    if op == "add":
        P, Q = points
        if P.curve != Q.curve:
            raise PreconditionError("points on different curves")
        return _add(P, Q)
    if op == "mul":
        (P,) = points
        if m < 0:
            return point_arith("mul", point_arith("neg", P), m=-m)
        out, base = P.curve.infinity, P
        while m:
            if m & 1:
                out = _add(out, base)
            base = _add(base, base)
            m >>= 1
        return out
    raise PreconditionError(f"unknown point operation {op!r}")


# --------------------------------------------------------------------------
# endomorphisms of y^2 = x^3 - x

def supersingular_curve(k: int = 2) -> FFCurve:
    if k % 2:
        raise PreconditionError("extension degree must be even so that F_9 embeds")
    return FFCurve(GF(k), 1, 0, -1, 0)


def _frob(P: CurvePoint, times: int = 1) -> CurvePoint:
    if P.is_infinity:
        return P
    return CurvePoint(P.curve, P.x.frobenius(times), P.y.frobenius(times))


def endo_apply(e: str, P: CurvePoint) -> CurvePoint:
    """s, t, F, sigma, sigma_inv, neg on C: y^2 = x^3 - x over F_{3^k}, k even."""
    _check_on(P)
    E = P.curve
    if E.c != tuple(E.field(v) for v in (1, 0, -1, 0)):
        raise PreconditionError("endomorphisms are defined on y^2 = x^3 - x only")
    if P.is_infinity:
        return P
    if e == "neg":
        return -P
    if e == "s":
        return CurvePoint(E, P.x + 1, P.y)
    if e == "t":
        w = E.field.omega
        return CurvePoint(E, P.x * w ** 4, P.y * w ** 6)
    if e in ("F", "sigma"):
        return _frob(P)
    if e == "sigma_inv":
        return _frob(P, E.field.k - 1)
    raise ConfigurationError(f"unknown endomorphism {e!r}")


def _chain(*names):
    """Composite endomorphism applying the rightmost name first."""
    def f(P):
        for n in reversed(names):
            P = endo_apply(n, P)
        return P
    return f


def _sample_points(E: FFCurve, limit: int = 512, size: int = 64, seed: int = SEED):
    pts = E.points()
    if len(pts) <= limit:
        return pts
    return random.Random(seed).sample(pts, size)


def endo_relation_report(k: int = 2, seed: int = SEED, sample_size: int = 64) -> list[dict]:
    """Evaluate the endomorphism relations pointwise on C(F_{3^k})."""
    E = supersingular_curve(k)
    pts = _sample_points(E, size=sample_size, seed=seed)

    def mul(m):
        return lambda P: point_arith("mul", P, m=m)

    twice_s = lambda P: point_arith("mul", endo_apply("s", P), m=2)
    one_plus_f = lambda P: P + endo_apply("F", P)
    checks = [
        ("F^2 = [-3]", _chain("F", "F"), mul(-3)),
        ("t^2 = [-1]", _chain("t", "t"), mul(-1)),
        ("s^3 = 1", _chain("s", "s", "s"), lambda P: P),
        ("Ft = -tF", _chain("F", "t"), _chain("neg", "t", "F")),
        ("st = ts^2", _chain("s", "t"), _chain("t", "s", "s")),
        ("sigma t sigma^-1 = -t", _chain("sigma", "t", "sigma_inv"), _chain("neg", "t")),
        ("sigma t sigma = -t", _chain("sigma", "t", "sigma"), _chain("neg", "t")),
    ]
    out = []
    for name, lhs, rhs in checks:
        ok = all(lhs(P) == rhs(P) for P in pts)
        out.append({"relation": name, "status": "pass" if ok else "fail", "variant": None,
                    "points_checked": len(pts)})
    plus = all(twice_s(P) == one_plus_f(P) for P in pts)
    minus = all(twice_s(P) == -one_plus_f(P) for P in pts)
    if plus and minus:
        variant = "both (indistinguishable on this point set)"
    else:
        variant = "2s = 1 + F" if plus else "2s = -(1 + F)" if minus else None
    out.append({"relation": "s = (1 + F)/2", "status": "pass" if plus else "fail", "variant": variant,
                "points_checked": len(pts)})
    out.append({"relation": "s = -(1 + F)/2", "status": "pass" if minus else "fail", "variant": variant,
                "points_checked": len(pts)})
    return out
