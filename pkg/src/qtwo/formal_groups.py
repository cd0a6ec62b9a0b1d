"""Formal group laws of b-form Weierstrass curves and their [m]-series.

The local parameter is z = x/y and w = 1/y; the curve becomes
w = 4z^3 + b2 z^2 w + 2 b4 z w^2 + b6 w^3, solved by fixed-point iteration.
The sum of two formal points is read off from the line through them.
Coefficients are computed over Q (denominators are powers of 2) and then
reduced mod 3 when asked.
"""
from __future__ import annotations

from dataclasses import dataclass

from .curves import WeierstrassB
from .errors import PrecisionError, PreconditionError
from .exact_algebra.poly import Poly, PolyRing
from .exact_algebra.scalars import F3, QQ, FFElem, Zmod
from .exact_algebra.series import TruncatedSeries

MAX_FGL_PREC = 40
CONVENTIONS = ("x/y", "-x/y")


def _lift_scalar(c):
    if isinstance(c, FFElem):
        digits = c.coeffs
        if any(digits[1:]):
            raise PreconditionError(f"{c} does not lift to the integers")
        v = digits[0]
        return v - c.field.p if v > c.field.p // 2 else v
    return c


def lift_to_char0(p: Poly) -> Poly:
    """Balanced integer lift of a polynomial over F_3, F_9 (prime-field values) or Z/m; identity on Z, Q."""
    dom = p.ring.domain
    ring = p.ring.with_domain(QQ)
    if dom.modulus:
        m = dom.modulus
        out = {}
        for e, c in p.terms.items():
            if isinstance(c, FFElem):
                out[e] = _lift_scalar(c)
            else:
                out[e] = c - m if c > m // 2 else c
        return Poly(ring, out)
    return p.change_ring(ring)


def _solve_w(b: WeierstrassB, prec: int, ring: PolyRing) -> TruncatedSeries:
    z = TruncatedSeries.variable(("z",), prec, ring, "z")
    b2, b4, b6 = (v.change_ring(ring) for v in (b.b2, b.b4, b.b6))
    w = TruncatedSeries(("z",), prec, ring)
    for _ in range(prec + 1):
        nxt = 4 * z ** 3 + z * z * w * b2 + z * w * w * (2 * b4) + w ** 3 * b6
        if nxt == w:
            return w
        w = nxt
    raise PrecisionError("w-series did not stabilise")  # pragma: no cover


@dataclass
class FormalGroupLaw:
    series: TruncatedSeries
    prec: int
    curve: WeierstrassB
    convention: str = "x/y"
    modulus: int = 0

    @property
    def ring(self) -> PolyRing:
        return self.series.ring

    def variable(self, name="T", names=("T",)) -> TruncatedSeries:
        return TruncatedSeries.variable(names, self.prec, self.ring, name)

    def add(self, a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
        return self.series.compose({"T1": a, "T2": b})

    def inverse_series(self, names=("T",)) -> TruncatedSeries:
        # no a1, a3 terms: negation (x, y) -> (x, -y) is z -> -z
        return -self.variable(names[0], names)

    def reduce(self, m: int) -> "FormalGroupLaw":
        ring = self.ring.with_domain(Zmod(m) if m != 3 else F3)
        return FormalGroupLaw(self.series.change_ring(ring), self.prec, self.curve, self.convention, m)

    def metadata(self) -> dict:
        return {"parameter": "z = x/y" if self.convention == "x/y" else "z = -x/y",
                "prec": self.prec, "modulus": self.modulus}


def fgl_from_curve(c: WeierstrassB, prec: int = 12, mod: int = 0, convention: str = "x/y") -> FormalGroupLaw:
    """Formal group law F(T1, T2) of a b-form curve, exact below total degree ``prec``."""
    if prec > MAX_FGL_PREC:
        raise PrecisionError(f"precision {prec} exceeds {MAX_FGL_PREC}")
    if prec < 2:
        raise PrecisionError("precision must be at least 2")
    if convention not in CONVENTIONS:
        raise PreconditionError(f"unknown convention {convention!r}")
    coeffs = [lift_to_char0(v if isinstance(v, Poly) else PolyRing((), QQ)(v)) for v in (c.b2, c.b4, c.b6)]
    names = sorted(set().union(*(set(v.ring.names) for v in coeffs)))
    ring = PolyRing(names, QQ)
    b2, b4, b6 = (v.change_ring(ring) for v in coeffs)
    lifted = WeierstrassB(b2, b4, b6)
    w = _solve_w(lifted, prec + 1, ring)

    names2 = ("T1", "T2")
    T1 = TruncatedSeries.variable(names2, prec, ring, "T1")
    T2 = TruncatedSeries.variable(names2, prec, ring, "T2")
    lam_terms = {}
    for (n,), a in w.terms.items():
        for i in range(n):
            e = (i, n - 1 - i)
            lam_terms[e] = lam_terms[e] + a if e in lam_terms else a
    lam = TruncatedSeries(names2, prec, ring, lam_terms)
    w1 = w.compose({"z": T1})
    nu = w1 - lam * T1
    num = nu * (lam * (4 * b4) + lam * lam * (3 * b6) + b2)
    den = lam * b2 + lam * lam * (2 * b4) + lam ** 3 * b6 + 4
    F = T1 + T2 + num * den.inverse()
    if convention == "-x/y":
        F = TruncatedSeries(names2, prec, ring, {e: v if sum(e) % 2 else -v for e, v in F.terms.items()})
    fgl = FormalGroupLaw(F, prec, c, convention, 0)
    return fgl.reduce(mod) if mod else fgl


def m_series(fgl: FormalGroupLaw, m: int) -> TruncatedSeries:
    """[m](T) by repeated formal addition; negative m through the inverse series."""
    if m == 0:
        raise PreconditionError("|m| must be at least 1")
    T = fgl.variable()
    base = T if m > 0 else fgl.inverse_series()
    out = base
    for _ in range(abs(m) - 1):
        out = fgl.add(out, base)
    return out


def v_coeffs(three_series: TruncatedSeries) -> tuple[Poly, Poly]:
    """(coefficient of T^3, coefficient of T^9) of a mod-3 [3]-series."""
    if three_series.prec < 10:
        raise PrecisionError("need precision >= 10 to read the T^9 coefficient")
    return three_series.coeff(3), three_series.coeff(9)


def associativity_defect(fgl: FormalGroupLaw) -> TruncatedSeries:
    names = ("T1", "T2", "T3")
    v = {n: TruncatedSeries.variable(names, fgl.prec, fgl.ring, n) for n in names}
    left = fgl.add(fgl.add(v["T1"], v["T2"]), v["T3"])
    right = fgl.add(v["T1"], fgl.add(v["T2"], v["T3"]))
    return left - right


def convention_comparison(c: WeierstrassB, prec: int = 11, mod: int = 3) -> dict:
    """The [3]-series T^9 coefficient in both parameter conventions."""
    out = {}
    for conv in CONVENTIONS:
        s = m_series(fgl_from_curve(c, prec, mod, conv), 3)
        out[conv] = {"T3": str(s.coeff(3)), "T9": str(s.coeff(9)), "series": str(s)}
    out["agree"] = out["x/y"]["series"] == out["-x/y"]["series"]
    return out


def curve_C() -> WeierstrassB:
    """y^2 = x^3 - x after y -> 2y: y^2 = 4x^3 - 4x."""
    R = PolyRing((), QQ)
    return WeierstrassB(R(0), R(-2), R(0))


def curve_Ctilde() -> WeierstrassB:
    """y^2 = 4x^3 + u1 x^2 + 2x."""
    R = PolyRing(("u1",), QQ)
    return WeierstrassB(R.gen("u1"), R(1), R(0))


def curve_Cq() -> WeierstrassB:
    R = PolyRing(("q2", "q4"), QQ)
    return WeierstrassB(4 * R.gen("q2"), 2 * R.gen("q4"), R(0))
