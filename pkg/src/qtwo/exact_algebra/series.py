"""Truncated power series in a few variables with polynomial coefficients.

Exponent vectors whose total degree reaches ``prec`` are discarded.
Coefficients are :class:`Poly` values of a fixed coefficient ring.
"""
from __future__ import annotations

from typing import Callable, Mapping

from ..errors import PrecisionError, PreconditionError
from .poly import Poly, PolyRing

MAX_PREC = 64


class TruncatedSeries:
    __slots__ = ("names", "prec", "ring", "terms")

    def __init__(self, names, prec: int, ring: PolyRing, terms: Mapping | None = None):
        if prec < 1 or prec > MAX_PREC:
            raise PrecisionError(f"precision {prec} outside [1, {MAX_PREC}]")
        self.names = tuple(names)
        self.prec = prec
        self.ring = ring
        clean = {}
        for e, c in (terms or {}).items():
            if sum(e) >= prec:
                continue
            if not isinstance(c, Poly):
                c = ring(c)
            if c:
                clean[e] = c
        self.terms = clean

    # ------------------------------------------------------------ constructors
    @classmethod
    def variable(cls, names, prec, ring, name):
        names = tuple(names)
        e = tuple(1 if n == name else 0 for n in names)
        return cls(names, prec, ring, {e: ring(1)})

    @classmethod
    def constant(cls, names, prec, ring, c):
        names = tuple(names)
        return cls(names, prec, ring, {(0,) * len(names): c})

    def _new(self, terms, prec=None):
        return TruncatedSeries(self.names, self.prec if prec is None else prec, self.ring, terms)

    def _check(self, other: "TruncatedSeries"):
        if other.names != self.names or other.ring != self.ring:
            raise PreconditionError("series live in different rings")

    # ------------------------------------------------------------ arithmetic
    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(self.names, self.prec, self.ring, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return self._new(out, min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = other if isinstance(other, Poly) else self.ring(other)
            return self._new({e: v * c for e, v in self.terms.items()})
        self._check(other)
        prec = min(self.prec, other.prec)
        out: dict = {}
        b_items = sorted(other.terms.items(), key=lambda t: sum(t[0]))
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in b_items:
                if d1 + sum(e2) >= prec:
                    break
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return self._new(out, prec)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = TruncatedSeries.constant(self.names, self.prec, self.ring, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def inverse(self) -> "TruncatedSeries":
        c0 = self.constant_term()
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = c0.inverse() if not c0.is_constant() else self.ring(self.ring.domain.div(self.ring.domain.one, c0.constant()))
        h = 1 - self * inv0
        out = TruncatedSeries.constant(self.names, self.prec, self.ring, 1)
        term = out
        for _ in range(1, self.prec):
            term = term * h
            if not term.terms:
                break
            out = out + term
        return out * inv0

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        c = other if isinstance(other, Poly) else self.ring(other)
        return self * (c.inverse() if not c.is_constant() else self.ring(self.ring.domain.div(self.ring.domain.one, c.constant())))

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        p = min(self.prec, other.prec)
        return self.truncate(p).terms == other.truncate(p).terms and self.names == other.names

    __hash__ = None

    # ------------------------------------------------------------ structure
    def constant_term(self) -> Poly:
        return self.terms.get((0,) * len(self.names), self.ring(0))

    def coeff(self, *exps) -> Poly:
        if len(exps) == 1 and isinstance(exps[0], tuple):
            exps = exps[0]
        return self.terms.get(tuple(exps), self.ring(0))

    def truncate(self, prec: int) -> "TruncatedSeries":
        return self._new(self.terms, min(prec, self.prec))

    def valuation(self) -> int:
        return min((sum(e) for e in self.terms), default=self.prec)

    def map_coeffs(self, fn: Callable[[Poly], Poly], ring: PolyRing | None = None) -> "TruncatedSeries":
        ring = ring or self.ring
        return TruncatedSeries(self.names, self.prec, ring, {e: fn(c) for e, c in self.terms.items()})

    def change_ring(self, ring: PolyRing) -> "TruncatedSeries":
        return self.map_coeffs(lambda c: c.change_ring(ring), ring)

    def compose(self, mapping: Mapping[str, "TruncatedSeries"]) -> "TruncatedSeries":
        """Substitute each variable by a series without constant term (all in one ring)."""
        vals = [mapping[n] for n in self.names]
        first = vals[0]
        for v in vals:
            if v.names != first.names or v.ring != self.ring:
                raise PreconditionError("substituted series must share variables and ring")
            if v.constant_term():
                raise PreconditionError("substituted series must have zero constant term")
        prec = min([self.prec] + [v.prec for v in vals])
        powers = [[TruncatedSeries.constant(first.names, prec, self.ring, 1)] for _ in vals]
        out = TruncatedSeries(first.names, prec, self.ring)
        for e, c in self.terms.items():
            term = TruncatedSeries.constant(first.names, prec, self.ring, c)
            for i, k in enumerate(e):
                pw = powers[i]
                while len(pw) <= k:
                    pw.append(pw[-1] * vals[i])
                term = term * pw[k]
            out = out + term
        return out

    def __str__(self):
        if not self.terms:
            return f"O({self.names[0]}^{self.prec})" if len(self.names) == 1 else f"O(deg {self.prec})"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-k for k in e))):
            c = self.terms[e]
            mono = " ".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k)
            cs = str(c)
            if " + " in cs and mono:
                cs = f"({cs})"
            parts.append(f"{cs} * {mono}" if mono else cs)
        return " + ".join(parts)

    def __repr__(self):
        return f"TruncatedSeries({self}; prec={self.prec})"
