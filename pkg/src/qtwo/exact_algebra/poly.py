"""Sparse graded (Laurent) polynomials with exact coefficients.

A :class:`PolyRing` fixes the variables (sorted into the canonical order
``q2 < q4 < r < u1 < ...``), their weights, which of them may carry
negative exponents, and the coefficient :class:`Domain`.  Elements are
immutable :class:`Poly` values; zero coefficients are never stored.
"""
from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import PreconditionError
from .scalars import QQ, ZZ, Domain

VAR_ORDER = (
    "q2", "q4", "r", "u1", "Delta", "v2",
    "b2", "b4", "b6", "gamma2", "gamma4", "e1",
    "x", "y", "x1", "y1", "r1", "r2", "r3",
)

DEFAULT_WEIGHTS = {
    "q2": 2, "q4": 4, "r": 2, "u1": 0, "Delta": 12, "v2": 8,
    "b2": 2, "b4": 4, "b6": 6, "gamma2": 2, "gamma4": 4, "e1": 2,
    "x": 2, "y": 3, "x1": 2, "y1": 3, "r1": 2, "r2": 2, "r3": 2,
}

LAURENT_OK = frozenset({"q4", "v2", "Delta", "x"})


def _sort_names(names: Iterable[str]) -> tuple[str, ...]:
    names = list(dict.fromkeys(names))
    rank = {n: i for i, n in enumerate(VAR_ORDER)}
    return tuple(sorted(names, key=lambda n: (rank.get(n, len(VAR_ORDER)), n)))


class PolyRing:
    def __init__(self, names, domain: Domain = ZZ, weights: Mapping[str, int] | None = None,
                 invertible: Iterable[str] = ()):
        self.names = _sort_names(names)
        self.domain = domain
        w = dict(DEFAULT_WEIGHTS)
        w.update(weights or {})
        self.weights = tuple(w.get(n, 0) for n in self.names)
        inv = frozenset(invertible)
        bad = inv - LAURENT_OK
        if bad:
            raise PreconditionError(f"variables {sorted(bad)} may not be inverted")
        self.invertible = tuple(n in inv for n in self.names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self._key = (self.names, repr(domain), getattr(domain, "modulus", 0), self.weights, self.invertible)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        inv = [n for n, f in zip(self.names, self.invertible) if f]
        s = f"{self.domain}[{', '.join(self.names)}]"
        return s + (f" (invertible: {', '.join(inv)})" if inv else "")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def zero_exp(self) -> tuple:
        return (0,) * len(self.names)

    def __call__(self, c=0) -> "Poly":
        if isinstance(c, Poly):
            return c.change_ring(self)
        if isinstance(c, str):
            return parse_poly(c, self)
        c = self.domain.convert(c)
        return Poly(self, {self.zero_exp(): c} if not self.domain.is_zero(c) else {})

    def gen(self, name: str) -> "Poly":
        e = [0] * self.nvars
        e[self.index[name]] = 1
        return Poly(self, {tuple(e): self.domain.one})

    def gens(self) -> tuple:
        return tuple(self.gen(n) for n in self.names)

    def monomial(self, exps: Mapping[str, int], coeff=1) -> "Poly":
        e = [0] * self.nvars
        for n, k in exps.items():
            e[self.index[n]] = k
        return Poly(self, {tuple(e): self.domain.convert(coeff)})

    def with_domain(self, domain: Domain) -> "PolyRing":
        inv = [n for n, f in zip(self.names, self.invertible) if f]
        return PolyRing(self.names, domain, dict(zip(self.names, self.weights)), inv)

    def with_names(self, names, invertible=None) -> "PolyRing":
        inv = invertible if invertible is not None else [n for n, f in zip(self.names, self.invertible) if f]
        w = dict(zip(self.names, self.weights))
        return PolyRing(names, self.domain, w, inv)


class Poly:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        dom = ring.domain
        clean = {}
        for e, c in terms.items():
            c = dom.reduce(c)
            if not dom.is_zero(c):
                clean[e] = c
        for e in clean:
            for k, ok in zip(e, ring.invertible):
                if k < 0 and not ok:
                    raise PreconditionError("negative exponent on a non-invertible variable")
        self.ring = ring
        self.terms = clean
        self._hash = None

    # ------------------------------------------------------------ basics
    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise PreconditionError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring(other)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring(other).terms
        except (TypeError, ValueError, ArithmeticError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring.domain.convert(other)
            return Poly(self.ring, {e: v * c for e, v in self.terms.items()})
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ring(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "Poly":
        """Inverse of a unit monomial."""
        if len(self.terms) != 1:
            raise ArithmeticError("only monomials can be inverted")
        (e, c), = self.terms.items()
        dom = self.ring.domain
        return Poly(self.ring, {tuple(-k for k in e): dom.div(dom.one, c)})

    def __truediv__(self, other):
        if isinstance(other, Poly):
            return self * other.inverse()
        dom = self.ring.domain
        c = dom.convert(other)
        return Poly(self.ring, {e: dom.div(v, c) for e, v in self.terms.items()})

    # ------------------------------------------------------------ structure
    def monomials(self):
        """(exponent tuple, coefficient) pairs in canonical order."""
        return sorted(self.terms.items(), key=lambda t: _order_key(t[0]), reverse=True)

    def constant(self):
        return self.terms.get(self.ring.zero_exp(), self.ring.domain.zero)

    def is_constant(self) -> bool:
        return all(e == self.ring.zero_exp() for e in self.terms)

    def weight_of(self, e) -> int:
        return sum(k * w for k, w in zip(e, self.ring.weights))

    def weights_present(self) -> set:
        return {self.weight_of(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights_present()) <= 1

    @property
    def weight(self) -> int | None:
        ws = self.weights_present()
        if len(ws) > 1:
            raise PreconditionError("inhomogeneous polynomial has no weight")
        return ws.pop() if ws else None

    def degree(self, name: str | None = None) -> int:
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        i = self.ring.index[name]
        return max(e[i] for e in self.terms)

    def min_degree(self, name: str) -> int:
        i = self.ring.index[name]
        return min((e[i] for e in self.terms), default=0)

    def coeff(self, name: str, k: int) -> "Poly":
        """Coefficient of name^k as a polynomial in the remaining variables."""
        i = self.ring.index[name]
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + (0,) + e[i + 1:]] = c
        return Poly(self.ring, out)

    def coefficient(self, exps: Mapping[str, int]):
        e = [0] * self.ring.nvars
        for n, k in exps.items():
            e[self.ring.index[n]] = k
        return self.terms.get(tuple(e), self.ring.domain.zero)

    def variables(self) -> set:
        used = set()
        for e in self.terms:
            used.update(n for n, k in zip(self.ring.names, e) if k)
        return used

    # ------------------------------------------------------------ maps
    def change_ring(self, ring: PolyRing) -> "Poly":
        """Re-embed into a ring with more variables and/or another coefficient domain."""
        if ring == self.ring:
            return self
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for n, k in zip(self.ring.names, e):
                if k:
                    if n not in ring.index:
                        raise PreconditionError(f"variable {n} missing in {ring}")
                    ne[ring.index[n]] = k
            c = ring.domain.convert(c)
            t = tuple(ne)
            out[t] = out[t] + c if t in out else c
        return Poly(ring, out)

    def change_domain(self, domain: Domain) -> "Poly":
        return self.change_ring(self.ring.with_domain(domain))

    def subs(self, mapping: Mapping[str, object], ring: PolyRing | None = None) -> "Poly":
        """Substitute variables by polynomials (or scalars) of ``ring``."""
        ring = ring or self.ring
        vals = {}
        for n in self.ring.names:
            if n in mapping:
                v = mapping[n]
                vals[n] = v.change_ring(ring) if isinstance(v, Poly) else ring(v)
            else:
                vals[n] = ring.gen(n) if n in ring.index else None
        cache: dict = {}

        def power(n, k):
            if (n, k) not in cache:
                if vals[n] is None:
                    raise PreconditionError(f"no image for variable {n}")
                cache[(n, k)] = vals[n] ** k
            return cache[(n, k)]

        out = ring(0)
        for e, c in self.terms.items():
            term = ring(ring.domain.convert(c))
            for n, k in zip(self.ring.names, e):
                if k:
                    term = term * power(n, k)
            out = out + term
        return out

    def __call__(self, **kwargs) -> "Poly":
        return self.subs(kwargs)

    # ------------------------------------------------------------ text
    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"Poly({to_text(self)})"


def _order_key(e):
    return (sum(e), tuple(reversed(e)))


def _fmt_coeff(dom: Domain, c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return dom.text(c)


def to_text(p: Poly) -> str:
    """Canonical text: ``c * q2^a q4^b`` terms joined by `` + ``."""
    if not p.terms:
        return "0"
    parts = []
    for e, c in p.monomials():
        mono = " ".join(n if k == 1 else f"{n}^{k}" for n, k in zip(p.ring.names, e) if k)
        cs = _fmt_coeff(p.ring.domain, c)
        parts.append(f"{cs} * {mono}" if mono else cs)
    return " + ".join(parts)


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Parse an arithmetic expression (``+ - * / **``, ``^`` as power) into ``ring``.

    Juxtaposed factors (``q2^2 q4``, as written by :func:`to_text`) multiply.
    """
    text = re.sub(r"(?<=[\w)])\s+(?=[A-Za-z_(])", "*", text.strip())
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return ring(node.value)
        if isinstance(node, ast.Name):
            if node.id not in ring.index:
                raise PreconditionError(f"unknown variable {node.id!r}")
            return ring.gen(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if not b.is_constant():
                    return a * b.inverse()
                return a / b.constant()
            if isinstance(node.op, ast.Pow):
                if not b.is_constant():
                    raise PreconditionError("exponent must be an integer")
                return a ** int(b.constant())
        raise PreconditionError(f"unsupported expression: {ast.dump(node)}")

    return ev(tree)


def ring_for(*names: str, domain: Domain = QQ, invertible=()) -> PolyRing:
    return PolyRing(names, domain, invertible=invertible)
