"""Exact scalar domains.

Coefficient domains for polynomials (``ZZ``, ``QQ``, ``Zmod``), finite
fields of order 3^k stored as log/antilog tables, and the Witt ring
W(F_9) truncated mod 3^n.

F_9 is F_3[w]/(w^2 - w - 1); w is then a primitive 8th root of unity
(w^4 = -1).  W(F_9)/3^n is (Z/3^n)[w]/(w^2 - a w - 1) where a is the
3-adic square root of -2 with a = 1 mod 3, so that w^4 = -1 holds at
every precision and w stays the Teichmuller lift.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..errors import NotASquareError, PreconditionError


class Domain:
    """Coefficient ring used by :class:`~qtwo.exact_algebra.poly.Poly`."""

    name = "?"
    modulus = 0

    def convert(self, x):
        raise NotImplementedError

    def reduce(self, c):
        return c

    def is_zero(self, c) -> bool:
        return c == 0

    def div(self, a, b):
        raise NotImplementedError

    def text(self, c) -> str:
        return str(c)

    @property
    def zero(self):
        return self.convert(0)

    @property
    def one(self):
        return self.convert(1)

    def __repr__(self):
        return self.name


class _Integers(Domain):
    name = "ZZ"

    def convert(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ArithmeticError(f"{x} is not an integer")
            return int(x.numerator)
        return int(x)

    def div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{a}/{b} is not integral")
        return q


class _Rationals(Domain):
    name = "QQ"

    def convert(self, x):
        return Fraction(x)

    def reduce(self, c):
        return c if isinstance(c, Fraction) else Fraction(c)

    def div(self, a, b):
        return Fraction(a) / b


ZZ = _Integers()
QQ = _Rationals()


class Zmod(Domain):
    """Z/m for m > 1; elements stored as ints in [0, m)."""

    def __init__(self, m: int):
        if m < 2:
            raise PreconditionError("modulus must be >= 2")
        self.modulus = m
        self.name = f"Z/{m}"

    def __eq__(self, other):
        return isinstance(other, Zmod) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("Zmod", self.modulus))

    def convert(self, x):
        m = self.modulus
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, m) % m
        return int(x) % m

    def reduce(self, c):
        return c % self.modulus

    def div(self, a, b):
        try:
            return a * pow(b, -1, self.modulus) % self.modulus
        except ValueError as exc:
            raise ArithmeticError(f"{b} is not a unit mod {self.modulus}") from exc

    def text(self, c) -> str:
        m = self.modulus
        c %= m
        return str(c - m if c > m // 2 else c)


F3 = Zmod(3)


def mod_reduce(x, m: int) -> int:
    """Reduce an integer or a 2-power-denominator rational mod m."""
    if isinstance(x, Fraction):
        return x.numerator * pow(x.denominator, -1, m) % m
    return int(x) % m


# --------------------------------------------------------------------------
# finite fields of characteristic 3

def _poly_mulmod(a, b, f, p):
    """(a*b) mod f over F_p; coefficient lists low-to-high, f monic."""
    k = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * f[i]) % p
    return (prod + [0] * k)[:k]


def _find_primitive(p: int, k: int):
    if p == 3 and k == 2:
        return [2, 2, 1]  # x^2 - x - 1
    q = p**k
    for tail in range(q):
        f = [(tail // p**i) % p for i in range(k)] + [1]
        if f[0] == 0:
            continue
        x = [0, 1] + [0] * (k - 2) if k > 1 else [(-f[0]) % p]
        e = [1] + [0] * (k - 1)
        order = None
        for n in range(1, q):
            e = _poly_mulmod(e, x, f, p)
            if e == [1] + [0] * (k - 1):
                order = n
                break
        if order == q - 1:
            return f
    raise RuntimeError("no primitive polynomial found")  # pragma: no cover


class FiniteField(Domain):
    """GF(p^k) with elements encoded as ints sum c_i p^i over a primitive modulus."""

    def __init__(self, k: int, p: int = 3):
        if k < 1 or p**k > 3**8:
            raise PreconditionError("field too large for table arithmetic")
        self.p, self.k, self.q = p, k, p**k
        self.name = f"GF({p}^{k})"
        self.modulus = p
        self.poly = _find_primitive(p, k)
        q = self.q
        powers = np.array([p**i for i in range(k)], dtype=np.int64)
        self._digits = np.array([[(n // p**i) % p for i in range(k)] for n in range(q)], dtype=np.int64)
        self._powers = powers
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        e = [1] + [0] * (k - 1)
        gen = [0, 1] + [0] * (k - 2) if k > 1 else [(-self.poly[0]) % p]
        for n in range(q - 1):
            idx = int(sum(c * p**i for i, c in enumerate(e)))
            exp[n] = idx
            log[idx] = n
            e = _poly_mulmod(e, gen, self.poly, p)
        self._exp, self._log = exp, log
        self._add = None
        if q <= 729:
            d = self._digits
            self._add = ((d[:, None, :] + d[None, :, :]) % p) @ powers
        self._omega = None

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (other.p, other.k) == (self.p, self.k)

    def __hash__(self):
        return hash(("GF", self.p, self.k))

    def __reduce__(self):
        return (GF, (self.k, self.p))

    # raw index arithmetic -------------------------------------------------
    def _iadd(self, a: int, b: int) -> int:
        if self._add is not None:
            return int(self._add[a, b])
        return int(((self._digits[a] + self._digits[b]) % self.p) @ self._powers)

    def _ineg(self, a: int) -> int:
        return int(((-self._digits[a]) % self.p) @ self._powers)

    def _imul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])

    # element construction -------------------------------------------------
    def __call__(self, x) -> "FFElem":
        return self.convert(x)

    def convert(self, x):
        if isinstance(x, FFElem):
            if x.field != self:
                raise PreconditionError("element of a different field")
            return x
        if isinstance(x, Fraction):
            x = mod_reduce(x, self.p)
        return FFElem(self, int(x) % self.p)

    def from_coeffs(self, coeffs) -> "FFElem":
        coeffs = list(coeffs) + [0] * (self.k - len(coeffs))
        return FFElem(self, int(sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))))

    def gen(self) -> "FFElem":
        return FFElem(self, int(self._exp[1 % (self.q - 1)]))

    def elements(self):
        return [FFElem(self, i) for i in range(self.q)]

    def div(self, a, b):
        return a / b

    @property
    def omega(self) -> "FFElem":
        """A fixed root of w^2 = w + 1 (a primitive 8th root of unity); needs k even."""
        if self.p != 3 or self.k % 2:
            raise PreconditionError("F_9 does not embed")
        if self._omega is None:
            if self.k == 2:
                self._omega = FFElem(self, 3)
            else:
                one = self.one
                for n in range(self.q - 1):
                    w = FFElem(self, int(self._exp[n]))
                    if w * w == w + one:
                        self._omega = w
                        break
        return self._omega

    def embed_f9(self, c0: int, c1: int) -> "FFElem":
        return self(c0) + self(c1) * self.omega

    def text(self, c) -> str:
        return str(c)


@lru_cache(maxsize=None)
def GF(k: int, p: int = 3) -> FiniteField:
    return FiniteField(k, p)


class FFElem:
    __slots__ = ("field", "idx")

    def __init__(self, field: FiniteField, idx: int):
        self.field = field
        self.idx = idx

    def _coerce(self, other):
        if isinstance(other, FFElem):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.convert(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FFElem(self.field, self.field._iadd(self.idx, other.idx))

    __radd__ = __add__

    def __neg__(self):
        return FFElem(self.field, self.field._ineg(self.idx))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FFElem(self.field, self.field._imul(self.idx, other.idx))

    __rmul__ = __mul__

    def inverse(self) -> "FFElem":
        if self.idx == 0:
            raise ZeroDivisionError("0 has no inverse")
        f = self.field
        return FFElem(f, int(f._exp[(-f._log[self.idx]) % (f.q - 1)]))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        f = self.field
        if self.idx == 0:
            if n < 0:
                raise ZeroDivisionError("0 has no inverse")
            return FFElem(f, 1 if n == 0 else 0)
        return FFElem(f, int(f._exp[(f._log[self.idx] * n) % (f.q - 1)]))

    def frobenius(self, times: int = 1) -> "FFElem":
        return self ** (self.field.p ** (times % self.field.k))

    def is_square(self) -> bool:
        return self.idx == 0 or self.field._log[self.idx] % 2 == 0

    def sqrt(self) -> "FFElem":
        if self.idx == 0:
            return self
        f = self.field
        lg = int(f._log[self.idx])
        if lg % 2:
            raise NotASquareError(f"{self} is not a square in {f.name}")
        return FFElem(f, int(f._exp[lg // 2]))

    @property
    def coeffs(self) -> tuple:
        return tuple(int(c) for c in self.field._digits[self.idx])

    def __eq__(self, other):
        if isinstance(other, FFElem):
            return self.field == other.field and self.idx == other.idx
        if isinstance(other, int):
            return self.idx == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.idx))

    def __bool__(self):
        return self.idx != 0

    def __repr__(self):
        f = self.field
        if f.k == 1:
            return str(self.idx)
        if f.p == 3 and f.k == 2:
            c0, c1 = self.coeffs
            parts = []
            if c0:
                parts.append(str(c0 if c0 == 1 else -1))
            if c1:
                parts.append(("" if c1 == 1 else "-") + "w")
            return "+".join(parts).replace("+-", "-") or "0"
        return f"{f.name}[{self.idx}]"


F9 = GF(2)


# --------------------------------------------------------------------------
# Witt ring W(F_9) mod 3^n

@lru_cache(maxsize=None)
def _sqrt_minus_two(n: int) -> int:
    """3-adic sqrt(-2) mod 3^n congruent to 1 mod 3."""
    m = 3**n
    a = 1
    for _ in range(n + 1):
        a = (a - (a * a + 2) * pow(2 * a, -1, m)) % m
    assert (a * a + 2) % m == 0
    return a


class WittRing:
    """(Z/3^n)[w]/(w^2 - a w - 1) with a^2 = -2, a = 1 mod 3."""

    def __init__(self, n: int):
        if n < 1:
            raise PreconditionError("precision must be >= 1")
        self.n = n
        self.mod = 3**n
        self.a = _sqrt_minus_two(n)

    def __eq__(self, other):
        return isinstance(other, WittRing) and other.n == self.n

    def __hash__(self):
        return hash(("W", self.n))

    def __repr__(self):
        return f"W(F9)/3^{self.n}"

    def __call__(self, x, y=0) -> "WittElem":
        if isinstance(x, WittElem):
            return WittElem(self, x.x, x.y)
        return WittElem(self, mod_reduce(x, self.mod), mod_reduce(y, self.mod))

    @property
    def omega(self) -> "WittElem":
        return WittElem(self, 0, 1)

    def elements(self):
        m = self.mod
        return [WittElem(self, x, y) for y in range(m) for x in range(m)]


@lru_cache(maxsize=None)
def W(n: int) -> WittRing:
    return WittRing(n)


class WittElem:
    __slots__ = ("ring", "x", "y")

    def __init__(self, ring: WittRing, x: int, y: int):
        self.ring = ring
        self.x = x % ring.mod
        self.y = y % ring.mod

    def _coerce(self, other):
        if isinstance(other, WittElem):
            if other.ring.n != self.ring.n:
                raise PreconditionError("Witt precisions differ")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return WittElem(self.ring, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return WittElem(self.ring, -self.x, -self.y)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return WittElem(self.ring, self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, m = self.ring.a, self.ring.mod
        yy = self.y * o.y
        return WittElem(self.ring, (self.x * o.x + yy) % m, (self.x * o.y + self.y * o.x + a * yy) % m)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = self.ring(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def frobenius(self) -> "WittElem":
        """Lift of x -> x^3: w -> w^3 = a - w."""
        return WittElem(self.ring, self.x + self.ring.a * self.y, -self.y)

    def norm(self) -> int:
        n = self * self.frobenius()
        assert n.y == 0
        return n.x

    def is_unit(self) -> bool:
        return self.norm() % 3 != 0

    def inverse(self) -> "WittElem":
        nm = self.norm()
        if nm % 3 == 0:
            raise ZeroDivisionError(f"{self} is not a unit")
        return self.frobenius() * pow(nm, -1, self.ring.mod)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def reduce(self, m: int) -> "WittElem":
        """Image in W/3^m for m <= n."""
        if m > self.ring.n:
            raise PreconditionError("cannot raise precision")
        return WittElem(W(m), self.x, self.y)

    def to_f9(self) -> FFElem:
        return F9.from_coeffs((self.x % 3, self.y % 3))

    def key(self) -> tuple:
        return (self.x, self.y)

    def __eq__(self, other):
        if isinstance(other, WittElem):
            return self.ring.n == other.ring.n and self.key() == other.key()
        if isinstance(other, int):
            return self.y == 0 and self.x == other % self.ring.mod
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.n, self.x, self.y))

    def __repr__(self):
        m = self.ring.mod

        def bal(c):
            return c - m if c > m // 2 else c

        return f"({bal(self.x)} + {bal(self.y)}w mod 3^{self.ring.n})"


def witt_sqrt(a, n: int) -> WittElem:
    """Square root in W(F_9)/3^n by Hensel lifting.

    The residue mod 3 is w^2 when a = 2 and otherwise the smaller of the two
    F_9 roots in (c0, c1) order.
    """
    if n < 1:
        raise PreconditionError("precision must be >= 1")
    R = W(n)
    a = R(a) if not isinstance(a, WittElem) else R(a.x, a.y)
    a9 = a.to_f9()
    if not a9:
        raise NotASquareError("a must reduce to a nonzero square in F_9")
    if not a9.is_square():
        raise NotASquareError(f"{a!r} is not a square mod 3")
    if a == 2:
        r9 = F9.omega**2
    else:
        r = a9.sqrt()
        r9 = min(r, -r, key=lambda e: e.coeffs)
    s = R(*r9.coeffs)
    for _ in range(n + 1):
        s = s - (s * s - a) / (s * 2)
    assert s * s == a
    return s
