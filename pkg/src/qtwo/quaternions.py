"""The definite quaternion algebra D = (-3, -1)_Q, its orders, the 3-adic model
O_3 = W<S>/(S^2 = 3, S w = w^sigma S) mod 3^n, Galois-extended unit groups,
group-ring nilpotence and character-average projectors.

Dictionary: F = i, t = j, s = (1 + i)/2 in D; F = w S, t = w^2 in O_3.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from . import kernels
from .errors import PrecisionError, PreconditionError, SingularBasisError
from .exact_algebra.scalars import W, WittElem, witt_sqrt

QA, QB = -3, -1     # i^2, j^2
MAX_GROUP = 10_000
DEFAULT_PRECISION = 4


# --------------------------------------------------------------------------
# rational quaternions

def _frac(x) -> Fraction:
    x = Fraction(x)
    d = x.denominator
    if d & (d - 1):
        raise PreconditionError(f"denominator of {x} is not a power of 2")
    return x


class QuaternionElement:
    """x0 + x1 i + x2 j + x3 ij with i^2 = -3, j^2 = -1, ij = -ji."""

    __slots__ = ("c",)

    def __init__(self, x0=0, x1=0, x2=0, x3=0):
        self.c = tuple(_frac(v) for v in (x0, x1, x2, x3))

    @classmethod
    def basis(cls):
        return cls(1), cls(0, 1), cls(0, 0, 1), cls(0, 0, 0, 1)

    def __add__(self, o):
        o = _q(o)
        return QuaternionElement(*(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return QuaternionElement(*(-a for a in self.c))

    def __sub__(self, o):
        return self + (-_q(o))

    def __rsub__(self, o):
        return _q(o) - self

    def __mul__(self, o):
        if not isinstance(o, QuaternionElement):
            f = _frac(o)
            return QuaternionElement(*(a * f for a in self.c))
        a, b = QA, QB
        x0, x1, x2, x3 = self.c
        y0, y1, y2, y3 = o.c
        return QuaternionElement(
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        )

    def __rmul__(self, o):
        return self * o

    def __truediv__(self, o):
        return self * (Fraction(1) / _frac(o))

    def __eq__(self, o):
        try:
            return self.c == _q(o).c
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return "Q(" + ", ".join(str(v) for v in self.c) + ")"

    def conj(self) -> "QuaternionElement":
        x0, x1, x2, x3 = self.c
        return QuaternionElement(x0, -x1, -x2, -x3)

    def nrd(self) -> Fraction:
        x0, x1, x2, x3 = self.c
        return x0 * x0 - QA * x1 * x1 - QB * x2 * x2 + QA * QB * x3 * x3

    def trd(self) -> Fraction:
        return 2 * self.c[0]


def _q(v) -> QuaternionElement:
    return v if isinstance(v, QuaternionElement) else QuaternionElement(v)


ONE, I, J, K = QuaternionElement.basis()
F_Q = I                 # Frobenius
T_Q = J                 # t
S_Q = (ONE + I) / 2     # s


def quat_arith(op: str, *args):
    if op == "mul":
        out = args[0]
        for a in args[1:]:
            out = out * a
        return out
    if op == "conj":
        return args[0].conj()
    if op == "nrd":
        return args[0].nrd()
    if op == "trd":
        return args[0].trd()
    raise PreconditionError(f"unknown quaternion op {op!r}")


# --------------------------------------------------------------------------
# lattices and orders

PIZER_QUOTED = (S_Q, J, (J + J * I) / 2, J * I)                 # literal form, rank 3
STFT_QUOTED = (S_Q, T_Q, T_Q * S_Q, T_Q * F_Q)                  # {s, t, ts, tF}
PIZER_CORRECTED = (S_Q, (J + J * I) / 2, I, J * I)              # i <-> j slip repaired
STFT_CORRECTED = (S_Q, T_Q * S_Q, F_Q, T_Q * F_Q)               # {s, ts, F, tF}
STANDARD = (ONE, I, J, K)


def _matrix(basis) -> list:
    return [list(e.c) for e in basis]


def _det(m) -> Fraction:
    m = [list(map(Fraction, row)) for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for k in range(c, n):
                m[r][k] -= f * m[c][k]
    return det


def _solve(basis_rows, v) -> list:
    """Coordinates x with sum x_i basis_i = v (exact)."""
    n = len(basis_rows)
    # columns are basis vectors: A x = v with A[j][i] = basis_i[j]
    a = [[Fraction(basis_rows[i][j]) for i in range(n)] + [Fraction(v[j])] for j in range(n)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise SingularBasisError("basis is singular")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[r][n] for r in range(n)]


def lattice_rank(basis) -> int:
    m = np.array([[int(x * 4) for x in e.c] for e in basis], dtype=np.int64)
    return int(np.linalg.matrix_rank(m.astype(float)))


@dataclass
class OrderReport:
    closed: bool
    contains_one: bool
    reduced_discriminant: int | None
    gram_determinant: Fraction

    def as_dict(self) -> dict:
        return {"closed": self.closed, "contains_one": self.contains_one,
                "reduced_discriminant": self.reduced_discriminant, "gram_determinant": str(self.gram_determinant)}


def order_check(basis) -> OrderReport:
    """Closure under multiplication and reduced discriminant sqrt|det Trd(e_i conj(e_j))|."""
    rows = _matrix(basis)
    if _det(rows) == 0:
        raise SingularBasisError(f"basis spans a lattice of rank {lattice_rank(basis)} < 4")
    closed = True
    for a, b in product(basis, repeat=2):
        coords = _solve(rows, (a * b).c)
        if any(x.denominator != 1 for x in coords):
            closed = False
            break
    one = _solve(rows, ONE.c)
    gram = [[(a * b.conj()).trd() for b in basis] for a in basis]
    g = abs(_det(gram))
    root = None
    if g.denominator == 1:
        r = int(round(float(g) ** 0.5))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand * cand == g:
                root = cand
    return OrderReport(closed, all(x.denominator == 1 for x in one), root, g)


def change_of_basis(source, target) -> tuple[list, Fraction]:
    """Matrix expressing ``source`` in ``target`` coordinates, and its determinant."""
    trows = _matrix(target)
    if _det(trows) == 0:
        raise SingularBasisError("target basis is singular")
    if _det(_matrix(source)) == 0:
        raise SingularBasisError("source basis is singular")
    m = [_solve(trows, e.c) for e in source]
    return m, _det(m)


def is_unimodular_change(source, target) -> bool:
    m, d = change_of_basis(source, target)
    return abs(d) == 1 and all(x.denominator == 1 for row in m for x in row)


# --------------------------------------------------------------------------
# O_3 mod 3^n

class O3Element:
    """a + b S with a, b in W(F_9)/3^n, S^2 = 3, S w = w^sigma S."""

    __slots__ = ("a", "b")

    def __init__(self, a: WittElem, b: WittElem | None = None):
        self.a = a
        self.b = b if b is not None else a.ring(0)
        if self.a.ring != self.b.ring:
            raise PreconditionError("mixed precisions")

    @property
    def n(self) -> int:
        return self.a.ring.n

    @classmethod
    def of(cls, n: int, a=0, b=0):
        R = W(n)
        a = a if isinstance(a, WittElem) else R(a)
        b = b if isinstance(b, WittElem) else R(b)
        return cls(a, b)

    def __mul__(self, o):
        if not isinstance(o, O3Element):
            return O3Element(self.a * o, self.b * o)
        a, b, c, d = self.a, self.b, o.a, o.b
        return O3Element(a * c + b * d.frobenius() * 3, a * d + b * c.frobenius())

    def __rmul__(self, o):
        return O3Element(self.a * o, self.b * o)

    def __add__(self, o):
        return O3Element(self.a + o.a, self.b + o.b)

    def __sub__(self, o):
        return O3Element(self.a - o.a, self.b - o.b)

    def __neg__(self):
        return O3Element(-self.a, -self.b)

    def __eq__(self, o):
        return isinstance(o, O3Element) and (self.a, self.b) == (o.a, o.b)

    def __hash__(self):
        return hash((self.a.key(), self.b.key()))

    def key(self) -> tuple:
        return self.a.key() + self.b.key()

    def __repr__(self):
        return f"O3({self.a!r} + {self.b!r} S)"

    def sigma(self) -> "O3Element":
        w = self.a.ring.omega
        return O3Element(self.a.frobenius(), self.b.frobenius() * w ** -2)

    def nrd(self) -> WittElem:
        return self.a * self.a.frobenius() - self.b * self.b.frobenius() * 3

    def is_unit(self) -> bool:
        return self.a.is_unit()

    def inverse(self) -> "O3Element":
        nrd = self.nrd()
        if not nrd.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        inv = nrd.inverse()
        return O3Element(self.a.frobenius() * inv, -self.b * inv)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = O3Element.of(self.n, 1)
        for _ in range(e):
            out = out * self
        return out


def o3_arith(op: str, *args):
    if op == "mul":
        out = args[0]
        for a in args[1:]:
            out = out * a
        return out
    if op == "sigma":
        return args[0].sigma()
    if op == "nrd":
        return args[0].nrd()
    raise PreconditionError(f"unknown O_3 op {op!r}")


def o3_dictionary(n: int) -> dict:
    """Images of the endomorphisms in O_3: F = w S, t = w^2, s = (1 + F)/2 (and the other sign)."""
    R = W(n)
    w = R.omega
    one = O3Element.of(n, 1)
    S = O3Element.of(n, 0, 1)
    F = O3Element(R(0), w)
    t = O3Element(w ** 2)
    half = R(2).inverse()
    s = (one + F) * half
    return {"1": one, "S": S, "omega": O3Element(w), "F": F, "t": t, "s": s, "s_minus": -s,
            "sqrt2": O3Element(witt_sqrt(2, n))}


# --------------------------------------------------------------------------
# Galois-extended units

class ExtendedElement:
    """(u, g) meaning u * sigma^g; (u1, g1)(u2, g2) = (u1 sigma^g1(u2), g1 + g2)."""

    __slots__ = ("u", "g")

    def __init__(self, u: O3Element, g: int = 0):
        if not u.is_unit():
            raise PreconditionError("extended elements need a unit part")
        self.u, self.g = u, g % 2

    def __mul__(self, o: "ExtendedElement") -> "ExtendedElement":
        u2 = o.u.sigma() if self.g else o.u
        return ExtendedElement(self.u * u2, self.g + o.g)

    def inverse(self) -> "ExtendedElement":
        inv = self.u.inverse()
        return ExtendedElement(inv.sigma() if self.g else inv, self.g)

    def __eq__(self, o):
        return isinstance(o, ExtendedElement) and self.g == o.g and self.u == o.u

    def __hash__(self):
        return hash((self.u, self.g))

    def key(self) -> tuple:
        return self.u.key() + (self.g,)

    def __repr__(self):
        return f"({self.u!r}, sigma^{self.g})"

    def nrd(self) -> WittElem:
        return self.u.nrd()


def named_generator(name: str, n: int) -> ExtendedElement:
    d = o3_dictionary(n)
    if name == "sigma":
        return ExtendedElement(d["1"], 1)
    if name in d:
        return ExtendedElement(d[name], 0)
    raise PreconditionError(f"unknown generator {name!r}")


def subgroup_closure(generators, n: int = DEFAULT_PRECISION, table: bool = True) -> dict:
    """Breadth-first closure under the twisted product."""
    gens = [named_generator(g, n) if isinstance(g, str) else g for g in generators]
    if not gens:
        gens = [named_generator("1", n)]
    ident = ExtendedElement(O3Element.of(gens[0].u.n, 1), 0)
    seen = {ident: 0}
    order = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y not in seen:
                seen[y] = len(order)
                order.append(y)
                queue.append(y)
                if len(order) > MAX_GROUP:
                    raise PrecisionError(f"closure exceeds {MAX_GROUP} elements")
    out = {"order": len(order), "elements": order}
    if table:
        out["table"] = [[seen[a * b] for b in order] for a in order]
    return out


def stable_order(generators, n: int = DEFAULT_PRECISION, max_n: int = 8) -> dict:
    """Order at precision n, raising n until the order agrees with n + 1."""
    while n < max_n:
        a = subgroup_closure(generators, n, table=False)["order"]
        b = subgroup_closure(generators, n + 1, table=False)["order"]
        if a == b:
            return {"order": a, "precision": n, "stable_at": n + 1}
        n += 1
    raise PrecisionError("subgroup order did not stabilise")


def element_order(x: ExtendedElement, limit: int = 1000) -> int:
    y, k = x, 1
    ident = ExtendedElement(O3Element.of(x.u.n, 1), 0)
    while y != ident:
        y = y * x
        k += 1
        if k > limit:
            raise PrecisionError("element order too large")
    return k


# --------------------------------------------------------------------------
# group rings

def group_ring_nilpotence(p: int, k: int, use_numba=None) -> int:
    """Least m with ([tau] - 1)^m = 0 in F_p[Z/p^k]."""
    if k < 1 or k > 6:
        raise PreconditionError("need 1 <= k <= 6")
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise PreconditionError(f"{p} is not prime")
    n = p ** k
    x = np.zeros(n, dtype=np.int64)
    x[0], x[1 % n] = p - 1, 1
    power = x.copy()
    m = 1
    while power.any():
        power = kernels.cyclic_mul(power, x, p, use_numba)
        m += 1
        if m > n:
            raise AssertionError("nilpotence exponent exceeds p^k")
    return m


def chi_average(action, chi, x, n: int):
    """y = |G|^-1 sum chi(g) g x over Z/3^n."""
    mod = 3 ** n
    order = len(action)
    if order % 3 == 0:
        raise PreconditionError("|G| is not invertible mod 3")
    inv = pow(order, -1, mod)
    x = np.asarray(x, dtype=np.int64) % mod
    y = np.zeros_like(x)
    for g, c in zip(action, chi):
        y = (y + c * (np.asarray(g, dtype=np.int64) @ x)) % mod
    return (y * inv) % mod


def coset_action(group: dict, subgroup: dict):
    """Permutation matrices of the group on left cosets g H, with cosets ordered by first appearance."""
    elems = group["elements"]
    sub = set(subgroup["elements"])
    cosets = []
    label = {}
    for g in elems:
        if g in label:
            continue
        idx = len(cosets)
        members = [g * h for h in subgroup["elements"]]
        for m in members:
            label[m] = idx
        cosets.append(g)
    mats = []
    for g in elems:
        m = np.zeros((len(cosets), len(cosets)), dtype=np.int64)
        for j, c in enumerate(cosets):
            m[label[g * c], j] = 1
        mats.append(m)
    chi = [1 if g in sub else -1 for g in elems]
    return mats, chi, cosets


def sd16_over_d8(n: int = DEFAULT_PRECISION):
    G = subgroup_closure(["omega", "sigma"], n, table=False)
    H = subgroup_closure(["t", "sigma"], n, table=False)
    return coset_action(G, H)


# --------------------------------------------------------------------------
# relation battery

def _order_ok(basis, disc: int) -> tuple[bool, str]:
    try:
        rep = order_check(basis)
    except SingularBasisError as exc:
        return False, f"singular: {exc}"
    ok = rep.closed and rep.contains_one and rep.reduced_discriminant == disc
    return ok, f"closed={rep.closed} reduced_discriminant={rep.reduced_discriminant}"


def _unimodular(src, tgt) -> tuple[bool, str]:
    try:
        m, d = change_of_basis(src, tgt)
    except SingularBasisError as exc:
        return False, f"singular: {exc}"
    ok = abs(d) == 1 and all(x.denominator == 1 for row in m for x in row)
    return ok, f"det={d}"


def relation_battery(n: int = DEFAULT_PRECISION) -> list[dict]:
    """Every quaternion and O_3 identity, with the expected outcome recorded.

    ``acceptance`` marks the lines that make up the acceptance battery;
    ``expected`` is "fail" for identities known to be false as stated.
    """
    d = o3_dictionary(n)
    R = W(n)
    w = R.omega
    one, S, F, t, s = d["1"], d["S"], d["F"], d["t"], d["s"]
    two = O3Element.of(n, 2)
    rows = []

    def add(name, ok, detail="", expected="pass", acceptance=True):
        rows.append({"check": name, "status": "pass" if ok else "fail", "expected": expected,
                     "acceptance": acceptance, "detail": str(detail)})

    add("Nrd(1+t) = 2 in D", (ONE + T_Q).nrd() == 2, (ONE + T_Q).nrd())
    add(f"Nrd(1+t) = 2 mod 3^{n}", (one + t).nrd() == R(2), (one + t).nrd())
    add("(1+t)(1-t) = 2 in D", (ONE + T_Q) * (ONE - T_Q) == 2)
    add(f"(1+t)(1-t) = 2 mod 3^{n}", (one + t) * (one - t) == two)
    u = (one + t) * d["sqrt2"].inverse()
    add(f"Nrd((1+t)/sqrt2) = 1 mod 3^{n}", u.nrd() == R(1), f"computed {u.nrd()}", expected="fail")
    ok, det = _order_ok(PIZER_QUOTED, 3)
    add("Pizer basis closed, reduced discriminant 3", ok, det, expected="fail")
    ok, det = _unimodular(STFT_QUOTED, PIZER_QUOTED)
    add("{s,t,ts,tF} to Pizer change of basis unimodular", ok, det, expected="fail")
    add("S w = w^3 S", S * O3Element(w) == O3Element(w ** 3) * S)
    sig = ExtendedElement(one, 1)
    conj = lambda x: (sig * ExtendedElement(x) * sig.inverse()).u
    add("sigma(S) = w^-2 S", S.sigma() == O3Element(w ** -2) * S)
    add("sigma(F) = F", F.sigma() == F)
    add("sigma t sigma^-1 = -t", conj(t) == -t and t.sigma() == -t)
    add("sigma(s) = s", conj(s) == s and s.sigma() == s)
    add("sigma^2 = 1", (sig * sig) == ExtendedElement(one, 0))
    add("sigma(w) = w^3", O3Element(w).sigma() == O3Element(w ** 3))
    add("F^2 = -3", F * F == O3Element.of(n, -3))
    add("Ft = -tF", F * t == -(t * F))
    add("t^2 = -1", t * t == -one)
    for gens, want, name in ((["t", "sigma"], 8, "D8 = <t, sigma>"), (["omega", "sigma"], 16, "SD16 = <w, sigma>")):
        a = subgroup_closure(gens, n, table=False)["order"]
        b = subgroup_closure(gens, n + 1, table=False)["order"]
        add(f"|{name}| = {want}, stable {n} -> {n + 1}", a == b == want, f"{a}, {b}")
    ok, det = _order_ok(PIZER_CORRECTED, 3)
    add("repaired Pizer basis closed, reduced discriminant 3", ok, det, acceptance=False)
    ok, det = _unimodular(STFT_CORRECTED, PIZER_CORRECTED)
    add("{s,ts,F,tF} to repaired Pizer unimodular", ok, det, acceptance=False)
    ok, det = _order_ok(STANDARD, 12)
    add("{1,i,j,ij} closed, reduced discriminant 12", ok, det, acceptance=False)
    add("s^3 = -1 in O_3", s ** 3 == -one, acceptance=False)
    for gens, name in ((["s", "t"], "<s, t>"), (["s_minus", "t"], "<-s, t>"), (["s", "t", "sigma"], "<s, t, sigma>")):
        a = subgroup_closure(gens, n, table=False)["order"]
        add(f"|{name}| recorded", True, a, acceptance=False)
    add("Nrd(sqrt2) = -2", d["sqrt2"].nrd() == R(-2), d["sqrt2"].nrd(), acceptance=False)
    return rows
