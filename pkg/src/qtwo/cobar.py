"""The Hopf algebra Gamma = A[r]/(r^3 + q4 r) over A = F_3[q4^{+-1}] and its cobar complex.

Weights: q4 has weight 4, r has weight 2; the internal degree is t = 2 * weight.
Mod (3, q2) the right unit equals the left unit, so coefficients are central
and the cobar differential only sees the reduced diagonal
    rbar(r) = 0,   rbar(r^2) = 2 r (x) r.
A cobar word [g1|...|gs] is stored as a tuple of exponents in {1, 2}.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import PreconditionError
from .exact_algebra.linalg import solve_f3
from .exact_algebra.poly import Poly, PolyRing
from .exact_algebra.scalars import F3
from .labels import monomial_label

A_RING = PolyRing(("q4",), F3, invertible=("q4",))
Q4 = A_RING.gen("q4")
S_MAX = 10


# --------------------------------------------------------------------------
# the Hopf algebra itself

class ReducedHopfData:
    """Gamma-bar = A{1, r, r^2} with r primitive and trivial right unit."""

    basis = (0, 1, 2)
    weights = {0: 0, 1: 2, 2: 4}

    @staticmethod
    def mul(i: int, j: int):
        """r^i * r^j in the basis, as {exponent: (F_3 coefficient, q4 power)}."""
        n = i + j
        if n <= 2:
            return {n: (1, 0)}
        # r^3 = -q4 r, r^4 = -q4 r^2
        return {n - 2: (2, 1)}

    @staticmethod
    def diagonal(i: int):
        """Delta(r^i) as a list of (coefficient, left exponent, right exponent)."""
        return [(c, a, i - a) for a, c in ((a, _binom(i, a)) for a in range(i + 1)) if c % 3]

    @classmethod
    def reduced_diagonal(cls, i: int):
        return [(c, a, b) for c, a, b in cls.diagonal(i) if a and b]

    @staticmethod
    def counit(i: int) -> int:
        return 1 if i == 0 else 0

    @classmethod
    def check_coassociative(cls) -> bool:
        for i in cls.basis:
            left, right = {}, {}
            for c, a, b in cls.diagonal(i):
                for c2, a1, a2 in cls.diagonal(a):
                    key = (a1, a2, b)
                    left[key] = (left.get(key, 0) + c * c2) % 3
                for c2, b1, b2 in cls.diagonal(b):
                    key = (a, b1, b2)
                    right[key] = (right.get(key, 0) + c * c2) % 3
            if {k: v for k, v in left.items() if v} != {k: v for k, v in right.items() if v}:
                return False
        return True

    @classmethod
    def check_counit(cls) -> bool:
        for i in cls.basis:
            lhs = {}
            rhs = {}
            for c, a, b in cls.diagonal(i):
                if cls.counit(a):
                    lhs[b] = (lhs.get(b, 0) + c) % 3
                if cls.counit(b):
                    rhs[a] = (rhs.get(a, 0) + c) % 3
            if {k: v for k, v in lhs.items() if v} != {i: 1} or {k: v for k, v in rhs.items() if v} != {i: 1}:
                return False
        return True

    @staticmethod
    def check_right_unit() -> bool:
        """eta_R(q4) reduces to q4 mod (3, q2), using the curve module's translation formula."""
        from .curves import induced_map, reduce_mod_3_q2
        img = reduce_mod_3_q2(induced_map("eta_R").image("q4"))
        return img == img.ring.gen("q4")


def _binom(n, k):
    from math import comb
    return comb(n, k)


# --------------------------------------------------------------------------
# cobar elements

def words(s: int, parity: int | None = None):
    """Words of length s over {1, 2} in canonical (lexicographic) order, optionally with
    the number of 1-letters congruent to ``parity`` mod 2."""
    out = []
    for w in itertools.product((1, 2), repeat=s):
        if parity is None or w.count(1) % 2 == parity:
            out.append(w)
    return out


def word_weight(w) -> int:
    return 2 * sum(w)


@lru_cache(maxsize=None)
def weight_basis(s: int, weight: int) -> tuple:
    """Words of length s that occur at this weight (q4 fills the rest)."""
    if weight % 2:
        return ()
    return tuple(words(s, (weight // 2) % 2)) if s else ((),) if weight % 4 == 0 else ()


class CobarElement:
    __slots__ = ("s", "terms")

    def __init__(self, s: int, terms: dict | None = None):
        self.s = s
        clean = {}
        for w, c in (terms or {}).items():
            if len(w) != s:
                raise PreconditionError("word length differs from cobar degree")
            if not isinstance(c, Poly):
                c = A_RING(c)
            if c:
                clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def word(cls, *letters, coeff=1):
        return cls(len(letters), {tuple(letters): coeff})

    def __add__(self, other):
        if other.s != self.s:
            raise PreconditionError("cobar degrees differ")
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return CobarElement(self.s, out)

    def __neg__(self):
        return CobarElement(self.s, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CobarElement):
            out = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    v = c1 * c2
                    out[w] = out[w] + v if w in out else v
            return CobarElement(self.s + other.s, out)
        c = other if isinstance(other, Poly) else A_RING(other)
        return CobarElement(self.s, {w: v * c for w, v in self.terms.items()})

    def __rmul__(self, other):
        c = other if isinstance(other, Poly) else A_RING(other)
        return CobarElement(self.s, {w: c * v for w, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, CobarElement) and self.s == other.s and self.terms == other.terms

    def __hash__(self):
        return hash((self.s, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def weight(self) -> int | None:
        ws = set()
        for w, c in self.terms.items():
            if not c.is_homogeneous():
                raise PreconditionError("inhomogeneous coefficient")
            ws.add(word_weight(w) + c.weight)
        if len(ws) > 1:
            raise PreconditionError("inhomogeneous cobar element")
        return ws.pop() if ws else None

    @property
    def t(self) -> int | None:
        w = self.weight
        return None if w is None else 2 * w

    def to_vector(self, weight: int) -> np.ndarray:
        basis = weight_basis(self.s, weight)
        index = {w: i for i, w in enumerate(basis)}
        v = np.zeros(len(basis), dtype=np.int64)
        for w, c in self.terms.items():
            k4 = weight - word_weight(w)
            if k4 % 4:
                raise PreconditionError("element does not live in this weight")
            v[index[w]] = int(c.coefficient({"q4": k4 // 4})) % 3
            if len(c.terms) != 1:
                raise PreconditionError("inhomogeneous coefficient")
        return v

    @classmethod
    def from_vector(cls, s: int, weight: int, v) -> "CobarElement":
        basis = weight_basis(s, weight)
        terms = {}
        for w, c in zip(basis, v):
            c = int(c) % 3
            if c:
                terms[w] = Q4 ** ((weight - word_weight(w)) // 4) * c
        return cls(s, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            bar = "|".join("r" if g == 1 else "r^2" for g in w)
            parts.append(f"({self.terms[w]})[{bar}]")
        return " + ".join(parts)

    def __repr__(self):
        return f"CobarElement(s={self.s}, {self})"


def cobar_d(e: CobarElement) -> CobarElement:
    """d[g1|...|gs] = sum_i (-1)^i [g1|...|rbar(gi)|...|gs]."""
    out: dict = {}
    for w, c in e.terms.items():
        for i, g in enumerate(w):
            sign = 1 if i % 2 else -1  # (-1)^i with slots numbered from 1
            for cc, a, b in ReducedHopfData.reduced_diagonal(g):
                nw = w[:i] + (a, b) + w[i + 1:]
                v = c * (sign * cc)
                out[nw] = out[nw] + v if nw in out else v
    return CobarElement(e.s + 1, out)


@lru_cache(maxsize=None)
def d_matrix(s: int, weight: int) -> np.ndarray:
    """Matrix of d: C^s -> C^{s+1} in the weight component (columns = source words)."""
    src = weight_basis(s, weight)
    tgt = weight_basis(s + 1, weight)
    index = {w: i for i, w in enumerate(tgt)}
    m = np.zeros((len(tgt), len(src)), dtype=np.int64)
    for j, w in enumerate(src):
        for i, g in enumerate(w):
            sign = 1 if i % 2 else -1
            for cc, a, b in ReducedHopfData.reduced_diagonal(g):
                nw = w[:i] + (a, b) + w[i + 1:]
                m[index[nw], j] = (m[index[nw], j] + sign * cc) % 3
    m.flags.writeable = False
    return m


def _rank(m) -> int:
    return kernels.rank_mod_p(m, 3) if m.size else 0


# --------------------------------------------------------------------------
# cohomology

def expected_name(s: int, t: int) -> str:
    """Name of the H^{s,t} generator of F_3[q4^{+-1}, beta] (x) E[alpha]."""
    j, odd = divmod(s, 2)
    base_t = 12 * j + (4 if odd else 0)
    if (t - base_t) % 8:
        return "?"
    k = (t - base_t) // 8
    return monomial_label([("alpha", odd), ("beta", j), ("q4", k)])


def expected_rank(s: int, t: int) -> int:
    j, odd = divmod(s, 2)
    return 1 if (t - 12 * j - (4 if odd else 0)) % 8 == 0 else 0


@dataclass
class CohomologyEntry:
    s: int
    t: int
    rank: int
    representatives: list = field(default_factory=list)
    names: list = field(default_factory=list)

    @property
    def weight(self) -> int:
        return self.t // 2


@dataclass
class CohomologyTable:
    entries: dict

    def __getitem__(self, key) -> CohomologyEntry:
        s, t = key
        return self.entries.get((s, t)) or CohomologyEntry(s, t, 0)

    def rank(self, s: int, t: int) -> int:
        return self[s, t].rank

    def rows(self) -> list:
        return [{"s": e.s, "t": e.t, "rank": e.rank, "names": list(e.names)}
                for (s, t), e in sorted(self.entries.items())]


def cohomology_at(s: int, weight: int):
    """(rank, representative vectors) of H^s in one weight component."""
    n = len(weight_basis(s, weight))
    if n == 0:
        return 0, []
    d_out = d_matrix(s, weight)
    kern = kernels.nullspace_mod_p(d_out, 3) if d_out.shape[0] else np.eye(n, dtype=np.int64)
    if s > 0 and len(weight_basis(s - 1, weight)):
        image = d_matrix(s - 1, weight).T.copy()
    else:
        image = np.zeros((0, n), dtype=np.int64)
    reps = []
    current = image
    r0 = _rank(current) if current.size else 0
    for v in kern:
        trial = np.vstack([current, v[None, :]]) if current.size else v[None, :]
        r1 = _rank(trial)
        if r1 > r0:
            reps.append(v % 3)
            current, r0 = trial, r1
    return len(reps), reps


def cohomology(s_max: int = 6, weight_window=range(-20, 21)) -> CohomologyTable:
    """Cohomology ranks (over A, i.e. F_3-dimension per weight) for 0 <= s <= s_max."""
    if s_max > S_MAX:
        raise PreconditionError(f"s_max must be <= {S_MAX}")
    entries = {}
    for s in range(s_max + 1):
        for w in weight_window:
            rank, reps = cohomology_at(s, w)
            if rank:
                t = 2 * w
                elems = [CobarElement.from_vector(s, w, v) for v in reps]
                names = [expected_name(s, t)] if rank == 1 else [f"{expected_name(s, t)}#{i}" for i in range(rank)]
                entries[(s, t)] = CohomologyEntry(s, t, rank, elems, names)
    return CohomologyTable(entries)


@dataclass
class ProductResult:
    s: int
    t: int
    coefficient: int                 # product = coefficient * representative + d(bounding)
    representative: CobarElement | None
    name: str
    bounding: CobarElement | None

    @property
    def is_zero(self) -> bool:
        return self.coefficient == 0


def class_product(x, y) -> ProductResult:
    """Cup product of two cocycles, expressed against the table representative."""
    xe = x.representatives[0] if isinstance(x, CohomologyEntry) else x
    ye = y.representatives[0] if isinstance(y, CohomologyEntry) else y
    for e in (xe, ye):
        if not cobar_d(e).is_zero():
            raise PreconditionError("class_product needs cocycles")
    prod = xe * ye
    s = prod.s
    w = xe.weight + ye.weight
    t = 2 * w
    v = prod.to_vector(w)
    rank, reps = cohomology_at(s, w)
    n_prev = len(weight_basis(s - 1, w)) if s else 0
    dm = d_matrix(s - 1, w) if n_prev else np.zeros((len(v), 0), dtype=np.int64)
    if rank == 0:
        sol = solve_f3(dm, v) if dm.size else (np.zeros(0, dtype=np.int64) if not v.any() else None)
        if sol is None:
            raise AssertionError("cocycle with zero cohomology is not a coboundary")
        return ProductResult(s, t, 0, None, "0", CobarElement.from_vector(s - 1, w, sol) if s else None)
    rep = reps[0]
    for c in (0, 1, 2):
        target = (v - c * rep) % 3
        if not target.any():
            return ProductResult(s, t, c, CobarElement.from_vector(s, w, rep), expected_name(s, t),
                                 CobarElement(s - 1) if s else None)
        if dm.size:
            sol = solve_f3(dm, target)
            if sol is not None:
                return ProductResult(s, t, c, CobarElement.from_vector(s, w, rep), expected_name(s, t),
                                     CobarElement.from_vector(s - 1, w, sol))
    raise AssertionError("product not expressible in the table")  # pragma: no cover


def d_squared_zero(s_max: int = 6, weights=range(-24, 25)) -> bool:
    for s in range(s_max):
        for w in weights:
            a = d_matrix(s, w)
            b = d_matrix(s + 1, w)
            if a.size and b.size and ((b @ a) % 3).any():
                return False
    return True
