"""Total complexes for Q(2) and Q-bar smashed with V(1), their cohomology, and the
d5/d9 differential engine.

Everything lives mod (3, q2) over A = F_3[q4^{+-1}].  A total-complex basis
element at total degree n and weight w is one of

    ("c0", word)    column 0, cobar word of length n
    ("c1", word)    column 1, cobar copy, word of length n - 1
    ("m1", ())      column 1, the modular-forms summand (n = 1)
    ("m2", ())      column 2, modular forms (n = 2)
    ("e8", ())      Q-bar column 1, the odd-q4 summand with its degree-8 shift (n = 1)

with the q4 power fixed by the weight.  Internal degree t = 2 * weight.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from . import kernels
from .cobar import d_matrix, weight_basis, word_weight
from .errors import IntegrityError, PreconditionError
from .labels import monomial_label

KINDS = ("q2", "qbar")
E2_S_MAX = 10
PAGE_S_MAX = 24          # monomial pages are truncated here
LONGEST_DIFFERENTIAL = 9
PERIOD = 144             # v2^9


# --------------------------------------------------------------------------
# total complexes

def _mf_k(weight: int) -> int | None:
    return weight // 4 if weight % 4 == 0 else None


@dataclass(frozen=True)
class TotalComplex:
    kind: str = "q2"
    e8_sign: int = -1    # horizontal(q4^k) = e8_sign * v2^((k-1)/2) e8 for k odd

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown complex {self.kind!r}")

    @property
    def columns(self) -> int:
        return 3 if self.kind == "q2" else 2

    # basis -----------------------------------------------------------------
    def basis(self, n: int, weight: int) -> tuple:
        if n < 0:
            return ()
        out = [("c0", w) for w in weight_basis(n, weight)]
        if self.kind == "q2":
            if n >= 1:
                out += [("c1", w) for w in weight_basis(n - 1, weight)]
            if n == 1 and _mf_k(weight) is not None:
                out.append(("m1", ()))
            if n == 2 and _mf_k(weight) is not None:
                out.append(("m2", ()))
        else:
            k = _mf_k(weight)
            if n == 1 and k is not None and k % 2:
                out.append(("e8", ()))
        return tuple(out)

    @staticmethod
    def q4_power(elem, weight: int) -> int:
        return (weight - word_weight(elem[1])) // 4

    # horizontal maps on q4^k (mod I2) ------------------------------------------
    @staticmethod
    def phi_q_minus_phi_f(k: int) -> int:
        return ((-1) ** k - 1) % 3

    @staticmethod
    def psi_d_plus_id(k: int) -> int:
        return ((-1) ** k + 1) % 3

    def qbar_horizontal(self, k: int) -> int:
        return self.e8_sign % 3 if k % 2 else 0

    # the differential -----------------------------------------------------------
    def differential(self, n: int, weight: int) -> np.ndarray:
        return _differential(self, n, weight)

    def D0(self, k: int) -> tuple:
        """Image of q4^k in column 0 as the triple (C^1, C-bar^0, MF) with F_3 coefficients of q4^k."""
        w = 4 * k
        vec = np.zeros(len(self.basis(0, w)), dtype=np.int64)
        vec[0] = 1
        img = self.differential(0, w) @ vec % 3
        return self._triple(1, w, img)

    def D1(self, cobar0: int, mf: int, k: int) -> tuple:
        """Image of (0, cobar0 * q4^k, mf * q4^k) under D at total degree 1."""
        w = 4 * k
        b = self.basis(1, w)
        vec = np.zeros(len(b), dtype=np.int64)
        vec[b.index(("c1", ()))] = cobar0
        if ("m1", ()) in b:
            vec[b.index(("m1", ()))] = mf
        img = self.differential(1, w) @ vec % 3
        return self._triple(2, w, img)

    def _triple(self, n, w, img):
        b = self.basis(n, w)
        cob = sum(int(img[i]) for i, e in enumerate(b) if e[0] == "c0")
        cop = sum(int(img[i]) for i, e in enumerate(b) if e[0] == "c1")
        mf = sum(int(img[i]) for i, e in enumerate(b) if e[0] in ("m1", "m2", "e8"))
        bal = lambda c: c - 3 if c % 3 == 2 else c % 3
        return bal(cob), bal(cop), bal(mf)

    def cohomology_rank(self, n: int, weight: int) -> int:
        return _cohomology_rank(self, n, weight)

    def d_squared_zero(self, n_max: int = 6, weights=range(0, 8)) -> bool:
        for n in range(n_max):
            for w in weights:
                a, b = self.differential(n, w), self.differential(n + 1, w)
                if a.size and b.size and ((b @ a) % 3).any():
                    return False
        return True


@lru_cache(maxsize=None)
def _differential(tc: TotalComplex, n: int, weight: int) -> np.ndarray:
    src = tc.basis(n, weight)
    tgt = tc.basis(n + 1, weight)
    idx = {e: i for i, e in enumerate(tgt)}
    m = np.zeros((len(tgt), len(src)), dtype=np.int64)
    for j, e in enumerate(src):
        kind, word = e
        if kind in ("c0", "c1"):
            s = len(word)
            sign = 1 if kind == "c0" else -1
            dv = d_matrix(s, weight)
            tb = weight_basis(s + 1, weight)
            col = weight_basis(s, weight).index(word)
            for i, wd in enumerate(tb):
                if dv[i, col]:
                    m[idx[(kind, wd)], j] = (m[idx[(kind, wd)], j] + sign * dv[i, col]) % 3
            if s == 0:
                k = tc.q4_power(e, weight)
                if tc.kind == "q2" and kind == "c0":
                    c = tc.phi_q_minus_phi_f(k)          # into MF; (psi_2 - Id) = 0 into the copy
                    if c:
                        m[idx[("m1", ())], j] = c
                elif tc.kind == "q2" and kind == "c1":
                    m[idx[("m2", ())], j] = (-1) % 3      # -phi_f
                elif tc.kind == "qbar":
                    c = tc.qbar_horizontal(k)
                    if c:
                        m[idx[("e8", ())], j] = c
        elif kind == "m1":
            c = tc.psi_d_plus_id(weight // 4)
            if c:
                m[idx[("m2", ())], j] = c
    m.flags.writeable = False
    return m


@lru_cache(maxsize=None)
def _cohomology_rank(tc: TotalComplex, n: int, weight: int) -> int:
    dim = len(tc.basis(n, weight))
    if dim == 0:
        return 0
    out = tc.differential(n, weight)
    inc = tc.differential(n - 1, weight) if n > 0 else np.zeros((dim, 0), dtype=np.int64)
    r_out = kernels.rank_mod_p(out, 3) if out.size else 0
    r_in = kernels.rank_mod_p(inc, 3) if inc.size else 0
    return dim - r_out - r_in


def horizontal_composite_vanishes() -> bool:
    """-(psi_2 - Id) + (psi_d + Id)(phi_q - phi_f) = 0 integrally on MF_0(2) = Z[q2, q4]."""
    from .curves import induced_map
    from .exact_algebra.poly import PolyRing
    from .exact_algebra.scalars import QQ
    R = PolyRing(("q2", "q4", "r"), QQ)
    psi2, psid, phiq, phif = (induced_map(n) for n in ("psi_2", "psi_d", "phi_q", "phi_f"))
    q2, q4 = R.gen("q2"), R.gen("q4")
    for f in (q2, q4, q2 * q4, q4 ** 3 - q2 ** 2 * q4, q2 ** 5 + 7 * q4 ** 2 * q2):
        a = psi2.apply(f) - f
        b = phiq.apply(f) - phif.apply(f)
        total = -phif.apply(a) + psid.apply(b) + b
        if not total.is_zero():
            return False
    return True


build_q2_total = lambda: TotalComplex("q2")          # noqa: E731
build_qbar_total = lambda: TotalComplex("qbar")      # noqa: E731


# --------------------------------------------------------------------------
# monomials of F_3[beta, v2^{+-1}] (x) E[zeta] {1, alpha, h1, b1}

GENERATORS = {"1": (0, 0), "alpha": (1, 4), "h1": (1, 12), "b1": (2, 36)}
BETA = (2, 12)
V2 = (0, 16)
ZETA = (1, 0)


@dataclass(frozen=True, order=True)
class Monomial:
    a: int          # beta exponent
    k: int          # v2 exponent
    e: int          # zeta exponent (0/1)
    g: str          # one of 1, alpha, h1, b1

    @property
    def s(self) -> int:
        return BETA[0] * self.a + ZETA[0] * self.e + GENERATORS[self.g][0]

    @property
    def t(self) -> int:
        return BETA[1] * self.a + V2[1] * self.k + GENERATORS[self.g][1]

    @property
    def stem(self) -> int:
        return self.t - self.s

    @property
    def label(self) -> str:
        return monomial_label([("zeta", self.e), ("beta", self.a), ("v2", self.k),
                               (self.g, 0 if self.g == "1" else 1)])


def monomials_in(stems, s_max: int, zeta: bool = True) -> list[Monomial]:
    lo, hi = stems
    out = []
    for a in range(s_max // 2 + 1):
        for e in ((0, 1) if zeta else (0,)):
            for g, (gs, gt) in GENERATORS.items():
                s = 2 * a + e + gs
                if s > s_max:
                    continue
                base = 12 * a + gt - s
                kmin = -((base - lo) // 16)
                kmax = (hi - base) // 16
                for k in range(kmin, kmax + 1):
                    out.append(Monomial(a, k, e, g))
    return sorted(out, key=lambda m: (m.stem, m.s, m.label))


def monomial_count(s: int, t: int, zeta: bool = True) -> int:
    """Number of basis monomials at (s, t) (v2 makes this depend on t mod 16 only)."""
    n = 0
    for e in ((0, 1) if zeta else (0,)):
        for g, (gs, gt) in GENERATORS.items():
            rest = s - e - gs
            if rest < 0 or rest % 2:
                continue
            a = rest // 2
            if (t - 12 * a - gt) % 16 == 0:
                n += 1
    return n


def cell_names(s: int, t: int, zeta: bool = True) -> list[str]:
    """Names of the monomials at (s, t mod 16), normalised to t in [0, 16)."""
    out = []
    for e in ((0, 1) if zeta else (0,)):
        for g, (gs, gt) in GENERATORS.items():
            rest = s - e - gs
            if rest < 0 or rest % 2:
                continue
            a = rest // 2
            d = t % 16 - 12 * a - gt
            if d % 16 == 0:
                out.append(Monomial(a, d // 16, e, g).label)
    return sorted(out)


# --------------------------------------------------------------------------
# pages and differentials

@dataclass(frozen=True)
class DifferentialRule:
    r: int
    g: str
    residues: frozenset
    target: Callable

    def applies(self, m: Monomial) -> bool:
        return m.g == self.g and m.k % 9 in self.residues

    def __call__(self, m: Monomial) -> Monomial:
        return self.target(m)


RULES = (
    DifferentialRule(5, "1", frozenset({2, 3, 4, 6, 7, 8}), lambda m: Monomial(m.a + 2, m.k - 2, m.e, "h1")),
    DifferentialRule(5, "b1", frozenset({0, 1, 2, 5, 6, 7}), lambda m: Monomial(m.a + 3, m.k, m.e, "alpha")),
    DifferentialRule(9, "alpha", frozenset({3, 4, 8}), lambda m: Monomial(m.a + 5, m.k - 3, m.e, "1")),
    # the target carries b1: only then does the bidegree shift equal (9, 8)
    DifferentialRule(9, "h1", frozenset({3, 7, 8}), lambda m: Monomial(m.a + 4, m.k - 4, m.e, "b1")),
)


@dataclass(frozen=True)
class DifferentialRecord:
    r: int
    source: Monomial
    target: Monomial


@dataclass
class SpectralPage:
    page: object                   # 2, 5, 9 or "infinity"
    kind: str
    monomials: tuple
    stems: tuple
    s_max: int                     # classes trusted up to this filtration
    differentials: tuple = ()
    ranks: dict = field(default_factory=dict)   # verified (s, t mod 16) -> rank
    cells: dict = field(default_factory=dict)   # (s, t mod 16) -> names

    def classes(self, stems=None, s_max=None) -> list[Monomial]:
        lo, hi = stems or self.stems
        s_max = self.s_max if s_max is None else s_max
        return [m for m in self.monomials if lo <= m.stem <= hi and m.s <= s_max]

    def visible_differentials(self, stems=None, s_max=None) -> list[DifferentialRecord]:
        lo, hi = stems or self.stems
        s_max = self.s_max if s_max is None else s_max
        return [d for d in self.differentials
                if lo <= d.source.stem <= hi and lo <= d.target.stem <= hi
                and d.source.s <= s_max and d.target.s <= s_max]


def e2_table(tc: TotalComplex, s_max: int = 8, t_window=range(0, 16, 2), stems=None,
             page_s_max: int = PAGE_S_MAX) -> SpectralPage:
    """E2 ranks from the total complex, checked against the monomial basis and named by it.

    ``stems`` additionally attaches the monomial basis over that stem window (s <= page_s_max).
    """
    if s_max > E2_S_MAX:
        raise PreconditionError(f"s_max must be <= {E2_S_MAX}")
    zeta = tc.kind == "q2"
    ranks, cells = {}, {}
    for s in range(s_max + 1):
        for t in t_window:
            t16 = t % 16
            if t16 % 2:
                continue
            rk = tc.cohomology_rank(s, t16 // 2) if t16 % 2 == 0 else 0
            expect = monomial_count(s, t16, zeta)
            if rk != expect:
                raise IntegrityError(f"E2 rank {rk} at (s={s}, t={t16} mod 16) but {expect} basis monomials")
            if rk:
                ranks[(s, t16)] = rk
                cells[(s, t16)] = cell_names(s, t16, zeta)
    if stems is None:
        return SpectralPage(2, tc.kind, (), (0, -1), s_max, (), ranks, cells)
    lo, hi = stems
    monos = tuple(monomials_in((lo - 1, hi + 1), page_s_max, zeta))
    return SpectralPage(2, tc.kind, monos, (lo, hi), min(s_max, page_s_max), (), ranks, cells)


def e2_page(kind: str = "q2", stems=(-5, 150), s_max: int = PAGE_S_MAX) -> SpectralPage:
    """Monomial E2 page without re-running the rank check."""
    zeta = kind == "q2"
    lo, hi = stems
    monos = tuple(monomials_in((lo - 1, hi + 1), s_max, zeta))
    return SpectralPage(2, kind, monos, (lo, hi), s_max)


def _apply(page: SpectralPage, r: int, s_cap: int, rules=RULES) -> tuple[SpectralPage, SpectralPage]:
    """Return (E_r with its d_r recorded, E_{r+1})."""
    present = set(page.monomials)
    lo, hi = page.stems
    active = [rule for rule in rules if rule.r == r]
    # every rule source of the full E2 basis must still be alive on E_r
    for m in monomials_in((lo - 1, hi + 1), s_cap, page.kind == "q2"):
        for rule in active:
            if rule.applies(m) and m not in present:
                raise IntegrityError(f"d{r} source {m.label} is absent from E{r}")
    records, dead = [], set()
    for m in page.monomials:
        for rule in active:
            if rule.applies(m):
                tgt = rule(m)
                if (tgt.s, tgt.t) != (m.s + r, m.t + r - 1):
                    raise IntegrityError(f"d{r}({m.label}) = {tgt.label} has the wrong bidegree")
                if tgt.s <= s_cap and lo - 1 <= tgt.stem and tgt not in present:
                    raise IntegrityError(f"d{r} target {tgt.label} is absent from E{r}")
                if tgt in dead:
                    raise IntegrityError(f"{tgt.label} is hit twice")
                records.append(DifferentialRecord(r, m, tgt))
                dead.add(m)
                dead.add(tgt)
    for rec in records:
        if rec.source in {x.target for x in records}:
            raise IntegrityError("a d_r target also supports a d_r")
    with_d = SpectralPage(r, page.kind, page.monomials, page.stems, page.s_max, tuple(records),
                          page.ranks, page.cells)
    nxt = tuple(m for m in page.monomials if m not in dead)
    return with_d, SpectralPage(r + 1, page.kind, nxt, page.stems, page.s_max, (), page.ranks, page.cells)


def run_differentials(page2: SpectralPage, until="infinity", rules=RULES) -> SpectralPage:
    """Apply d5 then d9 to a monomial E2 page.

    ``until`` = 5 or 9 returns that page with its differentials recorded.
    The result's ``s_max`` is lowered so that every reported class has had its
    outgoing differentials checked inside the truncated page.
    """
    if not page2.monomials:
        raise PreconditionError("run_differentials needs a monomial page (pass stems to e2_table)")
    cap = max(m.s for m in page2.monomials)
    e5, e6 = _apply(page2, 5, cap, rules)
    if until == 5:
        return e5
    e6 = SpectralPage(6, e6.kind, e6.monomials, e6.stems, e6.s_max)
    e9, e10 = _apply(e6, 9, cap, rules)
    if until == 9:
        return e9
    trusted = cap - LONGEST_DIFFERENTIAL
    survivors = e10.monomials
    return SpectralPage("infinity", e10.kind, survivors, e10.stems, min(trusted, page2.s_max),
                        e5.differentials + e9.differentials, page2.ranks, page2.cells)


def stem_dimensions(einf: SpectralPage, stem_range=None) -> dict:
    """F_3-dimension of E-infinity per stem."""
    if einf.page != "infinity":
        raise PreconditionError("stem_dimensions needs the E-infinity page")
    lo, hi = stem_range or einf.stems
    cls = einf.classes((lo, hi))
    top = max((m.s for m in cls), default=0)
    if top > einf.s_max - 3:
        raise IntegrityError("survivors reach the truncation horizon; raise the page's s_max")
    dims = {n: 0 for n in range(lo, hi + 1)}
    for m in cls:
        dims[m.stem] += 1
    return dims


def einf_page(kind: str = "q2", stems=(-5, 150), s_max: int = PAGE_S_MAX) -> SpectralPage:
    return run_differentials(e2_page(kind, stems, s_max))
