"""Finite graded F_3-vector spaces ("patterns") and the V(1)-homotopy dimension tables
assembled from them.

Stems come from the generator table: alpha 3, beta 10, v2 16, h1 11, b1 34,
b4 8, zeta -1; a Toda bracket <alpha, alpha, x> sits 7 stems above x.
Periodicity v2^9 has stem 144.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionError
from .labels import monomial_label

STEMS = {"alpha": 3, "beta": 10, "v2": 16, "h1": 11, "b1": 34, "b4": 8, "zeta": -1}
BRACKET_SHIFT = 7
PERIOD = 144
ASSUMPTIONS = {"b4": "stem 8 (weight-4 modular form in filtration 0)"}

_ORDER = ("alpha", "beta", "v2", "h1", "b1", "b4")


@dataclass(frozen=True)
class Element:
    factors: tuple = ()      # sorted (generator, exponent) pairs
    brackets: int = 0        # number of <alpha, alpha, -> applications

    @classmethod
    def of(cls, brackets=0, **exps):
        return cls(tuple(sorted(((g, k) for g, k in exps.items() if k), key=lambda p: _ORDER.index(p[0]))), brackets)

    @property
    def stem(self) -> int:
        return sum(STEMS[g] * k for g, k in self.factors) + BRACKET_SHIFT * self.brackets

    @property
    def name(self) -> str:
        core = monomial_label(self.factors)
        for _ in range(self.brackets):
            core = f"⟨α,α,{core}⟩"
        return core

    def times(self, other: "Element") -> "Element":
        exps = dict(self.factors)
        for g, k in other.factors:
            exps[g] = exps.get(g, 0) + k
        return Element.of(self.brackets + other.brackets, **exps)


@dataclass
class PatternSpace:
    elements: list                      # (name, stem)
    lines: list = field(default_factory=list)   # (kind, source name, target name)

    def __post_init__(self):
        names = [n for n, _ in self.elements]
        if len(set(names)) != len(names):
            raise PreconditionError("pattern element names must be unique")

    @classmethod
    def from_elements(cls, elems, lines=()):
        return cls([(e.name, e.stem) for e in elems], list(lines))

    def __len__(self):
        return len(self.elements)

    @property
    def stems(self) -> list:
        return sorted(s for _, s in self.elements)

    def dims(self) -> dict:
        out: dict = {}
        for _, s in self.elements:
            out[s] = out.get(s, 0) + 1
        return out


def pattern_op(mode: str, *operands, k: int = 0) -> PatternSpace:
    """tensor (stem-wise sums of pairs), sum, suspend k, dualize."""
    if mode == "tensor":
        p, q = operands
        els = []
        for n1, s1 in p.elements:
            for n2, s2 in q.elements:
                name = n1 if n2 == "1" else n2 if n1 == "1" else f"{n1}·{n2}"
                els.append((name, s1 + s2))
        return PatternSpace(_uniq(els))
    if mode == "sum":
        els = []
        for i, p in enumerate(operands):
            els.extend(p.elements)
        return PatternSpace(_uniq(els))
    if mode == "suspend":
        (p,) = operands
        return PatternSpace([(f"Σ{k}{n}" if k else n, s + k) for n, s in p.elements], list(p.lines))
    if mode == "dualize":
        (p,) = operands
        return PatternSpace([(f"{n}∨", -s) for n, s in p.elements], list(p.lines))
    raise PreconditionError(f"unknown pattern operation {mode!r}")


def _uniq(els):
    seen: dict = {}
    out = []
    for n, s in els:
        if n in seen:
            seen[n] += 1
            n = f"{n}#{seen[n]}"
        else:
            seen[n] = 0
        out.append((n, s))
    return out


def basis(*elems: Element) -> PatternSpace:
    return PatternSpace.from_elements(elems)


def standard_patterns() -> dict:
    E = Element.of
    X = [E(), E(alpha=1), E(beta=1), E(alpha=1, beta=1), E(beta=2), E(1, beta=2), E(beta=3),
         E(1, beta=3), E(beta=4)]
    Y = [E(), E(alpha=1), E(beta=1), E(alpha=1, beta=1), E(beta=2), E(alpha=1, beta=2), E(v2=1, h1=1),
         E(beta=3), E(beta=1, v2=1, h1=1), E(beta=4)]
    vb = dict(v2=-1, b1=1)
    Z = [E(h1=1), E(**vb), E(beta=1, h1=1), E(beta=1, **vb), E(1, beta=1, **vb), E(beta=2, **vb),
         E(1, beta=2, **vb), E(beta=3, **vb), E(1, beta=3, **vb)]
    lines_x = [("alpha", "1", "α"), ("alpha", "β", "αβ"), ("beta", "1", "β"), ("beta", "β", "β²"),
               ("beta", "β²", "β³"), ("beta", "β³", "β⁴"), ("bracket", "β²", "⟨α,α,β²⟩"),
               ("bracket", "β³", "⟨α,α,β³⟩")]
    pX = PatternSpace.from_elements(X, lines_x)
    pY = PatternSpace.from_elements(Y, [("alpha", "1", "α"), ("beta", "1", "β"), ("beta", "v₂h₁", "βv₂h₁")])
    pZ = PatternSpace.from_elements(Z, [("beta", "h₁", "βh₁"), ("beta", "v₂⁻¹b₁", "βv₂⁻¹b₁")])
    one = basis(E())
    A = pattern_op("tensor", pX, basis(E(), E(b4=1), E(v2=1)))
    B = pattern_op("sum", pattern_op("tensor", pY, basis(E(), E(v2=1))), pZ)
    C = pattern_op("sum", pattern_op("tensor", pZ, basis(E(v2=4), E(v2=5))), pattern_op("tensor", pY, basis(E(v2=5))))
    return {"X": pX, "Y": pY, "Z": pZ, "A": A, "B": B, "C": C, "1": one}


# --------------------------------------------------------------------------
# assembled dimension tables

def _periodic(core: dict, lo: int, hi: int, zeta: bool) -> dict:
    out = {n: 0 for n in range(lo, hi + 1)}
    shifts = (0, -1) if zeta else (0,)
    for s, d in core.items():
        for z in shifts:
            base = s + z
            j0 = -((base - lo) // PERIOD)
            j = j0
            while base + PERIOD * j <= hi:
                out[base + PERIOD * j] += d
                j += 1
    return out


def _add(*tables):
    out = {}
    for t in tables:
        for n, d in t.items():
            out[n] = out.get(n, 0) + d
    return out


TARGETS = ("TMF", "Q2", "Qprime2", "Sphere", "Qbar")
CLI_TARGETS = {"tmf": "TMF", "q2": "Q2", "qprime2": "Qprime2", "sphere": "Sphere", "qbar": "Qbar"}


def assemble(target: str, stem_range=(-5, 150)) -> dict:
    """Per-stem F_3-dimension of the V(1)-homotopy of the target."""
    target = CLI_TARGETS.get(target, target)
    lo, hi = stem_range
    p = standard_patterns()
    BC = pattern_op("sum", p["B"], p["C"])
    dual_bc = pattern_op("suspend", pattern_op("dualize", BC), k=29)
    if target == "TMF":
        core = pattern_op("sum", p["A"], pattern_op("suspend", p["A"], k=72)).dims()
        return _periodic(core, lo, hi, zeta=False)
    if target == "Q2":
        return _periodic(BC.dims(), lo, hi, zeta=True)
    if target == "Qprime2":
        return _periodic(dual_bc.dims(), lo, hi, zeta=True)
    if target == "Sphere":
        core = _add(BC.dims(), dual_bc.dims())
        return _periodic(core, lo, hi, zeta=True)
    if target == "Qbar":
        return _periodic(BC.dims(), lo, hi, zeta=False)
    raise PreconditionError(f"unknown target {target!r}")


def compare(table_a: dict, table_b: dict, stem_range=None) -> list:
    """Stems where the two dimension tables differ."""
    if stem_range is None:
        stems = sorted(set(table_a) | set(table_b))
    else:
        stems = range(stem_range[0], stem_range[1] + 1)
    return [n for n in stems if table_a.get(n, 0) != table_b.get(n, 0)]
