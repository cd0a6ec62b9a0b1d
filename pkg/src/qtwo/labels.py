"""Unicode monomial labels such as ζβ²v₂⁻²h₁."""
from __future__ import annotations

_SUP = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")

SYMBOLS = {"zeta": "ζ", "alpha": "α", "beta": "β", "v2": "v₂", "q4": "q₄", "h1": "h₁", "b1": "b₁", "b4": "b₄"}


def sup(n: int) -> str:
    return str(n).translate(_SUP)


def monomial_label(factors) -> str:
    """factors: iterable of (name, exponent); zero exponents are skipped, empty product is '1'."""
    out = []
    for name, k in factors:
        if k == 0:
            continue
        sym = SYMBOLS.get(name, name)
        out.append(sym if k == 1 else sym + sup(k))
    return "".join(out) or "1"
