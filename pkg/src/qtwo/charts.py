"""Chart JSON and a dependency-free SVG renderer for spectral pages."""
from __future__ import annotations

import json
from html import escape

from .errors import PreconditionError
from .ss_engine import SpectralPage

CELL = 40
MARGIN = 50
DOT_R = 3
OFFSET = 7


def _sorted_classes(page: SpectralPage, stems=None, s_max=None):
    return sorted(page.classes(stems, s_max), key=lambda m: (m.stem, m.s, m.label))


def chart_dict(page: SpectralPage, stems=None, s_max=None) -> dict:
    classes = [{"s": m.s, "t": m.t, "stem": m.stem, "label": m.label, "dim": 1}
               for m in _sorted_classes(page, stems, s_max)]
    diffs = []
    if page.page != "infinity":
        for d in sorted(page.visible_differentials(stems, s_max),
                        key=lambda d: (d.source.stem, d.source.s, d.source.label)):
            diffs.append({"r": d.r, "source": {"s": d.source.s, "t": d.source.t},
                          "target": {"s": d.target.s, "t": d.target.t}, "rank": 1})
    return {"page": page.page, "classes": classes, "differentials": diffs}


def chart_json(page: SpectralPage, stems=None, s_max=None) -> str:
    return json.dumps(chart_dict(page, stems, s_max), ensure_ascii=False, indent=1) + "\n"


def parse_chart(text: str) -> dict:
    data = json.loads(text)
    for key in ("page", "classes", "differentials"):
        if key not in data:
            raise PreconditionError(f"chart JSON lacks {key!r}")
    for c in data["classes"]:
        if set(c) != {"s", "t", "stem", "label", "dim"} or c["stem"] != c["t"] - c["s"]:
            raise PreconditionError(f"malformed class entry {c}")
    return data


def chart_svg(page: SpectralPage, stems=None, s_max=None) -> str:
    """x = stem, y = s; dots sharing a bidegree are spread horizontally."""
    lo, hi = stems or page.stems
    s_top = page.s_max if s_max is None else s_max
    dots = [(c["stem"], c["s"], c["label"]) for c in chart_dict(page, (lo, hi), s_top)["classes"]]
    arrows = []
    if page.page != "infinity":
        for d in sorted(page.visible_differentials((lo, hi), s_top),
                        key=lambda d: (d.source.stem, d.source.s, d.source.label)):
            arrows.append((d.source.label, d.target.label))
    return render_svg(dots, arrows, (lo, hi), s_top, f"E{page.page} {page.kind} stems {lo}..{hi}")


def render_svg(dots, arrows, stems, s_top: int, title: str) -> str:
    """Hand-rolled chart: dots are (stem, s, label) in drawing order, arrows join labels."""
    lo, hi = stems
    width = (hi - lo + 1) * CELL + 2 * MARGIN
    height = (s_top + 1) * CELL + 2 * MARGIN

    def x_of(stem):
        return MARGIN + (stem - lo) * CELL + CELL // 2

    def y_of(s):
        return height - MARGIN - s * CELL - CELL // 2

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="9">',
           '<defs><marker id="arrow" viewBox="0 0 6 6" refX="5" refY="3" markerWidth="6" '
           'markerHeight="6" orient="auto"><path d="M0,0 L6,3 L0,6 z" fill="#a33"/></marker></defs>',
           f'<title>{escape(title)}</title>']
    x0, y0 = MARGIN, height - MARGIN
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{width - MARGIN}" y2="{y0}" stroke="#000"/>')
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{MARGIN}" stroke="#000"/>')
    for stem in range(lo, hi + 1):
        if stem % 5 == 0:
            out.append(f'<text x="{x_of(stem)}" y="{y0 + 14}" text-anchor="middle">{stem}</text>')
    for s in range(0, s_top + 1, 2):
        out.append(f'<text x="{x0 - 6}" y="{y_of(s) + 3}" text-anchor="end">{s}</text>')

    slots: dict = {}
    for stem, s, label in dots:
        slots.setdefault((stem, s), []).append(label)
    pos: dict = {}
    for (stem, s), group in slots.items():
        n = len(group)
        for i, label in enumerate(group):
            cx = x_of(stem) + (i - (n - 1) / 2) * OFFSET
            cy = y_of(s)
            pos[label] = (cx, cy)
            out.append(f'<circle cx="{cx:g}" cy="{cy}" r="{DOT_R}"/>')
            out.append(f'<text x="{cx:g}" y="{cy - 5}" text-anchor="middle">{escape(label)}</text>')
    for src, tgt in arrows:
        if src not in pos or tgt not in pos:
            continue
        (sx, sy), (tx, ty) = pos[src], pos[tgt]
        out.append(f'<line x1="{sx:g}" y1="{sy}" x2="{tx:g}" y2="{ty}" stroke="#a33" '
                   f'marker-end="url(#arrow)"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_chart(page: SpectralPage, fmt: str = "json", path=None, stems=None, s_max=None) -> str:
    if fmt == "json":
        text = chart_json(page, stems, s_max)
    elif fmt == "svg":
        text = chart_svg(page, stems, s_max)
    elif fmt == "text":
        text = "".join(f"{c['stem']:>4} {c['s']:>3} {c['label']}\n"
                       for c in chart_dict(page, stems, s_max)["classes"])
    else:
        raise PreconditionError(f"unknown chart format {fmt!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
