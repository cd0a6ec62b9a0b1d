"""Command-line entry point.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys

from . import charts, cobar, curves, formal_groups, patterns, quaternions, ss_engine, verify
from .errors import ConfigurationError, IntegrityError, PrecisionError, PreconditionError, QtwoError
from .exact_algebra import QQ, PolyRing, parse_poly, to_text
from .exact_algebra.poly import VAR_ORDER

RANGE_FLAGS = ("--stems",)


def _range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected INT..INT, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise argparse.ArgumentTypeError("empty window")
    return lo, hi


def _hex(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a hex seed, got {text!r}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _glue_ranges(argv):
    """Keep '--stems -5..150' from being read as an option."""
    out, it = [], iter(argv)
    for a in it:
        if a in RANGE_FLAGS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "svg", "text"), default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=_hex, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="qtwo", parents=[common],
                                description="Exact computations for the Q(2) spectrum at p = 3.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cobar", parents=[common], help="cobar cohomology mod I_2")
    c.add_argument("--smax", type=int, default=6)
    c.add_argument("--wmin", type=int, default=-20)
    c.add_argument("--wmax", type=int, default=20)

    a = sub.add_parser("anss", parents=[common], help="spectral sequence pages")
    a.add_argument("--complex", choices=ss_engine.KINDS, default="q2")
    a.add_argument("--page", choices=("2", "5", "9", "inf"), default="2")
    a.add_argument("--stems", type=_range, default=(-5, 150))

    f = sub.add_parser("fgl", parents=[common], help="formal group law m-series")
    f.add_argument("--b2", default="0")
    f.add_argument("--b4", default="0")
    f.add_argument("--b6", default="0")
    f.add_argument("--m", type=int, default=3)
    f.add_argument("--prec", type=_positive, default=12)
    f.add_argument("--mod", type=int, choices=(0, 3), default=0)

    cu = sub.add_parser("curve", parents=[common], help="curves and isogenies")
    csub = cu.add_subparsers(dest="action", required=True)
    q = csub.add_parser("quotient", parents=[common])
    q.add_argument("--q2", default="q2")
    q.add_argument("--q4", default="q4")
    csub.add_parser("maps", parents=[common])
    r = csub.add_parser("relations", parents=[common])
    r.add_argument("--ext-degree", type=int, default=2)

    pa = sub.add_parser("patterns", parents=[common], help="V(1)-homotopy dimension tables")
    pa.add_argument("--target", choices=tuple(patterns.CLI_TARGETS), default="q2")
    pa.add_argument("--stems", type=_range, default=(-5, 150))

    qu = sub.add_parser("quat", parents=[common], help="quaternion orders and unit groups")
    qsub = qu.add_subparsers(dest="action", required=True)
    qv = qsub.add_parser("verify", parents=[common])
    qv.add_argument("--precision", type=_positive, default=quaternions.DEFAULT_PRECISION)
    qs = qsub.add_parser("subgroup", parents=[common])
    qs.add_argument("--gens", default="s,t,sigma")
    qs.add_argument("--precision", type=_positive, default=quaternions.DEFAULT_PRECISION)

    g = sub.add_parser("groupring", parents=[common], help="nilpotence in F_p[Z/p^k]")
    g.add_argument("--p", type=int, default=3)
    g.add_argument("--k", type=int, default=1)

    sub.add_parser("verify-all", parents=[common], help="run every acceptance check")
    return p


# --------------------------------------------------------------------------

def _ring_for(*texts) -> PolyRing:
    names = set()
    for t in texts:
        names.update(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", t))
    order = [n for n in VAR_ORDER if n in names] + sorted(names - set(VAR_ORDER))
    return PolyRing(tuple(order), QQ)


def _cmd_cobar(args, fmt):
    table = cobar.cohomology(args.smax, range(args.wmin, args.wmax + 1))
    rows = table.rows()
    if fmt == "json":
        return json.dumps(rows, ensure_ascii=False, indent=1) + "\n", 0
    if fmt == "svg":
        dots = [(r["t"] - r["s"], r["s"], f"{n}@{r['t']}") for r in rows for n in r["names"]]
        lo = min((d[0] for d in dots), default=0)
        hi = max((d[0] for d in dots), default=0)
        return charts.render_svg(dots, [], (lo, hi), args.smax, "cobar cohomology"), 0
    return "".join(f"{r['s']:>3} {r['t']:>5} {r['rank']} {' '.join(r['names'])}\n" for r in rows), 0


def _cmd_anss(args, fmt):
    if args.page == "2":
        page = ss_engine.e2_page(args.complex, args.stems)
    elif args.page in ("5", "9"):
        page = ss_engine.run_differentials(ss_engine.e2_page(args.complex, args.stems), until=int(args.page))
    else:
        page = ss_engine.einf_page(args.complex, args.stems)
        ss_engine.stem_dimensions(page)     # horizon check
    return charts.emit_chart(page, fmt), 0


def _cmd_fgl(args, fmt):
    if args.prec > formal_groups.MAX_FGL_PREC:
        raise PreconditionError(f"--prec must be <= {formal_groups.MAX_FGL_PREC}")
    ring = _ring_for(args.b2, args.b4, args.b6)
    b = curves.WeierstrassB(*(parse_poly(x, ring) for x in (args.b2, args.b4, args.b6)))
    fgl = formal_groups.fgl_from_curve(b, args.prec, args.mod)
    series = formal_groups.m_series(fgl, args.m)
    if fmt == "json":
        coeffs = [{"deg": n, "value": str(series.coeff(n))} for n in range(series.prec)
                  if not series.coeff(n).is_zero()]
        return json.dumps({"coeffs": coeffs}, indent=1) + "\n", 0
    return str(series) + "\n", 0


def _cmd_curve(args, fmt):
    if args.action == "quotient":
        ring = _ring_for(args.q2, args.q4)
        c = curves.WeierstrassQ(parse_poly(args.q2, ring), parse_poly(args.q4, ring))
        b, qf = curves.quotient_by_canonical_2torsion(c)
        if fmt == "json":
            data = {"b_form": [to_text(v) for v in (b.b2, b.b4, b.b6)], "q2": to_text(qf.q2), "q4": to_text(qf.q4)}
            return json.dumps(data, indent=1) + "\n", 0
        return f"({to_text(qf.q2)}, {to_text(qf.q4)})\n", 0
    if args.action == "maps":
        rows = []
        for name in curves.MAP_TABLE:
            m = curves.induced_map(name)
            rows.append({"map": name, **{v: None if m.image(v) is None else to_text(m.image(v))
                                         for v in ("q2", "q4", "r")}})
        dd = curves.compose(curves.induced_map("psi_d"), curves.induced_map("psi_d"))
        p2 = curves.induced_map("psi_2")
        rel2 = all(dd.image(v) == p2.image(v) for v in ("q2", "q4"))
        rel1 = curves.compose(curves.induced_map("phi_f"), curves.induced_map("psi_d")) == curves.induced_map("phi_q")
        data = {"maps": rows, "relations": {"psi_d o psi_d = psi_2": rel2, "phi_q = phi_f o psi_d": rel1}}
        code = 0 if rel1 and rel2 else 1
        if fmt == "json":
            return json.dumps(data, indent=1) + "\n", code
        lines = [str(curves.induced_map(n)) for n in curves.MAP_TABLE]
        lines += [f"{k}: {v}" for k, v in data["relations"].items()]
        return "\n".join(lines) + "\n", code
    rep = curves.endo_relation_report(args.ext_degree, seed=args.seed)
    if fmt == "json":
        return json.dumps(rep, indent=1) + "\n", 0
    return "".join(f"{r['status']:<5} {r['relation']}  ({r['points_checked']} points)"
                   f"{'  variant: ' + r['variant'] if r['variant'] else ''}\n" for r in rep), 0


def _cmd_patterns(args, fmt):
    dims = patterns.assemble(args.target, args.stems)
    rows = [{"stem": n, "dim": dims[n]} for n in range(args.stems[0], args.stems[1] + 1)]
    if fmt == "json":
        data = {"target": patterns.CLI_TARGETS[args.target], "assumptions": patterns.ASSUMPTIONS, "rows": rows}
        return json.dumps(data, ensure_ascii=False, indent=1) + "\n", 0
    return "".join(f"{r['stem']:>5} {r['dim']}\n" for r in rows), 0


def _cmd_quat(args, fmt):
    if args.action == "verify":
        rows = quaternions.relation_battery(args.precision)
        code = 0 if all(r["status"] == r["expected"] for r in rows) else 1
        if fmt == "json":
            return json.dumps(rows, indent=1) + "\n", code
        return "".join(f"{r['status']:<5} (expected {r['expected']}) {r['check']}"
                       f"{'  [' + r['detail'] + ']' if r['detail'] else ''}\n" for r in rows), code
    gens = [g.strip() for g in args.gens.split(",") if g.strip()]
    res = quaternions.subgroup_closure(gens, args.precision)
    nxt = quaternions.subgroup_closure(gens, args.precision + 1, table=False)["order"]
    data = {"generators": gens, "precision": args.precision, "order": res["order"],
            "stable": nxt == res["order"], "order_at_next_precision": nxt, "table": res["table"]}
    code = 0 if data["stable"] else 1
    if fmt == "json":
        return json.dumps(data) + "\n", code
    return f"order {res['order']} at precision {args.precision}, {nxt} at {args.precision + 1}\n", code


def _cmd_groupring(args, fmt):
    m = quaternions.group_ring_nilpotence(args.p, args.k)
    data = {"p": args.p, "k": args.k, "nilpotence_exponent": m}
    if fmt == "json":
        return json.dumps(data) + "\n", 0
    return f"{m}\n", 0


def _cmd_verify_all(args, fmt):
    rows = verify.run_all(args.seed)
    code = 0 if all(r["status"] == r["expected"] for r in rows) else 1
    if fmt == "json":
        return json.dumps({"checks": rows, "all_as_expected": code == 0}, ensure_ascii=False,
                          indent=1, default=str) + "\n", code
    return "".join(f"{r['id']:>2} {r['status']:<4} (expected {r['expected']}) {r['seconds']:>7.3f}s  "
                   f"{r['name']}\n" for r in rows), code


COMMANDS = {"cobar": _cmd_cobar, "anss": _cmd_anss, "fgl": _cmd_fgl, "curve": _cmd_curve,
            "patterns": _cmd_patterns, "quat": _cmd_quat, "groupring": _cmd_groupring,
            "verify-all": _cmd_verify_all}

DEFAULT_FORMAT = {"anss": "json", "cobar": "json", "patterns": "json", "verify-all": "json"}


def main(argv=None) -> int:
    argv = _glue_ranges(sys.argv[1:] if argv is None else list(argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = getattr(args, "format", None) or DEFAULT_FORMAT.get(args.command, "text")
    args.seed = getattr(args, "seed", verify.SEED)
    if fmt == "svg" and args.command not in ("anss", "cobar"):
        print(f"error: --format svg is not available for {args.command}", file=sys.stderr)
        return 2
    try:
        text, code = COMMANDS[args.command](args, fmt)
    except (PreconditionError, ConfigurationError, SyntaxError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (IntegrityError, PrecisionError, AssertionError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except QtwoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out = getattr(args, "out", None)
    if out:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {out}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
