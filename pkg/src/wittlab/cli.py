"""Command-line front end (``wittlab``).

Every command prints a JSON report (or writes it with ``--out``).  Exit
status: 0 on success, 1 when a golden check or verification fails, 2 on
input errors.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from typing import List, Optional, Sequence

from .closure import (
    SearchConfig,
    SearchStats,
    bs_pipeline,
    qtc_check,
    tc_certify,
    tc_refute_layer0,
    tc_search_lifts,
)
from .lccolim import ColimContext, Zero, is_zero_bounded, torsion_probe
from .parsing import parse_ideal_spec, parse_ring_text
from .rings import QuotientRing
from .scenarios import BUILTIN_RINGS, EXAMPLES
from .serialize import (
    bounds_of,
    dumps,
    ic_record,
    load_report,
    make_report,
    membership_record,
    tc_record,
    verify_report,
)
from .witt import WittContext, witt_context
from .witt_ideal import Member, TeichIdeal, layered_membership, product_power

log = logging.getLogger("wittlab")


class UsageError(ValueError):
    pass


def thread_count() -> int:
    """Value of WITTLAB_THREADS (default 1).  Searches currently run in one thread."""
    raw = os.environ.get("WITTLAB_THREADS", "").strip()
    if not raw:
        return 1
    try:
        k = int(raw)
    except ValueError:
        raise UsageError(f"WITTLAB_THREADS must be a positive integer, got {raw!r}")
    if k < 1:
        raise UsageError(f"WITTLAB_THREADS must be a positive integer, got {raw!r}")
    return k


# -- input helpers ------------------------------------------------------------------


def load_ring(spec: str) -> QuotientRing:
    """A built-in name (ex1, ex2, ex3), a ring file, or inline ring text."""
    if spec in BUILTIN_RINGS:
        return BUILTIN_RINGS[spec]()
    if os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = spec.replace(";", "\n")
    rs = parse_ring_text(text)
    return QuotientRing(rs.prime, rs.variables, rs.mods, rs.order)


def load_ideal(ctx: WittContext, text: str) -> TeichIdeal:
    spec = parse_ideal_spec(text)
    I = TeichIdeal(ctx, spec.generators)
    if spec.power > 1:
        I = product_power(I, spec.power)
    if spec.bracket_prime is not None:
        if spec.bracket_prime != ctx.p:
            raise UsageError(f"bracket power [{spec.bracket_prime}^e] does not match p = {ctx.p}")
        I = I.bracket(spec.bracket_e)
    return I


def search_config(args) -> SearchConfig:
    return SearchConfig(
        depth=getattr(args, "E", None),
        mult_degree=getattr(args, "cand_deg", 4),
        lift_degree=getattr(args, "lift_deg", 4),
        power_bound=getattr(args, "M", 8),
    )


def _csv(text: str) -> List[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


# -- commands -----------------------------------------------------------------------


def cmd_ring_check(args, argv):
    R = load_ring(args.ring)
    gb = [p.to_str(R.variables) for p in R.gb.polys]
    return make_report(argv, R, "ok", groebner_basis=gb, ring_text=R.to_text()), 0


def _eval_witt(ctx: WittContext, tokens: Sequence[str]):
    def operand(tok: str):
        tok = tok.strip()
        if tok.startswith("[") and tok.endswith("]"):
            return ctx.teichmuller(tok[1:-1])
        return ctx(tok)

    if not tokens or len(tokens) % 2 == 0:
        raise UsageError("expected OPERAND [(+|-|*) OPERAND ...]")
    acc = operand(tokens[0])
    for op, tok in zip(tokens[1::2], tokens[2::2]):
        rhs = operand(tok)
        if op == "+":
            acc = acc + rhs
        elif op == "-":
            acc = acc - rhs
        elif op in ("*", "x"):
            acc = acc * rhs
        else:
            raise UsageError(f"unknown operator {op!r}")
    return acc


def cmd_witt_eval(args, argv):
    R = load_ring(args.ring)
    ctx = witt_context(R, args.n)
    val = _eval_witt(ctx, args.expr)
    if args.frobenius:
        val = val.frobenius(args.frobenius)
    if args.verschiebung:
        val = witt_context(R, args.n + 1).verschiebung(val)
    return make_report(argv, R, "ok", {"n": args.n}, value=str(val)), 0


def cmd_ideal_member(args, argv):
    R = load_ring(args.ring)
    ctx = witt_context(R, args.n)
    I = load_ideal(ctx, args.ideal)
    beta = ctx(args.elem)
    verdict = layered_membership(beta, I)
    extra = {"ideal": [str(f) for f in I.base], "complete": I.complete}
    if isinstance(verdict, Member):
        cert = membership_record(beta, I, verdict.certificate)
        return make_report(argv, R, "member", {"n": args.n}, cert, **extra), 0
    extra.update(layer=verdict.layer, residue=str(verdict.residue))
    if verdict.kind == "uncertified":
        extra["reason"] = verdict.reason
    return make_report(argv, R, verdict.kind, {"n": args.n}, **extra), 0


def cmd_tc_certify(args, argv):
    R = load_ring(args.ring)
    ctx = witt_context(R, args.n)
    I = load_ideal(ctx, args.ideal)
    alpha = ctx(args.alpha)
    cfg = search_config(args)
    st = SearchStats()
    cert = tc_certify(alpha, I, cfg, st)
    bounds = bounds_of(cfg, R.p, n=args.n)
    if cert is None:
        return make_report(argv, R, "not_certified", bounds, statistics=st.as_dict()), 0
    return make_report(argv, R, "certified", bounds, tc_record(alpha, I, cert), st.as_dict()), 0


def cmd_tc_lift_search(args, argv):
    R = load_ring(args.ring)
    ctx = witt_context(R, args.n)
    I = load_ideal(ctx, args.ideal)
    cfg = search_config(args)
    st = SearchStats()
    found = tc_search_lifts(R(args.z), I, cfg, st)
    bounds = bounds_of(cfg, R.p, n=args.n)
    if found is None:
        return make_report(argv, R, "exhausted", bounds, statistics=st.as_dict(),
                           evidence="bounded: no lift/multiplier pair within the search bounds"), 0
    lift, cert = found
    return make_report(argv, R, "certified", bounds, tc_record(lift, I, cert), st.as_dict(),
                       lift=str(lift)), 0


def cmd_tc_refute(args, argv):
    R = load_ring(args.ring)
    ctx = witt_context(R, args.n)
    I = load_ideal(ctx, args.ideal)
    cfg = search_config(args)
    ref = tc_refute_layer0(R(args.z), I, cfg)
    bounds = bounds_of(cfg, R.p, n=args.n)
    if ref is None:
        return make_report(argv, R, "not_refuted", bounds), 0
    failures = [{"multiplier": str(c), "depth": e} for c, e in ref.failures]
    return make_report(argv, R, "refuted", bounds, failures=failures), 0


def cmd_qtc(args, argv):
    R = load_ring(args.ring)
    cfg = search_config(args)
    sop = [R(x) for x in _csv(args.sop)]
    extra = [R(x) for x in _csv(args.extra)] if args.extra else []
    rep = qtc_check(sop, args.n, args.vmax, extra, cfg, args.cand_deg_z)
    entries = []
    for e in rep.entries:
        row = {"v": list(e.exponents), "element": str(e.element), "outcome": e.outcome}
        if e.certificate is not None:
            I = TeichIdeal(witt_context(R, args.n), [x ** v for x, v in zip(rep.sop, e.exponents)])
            row["lift"] = str(e.lift)
            row["certificate"] = tc_record(e.lift, I, e.certificate)
        entries.append(row)
    verdict = "no_candidate_certified" if rep.quasi_tightly_closed_evidence else "candidate_certified"
    bounds = dict(rep.bounds, n=args.n, v_max=args.vmax)
    log.info("qtc finished in %.2f s", rep.seconds)
    return make_report(argv, R, verdict, bounds, statistics=rep.stats.as_dict(),
                       sop_verified=rep.sop_verified, entries=entries), 0


def cmd_bs(args, argv):
    R = load_ring(args.ring)
    ctx = witt_context(R, args.n)
    I = load_ideal(ctx, args.ideal)
    cfg = search_config(args)
    a = R(args.a)
    res = bs_pipeline(a, I, args.lam, cfg)
    bounds = bounds_of(cfg, R.p, n=args.n, lam=args.lam)
    if res is None:
        return make_report(argv, R, "not_certified", bounds), 0
    return make_report(
        argv, R, "certified", bounds,
        tc_record(ctx.teichmuller(a), res.ideal, res.tc_certificate),
        integral_closure={"certificate": ic_record(a, I.base, res.ic_certificate)},
        depth_truncated=res.truncated,
    ), 0


def _zero_record(colim, v) -> dict:
    if isinstance(v, Zero):
        return {"verdict": "zero", "stage": v.stage,
                "certificate": membership_record(v.element, colim.stage_ideal(v.stage),
                                                 v.certificate)}
    return {"verdict": f"nonzero_up_to_{v.bound}"}


def cmd_lc_class(args, argv):
    R = load_ring(args.ring)
    ctx = witt_context(R, args.n)
    colim = ColimContext(ctx, _csv(args.sop))
    cl = colim.cls(args.stage, args.rep)
    row = _zero_record(colim, is_zero_bounded(cl, args.M))
    bounds = {"M": args.M, "n": args.n, "sop": _csv(args.sop)}
    return make_report(argv, R, row.pop("verdict"), bounds, **row), 0


def cmd_lc_torsion(args, argv):
    R = load_ring(args.ring)
    ctx = witt_context(R, args.n)
    colim = ColimContext(ctx, _csv(args.sop))
    cl = colim.cls(args.stage, args.rep)
    I = load_ideal(ctx, args.ideal)
    rep = torsion_probe(cl, I, args.M)
    actions = [dict(_zero_record(colim, v), generator=str(f)) for f, v in rep.verdicts]
    bounds = {"M": args.M, "n": args.n, "sop": _csv(args.sop)}
    verdict = "torsion" if rep.is_torsion else "not_torsion_up_to_bound"
    return make_report(argv, R, verdict, bounds, actions=actions), 0


def cmd_examples(args, argv):
    report = EXAMPLES[args.which](tuple(argv))
    return report, 0 if report["verdict"] == "PASS" else 1


def cmd_verify(args, argv):
    report = load_report(args.file)
    ok, checked = verify_report(report)
    out = {"file": os.path.basename(args.file), "certificates_checked": checked,
           "verdict": "verified" if ok else "rejected"}
    return out, 0 if ok else 1


# -- parser -------------------------------------------------------------------------


def _add_common(p, *, n=True, search=False):
    p.add_argument("--ring", required=True, help="ex1, ex2, ex3, a ring file, or inline text")
    if n:
        p.add_argument("--n", type=int, default=2, help="Witt length")
    if search:
        p.add_argument("--E", type=int, default=None, help="Frobenius depth bound")
        p.add_argument("--cand-deg", type=int, default=4, help="multiplier degree bound D")
        p.add_argument("--lift-deg", type=int, default=4, help="lift component degree bound")
        p.add_argument("--M", type=int, default=8, help="integral-closure power bound")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wittlab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="group", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    ring = sub.add_parser("ring").add_subparsers(dest="action", required=True)
    p = ring.add_parser("check", help="parse a ring and show its Gröbner basis", parents=[common])
    _add_common(p, n=False)
    p.set_defaults(func=cmd_ring_check)

    witt = sub.add_parser("witt").add_subparsers(dest="action", required=True)
    p = witt.add_parser("eval", help="evaluate e.g. '(x; 0)' + '[y]'", parents=[common])
    _add_common(p)
    p.add_argument("expr", nargs="+")
    p.add_argument("--frobenius", type=int, default=0)
    p.add_argument("--verschiebung", action="store_true")
    p.set_defaults(func=cmd_witt_eval)

    ideal = sub.add_parser("ideal").add_subparsers(dest="action", required=True)
    p = ideal.add_parser("member", help="layered membership with certificate", parents=[common])
    _add_common(p)
    p.add_argument("--ideal", required=True)
    p.add_argument("--elem", required=True)
    p.set_defaults(func=cmd_ideal_member)

    tc = sub.add_parser("tc").add_subparsers(dest="action", required=True)
    p = tc.add_parser("certify", parents=[common])
    _add_common(p, search=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--ideal", required=True)
    p.set_defaults(func=cmd_tc_certify)
    p = tc.add_parser("lift-search", parents=[common])
    _add_common(p, search=True)
    p.add_argument("--z", required=True)
    p.add_argument("--ideal", required=True)
    p.set_defaults(func=cmd_tc_lift_search)
    p = tc.add_parser("refute", parents=[common])
    _add_common(p, search=True)
    p.add_argument("--z", required=True)
    p.add_argument("--ideal", required=True)
    p.set_defaults(func=cmd_tc_refute)

    p = sub.add_parser("qtc", help="quasi-tight-closedness evidence for a sop", parents=[common])
    _add_common(p, search=True)
    p.add_argument("--sop", required=True, help="comma-separated parameters")
    p.add_argument("--vmax", type=int, default=2)
    p.add_argument("--extra", default="", help="extra comma-separated candidates")
    p.add_argument("--cand-deg-z", type=int, default=None, help="candidate monomial degree")
    p.set_defaults(func=cmd_qtc)

    p = sub.add_parser("bs", help="integral closure to tight closure pipeline", parents=[common])
    _add_common(p, search=True)
    p.add_argument("--a", required=True)
    p.add_argument("--ideal", required=True)
    p.add_argument("--lambda", dest="lam", type=int, default=1)
    p.set_defaults(func=cmd_bs)

    lc = sub.add_parser("lc").add_subparsers(dest="action", required=True)
    for name, func in (("class", cmd_lc_class), ("torsion", cmd_lc_torsion)):
        p = lc.add_parser(name, parents=[common])
        _add_common(p)
        p.add_argument("--sop", required=True)
        p.add_argument("--stage", type=int, default=1)
        p.add_argument("--rep", required=True, help="Witt vector representative")
        p.add_argument("--M", type=int, default=6, help="stage bound")
        if name == "torsion":
            p.add_argument("--ideal", required=True)
        p.set_defaults(func=func)

    ex = sub.add_parser("examples").add_subparsers(dest="action", required=True)
    p = ex.add_parser("run", parents=[common])
    p.add_argument("which", type=int, choices=sorted(EXAMPLES))
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("verify", help="replay every certificate in a report", parents=[common])
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    # the report echoes the command without the output location
    echo = [a for i, a in enumerate(argv)
            if a != "--out" and (i == 0 or argv[i - 1] != "--out") and not a.startswith("--out=")]
    start = time.perf_counter()
    try:
        thread_count()
        report, status = args.func(args, echo)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = dumps(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    log.info("elapsed %.3f s", time.perf_counter() - start)
    return status


if __name__ == "__main__":
    sys.exit(main())
