"""Command line: ``xccy {bootstrap,price,risk,fx-study}``.

Exit status is 0 on success, 2 for input errors, 3 for calibration failures
and 4 for pricing failures; the error category is printed on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .calibration import build_curve_set, round_trip_residuals
from .errors import XccyError
from .marketdata import load_history, load_snapshot, load_trade, shipped_path
from .pricer import price
from .risk import BP, COLUMNS, REPORT_BUCKETS, delta_ladder, render_report
from .study import fx_study, render_study_csv
from .valuation import FundingPolicy, ValuationContext


def _snapshot_path(arg: str | None) -> Path:
    return shipped_path("snapshot-2014-01-29.json") if arg in (None, "shipped") else Path(arg)


def _trade_path(arg: str) -> Path:
    if arg in ("ccs-10y", "ncs-10y"):
        return shipped_path(f"trade-{arg}.json")
    return Path(arg)


def _context(args, method: str):
    snap = load_snapshot(_snapshot_path(args.snapshot), strict=args.strict, method=method)
    cs = build_curve_set(snap, method)
    ctx = ValuationContext(cs, FundingPolicy.parse(args.funding), method=method,
                           hub_funding=getattr(args, "hub_funding", None))
    return snap, ctx


def _methods(arg: str) -> list[str]:
    return ["decomposition", "four-curve"] if arg == "both" else [arg]


def cmd_bootstrap(args) -> str:
    snap = load_snapshot(_snapshot_path(args.snapshot), strict=args.strict, method=args.method)
    cs = build_curve_set(snap, args.method)
    curves = {}
    for ccy, c in cs.ois.items():
        curves[f"ois:{ccy}"] = [[d.isoformat(), v] for d, v in zip(c.dates, c.dfs)]
    for (ccy, tenor), c in cs.libor.items():
        curves[f"libor{tenor}m:{ccy}"] = [[d.isoformat(), v] for d, v in zip(c.dates, c.pillar_rates)]
    if cs.fx_ccs is not None:
        curves["fxccs:" + cs.domestic + cs.foreign] = [[d.isoformat(), x] for d, x in
                                                       zip(cs.fx_ccs.pillar_dates, cs.fx_ccs.pillar_rates)]
    if cs.basis is not None:
        curves["basis:" + cs.foreign] = [[d.isoformat(), v] for d, v in zip(cs.basis.dates, cs.basis.dfs)]
    residuals = round_trip_residuals(snap, cs)
    if args.format == "json":
        return json.dumps({"valuation_date": cs.valuation_date.isoformat(), "method": args.method,
                           "curves": curves, "residuals": residuals}, indent=2) + "\n"
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["section", "curve", "key", "value"])
        for name, rows in curves.items():
            for k, v in rows:
                w.writerow(["pillar", name, k, repr(v)])
        for name, rows in residuals.items():
            for k, v in rows:
                w.writerow(["residual", name, k, repr(v)])
        return buf.getvalue()
    lines = [f"# calibrated pillars, {cs.valuation_date} ({args.method})"]
    for name, rows in curves.items():
        lines.append(f"[{name}]")
        lines += [f"  {k}  {v:.15g}" for k, v in rows]
    lines.append("# round-trip NPV per unit notional")
    for name, rows in residuals.items():
        worst = max((abs(v) for _, v in rows), default=0.0)
        lines.append(f"  {name:<18} max |npv| {worst:.3e}")
    return "\n".join(lines) + "\n"


def cmd_price(args) -> str:
    out = []
    for method in _methods(args.method):
        snap, ctx = _context(args, method)
        trade = load_trade(_trade_path(args.trade), snap)
        b = price(ctx, trade)
        if args.format == "json":
            out.append(b.as_dict())
            continue
        if args.format == "csv":
            rows = [["method", method], ["policy", b.policy], ["npv", repr(b.npv)],
                    ["forward_ccs", repr(b.forward_ccs)], ["hub", repr(b.hub)],
                    ["fixing_correction", repr(b.fixing_correction)],
                    ["residual", repr(sum(r[-1] for r in b.residual))],
                    ["fx_residual", repr(sum(r[-1] for r in b.fx_residual))], ["direct", repr(b.direct)]]
            buf = io.StringIO()
            csv.writer(buf, lineterminator="\n").writerows([["field", "value"], *rows])
            out.append(buf.getvalue())
            continue
        s = "" if b.market_spread is None else f", market spread {b.market_spread / BP:.4f}bp"
        out.append(
            f"# {type(trade).__name__} {trade.start} -> {trade.end}, method={method}, funding={b.policy}{s}\n"
            f"NPV {b.npv:,.2f} {b.currency}\n"
            f"  forward CCS        {b.forward_ccs:,.2f}\n"
            f"  hub period         {b.hub:,.2f}\n"
            f"  fixing correction  {b.fixing_correction:,.2f}\n"
            f"  spread flows       {sum(r[-1] for r in b.residual):,.2f}\n"
            f"  FX reset terms     {sum(r[-1] for r in b.fx_residual):,.2f}\n"
            f"  direct             {b.direct:,.2f}\n")
    if args.format == "json":
        return json.dumps(out if len(out) > 1 else out[0], indent=2) + "\n"
    return "\n".join(out)


def cmd_risk(args) -> str:
    out = []
    buckets = None if args.buckets == "all" else tuple(args.buckets.split(","))
    for method in _methods(args.method):
        snap, ctx = _context(args, method)
        trade = load_trade(_trade_path(args.trade), snap)
        report = delta_ladder(ctx, trade, COLUMNS, buckets, args.bump_bp * BP, with_fx=not args.no_fx)
        out.append(render_report(report, args.format))
    return "\n".join(out) if args.format != "csv" else "".join(out)


def cmd_fx_study(args) -> str:
    history = load_history(args.history)
    maturities = args.maturities.split(",")
    return render_study_csv(fx_study(history, maturities), maturities)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="xccy", description="Cross-currency curves, CCS/NCS pricing and risk.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, trade=False):
        sp.add_argument("--snapshot", help="snapshot JSON (default: shipped 2014-01-29 data)")
        sp.add_argument("--strict", action="store_true", help="fail early on missing ladders")
        sp.add_argument("--format", choices=("text", "csv", "json"), default="text")
        sp.add_argument("--output", "-o", help="write the report here instead of stdout")
        if trade:
            sp.add_argument("--trade", required=True, help="trade JSON, or ccs-10y / ncs-10y")
            sp.add_argument("--funding", default="own", help="own or central:CCY")
            sp.add_argument("--method", choices=("decomposition", "four-curve", "both"), default="decomposition")
            sp.add_argument("--hub-funding", dest="hub_funding", default=None,
                            help="common funding currency for the started period")

    b = sub.add_parser("bootstrap", help="calibrate curves and dump pillars and round-trip residuals")
    common(b)
    b.add_argument("--method", choices=("decomposition", "four-curve"), default="four-curve")
    b.set_defaults(func=cmd_bootstrap)

    pr = sub.add_parser("price", help="price a trade with its decomposition breakdown")
    common(pr, trade=True)
    pr.set_defaults(func=cmd_price)

    r = sub.add_parser("risk", help="curve delta ladder and FX deltas")
    common(r, trade=True)
    r.add_argument("--bump-bp", dest="bump_bp", type=float, default=1.0)
    r.add_argument("--buckets", default=",".join(REPORT_BUCKETS), help="comma list or 'all'")
    r.add_argument("--no-fx", dest="no_fx", action="store_true", help="skip FX deltas")
    r.set_defaults(func=cmd_risk)

    s = sub.add_parser("fx-study", help="market minus implied FX forwards over a quote history")
    s.add_argument("history", help="history JSON")
    s.add_argument("--maturities", default="1y")
    s.add_argument("--output", "-o")
    s.set_defaults(func=cmd_fx_study)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.func(args)
    except XccyError as exc:
        print(f"error [{exc.category}]: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error [input]: {exc}", file=sys.stderr)
        return 2
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
