"""Delta ladders for the 10y CCS and NCS under both methods, and FX deltas.

Run: python3 demos/03_risk_tables.py   (a few seconds)
"""

from xccy import build_curve_set, delta_ladder, example_snapshot, example_trade, fx_delta, render_report
from xccy.valuation import ValuationContext, central

cs = build_curve_set(example_snapshot(), "four-curve")

for name in ("ccs-10y", "ncs-10y"):
    trade = example_trade(name)
    for method in ("four-curve", "decomposition"):
        report = delta_ladder(ValuationContext(cs, method=method), trade, with_fx=False)
        print(render_report(report))

# FX deltas of the NCS depend on where the USD leg is funded
ncs = example_trade("ncs-10y")
for label, ctx in (("own", ValuationContext(cs)), ("EUR", ValuationContext(cs, central("EUR")))):
    d_usd, d_eur = fx_delta(ctx, ncs)
    print(f"{label} funding: delta USD {d_usd / 1e3:,.0f}k, delta EUR {d_eur / 1e3:,.0f}k")
