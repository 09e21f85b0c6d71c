"""Price the 10y market CCS and the 10y non-resettable swap, piece by piece.

Run: python3 demos/02_pricing_decomposition.py
"""

import datetime as dt

from xccy import ResettableCcs, build_curve_set, example_snapshot, example_trade, forward_ccs_fair_spread, price
from xccy.pricer import direct_value
from xccy.temporal import add_months
from xccy.valuation import ValuationContext, central

cs = build_curve_set(example_snapshot(), "four-curve")
t0 = cs.valuation_date
N = 1e8

# the market swap at -5.75bp is worth nothing by construction
ccs = example_trade("ccs-10y")
print("10y CCS npv:", price(ValuationContext(cs), ccs).npv)

# the NCS is a CCS plus FX-increment times forward-start USD notes
ncs = example_trade("ncs-10y")
for label, ctx in (("own funding", ValuationContext(cs)),
                   ("EUR funding", ValuationContext(cs, central("EUR"))),
                   ("four-curve", ValuationContext(cs, method="four-curve"))):
    b = price(ctx, ncs)
    fx_terms = sum(v for _, v in b.fx_residual)
    print(f"NCS {label:<12} npv {b.npv:>14,.0f} EUR  (spread flows {sum(r[-1] for r in b.residual):,.0f}, "
          f"FX reset terms {fx_terms:,.0f})")

# forward-start spreads: cash and carry plus the market error, interpolated in start date
for start in (add_months(t0, 12), dt.date(2016, 6, 15)):
    r = forward_ccs_fair_spread(ValuationContext(cs), start, add_months(t0, 120))
    print(f"fair spread {start} -> 10y: {r.market_spread * 1e4:+.3f}bp "
          f"(carry {r.scs_spread * 1e4:+.3f}bp, error {r.error * 1e4:+.3f}bp between {r.lower_date} and {r.upper_date})")

# with one funding currency and CCS-implied forwards the decomposition is the flow sum
ctx = ValuationContext(cs, central("EUR"), fx_source="ccs")
seasoned = ResettableCcs("EUR", "USD", add_months(t0, -3), add_months(t0, 60), -6e-4, 0.0, N,
                         libor_fixings={"EUR": {add_months(t0, -3): 0.0029}, "USD": {add_months(t0, -3): 0.0024}},
                         fx_fixings={add_months(t0, -3): 1.36})
b = price(ctx, seasoned)
print(f"seasoned CCS: decomposition {b.npv:,.4f}, direct {direct_value(ctx, seasoned):,.4f} (hub {b.hub:,.2f})")
