"""Calibrate the shipped 2014-01-29 EUR/USD snapshot and look at the FX forwards.

Run: python3 demos/01_curves_and_fx.py
"""

from xccy import build_curve_set, example_snapshot, round_trip_residuals
from xccy.temporal import add_months

snap = example_snapshot()
cs = build_curve_set(snap, "four-curve")
t0 = cs.valuation_date

print(f"valuation date {t0}, spot {cs.spot} USD per EUR")
print("rate ladders are reconstructed:", snap.reconstructed)

# every calibration instrument should reprice to (numerically) zero
for name, rows in round_trip_residuals(snap, cs).items():
    print(f"  {name:<14} worst |npv| per unit notional {max(abs(v) for _, v in rows):.1e}")

# market forwards, the cash-and-carry value and the CCS-implied value
print("\n tenor   market     OIS carry   CCS-implied   basis-curve")
four = cs.fx_four_curve()
for years in (1, 2, 3, 5, 7, 10):
    T = add_months(t0, 12 * years)
    print(f"  {years:>2}y  {cs.fx.forward(T):.4f}    {cs.fx.scs(T):.4f}      {cs.fx_ccs.forward(T):.4f}"
          f"        {four.forward(T):.4f}")

# between pillars the gap to cash and carry is a straight line in time
T = add_months(t0, 78)
print(f"\n6.5y forward {cs.fx.forward(T):.6f} = carry {cs.fx.scs(T):.6f} + error {cs.fx.error(T):+.6f}")
