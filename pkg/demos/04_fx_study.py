"""Market FX forwards against deposit, OIS-carry and CCS-implied forwards over a
small synthetic quote history, written out as the fx-study CSV.

Run: python3 demos/04_fx_study.py
"""

import tempfile
from pathlib import Path

from xccy import build_curve_set
from xccy.marketdata import save_history, snapshot_from_dict
from xccy.cli import main
from xccy.temporal import add_months


def record(date, eur_ois, usd_ois, basis_bp, gap_bp):
    ladder = lambda v: {"units": "rate_decimal", "quotes": [[t, v] for t in ("1y", "2y", "3y")]}  # noqa: E731
    data = {
        "schema_version": 1, "valuation_date": date,
        "currencies": {
            "EUR": {"ois": ladder(eur_ois), "libor": {"3m": ladder(eur_ois + 0.002)},
                    "deposits": {"units": "rate_decimal", "quotes": [["12m", eur_ois + 0.003]]}},
            "USD": {"ois": ladder(usd_ois), "libor": {"3m": ladder(usd_ois + 0.0025)},
                    "deposits": {"units": "rate_decimal", "quotes": [["12m", usd_ois + 0.004]]}},
        },
        "pair": {"domestic": "EUR", "foreign": "USD", "spot": {"units": "fx_rate", "value": 1.35},
                 "ccs_basis": {"units": "spread_bp", "spread_leg": "EUR",
                               "quotes": [[t, basis_bp] for t in ("1y", "2y", "3y")]}},
    }
    cs = build_curve_set(snapshot_from_dict(data))
    # the market forward sits gap_bp away from what the CCS quotes imply
    fwd = cs.fx_ccs.forward(add_months(cs.valuation_date, 12)) + gap_bp * 1e-4
    data["pair"]["fx_forwards"] = {"units": "fx_rate", "quotes": [["1y", fwd]]}
    return snapshot_from_dict(data)


history = [record("2012-06-01", 0.003, 0.002, -40.0, 0.0),
           record("2012-12-03", 0.002, 0.002, -30.0, 0.0),
           record("2013-06-03", 0.001, 0.0015, -15.0, 0.5)]

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "history.json"
    save_history(history, path)
    main(["fx-study", str(path), "--maturities", "1y"])
