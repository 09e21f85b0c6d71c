"""Rebuild a full EUR/USD market snapshot for 29 January 2014.

Only the FX spot, the FX forward outrights and the EUR-leg CCS basis of that
date are known; rate ladders are filled with plausible levels and the USD
3M swap curve is solved pillar by pillar so that the CCS-implied FX forwards
reproduce the quoted outrights. Every ladder written here is flagged
``reconstructed``.

Run ``python3 -m xccy.reconstruct`` to regenerate the shipped data files.
"""

from __future__ import annotations

import json
from pathlib import Path

from .calibration import build_curve_set
from .marketdata import snapshot_from_dict
from .solver import solve
from .temporal import add_months, parse_date, tenor_months

VALUATION_DATE = "2014-01-29"
SPOT = 1.3533
FX_FORWARDS = [("1y", 1.3543), ("2y", 1.3610), ("3y", 1.3741), ("4y", 1.3928), ("5y", 1.4143),
               ("7y", 1.4589), ("10y", 1.5145)]
CCS_BASIS_BP = [("1y", -4.0), ("2y", -5.5), ("3y", -6.25), ("4y", -7.0), ("5y", -7.0), ("7y", -6.75),
                ("10y", -5.75), ("15y", -4.75), ("20y", -4.5)]
TRADE_SPREAD_BP = -5.75
NOTIONAL = 100e6

SWAP_TENORS = [f"{y}y" for y in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 20)]
EUR_OIS = [0.0018, 0.0026, 0.0038, 0.0054, 0.0072, 0.0089, 0.0105, 0.0120, 0.0134, 0.0147, 0.0170,
           0.0193, 0.0210]
# long-end USD 3M levels above the last FX pillar, as increments over 10y
USD_LONG_INCREMENTS = {"12y": 0.0022, "15y": 0.0045, "20y": 0.0068}
DEPOSITS = {
    "EUR": [("1m", 0.0022), ("3m", 0.0029), ("6m", 0.0039), ("12m", 0.0056)],
    "USD": [("1m", 0.0016), ("3m", 0.0024), ("6m", 0.0034), ("12m", 0.0058)],
}
# Libor-OIS par spreads chosen so the NCS FX deltas land near the reported sizes
EUR_LIBOR_OIS = 0.0021
USD_LIBOR_OIS = 0.0028


def _ladder(quotes, units="rate_decimal", **extra):
    return {"units": units, "reconstructed": True, "quotes": [[t, v] for t, v in quotes], **extra}


def _snapshot_dict(usd_3m: list[float], eur_spread: float, usd_spread: float, tenors=SWAP_TENORS,
                   fx_forwards=FX_FORWARDS, ccs=CCS_BASIS_BP) -> dict:
    n = len(usd_3m)
    tenors = tenors[:n]
    eur_ois = EUR_OIS[:n]
    eur_3m = [r + eur_spread for r in eur_ois]
    usd_ois = [r - usd_spread for r in usd_3m]
    last = tenor_months(tenors[-1])
    return {
        "schema_version": 1,
        "valuation_date": VALUATION_DATE,
        "reconstructed": True,
        "description": "EUR/USD 2014-01-29: quoted FX spot, outrights and CCS basis; rate ladders rebuilt",
        "currencies": {
            "EUR": {"ois": _ladder(zip(tenors, eur_ois), label="EONIA"),
                    "libor": {"3m": _ladder(zip(tenors, eur_3m), label="EURIBOR 3M")},
                    "deposits": _ladder(DEPOSITS["EUR"])},
            "USD": {"ois": _ladder(zip(tenors, usd_ois), label="Fed Funds"),
                    "libor": {"3m": _ladder(zip(tenors, usd_3m), label="USD LIBOR 3M")},
                    "deposits": _ladder(DEPOSITS["USD"])},
        },
        "pair": {
            "domestic": "EUR", "foreign": "USD",
            "spot": {"units": "fx_rate", "value": SPOT},
            "fx_forwards": {"units": "fx_rate", "label": "EURUSD outright",
                            "quotes": [[t, v] for t, v in fx_forwards if tenor_months(t) <= last]},
            "ccs_basis": {"units": "spread_bp", "label": "EURUSD 3M basis", "spread_leg": "EUR",
                          "quotes": [[t, v] for t, v in ccs if tenor_months(t) <= last]},
        },
    }


def fit_usd_3m(eur_spread: float = EUR_LIBOR_OIS, usd_spread: float = USD_LIBOR_OIS) -> list[float]:
    """USD 3M par rates at every swap tenor, matching the CCS-implied FX to the outrights."""
    t0 = parse_date(VALUATION_DATE)
    pillars = dict(FX_FORWARDS)
    months = [tenor_months(t) for t in SWAP_TENORS]
    usd: list[float] = []
    last_fit = 0  # index count of solved tenors
    for i, tenor in enumerate(SWAP_TENORS):
        if tenor not in pillars:
            continue
        target = pillars[tenor]
        prev_m = months[last_fit - 1] if last_fit else 0
        prev_r = usd[-1] if usd else None

        def rates(x, i=i, prev_m=prev_m, prev_r=prev_r):
            out = list(usd)
            for j in range(last_fit, i + 1):
                if prev_r is None:
                    out.append(x)
                else:
                    w = (months[j] - prev_m) / (months[i] - prev_m)
                    out.append((1 - w) * prev_r + w * x)
            return out

        def f(x, i=i):
            snap = snapshot_from_dict(_snapshot_dict(rates(x), eur_spread, usd_spread))
            cs = build_curve_set(snap)
            return cs.fx_ccs.forward(add_months(t0, months[i])) - target

        guess = (usd[-1] if usd else EUR_OIS[0] + 0.002) + 0.002
        x = solve(f, guess, 0.0, 0.06, ftol=1e-14, label=f"USD 3M {tenor}")
        usd = rates(x)
        last_fit = i + 1
    top = usd[-1]
    usd += [top + USD_LONG_INCREMENTS[t] for t in SWAP_TENORS[last_fit:]]
    return usd


def reconstructed_snapshot_dict(eur_spread: float = EUR_LIBOR_OIS, usd_spread: float = USD_LIBOR_OIS) -> dict:
    usd = [round(r, 12) for r in fit_usd_3m(eur_spread, usd_spread)]
    return _snapshot_dict(usd, eur_spread, usd_spread)


def trade_dict(kind: str, years: int = 10) -> dict:
    start = parse_date(VALUATION_DATE)
    end = add_months(start, 12 * years)
    return {
        "schema_version": 1,
        "kind": kind,
        "start": start.isoformat(),
        "end": end.isoformat(),
        "notional": NOTIONAL,
        "legs": {
            "domestic": {"currency": "EUR", "spread_bp": TRADE_SPREAD_BP, "freq_months": 3, "day_count": "ACT/360"},
            "foreign": {"currency": "USD", "spread_bp": 0.0, "freq_months": 3, "day_count": "ACT/360"},
        },
        "fixings": {"fx": {start.isoformat(): SPOT}},
    }


def write_data(directory: Path | None = None) -> list[Path]:
    directory = directory or Path(__file__).with_name("data")
    directory.mkdir(parents=True, exist_ok=True)
    files = {
        "snapshot-2014-01-29.json": reconstructed_snapshot_dict(),
        "trade-ccs-10y.json": trade_dict("ccs"),
        "trade-ncs-10y.json": trade_dict("ncs"),
    }
    out = []
    for name, payload in files.items():
        path = directory / name
        path.write_text(json.dumps(payload, indent=2) + "\n")
        out.append(path)
    return out


if __name__ == "__main__":
    for p in write_data():
        print(p)
