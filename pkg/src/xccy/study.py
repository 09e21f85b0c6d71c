"""Historical comparison of market FX forwards with three implied-forward methods.

For each dated record and maturity the study reports ``(market - implied) * 1e4``
for the deposit, OIS cash-and-carry and CCS-implied forwards. A method whose
inputs are missing from a record yields ``None`` (written as ``NA``).
"""

from __future__ import annotations

import csv
import io
from typing import Iterable, Sequence

from .calibration import build_curve_set
from .errors import XccyError
from .fx import implied_fx_forward_from_deposits
from .marketdata import MarketSnapshot, depo_id, fxfwd_id
from .temporal import add_months, format_tenor, tenor_months

METHODS = ("depo", "ois", "ccs")
MISSING = "NA"
SCALE = 1e4


def _deposit_rate(snap: MarketSnapshot, ccy: str, months: int) -> float | None:
    lad = snap.get(depo_id(ccy))
    if lad is None or months > lad.tenors[-1]:
        return None
    return lad.interpolate(snap.valuation_date, add_months(snap.valuation_date, months))


def implied_forwards(snap: MarketSnapshot, months: int) -> dict[str, float | None]:
    """Implied forward per method at one maturity (``None`` when not computable)."""
    t0 = snap.valuation_date
    T = add_months(t0, months)
    dom, fgn = snap.domestic, snap.foreign
    out: dict[str, float | None] = dict.fromkeys(METHODS)
    r_d, r_f = _deposit_rate(snap, dom, months), _deposit_rate(snap, fgn, months)
    if r_d is not None and r_f is not None:
        out["depo"] = implied_fx_forward_from_deposits(snap.spot, r_d, r_f, t0, T,
                                                       snap.convention(dom).deposit_day_count,
                                                       snap.convention(fgn).deposit_day_count)
    try:
        cs = build_curve_set(snap)
    except XccyError:
        return out
    if dom in cs.ois and fgn in cs.ois:
        try:
            out["ois"] = snap.spot * cs.ois[dom](T) / cs.ois[fgn](T)
        except XccyError:
            pass
    if cs.fx_ccs is not None:
        try:
            out["ccs"] = cs.fx_ccs.forward(T)
        except XccyError:
            pass
    return out


def market_forward(snap: MarketSnapshot, months: int) -> float | None:
    lad = snap.get(fxfwd_id(snap.domestic, snap.foreign))
    if lad is None or months not in lad.tenors:
        return None
    return lad.value_at(months)


def fx_study(history: Iterable[MarketSnapshot], maturities: Sequence[str | int] = ("1y",)) -> list[dict]:
    """One row per record: ``{"date", "<method>_<tenor>": bp or None}``."""
    months = [tenor_months(m) for m in maturities]
    rows = []
    for snap in history:
        if not snap.has_pair:
            raise XccyError(f"history record {snap.valuation_date} has no currency pair")
        row: dict = {"date": snap.valuation_date}
        for m in months:
            mkt = market_forward(snap, m)
            implied = implied_forwards(snap, m)
            for method in METHODS:
                x = implied[method]
                row[f"{method}_{format_tenor(m)}"] = None if mkt is None or x is None else (mkt - x) * SCALE
        rows.append(row)
    return rows


def render_study_csv(rows: list[dict], maturities: Sequence[str | int] = ("1y",)) -> str:
    cols = [f"{method}_{format_tenor(tenor_months(m))}" for m in maturities for method in METHODS]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["date", *cols])
    for row in rows:
        w.writerow([row["date"].isoformat(),
                    *(MISSING if row.get(c) is None else repr(round(row[c], 10)) for c in cols)])
    return buf.getvalue()
