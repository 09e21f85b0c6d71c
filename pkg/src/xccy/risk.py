"""Bump-and-reprice curve deltas with full recalibration, FX deltas and report rendering."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, replace
from decimal import ROUND_HALF_EVEN, Decimal

from .calibration import CurveSet, build_curve_set
from .errors import CalibrationError, ConfigurationError, InputError
from .fx import FxForwardCurve
from .instruments import Instrument
from .marketdata import MarketSnapshot, ccs_id, libor_id, ois_id
from .pricer import npv
from .temporal import format_tenor, tenor_months
from .valuation import ValuationContext

COLUMNS = ("EO", "E3M", "FF", "U3M", "CCB")
REPORT_BUCKETS = ("1y", "5y", "9y", "10y")
BP = 1e-4


def curve_id(snap: MarketSnapshot, curve: str) -> str:
    """Ladder id for a report column name (or a ladder id passed through)."""
    if ":" in curve:
        return curve
    dom, fgn = snap.domestic, snap.foreign
    roles = {"EO": ois_id(dom), "E3M": libor_id(dom), "FF": ois_id(fgn), "U3M": libor_id(fgn),
             "CCB": ccs_id(dom, fgn) if dom else None}
    try:
        key = roles[curve]
    except KeyError:
        raise ConfigurationError(f"unknown curve {curve!r}; use one of {', '.join(COLUMNS)} or a ladder id") from None
    if key is None:
        raise ConfigurationError(f"curve {curve} needs a currency pair")
    return key


@dataclass(frozen=True)
class BumpSpec:
    curve: str  # column name (EO, E3M, FF, U3M, CCB) or ladder id
    tenor: str | None = None  # None bumps every pillar
    size: float = BP

    def __post_init__(self):
        if self.size == 0 or not math.isfinite(self.size):
            raise InputError("bump size must be finite and non-zero")

    def describe(self) -> str:
        where = "parallel" if self.tenor is None else format_tenor(tenor_months(self.tenor))
        return f"{self.curve} {where} {self.size / BP:+g}bp"


def bumped_snapshot(snap: MarketSnapshot, bump: BumpSpec) -> MarketSnapshot:
    key = curve_id(snap, bump.curve)
    if key not in snap.ladders:
        raise InputError(f"bump target {key} not in snapshot")
    return snap.with_ladder(key, snap.ladder(key).bumped(bump.size, bump.tenor))


def _base_snapshot(ctx: ValuationContext) -> MarketSnapshot:
    snap = ctx.curves.snapshot
    if snap is None:
        raise ConfigurationError("curve set carries no source snapshot; build it with build_curve_set")
    return snap


def scenario_context(ctx: ValuationContext, snap: MarketSnapshot) -> ValuationContext:
    """Recalibrate every curve on ``snap`` and rebuild the pricing context.

    Market FX pillars stay at their base values unless the CCS quotes moved, in
    which case they shift by the change in the CCS-implied forwards.
    """
    base = ctx.curves
    cs = build_curve_set(snap, ctx.method, base.cache)
    if base.fx is not None and cs.fx is not None:
        dates, rates = base.fx.pillar_dates, list(base.fx.pillar_rates)
        if base.ccs_quotes != cs.ccs_quotes and base.fx_ccs is not None and cs.fx_ccs is not None:
            rates = [x + cs.fx_ccs.forward(d) - base.fx_ccs.forward(d) for d, x in zip(dates, rates)]
        cs.fx = FxForwardCurve(cs.domestic, cs.foreign, cs.spot, cs.ois[cs.domestic], cs.ois[cs.foreign],
                               dates, rates)
    return replace(ctx, curves=cs)


def curve_delta(ctx: ValuationContext, instrument: Instrument, bump: BumpSpec,
                base_npv: float | None = None) -> float:
    """NPV change (valuation currency) after bumping one quote ladder and recalibrating."""
    snap = _base_snapshot(ctx)
    if base_npv is None:
        base_npv = npv(ctx, instrument)
    try:
        bumped = scenario_context(ctx, bumped_snapshot(snap, bump))
    except CalibrationError as exc:
        raise CalibrationError(f"recalibration failed for bump {bump.describe()}: {exc}") from exc
    return npv(bumped, instrument) - base_npv


def _scaled_curves(cs: CurveSet, factor: float) -> CurveSet:
    """Spot bumped multiplicatively; market and CCS-implied pillars move with it."""
    return replace(cs, spot=cs.spot * factor,
                   fx=None if cs.fx is None else cs.fx.scaled(factor),
                   fx_ccs=None if cs.fx_ccs is None else cs.fx_ccs.scaled(factor),
                   snapshot=None if cs.snapshot is None else cs.snapshot.with_spot(cs.spot * factor))


def fx_delta(ctx: ValuationContext, instrument: Instrument, rel_bump: float = 1e-3) -> tuple[float, float]:
    """``(delta_foreign, delta_domestic)``: dV/d(1/X) in foreign units and dV^f/dX in
    domestic units, by central differences on a multiplicative spot bump.

    Past FX fixings of the instrument stay put; the basis discount curve of the
    four-curve method is held, so its forwards scale with spot as well.
    """
    if not 0 < rel_bump < 0.5:
        raise InputError("relative FX bump must lie in (0, 0.5)")
    cs = ctx.curves
    if ctx.valuation_currency != cs.domestic:
        raise ConfigurationError("FX deltas are reported for domestic-currency valuation")
    x = cs.spot
    up = replace(ctx, curves=_scaled_curves(cs, 1 + rel_bump))
    dn = replace(ctx, curves=_scaled_curves(cs, 1 - rel_bump))
    v_up, v_dn = npv(up, instrument), npv(dn, instrument)
    x_up, x_dn = x * (1 + rel_bump), x * (1 - rel_bump)
    delta_foreign = (v_up - v_dn) / (1 / x_up - 1 / x_dn)
    delta_domestic = (v_up * x_up - v_dn * x_dn) / (x_up - x_dn)
    return delta_foreign, delta_domestic


def fx_identity_gap(delta_foreign: float, delta_domestic: float, value_foreign: float, spot: float) -> float:
    """Relative violation of ``D_dom = (V_f - D_f) / X``."""
    rhs = (value_foreign - delta_foreign) / spot
    scale = max(abs(delta_domestic), abs(delta_foreign) / spot, abs(value_foreign) / spot, 1e-300)
    return abs(delta_domestic - rhs) / scale


@dataclass
class RiskReport:
    method: str
    policy: str
    currency: str
    npv: float
    columns: tuple[str, ...] = COLUMNS
    buckets: tuple[str, ...] = ()
    deltas: dict[str, dict[str, float]] = field(default_factory=dict)  # bucket -> column -> value
    fx_delta_foreign: float | None = None
    fx_delta_domestic: float | None = None
    instrument: str = ""

    def delta(self, bucket: str, column: str) -> float:
        return self.deltas.get(bucket, {}).get(column, 0.0)

    def total(self, column: str) -> float:
        return sum(self.delta(b, column) for b in self.buckets)


def delta_ladder(ctx: ValuationContext, instrument: Instrument, curves=COLUMNS,
                 buckets=REPORT_BUCKETS, size: float = BP, with_fx: bool = True) -> RiskReport:
    """One delta per (bucket, curve); buckets without a pillar on that curve read 0."""
    snap = _base_snapshot(ctx)
    base = npv(ctx, instrument)
    if buckets is None:
        months = sorted({m for c in curves if curve_id(snap, c) in snap.ladders
                         for m in snap.ladder(curve_id(snap, c)).tenors})
        buckets = tuple(format_tenor(m) for m in months)
    buckets = tuple(format_tenor(tenor_months(b)) for b in buckets)
    report = RiskReport(ctx.method, str(ctx.policy), ctx.valuation_currency, base, tuple(curves), buckets,
                        instrument=type(instrument).__name__)
    for b in buckets:
        row = {}
        for c in curves:
            key = curve_id(snap, c)
            lad = snap.get(key)
            if lad is None or tenor_months(b) not in lad.tenors:
                row[c] = 0.0
                continue
            row[c] = curve_delta(ctx, instrument, BumpSpec(c, b, size), base)
        report.deltas[b] = row
    if with_fx and ctx.curves.foreign is not None:
        report.fx_delta_foreign, report.fx_delta_domestic = fx_delta(ctx, instrument)
    return report


def _thousands(x: float) -> int:
    return int(Decimal(repr(x / 1e3)).quantize(Decimal(1), rounding=ROUND_HALF_EVEN))


def report_table(report: RiskReport) -> list[list]:
    """Rows of ``[bucket, *rounded thousands]`` in column order."""
    return [[b, *(_thousands(report.delta(b, c)) for c in report.columns)] for b in report.buckets]


def render_report(report: RiskReport, fmt: str = "text") -> str:
    header = ["maturity", *report.columns]
    rows = report_table(report)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    if fmt == "json":
        payload = {
            "method": report.method, "policy": report.policy, "currency": report.currency,
            "instrument": report.instrument, "npv": report.npv, "units": "thousands",
            "columns": list(report.columns),
            "rows": [dict(zip(header, r)) for r in rows],
            "raw": {b: {c: report.delta(b, c) for c in report.columns} for b in report.buckets},
            "fx_delta_foreign": report.fx_delta_foreign, "fx_delta_domestic": report.fx_delta_domestic,
        }
        return json.dumps(payload, indent=2) + "\n"
    if fmt != "text":
        raise ConfigurationError(f"unknown report format {fmt!r}")
    lines = [f"# {report.instrument or 'instrument'} deltas, thousand {report.currency}, "
             f"method={report.method}, funding={report.policy}",
             "".join(f"{h:>10}" for h in header)]
    lines += ["".join(f"{str(v):>10}" for v in r) for r in rows]
    if report.fx_delta_foreign is not None:
        lines.append(f"# npv {report.npv:.2f}; fx delta foreign {_thousands(report.fx_delta_foreign)}k, "
                     f"domestic {_thousands(report.fx_delta_domestic)}k")
    return "\n".join(lines) + "\n"
