"""Sequential bootstraps: OIS discount, Libor projection, CCS-implied FX, basis discount.

Dependency order is OIS -> Libor -> (FX forwards | basis discount curve). Every
bootstrap solves one pillar at a time, so moving a quote never changes curve
values before its maturity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping

from .curves import DiscountCurve, ForwardRateCurve, QuoteLadder
from .errors import CalibrationError, ConventionError, InputError
from .fx import FxForwardCurve
from .marketdata import (MarketSnapshot, SwapConventions, ccs_id, fxfwd_id, libor_id, ois_id,
                         tenor_basis_id)
from .solver import solve
from .temporal import Date, Schedule, add_months, format_tenor, generate_schedule, time_between, year_fraction


def _annuity(curve: DiscountCurve, sched: Schedule) -> float:
    return sum(tau * curve(b) for _, b, tau in sched.periods())


def ois_par_residual(curve: DiscountCurve, rate: float, end: Date, conv: SwapConventions) -> float:
    """Fixed-minus-float NPV per unit notional of a spot OIS swap."""
    sched = generate_schedule(curve.valuation_date, end, conv.fixed_freq_months, conv.fixed_day_count)
    return rate * _annuity(curve, sched) - (1.0 - curve(end))


def bootstrap_ois(quotes: QuoteLadder, valuation_date: Date, conv: SwapConventions = SwapConventions(),
                  name: str | None = None) -> DiscountCurve:
    ccy = quotes.currency
    dates: list[Date] = []
    dfs: list[float] = []
    for months, rate in quotes.items():
        end = add_months(valuation_date, months)

        def f(x, end=end, rate=rate):
            trial = DiscountCurve(ccy, valuation_date, dates + [end], dfs + [x], name)
            return ois_par_residual(trial, rate, end, conv)

        guess = math.exp(-rate * time_between(valuation_date, end))
        x = solve(f, guess, 0.05, 1.5, label=f"{ccy} OIS {format_tenor(months)}", floor=0.0)
        if not x > 0:
            raise CalibrationError(f"negative implied discount factor at {ccy} OIS {format_tenor(months)}")
        dates.append(end)
        dfs.append(x)
    return DiscountCurve(ccy, valuation_date, dates, dfs, name or f"{ccy} OIS")


def par_swap_residual(proj: ForwardRateCurve, disc: DiscountCurve, rate: float, end: Date,
                      conv: SwapConventions) -> float:
    t0 = disc.valuation_date
    fixed = generate_schedule(t0, end, conv.fixed_freq_months, conv.fixed_day_count)
    flt = generate_schedule(t0, end, proj.tenor_months, conv.float_day_count)
    float_leg = sum(proj.forward(a, b, conv.float_day_count) * tau * disc(b) for a, b, tau in flt.periods())
    return rate * _annuity(disc, fixed) - float_leg


def tenor_basis_residual(proj: ForwardRateCurve, base: ForwardRateCurve, disc: DiscountCurve,
                         spread: float, end: Date, conv: SwapConventions) -> float:
    """Long-tenor leg minus compounded short-tenor leg plus spread.

    The short leg compounds flat (no spread in the compounding) and adds the
    spread once per long period.
    """
    t0 = disc.valuation_date
    long_sched = generate_schedule(t0, end, proj.tenor_months, conv.float_day_count)
    total = 0.0
    for a, b, tau in long_sched.periods():
        growth = 1.0
        for c, d, tau_s in generate_schedule(a, b, base.tenor_months, conv.float_day_count).periods():
            growth *= 1.0 + base.forward(c, d, conv.float_day_count) * tau_s
        short = growth - 1.0 + spread * tau
        total += (proj.forward(a, b, conv.float_day_count) * tau - short) * disc(b)
    return total


def bootstrap_forward_libor(par_quotes: QuoteLadder | None, disc: DiscountCurve,
                            conv: SwapConventions = SwapConventions(), tenor_months: int | None = None,
                            tenor_basis: QuoteLadder | None = None, base: ForwardRateCurve | None = None,
                            name: str | None = None) -> ForwardRateCurve:
    """Projection curve from par swaps, or from tenor-basis swaps over ``base``."""
    if (par_quotes is None) == (tenor_basis is None):
        raise InputError("give exactly one of par_quotes or tenor_basis")
    if tenor_basis is not None and base is None:
        raise ConventionError("tenor-basis bootstrap needs the shorter-tenor projection curve")
    ladder = par_quotes if par_quotes is not None else tenor_basis
    tenor = tenor_months or conv.float_freq_months
    t0 = disc.valuation_date
    ccy = ladder.currency or disc.currency
    dates: list[Date] = []
    pdfs: list[float] = []
    for months, quote in ladder.items():
        end = add_months(t0, months)

        def f(x, end=end, quote=quote):
            trial = ForwardRateCurve(ccy, tenor, t0, dates + [end], pdfs + [x], conv.float_day_count, name)
            if tenor_basis is None:
                return par_swap_residual(trial, disc, quote, end, conv)
            return tenor_basis_residual(trial, base, disc, quote, end, conv)

        guess = disc(end) if tenor_basis is None else base.projection_factor(end)
        x = solve(f, guess, 0.05, 1.5, label=f"{ccy} {format_tenor(tenor)} {format_tenor(months)}", floor=0.0)
        dates.append(end)
        pdfs.append(x)
    return ForwardRateCurve(ccy, tenor, t0, dates, pdfs, conv.float_day_count, name)


@dataclass(frozen=True)
class _CcsLegData:
    """Rate-curve inputs of one spot-starting market CCS, independent of FX."""

    points: tuple[Date, ...]
    df_d: tuple[float, ...]
    dom_growth: tuple[float, ...]  # 1 + (L_d + s_d) tau_d per period
    fgn_growth: tuple[float, ...]  # 1 + (L_f + s_f) tau_f per period


def _ccs_leg_data(end: Date, curves: "CurveSet", spread: float, spread_on_domestic: bool) -> _CcsLegData:
    dom, fgn = curves.domestic, curves.foreign
    cd, cf = curves.conventions[dom], curves.conventions[fgn]
    t0 = curves.valuation_date
    sched = generate_schedule(t0, end, cd.float_freq_months, cd.float_day_count)
    if cf.float_freq_months != cd.float_freq_months:
        raise ConventionError("market CCS legs with different frequencies need synthetic tenor-basis quotes")
    disc_d = curves.ois[dom]
    proj_d = curves.projection(dom, cd.float_freq_months)
    proj_f = curves.projection(fgn, cf.float_freq_months)
    s_d, s_f = (spread, 0.0) if spread_on_domestic else (0.0, spread)
    points = sched.all_dates
    dom_growth, fgn_growth = [], []
    for a, b, tau_d in sched.periods():
        tau_f = year_fraction(a, b, cf.float_day_count)
        dom_growth.append(1.0 + (proj_d.forward(a, b, cd.float_day_count) + s_d) * tau_d)
        fgn_growth.append(1.0 + (proj_f.forward(a, b, cf.float_day_count) + s_f) * tau_f)
    return _CcsLegData(points, tuple(disc_d(d) for d in points), tuple(dom_growth), tuple(fgn_growth))


def market_ccs_npv(data: _CcsLegData, fx: Callable[[Date], float]) -> float:
    """NPV per unit domestic notional, foreign flows converted at ``fx`` and
    discounted on the domestic OIS curve (receive-domestic-notional orientation)."""
    x = [fx(d) for d in data.points]
    total = 0.0
    for i in range(len(data.points) - 1):
        dom = data.df_d[i] - data.dom_growth[i] * data.df_d[i + 1]
        fgn = -data.df_d[i] + data.fgn_growth[i] * data.df_d[i + 1] * x[i] / x[i + 1]
        total += dom + fgn
    return total


def bootstrap_fx_forwards_from_ccs(ccs_quotes: QuoteLadder, curves: "CurveSet") -> FxForwardCurve:
    """FX forward pillars that reprice each spot-starting market CCS to zero.

    Between pillars the curve is the OIS cash-and-carry forward plus a
    straight-line error, the same interpolant used for market forwards.
    """
    dom, fgn = curves.domestic, curves.foreign
    on_dom = curves.spread_leg in (None, dom)
    base = FxForwardCurve(dom, fgn, curves.spot, curves.ois[dom], curves.ois[fgn])
    dates: list[Date] = []
    rates: list[float] = []
    for months, spread in ccs_quotes.items():
        end = add_months(curves.valuation_date, months)
        data = _ccs_leg_data(end, curves, spread, on_dom)

        def f(x, end=end, data=data):
            trial = base.with_pillars(dates + [end], rates + [x])
            return market_ccs_npv(data, trial.forward)

        scs = base.scs(end)
        if rates:
            prev_err = rates[-1] - base.scs(dates[-1])
            guess = scs + prev_err
        else:
            guess = scs
        x = solve(f, guess, 0.5 * scs, 2.0 * scs, label=f"CCS {format_tenor(months)}", floor=0.0)
        dates.append(end)
        rates.append(x)
    return base.with_pillars(dates, rates)


def basis_fx_curve(curves: "CurveSet", basis: DiscountCurve) -> FxForwardCurve:
    return FxForwardCurve(curves.domestic, curves.foreign, curves.spot, curves.ois[curves.domestic], basis)


def recalibrate_basis_discount_curve(ccs_quotes: QuoteLadder, curves: "CurveSet") -> DiscountCurve:
    """Foreign discount curve that reprices market CCS with every flow converted at spot."""
    dom, fgn = curves.domestic, curves.foreign
    on_dom = curves.spread_leg in (None, dom)
    t0 = curves.valuation_date
    name = f"{fgn} basis discount"
    dates: list[Date] = []
    dfs: list[float] = []
    ois_f = curves.ois[fgn]
    for months, spread in ccs_quotes.items():
        end = add_months(t0, months)
        data = _ccs_leg_data(end, curves, spread, on_dom)

        def f(x, end=end, data=data):
            trial = DiscountCurve(fgn, t0, dates + [end], dfs + [x], name)
            return market_ccs_npv(data, basis_fx_curve(curves, trial).forward)

        x = solve(f, ois_f(end) if end <= ois_f.last_date else dfs[-1], 0.05, 1.5,
                  label=f"basis {format_tenor(months)}", floor=0.0)
        dates.append(end)
        dfs.append(x)
    return DiscountCurve(fgn, t0, dates, dfs, name)


@dataclass
class CurveSet:
    """Calibrated curves sharing one valuation date.

    ``fx`` carries the market FX forward pillars (decomposition method),
    ``fx_ccs`` the CCS-implied pillars and ``basis`` the recalibrated foreign
    discount curve of the four-curve benchmark.
    """

    valuation_date: Date
    ois: dict[str, DiscountCurve]
    libor: dict[tuple[str, int], ForwardRateCurve]
    conventions: Mapping[str, SwapConventions]
    domestic: str | None = None
    foreign: str | None = None
    spot: float | None = None
    spread_leg: str | None = None
    fx: FxForwardCurve | None = None
    fx_ccs: FxForwardCurve | None = None
    basis: DiscountCurve | None = None
    ccs_quotes: QuoteLadder | None = None
    labels: dict[str, str] = field(default_factory=dict)
    snapshot: MarketSnapshot | None = field(default=None, repr=False)
    cache: dict = field(default_factory=dict, repr=False)

    def projection(self, ccy: str, tenor: int = 3) -> ForwardRateCurve:
        try:
            return self.libor[(ccy, tenor)]
        except KeyError:
            raise InputError(f"no {ccy} {tenor}m projection curve calibrated") from None

    def fx_four_curve(self) -> FxForwardCurve:
        if self.basis is None:
            raise InputError("four-curve method needs the recalibrated basis discount curve")
        return basis_fx_curve(self, self.basis)


def build_curve_set(snap: MarketSnapshot, method: str = "decomposition",
                    cache: dict | None = None) -> CurveSet:
    """Calibrate every curve the snapshot supports.

    ``cache`` memoizes curves by their input ladders so bump-and-reprice only
    recalibrates what a bump actually touched.
    """
    cache = {} if cache is None else cache
    t0 = snap.valuation_date

    def memo(key, fn):
        if key not in cache:
            cache[key] = fn()
        return cache[key]

    ois, libor, labels = {}, {}, {}
    conventions = {ccy: snap.convention(ccy) for ccy in snap.currencies}
    for ccy in snap.currencies:
        conv = conventions[ccy]
        lad = snap.get(ois_id(ccy))
        if lad is None:
            continue
        ois[ccy] = memo(("ois", t0, lad), lambda: bootstrap_ois(lad, t0, conv, f"{ccy} OIS"))
        labels[ois_id(ccy)] = lad.label or ois_id(ccy)
        for tenor in snap.libor_tenors(ccy):
            plad = snap.ladder(libor_id(ccy, tenor))
            libor[(ccy, tenor)] = memo(("libor", t0, lad, plad, tenor),
                                       lambda: bootstrap_forward_libor(plad, ois[ccy], conv, tenor))
            labels[libor_id(ccy, tenor)] = plad.label or libor_id(ccy, tenor)
        for key, blad in snap.ladders.items():
            if key.startswith("tenorbasis") and key.endswith(f":{ccy}"):
                tenor = int(key[len("tenorbasis"):-len(f"m:{ccy}")])
                base_tenor = int(str(blad.meta.get("base_tenor", "3m")).rstrip("mM"))
                base_key = (ccy, base_tenor)
                if base_key not in libor or (ccy, tenor) in libor:
                    continue
                libor[(ccy, tenor)] = memo(
                    ("tb", t0, lad, snap.ladder(libor_id(ccy, base_tenor)), blad),
                    lambda: bootstrap_forward_libor(None, ois[ccy], conv, tenor, blad, libor[base_key]))

    cs = CurveSet(t0, ois, libor, conventions, labels=labels, snapshot=snap, cache=cache)
    if not snap.has_pair:
        return cs
    dom, fgn = snap.domestic, snap.foreign
    cs.domestic, cs.foreign, cs.spot, cs.spread_leg = dom, fgn, snap.spot, snap.spread_leg
    if dom not in ois or fgn not in ois:
        return cs
    fxlad = snap.get(fxfwd_id(dom, fgn))
    if fxlad is not None:
        cs.fx = FxForwardCurve(dom, fgn, snap.spot, ois[dom], ois[fgn], fxlad.maturity_dates(t0), fxlad.values)
    ccs = snap.get(ccs_id(dom, fgn))
    cs.ccs_quotes = ccs
    if ccs is not None:
        labels[ccs_id(dom, fgn)] = ccs.label or ccs_id(dom, fgn)
        try:
            cs.projection(dom), cs.projection(fgn)
        except InputError:
            return cs
        rate_key = tuple(snap.get(k) for k in (ois_id(dom), libor_id(dom), ois_id(fgn), libor_id(fgn)))
        cs.fx_ccs = memo(("fxccs", t0, snap.spot, snap.spread_leg, rate_key, ccs),
                         lambda: bootstrap_fx_forwards_from_ccs(ccs, cs))
        if method == "four-curve":
            cs.basis = memo(("basis", t0, snap.spread_leg, rate_key, ccs),
                            lambda: recalibrate_basis_discount_curve(ccs, cs))
    return cs


def round_trip_residuals(snap: MarketSnapshot, cs: CurveSet) -> dict[str, list[tuple[str, float]]]:
    """NPV per unit notional of every calibration instrument under ``cs``."""
    out: dict[str, list[tuple[str, float]]] = {}
    t0 = snap.valuation_date
    for ccy, disc in cs.ois.items():
        conv = cs.conventions[ccy]
        lad = snap.ladder(ois_id(ccy))
        out[ois_id(ccy)] = [(format_tenor(m), ois_par_residual(disc, r, add_months(t0, m), conv))
                            for m, r in lad.items()]
        for tenor in snap.libor_tenors(ccy):
            plad = snap.ladder(libor_id(ccy, tenor))
            proj = cs.libor[(ccy, tenor)]
            out[libor_id(ccy, tenor)] = [(format_tenor(m), par_swap_residual(proj, disc, r, add_months(t0, m), conv))
                                         for m, r in plad.items()]
        for (c, tenor), proj in cs.libor.items():
            key = tenor_basis_id(c, tenor)
            if c == ccy and key in snap.ladders:
                blad = snap.ladder(key)
                base_tenor = int(str(blad.meta.get("base_tenor", "3m")).rstrip("mM"))
                out[key] = [(format_tenor(m), tenor_basis_residual(proj, cs.libor[(c, base_tenor)], disc, s,
                                                                   add_months(t0, m), conv))
                            for m, s in blad.items()]
    if cs.ccs_quotes is not None and cs.fx_ccs is not None:
        on_dom = cs.spread_leg in (None, cs.domestic)
        rows, brows = [], []
        for m, s in cs.ccs_quotes.items():
            data = _ccs_leg_data(add_months(t0, m), cs, s, on_dom)
            rows.append((format_tenor(m), market_ccs_npv(data, cs.fx_ccs.forward)))
            if cs.basis is not None:
                brows.append((format_tenor(m), market_ccs_npv(data, cs.fx_four_curve().forward)))
        out["fxccs:" + cs.domestic + cs.foreign] = rows
        if brows:
            out["basis:" + cs.foreign] = brows
    return out


def zero_basis_snapshot(snap: MarketSnapshot) -> MarketSnapshot:
    """Same date and OIS quotes with every basis removed.

    CCS spreads are zeroed, each Libor par ladder is replaced by the OIS quotes
    of its currency and the market FX forwards are set to the OIS
    cash-and-carry values, so the single-currency setting holds exactly.
    """
    out = snap
    for ccy in snap.currencies:
        ois = snap.get(ois_id(ccy))
        if ois is None:
            continue
        for tenor in snap.libor_tenors(ccy):
            key = libor_id(ccy, tenor)
            out = out.with_ladder(key, replace(ois, kind="par_swap", meta=dict(snap.ladder(key).meta)))
    if not snap.has_pair:
        return out
    dom, fgn = snap.domestic, snap.foreign
    ccs = snap.get(ccs_id(dom, fgn))
    if ccs is not None:
        out = out.with_ladder(ccs_id(dom, fgn), ccs.with_values([0.0] * len(ccs)))
    fx = snap.get(fxfwd_id(dom, fgn)) or (None if ccs is None else replace(ccs, kind="fx_forward",
                                                                           meta={"units": "fx_rate"}))
    if fx is not None:
        t0 = snap.valuation_date
        d = bootstrap_ois(out.ladder(ois_id(dom)), t0, out.convention(dom))
        f = bootstrap_ois(out.ladder(ois_id(fgn)), t0, out.convention(fgn))
        base = FxForwardCurve(dom, fgn, snap.spot, d, f)
        out = out.with_ladder(fxfwd_id(dom, fgn), fx.with_values([base.scs(T) for T in fx.maturity_dates(t0)]))
    return out
