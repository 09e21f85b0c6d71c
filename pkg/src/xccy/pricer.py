"""Forward-start CCS spreads and decomposition pricing of resettable and
non-resettable cross-currency swaps.

A seasoned or customised resettable CCS is split into a forward-start market
CCS struck at its fair spread (worth zero), the cash flows of the period that
has already started, and fixed spread flows. A non-resettable CCS adds FX-reset
correction terms, each an FX increment times a foreign FRN.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import DiscountCurve, QuoteLadder
from .errors import ConfigurationError, ConventionError, FixingDataError, OutOfRangeError, PricingError
from .instruments import (CashFlow, FloatingRateNote, Instrument, NonResettableCcs, ResettableCcs,
                          decompose_ncs_to_ccs_plus_frns, expand_cash_flows)
from .temporal import Date, Schedule, generate_schedule, period_index_at_or_beyond, time_between, year_fraction
from .valuation import ValuationContext, central, value, value_flow


@dataclass(frozen=True)
class ForwardCcsSpreadResult:
    scs_spread: float
    error_lower: float
    error_upper: float
    error: float
    market_spread: float
    lower_date: Date
    upper_date: Date
    maturity: Date  # market-grid maturity shared by both bracket swaps


@dataclass(frozen=True)
class PricingBreakdown:
    """NPV split into decomposition terms, all in ``currency``.

    ``residual`` holds ``(pay_date, currency, value)`` for each fixed spread
    flow, ``fx_residual`` holds ``(fx_date, value)`` for each FX-increment FRN
    of a non-resettable swap. ``direct`` carries full-flow valuation when no
    decomposition applies (four-curve method, plain FRNs).
    """

    npv: float
    currency: str
    policy: str
    method: str
    forward_ccs: float = 0.0
    hub: float = 0.0
    fixing_correction: float = 0.0
    residual: tuple = ()
    fx_residual: tuple = ()
    direct: float = 0.0
    market_spread: float | None = None
    anchor: Date | None = None

    def component_sum(self) -> float:
        return _total(self.forward_ccs, self.hub, self.fixing_correction, self.residual,
                      self.fx_residual, self.direct)

    def as_dict(self) -> dict:
        return {
            "npv": self.npv, "currency": self.currency, "policy": self.policy, "method": self.method,
            "forward_ccs": self.forward_ccs, "hub": self.hub, "fixing_correction": self.fixing_correction,
            "residual": [[d.isoformat(), c, v] for d, c, v in self.residual],
            "fx_residual": [[d.isoformat(), v] for d, v in self.fx_residual],
            "direct": self.direct,
            "market_spread_bp": None if self.market_spread is None else self.market_spread * 1e4,
            "anchor": None if self.anchor is None else self.anchor.isoformat(),
        }


def _total(fwd, hub, corr, residual, fx_residual, direct) -> float:
    total = fwd + hub + corr
    for row in residual:
        total += row[-1]
    for row in fx_residual:
        total += row[-1]
    return total + direct


def _breakdown(ctx: ValuationContext, **parts) -> PricingBreakdown:
    npv = _total(parts.get("forward_ccs", 0.0), parts.get("hub", 0.0), parts.get("fixing_correction", 0.0),
                 parts.get("residual", ()), parts.get("fx_residual", ()), parts.get("direct", 0.0))
    return PricingBreakdown(npv, ctx.valuation_currency, str(ctx.policy), ctx.method, **parts)


def _annuity(sched: Schedule, disc: DiscountCurve, start: Date, end: Date) -> float:
    return sum(tau * disc(b) for a, b, tau in sched.periods() if a >= start and b <= end)


def forward_ccs_market_spread(grid: Schedule, spot_spreads: QuoteLadder, disc_d: DiscountCurve,
                              t_U: Date, t_V: Date) -> float:
    """Forward-start spread on market dates from spot spreads by annuity algebra."""
    points = grid.all_dates
    if t_U not in points or t_V not in points:
        raise OutOfRangeError("forward CCS dates must lie on the market schedule")
    if not t_U < t_V:
        raise OutOfRangeError(f"forward CCS start {t_U} must precede its end {t_V}")
    t0 = grid.anchor
    a_uv = _annuity(grid, disc_d, t_U, t_V)
    if not a_uv > 0:
        raise PricingError(f"degenerate annuity between {t_U} and {t_V}")
    s_v = spot_spreads.interpolate(t0, t_V)
    head = 0.0
    if t_U > t0:
        head = spot_spreads.interpolate(t0, t_U) * _annuity(grid, disc_d, t0, t_U)
    return (s_v * _annuity(grid, disc_d, t0, t_V) - head) / a_uv


def forward_ccs_scs_spread(ctx: ValuationContext, schedule: Schedule, t_U: Date | None = None,
                           t_V: Date | None = None) -> float:
    """Domestic-leg spread zeroing a forward CCS with both legs funded in their own
    currency and the resetting foreign notionals set to cash-and-carry forwards."""
    if t_U is not None or t_V is not None:
        schedule = schedule.sub_schedule(t_U or schedule.anchor, t_V)
    cs = ctx.curves
    dom, fgn = cs.domestic, cs.foreign
    cf = cs.conventions[fgn]
    if schedule.anchor < cs.valuation_date:
        raise OutOfRangeError("forward CCS must start on or after the valuation date")
    disc_d, disc_f = cs.ois[dom], cs.ois[fgn]
    proj_d = cs.projection(dom, schedule.freq_months)
    proj_f = cs.projection(fgn, schedule.freq_months)
    annuity = 0.0
    value_ = disc_d(schedule.anchor) - disc_d(schedule.end)
    for a, b, tau in schedule.periods():
        df_b = disc_d(b)
        annuity += tau * df_b
        value_ -= proj_d.forward(a, b, schedule.day_count) * tau * df_b
        tau_f = year_fraction(a, b, cf.float_day_count)
        dff_a, dff_b = disc_f(a), disc_f(b)
        value_ -= disc_d(a) / dff_a * (dff_a - (1.0 + proj_f.forward(a, b, cf.float_day_count) * tau_f) * dff_b)
    if not annuity > 0:
        raise PricingError("degenerate domestic annuity")
    return value_ / annuity


def _market_grid(ctx: ValuationContext) -> Schedule:
    cs = ctx.curves
    quotes = _ccs_quotes(ctx)
    conv = cs.conventions[cs.domestic]
    last = quotes.maturity_dates(cs.valuation_date)[-1]
    return generate_schedule(cs.valuation_date, last, conv.float_freq_months, conv.float_day_count)


def _ccs_quotes(ctx: ValuationContext) -> QuoteLadder:
    cs = ctx.curves
    if cs.ccs_quotes is None:
        raise ConfigurationError("pricing needs market CCS quotes")
    if cs.spread_leg not in (None, cs.domestic):
        raise ConventionError("decomposition pricing needs market spreads quoted on the domestic leg")
    return cs.ccs_quotes


def forward_ccs_fair_spread(ctx: ValuationContext, t_U: Date, t_V: Date,
                            schedule: Schedule | None = None) -> ForwardCcsSpreadResult:
    """Cash-and-carry forward spread plus the market error interpolated in start date."""
    cs = ctx.curves
    quotes = _ccs_quotes(ctx)
    grid = _market_grid(ctx)
    points = grid.all_dates
    t0 = cs.valuation_date
    if not t0 <= t_U < t_V:
        raise OutOfRangeError(f"forward CCS needs valuation date <= start < end, got {t_U}, {t_V}")
    if t_U in points:
        lo = hi = t_U
    else:
        lo, hi = _bracket(grid, t_U)
    k = max(period_index_at_or_beyond(grid, t_V), points.index(hi) + 1)
    if k >= len(points):
        raise OutOfRangeError(f"forward CCS {t_U}->{t_V} runs past the market schedule")
    mat = points[k]
    disc_d = cs.ois[cs.domestic]

    def err(m):
        return (forward_ccs_market_spread(grid, quotes, disc_d, m, mat)
                - forward_ccs_scs_spread(ctx, grid.sub_schedule(m, mat)))

    e_lo = err(lo)
    if hi == lo:
        e_hi, e = e_lo, e_lo
    else:
        e_hi = err(hi)
        t_lo, t_hi, t = (time_between(t0, d) for d in (lo, hi, t_U))
        w = (t - t_lo) / (t_hi - t_lo)
        e = (1.0 - w) * e_lo + w * e_hi
    if schedule is None:
        conv = cs.conventions[cs.domestic]
        schedule = generate_schedule(t_U, t_V, conv.float_freq_months, conv.float_day_count)
    elif schedule.anchor != t_U or schedule.end != t_V:
        schedule = schedule.sub_schedule(t_U, t_V)
    scs = forward_ccs_scs_spread(ctx, schedule)
    return ForwardCcsSpreadResult(scs, e_lo, e_hi, e, scs + e, lo, hi, mat)


def _bracket(grid: Schedule, T: Date) -> tuple[Date, Date]:
    k = period_index_at_or_beyond(grid, T)
    points = grid.all_dates
    return points[k - 1], points[k]


def _fixing(table, d: Date, what: str) -> float:
    try:
        return table[d]
    except KeyError:
        raise FixingDataError(f"missing {what} fixing for {d}") from None


def _fx_at(ctx: ValuationContext, fixings, d: Date) -> float:
    t = ctx.valuation_date
    if d < t:
        return _fixing(fixings, d, "FX")
    if d == t and d in fixings:
        return fixings[d]
    return ctx.fx_forward(d)


def _check_pair(ctx: ValuationContext, instr) -> None:
    cs = ctx.curves
    if (instr.domestic, instr.foreign) != (cs.domestic, cs.foreign):
        raise ConfigurationError(f"trade pair {instr.domestic}/{instr.foreign} does not match curves "
                                 f"{cs.domestic}/{cs.foreign}")
    conv = cs.conventions[cs.domestic]
    if instr.freq_months != conv.float_freq_months:
        raise ConventionError(f"trade frequency {instr.freq_months}m differs from the market "
                              f"{conv.float_freq_months}m convention")


def _check_as_of(ctx: ValuationContext, as_of) -> None:
    if as_of is not None and as_of != ctx.valuation_date:
        raise ConfigurationError(f"as_of {as_of} differs from the curve date {ctx.valuation_date}")


def _hub_value(ctx: ValuationContext, ccs: ResettableCcs, a: Date, b: Date, tau_d: float) -> float:
    """Started period: pay the domestic coupon and notional, receive the foreign ones."""
    cs = ctx.curves
    dom, fgn = ccs.domestic, ccs.foreign
    n = ccs.notional
    l_d = _fixing(ccs.libor_fixings.get(dom, {}), a, f"{dom} Libor")
    l_f = _fixing(ccs.libor_fixings.get(fgn, {}), a, f"{fgn} Libor")
    x_a = _fixing(ccs.fx_fixings, a, "FX")
    tau_f = year_fraction(a, b, ccs.day_count_foreign)
    cf_d = n * (1.0 + (l_d + ccs.spread_domestic) * tau_d)
    cf_f = n * x_a * (1.0 + (l_f + ccs.spread_foreign) * tau_f)
    x_tb = ctx.fx_forward(b)
    if ctx.hub_funding == dom:
        v = (cf_f / x_tb - cf_d) * ctx.discount_curve(dom)(b)
    elif ctx.hub_funding == fgn:
        v = (cf_f - cf_d * x_tb) * ctx.discount_curve(fgn)(b) / cs.spot
    else:
        raise ConfigurationError(f"hub funding currency {ctx.hub_funding} is not in the pair")
    return ctx.convert_spot(v, dom, ctx.valuation_currency)


def _fixing_correction(ctx: ValuationContext, ccs: ResettableCcs, a: Date, b: Date) -> float:
    """Difference between the trade's first period with today's fixings and the
    same period projected from the curves (zero unless fixings are supplied)."""
    t = ctx.valuation_date
    has_fx = a in ccs.fx_fixings
    has_libor = any(a in table for table in ccs.libor_fixings.values())
    if not (has_fx or has_libor):
        return 0.0
    period = ResettableCcs(ccs.domestic, ccs.foreign, a, b, ccs.spread_domestic, ccs.spread_foreign,
                           ccs.notional, ccs.freq_months, ccs.day_count_domestic, ccs.day_count_foreign,
                           ccs.libor_fixings, ccs.fx_fixings)
    projected = ResettableCcs(ccs.domestic, ccs.foreign, a, b, ccs.spread_domestic, ccs.spread_foreign,
                              ccs.notional, ccs.freq_months, ccs.day_count_domestic, ccs.day_count_foreign)
    return value(ctx, expand_cash_flows(period, t)) - value(ctx, expand_cash_flows(projected, t))


def price_ccs(ctx: ValuationContext, ccs: ResettableCcs, as_of: Date | None = None) -> PricingBreakdown:
    _check_as_of(ctx, as_of)
    if ctx.method == "four-curve":
        return _breakdown(ctx, direct=value(ctx, expand_cash_flows(ccs, ctx.valuation_date)))
    _check_pair(ctx, ccs)
    t = ctx.valuation_date
    sched = ccs.schedule
    points = sched.all_dates
    if t > sched.end:
        return _breakdown(ctx)
    hub = 0.0
    if t <= sched.anchor:
        k = 0
    else:
        k = period_index_at_or_beyond(sched, t)  # started period k ends at points[k]
        a, b = points[k - 1], points[k]
        hub = _hub_value(ctx, ccs, a, b, sched.fractions[k - 1])
    anchor = points[k]
    if anchor == sched.end:
        return _breakdown(ctx, hub=hub, anchor=anchor)
    if anchor == t:
        s_mkt = _ccs_quotes(ctx).interpolate(t, sched.end)
        corr = _fixing_correction(ctx, ccs, anchor, points[k + 1])
    else:
        s_mkt = forward_ccs_fair_spread(ctx, anchor, sched.end, sched.sub_schedule(anchor)).market_spread
        corr = 0.0
    dom, fgn = ccs.domestic, ccs.foreign
    n = ccs.notional
    residual = []
    for j in range(k, len(sched)):
        a, b, tau = points[j], points[j + 1], sched.fractions[j]
        flow = CashFlow(dom, b, -n, "fixed", rate=ccs.spread_domestic - s_mkt, accrual=tau)
        residual.append((b, dom, value_flow(ctx, flow)))
        if ccs.spread_foreign:
            tau_f = year_fraction(a, b, ccs.day_count_foreign)
            flow = CashFlow(fgn, b, n, "fixed", rate=ccs.spread_foreign, accrual=tau_f, fx_reset=a)
            residual.append((b, fgn, value_flow(ctx, flow)))
    return _breakdown(ctx, hub=hub, fixing_correction=corr, residual=tuple(residual),
                      market_spread=s_mkt, anchor=anchor)


def price_ncs(ctx: ValuationContext, ncs: NonResettableCcs, as_of: Date | None = None) -> PricingBreakdown:
    _check_as_of(ctx, as_of)
    t = ctx.valuation_date
    if ctx.method == "four-curve":
        return _breakdown(ctx, direct=value(ctx, expand_cash_flows(ncs, t)))
    _check_pair(ctx, ncs)
    ccs, terms = decompose_ncs_to_ccs_plus_frns(ncs)
    base = price_ccs(ctx, ccs)
    fx_residual = []
    for term in terms:
        coef = _fx_at(ctx, ncs.fx_fixings, term.fx_date) - _fx_at(ctx, ncs.fx_fixings, term.prev_fx_date)
        fx_residual.append((term.fx_date, coef * value(ctx, expand_cash_flows(term.frn, t))))
    return PricingBreakdown(
        _total(base.forward_ccs, base.hub, base.fixing_correction, base.residual, fx_residual, base.direct),
        base.currency, base.policy, base.method, base.forward_ccs, base.hub, base.fixing_correction,
        base.residual, tuple(fx_residual), base.direct, base.market_spread, base.anchor)


def price(ctx: ValuationContext, instrument: Instrument, as_of: Date | None = None) -> PricingBreakdown:
    if isinstance(instrument, NonResettableCcs):
        return price_ncs(ctx, instrument, as_of)
    if isinstance(instrument, ResettableCcs):
        return price_ccs(ctx, instrument, as_of)
    if isinstance(instrument, FloatingRateNote):
        _check_as_of(ctx, as_of)
        return _breakdown(ctx, direct=value(ctx, expand_cash_flows(instrument, ctx.valuation_date)))
    raise ConfigurationError(f"cannot price {type(instrument).__name__}")


def npv(ctx: ValuationContext, instrument: Instrument, as_of: Date | None = None) -> float:
    return price(ctx, instrument, as_of).npv


def direct_value(ctx: ValuationContext, instrument: Instrument, funding: str | None = None) -> float:
    """Every remaining flow valued with one common funding currency."""
    policy = central(funding or ctx.curves.domestic)
    return value(ctx, expand_cash_flows(instrument, ctx.valuation_date), policy)
