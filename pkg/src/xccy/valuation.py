"""Expectation and valuation operators with a per-currency funding policy.

A flow paid in currency C2 can be funded in its own currency (own OIS
discounting, converted at spot) or centrally in C1 (converted at the FX
forward of its payment date, discounted on C1's OIS curve).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .calibration import CurveSet
from .curves import DiscountCurve
from .errors import ConfigurationError
from .fx import FxForwardCurve
from .instruments import CashFlow, FloatingRateNote, expand_cash_flows

METHODS = ("decomposition", "four-curve")


@dataclass(frozen=True)
class FundingPolicy:
    mode: str = "own"  # own | central
    currency: str | None = None

    def __post_init__(self):
        if self.mode not in ("own", "central"):
            raise ConfigurationError(f"unknown funding mode {self.mode!r}")
        if self.mode == "central" and not self.currency:
            raise ConfigurationError("central funding needs a currency")

    @classmethod
    def parse(cls, text: str) -> "FundingPolicy":
        """``'own'`` or ``'central:EUR'``."""
        if text == "own":
            return cls()
        mode, _, ccy = text.partition(":")
        if mode != "central" or not ccy:
            raise ConfigurationError(f"funding must be 'own' or 'central:CCY', got {text!r}")
        return cls("central", ccy.upper())

    def funding_currency(self, flow_currency: str) -> str:
        return flow_currency if self.mode == "own" else self.currency

    def __str__(self):
        return "own" if self.mode == "own" else f"central:{self.currency}"


OWN = FundingPolicy()


def central(ccy: str) -> FundingPolicy:
    return FundingPolicy("central", ccy)


@dataclass(frozen=True)
class ValuationContext:
    """Curves, funding policy and method for one pricing run.

    Under ``four-curve`` every flow is funded in the domestic currency and the
    FX forwards are the ones implied by the recalibrated basis curve, whatever
    policy was requested.
    """

    curves: CurveSet
    policy: FundingPolicy = OWN
    valuation_currency: str | None = None
    method: str = "decomposition"
    hub_funding: str | None = None
    fx_source: str = "auto"  # auto | market | ccs

    def __post_init__(self):
        cs = self.curves
        if self.method not in METHODS:
            raise ConfigurationError(f"unknown method {self.method!r}")
        ccy = self.valuation_currency or cs.domestic or next(iter(cs.ois))
        object.__setattr__(self, "valuation_currency", ccy)
        if ccy not in cs.ois:
            raise ConfigurationError(f"valuation currency {ccy} has no OIS curve")
        if self.policy.mode == "central" and self.policy.currency not in cs.ois:
            raise ConfigurationError(f"central funding currency {self.policy.currency} not in curve set")
        if self.method == "four-curve":
            if cs.basis is None:
                raise ConfigurationError("four-curve method needs a calibrated basis curve")
            object.__setattr__(self, "policy", central(cs.domestic))
        if self.fx_source not in ("auto", "market", "ccs"):
            raise ConfigurationError(f"unknown FX source {self.fx_source!r}")
        if self.hub_funding is None:
            object.__setattr__(self, "hub_funding", cs.domestic)

    @property
    def valuation_date(self):
        return self.curves.valuation_date

    @property
    def fx_curve(self) -> FxForwardCurve:
        cs = self.curves
        if self.method == "four-curve":
            return cs.fx_four_curve()
        if self.fx_source == "ccs" or (self.fx_source == "auto" and cs.fx is None):
            if cs.fx_ccs is None:
                raise ConfigurationError("no CCS-implied FX curve: snapshot lacks CCS quotes")
            return cs.fx_ccs
        if cs.fx is None:
            raise ConfigurationError("no FX forward curve: snapshot lacks market FX forwards")
        return cs.fx

    @property
    def spot(self) -> float:
        return self.curves.spot

    def discount_curve(self, ccy: str) -> DiscountCurve:
        try:
            return self.curves.ois[ccy]
        except KeyError:
            raise ConfigurationError(f"unknown currency {ccy}") from None

    def fx_forward(self, T) -> float:
        return self.fx_curve.forward(T)

    def convert_spot(self, amount: float, from_ccy: str, to_ccy: str) -> float:
        return amount * self._conversion(from_ccy, to_ccy, None)

    def _conversion(self, from_ccy: str, to_ccy: str, T) -> float:
        """Units of ``to_ccy`` per unit of ``from_ccy`` at spot (T None) or forward."""
        if from_ccy == to_ccy:
            return 1.0
        cs = self.curves
        pair = {cs.domestic, cs.foreign}
        if {from_ccy, to_ccy} != pair:
            raise ConfigurationError(f"no FX rate between {from_ccy} and {to_ccy}")
        x = cs.spot if T is None else self.fx_forward(T)
        return x if from_ccy == cs.domestic else 1.0 / x


def expected_amount(ctx: ValuationContext, flow: CashFlow) -> float:
    """Forward-projected amount in the flow's currency (independence approximation)."""
    if flow.fx_reset is None:
        fx = 1.0
    elif flow.fx_fixing is not None:
        fx = flow.fx_fixing
    else:
        fx = ctx.fx_forward(flow.fx_reset)
    if flow.kind == "principal":
        payoff = 1.0
    elif flow.kind == "fixed":
        payoff = flow.rate * flow.accrual
    else:
        rate = flow.rate
        if rate is None:
            proj = ctx.curves.projection(flow.currency, flow.index_tenor)
            rate = proj.forward(flow.fixing_start, flow.fixing_end)
        payoff = (rate + flow.spread) * flow.accrual
    return flow.notional * fx * payoff


def expectation(ctx: ValuationContext, flow: CashFlow, funding_ccy: str) -> float:
    """Value in ``funding_ccy`` of ``flow`` funded in ``funding_ccy``."""
    amount = expected_amount(ctx, flow)
    df = ctx.discount_curve(funding_ccy)(flow.pay_date)
    if flow.currency == funding_ccy:
        return amount * df
    return amount * ctx._conversion(flow.currency, funding_ccy, flow.pay_date) * df


def value_flow(ctx: ValuationContext, flow: CashFlow, policy: FundingPolicy | None = None) -> float:
    policy = policy or ctx.policy
    funding = policy.funding_currency(flow.currency)
    if ctx.method == "four-curve" and flow.currency == ctx.curves.foreign and policy.mode == "own":
        funding = ctx.curves.domestic
    v = expectation(ctx, flow, funding)
    return ctx.convert_spot(v, funding, ctx.valuation_currency)


def value(ctx: ValuationContext, flows: Iterable[CashFlow], policy: FundingPolicy | None = None) -> float:
    return sum((value_flow(ctx, f, policy) for f in flows), 0.0)


def value_frn_foreign_from_domestic(ctx: ValuationContext, frn: FloatingRateNote) -> float:
    """Foreign FRN valued and funded in the domestic currency, term by term.

    Initial notional, forward Libor coupons plus spread and the final
    redemption, each divided by the FX forward of its payment date and
    discounted on the domestic OIS curve. Flows already paid are skipped.
    """
    cs = ctx.curves
    if frn.currency != cs.foreign:
        raise ConfigurationError("FRN must be denominated in the foreign currency")
    t = ctx.valuation_date
    disc = ctx.discount_curve(cs.domestic)
    proj = cs.projection(frn.currency, frn.freq_months)
    n = frn.notional
    total = 0.0
    sched = frn.schedule
    if sched.anchor >= t:
        total += n * disc(sched.anchor) / ctx.fx_forward(sched.anchor)
    for a, b, tau in sched.periods():
        if b < t:
            continue
        rate = frn.fixings.get(a) if a <= t else None
        if rate is None:
            rate = proj.forward(a, b, frn.day_count)
        total -= n * (rate + frn.spread) * tau * disc(b) / ctx.fx_forward(b)
    if sched.end >= t:
        total -= n * disc(sched.end) / ctx.fx_forward(sched.end)
    return total


def value_instrument_flows(ctx: ValuationContext, instr, policy: FundingPolicy | None = None) -> float:
    return value(ctx, expand_cash_flows(instr, ctx.valuation_date), policy)
