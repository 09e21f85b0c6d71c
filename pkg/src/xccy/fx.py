"""FX forward curve: OIS cash-and-carry baseline corrected by interpolated errors.

Rates are quoted as foreign units per domestic unit throughout.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Sequence

from .curves import DiscountCurve
from .errors import ExtrapolationError, InputError, OutOfRangeError
from .temporal import Date, DayCount, time_between, year_fraction


class FxForwardCurve:
    def __init__(self, domestic: str, foreign: str, spot: float,
                 domestic_curve: DiscountCurve, foreign_curve: DiscountCurve,
                 pillar_dates: Sequence[Date] = (), pillar_rates: Sequence[float] = ()):
        if not spot > 0:
            raise InputError(f"FX spot must be positive, got {spot}")
        if domestic_curve.valuation_date != foreign_curve.valuation_date:
            raise InputError("FX curve legs must share a valuation date")
        if len(pillar_dates) != len(pillar_rates):
            raise InputError("one forward per FX pillar date")
        t0 = domestic_curve.valuation_date
        prev = t0
        for d, x in zip(pillar_dates, pillar_rates):
            if d <= prev:
                raise InputError("FX pillar dates must be strictly increasing after the valuation date")
            if not x > 0:
                raise InputError(f"non-positive FX forward {x} at {d}")
            prev = d
        self.domestic = domestic
        self.foreign = foreign
        self.spot = float(spot)
        self.domestic_curve = domestic_curve
        self.foreign_curve = foreign_curve
        self.valuation_date = t0
        self.pillar_dates = tuple(pillar_dates)
        self.pillar_rates = tuple(float(x) for x in pillar_rates)
        self._times = [time_between(t0, d) for d in self.pillar_dates]
        self.pillar_errors = tuple(x - self.scs(d) for d, x in zip(self.pillar_dates, self.pillar_rates))

    def __repr__(self):
        return f"FxForwardCurve({self.domestic}{self.foreign}, spot={self.spot}, pillars={len(self.pillar_dates)})"

    @property
    def last_date(self) -> Date:
        if self.pillar_dates:
            return self.pillar_dates[-1]
        return min(self.domestic_curve.last_date, self.foreign_curve.last_date)

    def scs(self, T: Date) -> float:
        return self.spot * self.domestic_curve(T) / self.foreign_curve(T)

    def error(self, T: Date) -> float:
        """Straight-line interpolated SCS error; zero at the valuation date."""
        if T == self.valuation_date or not self.pillar_dates:
            return 0.0
        if T > self.pillar_dates[-1]:
            raise ExtrapolationError(f"FX forward requested at {T}, last pillar {self.pillar_dates[-1]}")
        k = bisect_left(self.pillar_dates, T)
        if self.pillar_dates[k] == T:
            return self.pillar_errors[k]
        t = time_between(self.valuation_date, T)
        t_lo, e_lo = (self._times[k - 1], self.pillar_errors[k - 1]) if k else (0.0, 0.0)
        t_hi, e_hi = self._times[k], self.pillar_errors[k]
        return (t_hi - t) / (t_hi - t_lo) * e_lo + (t - t_lo) / (t_hi - t_lo) * e_hi

    def forward(self, T: Date) -> float:
        if T < self.valuation_date:
            raise OutOfRangeError(f"{T} precedes valuation date")
        if T == self.valuation_date:
            return self.spot
        if self.pillar_dates:
            if T > self.pillar_dates[-1]:
                raise ExtrapolationError(f"FX forward requested at {T}, last pillar {self.pillar_dates[-1]}")
            k = bisect_left(self.pillar_dates, T)
            if self.pillar_dates[k] == T:
                return self.pillar_rates[k]
        return self.scs(T) + self.error(T)

    __call__ = forward

    def scaled(self, factor: float) -> "FxForwardCurve":
        """Spot and every pillar multiplied by ``factor`` (FX-delta bump)."""
        return FxForwardCurve(self.domestic, self.foreign, self.spot * factor, self.domestic_curve,
                              self.foreign_curve, self.pillar_dates,
                              [x * factor for x in self.pillar_rates])

    def with_curves(self, domestic_curve: DiscountCurve, foreign_curve: DiscountCurve) -> "FxForwardCurve":
        return FxForwardCurve(self.domestic, self.foreign, self.spot, domestic_curve, foreign_curve,
                              self.pillar_dates, self.pillar_rates)

    def with_pillars(self, dates: Sequence[Date], rates: Sequence[float]) -> "FxForwardCurve":
        return FxForwardCurve(self.domestic, self.foreign, self.spot, self.domestic_curve,
                              self.foreign_curve, dates, rates)


def fx_forward_scs(curve: FxForwardCurve, T: Date) -> float:
    return curve.scs(T)


def fx_forward(curve: FxForwardCurve, T: Date) -> float:
    return curve.forward(T)


def implied_fx_forward_from_deposits(spot: float, depo_domestic: float, depo_foreign: float,
                                     valuation_date: Date, T: Date,
                                     dc_domestic: DayCount = DayCount.ACT_360,
                                     dc_foreign: DayCount = DayCount.ACT_360) -> float:
    """Cash-and-carry forward with simple-interest money-market discounting."""
    tau_d = year_fraction(valuation_date, T, dc_domestic)
    tau_f = year_fraction(valuation_date, T, dc_foreign)
    if depo_domestic * tau_d <= -1.0 or depo_foreign * tau_f <= -1.0:
        raise InputError("deposit rate implies a non-positive discount factor")
    return spot * (1.0 + depo_foreign * tau_f) / (1.0 + depo_domestic * tau_d)
