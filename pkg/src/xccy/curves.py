"""Curve containers: discount curves, projection curves and quote ladders."""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field, replace
from typing import Sequence

from .errors import ExtrapolationError, InputError, OutOfRangeError
from .temporal import Date, DayCount, add_months, format_tenor, tenor_months, time_between, year_fraction


class DiscountCurve:
    """Log-linear discount factors on pillar dates.

    The valuation date is an implicit node with factor 1. Requests beyond the
    last pillar raise instead of extrapolating.
    """

    def __init__(self, currency: str, valuation_date: Date, dates: Sequence[Date],
                 dfs: Sequence[float], name: str | None = None):
        if len(dates) != len(dfs):
            raise InputError("one discount factor per pillar date")
        prev = valuation_date
        for d, v in zip(dates, dfs):
            if d <= prev:
                raise InputError(f"pillar dates must be strictly increasing after {valuation_date}")
            if not (v > 0.0 and math.isfinite(v)):
                raise InputError(f"non-positive discount factor {v} at {d}")
            prev = d
        self.currency = currency
        self.valuation_date = valuation_date
        self.dates = tuple(dates)
        self.dfs = tuple(float(v) for v in dfs)
        self.name = name or f"{currency} discount"
        self._times = [time_between(valuation_date, d) for d in self.dates]
        self._logs = [math.log(v) for v in self.dfs]

    def __repr__(self):
        return f"DiscountCurve({self.name!r}, pillars={len(self.dates)})"

    @property
    def last_date(self) -> Date:
        return self.dates[-1] if self.dates else self.valuation_date

    def discount_factor(self, T: Date) -> float:
        if T == self.valuation_date:
            return 1.0
        if T < self.valuation_date:
            raise OutOfRangeError(f"{T} precedes valuation date {self.valuation_date}")
        if not self.dates or T > self.dates[-1]:
            raise ExtrapolationError(f"{self.name}: {T} beyond last pillar {self.last_date}")
        k = bisect_left(self.dates, T)
        if self.dates[k] == T:
            return self.dfs[k]
        t = time_between(self.valuation_date, T)
        t1, l1 = (self._times[k - 1], self._logs[k - 1]) if k else (0.0, 0.0)
        t2, l2 = self._times[k], self._logs[k]
        w = (t - t1) / (t2 - t1)
        return math.exp(l1 + w * (l2 - l1))

    __call__ = discount_factor

    def with_pillars(self, dates: Sequence[Date], dfs: Sequence[float]) -> "DiscountCurve":
        return DiscountCurve(self.currency, self.valuation_date, dates, dfs, self.name)


class ForwardRateCurve:
    """Projection curve for one Libor tenor.

    Stored as pseudo-discount factors (log-linear, same interpolant as
    :class:`DiscountCurve`) so simple forwards telescope exactly; the pillar
    forward rates are the tenor-length forwards ending on each pillar.
    """

    def __init__(self, currency: str, tenor_months: int, valuation_date: Date,
                 dates: Sequence[Date], pseudo_dfs: Sequence[float],
                 day_count: DayCount = DayCount.ACT_360, name: str | None = None):
        self.currency = currency
        self.tenor_months = tenor_months
        self.valuation_date = valuation_date
        self.day_count = day_count
        self.name = name or f"{currency} {format_tenor(tenor_months)} projection"
        self._curve = DiscountCurve(currency, valuation_date, dates, pseudo_dfs, self.name)

    def __repr__(self):
        return f"ForwardRateCurve({self.name!r}, pillars={len(self.dates)})"

    @property
    def dates(self) -> tuple[Date, ...]:
        return self._curve.dates

    @property
    def pseudo_dfs(self) -> tuple[float, ...]:
        return self._curve.dfs

    @property
    def last_date(self) -> Date:
        return self._curve.last_date

    def projection_factor(self, T: Date) -> float:
        return self._curve.discount_factor(T)

    def forward(self, start: Date, end: Date, dc: DayCount | None = None) -> float:
        """Simple forward rate for the accrual period ``[start, end]``."""
        tau = year_fraction(start, end, dc or self.day_count)
        return (self._curve(start) / self._curve(end) - 1.0) / tau

    @property
    def pillar_rates(self) -> tuple[float, ...]:
        out = []
        for d in self.dates:
            start = max(add_months(d, -self.tenor_months), self.valuation_date)
            out.append(self.forward(start, d))
        return tuple(out)


@dataclass(frozen=True)
class QuoteLadder:
    """Quotes of one instrument kind, indexed by maturity tenor (months).

    Values are decimals; spreads are converted from basis points on ingestion.
    """

    kind: str
    tenors: tuple[int, ...]
    values: tuple[float, ...]
    currency: str = ""
    label: str = ""
    reconstructed: bool = False
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "tenors", tuple(tenor_months(t) for t in self.tenors))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.tenors) != len(self.values):
            raise InputError(f"{self.kind} ladder: tenors and values differ in length")
        seen = set()
        for t in self.tenors:
            if t in seen:
                raise InputError(f"{self.kind} ladder: duplicate maturity {format_tenor(t)}")
            seen.add(t)
        if list(self.tenors) != sorted(self.tenors):
            raise InputError(f"{self.kind} ladder: maturities not sorted")

    def __len__(self):
        return len(self.tenors)

    def items(self):
        return zip(self.tenors, self.values)

    def maturity_dates(self, valuation_date: Date) -> list[Date]:
        return [add_months(valuation_date, m) for m in self.tenors]

    def value_at(self, tenor: str | int) -> float:
        m = tenor_months(tenor)
        try:
            return self.values[self.tenors.index(m)]
        except ValueError:
            raise InputError(f"{self.kind} ladder has no {format_tenor(m)} quote") from None

    def bumped(self, size: float, tenor: str | int | None = None) -> "QuoteLadder":
        if tenor is None:
            return replace(self, values=tuple(v + size for v in self.values))
        m = tenor_months(tenor)
        if m not in self.tenors:
            raise InputError(f"{self.kind} ladder has no {format_tenor(m)} pillar to bump")
        return replace(self, values=tuple(v + size if t == m else v
                                          for t, v in zip(self.tenors, self.values)))

    def with_values(self, values: Sequence[float]) -> "QuoteLadder":
        return replace(self, values=tuple(values))

    def interpolate(self, valuation_date: Date, T: Date) -> float:
        """Linear in ACT/365F maturity; flat before the first quote."""
        dates = self.maturity_dates(valuation_date)
        if T > dates[-1]:
            raise ExtrapolationError(f"{self.kind} ladder ends at {dates[-1]}, asked {T}")
        if T <= dates[0]:
            return self.values[0]
        k = bisect_left(dates, T)
        if dates[k] == T:
            return self.values[k]
        t = time_between(valuation_date, T)
        t1 = time_between(valuation_date, dates[k - 1])
        t2 = time_between(valuation_date, dates[k])
        w = (t - t1) / (t2 - t1)
        return (1.0 - w) * self.values[k - 1] + w * self.values[k]
