"""Instrument definitions, cash-flow expansion and payoff decompositions.

Orientation follows the cash-flow figures of the floating rate note: a long
FRN receives its notional at the start, pays floating coupons and returns the
notional at maturity. Swaps are stated as ``FRN(domestic) - X * FRN(foreign)``,
so the holder receives the domestic notional up front and pays the domestic
floating leg (spread included).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Optional, Union

from .errors import FixingDataError, InputError
from .temporal import Date, DayCount, Schedule, generate_schedule


@dataclass(frozen=True)
class CashFlow:
    """One payment.

    ``amount = notional * fx_factor * payoff`` where ``payoff`` is 1 for a
    principal flow, ``fixed_rate * accrual`` for a fixed coupon and
    ``(index + spread) * accrual`` for a floating coupon. ``fx_reset`` names the
    FX fixing date that scales the notional (resettable legs); ``fx_fixing`` holds
    its value once known. A known Libor fixing is stored in ``rate``.
    """

    currency: str
    pay_date: Date
    notional: float
    kind: str = "principal"  # principal | fixed | floating
    rate: Optional[float] = None
    spread: float = 0.0
    accrual: float = 0.0
    index_tenor: Optional[int] = None
    fixing_start: Optional[Date] = None
    fixing_end: Optional[Date] = None
    fx_reset: Optional[Date] = None
    fx_fixing: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("principal", "fixed", "floating"):
            raise InputError(f"unknown cash-flow kind {self.kind!r}")
        if self.kind == "floating":
            if not self.accrual > 0:
                raise InputError("floating flow needs a positive accrual fraction")
            if self.fixing_start is not None and self.pay_date < self.fixing_start:
                raise InputError("payment precedes fixing")

    @property
    def sign(self) -> int:
        return 1 if self.notional >= 0 else -1

    def scaled(self, factor: float) -> "CashFlow":
        return replace(self, notional=self.notional * factor)

    def realize(self, libor_path: Mapping = None, fx_path: Mapping = None) -> float:
        """Amount on a given fixing path (``{(ccy, date): rate}``, ``{date: X}``)."""
        if self.fx_reset is None:
            fx = 1.0
        elif self.fx_fixing is not None:
            fx = self.fx_fixing
        else:
            fx = fx_path[self.fx_reset]
        if self.kind == "principal":
            payoff = 1.0
        elif self.kind == "fixed":
            payoff = self.rate * self.accrual
        else:
            rate = self.rate if self.rate is not None else libor_path[(self.currency, self.fixing_start)]
            payoff = (rate + self.spread) * self.accrual
        return self.notional * fx * payoff


@dataclass(frozen=True)
class FloatingRateNote:
    currency: str
    start: Date
    end: Date
    spread: float = 0.0
    notional: float = 1.0
    freq_months: int = 3
    day_count: DayCount = DayCount.ACT_360
    fixings: Mapping[Date, float] = field(default_factory=dict, compare=False, hash=False)
    period_ends: tuple[Date, ...] = ()

    def __post_init__(self):
        if not self.notional > 0:
            raise InputError("FRN notional must be positive")
        if self.period_ends and self.period_ends[-1] != self.end:
            raise InputError("explicit FRN period ends must finish on the end date")

    @property
    def schedule(self) -> Schedule:
        if self.period_ends:
            return Schedule.from_dates(self.start, self.period_ends, self.day_count, self.freq_months)
        return generate_schedule(self.start, self.end, self.freq_months, self.day_count)


@dataclass(frozen=True)
class _CrossCurrencySwap:
    domestic: str
    foreign: str
    start: Date
    end: Date
    spread_domestic: float = 0.0
    spread_foreign: float = 0.0
    notional: float = 1.0
    freq_months: int = 3
    day_count_domestic: DayCount = DayCount.ACT_360
    day_count_foreign: DayCount = DayCount.ACT_360
    libor_fixings: Mapping[str, Mapping[Date, float]] = field(default_factory=dict, compare=False, hash=False)
    fx_fixings: Mapping[Date, float] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if not self.notional > 0:
            raise InputError("swap notional must be positive")
        if self.domestic == self.foreign:
            raise InputError("cross-currency swap needs two currencies")

    @property
    def schedule(self) -> Schedule:
        return generate_schedule(self.start, self.end, self.freq_months, self.day_count_domestic)

    @property
    def foreign_schedule(self) -> Schedule:
        return Schedule.from_dates(self.start, self.schedule.dates, self.day_count_foreign,
                                   self.freq_months)


class ResettableCcs(_CrossCurrencySwap):
    """Market CCS: the foreign notional resets to the FX fixing every period."""


class NonResettableCcs(_CrossCurrencySwap):
    """Foreign notional fixed at ``notional * X(start)`` for the whole life."""


Instrument = Union[FloatingRateNote, ResettableCcs, NonResettableCcs]


def frn_flows(currency: str, schedule: Schedule, spread: float, notional: float,
              tenor_months: int, fx_reset: Date | None = None) -> list[CashFlow]:
    """Unresolved flows of a long FRN (``notional`` may carry a sign)."""
    flows = [CashFlow(currency, schedule.anchor, notional, fx_reset=fx_reset)]
    for a, b, tau in schedule.periods():
        flows.append(CashFlow(currency, b, -notional, "floating", spread=spread, accrual=tau,
                              index_tenor=tenor_months, fixing_start=a, fixing_end=b,
                              fx_reset=fx_reset))
    flows.append(CashFlow(currency, schedule.end, -notional, fx_reset=fx_reset))
    return flows


def _raw_flows(instr: Instrument) -> list[CashFlow]:
    if isinstance(instr, FloatingRateNote):
        return frn_flows(instr.currency, instr.schedule, instr.spread, instr.notional, instr.freq_months)
    sched_d, sched_f = instr.schedule, instr.foreign_schedule
    n = instr.notional
    flows = [CashFlow(instr.domestic, sched_d.anchor, n)]
    for a, b, tau in sched_d.periods():
        flows.append(CashFlow(instr.domestic, b, -n, "floating", spread=instr.spread_domestic,
                              accrual=tau, index_tenor=instr.freq_months, fixing_start=a, fixing_end=b))
    flows.append(CashFlow(instr.domestic, sched_d.end, -n))
    if isinstance(instr, NonResettableCcs):
        flows += frn_flows(instr.foreign, sched_f, instr.spread_foreign, -n, instr.freq_months,
                           fx_reset=instr.start)
        return flows
    # resettable: pay X(t_i) at each reset, receive it back with coupon at t_{i+1}
    flows.append(CashFlow(instr.foreign, sched_f.anchor, -n, fx_reset=sched_f.anchor))
    points = sched_f.all_dates
    for i, (a, b, tau) in enumerate(sched_f.periods()):
        flows.append(CashFlow(instr.foreign, b, n, "floating", spread=instr.spread_foreign,
                              accrual=tau, index_tenor=instr.freq_months, fixing_start=a,
                              fixing_end=b, fx_reset=a))
        flows.append(CashFlow(instr.foreign, b, n, fx_reset=a))
        if i + 1 < len(sched_f):
            flows.append(CashFlow(instr.foreign, b, -n, fx_reset=points[i + 1]))
    return flows


def _libor_fixings(instr: Instrument, currency: str) -> Mapping[Date, float]:
    if isinstance(instr, FloatingRateNote):
        return instr.fixings
    return instr.libor_fixings.get(currency, {})


def _fx_fixings(instr: Instrument) -> Mapping[Date, float]:
    return {} if isinstance(instr, FloatingRateNote) else instr.fx_fixings


def expand_cash_flows(instr: Instrument, as_of: Date) -> list[CashFlow]:
    """Flows paid on or after ``as_of`` with past fixings resolved.

    Fixings dated before ``as_of`` must be supplied; a fixing dated exactly on
    ``as_of`` is used when present and otherwise left to the curves.
    """
    out = []
    fx_fix = _fx_fixings(instr)
    for cf in _raw_flows(instr):
        if cf.pay_date < as_of:
            continue
        if cf.kind == "floating" and cf.fixing_start <= as_of:
            fixings = _libor_fixings(instr, cf.currency)
            if cf.fixing_start in fixings:
                cf = replace(cf, rate=fixings[cf.fixing_start])
            elif cf.fixing_start < as_of:
                raise FixingDataError(f"missing {cf.currency} Libor fixing for {cf.fixing_start}")
        if cf.fx_reset is not None and cf.fx_reset <= as_of:
            if cf.fx_reset in fx_fix:
                cf = replace(cf, fx_fixing=fx_fix[cf.fx_reset])
            elif cf.fx_reset < as_of:
                raise FixingDataError(f"missing FX fixing for {cf.fx_reset}")
        out.append(cf)
    return out


def all_cash_flows(instr: Instrument) -> list[CashFlow]:
    """Every flow of the instrument, unresolved (for path-level checks)."""
    return _raw_flows(instr)


def decompose_ncs_to_frns(ncs: NonResettableCcs) -> tuple[FloatingRateNote, FloatingRateNote, Date]:
    """``NCS = FRN(domestic) - X(start) * FRN(foreign)``; returns the X fixing date."""
    dom = FloatingRateNote(ncs.domestic, ncs.start, ncs.end, ncs.spread_domestic, ncs.notional,
                           ncs.freq_months, ncs.day_count_domestic,
                           ncs.libor_fixings.get(ncs.domestic, {}), ncs.schedule.dates)
    fgn = FloatingRateNote(ncs.foreign, ncs.start, ncs.end, ncs.spread_foreign, ncs.notional,
                           ncs.freq_months, ncs.day_count_foreign,
                           ncs.libor_fixings.get(ncs.foreign, {}), ncs.schedule.dates)
    return dom, fgn, ncs.start


@dataclass(frozen=True)
class ResidualFrn:
    """``(X(fx_date) - X(prev_fx_date)) * frn`` term of the NCS decomposition."""

    fx_date: Date
    prev_fx_date: Date
    frn: FloatingRateNote


def decompose_ncs_to_ccs_plus_frns(ncs: NonResettableCcs) -> tuple[ResettableCcs, list[ResidualFrn]]:
    ccs = ResettableCcs(ncs.domestic, ncs.foreign, ncs.start, ncs.end, ncs.spread_domestic,
                        ncs.spread_foreign, ncs.notional, ncs.freq_months, ncs.day_count_domestic,
                        ncs.day_count_foreign, ncs.libor_fixings, ncs.fx_fixings)
    points = ccs.schedule.all_dates
    fgn_fix = ncs.libor_fixings.get(ncs.foreign, {})
    residual = [
        ResidualFrn(points[i], points[i - 1],
                    FloatingRateNote(ncs.foreign, points[i], ncs.end, ncs.spread_foreign, ncs.notional,
                                     ncs.freq_months, ncs.day_count_foreign, fgn_fix,
                                     points[i + 1:]))
        for i in range(1, len(points) - 1)
    ]
    return ccs, residual
