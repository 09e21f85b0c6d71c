"""Calendar arithmetic, day counts, schedules and period indexers."""

from __future__ import annotations

import calendar
import datetime as dt
import enum
import re
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError, OutOfRangeError

Date = dt.date


class DayCount(enum.Enum):
    ACT_360 = "ACT/360"
    ACT_365F = "ACT/365F"
    THIRTY_360 = "30/360"

    @classmethod
    def parse(cls, text: str | "DayCount") -> "DayCount":
        if isinstance(text, DayCount):
            return text
        for member in cls:
            if member.value == text.upper():
                return member
        raise InputError(f"unknown day count {text!r}")


class Roll(enum.Enum):
    NONE = "none"
    MODIFIED_FOLLOWING = "modified-following"


def year_fraction(d1: Date, d2: Date, dc: DayCount = DayCount.ACT_360) -> float:
    if d1 > d2:
        raise OutOfRangeError(f"year_fraction requires d1 <= d2, got {d1} > {d2}")
    if dc is DayCount.ACT_360:
        return (d2 - d1).days / 360.0
    if dc is DayCount.ACT_365F:
        return (d2 - d1).days / 365.0
    # 30/360 bond basis
    day1 = min(d1.day, 30)
    day2 = 30 if (d2.day == 31 and day1 == 30) else d2.day
    days = 360 * (d2.year - d1.year) + 30 * (d2.month - d1.month) + (day2 - day1)
    return days / 360.0


def time_between(d1: Date, d2: Date) -> float:
    """Signed ACT/365F time, the common interpolation axis."""
    return (d2 - d1).days / 365.0


def add_months(d: Date, months: int) -> Date:
    y, m = divmod(d.month - 1 + months, 12)
    year, month = d.year + y, m + 1
    day = min(d.day, calendar.monthrange(year, month)[1])
    return dt.date(year, month, day)


_TENOR = re.compile(r"^\s*(\d+)\s*([mMyY])\s*$")


def tenor_months(tenor: str | int) -> int:
    """``'3m'`` -> 3, ``'10y'`` -> 120."""
    if isinstance(tenor, int):
        return tenor
    match = _TENOR.match(tenor)
    if not match:
        raise InputError(f"cannot parse tenor {tenor!r}")
    n = int(match.group(1))
    return n * 12 if match.group(2).lower() == "y" else n


def format_tenor(months: int) -> str:
    return f"{months // 12}y" if months % 12 == 0 else f"{months}m"


def parse_date(text: str | Date) -> Date:
    if isinstance(text, dt.date):
        return text
    try:
        return dt.date.fromisoformat(text)
    except (TypeError, ValueError) as exc:
        raise InputError(f"invalid date {text!r}") from exc


def _modified_following(d: Date, holidays: frozenset) -> Date:
    def is_business(x: Date) -> bool:
        return x.weekday() < 5 and x not in holidays

    out = d
    while not is_business(out):
        out += dt.timedelta(days=1)
    if out.month != d.month:
        out = d
        while not is_business(out):
            out -= dt.timedelta(days=1)
    return out


@dataclass(frozen=True)
class Schedule:
    """Anchor date plus ordered period end dates.

    ``dates[k-1]`` is the end of period ``k`` (1-based, as in the market and
    product indexers); ``fractions[k-1]`` is its accrual.
    """

    anchor: Date
    dates: tuple[Date, ...]
    fractions: tuple[float, ...]
    day_count: DayCount = DayCount.ACT_360
    freq_months: int = 3

    def __post_init__(self):
        prev = self.anchor
        for d in self.dates:
            if d <= prev:
                raise InputError("schedule dates must be strictly increasing")
            prev = d
        if len(self.fractions) != len(self.dates):
            raise InputError("one accrual fraction per period required")

    @classmethod
    def from_dates(cls, anchor: Date, dates: Sequence[Date], dc: DayCount = DayCount.ACT_360,
                   freq_months: int = 3) -> "Schedule":
        points = (anchor, *dates)
        fractions = tuple(year_fraction(a, b, dc) for a, b in zip(points[:-1], points[1:]))
        return cls(anchor, tuple(dates), fractions, dc, freq_months)

    @property
    def all_dates(self) -> tuple[Date, ...]:
        return (self.anchor, *self.dates)

    @property
    def end(self) -> Date:
        return self.dates[-1]

    def __len__(self) -> int:
        return len(self.dates)

    def periods(self) -> Iterable[tuple[Date, Date, float]]:
        points = self.all_dates
        return zip(points[:-1], points[1:], self.fractions)

    def sub_schedule(self, start: Date, end: Date | None = None) -> "Schedule":
        """Periods from schedule date ``start`` up to ``end`` (both on the grid)."""
        points = self.all_dates
        if start not in points:
            raise OutOfRangeError(f"{start} is not a schedule date")
        end = self.end if end is None else end
        if end not in points or end <= start:
            raise OutOfRangeError(f"{end} is not a schedule date after {start}")
        i, j = points.index(start), points.index(end)
        return Schedule(start, points[i + 1:j + 1], self.fractions[i:j], self.day_count,
                        self.freq_months)


def generate_schedule(anchor: Date, end: Date, freq_months: int = 3,
                      dc: DayCount = DayCount.ACT_360, roll: Roll = Roll.NONE,
                      holidays: Iterable[Date] = ()) -> Schedule:
    """Forward-generated schedule with a short final stub at ``end``."""
    if end <= anchor:
        raise OutOfRangeError(f"schedule end {end} must be after anchor {anchor}")
    if freq_months not in (1, 3, 6, 12):
        raise InputError(f"unsupported frequency {freq_months} months")
    raw: list[Date] = []
    k = 1
    while True:
        d = add_months(anchor, k * freq_months)
        if d >= end:
            raw.append(end)
            break
        raw.append(d)
        k += 1
    if roll is Roll.MODIFIED_FOLLOWING:
        hol = frozenset(holidays)
        rolled = []
        for d in raw:
            r = _modified_following(d, hol)
            if rolled and r <= rolled[-1]:
                continue
            rolled.append(r)
        raw = [r for r in rolled if r > anchor]
    return Schedule.from_dates(anchor, raw, dc, freq_months)


def period_index_at_or_beyond(schedule: Schedule, T: Date) -> int:
    """Smallest 1-based k with ``schedule.dates[k-1] >= T``."""
    if not (schedule.anchor < T <= schedule.end):
        raise OutOfRangeError(f"{T} outside schedule span ({schedule.anchor}, {schedule.end}]")
    return bisect_left(schedule.dates, T) + 1


def bracketing_dates(schedule: Schedule, T: Date) -> tuple[Date, Date]:
    k = period_index_at_or_beyond(schedule, T)
    points = schedule.all_dates
    return points[k - 1], points[k]
