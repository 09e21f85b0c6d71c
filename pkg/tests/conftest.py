import datetime as dt

import pytest

from xccy.calibration import build_curve_set
from xccy.marketdata import example_snapshot, example_trade, snapshot_from_dict

T0 = dt.date(2014, 1, 29)


def ladder(quotes, units="rate_decimal", **extra):
    return {"units": units, "quotes": [[t, v] for t, v in quotes], **extra}


def synthetic_dict(eur_ois=0.01, eur_libor=0.012, usd_ois=0.015, usd_libor=0.018, basis_bp=-5.0,
                   tenors=("1y", "2y", "3y", "5y"), spot=1.35, fx_forwards=None, date="2014-01-29",
                   deposits=None):
    """Flat-quote two-currency snapshot; callables give per-tenor levels."""

    def q(level):
        return [(t, level(t) if callable(level) else level) for t in tenors]

    cur = {
        "EUR": {"ois": ladder(q(eur_ois)), "libor": {"3m": ladder(q(eur_libor))}},
        "USD": {"ois": ladder(q(usd_ois)), "libor": {"3m": ladder(q(usd_libor))}},
    }
    if deposits:
        for ccy, quotes in deposits.items():
            cur[ccy]["deposits"] = ladder(quotes)
    pair = {"domestic": "EUR", "foreign": "USD", "spot": {"units": "fx_rate", "value": spot},
            "ccs_basis": ladder(q(basis_bp), units="spread_bp", spread_leg="EUR")}
    if fx_forwards is not None:
        pair["fx_forwards"] = ladder(fx_forwards, units="fx_rate")
    return {"schema_version": 1, "valuation_date": date, "currencies": cur, "pair": pair}


def synthetic_snapshot(**kw):
    return snapshot_from_dict(synthetic_dict(**kw))


@pytest.fixture(scope="session")
def snap():
    return example_snapshot()


@pytest.fixture(scope="session")
def curves(snap):
    return build_curve_set(snap, method="four-curve")


@pytest.fixture(scope="session")
def ccs10():
    return example_trade("ccs-10y")


@pytest.fixture(scope="session")
def ncs10():
    return example_trade("ncs-10y")
