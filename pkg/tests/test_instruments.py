import datetime as dt
from collections import defaultdict

import pytest
from hypothesis import given, settings, strategies as st

from xccy.errors import FixingDataError, InputError
from xccy.instruments import (CashFlow, FloatingRateNote, NonResettableCcs, ResettableCcs, all_cash_flows,
                              decompose_ncs_to_ccs_plus_frns, decompose_ncs_to_frns, expand_cash_flows)
from xccy.temporal import add_months

BASE = dt.date(2014, 1, 29)


def net(flows, libor, fx, scale=1.0):
    out = defaultdict(float)
    for cf in flows:
        out[(cf.currency, cf.pay_date)] += scale * cf.realize(libor, fx)
    return out


def same(a, b, tol=1e-12):
    keys = set(a) | set(b)
    scale = max([1.0, *map(abs, a.values()), *map(abs, b.values())])
    return all(abs(a.get(k, 0.0) - b.get(k, 0.0)) <= tol * scale for k in keys)


@st.composite
def swap_and_path(draw):
    start = add_months(BASE, 3 * draw(st.integers(-8, 8)))
    end = add_months(start, 3 * draw(st.integers(1, 24)))
    notional = draw(st.floats(1e3, 1e9))
    sd, sf = draw(st.floats(-0.01, 0.01)), draw(st.floats(-0.01, 0.01))
    ncs = NonResettableCcs("EUR", "USD", start, end, sd, sf, notional)
    points = ncs.schedule.all_dates
    rate = st.floats(-0.01, 0.08)
    libor = {(c, d): draw(rate) for c in ("EUR", "USD") for d in points}
    fx = {d: draw(st.floats(0.8, 2.0)) for d in points}
    return ncs, libor, fx


@settings(max_examples=60, deadline=None)
@given(swap_and_path())
def test_ncs_equals_frn_minus_fx_scaled_frn(case):
    ncs, libor, fx = case
    dom, fgn, fix_date = decompose_ncs_to_frns(ncs)
    lhs = net(all_cash_flows(ncs), libor, fx)
    rhs = net(all_cash_flows(dom), libor, fx)
    for k, v in net(all_cash_flows(fgn), libor, fx, -fx[fix_date]).items():
        rhs[k] += v
    assert same(lhs, rhs)


@settings(max_examples=60, deadline=None)
@given(swap_and_path())
def test_ncs_equals_ccs_plus_fx_increment_frns(case):
    ncs, libor, fx = case
    ccs, terms = decompose_ncs_to_ccs_plus_frns(ncs)
    lhs = net(all_cash_flows(ncs), libor, fx)
    rhs = net(all_cash_flows(ccs), libor, fx)
    for term in terms:
        for k, v in net(all_cash_flows(term.frn), libor, fx, fx[term.fx_date] - fx[term.prev_fx_date]).items():
            rhs[k] += v
    assert same(lhs, rhs)


def test_resettable_leg_shape():
    ccs = ResettableCcs("EUR", "USD", BASE, add_months(BASE, 6), 0.0, 0.0, 100.0)
    fgn = [cf for cf in all_cash_flows(ccs) if cf.currency == "USD"]
    mid = add_months(BASE, 3)
    fx = {BASE: 1.3, mid: 1.4, add_months(BASE, 6): 1.5}
    libor = {("USD", BASE): 0.01, ("USD", mid): 0.02, ("EUR", BASE): 0.0, ("EUR", mid): 0.0}
    amounts = net(fgn, libor, fx)
    assert amounts[("USD", BASE)] == pytest.approx(-130.0)
    tau = (mid - BASE).days / 360
    # receive the reset notional back with its coupon, pay out the next reset notional
    assert amounts[("USD", mid)] == pytest.approx(130 * (1 + 0.01 * tau) - 140)


def test_expand_resolves_fixings_and_requires_past_ones():
    start = add_months(BASE, -3)
    ccs = ResettableCcs("EUR", "USD", start, add_months(BASE, 9), -5e-4, 0.0, 1e6,
                        libor_fixings={"EUR": {start: 0.003}, "USD": {start: 0.0024}},
                        fx_fixings={start: 1.36})
    flows = expand_cash_flows(ccs, BASE)
    assert min(cf.pay_date for cf in flows) == BASE
    started = [cf for cf in flows if cf.kind == "floating" and cf.fixing_start == start]
    assert {cf.rate for cf in started} == {0.003, 0.0024}
    assert all(cf.fx_fixing == 1.36 for cf in flows if cf.fx_reset == start)
    # fixings today are optional
    assert all(cf.rate is None for cf in flows if cf.kind == "floating" and cf.fixing_start == BASE)
    bad = ResettableCcs("EUR", "USD", start, add_months(BASE, 9), 0.0, 0.0, 1e6)
    with pytest.raises(FixingDataError):
        expand_cash_flows(bad, BASE)


def test_validation():
    with pytest.raises(InputError):
        ResettableCcs("EUR", "EUR", BASE, add_months(BASE, 3))
    with pytest.raises(InputError):
        FloatingRateNote("EUR", BASE, add_months(BASE, 3), notional=-1.0)
    with pytest.raises(InputError):
        CashFlow("EUR", BASE, 1.0, "swaption")
