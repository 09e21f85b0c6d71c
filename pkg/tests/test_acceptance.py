"""Acceptance criteria, one check each.

Every check prints a single ``PASS``/``FAIL`` line. Run under pytest, or
directly with ``python3 tests/test_acceptance.py`` for the summary alone.
"""

import datetime as dt
import random
import sys
import time
from collections import defaultdict
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from xccy.calibration import build_curve_set, bootstrap_forward_libor, bootstrap_ois, round_trip_residuals, \
    zero_basis_snapshot  # noqa: E402
from xccy.curves import QuoteLadder  # noqa: E402
from xccy.fx import fx_forward, fx_forward_scs  # noqa: E402
from xccy.instruments import (NonResettableCcs, ResettableCcs, all_cash_flows, decompose_ncs_to_ccs_plus_frns,
                              decompose_ncs_to_frns)  # noqa: E402
from xccy.marketdata import example_snapshot, example_trade, snapshot_from_dict  # noqa: E402
from xccy.pricer import direct_value, forward_ccs_fair_spread, forward_ccs_market_spread, \
    forward_ccs_scs_spread, npv, price_ccs, _market_grid  # noqa: E402
from xccy.risk import delta_ladder, fx_delta, fx_identity_gap  # noqa: E402
from xccy.study import fx_study  # noqa: E402
from xccy.temporal import add_months  # noqa: E402
from xccy.valuation import OWN, ValuationContext, central  # noqa: E402

from conftest import synthetic_dict  # noqa: E402
from oracles import LogLinear, fx_ccs_oracle, libor_oracle, ois_oracle  # noqa: E402

T0 = dt.date(2014, 1, 29)
N = 1e8
K = 1e3  # report unit
PILLARS = {"1y": 1.3543, "2y": 1.3610, "3y": 1.3741, "4y": 1.3928, "5y": 1.4143, "7y": 1.4589, "10y": 1.5145}
NONCCB = ("EO", "E3M", "FF", "U3M")


def _line(n, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"


# -- 1 ------------------------------------------------------------------------

def criterion_1():
    snap = example_snapshot()
    tic = time.perf_counter()
    cs = build_curve_set(snap, "four-curve")
    res = round_trip_residuals(snap, cs)
    elapsed = time.perf_counter() - tic
    worst = max(abs(v) for rows in res.values() for _, v in rows)
    kinds = sorted(k.split(":")[0] for k in res)
    ok = worst <= 1e-10 and elapsed < 1.0 and {"ois", "libor3m", "fxccs", "basis"} <= set(kinds)
    return ok, f"round trip max |npv|/notional {worst:.2e} over {kinds}, {elapsed:.2f}s"


# -- 2 ------------------------------------------------------------------------

def _random_swap(rng, last):
    s = add_months(T0, 3 * rng.randint(-4, 24))
    e = min(add_months(s, 3 * rng.randint(1, 40)), last)
    if e <= max(s, T0):
        e = add_months(max(s, T0), 3 * rng.randint(1, 4))
    cls = rng.choice([ResettableCcs, NonResettableCcs])
    past = [add_months(s, 3 * k) for k in range(8) if add_months(s, 3 * k) <= T0]
    libor = {c: {d: rng.uniform(0.001, 0.004) for d in past} for c in ("EUR", "USD")}
    fx = {d: rng.uniform(1.3, 1.4) for d in past}
    return cls("EUR", "USD", s, e, rng.uniform(-1e-3, 1e-3), rng.uniform(-1e-3, 1e-3), N, libor_fixings=libor,
               fx_fixings=fx)


def criterion_2():
    rng = random.Random(2)
    cs = build_curve_set(zero_basis_snapshot(example_snapshot()))
    # (a) both FX curves collapse onto cash and carry
    worst_a = 0.0
    for curve in (cs.fx, cs.fx_ccs):
        for _ in range(50):
            T = T0 + dt.timedelta(days=rng.randint(1, (curve.last_date - T0).days))
            worst_a = max(worst_a, abs(fx_forward(curve, T) / fx_forward_scs(curve, T) - 1))
    # (b) funding policy is irrelevant
    own, cen = ValuationContext(cs, OWN), ValuationContext(cs, central("EUR"))
    worst_b = 0.0
    for _ in range(20):
        swap = _random_swap(rng, add_months(T0, 120))
        a, b = npv(own, swap), npv(cen, swap)
        worst_b = max(worst_b, abs(a - b) / max(abs(a), abs(b)))
    # (c) the forward-spread error at market nodes is the node error itself, which vanishes
    grid = _market_grid(own)
    end = add_months(T0, 120)
    worst_c, exact = 0.0, True
    for m in [d for d in grid.all_dates if d < end]:
        r = forward_ccs_fair_spread(own, m, end)
        node = (forward_ccs_market_spread(grid, cs.ccs_quotes, cs.ois["EUR"], m, r.maturity)
                - forward_ccs_scs_spread(own, grid.sub_schedule(m, r.maturity)))
        exact &= r.error == node
        worst_c = max(worst_c, abs(r.error))
    ok = worst_a <= 1e-12 and worst_b <= 1e-10 and exact and worst_c <= 1e-15
    return ok, (f"(a) max rel FX gap {worst_a:.1e}; (b) max rel own/central gap {worst_b:.1e}; "
                f"(c) node errors {'equal' if exact else 'differ from'} direct evaluation, max |e| {worst_c:.1e}")


# -- 3 ------------------------------------------------------------------------

def criterion_3():
    cs = build_curve_set(example_snapshot())
    ctx = ValuationContext(cs)
    got = {t: ctx.fx_forward(add_months(T0, int(t[:-1]) * 12)) for t in PILLARS}
    ok = got == PILLARS
    return ok, f"fx_forward at pillar dates {'==' if ok else '!='} market listing {got}"


# -- 4, 5 ---------------------------------------------------------------------

_LADDERS = {}


def ladder(kind, method, policy=OWN):
    key = (kind, method, policy)
    if key not in _LADDERS:
        cs = build_curve_set(example_snapshot(), "four-curve")
        ctx = ValuationContext(cs, policy, method=method)
        tic = time.perf_counter()
        rep = delta_ladder(ctx, example_trade(f"{kind}-10y"), with_fx=False)
        _LADDERS[key] = rep, time.perf_counter() - tic
    return _LADDERS[key]


def criterion_4():
    rep, elapsed = ladder("ccs", "decomposition")
    leak = max(abs(rep.delta(b, c)) for b in rep.buckets for c in NONCCB) / K
    ccb = rep.delta("10y", "CCB") / K
    ok = leak <= 0.5 and 85 <= ccb <= 107 and elapsed < 5.0
    return ok, f"10y CCS: max |non-CCB delta| {leak:.3f}k, CCB 10y {ccb:.1f}k, ladder {elapsed:.2f}s"


def _pattern(rep, pos, neg, quiet):
    """Sign/shape of a 10y NCS ladder: quiet columns within 0.5k, the active pair
    visibly nonzero with opposite signs at 5y/9y/10y and +/- magnitudes in [10, 20]k at 10y."""
    problems = []
    for c in quiet:
        worst = max(abs(rep.delta(b, c)) for b in rep.buckets) / K
        if worst > 0.5:
            problems.append(f"{c} leaks {worst:.2f}k")
    for b in ("5y", "9y", "10y"):
        p, n = rep.delta(b, pos) / K, rep.delta(b, neg) / K
        if not (abs(p) >= 0.5 and abs(n) >= 0.5 and p * n < 0):
            problems.append(f"{b} {pos}/{neg} = {p:.2f}/{n:.2f}k")
    p, n = rep.delta("10y", pos) / K, rep.delta("10y", neg) / K
    if not (10 <= p <= 20 and -20 <= n <= -10):
        problems.append(f"10y {pos}/{neg} = {p:.2f}/{n:.2f}k outside +/-[10, 20]k")
    return problems


def criterion_5():
    own, _ = ladder("ncs", "decomposition")
    four, _ = ladder("ncs", "four-curve")
    p_own = _pattern(own, "FF", "U3M", ("EO", "E3M"))
    p_four = _pattern(four, "EO", "E3M", ("FF", "U3M"))
    detail = (f"own funding FF/U3M 10y {own.delta('10y', 'FF') / K:.2f}/{own.delta('10y', 'U3M') / K:.2f}k "
              f"[{'ok' if not p_own else '; '.join(p_own)}]; four-curve EO/E3M 10y "
              f"{four.delta('10y', 'EO') / K:.2f}/{four.delta('10y', 'E3M') / K:.2f}k "
              f"[{'ok' if not p_four else '; '.join(p_four)}]")
    return not p_own and not p_four, detail


# -- 6 ------------------------------------------------------------------------

def criterion_6():
    cs = build_curve_set(example_snapshot(), "four-curve")
    instruments = [example_trade("ccs-10y"), example_trade("ncs-10y"),
                   NonResettableCcs("EUR", "USD", add_months(T0, 24), add_months(T0, 84), -3e-4, 1e-4, N),
                   ResettableCcs("EUR", "USD", add_months(T0, 12), add_months(T0, 60), 2e-4, 0.0, N)]
    contexts = [ValuationContext(cs), ValuationContext(cs, central("EUR")), ValuationContext(cs, central("USD")),
                ValuationContext(cs, method="four-curve")]
    worst = 0.0
    for ctx in contexts:
        for instr in instruments:
            d_f, d_d = fx_delta(ctx, instr)
            worst = max(worst, fx_identity_gap(d_f, d_d, npv(ctx, instr) * ctx.spot, ctx.spot))
    ncs = example_trade("ncs-10y")
    own = fx_delta(ValuationContext(cs), ncs)[0] / K
    eur = fx_delta(ValuationContext(cs, central("EUR")), ncs)[0] / K
    ok = worst <= 1e-8 and abs(own / 3417 - 1) <= 0.15 and abs(eur / 1906 - 1) <= 0.15
    return ok, (f"identity gap {worst:.1e} over {len(contexts) * len(instruments)} cases; NCS 10y delta USD "
                f"{own:,.0f}k own ({own / 3417 - 1:+.1%}), {eur:,.0f}k EUR-funded ({eur / 1906 - 1:+.1%})")


# -- 7 ------------------------------------------------------------------------

def _net(flows, libor, fx, scale=1.0, out=None):
    out = defaultdict(float) if out is None else out
    for cf in flows:
        out[(cf.currency, cf.pay_date)] += scale * cf.realize(libor, fx)
    return out


def _same(a, b):
    scale = max([1.0, *map(abs, a.values()), *map(abs, b.values())])
    return all(abs(a.get(k, 0.0) - b.get(k, 0.0)) <= 1e-12 * scale for k in set(a) | set(b))


PILLAR_MONTHS = (12, 24, 36, 48, 60, 84, 120, 180, 240)


def criterion_7():
    rng = random.Random(7)
    cs = build_curve_set(example_snapshot())
    ctx = ValuationContext(cs, central("EUR"), fx_source="ccs")
    tic = time.perf_counter()
    payoff_ok, worst = True, 0.0
    for i in range(200):
        # payoff identities on arbitrary schedules and fixing paths
        start = add_months(T0, 3 * rng.randint(-8, 40))
        ncs = NonResettableCcs("EUR", "USD", start, add_months(start, 3 * rng.randint(1, 40)),
                               rng.uniform(-0.01, 0.01), rng.uniform(-0.01, 0.01), rng.uniform(1e3, 1e9))
        pts = ncs.schedule.all_dates
        libor = {(c, d): rng.uniform(-0.01, 0.08) for c in ("EUR", "USD") for d in pts}
        fx = {d: rng.uniform(0.8, 2.0) for d in pts}
        lhs = _net(all_cash_flows(ncs), libor, fx)
        dom, fgn, fix = decompose_ncs_to_frns(ncs)
        rhs = _net(all_cash_flows(fgn), libor, fx, -fx[fix], _net(all_cash_flows(dom), libor, fx))
        ccs, terms = decompose_ncs_to_ccs_plus_frns(ncs)
        rhs2 = _net(all_cash_flows(ccs), libor, fx)
        for t in terms:
            _net(all_cash_flows(t.frn), libor, fx, fx[t.fx_date] - fx[t.prev_fx_date], rhs2)
        payoff_ok &= _same(lhs, rhs) and _same(lhs, rhs2)
        # pricing: market-grid start (today, a later pillar, or seasoned with a reset today), pillar end
        kind = i % 3
        if kind == 0:
            s = T0
        elif kind == 1:
            s = add_months(T0, rng.choice(PILLAR_MONTHS[:6]))
        else:
            s = add_months(T0, -3 * rng.randint(1, 8))
        e = add_months(T0, rng.choice([m for m in PILLAR_MONTHS if add_months(T0, m) > s]))
        past = [d for d in (add_months(s, 3 * k) for k in range(40)) if d < T0]
        swap = ResettableCcs("EUR", "USD", s, e, rng.uniform(-30, 30) * 1e-4, rng.uniform(-30, 30) * 1e-4, N,
                             libor_fixings={c: {d: rng.uniform(0.001, 0.004) for d in past} for c in ("EUR", "USD")},
                             fx_fixings={d: rng.uniform(1.3, 1.4) for d in past})
        worst = max(worst, abs(price_ccs(ctx, swap).npv - direct_value(ctx, swap)) / N)
    elapsed = time.perf_counter() - tic
    ok = payoff_ok and worst <= 1e-10 and elapsed < 10.0
    return ok, (f"payoff identities {'hold' if payoff_ok else 'FAIL'} on 200 paths; price_ccs vs direct "
                f"max gap {worst:.1e} of notional; {elapsed:.2f}s")


# -- 8 ------------------------------------------------------------------------

def criterion_8():
    rng = random.Random(8)
    worst = 0.0
    for _ in range(10):
        months = sorted(rng.sample([3, 6, 9, 12, 18, 24, 36], 3))
        ois_q = [rng.uniform(-0.005, 0.05) for _ in months]
        curve = bootstrap_ois(QuoteLadder("ois", tuple(months), tuple(ois_q), "EUR"), T0)
        worst = max(worst, *(abs(x - y) for x, y in zip(curve.dfs, ois_oracle(T0, months, ois_q)[1])))
        yearly = [12 * k for k in sorted(rng.sample([1, 2, 3], rng.randint(1, 3)))]
        flat = [rng.uniform(0.0, 0.04) for _ in yearly]
        disc = bootstrap_ois(QuoteLadder("ois", tuple(yearly), tuple(flat), "EUR"), T0)
        par = [r + rng.uniform(0.0, 0.004) for r in flat]
        proj = bootstrap_forward_libor(QuoteLadder("par_swap", tuple(yearly), tuple(par), "EUR"), disc)
        ll = LogLinear(T0, disc.dates, disc.dfs)
        worst = max(worst, *(abs(x - y) for x, y in zip(proj.pseudo_dfs, libor_oracle(T0, yearly, par, ll)[1])))
    tenors = ("1y", "2y", "3y")
    basis = [rng.uniform(-20, 20) for _ in tenors]
    snap = snapshot_from_dict(synthetic_dict(tenors=tenors, basis_bp=lambda t: basis[tenors.index(t)]))
    cs = build_curve_set(snap)
    ll = {c: LogLinear(T0, k.dates, k.dfs) for c, k in cs.ois.items()}
    pl = {c: LogLinear(T0, k.dates, k.pseudo_dfs) for (c, _), k in cs.libor.items()}
    xs = fx_ccs_oracle(T0, [12, 24, 36], [b * 1e-4 for b in basis], snap.spot, ll["EUR"], ll["USD"], pl["EUR"],
                       pl["USD"])[1]
    worst = max(worst, *(abs(x - y) for x, y in zip(cs.fx_ccs.pillar_rates, xs)))
    # straight-line FX error oracle on the shipped curve
    fx = build_curve_set(example_snapshot()).fx
    nodes = [(0.0, 0.0)] + [((d - T0).days / 365, x - fx.scs(d)) for d, x in zip(fx.pillar_dates, fx.pillar_rates)]
    worst_fx = 0.0
    for _ in range(200):
        days = rng.randint(1, (fx.last_date - T0).days)
        t = days / 365
        for (t1, e1), (t2, e2) in zip(nodes[:-1], nodes[1:]):
            if t1 <= t <= t2:
                line = e1 + (e2 - e1) * (t - t1) / (t2 - t1)
                break
        worst_fx = max(worst_fx, abs(fx.error(T0 + dt.timedelta(days=days)) - line))
    ok = worst <= 1e-10 and worst_fx <= 1e-14
    return ok, f"bootstrap vs bisection oracles max gap {worst:.1e}; FX error vs straight line {worst_fx:.1e}"


# -- 9 ------------------------------------------------------------------------

def _history_record(date, gap_bp):
    kw = dict(date=date, eur_ois=0.004, usd_ois=0.003, eur_libor=0.006, usd_libor=0.0055, basis_bp=-6.0)
    cs = build_curve_set(snapshot_from_dict(synthetic_dict(**kw)))
    T = add_months(cs.valuation_date, 12)
    return snapshot_from_dict(synthetic_dict(**kw, fx_forwards=[("1y", cs.fx_ccs.forward(T) + gap_bp * 1e-4)]))


def criterion_9():
    dates = ("2013-03-01", "2013-06-03", "2013-09-02")
    flat = [r["ccs_1y"] for r in fx_study([_history_record(d, 0.0) for d in dates])]
    gap = [r["ccs_1y"] for r in fx_study([_history_record(d, 5.0) for d in dates[:2]])]
    ok = flat == [0.0] * 3 and all(abs(g - 5.0) <= 1e-9 for g in gap)
    return ok, f"self-consistent CCS series {flat} bp; planted gap reported as {gap} bp"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9]


@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 10)])
def test_acceptance(check, capsys):
    ok, detail = check()
    line = _line(check.__name__.split("_")[1], ok, detail)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for check in CRITERIA:
        ok, detail = check()
        failed += not ok
        print(_line(check.__name__.split("_")[1], ok, detail), flush=True)
    sys.exit(1 if failed else 0)
