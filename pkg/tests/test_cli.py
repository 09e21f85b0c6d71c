import csv
import io
import json

import pytest

from xccy.cli import main
from xccy.marketdata import save_history, snapshot_from_dict

from conftest import synthetic_dict


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def test_price_market_ccs_is_zero(capsys):
    code, out, _ = run(capsys, "price", "--trade", "ccs-10y", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert abs(data["npv"]) < 1e-6 and data["market_spread_bp"] == pytest.approx(-5.75)
    code, out, _ = run(capsys, "price", "--trade", "ccs-10y", "--method", "four-curve", "--format", "json")
    assert abs(json.loads(out)["npv"]) < 1e-6


def test_price_text_has_breakdown(capsys):
    code, out, _ = run(capsys, "price", "--trade", "ncs-10y", "--funding", "central:EUR")
    assert code == 0
    assert "funding=central:EUR" in out and "FX reset terms" in out


def test_risk_both_methods_gives_two_tables(capsys):
    code, out, _ = run(capsys, "risk", "--trade", "ncs-10y", "--method", "both", "--format", "csv", "--no-fx")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    headers = [i for i, r in enumerate(rows) if r[0] == "maturity"]
    assert len(headers) == 2 and len(rows) == 10
    assert rows[0] == ["maturity", "EO", "E3M", "FF", "U3M", "CCB"]
    assert [r[0] for r in rows[1:5]] == ["1y", "5y", "9y", "10y"]


def test_risk_bump_size_and_buckets(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, _, _ = run(capsys, "risk", "--trade", "ccs-10y", "--bump-bp", "2", "--buckets", "10y", "--format", "json",
                     "--no-fx", "-o", str(out_file))
    assert code == 0
    data = json.loads(out_file.read_text())
    assert [r["maturity"] for r in data["rows"]] == ["10y"]
    assert data["rows"][0]["CCB"] == pytest.approx(192, abs=25)


def test_bootstrap_zero_rates_gives_unit_dfs(capsys, tmp_path):
    snap = write(tmp_path, "zero.json", synthetic_dict(eur_ois=0.0, usd_ois=0.0, eur_libor=0.0, usd_libor=0.0,
                                                       basis_bp=0.0))
    code, out, _ = run(capsys, "bootstrap", "--snapshot", snap, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert all(v == 1.0 for ccy in ("EUR", "USD") for _, v in data["curves"][f"ois:{ccy}"])
    assert max(abs(v) for rows in data["residuals"].values() for _, v in rows) < 1e-12


def test_outputs_are_deterministic(capsys):
    first = run(capsys, "bootstrap", "--format", "csv")[1]
    again = run(capsys, "bootstrap", "--format", "csv")[1]
    assert first == again and first.startswith("section,curve,key,value\n")
    a = run(capsys, "risk", "--trade", "ncs-10y", "--buckets", "10y")[1]
    assert a == run(capsys, "risk", "--trade", "ncs-10y", "--buckets", "10y")[1]


def test_exit_codes(capsys, tmp_path):
    code, _, err = run(capsys, "price", "--trade", str(tmp_path / "nope.json"))
    assert code == 2 and err.startswith("error [input]")
    code, _, err = run(capsys, "price", "--trade", "ccs-10y", "--funding", "pooled")
    assert code == 2 and "configuration" in err
    bad = synthetic_dict()
    bad["schema_version"] = 9
    code, _, err = run(capsys, "bootstrap", "--snapshot", write(tmp_path, "v9.json", bad))
    assert code == 2 and "schema_version" in err
    code, _, err = run(capsys, "bootstrap", "--snapshot", write(tmp_path, "wild.json", synthetic_dict(basis_bp=1e6)))
    assert code == 3 and err.startswith("error [calibration]")
    long = {"kind": "ncs", "start": "2014-01-29", "end": "2044-01-29", "notional": 1.0,
            "legs": {"domestic": {"currency": "EUR"}, "foreign": {"currency": "USD"}}}
    code, _, err = run(capsys, "price", "--trade", write(tmp_path, "long.json", long))
    assert code == 4 and "extrapolation" in err


def test_strict_mode_fails_before_numerics(capsys, tmp_path):
    snap = write(tmp_path, "s.json", synthetic_dict())
    code, _, err = run(capsys, "price", "--snapshot", snap, "--trade", "ncs-10y", "--strict")
    assert code == 2 and "fxfwd:EURUSD" in err


def test_fx_study_command(capsys, tmp_path):
    recs = [snapshot_from_dict(synthetic_dict(date=d, fx_forwards=[("1y", 1.36)])) for d in ("2013-01-02", "2013-02-01")]
    path = tmp_path / "h.json"
    save_history(recs, path)
    code, out, _ = run(capsys, "fx-study", str(path), "--maturities", "1y")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "date,depo_1y,ois_1y,ccs_1y" and lines[1].startswith("2013-01-02,NA,")
