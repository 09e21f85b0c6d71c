"""Market snapshots, trade files and quote-history files (versioned JSON).

Units are explicit in every ladder: ``rate_decimal``, ``spread_bp`` or
``fx_rate``. Spreads are stored in basis points on disk and as decimals in
memory.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

import jsonschema

from .curves import QuoteLadder
from .errors import InputError, SchemaError
from .instruments import FloatingRateNote, Instrument, NonResettableCcs, ResettableCcs
from .temporal import Date, DayCount, format_tenor, parse_date, tenor_months

SCHEMA_VERSION = 1
BP = 1e-4

_LADDER = {
    "type": "object",
    "required": ["units", "quotes"],
    "properties": {
        "units": {"enum": ["rate_decimal", "spread_bp", "fx_rate"]},
        "label": {"type": "string"},
        "reconstructed": {"type": "boolean"},
        "quotes": {
            "type": "array",
            "items": {"type": "array", "prefixItems": [{"type": "string"}, {"type": "number"}],
                      "minItems": 2, "maxItems": 2},
        },
    },
}

SNAPSHOT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "valuation_date", "currencies"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "valuation_date": {"type": "string", "format": "date"},
        "description": {"type": "string"},
        "reconstructed": {"type": "boolean"},
        "currencies": {
            "type": "object",
            "minProperties": 1,
            "additionalProperties": {
                "type": "object",
                "properties": {
                    "ois": _LADDER,
                    "libor": {"type": "object", "additionalProperties": _LADDER},
                    "tenor_basis": {
                        "type": "object",
                        "additionalProperties": {
                            "allOf": [_LADDER, {"required": ["base_tenor"],
                                                "properties": {"base_tenor": {"type": "string"}}}]
                        },
                    },
                    "deposits": _LADDER,
                },
            },
        },
        "pair": {
            "type": "object",
            "required": ["domestic", "foreign", "spot"],
            "properties": {
                "domestic": {"type": "string"},
                "foreign": {"type": "string"},
                "spot": {"type": "object", "required": ["units", "value"],
                         "properties": {"units": {"const": "fx_rate"},
                                        "value": {"type": "number", "exclusiveMinimum": 0}}},
                "fx_forwards": _LADDER,
                "ccs_basis": {"allOf": [_LADDER, {"required": ["spread_leg"],
                                                  "properties": {"spread_leg": {"type": "string"}}}]},
            },
        },
        "conventions": {"type": "object"},
    },
}


@dataclass(frozen=True)
class SwapConventions:
    fixed_freq_months: int = 12
    fixed_day_count: DayCount = DayCount.ACT_360
    float_freq_months: int = 3
    float_day_count: DayCount = DayCount.ACT_360
    deposit_day_count: DayCount = DayCount.ACT_360

    def to_dict(self) -> dict:
        return {"fixed_freq_months": self.fixed_freq_months,
                "fixed_day_count": self.fixed_day_count.value,
                "float_freq_months": self.float_freq_months,
                "float_day_count": self.float_day_count.value,
                "deposit_day_count": self.deposit_day_count.value}

    @classmethod
    def from_dict(cls, data: Mapping) -> "SwapConventions":
        out = cls()
        for key in ("fixed_freq_months", "float_freq_months"):
            if key in data:
                out = replace(out, **{key: int(data[key])})
        for key in ("fixed_day_count", "float_day_count", "deposit_day_count"):
            if key in data:
                out = replace(out, **{key: DayCount.parse(data[key])})
        return out


def ois_id(ccy: str) -> str:
    return f"ois:{ccy}"


def libor_id(ccy: str, tenor: int = 3) -> str:
    return f"libor{tenor}m:{ccy}"


def tenor_basis_id(ccy: str, tenor: int) -> str:
    return f"tenorbasis{tenor}m:{ccy}"


def depo_id(ccy: str) -> str:
    return f"depo:{ccy}"


def ccs_id(dom: str, fgn: str) -> str:
    return f"ccs:{dom}{fgn}"


def fxfwd_id(dom: str, fgn: str) -> str:
    return f"fxfwd:{dom}{fgn}"


@dataclass(frozen=True)
class MarketSnapshot:
    """All quotes for one valuation date, keyed by ladder id (``ois:EUR`` ...)."""

    valuation_date: Date
    currencies: tuple[str, ...]
    ladders: Mapping[str, QuoteLadder]
    conventions: Mapping[str, SwapConventions] = field(default_factory=dict)
    domestic: str | None = None
    foreign: str | None = None
    spot: float | None = None
    spread_leg: str | None = None
    reconstructed: bool = False
    description: str = ""

    @property
    def has_pair(self) -> bool:
        return self.domestic is not None

    def ladder(self, key: str) -> QuoteLadder:
        try:
            return self.ladders[key]
        except KeyError:
            raise InputError(f"snapshot has no {key} ladder") from None

    def get(self, key: str) -> QuoteLadder | None:
        return self.ladders.get(key)

    def convention(self, ccy: str) -> SwapConventions:
        return self.conventions.get(ccy, SwapConventions())

    def with_ladder(self, key: str, ladder: QuoteLadder) -> "MarketSnapshot":
        ladders = dict(self.ladders)
        ladders[key] = ladder
        return replace(self, ladders=ladders)

    def with_spot(self, spot: float) -> "MarketSnapshot":
        return replace(self, spot=spot)

    def libor_tenors(self, ccy: str) -> list[int]:
        pre, suf = "libor", f"m:{ccy}"
        return sorted(int(k[len(pre):-len(suf)]) for k in self.ladders if k.startswith(pre) and k.endswith(suf))

    def required_ladders(self, method: str) -> list[str]:
        """Ladders a method needs, for strict-mode checks before any numeric work."""
        if method == "fx-study":
            keys = []
            for ccy in (self.domestic, self.foreign):
                keys += [ois_id(ccy), libor_id(ccy), depo_id(ccy)]
            return keys + [ccs_id(self.domestic, self.foreign), fxfwd_id(self.domestic, self.foreign)]
        keys = []
        for ccy in self.currencies:
            keys += [ois_id(ccy), libor_id(ccy)]
        if self.has_pair:
            keys.append(ccs_id(self.domestic, self.foreign))
            if method == "decomposition":
                keys.append(fxfwd_id(self.domestic, self.foreign))
        return keys

    def check_complete(self, method: str) -> None:
        if method not in ("decomposition", "four-curve", "fx-study"):
            raise InputError(f"unknown method {method!r}")
        if method in ("four-curve", "fx-study") and not self.has_pair:
            raise InputError(f"method {method} needs a currency pair block")
        missing = [k for k in self.required_ladders(method) if k not in self.ladders]
        if missing:
            raise InputError(f"strict mode: missing ladders for {method}: {', '.join(missing)}")


def _ladder_from_json(node: Mapping, kind: str, ccy: str, path: str) -> QuoteLadder:
    units = node["units"]
    scale = BP if units == "spread_bp" else 1.0
    tenors, values = [], []
    seen = {}
    for tenor, value in node["quotes"]:
        m = tenor_months(tenor)
        if m in seen:
            raise InputError(f"{path}: duplicate maturity {tenor!r} (already given as {seen[m]!r})")
        seen[m] = tenor
        tenors.append(m)
        values.append(value * scale)
    if tenors != sorted(tenors):
        raise InputError(f"{path}: maturities not sorted")
    meta = {"units": units}
    for key in ("base_tenor", "spread_leg"):
        if key in node:
            meta[key] = node[key]
    return QuoteLadder(kind, tuple(tenors), tuple(values), ccy, node.get("label", ""),
                       bool(node.get("reconstructed", False)), meta)


def _ladder_to_json(ladder: QuoteLadder) -> dict:
    units = ladder.meta.get("units", "rate_decimal")
    out: dict[str, Any] = {"units": units}
    if ladder.label:
        out["label"] = ladder.label
    if ladder.reconstructed:
        out["reconstructed"] = True
    for key in ("base_tenor", "spread_leg"):
        if key in ladder.meta:
            out[key] = ladder.meta[key]
    if units == "spread_bp":
        quotes = [[format_tenor(t), round(v / BP, 10)] for t, v in ladder.items()]
    else:
        quotes = [[format_tenor(t), v] for t, v in ladder.items()]
    out["quotes"] = quotes
    return out


def snapshot_from_dict(data: Mapping) -> MarketSnapshot:
    try:
        jsonschema.validate(data, SNAPSHOT_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"snapshot schema violation at {where}: {exc.message}") from None
    val = parse_date(data["valuation_date"])
    ladders: dict[str, QuoteLadder] = {}
    currencies = tuple(data["currencies"])
    for ccy, block in data["currencies"].items():
        base = f"currencies/{ccy}"
        if "ois" in block:
            ladders[ois_id(ccy)] = _ladder_from_json(block["ois"], "ois", ccy, f"{base}/ois")
        for tenor, node in block.get("libor", {}).items():
            m = tenor_months(tenor)
            ladders[libor_id(ccy, m)] = _ladder_from_json(node, "par_swap", ccy, f"{base}/libor/{tenor}")
        for tenor, node in block.get("tenor_basis", {}).items():
            m = tenor_months(tenor)
            ladders[tenor_basis_id(ccy, m)] = _ladder_from_json(node, "tenor_basis", ccy,
                                                                f"{base}/tenor_basis/{tenor}")
        if "deposits" in block:
            ladders[depo_id(ccy)] = _ladder_from_json(block["deposits"], "deposit", ccy, f"{base}/deposits")
    conventions = {ccy: SwapConventions.from_dict(c)
                   for ccy, c in data.get("conventions", {}).items() if isinstance(c, Mapping)}
    kwargs: dict[str, Any] = {}
    pair = data.get("pair")
    if pair:
        dom, fgn = pair["domestic"], pair["foreign"]
        for ccy in (dom, fgn):
            if ccy not in currencies:
                raise InputError(f"pair references unknown currency {ccy!r}")
        kwargs.update(domestic=dom, foreign=fgn, spot=float(pair["spot"]["value"]))
        if "fx_forwards" in pair:
            ladders[fxfwd_id(dom, fgn)] = _ladder_from_json(pair["fx_forwards"], "fx_forward", dom + fgn,
                                                            "pair/fx_forwards")
        if "ccs_basis" in pair:
            node = pair["ccs_basis"]
            if node["spread_leg"] not in (dom, fgn):
                raise InputError(f"pair/ccs_basis/spread_leg: {node['spread_leg']!r} is not a pair currency")
            ladders[ccs_id(dom, fgn)] = _ladder_from_json(node, "ccs_basis", dom + fgn, "pair/ccs_basis")
            kwargs["spread_leg"] = node["spread_leg"]
    return MarketSnapshot(val, currencies, ladders, conventions, reconstructed=bool(data.get("reconstructed")),
                          description=data.get("description", ""), **kwargs)


def snapshot_to_dict(snap: MarketSnapshot) -> dict:
    currencies: dict[str, dict] = {}
    for ccy in snap.currencies:
        block: dict[str, Any] = {}
        if ois_id(ccy) in snap.ladders:
            block["ois"] = _ladder_to_json(snap.ladders[ois_id(ccy)])
        libor = {format_tenor(m): _ladder_to_json(snap.ladders[libor_id(ccy, m)]) for m in snap.libor_tenors(ccy)}
        if libor:
            block["libor"] = libor
        basis = {}
        for key, lad in snap.ladders.items():
            if key.startswith("tenorbasis") and key.endswith(f":{ccy}"):
                basis[format_tenor(int(key[len("tenorbasis"):-len(f"m:{ccy}")]))] = _ladder_to_json(lad)
        if basis:
            block["tenor_basis"] = basis
        if depo_id(ccy) in snap.ladders:
            block["deposits"] = _ladder_to_json(snap.ladders[depo_id(ccy)])
        currencies[ccy] = block
    out: dict[str, Any] = {"schema_version": SCHEMA_VERSION, "valuation_date": snap.valuation_date.isoformat()}
    if snap.description:
        out["description"] = snap.description
    if snap.reconstructed:
        out["reconstructed"] = True
    out["currencies"] = currencies
    if snap.has_pair:
        dom, fgn = snap.domestic, snap.foreign
        pair: dict[str, Any] = {"domestic": dom, "foreign": fgn,
                                "spot": {"units": "fx_rate", "value": snap.spot}}
        if fxfwd_id(dom, fgn) in snap.ladders:
            pair["fx_forwards"] = _ladder_to_json(snap.ladders[fxfwd_id(dom, fgn)])
        if ccs_id(dom, fgn) in snap.ladders:
            pair["ccs_basis"] = _ladder_to_json(snap.ladders[ccs_id(dom, fgn)])
        out["pair"] = pair
    if snap.conventions:
        out["conventions"] = {ccy: c.to_dict() for ccy, c in snap.conventions.items()}
    return out


def _read_json(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_snapshot(path, strict: bool = False, method: str = "decomposition") -> MarketSnapshot:
    snap = snapshot_from_dict(_read_json(path))
    if strict:
        snap.check_complete(method)
    return snap


def save_snapshot(snap: MarketSnapshot, path) -> None:
    Path(path).write_text(json.dumps(snapshot_to_dict(snap), indent=2) + "\n", encoding="utf-8")


def shipped_path(name: str) -> Path:
    return Path(str(resources.files("xccy") / "data" / name))


def example_snapshot() -> MarketSnapshot:
    """The 2014-01-29 EUR/USD snapshot shipped with the package."""
    return load_snapshot(shipped_path("snapshot-2014-01-29.json"))


# -- trades -------------------------------------------------------------------

def _fixings(node: Mapping) -> tuple[dict, dict]:
    libor = {ccy: {parse_date(d): float(v) for d, v in m.items()} for ccy, m in node.get("libor", {}).items()}
    fx = {parse_date(d): float(v) for d, v in node.get("fx", {}).items()}
    return libor, fx


def trade_from_dict(data: Mapping, snapshot: MarketSnapshot | None = None) -> Instrument:
    try:
        kind = data["kind"]
        start, end = parse_date(data["start"]), parse_date(data["end"])
        notional = float(data.get("notional", 1.0))
        legs = data["legs"]
    except KeyError as exc:
        raise SchemaError(f"trade file missing field {exc.args[0]!r}") from None
    libor, fx = _fixings(data.get("fixings", {}))

    def leg(name):
        node = legs[name]
        return (node["currency"], float(node.get("spread_bp", 0.0)) * BP, int(node.get("freq_months", 3)),
                DayCount.parse(node.get("day_count", "ACT/360")))

    if kind == "frn":
        ccy, spread, freq, dc = leg("domestic") if "domestic" in legs else leg("leg")
        instr: Instrument = FloatingRateNote(ccy, start, end, spread, notional, freq, dc, libor.get(ccy, {}))
        ccys = [ccy]
    elif kind in ("ccs", "ncs"):
        dccy, ds, dfreq, ddc = leg("domestic")
        fccy, fs, ffreq, fdc = leg("foreign")
        if dfreq != ffreq:
            raise InputError("both swap legs must share one payment frequency")
        cls = ResettableCcs if kind == "ccs" else NonResettableCcs
        instr = cls(dccy, fccy, start, end, ds, fs, notional, dfreq, ddc, fdc, libor, fx)
        ccys = [dccy, fccy]
    else:
        raise SchemaError(f"unknown trade kind {kind!r}")
    if snapshot is not None:
        for ccy in ccys:
            if ccy not in snapshot.currencies:
                raise InputError(f"trade references currency {ccy!r} absent from snapshot")
    return instr


def load_trade(path, snapshot: MarketSnapshot | None = None) -> Instrument:
    return trade_from_dict(_read_json(path), snapshot)


def example_trade(name: str) -> Instrument:
    """``'ccs-10y'`` or ``'ncs-10y'`` from the shipped data."""
    return load_trade(shipped_path(f"trade-{name}.json"))


# -- history ------------------------------------------------------------------

def load_history(path) -> list[MarketSnapshot]:
    data = _read_json(path)
    if data.get("schema_version") != SCHEMA_VERSION or "records" not in data:
        raise SchemaError(f"{path}: not a version-{SCHEMA_VERSION} history file")
    records = [snapshot_from_dict(r) for r in data["records"]]
    for a, b in zip(records[:-1], records[1:]):
        if b.valuation_date <= a.valuation_date:
            raise InputError(f"history dates not strictly increasing at {b.valuation_date}")
    return records


def save_history(records, path) -> None:
    payload = {"schema_version": SCHEMA_VERSION, "records": [snapshot_to_dict(r) for r in records]}
    Path(path).write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
