"""Data model and CSV ingestion for spot prices, futures series, auctions and costs.

All domain objects are immutable after construction and validate their own
invariants, so loaders only have to parse and hand over. CSV files are UTF-8
with a header row, ISO-8601 dates and "." as decimal separator.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from datetime import date

import numpy as np

OMEL_ZONES = frozenset({"ES"})
PJM_ZONES = frozenset({"ACE", "JCPL", "PSEG", "RECO"})
MARKET_ZONES = {"OMEL": OMEL_ZONES, "PJM": PJM_ZONES}
MARKET_CURRENCY = {"OMEL": "EUR", "PJM": "USD"}

LOAD_SHAPES = ("baseload", "peak", "offpeak")
PRODUCT_KINDS = ("fixed_quantity", "full_requirements")

SPOT_HEADER = ["market", "zone", "date", "price"]
FUTURES_HEADER = ["contract_id", "market", "zone", "date", "settle", "volume", "open_interest"]
AUCTIONS_HEADER = [
    "market", "auction_id", "auction_date", "product_id", "delivery_start",
    "delivery_end", "load_shape", "product_kind", "clearing_price", "quantity",
    "start_bidders", "winning_bidders", "rounds",
]
COSTS_HEADER = ["market", "zone", "year", "unit_cost"]


class MarketDataError(ValueError):
    """Invalid market data: malformed file, broken invariant or bad value."""


@dataclass(frozen=True)
class MarketZone:
    market: str
    zone: str

    def __post_init__(self):
        if self.market not in MARKET_ZONES:
            raise MarketDataError(f"unknown market {self.market!r}")
        if self.zone not in MARKET_ZONES[self.market]:
            raise MarketDataError(
                f"zone {self.zone!r} does not belong to market {self.market!r}"
            )

    @property
    def currency(self) -> str:
        return MARKET_CURRENCY[self.market]


@dataclass(frozen=True)
class DeliveryPeriod:
    start: date
    end: date  # inclusive
    load_shape: str = "baseload"

    def __post_init__(self):
        if self.start > self.end:
            raise MarketDataError(f"delivery start {self.start} after end {self.end}")
        if self.load_shape not in LOAD_SHAPES:
            raise MarketDataError(f"unknown load shape {self.load_shape!r}")

    def days(self) -> list[date]:
        return [date.fromordinal(o) for o in range(self.start.toordinal(), self.end.toordinal() + 1)]


def _check_dated_observations(dates, what: str):
    prev = None
    for d in dates:
        if prev is not None:
            if d == prev:
                raise MarketDataError(f"duplicate date {d} in {what}")
            if d < prev:
                raise MarketDataError(f"non-monotone dates in {what}: {d} after {prev}")
        prev = d


@dataclass(frozen=True)
class SpotPriceSeries:
    zone: MarketZone
    dates: tuple[date, ...]
    prices: np.ndarray

    def __post_init__(self):
        if len(self.dates) != len(self.prices):
            raise MarketDataError("dates and prices length mismatch")
        _check_dated_observations(self.dates, "spot series")
        prices = np.asarray(self.prices, dtype=float)
        if prices.size and not np.all(np.isfinite(prices)):
            raise MarketDataError("non-finite spot price")
        object.__setattr__(self, "prices", prices)
        prices.setflags(write=False)

    def __len__(self) -> int:
        return len(self.dates)

    def price_on(self, day: date) -> float:
        try:
            return float(self.prices[self.dates.index(day)])
        except ValueError:
            raise MarketDataError(f"no spot price for {day}") from None


@dataclass(frozen=True)
class FuturesContractSeries:
    contract_id: str
    zone: MarketZone
    dates: tuple[date, ...]
    settle: np.ndarray
    volume: np.ndarray
    open_interest: np.ndarray

    def __post_init__(self):
        n = len(self.dates)
        arrays = {}
        for name in ("settle", "volume", "open_interest"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if len(arr) != n:
                raise MarketDataError(f"{name} length mismatch in {self.contract_id}")
            if arr.size and not np.all(np.isfinite(arr)):
                raise MarketDataError(f"non-finite {name} in {self.contract_id}")
            arrays[name] = arr
        _check_dated_observations(self.dates, f"futures {self.contract_id}")
        if np.any(arrays["volume"] < 0):
            raise MarketDataError(f"negative volume in {self.contract_id}")
        if np.any(arrays["open_interest"] < 0):
            raise MarketDataError(f"negative open interest in {self.contract_id}")
        for name, arr in arrays.items():
            object.__setattr__(self, name, arr)
            arr.setflags(write=False)

    def __len__(self) -> int:
        return len(self.dates)


@dataclass(frozen=True)
class AuctionRecord:
    market: str
    auction_id: int
    auction_date: date
    product_id: str
    delivery: DeliveryPeriod
    clearing_price: float
    quantity: float
    product_kind: str
    start_bidders: int
    winning_bidders: int
    rounds: int

    def __post_init__(self):
        if self.market not in MARKET_ZONES:
            raise MarketDataError(f"unknown market {self.market!r}")
        if self.product_kind not in PRODUCT_KINDS:
            raise MarketDataError(f"unknown product kind {self.product_kind!r}")
        if self.clearing_price <= 0:
            raise MarketDataError(f"clearing price must be positive, got {self.clearing_price}")
        if not (self.start_bidders >= self.winning_bidders >= 1):
            raise MarketDataError(
                f"bidder counts inconsistent: start {self.start_bidders}, winning {self.winning_bidders}"
            )
        if self.auction_date >= self.delivery.start:
            raise MarketDataError(
                f"auction date {self.auction_date} not before delivery start {self.delivery.start}"
            )


@dataclass(frozen=True)
class CostComponents:
    zone: MarketZone
    year: int
    unit_cost: float  # capacity + transmission + ancillary services, per MWh

    def __post_init__(self):
        if self.unit_cost < 0:
            raise MarketDataError(f"unit cost must be non-negative, got {self.unit_cost}")


# --- parsing helpers ---------------------------------------------------------


def _parse_date(text: str, lineno: int) -> date:
    try:
        return date.fromisoformat(text.strip())
    except ValueError:
        raise MarketDataError(f"line {lineno}: unparseable date {text!r}") from None


def _parse_float(text: str, lineno: int, what: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise MarketDataError(f"line {lineno}: unparseable {what} {text!r}") from None


def _parse_int(text: str, lineno: int, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise MarketDataError(f"line {lineno}: unparseable {what} {text!r}") from None


def _read_rows(path, expected_header: list[str]):
    """Yield (lineno, row) for data lines, checking the header first."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MarketDataError(f"{path}: missing header row") from None
        if [h.strip() for h in header] != expected_header:
            raise MarketDataError(
                f"{path}: header {header} does not match expected {expected_header}"
            )
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(expected_header):
                raise MarketDataError(
                    f"{path} line {lineno}: expected {len(expected_header)} fields, got {len(row)}"
                )
            rows.append((lineno, row))
    if not rows:
        warnings.warn(f"{path}: no data rows", stacklevel=3)
    return rows


def load_spot_csv(path, zone: MarketZone) -> SpotPriceSeries:
    """Load a spot-price CSV (``market,zone,date,price``) for one zone."""
    dates, prices = [], []
    for lineno, row in _read_rows(path, SPOT_HEADER):
        market, z, d, p = row
        if market.strip() != zone.market or z.strip() != zone.zone:
            raise MarketDataError(
                f"{path} line {lineno}: row for {market}/{z}, expected {zone.market}/{zone.zone}"
            )
        dates.append(_parse_date(d, lineno))
        prices.append(_parse_float(p, lineno, "price"))
    return SpotPriceSeries(zone=zone, dates=tuple(dates), prices=np.array(prices, dtype=float))


def load_spot_csv_multi(path) -> dict[MarketZone, SpotPriceSeries]:
    """Load a spot CSV that may carry several market zones in one file."""
    buckets: dict[MarketZone, list] = {}
    for lineno, row in _read_rows(path, SPOT_HEADER):
        market, z, d, p = (cell.strip() for cell in row)
        zone = MarketZone(market, z)
        buckets.setdefault(zone, []).append(
            (_parse_date(d, lineno), _parse_float(p, lineno, "price"))
        )
    return {
        zone: SpotPriceSeries(zone=zone, dates=tuple(r[0] for r in rows),
                              prices=np.array([r[1] for r in rows]))
        for zone, rows in buckets.items()
    }


def load_futures_csv(path) -> list[FuturesContractSeries]:
    """Load a futures CSV; returns one series per contract_id, in file order."""
    per_contract: dict[str, dict] = {}
    for lineno, row in _read_rows(path, FUTURES_HEADER):
        cid, market, z, d, settle, vol, oi = (cell.strip() for cell in row)
        zone = MarketZone(market, z)
        bucket = per_contract.setdefault(cid, {"zone": zone, "rows": []})
        if bucket["zone"] != zone:
            raise MarketDataError(f"{path} line {lineno}: contract {cid} changes zone")
        bucket["rows"].append((
            _parse_date(d, lineno),
            _parse_float(settle, lineno, "settle"),
            _parse_float(vol, lineno, "volume"),
            _parse_float(oi, lineno, "open_interest"),
        ))
    out = []
    for cid, bucket in per_contract.items():
        rows = bucket["rows"]
        out.append(FuturesContractSeries(
            contract_id=cid,
            zone=bucket["zone"],
            dates=tuple(r[0] for r in rows),
            settle=np.array([r[1] for r in rows]),
            volume=np.array([r[2] for r in rows]),
            open_interest=np.array([r[3] for r in rows]),
        ))
    return out


def load_auctions_csv(path) -> list[AuctionRecord]:
    """Load an auctions CSV.

    A single file row may describe several products of the same auction
    session: product_id, delivery_start, delivery_end, load_shape,
    clearing_price and quantity may each hold ";"-separated entries of equal
    count, and the row expands into that many records.
    """
    records = []
    for lineno, row in _read_rows(path, AUCTIONS_HEADER):
        (market, aid, adate, pid, dstart, dend, shape, kind, price, qty,
         sbid, wbid, rounds) = (cell.strip() for cell in row)
        multi = [pid.split(";"), dstart.split(";"), dend.split(";"),
                 shape.split(";"), price.split(";"), qty.split(";")]
        n = len(multi[0])
        if any(len(part) != n for part in multi):
            raise MarketDataError(
                f"{path} line {lineno}: multi-product fields have unequal counts"
            )
        if kind not in PRODUCT_KINDS:
            raise MarketDataError(f"{path} line {lineno}: unknown product kind {kind!r}")
        expected_kind = "fixed_quantity" if market == "OMEL" else "full_requirements"
        if market in MARKET_ZONES and kind != expected_kind:
            raise MarketDataError(
                f"{path} line {lineno}: market {market} expects product kind {expected_kind}"
            )
        for k in range(n):
            records.append(AuctionRecord(
                market=market,
                auction_id=_parse_int(aid, lineno, "auction_id"),
                auction_date=_parse_date(adate, lineno),
                product_id=multi[0][k],
                delivery=DeliveryPeriod(
                    start=_parse_date(multi[1][k], lineno),
                    end=_parse_date(multi[2][k], lineno),
                    load_shape=multi[3][k],
                ),
                clearing_price=_parse_float(multi[4][k], lineno, "clearing_price"),
                quantity=_parse_float(multi[5][k], lineno, "quantity"),
                product_kind=kind,
                start_bidders=_parse_int(sbid, lineno, "start_bidders"),
                winning_bidders=_parse_int(wbid, lineno, "winning_bidders"),
                rounds=_parse_int(rounds, lineno, "rounds"),
            ))
    return records


def load_costs_csv(path) -> list[CostComponents]:
    out = []
    seen = set()
    for lineno, row in _read_rows(path, COSTS_HEADER):
        market, z, year, cost = (cell.strip() for cell in row)
        key = (market, z, year)
        if key in seen:
            raise MarketDataError(f"{path} line {lineno}: duplicate cost row {key}")
        seen.add(key)
        out.append(CostComponents(
            zone=MarketZone(market, z),
            year=_parse_int(year, lineno, "year"),
            unit_cost=_parse_float(cost, lineno, "unit_cost"),
        ))
    return out


# --- writers (round-trip + normalized output) --------------------------------


def write_spot_csv(path, series: SpotPriceSeries) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(SPOT_HEADER)
        for d, p in zip(series.dates, series.prices):
            w.writerow([series.zone.market, series.zone.zone, d.isoformat(), repr(float(p))])


def write_futures_csv(path, series_list: list[FuturesContractSeries]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(FUTURES_HEADER)
        for s in series_list:
            for d, px, v, oi in zip(s.dates, s.settle, s.volume, s.open_interest):
                w.writerow([s.contract_id, s.zone.market, s.zone.zone,
                            d.isoformat(), repr(float(px)), repr(float(v)), repr(float(oi))])


def write_auctions_csv(path, records: list[AuctionRecord]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(AUCTIONS_HEADER)
        for r in records:
            w.writerow([
                r.market, r.auction_id, r.auction_date.isoformat(), r.product_id,
                r.delivery.start.isoformat(), r.delivery.end.isoformat(),
                r.delivery.load_shape, r.product_kind, repr(float(r.clearing_price)),
                repr(float(r.quantity)), r.start_bidders, r.winning_bidders, r.rounds,
            ])


def write_costs_csv(path, costs: list[CostComponents]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(COSTS_HEADER)
        for c in costs:
            w.writerow([c.zone.market, c.zone.zone, c.year, repr(float(c.unit_cost))])


# --- aggregation -------------------------------------------------------------


def average_price(series: SpotPriceSeries, period: DeliveryPeriod, mode: str = "strict") -> float:
    """Arithmetic mean of daily prices over the delivery period.

    mode="strict" requires every calendar day of the period to be present;
    mode="available" averages over whatever days the series holds.
    """
    if mode not in ("strict", "available"):
        raise ValueError(f"unknown mode {mode!r}")
    index = {d: i for i, d in enumerate(series.dates)}
    picked = []
    missing = []
    for day in period.days():
        i = index.get(day)
        if i is None:
            missing.append(day)
        else:
            picked.append(series.prices[i])
    if mode == "strict" and missing:
        raise MarketDataError(
            f"spot series missing {len(missing)} day(s) in delivery period, first {missing[0]}"
        )
    if not picked:
        raise MarketDataError("no spot observations inside delivery period")
    return float(np.mean(picked))
