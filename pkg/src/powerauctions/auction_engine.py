"""Simultaneous descending-clock auction engine and settlement calculators.

The clock auction lowers an announced price each round; bidders may keep or
reduce (never raise) their offered quantity and cannot re-enter once they
offer zero. The auction closes in the first round where aggregate supply no
longer exceeds the target. An exact match clears at that round's price with
offers awarded as bid; an undershoot clears at the previous round's price
with the final-round reductions partially restored so awards sum exactly to
the target.

Settlement side: fixed-quantity contracts settle as daily contracts for
differences against spot, full-requirements contracts pay the auction price
times a seasonal factor on realized load.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from typing import Callable, Protocol

import numpy as np


class AuctionError(RuntimeError):
    """Auction cannot proceed: bad configuration or no feasible close."""


@dataclass(frozen=True)
class ClockAuctionConfig:
    target_quantity: float
    opening_price: float
    price_decrement: float = 1.0
    # optional explicit schedule round -> price; overrides the fixed tick
    price_schedule: Callable[[int], float] | None = None
    max_rounds: int = 1000
    undershoot_policy: str = "previous_price_prorata"  # or previous_price_priority

    def __post_init__(self):
        if self.target_quantity <= 0:
            raise AuctionError("target quantity must be positive")
        if self.opening_price <= 0:
            raise AuctionError("opening price must be positive")
        if self.price_schedule is None and self.price_decrement <= 0:
            raise AuctionError("price decrement must be positive")
        if self.undershoot_policy not in ("previous_price_prorata", "previous_price_priority"):
            raise AuctionError(f"unknown undershoot policy {self.undershoot_policy!r}")

    def price_for_round(self, round_no: int) -> float:
        if self.price_schedule is not None:
            return float(self.price_schedule(round_no))
        return self.opening_price - (round_no - 1) * self.price_decrement


@dataclass
class BidderState:
    bidder_id: str
    last_offered_quantity: float
    active: bool = True


class Strategy(Protocol):
    def offer(self, round_no: int, announced_price: float, state: BidderState,
              aggregate_info: dict) -> float: ...


@dataclass
class ConstantSupply:
    """Offers a fixed quantity at any price."""
    quantity: float

    def offer(self, round_no, announced_price, state, aggregate_info):
        return self.quantity


@dataclass
class ThresholdExit:
    """Offers `quantity` while price >= threshold, then `below_quantity`."""
    quantity: float
    threshold: float
    below_quantity: float = 0.0

    def offer(self, round_no, announced_price, state, aggregate_info):
        return self.quantity if announced_price >= self.threshold else self.below_quantity


@dataclass
class StochasticExit:
    """Offers `quantity` until a per-round coin flip sends it to zero."""
    quantity: float
    exit_probability: float
    rng: np.random.Generator = field(default_factory=np.random.default_rng)
    _exited: bool = False

    def offer(self, round_no, announced_price, state, aggregate_info):
        if not self._exited and round_no > 1 and self.rng.random() < self.exit_probability:
            self._exited = True
        return 0.0 if self._exited else self.quantity


@dataclass
class StochasticShrink:
    """Multiplies its offer by a random factor in [low, 1] each round."""
    quantity: float
    low: float = 0.5
    rng: np.random.Generator = field(default_factory=np.random.default_rng)

    def offer(self, round_no, announced_price, state, aggregate_info):
        if round_no == 1:
            return self.quantity
        return state.last_offered_quantity * self.rng.uniform(self.low, 1.0)


@dataclass(frozen=True)
class RoundLogEntry:
    round_no: int
    announced_price: float
    offers: dict[str, float]
    aggregate: float
    clamped: tuple[str, ...] = ()


@dataclass(frozen=True)
class AuctionOutcome:
    clearing_price: float
    awards: dict[str, float]
    rounds_used: int
    round_log: tuple[RoundLogEntry, ...]
    undershoot_resolved: bool = False


def _resolve_undershoot(config, prev_offers, final_offers, order):
    """Clear at the previous round's price, restoring final-round reductions.

    prorata: every bidder's reduction is scaled by the common factor that
    makes awards sum to the target. priority: reductions are restored whole,
    in descending previous-offer order (ties by bidder id), the last one
    partially.
    """
    target = config.target_quantity
    shortfall = target - sum(final_offers.values())
    reductions = {b: prev_offers[b] - final_offers[b] for b in order}
    total_reduction = sum(reductions.values())
    awards = dict(final_offers)
    if config.undershoot_policy == "previous_price_prorata":
        scale = shortfall / total_reduction
        for b in order:
            awards[b] = final_offers[b] + reductions[b] * scale
    else:
        remaining = shortfall
        by_priority = sorted(order, key=lambda b: (-prev_offers[b], b))
        for b in by_priority:
            give = min(reductions[b], remaining)
            awards[b] = final_offers[b] + give
            remaining -= give
            if remaining <= 0:
                break
    # exact conservation regardless of float rounding above
    drift = target - sum(awards.values())
    if awards:
        largest = max(awards, key=lambda b: (awards[b], b))
        awards[largest] += drift
    return {b: q for b, q in awards.items() if q > 0}


def run_descending_clock(config: ClockAuctionConfig, strategies: list[Strategy],
                         bidder_ids: list[str] | None = None) -> AuctionOutcome:
    """Run one deterministic descending-clock auction.

    Offers above a bidder's previous quantity are clamped (and logged), a
    zero offer retires the bidder permanently, and the returned awards always
    sum exactly to the target quantity.
    """
    if not strategies:
        raise AuctionError("at least one strategy required")
    if bidder_ids is None:
        bidder_ids = [f"B{i + 1}" for i in range(len(strategies))]
    if len(bidder_ids) != len(set(bidder_ids)):
        raise AuctionError("bidder ids must be unique")
    states = {b: BidderState(bidder_id=b, last_offered_quantity=float("inf"))
              for b in bidder_ids}
    log: list[RoundLogEntry] = []
    prev_offers: dict[str, float] | None = None
    prev_price = None

    for round_no in range(1, config.max_rounds + 1):
        price = config.price_for_round(round_no)
        if prev_price is not None and price >= prev_price:
            raise AuctionError(
                f"announced prices must strictly decrease (round {round_no}: {price} >= {prev_price})"
            )
        offers: dict[str, float] = {}
        clamped = []
        aggregate_info = {"round": round_no, "price": price,
                          "previous_aggregate": log[-1].aggregate if log else None}
        for b, strat in zip(bidder_ids, strategies):
            state = states[b]
            if not state.active:
                offers[b] = 0.0
                continue
            q = float(strat.offer(round_no, price, state, aggregate_info))
            if q < 0:
                q = 0.0
                clamped.append(b)
            if q > state.last_offered_quantity:
                q = state.last_offered_quantity
                clamped.append(b)
            if q == 0.0:
                state.active = False
            state.last_offered_quantity = q
            offers[b] = q
        aggregate = sum(offers.values())
        log.append(RoundLogEntry(round_no=round_no, announced_price=price,
                                 offers=dict(offers), aggregate=aggregate,
                                 clamped=tuple(clamped)))
        if round_no == 1 and aggregate < config.target_quantity:
            raise AuctionError(
                f"undersubscribed at opening: aggregate {aggregate} < target {config.target_quantity}"
            )
        if aggregate == config.target_quantity:
            awards = {b: q for b, q in offers.items() if q > 0}
            return AuctionOutcome(clearing_price=price, awards=awards,
                                  rounds_used=round_no, round_log=tuple(log))
        if aggregate < config.target_quantity:
            awards = _resolve_undershoot(config, prev_offers, offers, bidder_ids)
            return AuctionOutcome(clearing_price=prev_price, awards=awards,
                                  rounds_used=round_no, round_log=tuple(log),
                                  undershoot_resolved=True)
        prev_offers = offers
        prev_price = price
    raise AuctionError(
        f"max rounds ({config.max_rounds}) exhausted without closing; "
        f"final aggregate {log[-1].aggregate} vs target {config.target_quantity}"
    )


# --- settlement --------------------------------------------------------------


@dataclass(frozen=True)
class SeasonalPayoutFactors:
    summer_factor: float = 1.2
    winter_factor: float = 0.9
    summer_months: frozenset[int] = frozenset({6, 7, 8, 9})

    def __post_init__(self):
        if self.summer_factor <= 0 or self.winter_factor <= 0:
            raise ValueError("payout factors must be positive")

    def factor_for(self, day: date) -> float:
        return self.summer_factor if day.month in self.summer_months else self.winter_factor


def settle_cfd(auction_price: float, spot, period, quantity: float,
               hours_per_day: int = 24) -> list[tuple[date, float]]:
    """Daily contract-for-differences cash flows over the delivery period.

    Positive flows favour the winning bidder (seller): it receives the
    auction price and pays out spot.
    """
    flows = []
    for day in period.days():
        spot_price = spot.price_on(day)  # raises if missing
        flows.append((day, (auction_price - spot_price) * quantity * hours_per_day))
    return flows


def full_requirements_payout(auction_price: float, load: list[tuple[date, float]],
                             factors: SeasonalPayoutFactors) -> list[tuple[date, float]]:
    """Daily payout = auction price x seasonal factor x MWh of load served."""
    flows = []
    for day, mwh in load:
        if mwh < 0:
            raise ValueError(f"negative load {mwh} on {day}")
        flows.append((day, auction_price * factors.factor_for(day) * mwh))
    return flows
