"""Walk through one descending-clock auction, round by round.

Three bidders with different strategies compete for a 10-unit default-supply
obligation. The auctioneer lowers the price each round; offers may only
shrink, and a bidder that offers zero is out for good. When aggregate supply
first drops to (or below) the target, the auction closes. If it drops *below*
the target, the undershoot is resolved at the previous round's price by
prorating the last reductions back.

Run:  python3 demos/demo_auction_simulation.py
"""

from datetime import date

import numpy as np

from powerauctions import (ClockAuctionConfig, ConstantSupply, DeliveryPeriod,
                           StochasticShrink, ThresholdExit, run_descending_clock,
                           settle_cfd)
from powerauctions.market_data import MarketZone, SpotPriceSeries


def main():
    config = ClockAuctionConfig(
        target_quantity=10.0,
        opening_price=100.0,
        price_decrement=5.0,
        undershoot_policy="previous_price_prorata",
    )
    strategies = [
        ConstantSupply(4.0),                          # stays in at any price
        ThresholdExit(6.0, threshold=75.0, below_quantity=2.0),
        StochasticShrink(5.0, low=0.7, rng=np.random.default_rng(42)),
    ]
    outcome = run_descending_clock(config, strategies,
                                   bidder_ids=["steady", "threshold", "noisy"])

    print("round  price   offers                              aggregate")
    for entry in outcome.round_log:
        offers = "  ".join(f"{b}={q:5.2f}" for b, q in sorted(entry.offers.items()))
        print(f"{entry.round_no:>5}  {entry.announced_price:6.2f}  {offers}  {entry.aggregate:9.2f}")

    print()
    print(f"clearing price : {outcome.clearing_price:.2f}")
    print(f"rounds used    : {outcome.rounds_used}")
    print(f"undershoot     : {'resolved pro rata' if outcome.undershoot_resolved else 'none'}")
    for bidder, award in sorted(outcome.awards.items()):
        print(f"award {bidder:<9}: {award:.3f}")
    total = sum(outcome.awards.values())
    print(f"total awarded  : {total:.3f} (target {config.target_quantity})")

    # Settle the winning quantity as a quarterly contract for differences
    # against a toy spot path: the seller receives (auction - spot) each day.
    days = 10
    zone = MarketZone("OMEL", "ES")
    dates = tuple(date(2007, 7, 1 + i) for i in range(days))
    spot = SpotPriceSeries(zone=zone, dates=dates,
                           prices=np.linspace(60.0, 80.0, days))
    period = DeliveryPeriod(dates[0], dates[-1])
    flows = settle_cfd(outcome.clearing_price, spot, period, quantity=total)
    print()
    print("CfD settlement over a 10-day window (EUR):")
    for day, flow in flows[:3]:
        print(f"  {day}  {flow:10.2f}")
    print(f"  ...        net {sum(f for _, f in flows):10.2f}")


if __name__ == "__main__":
    main()
