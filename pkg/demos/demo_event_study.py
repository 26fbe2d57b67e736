"""Event study of futures-market activity around auction dates.

Builds a synthetic futures contract whose volume spikes in the two trading
days before each auction while open interest barely moves -- the signature of
day-trading (speculative) activity rather than hedging. The script computes
the volume-to-open-interest ratio R1 and the volume-to-|change in open
interest| ratio R2, runs the event study on each, and tallies which side of
the market the significant offsets point to.

Run:  python3 demos/demo_event_study.py
"""

from datetime import date, timedelta

import numpy as np

from powerauctions import (event_study, r1_series, r2_series,
                           significance_tally, volume_series)
from powerauctions.market_data import FuturesContractSeries, MarketZone


def synthetic_contract(rng, n=400):
    dates = tuple(date(2007, 1, 2) + timedelta(days=i) for i in range(n))
    volume = rng.gamma(shape=8.0, scale=12.0, size=n)
    open_interest = 4000.0 + np.cumsum(rng.integers(-15, 16, size=n))
    # auction days every ~45 trading days, with a burst of churn just before
    positions = list(range(40, n - 10, 45))
    for p in positions:
        volume[p - 2] += 600.0
        volume[p - 1] += 900.0
    events = [dates[p] for p in positions]
    series = FuturesContractSeries(
        contract_id="FTB-Q", zone=MarketZone("OMEL", "ES"), dates=dates,
        settle=np.full(n, 50.0), volume=volume, open_interest=open_interest)
    return series, events


def show(measure_name, measure, events):
    results = event_study(measure, events, window=(-5, 5))
    print(f"{measure_name}: event study over {len(events)} auction dates")
    print("offset   event mean   baseline      t   sig")
    for r in results:
        flag = "**" if r.sig01 else ("*" if r.sig05 else "")
        print(f"{r.offset:>6} {r.event_mean:12.2f} {r.baseline_mean:10.2f}"
              f" {r.t_stat:6.2f}   {flag}")
    tally = significance_tally(results)
    print(f"significant at 5%: {tally.significant_positive} positive, "
          f"{tally.significant_negative} negative of {tally.total} "
          f"-> {tally.verdict}")
    print()


def main():
    rng = np.random.default_rng(7)
    contract, events = synthetic_contract(rng)

    show("raw volume", volume_series(contract), events)
    show("R1 = volume / open interest", r1_series(contract), events)

    r2 = r2_series(contract)
    print(f"R2 undefined on {len(r2.undefined_dates)} of {len(r2.dates)} days "
          "(first day and days with unchanged open interest are excluded)")
    show("R2 = volume / |change in open interest|", r2, events)


if __name__ == "__main__":
    main()
