from datetime import date, timedelta

import numpy as np
import pytest

from powerauctions import FuturesContractSeries, MarketZone, SpotPriceSeries


def daily_dates(start: date, n: int) -> tuple[date, ...]:
    return tuple(start + timedelta(days=i) for i in range(n))


def make_spot(prices, start=date(2007, 1, 1), zone=None) -> SpotPriceSeries:
    zone = zone or MarketZone("OMEL", "ES")
    return SpotPriceSeries(zone=zone, dates=daily_dates(start, len(prices)),
                           prices=np.asarray(prices, dtype=float))


def make_futures(volume, open_interest, settle=None, start=date(2007, 1, 1),
                 contract_id="FTBQ-1") -> FuturesContractSeries:
    n = len(volume)
    if settle is None:
        settle = np.full(n, 50.0)
    return FuturesContractSeries(
        contract_id=contract_id, zone=MarketZone("OMEL", "ES"),
        dates=daily_dates(start, n), settle=np.asarray(settle, float),
        volume=np.asarray(volume, float), open_interest=np.asarray(open_interest, float))


@pytest.fixture
def rng():
    return np.random.default_rng(20070619)


# one human-readable line per release criterion, filled in by test_acceptance.py
acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)
