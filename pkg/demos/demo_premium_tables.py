"""Rebuild the published 2007-2013 forward-premium tables from raw columns.

The package ships the raw auction results for the 28 Spanish CESUR products
and the 28 PJM-BGS zone-years. This script recomputes every premium from the
raw price columns and prints the per-year / per-zone averages alongside the
grand average, which is defined as the mean of the group means.

Run:  python3 demos/demo_premium_tables.py
"""

from powerauctions import (PremiumRow, cesur_premium, fmpi_premium,
                           monetary_impact, pjm_premium, yearly_aggregate)
from powerauctions.datasets import CESUR_AUCTIONS, PJM_AUCTIONS


def cesur_rows():
    rows = []
    for a in CESUR_AUCTIONS:
        premium, pct = cesur_premium(a.price, a.spot_avg)
        f_prem, f_pct = fmpi_premium(a.price, 0.0, a.fmpi)
        rows.append(PremiumRow(auction_ref=a.label, group=a.auction_date[:4],
                               auction_price=a.price, spot_avg=a.spot_avg,
                               costs=0.0, premium=premium, premium_pct=pct,
                               fmpi=a.fmpi, fmpi_premium=f_prem,
                               fmpi_premium_pct=f_pct))
    return rows


def pjm_rows():
    rows = []
    for a in PJM_AUCTIONS:
        premium, pct = pjm_premium(a.avg_price, a.costs, a.spot_avg)
        f_prem, f_pct = fmpi_premium(a.bgsfp_price, a.costs, a.fmpi)
        rows.append(PremiumRow(auction_ref=f"{a.year}-{a.zone}", group=a.zone,
                               auction_price=a.avg_price, spot_avg=a.spot_avg,
                               costs=a.costs, premium=premium, premium_pct=pct,
                               fmpi=a.fmpi, fmpi_premium=f_prem,
                               fmpi_premium_pct=f_pct))
    return rows


def print_report(title, report, pct_of="auction price"):
    print(title)
    print(f"{'group':<8}{'price':>9}{'spot':>9}{'premium':>9}{'pct':>8}"
          f"{'idx prem':>10}{'idx pct':>9}")
    for label in sorted(report.groups):
        g = report.groups[label]
        print(f"{label:<8}{g['auction_price']:9.2f}{g['spot_avg']:9.2f}"
              f"{g['premium']:9.2f}{100 * g['premium_pct']:7.2f}%"
              f"{g['fmpi_premium']:10.2f}{100 * g['fmpi_premium_pct']:8.2f}%")
    g = report.grand
    print(f"{'TOTAL':<8}{g['auction_price']:9.2f}{g['spot_avg']:9.2f}"
          f"{g['premium']:9.2f}{100 * g['premium_pct']:7.2f}%"
          f"{g['fmpi_premium']:10.2f}{100 * g['fmpi_premium_pct']:8.2f}%")
    print(f"(percentages over the {pct_of}; grand row = mean of group means)")
    print()


def main():
    print_report("CESUR fixed-quantity auctions, yearly averages (EUR/MWh)",
                 yearly_aggregate(cesur_rows()))
    print_report("PJM-BGS full-requirements auctions, zone averages (USD/MWh)",
                 yearly_aggregate(pjm_rows()),
                 pct_of="net-of-costs price (index premium: gross price)")

    # What does one percentage point of premium cost? A full-requirements MW
    # of obligation maps to roughly 2200 MWh of energy over its 3-year life.
    grand = yearly_aggregate(pjm_rows()).grand
    per_mw = monetary_impact(grand["fmpi_premium"], capacity_mw=1.0)
    print(f"average index premium of {grand['fmpi_premium']:.2f} USD/MWh "
          f"=> about {per_mw:,.0f} USD per MW of awarded obligation")


if __name__ == "__main__":
    main()
