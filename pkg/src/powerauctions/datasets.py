"""Published 2007-2013 default-supply auction results, keyed in by hand.

Two public datasets: the 28 CESUR baseload products auctioned on the Spanish
OMEL market (quarterly contracts-for-differences) and the 28 PJM-BGS
full-requirements results for New Jersey's four POLR zones. Prices are
EUR/MWh for CESUR and USD/MWh for PJM. Percentages below are the published
rounded values; tests recompute them from the raw columns.
"""

from __future__ import annotations

from typing import NamedTuple


class CesurAuction(NamedTuple):
    label: str          # auction number, "(k)" suffix for multi-product sessions
    auction_date: str   # ISO
    product: str
    price: float        # clearing price, EUR/MWh
    spot_avg: float     # average spot price over delivery, EUR/MWh
    premium: float      # published ex-post forward premium
    premium_pct: float  # published, percent
    fmpi: float         # matching quarterly futures price on auction day
    fmpi_premium: float
    fmpi_premium_pct: float


CESUR_AUCTIONS: tuple[CesurAuction, ...] = (
    CesurAuction("1", "2007-06-19", "Q3-07", 46.27, 36.45, 9.82, 21.22, 44.45, 1.82, 3.93),
    CesurAuction("2", "2007-09-18", "Q4-07", 38.45, 47.78, -9.33, -24.27, 38.58, -0.13, -0.34),
    CesurAuction("3", "2007-12-18", "Q1-08", 64.65, 65.85, -1.20, -1.86, 64.20, 0.45, 0.70),
    CesurAuction("4(1)", "2008-03-13", "Q2-08", 63.36, 56.92, 6.44, 10.16, 61.80, 1.56, 2.46),
    CesurAuction("4(2)", "2008-03-13", "Q2Q3-08", 63.73, 63.70, 0.03, 0.05, 61.80, 1.93, 3.03),
    CesurAuction("5(1)", "2008-06-17", "Q3-08", 65.15, 70.41, -5.26, -8.07, 64.50, 0.65, 1.00),
    CesurAuction("5(2)", "2008-06-17", "Q3Q4-08", 65.79, 67.53, -1.74, -2.64, 64.50, 1.29, 1.96),
    CesurAuction("6", "2008-09-25", "Q4-08", 72.49, 64.65, 7.84, 10.82, 72.55, -0.06, -0.08),
    CesurAuction("7", "2008-12-16", "Q1-09", 58.86, 43.10, 15.76, 26.78, 58.55, 0.31, 0.53),
    CesurAuction("8", "2009-03-26", "Q2-09", 36.58, 36.99, -0.41, -1.12, 36.10, 0.48, 1.31),
    CesurAuction("9(1)", "2009-06-25", "Q3-09", 42.00, 35.05, 6.95, 16.55, 41.25, 0.75, 1.79),
    CesurAuction("9(2)", "2009-06-25", "Q4-09", 45.67, 32.87, 12.80, 28.03, 44.25, 1.42, 3.11),
    CesurAuction("10(1)", "2009-12-15", "Q1-10", 39.43, 25.38, 14.05, 35.63, 39.10, 0.33, 0.84),
    CesurAuction("10(2)", "2009-12-15", "Q2-10", 40.49, 34.97, 5.52, 13.63, 39.10, 1.39, 3.43),
    CesurAuction("11", "2010-06-23", "Q3-10", 44.50, 44.07, 0.43, 0.97, 44.05, 0.45, 1.01),
    CesurAuction("12", "2010-09-21", "Q4-10", 46.94, 43.33, 3.61, 7.69, 46.83, 0.11, 0.23),
    CesurAuction("13", "2010-12-14", "Q1-11", 49.07, 45.22, 3.85, 7.85, 49.15, -0.08, -0.16),
    CesurAuction("14", "2011-03-22", "Q2-11", 51.79, 48.12, 3.67, 7.09, 51.35, 0.44, 0.85),
    CesurAuction("15", "2011-06-28", "Q3-11", 53.20, 54.23, -1.03, -1.94, 52.90, 0.30, 0.56),
    CesurAuction("16", "2011-09-27", "Q4-11", 57.99, 52.01, 5.98, 10.31, 57.95, 0.04, 0.07),
    CesurAuction("17", "2011-12-20", "Q1-12", 52.99, 50.64, 2.35, 4.43, 52.75, 0.24, 0.45),
    CesurAuction("18", "2012-03-21", "Q2-12", 51.00, 46.07, 4.93, 9.67, 50.75, 0.25, 0.49),
    CesurAuction("19", "2012-06-26", "Q3-12", 56.25, 49.09, 7.16, 12.73, 53.05, 3.20, 5.69),
    CesurAuction("20", "2012-09-25", "Q4-12", 49.25, 43.16, 6.09, 12.37, 49.34, -0.09, -0.18),
    CesurAuction("21", "2012-12-21", "Q1-13", 54.18, 40.34, 13.84, 25.54, 54.07, 0.11, 0.20),
    CesurAuction("22", "2013-03-20", "Q2-13", 45.41, 34.26, 11.15, 24.55, 45.25, 0.16, 0.35),
    CesurAuction("23", "2013-06-25", "Q3-13", 47.95, 49.81, -1.86, -3.88, 47.90, 0.05, 0.10),
    CesurAuction("24", "2013-09-24", "Q4-13", 47.58, 54.73, -7.15, -15.03, 47.55, 0.03, 0.06),
)

# published yearly averages: year -> (price, spot, premium, premium_pct, fmpi_prem, fmpi_pct)
CESUR_YEARLY_AVERAGES = {
    2007: (49.79, 50.03, -0.24, -1.63, 0.71, 1.43),
    2008: (64.90, 61.05, 3.85, 6.18, 0.95, 1.48),
    2009: (40.83, 33.05, 7.78, 18.54, 0.87, 2.10),
    2010: (46.84, 44.21, 2.63, 5.50, 0.16, 0.36),
    2011: (53.99, 51.25, 2.74, 4.97, 0.26, 0.48),
    2012: (52.67, 44.67, 8.01, 15.08, 0.87, 1.55),
    2013: (46.98, 46.27, 0.71, 1.88, 0.08, 0.17),
}
CESUR_GRAND_AVERAGE = (50.86, 47.22, 3.64, 7.22, 0.56, 1.08)


class PjmAuction(NamedTuple):
    year: int
    zone: str
    bgsfp_price: float   # 36-month auction price of that year's auction
    avg_price: float     # mean of the three auction prices applying to the year
    spot_avg: float      # average day-ahead price during delivery
    costs: float         # capacity + transmission + ancillary, USD/MWh
    premium: float       # published ex-post forward premium
    premium_pct: float
    fmpi: float          # 36-month on-peak futures strip value
    fmpi_premium: float
    fmpi_premium_pct: float


PJM_AUCTIONS: tuple[PjmAuction, ...] = (
    PjmAuction(2007, "ACE", 99.59, 90.02, 70.79, 11.34, 7.89, 10.02, 72.01, 16.24, 16.31),
    PjmAuction(2008, "ACE", 116.50, 106.69, 66.66, 15.01, 25.02, 27.29, 84.02, 17.47, 15.00),
    PjmAuction(2009, "ACE", 105.36, 107.15, 41.29, 17.44, 48.42, 53.97, 65.97, 21.95, 20.83),
    PjmAuction(2010, "ACE", 98.56, 106.81, 51.72, 18.03, 37.06, 41.74, 58.01, 22.52, 22.85),
    PjmAuction(2011, "ACE", 100.95, 101.62, 39.55, 15.73, 46.34, 53.96, 52.65, 32.57, 32.26),
    PjmAuction(2012, "ACE", 85.10, 94.87, 37.76, 14.51, 42.60, 53.01, 44.72, 25.87, 30.40),
    PjmAuction(2013, "ACE", 87.27, 91.11, 56.22, 16.56, 18.33, 24.58, 46.75, 23.96, 27.46),
    PjmAuction(2007, "PSEG", 98.88, 88.93, 72.41, 11.34, 5.18, 6.68, 72.01, 15.53, 15.71),
    PjmAuction(2008, "PSEG", 111.50, 104.30, 66.57, 15.01, 22.72, 25.44, 84.02, 12.47, 11.18),
    PjmAuction(2009, "PSEG", 103.72, 104.70, 41.72, 17.44, 45.54, 52.19, 65.97, 20.31, 19.58),
    PjmAuction(2010, "PSEG", 95.77, 103.66, 52.35, 18.03, 33.28, 38.86, 58.01, 19.73, 20.60),
    PjmAuction(2011, "PSEG", 94.30, 97.93, 39.66, 15.73, 42.54, 51.75, 52.65, 25.92, 27.49),
    PjmAuction(2012, "PSEG", 83.88, 91.32, 40.17, 14.51, 36.64, 47.70, 44.72, 24.65, 29.39),
    PjmAuction(2013, "PSEG", 92.18, 90.12, 60.12, 16.56, 13.44, 18.27, 46.75, 28.87, 31.32),
    PjmAuction(2007, "JCPL", 99.64, 88.59, 73.48, 11.34, 3.77, 4.88, 72.01, 16.29, 16.35),
    PjmAuction(2008, "JCPL", 114.09, 104.72, 65.19, 15.01, 24.52, 27.34, 84.02, 15.06, 13.20),
    PjmAuction(2009, "JCPL", 103.51, 105.75, 41.08, 17.44, 47.23, 53.48, 65.97, 20.10, 19.42),
    PjmAuction(2010, "JCPL", 95.17, 104.26, 51.66, 18.03, 34.57, 40.09, 58.01, 19.13, 20.10),
    PjmAuction(2011, "JCPL", 92.56, 97.08, 39.26, 15.73, 42.09, 51.74, 52.65, 24.18, 26.12),
    PjmAuction(2012, "JCPL", 81.76, 89.83, 38.03, 14.51, 37.29, 49.51, 44.72, 22.53, 27.56),
    PjmAuction(2013, "JCPL", 83.70, 86.01, 57.40, 16.56, 12.05, 17.36, 46.75, 20.39, 24.36),
    PjmAuction(2007, "RECO", 109.99, 97.64, 71.45, 11.34, 14.85, 17.20, 72.01, 26.64, 24.22),
    PjmAuction(2008, "RECO", 120.49, 113.87, 64.91, 15.01, 33.95, 34.34, 84.02, 21.46, 17.81),
    PjmAuction(2009, "RECO", 112.70, 114.39, 40.80, 17.44, 56.15, 57.91, 65.97, 29.29, 25.99),
    PjmAuction(2010, "RECO", 103.32, 112.17, 50.06, 18.03, 44.08, 46.82, 58.01, 27.28, 26.40),
    PjmAuction(2011, "RECO", 106.84, 107.62, 38.44, 15.73, 53.45, 58.16, 52.65, 38.46, 36.00),
    PjmAuction(2012, "RECO", 92.51, 100.89, 40.58, 14.51, 45.80, 53.03, 44.72, 33.28, 35.97),
    PjmAuction(2013, "RECO", 92.58, 97.31, 59.41, 16.56, 21.34, 26.43, 46.75, 29.27, 31.62),
)

# published zone averages: zone -> (premium, premium_pct, fmpi_premium, fmpi_premium_pct)
PJM_ZONE_AVERAGES = {
    "ACE": (32.24, 37.80, 22.94, 23.59),
    "PSEG": (28.48, 34.41, 21.07, 22.18),
    "JCPL": (28.79, 34.91, 19.67, 21.02),
    "RECO": (38.52, 41.99, 29.38, 28.29),
}
PJM_TOTAL_AVERAGE = (32.00, 37.28, 23.27, 23.77)
