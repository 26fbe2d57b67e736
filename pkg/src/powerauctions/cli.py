"""Command-line entry point wiring ingestion, simulation and analytics.

Exit codes: 0 success, 1 invalid arguments, 2 data errors, 3 numerical
failures. Every output artifact carries a metadata header (tool version and
a config echo, seed included), JSON reports use stable key ordering, and
re-running with identical inputs and seed reproduces outputs byte for byte.
A plain-text config file of ``key=value`` lines can replace flags; flags
win on conflict.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from datetime import date
from pathlib import Path

import numpy as np

from . import __version__
from .activity import (event_study, open_interest_series, r1_series, r2_series,
                       significance_tally, volume_series)
from .auction_engine import (AuctionError, ClockAuctionConfig, ConstantSupply,
                             StochasticExit, StochasticShrink, ThresholdExit,
                             run_descending_clock)
from .market_data import (MarketDataError, MarketZone, average_price,
                          load_auctions_csv, load_costs_csv, load_futures_csv,
                          load_spot_csv, load_spot_csv_multi,
                          write_auctions_csv, write_costs_csv,
                          write_futures_csv, write_spot_csv)
from .panel import PanelObservation, RegressionError, fit_pooled_ols
from .premiums import (FmpiSpec, PremiumRow, cesur_premium, distribution_stats,
                       equality_of_means, fmpi_premium, fmpi_strip,
                       pjm_premium, yearly_aggregate)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3


class _CliParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class UsageError(Exception):
    pass


def _metadata(args, extra=None) -> dict:
    # the output location is not a semantic input: identical runs into
    # different directories must still produce byte-identical artifacts
    echo = {k: v for k, v in sorted(vars(args).items())
            if k not in ("func", "out") and v is not None}
    meta = {"tool": f"powerauctions {__version__}", "config": echo}
    if extra:
        meta.update(extra)
    return meta


def _write_json(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def _open_csv(path: Path, args):
    path.parent.mkdir(parents=True, exist_ok=True)
    fh = open(path, "w", newline="", encoding="utf-8")
    meta = _metadata(args)
    fh.write(f"# {meta['tool']}\n")
    fh.write(f"# config={json.dumps(meta['config'], sort_keys=True)}\n")
    return fh


def _read_events_csv(path) -> list[date]:
    events = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["date"]:
            raise MarketDataError(f"{path}: events file needs a single 'date' column")
        for lineno, row in enumerate(reader, start=2):
            if not row or not row[0].strip():
                continue
            try:
                events.append(date.fromisoformat(row[0].strip()))
            except ValueError:
                raise MarketDataError(f"{path} line {lineno}: bad date {row[0]!r}") from None
    if not events:
        raise MarketDataError(f"{path}: no event dates")
    return events


def _read_kv_csv(path, header: list[str]):
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        got = next(reader, None)
        if got is None or [h.strip() for h in got] != header:
            raise MarketDataError(f"{path}: expected header {header}, got {got}")
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise MarketDataError(f"{path} line {lineno}: wrong field count")
            rows.append([c.strip() for c in row])
    return rows


# --- subcommands -------------------------------------------------------------


def _cmd_ingest(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.kind == "spot":
        series_by_zone = load_spot_csv_multi(args.input)
        count = sum(len(s) for s in series_by_zone.values())
        for zone, series in series_by_zone.items():
            write_spot_csv(out / f"spot_{zone.market}_{zone.zone}.csv", series)
    elif args.kind == "futures":
        series = load_futures_csv(args.input)
        count = sum(len(s) for s in series)
        write_futures_csv(out / "futures.csv", series)
    elif args.kind == "auctions":
        records = load_auctions_csv(args.input)
        count = len(records)
        write_auctions_csv(out / "auctions.csv", records)
    else:
        costs = load_costs_csv(args.input)
        count = len(costs)
        write_costs_csv(out / "costs.csv", costs)
    _write_json(out / "ingest_summary.json",
                {"metadata": _metadata(args), "kind": args.kind, "rows_accepted": count})
    print(f"ingest ok kind={args.kind} rows={count}")
    return EXIT_OK


def _load_fmpi_map(path) -> dict[tuple[str, str], float]:
    rows = _read_kv_csv(path, ["market", "key", "fmpi"])
    return {(m, k): float(v) for m, k, v in rows}


def _premium_rows(args) -> list[PremiumRow]:
    records = load_auctions_csv(args.auctions)
    fmpi_map = _load_fmpi_map(args.fmpi) if args.fmpi else {}
    costs_map = {}
    if args.costs:
        for c in load_costs_csv(args.costs):
            costs_map[(c.zone.market, c.zone.zone, c.year)] = c.unit_cost
    averages_map = {}
    if args.averages:
        for m, z, year, price in _read_kv_csv(args.averages, ["market", "zone", "year", "avg_price"]):
            averages_map[(m, z, int(year))] = float(price)
    spot_by_zone = load_spot_csv_multi(args.spot) if args.spot else {}

    rows = []
    for rec in records:
        if rec.market == "OMEL":
            zone = MarketZone("OMEL", "ES")
            spot_avg = average_price(spot_by_zone[zone], rec.delivery, mode=args.spot_mode)
            prem, pct = cesur_premium(rec.clearing_price, spot_avg)
            costs = 0.0
            gross = rec.clearing_price
            group = str(rec.auction_date.year)
            label = rec.product_id
        else:
            zone_name = args.zone_of.get(rec.product_id) if args.zone_of else None
            zone_name = zone_name or rec.product_id.split("-")[0]
            zone = MarketZone("PJM", zone_name)
            year = rec.auction_date.year
            costs = costs_map.get(("PJM", zone_name, year), 0.0)
            avg_price = averages_map.get(("PJM", zone_name, year), rec.clearing_price)
            spot_avg = average_price(spot_by_zone[zone], rec.delivery, mode=args.spot_mode)
            prem, pct = pjm_premium(avg_price, costs, spot_avg)
            gross = rec.clearing_price
            group = zone_name
            label = f"{year}-{zone_name}"
        fmpi_val = fmpi_map.get((rec.market, rec.product_id))
        f_prem = f_pct = None
        if fmpi_val is not None:
            f_prem, f_pct = fmpi_premium(gross, costs, fmpi_val)
        rows.append(PremiumRow(auction_ref=label, group=group,
                               auction_price=rec.clearing_price, spot_avg=spot_avg,
                               costs=costs, premium=prem, premium_pct=pct,
                               fmpi=fmpi_val, fmpi_premium=f_prem,
                               fmpi_premium_pct=f_pct))
    return rows


def _emit_premium_table(rows, args, out_dir: Path):
    with _open_csv(out_dir / "premiums.csv", args) as fh:
        w = csv.writer(fh)
        w.writerow(["auction_ref", "group", "auction_price", "spot_avg", "costs",
                    "premium", "premium_pct", "fmpi", "fmpi_premium", "fmpi_premium_pct"])
        for r in rows:
            w.writerow([r.auction_ref, r.group, f"{r.auction_price:.4f}",
                        f"{r.spot_avg:.4f}", f"{r.costs:.4f}", f"{r.premium:.4f}",
                        f"{r.premium_pct:.6f}",
                        "" if r.fmpi is None else f"{r.fmpi:.4f}",
                        "" if r.fmpi_premium is None else f"{r.fmpi_premium:.4f}",
                        "" if r.fmpi_premium_pct is None else f"{r.fmpi_premium_pct:.6f}"])
    agg = yearly_aggregate(rows)
    return {"groups": agg.groups, "grand": agg.grand}


def _cmd_premium(args) -> int:
    out_dir = Path(args.out)
    rows = _premium_rows(args)
    summary = _emit_premium_table(rows, args, out_dir)
    _write_json(out_dir / "premium_summary.json",
                {"metadata": _metadata(args), "aggregates": summary})
    print(f"premium ok rows={len(rows)}")
    return EXIT_OK


def _cmd_fmpi(args) -> int:
    rows = _read_kv_csv(args.prices, ["month", "price"])
    prices = [float(p) for _, p in rows]
    value = fmpi_strip(FmpiSpec(monthly_prices=tuple(prices), annual_rate=args.rate))
    payload = {"metadata": _metadata(args), "strip_value": value,
               "annual_rate": args.rate, "n_prices": len(prices)}
    if args.out:
        _write_json(Path(args.out), payload)
    print(json.dumps({"strip_value": value}, sort_keys=True))
    return EXIT_OK


_MEASURES = {"r1": r1_series, "r2": r2_series, "volume": volume_series,
             "open_interest": open_interest_series}


def _select_contract(path, contract):
    series = load_futures_csv(path)
    if contract:
        matches = [s for s in series if s.contract_id == contract]
        if not matches:
            raise MarketDataError(f"contract {contract!r} not found in {path}")
        return matches[0]
    if len(series) != 1:
        raise UsageError("--contract required when the futures file holds several contracts")
    return series[0]


def _cmd_activity(args) -> int:
    contract = _select_contract(args.futures, args.contract)
    measure = _MEASURES[args.measure](contract)
    out_dir = Path(args.out)
    with _open_csv(out_dir / f"activity_{args.measure}.csv", args) as fh:
        w = csv.writer(fh)
        w.writerow(["contract_id", "measure", "date", "value", "defined"])
        for d, v in zip(measure.dates, measure.values):
            defined = d not in measure.undefined_dates
            w.writerow([measure.contract_id, measure.measure_kind, d.isoformat(),
                        f"{v:.10g}" if defined else "", int(defined)])
    print(f"activity ok measure={args.measure} n={len(measure.dates)} "
          f"undefined={len(measure.undefined_dates)}")
    return EXIT_OK


def _cmd_event_study(args) -> int:
    contract = _select_contract(args.futures, args.contract)
    measure = _MEASURES[args.measure](contract)
    events = _read_events_csv(args.events)
    results = event_study(measure, events, window=(args.window[0], args.window[1]),
                          variance=args.variance)
    out_dir = Path(args.out)
    with _open_csv(out_dir / "event_study.csv", args) as fh:
        w = csv.writer(fh)
        w.writerow(["offset", "t_stat", "sig01", "sig05"])
        for r in results:
            w.writerow([r.offset, f"{r.t_stat:.10g}", int(r.sig01), int(r.sig05)])
    tally = significance_tally(results, alpha=args.alpha)
    _write_json(out_dir / "event_study_summary.json", {
        "metadata": _metadata(args),
        "tally": {"significant_positive": tally.significant_positive,
                  "significant_negative": tally.significant_negative,
                  "total": tally.total, "verdict": tally.verdict},
    })
    print(f"event-study ok offsets={len(results)} verdict={tally.verdict}")
    return EXIT_OK


def _cmd_regress(args) -> int:
    header = ["unit", "period", "y", "vol3y", "startbidders", "wbidders"]
    with open(args.panel, newline="", encoding="utf-8") as fh:
        got = next(csv.reader(fh), None)
    if got and [h.strip() for h in got] == header + ["pls"]:
        header = header + ["pls"]
    rows = _read_kv_csv(args.panel, header)
    panel = []
    for row in rows:
        cov = {name: float(val) for name, val in zip(header[3:], row[3:])}
        panel.append(PanelObservation(unit=row[0], period=int(row[1]),
                                      y=float(row[2]), covariates=cov))
    covariates = [c.strip() for c in args.covariates.split(",") if c.strip()]
    result = fit_pooled_ols(panel, covariates,
                            period_fixed_effects=not args.no_period_effects,
                            unit_fixed_effects=args.unit_effects)
    payload = {
        "metadata": _metadata(args),
        "coefficients": {c.name: {"estimate": c.estimate, "std_error": c.std_error,
                                  "t_stat": c.t_stat} for c in result.coefficients},
        "r_squared": result.r_squared,
        "adj_r_squared": result.adj_r_squared,
        "rss": result.rss,
        "rmse": result.rmse,
        "n": result.n,
        "k": result.k,
        "n_clusters": result.n_clusters,
        "fixed_effects": result.fixed_effects,
    }
    _write_json(Path(args.out), payload)
    print(f"regress ok n={result.n} k={result.k} r2={result.r_squared:.4f}")
    return EXIT_OK


_STRATEGY_KINDS = {
    "constant": lambda spec, rng: ConstantSupply(quantity=spec["quantity"]),
    "threshold_exit": lambda spec, rng: ThresholdExit(
        quantity=spec["quantity"], threshold=spec["threshold"],
        below_quantity=spec.get("below_quantity", 0.0)),
    "stochastic_exit": lambda spec, rng: StochasticExit(
        quantity=spec["quantity"], exit_probability=spec["exit_probability"], rng=rng),
    "stochastic_shrink": lambda spec, rng: StochasticShrink(
        quantity=spec["quantity"], low=spec.get("low", 0.5), rng=rng),
}


def build_scenario(scenario: dict, seed: int | None):
    """Instantiate (config, strategies, bidder_ids) from a scenario dict."""
    cfg = scenario["config"]
    config = ClockAuctionConfig(
        target_quantity=cfg["target_quantity"],
        opening_price=cfg["opening_price"],
        price_decrement=cfg.get("price_decrement", 1.0),
        max_rounds=cfg.get("max_rounds", 1000),
        undershoot_policy=cfg.get("undershoot_policy", "previous_price_prorata"),
    )
    seeds = np.random.SeedSequence(seed).spawn(len(scenario["strategies"]))
    strategies = []
    for spec, ss in zip(scenario["strategies"], seeds):
        kind = spec.get("kind")
        if kind not in _STRATEGY_KINDS:
            raise MarketDataError(f"unknown strategy kind {kind!r}")
        strategies.append(_STRATEGY_KINDS[kind](spec, np.random.default_rng(ss)))
    return config, strategies, scenario.get("bidder_ids")


def outcome_to_dict(outcome) -> dict:
    return {
        "clearing_price": outcome.clearing_price,
        "awards": dict(sorted(outcome.awards.items())),
        "rounds_used": outcome.rounds_used,
        "undershoot_resolved": outcome.undershoot_resolved,
        "round_log": [
            {"round": e.round_no, "announced_price": e.announced_price,
             "offers": dict(sorted(e.offers.items())), "aggregate": e.aggregate,
             "clamped": sorted(e.clamped)}
            for e in outcome.round_log
        ],
    }


def _cmd_simulate(args) -> int:
    with open(args.scenario, encoding="utf-8") as fh:
        try:
            scenario = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MarketDataError(f"{args.scenario}: invalid JSON ({exc})") from None
    config, strategies, bidder_ids = build_scenario(scenario, args.seed)
    outcome = run_descending_clock(config, strategies, bidder_ids)
    payload = {"metadata": _metadata(args, {"seed": args.seed}),
               "outcome": outcome_to_dict(outcome)}
    _write_json(Path(args.out), payload)
    print(f"simulate ok price={outcome.clearing_price} rounds={outcome.rounds_used}")
    return EXIT_OK


def _cmd_report(args) -> int:
    out_dir = Path(args.out)
    rows = _premium_rows(args)
    aggregates = _emit_premium_table(rows, args, out_dir)
    premiums = [r.premium for r in rows]
    report = {"metadata": _metadata(args), "aggregates": aggregates}
    if len(premiums) >= 4:
        st = distribution_stats(premiums)
        report["premium_distribution"] = {
            "n": st.n, "mean": st.mean, "std": st.std,
            "coefficient_of_variation": st.coefficient_of_variation,
            "skewness": st.skewness, "kurtosis": st.kurtosis,
            "jarque_bera": st.jarque_bera,
        }
    by_group: dict[str, list[float]] = {}
    for r in rows:
        by_group.setdefault(r.group, []).append(r.premium)
    if len(by_group) >= 2 and all(len(v) >= 2 for v in by_group.values()):
        report["equality_of_means"] = [
            {"a": c.label_a, "b": c.label_b, "t": c.t_stat, "dof": c.dof, "p": c.p_value}
            for c in equality_of_means(by_group)
        ]
    _write_json(out_dir / "report.json", report)
    print(f"report ok rows={len(rows)}")
    return EXIT_OK


# --- argument wiring ---------------------------------------------------------


def _add_premium_inputs(p):
    p.add_argument("--auctions", required=True)
    p.add_argument("--spot", required=True)
    p.add_argument("--costs")
    p.add_argument("--fmpi")
    p.add_argument("--averages")
    p.add_argument("--spot-mode", default="strict", choices=["strict", "available"])
    p.add_argument("--out", required=True)
    p.set_defaults(zone_of=None)


def _build_parser() -> _CliParser:
    parser = _CliParser(prog="powerauctions")
    parser.add_argument("--config", help="key=value defaults file; flags win")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest")
    p.add_argument("--kind", required=True, choices=["spot", "futures", "auctions", "costs"])
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("premium")
    _add_premium_inputs(p)
    p.set_defaults(func=_cmd_premium)

    p = sub.add_parser("fmpi")
    p.add_argument("--prices", required=True)
    p.add_argument("--rate", type=float, default=0.0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_fmpi)

    p = sub.add_parser("activity")
    p.add_argument("--futures", required=True)
    p.add_argument("--measure", required=True, choices=sorted(_MEASURES))
    p.add_argument("--contract")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_activity)

    p = sub.add_parser("event-study")
    p.add_argument("--futures", required=True)
    p.add_argument("--measure", required=True, choices=sorted(_MEASURES))
    p.add_argument("--contract")
    p.add_argument("--events", required=True)
    p.add_argument("--window", nargs=2, type=int, default=[-5, 5])
    p.add_argument("--variance", default="welch", choices=["welch", "pooled"])
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_event_study)

    p = sub.add_parser("regress")
    p.add_argument("--panel", required=True)
    p.add_argument("--covariates", default="vol3y,startbidders,wbidders")
    p.add_argument("--no-period-effects", action="store_true")
    p.add_argument("--unit-effects", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_regress)

    p = sub.add_parser("simulate")
    p.add_argument("--scenario", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("report")
    _add_premium_inputs(p)
    p.set_defaults(func=_cmd_report)

    return parser


def _apply_config_file(argv: list[str]) -> list[str]:
    """Insert defaults from --config as flags, placed so real flags win."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    path = argv[i + 1]
    extra = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            flag = f"--{key.strip().replace('_', '-')}"
            if flag not in argv:
                extra.extend([flag, value.strip()])
    # subcommand stays first; defaults appended after existing args so that
    # argparse (last occurrence wins) prefers explicit flags for nargs cases
    rest = argv[:i] + argv[i + 2:]
    return rest + extra


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        argv = _apply_config_file(argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error code={EXIT_USAGE} reason={exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MarketDataError, FileNotFoundError) as exc:
        print(f"error code={EXIT_DATA} reason={exc}", file=sys.stderr)
        return EXIT_DATA
    except (AuctionError, RegressionError, ValueError, np.linalg.LinAlgError) as exc:
        print(f"error code={EXIT_NUMERIC} reason={exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
