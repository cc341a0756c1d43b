"""Command-line front end: campaign runs, distribution tables, codebooks."""
from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from .channel import build_codebook, codebook_table
from .distributions import (SquareDeployment, dl_pathloss_cdf, dl_pathloss_pdf, dl_support,
                            pathloss_constant, sample_dl_pathloss, sample_ul_pathloss,
                            ul_pathloss_cdf, ul_pathloss_pdf, ul_support)
from .harness import (ConfigError, build_campaign, build_scenario, load_config,
                      parse_int_list, run_campaign, write_results)


def _fmt(x: float) -> str:
    return repr(float(x))


def cmd_run(args) -> int:
    cfg = load_config(args.config)
    if args.policies:
        cfg["campaign"]["policies"] = args.policies
    if args.k:
        cfg["campaign"]["k"] = args.k
    if args.s:
        cfg["campaign"]["s"] = args.s
    if args.drops is not None:
        cfg["campaign"]["drops"] = str(args.drops)
    if args.seed is not None:
        cfg["campaign"]["seed"] = str(args.seed)
    if args.out:
        cfg["campaign"]["out"] = args.out
    campaign = build_campaign(cfg)
    for S in sorted(set(campaign.ss)):
        cb = build_codebook(S, campaign.scenario.carrier, campaign.scenario.panel,
                            campaign.scenario.bs.theta)
        angles = " ".join(r["theta_s_deg"] for r in codebook_table(cb))
        print(f"codebook S={S}: {angles} deg")
    rows, trace_rows = run_campaign(campaign, workers=args.workers,
                                    collect_trace=args.trace)
    write_results(rows, campaign.out, trace_rows if args.trace else None)
    print(f"wrote {len(rows)} rows to {campaign.out}")
    return 0


def cmd_dist(args) -> int:
    cfg = load_config(args.config)
    scenario = build_scenario(cfg)
    dep = SquareDeployment(ell0=float(cfg["deployment"]["ell0_m"]),
                           ell=float(cfg["deployment"]["ell_m"]))
    omega = pathloss_constant(scenario.budget, scenario.panel, scenario.bs.d)
    rng = np.random.default_rng(args.seed)
    if args.side == "dl":
        lo, hi = dl_support(omega, scenario.bs.theta, dep)
        samples = sample_dl_pathloss(args.samples, omega, scenario.bs.theta, dep, rng)
    else:
        lo, hi = ul_support(omega, dep)
        samples = sample_ul_pathloss(args.samples, omega, dep, rng)
    if not np.isfinite(hi):
        raise ConfigError("distribution grid needs ell0_m > 0 (unbounded support)")
    grid = np.linspace(lo, hi, args.grid)
    if args.side == "dl":
        cdf = dl_pathloss_cdf(grid, omega, scenario.bs.theta, dep)
        pdf = dl_pathloss_pdf(grid, omega, scenario.bs.theta, dep)
    else:
        cdf = ul_pathloss_cdf(grid, omega, dep)
        pdf = ul_pathloss_pdf(grid, omega, dep)
    ecdf = np.searchsorted(np.sort(samples), grid, side="right") / len(samples)
    out = args.out or f"dist_{args.side}.csv"
    with open(out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("beta", "cdf", "pdf", "empirical_cdf"))
        for row in zip(grid, cdf, pdf, ecdf):
            w.writerow([_fmt(v) for v in row])
    print(f"wrote {args.grid} grid points to {out}")
    return 0


def cmd_codebook(args) -> int:
    cfg = load_config(args.config)
    scenario = build_scenario(cfg)
    for S in parse_int_list(args.s, "s"):
        if S < 1:
            raise ConfigError("s values must be >= 1")
        cb = build_codebook(S, scenario.carrier, scenario.panel, scenario.bs.theta)
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(("config", "theta_s_deg", "profile_deg"))
        for row in codebook_table(cb):
            w.writerow([row["config"], row["theta_s_deg"], ";".join(row["profile_deg"])])
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ris-ra",
                                description="RIS-aided random access simulator")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a Monte-Carlo campaign")
    r.add_argument("--config", help="INI config file (defaults used when omitted)")
    r.add_argument("--policies", help="comma list out of scp,carp,urp")
    r.add_argument("--k", help="UE counts, e.g. 1:50 or 1,10,20")
    r.add_argument("--s", help="slot counts, e.g. 2,4,8")
    r.add_argument("--drops", type=int, help="Monte-Carlo drops per grid point")
    r.add_argument("--seed", type=int, help="master seed")
    r.add_argument("--out", help="output CSV path")
    r.add_argument("--trace", action="store_true", help="also write a per-decode trace CSV")
    r.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    r.set_defaults(func=cmd_run)

    d = sub.add_parser("dist", help="tabulate the analytic pathloss distributions")
    d.add_argument("--side", choices=("dl", "ul"), required=True)
    d.add_argument("--grid", type=int, default=200, help="number of grid points")
    d.add_argument("--config", help="INI config file")
    d.add_argument("--samples", type=int, default=100_000, help="empirical sample count")
    d.add_argument("--seed", type=int, default=1)
    d.add_argument("--out", help="output CSV (default dist_<side>.csv)")
    d.set_defaults(func=cmd_dist)

    c = sub.add_parser("codebook", help="print codebook angles and phase profiles")
    c.add_argument("--s", required=True, help="number of configurations (int or comma list)")
    c.add_argument("--config", help="INI config file")
    c.set_defaults(func=cmd_codebook)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
