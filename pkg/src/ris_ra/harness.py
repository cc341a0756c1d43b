"""Monte-Carlo campaign runner: config parsing, seeding, CSV output.

Every (policy, K, S, drop) cell gets its own seeded generator, so results
are independent of execution order and worker count, and the output CSV
is byte-identical across runs.
"""
from __future__ import annotations

import configparser
import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .channel import (Carrier, LinkBudget, Panel, Placement, build_codebook,
                      db_to_linear, dbm_to_watt, linear_to_db)
from .distributions import SquareDeployment
from .protocol import (CARP, QUARTER_DISC, SCP, SQUARE, URP, Scenario, build_uplink_frame,
                       phase_durations, run_training, sample_drop, select_slots)
from .sic import build_access_graph, resolve

POLICIES = (SCP, CARP, URP)
# fixed ids feed the seed sequence; never renumber
POLICY_IDS = {SCP: 1, CARP: 2, URP: 3}

RESULT_FIELDS = ("policy", "K", "S", "drop", "sa", "duration_slots", "throughput")
TRACE_FIELDS = ("policy", "K", "S", "drop", "iteration", "slot", "ue", "sinr_db", "verdict")


class ConfigError(Exception):
    """Bad or missing configuration value; message names section and key."""


DEFAULTS = {
    "physical": {
        "fc_hz": "3e9",
        "d_b_m": "25",
        "theta_b_deg": "45",
        "nx": "10",
        "nz": "10",
        "dx_over_lambda": "1",
        "dz_over_lambda": "1",
        "g_b_db": "5",
        "g_k_db": "5",
        "rho_b_w": "0.1",
        "rho_k_w": "0.01",
        "sigma2_dbm": "-94",
        "gamma_th_db": "0",
        "d_max_m": "100",
    },
    "protocol": {
        "t": "1",
        "t_config": "1",
        "l": "100",
    },
    "deployment": {
        "ell0_m": "15",
        "ell_m": "100",
    },
    "campaign": {
        "policies": "scp,carp,urp",
        "k": "1:10",
        "s": "4",
        "drops": "100",
        "seed": "1",
        "placement": QUARTER_DISC,
        "training": "ideal",
        "out": "results.csv",
    },
}


def load_config(path: str | None) -> dict[str, dict[str, str]]:
    """Read an INI file and merge it over the defaults.

    Unknown sections or keys raise ConfigError so typos do not silently
    fall back to defaults.
    """
    cfg = {sec: dict(vals) for sec, vals in DEFAULTS.items()}
    if path is None:
        return cfg
    parser = configparser.ConfigParser()
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file {path}: {exc}") from exc
    for section in parser.sections():
        if section not in cfg:
            raise ConfigError(f"unknown config section [{section}]")
        for key, value in parser.items(section):
            if key not in cfg[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")
            cfg[section][key] = value
    return cfg


def _get_float(cfg, section: str, key: str) -> float:
    raw = cfg[section][key]
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"[{section}] {key}: expected a number, got {raw!r}") from None


def _get_int(cfg, section: str, key: str) -> int:
    raw = cfg[section][key]
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"[{section}] {key}: expected an integer, got {raw!r}") from None


def parse_int_list(spec: str, name: str = "value") -> tuple[int, ...]:
    """Parse '1:50' (inclusive range) or '2,4,8' or a mix of both."""
    out: list[int] = []
    for token in str(spec).split(","):
        token = token.strip()
        if not token:
            continue
        try:
            if ":" in token:
                lo, hi = token.split(":")
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise ValueError
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(token))
        except ValueError:
            raise ConfigError(f"bad {name} spec {spec!r}") from None
    if not out:
        raise ConfigError(f"empty {name} spec {spec!r}")
    return tuple(out)


@dataclass(frozen=True)
class Campaign:
    scenario: Scenario
    T: float
    T_config: float
    policies: tuple[str, ...]
    ks: tuple[int, ...]
    ss: tuple[int, ...]
    drops: int
    seed: int
    placement: str = QUARTER_DISC
    deployment: SquareDeployment | None = None
    training: str = "ideal"
    out: str = "results.csv"


def build_scenario(cfg) -> Scenario:
    carrier = Carrier(fc=_get_float(cfg, "physical", "fc_hz"))
    panel = Panel(nx=_get_int(cfg, "physical", "nx"),
                  nz=_get_int(cfg, "physical", "nz"),
                  dx=_get_float(cfg, "physical", "dx_over_lambda") * carrier.wavelength,
                  dz=_get_float(cfg, "physical", "dz_over_lambda") * carrier.wavelength)
    budget = LinkBudget(G_b=db_to_linear(_get_float(cfg, "physical", "g_b_db")),
                        G_k=db_to_linear(_get_float(cfg, "physical", "g_k_db")),
                        rho_b=_get_float(cfg, "physical", "rho_b_w"),
                        rho_k=_get_float(cfg, "physical", "rho_k_w"),
                        sigma2=dbm_to_watt(_get_float(cfg, "physical", "sigma2_dbm")),
                        gamma_th=db_to_linear(_get_float(cfg, "physical", "gamma_th_db")),
                        L=_get_int(cfg, "protocol", "l"))
    bs = Placement(d=_get_float(cfg, "physical", "d_b_m"),
                   theta=np.deg2rad(_get_float(cfg, "physical", "theta_b_deg")))
    return Scenario(carrier=carrier, panel=panel, budget=budget, bs=bs,
                    d_max=_get_float(cfg, "physical", "d_max_m"))


def build_campaign(cfg) -> Campaign:
    scenario = build_scenario(cfg)
    policies = tuple(p.strip().lower() for p in cfg["campaign"]["policies"].split(",") if p.strip())
    for p in policies:
        if p not in POLICIES:
            raise ConfigError(f"unknown policy {p!r} (choose from {', '.join(POLICIES)})")
    if not policies:
        raise ConfigError("no policies selected")
    ks = parse_int_list(cfg["campaign"]["k"], "k")
    ss = parse_int_list(cfg["campaign"]["s"], "s")
    if any(k < 0 for k in ks):
        raise ConfigError("k values must be >= 0")
    if any(s < 1 for s in ss):
        raise ConfigError("s values must be >= 1")
    drops = _get_int(cfg, "campaign", "drops")
    if drops < 1:
        raise ConfigError("drops must be >= 1")
    placement = cfg["campaign"]["placement"].strip().lower()
    if placement not in (QUARTER_DISC, SQUARE):
        raise ConfigError(f"unknown placement {placement!r}")
    training = cfg["campaign"]["training"].strip().lower()
    if training not in ("ideal", "noisy"):
        raise ConfigError(f"unknown training mode {training!r}")
    dep = SquareDeployment(ell0=_get_float(cfg, "deployment", "ell0_m"),
                           ell=_get_float(cfg, "deployment", "ell_m"))
    return Campaign(scenario=scenario,
                    T=_get_float(cfg, "protocol", "t"),
                    T_config=_get_float(cfg, "protocol", "t_config"),
                    policies=policies, ks=ks, ss=ss, drops=drops,
                    seed=_get_int(cfg, "campaign", "seed"),
                    placement=placement, deployment=dep, training=training,
                    out=cfg["campaign"]["out"])


def compute_throughput(sa: int, S: int, T: float, T_config: float, policy: str) -> float:
    """Successful accesses per slot-duration over the whole round; training
    policies pay for both phases, urp only for the access phase."""
    duration = phase_durations(S, T, T_config, include_training=policy != URP)
    return sa / duration


@dataclass
class ResultRow:
    policy: str
    K: int
    S: int
    drop: int
    sa: int
    duration_slots: float
    throughput: float


def simulate_point(campaign: Campaign, policy: str, K: int, S: int, drop_idx: int,
                   collect_trace: bool = False):
    """One protocol round; returns (ResultRow, trace rows)."""
    rng = np.random.default_rng([campaign.seed, POLICY_IDS[policy], K, S, drop_idx])
    scen = campaign.scenario
    drop = sample_drop(scen, K, rng, model=campaign.placement, dep=campaign.deployment)
    codebook = build_codebook(S, scen.carrier, scen.panel, scen.bs.theta)
    if policy == URP:
        # no training phase; xi is only consulted for its shape
        xi = np.zeros((K, S))
    else:
        xi = run_training(scen, drop, codebook, mode=campaign.training, rng=rng)
    sel = select_slots(policy, xi, rng)
    frame = build_uplink_frame(scen, drop, sel, codebook)
    graph = build_access_graph(sel)
    res = resolve(graph, frame, scen.budget.gamma_th)
    duration = phase_durations(S, campaign.T, campaign.T_config,
                               include_training=policy != URP)
    row = ResultRow(policy=policy, K=K, S=S, drop=drop_idx, sa=res.sa,
                    duration_slots=duration,
                    throughput=compute_throughput(res.sa, S, campaign.T, campaign.T_config, policy))
    trace_rows = []
    if collect_trace:
        for step in res.trace:
            sinr_db = float(linear_to_db(step.sinr)) if step.sinr > 0 else float("-inf")
            trace_rows.append((policy, K, S, drop_idx, step.iteration, step.slot,
                               step.ue, sinr_db, "ok" if step.success else "fail"))
    return row, trace_rows


def _run_cell(args):
    campaign, policy, K, S, collect_trace = args
    rows, traces = [], []
    for drop_idx in range(campaign.drops):
        row, tr = simulate_point(campaign, policy, K, S, drop_idx, collect_trace)
        rows.append(row)
        traces.extend(tr)
    return rows, traces


def run_campaign(campaign: Campaign, workers: int = 1, collect_trace: bool = False):
    """Run the full (policy x K x S x drop) grid.

    Returns (rows, trace_rows) with rows sorted by (policy, K, S, drop);
    the ordering, and hence the output file, does not depend on workers.
    """
    cells = [(campaign, policy, K, S, collect_trace)
             for policy in campaign.policies for K in campaign.ks for S in campaign.ss]
    rows: list[ResultRow] = []
    trace_rows: list[tuple] = []
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for cell_rows, cell_traces in pool.map(_run_cell, cells):
                rows.extend(cell_rows)
                trace_rows.extend(cell_traces)
    else:
        for cell in cells:
            cell_rows, cell_traces = _run_cell(cell)
            rows.extend(cell_rows)
            trace_rows.extend(cell_traces)
    key = lambda r: (r.policy, r.K, r.S, r.drop)
    rows.sort(key=key)
    trace_rows.sort(key=lambda t: (t[0], t[1], t[2], t[3], t[4]))
    return rows, trace_rows


def _fmt(x) -> str:
    # repr of a python float round-trips exactly, so a consumer parsing the
    # CSV recovers bit-identical doubles (numpy scalars coerced first)
    if isinstance(x, float):
        return repr(float(x))
    return str(x)


@dataclass
class SummaryRow:
    policy: str
    K: int
    S: int
    n_drops: int
    mean_sa: float
    mean_throughput: float
    best: int


def summarize(rows: list[ResultRow]) -> list[SummaryRow]:
    """Per-(policy, K, S) means plus a best flag marking, for each
    (policy, K), the S with the highest mean throughput (ties to the
    first, i.e. smallest, S)."""
    groups: dict[tuple, list[ResultRow]] = {}
    for r in rows:
        groups.setdefault((r.policy, r.K, r.S), []).append(r)
    out: list[SummaryRow] = []
    for (policy, K, S), members in sorted(groups.items()):
        # plain running sums, deliberately: consumers can reproduce the
        # exact float64 value by accumulating in row order
        acc_sa = 0.0
        acc_th = 0.0
        for r in sorted(members, key=lambda r: r.drop):
            acc_sa += r.sa
            acc_th += r.throughput
        n = len(members)
        out.append(SummaryRow(policy, K, S, n, acc_sa / n, acc_th / n, 0))
    by_pk: dict[tuple, SummaryRow] = {}
    for row in out:
        cur = by_pk.get((row.policy, row.K))
        if cur is None or row.mean_throughput > cur.mean_throughput:
            by_pk[(row.policy, row.K)] = row
    for row in by_pk.values():
        row.best = 1
    return out


def write_results(rows: list[ResultRow], path: str,
                  trace_rows: list[tuple] | None = None) -> list[SummaryRow]:
    """Write the main CSV, the _summary sibling, and optionally _trace."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RESULT_FIELDS)
        for r in rows:
            w.writerow([r.policy, r.K, r.S, r.drop, r.sa,
                        _fmt(r.duration_slots), _fmt(r.throughput)])
    stem, ext = os.path.splitext(path)
    summary = summarize(rows)
    with open(f"{stem}_summary{ext or '.csv'}", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("policy", "K", "S", "n_drops", "mean_sa", "mean_throughput", "best"))
        for r in summary:
            w.writerow([r.policy, r.K, r.S, r.n_drops,
                        _fmt(r.mean_sa), _fmt(r.mean_throughput), r.best])
    if trace_rows is not None:
        with open(f"{stem}_trace{ext or '.csv'}", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(TRACE_FIELDS)
            for t in trace_rows:
                w.writerow([t[0], t[1], t[2], t[3], t[4], t[5], t[6], _fmt(t[7]), t[8]])
    return summary
