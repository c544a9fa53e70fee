"""Command-line front end: sweeps, optimization, and the validation suite.

Subcommands:
    outage-sweep   analytic (and optional Monte-Carlo) system outage vs x1
    optimize       energy-optimal collection point under the energy budget
    power-sweep    re-optimized collection point and efficiency vs P_V
    mc-validate    closed forms vs the stochastic oracle, pass/fail per check

Exit codes: 0 success, 2 config error, 3 infeasible budget, 4 numerical
failure, 5 validation-suite failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace

from .config import RunConfig, apply_overrides, load_config
from .errors import ConfigError, InfeasibleBudgetError, NumericalError
from .montecarlo import (
    mc_energy_outage,
    mc_snr_cdf_backscatter,
    mc_snr_cdf_uplink,
    mc_system_outage,
    mc_tag_outage,
)
from .optimizer import energy_efficiency, mission_energy, optimize_location
from .outage import (
    bs_link,
    energy_outage,
    snr_cdf_backscatter,
    snr_cdf_uplink,
    snr_thresholds,
    system_outage,
    tag_link,
    tag_slots,
)

_UNITS_COMMENT = "# meters, watts, seconds, bits/s/Hz/J"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3
EXIT_NUMERICAL = 4
EXIT_VALIDATION = 5


def _cell(value: float) -> str:
    if not math.isfinite(value):
        raise NumericalError(f"refusing to emit non-finite cell {value!r}")
    return f"{value:.12g}"


def _probability_cell(value: float) -> str:
    # probabilities must already be in range; clipping here would hide a bug
    if not 0.0 <= value <= 1.0:
        raise NumericalError(f"probability out of [0, 1]: {value!r}")
    return _cell(value)


def _write_rows(path: str, header: str, rows: list[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(_UNITS_COMMENT + "\n")
        handle.write(header + "\n")
        for row in rows:
            handle.write(row + "\n")


def cmd_outage_sweep(cfg: RunConfig, out: str | None) -> int:
    """Write the outage-vs-x1 table behind the system outage curve."""
    if cfg.sweep.variable != "x1":
        raise ConfigError(
            f"outage-sweep needs sweep variable x1, got {cfg.sweep.variable!r}"
        )
    path = out or cfg.output_path or "outage_sweep.csv"
    with_mc = cfg.mc_trials > 0
    mc_cfg = cfg.mc_config() if with_mc else None

    m = cfg.system.num_tags
    columns = ["x1", "p_in_system"]
    columns += [f"p_in_tag_{i}" for i in range(1, m + 1)]
    columns += [f"p_e_tag_{i}" for i in range(1, m + 1)]
    if with_mc:
        columns += ["mc_p_in_system", "mc_ci95"]

    rows = []
    for x1 in cfg.sweep.grid():
        try:
            scenario = replace(cfg.scenario, x1=x1)
        except ValueError as exc:
            raise ConfigError(f"sweep point x1={x1:g} is invalid: {exc}") from exc
        report = system_outage(scenario, cfg.system, cfg.channel)
        cells = [_cell(x1), _probability_cell(report.system_avg)]
        cells += [_probability_cell(p) for p in report.per_tag]
        cells += [_probability_cell(p) for p in report.energy_outage]
        if with_mc:
            estimate = mc_system_outage(scenario, cfg.system, cfg.channel, mc_cfg)
            cells += [_probability_cell(estimate.value), _cell(estimate.half_width_95)]
        rows.append(",".join(cells))

    _write_rows(path, ",".join(columns), rows)
    print(f"wrote {len(rows)} rows to {path}")
    return EXIT_OK


def cmd_optimize(cfg: RunConfig, out: str | None, tol: float) -> int:
    """Report the energy-optimal collection point and dump the search trace."""
    result = optimize_location(cfg.scenario, cfg.system, cfg.channel, tol=tol)
    print(f"feasible region: [{result.feasible_lo:.6g}, {result.feasible_hi:.6g}] m")
    print(f"x1* = {result.x1_star:.6g} m")
    print(f"eta_en* = {result.eta_en_star:.10g} bits/s/Hz/J")
    print(f"iterations = {result.iterations}")
    print(f"objective evaluations = {len(result.trace)}")
    path = out or cfg.output_path
    if path:
        rows = [f"{_cell(x)},{_cell(v)}" for x, v in result.trace]
        _write_rows(path, "x1,eta_en", rows)
        print(f"wrote {len(rows)} trace rows to {path}")
    return EXIT_OK


def cmd_power_sweep(cfg: RunConfig, out: str | None, tol: float) -> int:
    """Re-optimize the collection point for each transmit power in the sweep."""
    if cfg.sweep.variable != "p_v":
        raise ConfigError(
            f"power-sweep needs sweep variable p_v, got {cfg.sweep.variable!r}"
        )
    path = out or cfg.output_path or "power_sweep.csv"
    rows = []
    for p_v in cfg.sweep.grid():
        try:
            params = replace(cfg.system, p_v=p_v)
        except ValueError as exc:
            raise ConfigError(f"sweep point p_v={p_v:g} is invalid: {exc}") from exc
        try:
            result = optimize_location(cfg.scenario, params, cfg.channel, tol=tol)
        except InfeasibleBudgetError:
            rows.append(f"{_cell(p_v)},,,infeasible")
            continue
        rows.append(
            f"{_cell(p_v)},{_cell(result.x1_star)},{_cell(result.eta_en_star)},ok"
        )
    _write_rows(path, "p_v,x1_star,eta_en_star,status", rows)
    print(f"wrote {len(rows)} rows to {path}")
    return EXIT_OK


def _check(name: str, analytic: float, estimate, lines: list[str]) -> bool:
    ok = abs(analytic - estimate.value) <= 3.0 * estimate.half_width_95
    lines.append(
        f"{'PASS' if ok else 'FAIL'} {name}: analytic={analytic:.6f} "
        f"mc={estimate.value:.6f} hw95={estimate.half_width_95:.6f}"
    )
    return ok


def cmd_mc_validate(cfg: RunConfig) -> int:
    """Compare every closed form against the stochastic oracle at 3 half-widths."""
    if cfg.mc_trials < 1:
        raise ConfigError("mc-validate needs trials >= 1")
    mc_cfg = cfg.mc_config()
    system, channel, scenario = cfg.system, cfg.channel, cfg.scenario
    gamma_tags, gamma_up = snr_thresholds(system)
    slots = tag_slots(scenario)
    link_vb = bs_link(scenario, channel)

    lines: list[str] = []
    all_ok = True
    for m in range(1, scenario.num_tags + 1):
        link = tag_link(scenario, channel, m)
        slot = slots[m - 1]
        analytic = energy_outage(slot, link, system, channel)
        estimate = mc_energy_outage(slot, link, system, channel, mc_cfg)
        all_ok &= _check(f"energy_outage[tag={m}]", analytic, estimate, lines)

    for m in range(1, scenario.num_tags + 1):
        link = tag_link(scenario, channel, m)
        analytic = snr_cdf_backscatter(gamma_tags[m - 1], link, system, channel)
        estimate = mc_snr_cdf_backscatter(
            gamma_tags[m - 1], link, system, channel, mc_cfg, stream=m
        )
        all_ok &= _check(f"snr_cdf_backscatter[tag={m}]", analytic, estimate, lines)

    analytic = snr_cdf_uplink(gamma_up, link_vb, system, channel)
    estimate = mc_snr_cdf_uplink(gamma_up, link_vb, system, channel, mc_cfg)
    all_ok &= _check("snr_cdf_uplink", analytic, estimate, lines)

    for m in range(1, scenario.num_tags + 1):
        analytic_tag = system_outage(scenario, system, channel).per_tag[m - 1]
        estimate = mc_tag_outage(m, scenario, system, channel, mc_cfg)
        all_ok &= _check(f"tag_outage[tag={m}]", analytic_tag, estimate, lines)

    for x1 in (0.0, 75.0, 150.0, 225.0, 300.0):
        sc = replace(scenario, x1=min(x1, scenario.x2))
        report = system_outage(sc, system, channel)
        estimate = mc_system_outage(sc, system, channel, mc_cfg)
        all_ok &= _check(f"system_outage[x1={x1:g}]", report.system_avg, estimate, lines)

    for line in lines:
        print(line)
    passed = sum(1 for line in lines if line.startswith("PASS"))
    print(f"mc-validate: {passed}/{len(lines)} checks passed "
          f"(mode={mc_cfg.correlation_mode}, trials={mc_cfg.trials}, seed={mc_cfg.seed})")
    return EXIT_OK if all_ok else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uavscatter",
        description=(
            "Outage analytics, Monte-Carlo validation, and collection-point "
            "optimization for UAV-assisted backscatter data collection."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("outage-sweep", "write the system outage vs x1 table"),
        ("optimize", "find the energy-optimal collection point"),
        ("power-sweep", "optimize per transmit power over the sweep grid"),
        ("mc-validate", "check every closed form against the Monte-Carlo oracle"),
    ):
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("--config", metavar="PATH", help="configuration file")
        cmd.add_argument("--out", metavar="PATH", help="output CSV path")
        cmd.add_argument("--trials", type=int, metavar="N",
                         help="Monte-Carlo trials (0 disables MC columns)")
        cmd.add_argument("--seed", type=int, metavar="U64", help="Monte-Carlo seed")
        cmd.add_argument("--mode", choices=("paper_faithful", "physical"),
                         help="gain-correlation mode for the oracle")
        cmd.add_argument("--tol", type=float, default=1e-3, metavar="M",
                         help="bracket tolerance for the optimizer, meters")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        cfg = apply_overrides(cfg, trials=args.trials, seed=args.seed, mode=args.mode)
        if not args.tol > 0.0:
            raise ConfigError(f"--tol must be positive, got {args.tol}")
        if args.command == "outage-sweep":
            return cmd_outage_sweep(cfg, args.out)
        if args.command == "optimize":
            return cmd_optimize(cfg, args.out, args.tol)
        if args.command == "power-sweep":
            return cmd_power_sweep(cfg, args.out, args.tol)
        return cmd_mc_validate(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InfeasibleBudgetError as exc:
        print(f"infeasible budget: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def console_main() -> None:
    raise SystemExit(main())
