"""Energy-efficiency objective and the search for the best hover abscissa.

The objective is the average successfully delivered rate divided by the total
mission energy (flight plus transmit).  The flight leg from x1 to x2 must fit
the energy budget, which bounds the hover point from below; within that
feasible interval a coarse scan brackets the maximum and golden-section
search refines it.  The pre-scan matters because the objective is not proven
unimodal, and golden-section alone is only correct for unimodal functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

from .channel import ChannelParams
from .errors import InfeasibleBudgetError
from .geometry import Scenario
from .outage import SystemParams, system_outage

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_DEFAULT_TOL = 1e-3
_COARSE_POINTS = 64


@dataclass(frozen=True)
class OptResult:
    """Outcome of a hover-point optimization.

    `trace` records every objective evaluation (coarse scan plus refinement)
    as (x1, efficiency) pairs in evaluation order.
    """

    x1_star: float
    eta_en_star: float
    feasible_lo: float
    feasible_hi: float
    iterations: int
    trace: tuple[tuple[float, float], ...]


def mission_energy(x1: float, scenario: Scenario, params: SystemParams) -> float:
    """Total energy of a mission hovering at x1: flight plus transmit."""
    flight_time = (scenario.x2 - x1) / params.v
    return flight_time * params.p_f + (params.t_b + params.t_u) * params.p_v


def energy_efficiency(
    x1: float, scenario: Scenario, params: SystemParams, ch: ChannelParams
) -> float:
    """Average delivered rate per joule when collecting at x1.

    [(1/M) * sum R_m (1 - P_in,m(x1))] / [((x2 - x1)/v) P_F + (T_B + T_U) P_V].
    """
    if x1 > scenario.x2:
        raise ValueError(f"x1={x1} must not exceed x2={scenario.x2}")
    report = system_outage(replace(scenario, x1=x1), params, ch)
    delivered = math.fsum(
        r * (1.0 - p) for r, p in zip(params.rates, report.per_tag)
    ) / params.num_tags
    return delivered / mission_energy(x1, scenario, params)


def feasible_region(scenario: Scenario, params: SystemParams) -> tuple[float, float]:
    """Interval of hover abscissas whose mission energy fits the budget.

    The energy constraint ((x2 - x1)/v) P_F + (T_B + T_U) P_V <= E_total
    solved for x1 gives lo = x2 - v (E_total - (T_B + T_U) P_V) / P_F; the
    upper end is x2.  A budget that exactly covers the zero-flight mission
    yields the degenerate interval [x2, x2].

    Raises:
        InfeasibleBudgetError: if the budget cannot cover even zero flight.
    """
    hover_cost = (params.t_b + params.t_u) * params.p_v
    if params.e_total < hover_cost:
        raise InfeasibleBudgetError(
            f"budget {params.e_total} J is below the zero-flight cost {hover_cost} J"
        )
    lo = scenario.x2 - params.v * (params.e_total - hover_cost) / params.p_f
    return lo, scenario.x2


def golden_section(
    objective: Callable[[float], float], lo: float, hi: float, tol: float
) -> tuple[float, float]:
    """Maximize a unimodal scalar function by golden-section bracketing.

    Shrinks [lo, hi] by the golden-ratio conjugate per iteration until the
    bracket is narrower than tol, then returns the bracket midpoint and the
    objective value there.  A degenerate bracket returns lo immediately.
    """
    x, fx, _ = _golden_max(objective, lo, hi, tol)
    return x, fx


def _golden_max(objective, lo: float, hi: float, tol: float):
    if lo > hi:
        raise ValueError(f"need lo <= hi, got [{lo}, {hi}]")
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if hi == lo:
        return lo, objective(lo), 0
    if hi - lo <= tol:
        x = 0.5 * (lo + hi)
        return x, objective(x), 0

    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc = objective(c)
    fd = objective(d)
    iterations = 0
    while b - a > tol:
        iterations += 1
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = objective(d)
    x = 0.5 * (a + b)
    return x, objective(x), iterations


def optimize_location(
    scenario: Scenario,
    params: SystemParams,
    ch: ChannelParams,
    tol: float = _DEFAULT_TOL,
    coarse_points: int = _COARSE_POINTS,
) -> OptResult:
    """Find the feasible hover abscissa that maximizes energy efficiency.

    A coarse scan over the feasible interval picks the best bracket, golden-
    section search refines inside it, and the reported optimum is the best
    point ever evaluated, so it dominates every scanned grid point by
    construction.

    Raises:
        InfeasibleBudgetError: propagated from the feasibility check.
    """
    lo, hi = feasible_region(scenario, params)
    trace: list[tuple[float, float]] = []

    def objective(x: float) -> float:
        value = energy_efficiency(x, scenario, params, ch)
        trace.append((x, value))
        return value

    if hi == lo:
        value = objective(hi)
        return OptResult(hi, value, lo, hi, 0, tuple(trace))

    n = max(coarse_points, 3)
    step = (hi - lo) / (n - 1)
    grid = [lo + i * step for i in range(n - 1)] + [hi]
    values = [objective(x) for x in grid]
    best = max(range(n), key=values.__getitem__)
    bracket_lo = grid[max(best - 1, 0)]
    bracket_hi = grid[min(best + 1, n - 1)]

    _, _, iterations = _golden_max(objective, bracket_lo, bracket_hi, tol)

    x_star, eta_star = max(trace, key=lambda pair: pair[1])
    return OptResult(x_star, eta_star, lo, hi, iterations, tuple(trace))
