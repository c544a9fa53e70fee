"""Closed-form outage analytics for the three-stage collection mission.

A tag's transmission fails when any of three independent conditions holds:
its harvested energy cannot cover circuit consumption during its own slot
(energy outage), the backscattered SNR at the UAV falls below the tag's
Shannon threshold, or the upload SNR at the base station falls below the
uplink threshold.  Each factor has an exact expression in terms of the
regularized incomplete gamma function; the backscatter factor additionally
needs one semi-infinite integral over the forward-gain density, evaluated
here by adaptive quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from .channel import (
    ChannelParams,
    LinkStats,
    make_link_stats,
    mixture_gain_cdf,
    mixture_gain_pdf,
)
from .errors import NumericalError, QuadratureError
from .geometry import Scenario, link_distance
from .specfun import reg_lower_inc_gamma

_QUAD_REL_TOL = 1e-8
_QUAD_ABS_TOL = 1e-12
_QUAD_LIMIT = 200
_TAIL_MASS = 1e-13
_HEAD_MASS = 1e-14


@dataclass(frozen=True)
class SystemParams:
    """Every scalar of the mission: powers, efficiencies, timing, noise, rates.

    Attributes:
        num_tags: number of ground tags M sharing the backscatter period.
        p_v: UAV transmit power, W.
        p_c: per-tag circuit power loss, W.
        p_f: UAV flight power, W.
        eta_r: fraction of incident power a tag reflects in its own slot.
        eta_c: RF-to-DC conversion efficiency of the harvester.
        t_b: backscatter period, s (split equally among the tags).
        t_u: upload duration, s.
        sigma2_um: noise power at a tag, W.
        sigma2_v: noise power at the UAV, W.
        sigma2_b: noise power at the base station, W.
        rates: per-tag information rate, bits/s/Hz (length num_tags).
        v: UAV cruise velocity, m/s.
        e_total: UAV energy budget for the whole mission, J.
    """

    num_tags: int = 3
    p_v: float = 10.0
    p_c: float = 1e-3
    p_f: float = 100.0
    eta_r: float = 0.5
    eta_c: float = 0.5
    t_b: float = 1.0
    t_u: float = 1.0
    sigma2_um: float = 1e-9
    sigma2_v: float = 1e-9
    sigma2_b: float = 1e-9
    rates: tuple[float, ...] = (1.0, 1.0, 1.0)
    v: float = 10.0
    e_total: float = 2100.0

    def __post_init__(self) -> None:
        if self.num_tags < 1:
            raise ValueError(f"num_tags must be at least 1, got {self.num_tags}")
        positive = (
            "p_v", "p_f", "t_b", "t_u",
            "sigma2_um", "sigma2_v", "sigma2_b", "v", "e_total",
        )
        for name in positive:
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        # zero circuit draw models an idealized lossless tag (energy outage 0)
        if self.p_c < 0.0:
            raise ValueError(f"p_c must be nonnegative, got {self.p_c}")
        if not 0.0 < self.eta_r < 1.0:
            raise ValueError(f"eta_r must be in (0, 1), got {self.eta_r}")
        if not 0.0 < self.eta_c <= 1.0:
            raise ValueError(f"eta_c must be in (0, 1], got {self.eta_c}")
        if len(self.rates) != self.num_tags:
            raise ValueError(
                f"rates must have one entry per tag: {len(self.rates)} != {self.num_tags}"
            )
        if any(r < 0.0 for r in self.rates):
            raise ValueError("rates must be nonnegative")


@dataclass(frozen=True)
class OutageReport:
    """Per-tag and system-average outage with the thresholds that produced it."""

    per_tag: tuple[float, ...]
    system_avg: float
    energy_outage: tuple[float, ...]
    gamma_th_tags: tuple[float, ...]
    gamma_th_uplink: float


def uplink_rate(params: SystemParams) -> float:
    """Uplink rate that carries all collected data within the upload window.

    T_U * R_U must equal sum over tags of (T_B / M) * R_m, so
    R_U = (T_B / (M * T_U)) * sum(R_m).
    """
    return params.t_b / (params.num_tags * params.t_u) * math.fsum(params.rates)


def snr_thresholds(params: SystemParams) -> tuple[tuple[float, ...], float]:
    """Shannon SNR thresholds: per-tag 2^R_m - 1 and uplink 2^R_U - 1."""
    per_tag = tuple(2.0 ** r - 1.0 for r in params.rates)
    return per_tag, 2.0 ** uplink_rate(params) - 1.0


def tag_slots(scenario: Scenario) -> tuple[int, ...]:
    """1-based TDMA slot of each tag.

    Defaults to ascending position order; the later a tag's slot, the more
    whole slots it harvests before transmitting.  An explicit permutation on
    the scenario overrides the default.
    """
    if scenario.slots is not None:
        return scenario.slots
    order = sorted(range(scenario.num_tags), key=lambda i: scenario.tag_x[i])
    slots = [0] * scenario.num_tags
    for rank, idx in enumerate(order, start=1):
        slots[idx] = rank
    return tuple(slots)


def tag_link(scenario: Scenario, ch: ChannelParams, tag: int) -> LinkStats:
    """Collection-link statistics for 1-based tag index `tag`."""
    d = link_distance(scenario.x1, scenario.h, scenario.tag_x[tag - 1], 0.0)
    return make_link_stats(d, scenario.h, ch)


def bs_link(scenario: Scenario, ch: ChannelParams) -> LinkStats:
    """Upload-link statistics from the handoff point to the base station."""
    d = link_distance(scenario.x2, scenario.h, scenario.x_b, 0.0)
    return make_link_stats(d, scenario.h, ch)


def energy_outage(
    m: int, link: LinkStats, params: SystemParams, ch: ChannelParams
) -> float:
    """Probability that the slot-m tag harvests less than its circuit draw.

    Harvest accumulates over the full backscatter period: (1 - eta_r) of the
    incident power during the tag's own slot plus everything during its m - 1
    earlier slots, so outage is the event
    |g|^2 < P_C / ((m - eta_r) * eta_C * P_V), evaluated against the LoS/NLoS
    gain mixture:

    p_los * P(k_los, P_C d^a k_los / ((m - eta_r) eta_C P_V beta0))
      + p_nlos * P(k_nlos, P_C d^a k_nlos / ((m - eta_r) eta_C P_V beta0 eta_nlos))
    """
    if not 1 <= m <= params.num_tags:
        raise ValueError(f"slot index must be in 1..{params.num_tags}, got {m}")
    base = (
        params.p_c
        * link.distance ** ch.alpha
        / ((m - params.eta_r) * params.eta_c * params.p_v * ch.beta0)
    )
    los = reg_lower_inc_gamma(ch.k_los, base * ch.k_los)
    nlos = reg_lower_inc_gamma(ch.k_nlos, base * ch.k_nlos / ch.eta_nlos)
    return link.p_los * los + (1.0 - link.p_los) * nlos


def snr_cdf_uplink(
    x: float, link_vb: LinkStats, params: SystemParams, ch: ChannelParams
) -> float:
    """CDF of the upload SNR P_V |g_vb|^2 / sigma_B^2 at threshold x.

    Equals the gain-mixture CDF evaluated at x * sigma_B^2 / P_V.
    """
    if x < 0.0:
        raise ValueError(f"x must be nonnegative, got {x}")
    base = x * params.sigma2_b * link_vb.distance ** ch.alpha / (params.p_v * ch.beta0)
    los = reg_lower_inc_gamma(ch.k_los, base * ch.k_los)
    nlos = reg_lower_inc_gamma(ch.k_nlos, base * ch.k_nlos / ch.eta_nlos)
    return link_vb.p_los * los + (1.0 - link_vb.p_los) * nlos


def _mixture_quantile_above(link, ch, mass: float) -> float:
    # smallest doubling point U with mixture survival below `mass`
    u = max(link.omega_los, link.omega_nlos)
    for _ in range(200):
        if 1.0 - mixture_gain_cdf(link, ch, u) < mass:
            return u
        u *= 2.0
    raise NumericalError("could not bracket the mixture upper tail")


def _mixture_quantile_below(link, ch, mass: float) -> float:
    # largest quartering point with mixture CDF below `mass`
    y = min(link.omega_los, link.omega_nlos) * 1e-3
    for _ in range(600):
        if mixture_gain_cdf(link, ch, y) < mass:
            return y
        y *= 0.25
    raise NumericalError("could not bracket the mixture lower tail")


def snr_cdf_backscatter(
    x: float, link_vu: LinkStats, params: SystemParams, ch: ChannelParams
) -> float:
    """CDF of the backscatter SNR at the UAV at threshold x.

    The received SNR is eta_r P_V |g|^2 |g'|^2 / (|g|^2 sigma_Um^2 + sigma_V^2)
    with independently mixed forward gain g and backscatter gain g'.
    Conditioning on |g|^2 = y gives

        F(x) = integral_0^inf  G'(x (y sigma_Um^2 + sigma_V^2) / (eta_r P_V y))
                               * f(y) dy,

    where G' is the gain-mixture CDF and f the gain-mixture density of the
    same link.  The integral is truncated where the outer mixture carries
    less than 1e-13 of mass on either side and evaluated in log-space by
    adaptive quadrature to 1e-8 relative tolerance.

    Raises:
        QuadratureError: if the tolerance cannot be reached.
    """
    if x < 0.0:
        raise ValueError(f"x must be nonnegative, got {x}")
    if x == 0.0:
        return 0.0

    scale = x / (params.eta_r * params.p_v)
    s_um = params.sigma2_um
    s_v = params.sigma2_v

    def integrand(u: float) -> float:
        y = math.exp(u)
        threshold = scale * (y * s_um + s_v) / y
        return mixture_gain_cdf(link_vu, ch, threshold) * mixture_gain_pdf(
            link_vu, ch, y
        ) * y

    y_hi = _mixture_quantile_above(link_vu, ch, _TAIL_MASS)
    y_lo = _mixture_quantile_below(link_vu, ch, _HEAD_MASS)
    out = quad(
        integrand,
        math.log(y_lo),
        math.log(y_hi),
        epsabs=_QUAD_ABS_TOL,
        epsrel=_QUAD_REL_TOL,
        limit=_QUAD_LIMIT,
        full_output=1,
    )
    if len(out) > 3:
        raise QuadratureError(
            f"backscatter SNR CDF quadrature failed at x={x}: {out[3]}"
        )
    value = out[0]
    # head truncation undercounts by < 1e-14 and the tail by < 1e-13, so any
    # excursion beyond [0, 1] larger than 1e-9 signals a real defect
    if not -1e-9 <= value <= 1.0 + 1e-9:
        raise NumericalError(f"backscatter SNR CDF out of range: {value}")
    return min(max(value, 0.0), 1.0)


def tag_outage(
    m: int, scenario: Scenario, params: SystemParams, ch: ChannelParams
) -> float:
    """End-to-end outage probability of 1-based tag index m.

    1 - [1 - F_back(gamma_th_m)] [1 - F_uplink(gamma_th_U)] [1 - P_E,m].
    """
    if not 1 <= m <= scenario.num_tags:
        raise ValueError(f"tag index must be in 1..{scenario.num_tags}, got {m}")
    if scenario.num_tags != params.num_tags:
        raise ValueError(
            f"scenario has {scenario.num_tags} tags but params expect {params.num_tags}"
        )
    gamma_tags, gamma_up = snr_thresholds(params)
    link = tag_link(scenario, ch, m)
    slot = tag_slots(scenario)[m - 1]
    p_energy = energy_outage(slot, link, params, ch)
    f_back = snr_cdf_backscatter(gamma_tags[m - 1], link, params, ch)
    f_up = snr_cdf_uplink(gamma_up, bs_link(scenario, ch), params, ch)
    return 1.0 - (1.0 - f_back) * (1.0 - f_up) * (1.0 - p_energy)


def system_outage(
    scenario: Scenario, params: SystemParams, ch: ChannelParams
) -> OutageReport:
    """Outage of every tag plus their arithmetic mean, with shared factors reused."""
    if scenario.num_tags != params.num_tags:
        raise ValueError(
            f"scenario has {scenario.num_tags} tags but params expect {params.num_tags}"
        )
    gamma_tags, gamma_up = snr_thresholds(params)
    f_up = snr_cdf_uplink(gamma_up, bs_link(scenario, ch), params, ch)
    slots = tag_slots(scenario)

    per_tag = []
    energies = []
    for m in range(1, scenario.num_tags + 1):
        link = tag_link(scenario, ch, m)
        p_energy = energy_outage(slots[m - 1], link, params, ch)
        f_back = snr_cdf_backscatter(gamma_tags[m - 1], link, params, ch)
        energies.append(p_energy)
        per_tag.append(1.0 - (1.0 - f_back) * (1.0 - f_up) * (1.0 - p_energy))

    return OutageReport(
        per_tag=tuple(per_tag),
        system_avg=math.fsum(per_tag) / scenario.num_tags,
        energy_outage=tuple(energies),
        gamma_th_tags=gamma_tags,
        gamma_th_uplink=gamma_up,
    )
