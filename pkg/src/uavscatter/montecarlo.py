"""Stochastic oracle for every probability the closed forms compute.

Trials draw raw channel gains and evaluate the outage events directly from
the received-signal definitions, with no incomplete gamma functions anywhere
on this path, so agreement with the analytic module is a genuine two-route
check.  Every estimator consumes an explicit seed and a stream index (the
tag index), so runs are reproducible and per-tag estimates are independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams, LinkStats
from .geometry import Scenario
from .outage import SystemParams, bs_link, snr_thresholds, tag_link, tag_slots

_MODES = ("paper_faithful", "physical")
_BLOCK = 1_000_000


@dataclass(frozen=True)
class McConfig:
    """Trial count, seed, and gain-correlation mode for a simulation run.

    `paper_faithful` draws the forward gain, backscatter gain, and
    energy-harvest gain of a tag independently (each with its own LoS coin),
    matching the factorized closed forms.  `physical` draws one LoS state and
    one forward gain per trial and reuses them for both the SNR and the
    harvest, quantifying the independence approximation.
    """

    trials: int = 100_000
    seed: int = 12345
    correlation_mode: str = "paper_faithful"

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if self.correlation_mode not in _MODES:
            raise ValueError(
                f"correlation_mode must be one of {_MODES}, got {self.correlation_mode!r}"
            )


@dataclass(frozen=True)
class McEstimate:
    """A probability estimate with its 95% normal-approximation half-width."""

    value: float
    half_width_95: float
    trials: int


def substream(seed: int, stream: int) -> np.random.Generator:
    """Generator for one of the non-overlapping per-stream sequences."""
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream,)))
    )


def _estimate(successes: int, trials: int) -> McEstimate:
    p = successes / trials
    width = 1.96 * math.sqrt(p * (1.0 - p) / trials)
    # continuity floor keeps intervals nonempty at p-hat in {0, 1}
    width = min(0.5, max(width, 1.0 / trials))
    return McEstimate(value=p, half_width_95=width, trials=trials)


def _combine_mean(parts: list[McEstimate]) -> McEstimate:
    value = math.fsum(e.value for e in parts) / len(parts)
    width = math.sqrt(math.fsum(e.half_width_95 ** 2 for e in parts)) / len(parts)
    trials = parts[0].trials
    width = min(0.5, max(width, 1.0 / trials))
    return McEstimate(value=value, half_width_95=width, trials=trials)


def _blocks(trials: int):
    remaining = trials
    while remaining > 0:
        n = min(remaining, _BLOCK)
        remaining -= n
        yield n


def sample_mixture_gain(
    link: LinkStats, ch: ChannelParams, n: int, rng: np.random.Generator
) -> np.ndarray:
    """Draw n unconditional channel power gains (fresh LoS coin per draw)."""
    is_los = rng.random(n) < link.p_los
    return _conditional_gain(link, ch, is_los, rng)


def _conditional_gain(
    link: LinkStats, ch: ChannelParams, is_los: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    los = rng.gamma(ch.k_los, link.omega_los / ch.k_los, is_los.size)
    nlos = rng.gamma(ch.k_nlos, link.omega_nlos / ch.k_nlos, is_los.size)
    return np.where(is_los, los, nlos)


def mc_energy_outage(
    m: int,
    link: LinkStats,
    params: SystemParams,
    ch: ChannelParams,
    cfg: McConfig,
) -> McEstimate:
    """Fraction of trials whose harvested energy misses the circuit draw.

    The slot-m harvest condition reduces to
    |g|^2 < P_C / ((m - eta_r) * eta_C * P_V).
    """
    if not 1 <= m <= params.num_tags:
        raise ValueError(f"slot index must be in 1..{params.num_tags}, got {m}")
    threshold = params.p_c / ((m - params.eta_r) * params.eta_c * params.p_v)
    rng = substream(cfg.seed, m)
    hits = 0
    for n in _blocks(cfg.trials):
        gain = sample_mixture_gain(link, ch, n, rng)
        hits += int(np.count_nonzero(gain < threshold))
    return _estimate(hits, cfg.trials)


def mc_snr_cdf_backscatter(
    x: float,
    link: LinkStats,
    params: SystemParams,
    ch: ChannelParams,
    cfg: McConfig,
    stream: int = 0,
) -> McEstimate:
    """Empirical Pr(backscatter SNR < x) with independent g, g' mixtures."""
    rng = substream(cfg.seed, stream)
    hits = 0
    for n in _blocks(cfg.trials):
        g = sample_mixture_gain(link, ch, n, rng)
        g_back = sample_mixture_gain(link, ch, n, rng)
        snr = params.eta_r * params.p_v * g * g_back / (
            g * params.sigma2_um + params.sigma2_v
        )
        hits += int(np.count_nonzero(snr < x))
    return _estimate(hits, cfg.trials)


def mc_snr_cdf_uplink(
    x: float,
    link_vb: LinkStats,
    params: SystemParams,
    ch: ChannelParams,
    cfg: McConfig,
    stream: int = 0,
) -> McEstimate:
    """Empirical Pr(upload SNR < x)."""
    rng = substream(cfg.seed, stream)
    hits = 0
    for n in _blocks(cfg.trials):
        g = sample_mixture_gain(link_vb, ch, n, rng)
        snr = params.p_v * g / params.sigma2_b
        hits += int(np.count_nonzero(snr < x))
    return _estimate(hits, cfg.trials)


def mc_tag_outage(
    m: int,
    scenario: Scenario,
    params: SystemParams,
    ch: ChannelParams,
    cfg: McConfig,
) -> McEstimate:
    """Per-trial joint outage of 1-based tag m.

    A trial is an outage when the backscatter SNR misses the tag threshold,
    the upload SNR misses the uplink threshold, or the harvest misses the
    circuit draw; gains are drawn per `cfg.correlation_mode`.
    """
    if not 1 <= m <= scenario.num_tags:
        raise ValueError(f"tag index must be in 1..{scenario.num_tags}, got {m}")
    gamma_tags, gamma_up = snr_thresholds(params)
    link = tag_link(scenario, ch, m)
    link_vb = bs_link(scenario, ch)
    slot = tag_slots(scenario)[m - 1]
    energy_threshold = params.p_c / ((slot - params.eta_r) * params.eta_c * params.p_v)

    rng = substream(cfg.seed, m)
    hits = 0
    for n in _blocks(cfg.trials):
        if cfg.correlation_mode == "paper_faithful":
            g = sample_mixture_gain(link, ch, n, rng)
            g_back = sample_mixture_gain(link, ch, n, rng)
            g_energy = sample_mixture_gain(link, ch, n, rng)
        else:
            is_los = rng.random(n) < link.p_los
            g = _conditional_gain(link, ch, is_los, rng)
            g_back = _conditional_gain(link, ch, is_los, rng)
            g_energy = g
        g_up = sample_mixture_gain(link_vb, ch, n, rng)

        snr_back = params.eta_r * params.p_v * g * g_back / (
            g * params.sigma2_um + params.sigma2_v
        )
        snr_up = params.p_v * g_up / params.sigma2_b
        outage = (
            (snr_back < gamma_tags[m - 1])
            | (snr_up < gamma_up)
            | (g_energy < energy_threshold)
        )
        hits += int(np.count_nonzero(outage))
    return _estimate(hits, cfg.trials)


def mc_system_outage(
    scenario: Scenario,
    params: SystemParams,
    ch: ChannelParams,
    cfg: McConfig,
) -> McEstimate:
    """Mean of the per-tag estimators, one independent substream per tag."""
    parts = [
        mc_tag_outage(m, scenario, params, ch, cfg)
        for m in range(1, scenario.num_tags + 1)
    ]
    return _combine_mean(parts)
