"""Outage analytics and energy-efficiency optimization for UAV-assisted
backscatter data collection.

A UAV hovers near ground tags, powers them over the air while they reflect
their data back, then flies toward a base station and uploads everything it
collected.  This package computes the closed-form outage probability of that
mission, validates every expression against a seeded Monte-Carlo oracle, and
finds the hover point that maximizes energy efficiency under the UAV's
energy budget.
"""

from .channel import (
    ChannelParams,
    LinkStats,
    los_probability,
    make_link_stats,
    mixture_gain_cdf,
    mixture_gain_pdf,
)
from .config import RunConfig, SweepSpec, load_config, parse_config_text, render_config
from .errors import ConfigError, InfeasibleBudgetError, NumericalError, QuadratureError
from .geometry import Scenario, elevation_angle_deg, link_distance, place_tags
from .montecarlo import (
    McConfig,
    McEstimate,
    mc_energy_outage,
    mc_snr_cdf_backscatter,
    mc_snr_cdf_uplink,
    mc_system_outage,
    mc_tag_outage,
    sample_mixture_gain,
    substream,
)
from .optimizer import (
    OptResult,
    energy_efficiency,
    feasible_region,
    golden_section,
    mission_energy,
    optimize_location,
)
from .outage import (
    OutageReport,
    SystemParams,
    bs_link,
    energy_outage,
    snr_cdf_backscatter,
    snr_cdf_uplink,
    snr_thresholds,
    system_outage,
    tag_link,
    tag_outage,
    tag_slots,
    uplink_rate,
)
from .specfun import GammaDist, gamma_cdf, gamma_pdf, gamma_sample, reg_lower_inc_gamma

__version__ = "0.1.0"

__all__ = [
    "ChannelParams",
    "ConfigError",
    "GammaDist",
    "InfeasibleBudgetError",
    "LinkStats",
    "McConfig",
    "McEstimate",
    "NumericalError",
    "OptResult",
    "OutageReport",
    "QuadratureError",
    "RunConfig",
    "Scenario",
    "SweepSpec",
    "SystemParams",
    "bs_link",
    "elevation_angle_deg",
    "energy_efficiency",
    "energy_outage",
    "feasible_region",
    "gamma_cdf",
    "gamma_pdf",
    "gamma_sample",
    "golden_section",
    "link_distance",
    "load_config",
    "los_probability",
    "make_link_stats",
    "mc_energy_outage",
    "mc_snr_cdf_backscatter",
    "mc_snr_cdf_uplink",
    "mc_system_outage",
    "mc_tag_outage",
    "mission_energy",
    "mixture_gain_cdf",
    "mixture_gain_pdf",
    "optimize_location",
    "parse_config_text",
    "place_tags",
    "reg_lower_inc_gamma",
    "render_config",
    "sample_mixture_gain",
    "snr_cdf_backscatter",
    "snr_cdf_uplink",
    "snr_thresholds",
    "substream",
    "system_outage",
    "tag_link",
    "tag_outage",
    "tag_slots",
    "uplink_rate",
]
