"""Air-to-ground channel statistics.

Each link is line-of-sight with a probability that grows with elevation
angle; conditioned on the LoS state, the channel power gain is Gamma
distributed with mean beta0 * d^-alpha (LoS) or eta_nlos * beta0 * d^-alpha
(NLoS).  The unconditional gain is therefore a two-component Gamma mixture,
and all outage closed forms are built from its CDF/PDF.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import elevation_angle_deg
from .specfun import GammaDist, gamma_cdf, gamma_pdf


@dataclass(frozen=True)
class ChannelParams:
    """Environment and fading constants shared by every link.

    Defaults are the suburban air-to-ground setting used throughout the
    bundled configuration: visibility constants c, q (per degree), unit
    reference gain at 1 m, free-space path-loss exponent, shape factor 2
    for both propagation states, and 3 dB of extra NLoS attenuation.
    """

    c: float = 11.95
    q: float = 0.136
    beta0: float = 1.0
    alpha: float = 2.0
    k_los: float = 2.0
    k_nlos: float = 2.0
    eta_nlos: float = 0.5

    def __post_init__(self) -> None:
        for name in ("c", "q", "beta0", "alpha", "k_los", "k_nlos"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if not 0.0 < self.eta_nlos <= 1.0:
            raise ValueError(f"eta_nlos must be in (0, 1], got {self.eta_nlos}")


@dataclass(frozen=True)
class LinkStats:
    """Derived per-link quantities: distance, angle, and mixture parameters."""

    distance: float
    theta_deg: float
    p_los: float
    omega_los: float
    omega_nlos: float

    def __post_init__(self) -> None:
        if not self.distance > 0.0:
            raise ValueError("distance must be positive")
        if not 0.0 < self.theta_deg <= 90.0:
            raise ValueError("theta_deg must be in (0, 90]")
        if not 0.0 < self.p_los < 1.0:
            raise ValueError("p_los must be in (0, 1)")
        if not (self.omega_los > 0.0 and self.omega_nlos > 0.0):
            raise ValueError("mean gains must be positive")


def los_probability(theta_deg: float, params: ChannelParams) -> float:
    """Probability of line-of-sight at elevation angle theta (degrees).

    1 / (1 + c * exp(-q * (theta - c))); strictly increasing in theta.

    Raises:
        ValueError: if theta_deg is outside (0, 90].
    """
    if not 0.0 < theta_deg <= 90.0:
        raise ValueError(f"theta_deg must be in (0, 90], got {theta_deg}")
    return 1.0 / (1.0 + params.c * math.exp(-params.q * (theta_deg - params.c)))


def make_link_stats(distance: float, h: float, params: ChannelParams) -> LinkStats:
    """Fill every LinkStats field for a link of the given length and altitude."""
    theta = elevation_angle_deg(distance, h)
    omega_los = params.beta0 * distance ** (-params.alpha)
    return LinkStats(
        distance=distance,
        theta_deg=theta,
        p_los=los_probability(theta, params),
        omega_los=omega_los,
        omega_nlos=params.eta_nlos * omega_los,
    )


def mixture_gain_cdf(link: LinkStats, params: ChannelParams, x: float) -> float:
    """CDF of the unconditional channel power gain at x >= 0."""
    los = gamma_cdf(GammaDist(params.k_los, link.omega_los), x)
    nlos = gamma_cdf(GammaDist(params.k_nlos, link.omega_nlos), x)
    return link.p_los * los + (1.0 - link.p_los) * nlos


def mixture_gain_pdf(link: LinkStats, params: ChannelParams, x: float) -> float:
    """Density of the unconditional channel power gain at x > 0."""
    los = gamma_pdf(GammaDist(params.k_los, link.omega_los), x)
    nlos = gamma_pdf(GammaDist(params.k_nlos, link.omega_nlos), x)
    return link.p_los * los + (1.0 - link.p_los) * nlos
