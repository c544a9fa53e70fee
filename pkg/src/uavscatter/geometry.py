"""Mission geometry: tag layout, link distances, and elevation angles.

The mission runs in a vertical plane: tags sit on the ground at (tag_x, 0),
the UAV hovers at (x1, h) while collecting, flies to (x2, h), and uploads to
a base station at (x_b, 0).  Angles are carried in degrees throughout because
the air-to-ground visibility constants (c, q) are calibrated for degrees;
the radians-to-degrees conversion happens exactly once, here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Scenario:
    """Positions of every actor in the three-stage mission.

    Attributes:
        tag_x: ground-tag abscissas in meters, one per tag.
        x1: UAV hover abscissa during data collection, meters.
        x2: UAV abscissa while uploading to the base station, meters.
        x_b: base station abscissa, meters.
        h: UAV altitude, meters (shared by both hover points).
        slots: optional 1-based TDMA slot index per tag.  When omitted, tags
            take slots in ascending position order.
    """

    tag_x: tuple[float, ...]
    x1: float
    x2: float
    x_b: float
    h: float
    slots: tuple[int, ...] | None = field(default=None)

    def __post_init__(self) -> None:
        if len(self.tag_x) < 1:
            raise ValueError("scenario needs at least one tag")
        if not self.h > 0.0:
            raise ValueError(f"altitude must be positive, got {self.h}")
        if self.x1 > self.x2:
            raise ValueError(
                f"collection point x1={self.x1} must not exceed upload point x2={self.x2}"
            )
        if self.slots is not None:
            if sorted(self.slots) != list(range(1, len(self.tag_x) + 1)):
                raise ValueError(
                    f"slots must be a permutation of 1..{len(self.tag_x)}, got {self.slots}"
                )

    @property
    def num_tags(self) -> int:
        return len(self.tag_x)


def link_distance(px: float, py: float, qx: float, qy: float) -> float:
    """Euclidean distance between two points in the mission plane.

    Raises:
        ValueError: if the points coincide (a degenerate link).
    """
    d = math.hypot(px - qx, py - qy)
    if d == 0.0:
        raise ValueError(f"degenerate link: both endpoints at ({px}, {py})")
    return d


def elevation_angle_deg(d: float, h: float) -> float:
    """Elevation angle in degrees of a link of length d seen from altitude h.

    theta = (180/pi) * arcsin(h / d), in (0, 90].

    Raises:
        ValueError: unless 0 < h <= d.
    """
    if not 0.0 < h <= d:
        raise ValueError(f"need 0 < h <= d, got h={h}, d={d}")
    return math.degrees(math.asin(h / d))


def place_tags(
    count: int, range_m: float, rng: np.random.Generator
) -> tuple[float, ...]:
    """Scatter `count` tags uniformly over [0, range_m], sorted ascending.

    Deterministic for a fixed generator state.
    """
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    if not range_m > 0.0:
        raise ValueError(f"range_m must be positive, got {range_m}")
    xs = rng.uniform(0.0, range_m, count)
    return tuple(sorted(float(x) for x in xs))
