"""Great-circle distance and the near/far reachability rule."""

from __future__ import annotations

import math
from enum import Enum

from .model import GeoPoint

# Spherical Earth, mean radius. Sub-meter error at the 500 m scale that
# matters here; an ellipsoid would be noise.
EARTH_RADIUS_M = 6_371_000.0

# Strictly beyond this is out of reach; exactly 500.0 m is still near.
NEAR_RADIUS_M = 500.0


class ProximityClass(str, Enum):
    NEAR = "near"
    FAR = "far"


def distance_meters(a: GeoPoint, b: GeoPoint) -> float:
    """Haversine distance in meters between two coordinate pairs."""
    lat1 = math.radians(a.latitude_deg)
    lat2 = math.radians(b.latitude_deg)
    dlat = math.radians(b.latitude_deg - a.latitude_deg)
    dlon = math.radians(b.longitude_deg - a.longitude_deg)
    h = math.sin(dlat / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2) ** 2
    return 2.0 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(h)))


def classify_proximity(distance_m: float) -> ProximityClass:
    return ProximityClass.FAR if distance_m > NEAR_RADIUS_M else ProximityClass.NEAR
