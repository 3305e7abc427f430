"""Celestial positions and the equatorial (J2000) <-> galactic rotation.

Angles are degrees throughout.  The galactic frame is fixed by the J2000
values of the north galactic pole and the galactic longitude of the north
celestial pole; the conversions are the closed-form spherical-trig
expressions of that rotation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .numfmt import format_number

EQUATORIAL = "eq"
GALACTIC = "gal"

SYSTEMS = (EQUATORIAL, GALACTIC)

# J2000 galactic frame constants, degrees.
NGP_RA = 192.85948      # right ascension of the north galactic pole
NGP_DEC = 27.12825      # declination of the north galactic pole
NCP_GLON = 122.93192    # galactic longitude of the north celestial pole


class PositionParseError(ValueError):
    """Raised for text that does not describe a sky position or cone."""


def _norm_lon(lon: float, lat: float) -> float:
    # at the poles longitude is degenerate; canonical form is 0
    if abs(lat) == 90.0:
        return 0.0
    lon = math.fmod(lon, 360.0)
    if lon < 0.0:
        lon += 360.0
    # fmod of e.g. -1e-16 rounds back up to 360.0 exactly
    if lon == 360.0:
        lon = 0.0
    return lon


@dataclass(frozen=True)
class SkyPosition:
    """Point on the celestial sphere: lon in [0, 360), lat in [-90, 90]."""

    system: str
    lon: float
    lat: float

    def __post_init__(self):
        if self.system not in SYSTEMS:
            raise ValueError(f"unknown coordinate system {self.system!r}")
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"latitude {self.lat} out of range [-90, 90]")
        object.__setattr__(self, "lon", _norm_lon(float(self.lon), float(self.lat)))
        object.__setattr__(self, "lat", float(self.lat))


@dataclass(frozen=True)
class Cone:
    """Cone on the sphere: all points within `radius` degrees of `center`."""

    center: SkyPosition
    radius: float

    def __post_init__(self):
        if not 0.0 <= self.radius <= 180.0:
            raise ValueError(f"cone radius {self.radius} out of range [0, 180]")
        object.__setattr__(self, "radius", float(self.radius))


def equatorial_to_galactic(p: SkyPosition) -> SkyPosition:
    """Rotate an equatorial J2000 position into galactic coordinates."""
    if p.system != EQUATORIAL:
        raise ValueError("expected an equatorial position")
    ra = math.radians(p.lon)
    dec = math.radians(p.lat)
    ra_p = math.radians(NGP_RA)
    dec_p = math.radians(NGP_DEC)

    sin_b = math.sin(dec_p) * math.sin(dec) + math.cos(dec_p) * math.cos(dec) * math.cos(ra - ra_p)
    sin_b = min(1.0, max(-1.0, sin_b))
    b = math.asin(sin_b)
    # l measured from NCP_GLON back through the pole meridian
    y = math.cos(dec) * math.sin(ra - ra_p)
    x = math.cos(dec_p) * math.sin(dec) - math.sin(dec_p) * math.cos(dec) * math.cos(ra - ra_p)
    l = math.radians(NCP_GLON) - math.atan2(y, x)
    return SkyPosition(GALACTIC, math.degrees(l), math.degrees(b))


def galactic_to_equatorial(p: SkyPosition) -> SkyPosition:
    """Inverse rotation of :func:`equatorial_to_galactic`."""
    if p.system != GALACTIC:
        raise ValueError("expected a galactic position")
    l = math.radians(p.lon)
    b = math.radians(p.lat)
    ra_p = math.radians(NGP_RA)
    dec_p = math.radians(NGP_DEC)
    dl = math.radians(NCP_GLON) - l

    sin_dec = math.sin(dec_p) * math.sin(b) + math.cos(dec_p) * math.cos(b) * math.cos(dl)
    sin_dec = min(1.0, max(-1.0, sin_dec))
    dec = math.asin(sin_dec)
    y = math.cos(b) * math.sin(dl)
    x = math.cos(dec_p) * math.sin(b) - math.sin(dec_p) * math.cos(b) * math.cos(dl)
    ra = ra_p + math.atan2(y, x)
    return SkyPosition(EQUATORIAL, math.degrees(ra), math.degrees(dec))


def to_galactic(p: SkyPosition) -> SkyPosition:
    return p if p.system == GALACTIC else equatorial_to_galactic(p)


def angular_separation(a: SkyPosition, b: SkyPosition) -> float:
    """Great-circle separation in degrees, stable at small angles.

    Positions in different systems are both taken to galactic first.
    """
    if a.system != b.system:
        a = to_galactic(a)
        b = to_galactic(b)
    lon1, lat1 = math.radians(a.lon), math.radians(a.lat)
    lon2, lat2 = math.radians(b.lon), math.radians(b.lat)
    dlon = lon2 - lon1
    # Vincenty: atan2 of chord terms avoids acos precision loss near 0 and 180
    num = math.hypot(
        math.cos(lat2) * math.sin(dlon),
        math.cos(lat1) * math.sin(lat2) - math.sin(lat1) * math.cos(lat2) * math.cos(dlon),
    )
    den = math.sin(lat1) * math.sin(lat2) + math.cos(lat1) * math.cos(lat2) * math.cos(dlon)
    return math.degrees(math.atan2(num, den))


def cone_contains(c: Cone, p: SkyPosition) -> bool:
    """True iff p lies within the cone, boundary inclusive."""
    return angular_separation(c.center, p) <= c.radius


def parse_position(text: str) -> SkyPosition | Cone:
    """Parse ``SYS LON LAT`` into a position or ``SYS LON LAT RADIUS`` into a cone.

    SYS is ``gal`` or ``eq``; all numbers are degrees.
    """
    parts = text.split()
    if len(parts) not in (3, 4):
        raise PositionParseError(f"expected 'SYS LON LAT [RADIUS]', got {text!r}")
    sys_tag = parts[0]
    if sys_tag not in SYSTEMS:
        raise PositionParseError(f"unknown system tag {sys_tag!r} (expected gal or eq)")
    try:
        numbers = [float(v) for v in parts[1:]]
    except ValueError as exc:
        raise PositionParseError(f"bad number in position {text!r}") from exc
    lon, lat = numbers[0], numbers[1]
    if not -90.0 <= lat <= 90.0:
        raise PositionParseError(f"latitude {lat} out of range [-90, 90]")
    pos = SkyPosition(sys_tag, lon, lat)
    if len(parts) == 3:
        return pos
    radius = numbers[2]
    if not 0.0 <= radius <= 180.0:
        raise PositionParseError(f"cone radius {radius} out of range [0, 180]")
    return Cone(pos, radius)


def position_text(p: SkyPosition | Cone) -> str:
    """Inverse of parse_position; numbers keep full precision."""
    if isinstance(p, Cone):
        return f"{position_text(p.center)} {format_number(p.radius)}"
    return f"{p.system} {format_number(p.lon)} {format_number(p.lat)}"
