"""Search profiles: named attribute vocabularies with per-attribute relations.

Two profiles ship with the gateway: the bibliographic ``bib-1.0`` and the
astronomy ``astro-1.0`` which extends it with sky position, object name,
object type and wavelength.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

# relation vocabulary
EQ, NE, LT, LE, GT, GE, CONTAINS, WITHIN = "eq", "ne", "lt", "le", "gt", "ge", "contains", "within"
RELATIONS = (EQ, NE, LT, LE, GT, GE, CONTAINS, WITHIN)
ORDERING_RELATIONS = frozenset((LT, LE, GT, GE))

# value kinds
TEXT = "text"
NUMBER_UNIT = "number+unit"
SKY_POSITION = "sky-position"
ENUM = "enum"
VALUE_KINDS = (TEXT, NUMBER_UNIT, SKY_POSITION, ENUM)

# accepted length units, factor to meters
UNITS_TO_SI = {
    "m": 1.0,
    "mm": 1e-3,
    "um": 1e-6,
    "nm": 1e-9,
    "angstrom": 1e-10,
}

_NAME_RE = re.compile(r"^[a-z]+(-[a-z]+)*$")


class UnknownProfileError(KeyError):
    """Raised when a profile id is not registered."""


def to_si(value: float, unit: str | None) -> float:
    """Normalize a number with an optional length unit to meters."""
    if unit is None:
        return float(value)
    try:
        return float(value) * UNITS_TO_SI[unit]
    except KeyError:
        raise ValueError(f"unknown unit {unit!r}") from None


@dataclass(frozen=True)
class AttributeDef:
    """A searchable attribute: its value kind and the relations it allows."""

    name: str
    value_kind: str
    allowed_relations: frozenset[str]
    enum_values: tuple[str, ...] = ()

    def __post_init__(self):
        if not _NAME_RE.match(self.name):
            raise ValueError(f"attribute name {self.name!r} must be lowercase hyphen-separated")
        if self.value_kind not in VALUE_KINDS:
            raise ValueError(f"unknown value kind {self.value_kind!r}")
        bad = set(self.allowed_relations) - set(RELATIONS)
        if bad:
            raise ValueError(f"unknown relations {sorted(bad)}")
        if WITHIN in self.allowed_relations and self.value_kind != SKY_POSITION:
            raise ValueError(f"'within' is only allowed for sky-position attributes ({self.name})")
        if self.allowed_relations & ORDERING_RELATIONS and self.value_kind != NUMBER_UNIT:
            raise ValueError(f"ordering relations require a number+unit attribute ({self.name})")
        if self.value_kind == ENUM and not self.enum_values:
            raise ValueError(f"enum attribute {self.name} needs enum_values")


@dataclass(frozen=True)
class Profile:
    """A named set of attribute definitions."""

    id: str
    attributes: tuple[AttributeDef, ...]

    def __post_init__(self):
        names = [a.name for a in self.attributes]
        if len(names) != len(set(names)):
            raise ValueError(f"duplicate attribute names in profile {self.id}")

    def get(self, name: str) -> AttributeDef | None:
        for a in self.attributes:
            if a.name == name:
                return a
        return None

    def extends(self, other: Profile) -> bool:
        """True if every attribute of `other` appears unchanged here."""
        return all(self.get(a.name) == a for a in other.attributes)


def _text_attr(name: str) -> AttributeDef:
    return AttributeDef(name, TEXT, frozenset((EQ, NE, CONTAINS)))


_BIB_ATTRS = tuple(
    _text_attr(n) for n in ("title", "creator", "subject", "description", "date", "identifier")
)

BIB_PROFILE = Profile("bib-1.0", _BIB_ATTRS)

ASTRO_PROFILE = Profile(
    "astro-1.0",
    _BIB_ATTRS
    + (
        AttributeDef("sky-position", SKY_POSITION, frozenset((WITHIN,))),
        _text_attr("object-name"),
        _text_attr("object-type"),
        AttributeDef("wavelength", NUMBER_UNIT, frozenset((EQ, NE, LT, LE, GT, GE))),
    ),
)

_BUILTIN = {p.id: p for p in (BIB_PROFILE, ASTRO_PROFILE)}


def builtin_profiles() -> dict[str, Profile]:
    return dict(_BUILTIN)


def get_profile(profile_id: str) -> Profile:
    try:
        return _BUILTIN[profile_id]
    except KeyError:
        raise UnknownProfileError(profile_id) from None
