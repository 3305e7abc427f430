"""Federated search gateway for astronomical metadata collections.

A small stack modeled on the digital-library pattern of one query language
fanned out to heterogeneous providers: an abstract boolean search language
with profile vocabularies, an XML record model for astronomical objects,
stateful federated sessions, FITS browse primitives, record clustering,
and an HTTP gateway tying them together.
"""

__version__ = "0.1.0"

from .aml import AmlDocument, parse_aml, serialize_aml, validate_aml
from .gasl import And, Not, Or, QueryNode, RecordFields, Term, eval_query, parse_gasl, serialize_gasl
from .profiles import builtin_profiles, get_profile
from .skycoords import Cone, SkyPosition, angular_separation, cone_contains, parse_position

__all__ = [
    "AmlDocument",
    "And",
    "Cone",
    "Not",
    "Or",
    "QueryNode",
    "RecordFields",
    "SkyPosition",
    "Term",
    "__version__",
    "angular_separation",
    "builtin_profiles",
    "cone_contains",
    "eval_query",
    "get_profile",
    "parse_aml",
    "parse_gasl",
    "parse_position",
    "serialize_aml",
    "serialize_gasl",
    "validate_aml",
]
