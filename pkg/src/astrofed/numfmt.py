"""Canonical number formatting for serialized query and record text."""

from __future__ import annotations

import re

_EXP_ZERO = re.compile(r"e([+-])0+(\d)")


def format_number(v: float) -> str:
    """Shortest round-trip decimal form, exponent without leading zeros.

    1e-06 renders as "1e-6"; integral floats keep their ".0" only when repr
    does, so parse(format(x)) == x exactly.
    """
    return _EXP_ZERO.sub(r"e\1\2", repr(float(v)))
