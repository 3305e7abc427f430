"""Shared validation report type used by the query and record validators."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a validation pass.

    Violations break a hard invariant; warnings flag suspect but legal
    content (unresolved refs, missing metadata part, odd date syntax).
    """

    violations: tuple[str, ...] = field(default=())
    warnings: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok and not self.warnings:
            return "clean"
        lines = [f"violation: {v}" for v in self.violations]
        lines += [f"warning: {w}" for w in self.warnings]
        return "\n".join(lines)
