"""Three-valued verdicts for bounded decision procedures.

Every semi-decidable predicate in this package answers TRUE, FALSE, or
UNKNOWN. A definite answer (TRUE/FALSE) is a certificate: it may never be
wrong, and enlarging a search budget may only turn UNKNOWN into a definite
answer, never flip one.
"""

from __future__ import annotations

import enum


class Tri(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, value: bool) -> "Tri":
        return cls.TRUE if value else cls.FALSE

    @property
    def definite(self) -> bool:
        return self is not Tri.UNKNOWN

    def negate(self) -> "Tri":
        if self is Tri.TRUE:
            return Tri.FALSE
        if self is Tri.FALSE:
            return Tri.TRUE
        return Tri.UNKNOWN

    def __bool__(self) -> bool:
        # Truthiness would silently conflate FALSE and UNKNOWN.
        raise TypeError("Tri is not a bool; compare against Tri members")

    def __str__(self) -> str:
        return self.value


def tri_and(*values: Tri) -> Tri:
    """Kleene conjunction: FALSE dominates, then UNKNOWN."""
    if any(v is Tri.FALSE for v in values):
        return Tri.FALSE
    if any(v is Tri.UNKNOWN for v in values):
        return Tri.UNKNOWN
    return Tri.TRUE


def tri_or(*values: Tri) -> Tri:
    """Kleene disjunction: TRUE dominates, then UNKNOWN."""
    if any(v is Tri.TRUE for v in values):
        return Tri.TRUE
    if any(v is Tri.UNKNOWN for v in values):
        return Tri.UNKNOWN
    return Tri.FALSE
