"""Exception types shared across the package."""

from __future__ import annotations


class PremonError(Exception):
    """Base class for all domain errors."""


class ValidationError(PremonError):
    """A structure failed its construction-time invariants.

    Carries a human-readable diagnostic and, when available, a witness of
    the violation (e.g. the triple breaking associativity).
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotANonUnit(PremonError):
    """An operation defined only on preorder-non-units was given a unit."""


class BudgetExhausted(PremonError):
    """A bounded search ran out of budget before reaching a definite answer."""
