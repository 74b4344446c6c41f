"""Explicit search bounds.

A SearchBudget turns semi-decidable questions into certified bounded ones:
every answer computed under a budget is either definite (and correct) or
UNKNOWN. Exceeding a cap must never produce a wrong definite answer.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import ValidationError


@dataclass(frozen=True)
class SearchBudget:
    """Bounds for the classification and factorization searches.

    chain_depth      -- maximal length of descending chains materialized
                        as evidence (height lower bounds, descent witnesses).
    factor_len_cap   -- bound on factor-list length standing in for
                        unbounded degree in irreducibility searches.
    node_cap         -- hard cap on search nodes (products formed, words
                        expanded) per operation call.
    relation_budget  -- bound handed to tri-state leq/equal backends; its
                        reading is family-specific (exponent cap for the
                        rational families, rewrite radius for presented
                        monoids).
    """

    chain_depth: int = 30
    factor_len_cap: int = 6
    node_cap: int = 1_000_000
    relation_budget: int = 8

    def __post_init__(self):
        for name in ("chain_depth", "factor_len_cap", "node_cap", "relation_budget"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValidationError(f"budget field {name} must be an integer >= 1, got {value!r}")

    def scaled(self, factor: int) -> "SearchBudget":
        """Return a budget with every field multiplied by `factor`."""
        if factor < 1:
            raise ValidationError("scale factor must be >= 1")
        return replace(
            self,
            chain_depth=self.chain_depth * factor,
            factor_len_cap=self.factor_len_cap * factor,
            node_cap=self.node_cap * factor,
            relation_budget=self.relation_budget * factor,
        )


DEFAULT_BUDGET = SearchBudget()


class NodeMeter:
    """Mutable countdown shared by one operation call."""

    def __init__(self, cap: int):
        self.remaining = cap

    def spend(self, amount: int = 1) -> bool:
        """Consume budget; returns False once the cap is hit."""
        self.remaining -= amount
        return self.remaining >= 0
