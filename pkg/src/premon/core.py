"""Generic preordered monoids and their classification operations.

A premon is a monoid together with a preorder on its carrier; nothing
relates the two (no compatibility is assumed). Relative to the preorder,
elements classify as units, quarks, degree-s irreducibles, and carry a
height; factorization into irreducibles is constructive and every verdict
is a budget-bounded certificate.

The operations here are generic over capability records. Concrete families
(Cayley-table monoids, rational Puiseux-type monoids, presented monoids)
plug in their own element representation, equality, enumeration, and
optional accelerator hooks.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable

from .budget import DEFAULT_BUDGET, NodeMeter, SearchBudget
from .errors import BudgetExhausted, NotANonUnit, ValidationError
from .tristate import Tri, tri_and

Element = Any

#: Degree marker for "no bound on factor-list length" (capped by the budget).
UNBOUNDED = math.inf


# ---------------------------------------------------------------------------
# Capability records


@dataclass(frozen=True)
class Carrier:
    """A (possibly partial) enumeration of elements.

    `exhaustive` asserts the enumeration is complete for the semantics it
    was requested under: a finite carrier listed in full, or a family's
    certified-complete bounded enumeration. Non-exhaustive carriers force
    UNKNOWN whenever completeness would be needed for a definite answer.
    """

    items: tuple
    exhaustive: bool


@dataclass(frozen=True)
class MonoidCapability:
    """What the generic layer needs from a monoid.

    equal is three-valued because equality itself may be budget-bounded
    (word problems). `key` maps elements to hashable search keys; when
    `canonical_key` holds, key equality coincides with monoid equality and
    enables exact set-based searches.
    """

    identity: Element
    multiply: Callable[[Element, Element], Element]
    equal: Callable[[Element, Element, SearchBudget], Tri]
    carrier: Callable[[SearchBudget], Carrier]
    key: Callable[[Element], Hashable] | None = None
    canonical_key: bool = False
    description: str = "monoid"


@dataclass(frozen=True)
class PreorderCapability:
    """A reflexive transitive relation, queried as bounded tri-state leq."""

    leq: Callable[[Element, Element, SearchBudget], Tri]
    description: str = "preorder"


@dataclass(frozen=True)
class DescentEvidence:
    """A strictly descending chain produced by a family constructor.

    `strict_certified` -- every consecutive step carries a definite
    strictness certificate.
    `extends_forever`  -- the family argument guarantees the chain
    continues beyond the materialized prefix; only then does the evidence
    refute artinianity.
    """

    chain: tuple
    strict_certified: bool
    extends_forever: bool
    note: str = ""


@dataclass(frozen=True)
class FamilyHooks:
    """Optional accelerators supplied by concrete monoid families.

    divisor_candidates(x, budget) -> Carrier: every element that can sit
    strictly below x within the budget's semantics must be included;
    `exhaustive` certifies completeness at that budget.

    infinite_descent(x, budget) -> DescentEvidence | None: a known
    descending chain starting at x, if the family can construct one.

    artinian_certificate(x, budget) -> Verdict | None: a family-specific
    decision for artinianity of x.
    """

    divisor_candidates: Callable[[Element, SearchBudget], Carrier] | None = None
    infinite_descent: Callable[[Element, SearchBudget], DescentEvidence | None] | None = None
    artinian_certificate: Callable[[Element, SearchBudget], "Verdict | None"] | None = None


@dataclass(frozen=True)
class Premon:
    """A monoid paired with a preorder on its carrier."""

    monoid: MonoidCapability
    preorder: PreorderCapability
    hooks: FamilyHooks = field(default_factory=FamilyHooks)

    @staticmethod
    def create(
        monoid: MonoidCapability,
        preorder: PreorderCapability,
        hooks: FamilyHooks | None = None,
        sample_size: int = 6,
        budget: SearchBudget = DEFAULT_BUDGET,
    ) -> "Premon":
        """Build a premon, spot-checking the capability invariants.

        Checks identity, associativity, reflexivity, and transitivity on a
        sample of the carrier; raises ValidationError with a witness on the
        first violation. Sampled checks skip UNKNOWN comparisons.
        """
        sample = list(monoid.carrier(budget).items[:sample_size])
        if monoid.identity not in sample:
            sample.append(monoid.identity)
        eq = lambda a, b: monoid.equal(a, b, budget)
        for x in sample:
            if eq(monoid.multiply(monoid.identity, x), x) is Tri.FALSE:
                raise ValidationError("identity is not left-neutral", witness=x)
            if eq(monoid.multiply(x, monoid.identity), x) is Tri.FALSE:
                raise ValidationError("identity is not right-neutral", witness=x)
        for x, y, z in itertools.product(sample, repeat=3):
            lhs = monoid.multiply(monoid.multiply(x, y), z)
            rhs = monoid.multiply(x, monoid.multiply(y, z))
            if eq(lhs, rhs) is Tri.FALSE:
                raise ValidationError("multiplication is not associative", witness=(x, y, z))
        for x in sample:
            if preorder.leq(x, x, budget) is Tri.FALSE:
                raise ValidationError("preorder is not reflexive", witness=x)
        for x, y, z in itertools.product(sample, repeat=3):
            if (
                preorder.leq(x, y, budget) is Tri.TRUE
                and preorder.leq(y, z, budget) is Tri.TRUE
                and preorder.leq(x, z, budget) is Tri.FALSE
            ):
                raise ValidationError("preorder is not transitive", witness=(x, y, z))
        return Premon(monoid, preorder, hooks or FamilyHooks())

    def dual(self) -> "Premon":
        """The same monoid under the opposite preorder."""
        base = self.preorder
        flipped = PreorderCapability(
            leq=lambda x, y, budget: base.leq(y, x, budget),
            description=f"dual({base.description})",
        )
        return Premon(self.monoid, flipped, FamilyHooks())


def flat_preorder() -> PreorderCapability:
    """All pairs related; every element is a unit."""
    return PreorderCapability(leq=lambda x, y, budget: Tri.TRUE, description="flat")


def discrete_preorder(monoid: MonoidCapability) -> PreorderCapability:
    """Equality as preorder; nothing sits strictly below anything."""
    return PreorderCapability(
        leq=lambda x, y, budget: monoid.equal(x, y, budget),
        description="discrete",
    )


# ---------------------------------------------------------------------------
# Result records


@dataclass(frozen=True)
class Verdict:
    """A tri-state answer with an optional witness and note."""

    verdict: Tri
    witness: Any = None
    note: str = ""

    def to_json_dict(self, render=str) -> dict:
        out = {"verdict": str(self.verdict)}
        if self.witness is not None:
            w = self.witness
            if isinstance(w, (tuple, list)):
                out["witness"] = [render(v) for v in w]
            else:
                out["witness"] = render(w)
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class Height:
    """Exact height, a certified lower bound, or witnessed-infinite.

    kind: "exact"    -- value is the height.
          "at_least" -- a strict chain of length `value` was certified;
                        nothing is claimed beyond it.
          "infinite" -- a family argument certifies an unbounded chain;
                        `value` is the depth materialized as evidence.
    """

    kind: str
    value: int

    def __post_init__(self):
        if self.kind not in ("exact", "at_least", "infinite"):
            raise ValidationError(f"bad height kind {self.kind!r}")

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    def render(self) -> str:
        if self.kind == "exact":
            return str(self.value)
        if self.kind == "at_least":
            return f">= {self.value}"
        return f"infinite (chain materialized to depth {self.value})"

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "value": self.value}


@dataclass(frozen=True)
class FactorStep:
    """One split performed during factorization: parent -> parts.

    Every part is a preorder-non-unit strictly below the parent; the parts
    multiply back to the parent.
    """

    parent: Element
    parts: tuple


@dataclass(frozen=True)
class Factorization:
    """A certified product decomposition into degree-s irreducibles."""

    target: Element
    factors: tuple
    degree: int | float
    splits: tuple[FactorStep, ...]

    def to_json_dict(self, render=str) -> dict:
        return {
            "target": render(self.target),
            "factors": [render(f) for f in self.factors],
            "degree": "inf" if self.degree == UNBOUNDED else int(self.degree),
            "splits": [
                {"parent": render(s.parent), "parts": [render(p) for p in s.parts]}
                for s in self.splits
            ],
        }


@dataclass(frozen=True)
class Classification:
    """Aggregate classification of one element.

    Invariants: a unit has height 0; a certified quark has height 1 and is
    irreducible at every checked degree.
    """

    element: Element
    is_unit: bool
    quark: Verdict
    irreducible: dict
    height: Height
    artinian: Verdict

    def to_json_dict(self, render=str) -> dict:
        return {
            "element": render(self.element),
            "is_unit": self.is_unit,
            "quark": self.quark.to_json_dict(render),
            "irreducible": {
                ("inf" if s == UNBOUNDED else str(s)): str(v)
                for s, v in self.irreducible.items()
            },
            "height": self.height.to_json_dict(),
            "artinian": self.artinian.to_json_dict(render),
        }


# ---------------------------------------------------------------------------
# Classification operations


def is_preorder_unit(P: Premon, x: Element, budget: SearchBudget = DEFAULT_BUDGET) -> bool:
    """True iff x <= 1 and 1 <= x under the preorder.

    Raises BudgetExhausted when either bounded query is UNKNOWN.
    """
    one = P.monoid.identity
    down = P.preorder.leq(x, one, budget)
    up = P.preorder.leq(one, x, budget)
    both = tri_and(down, up)
    if both is Tri.UNKNOWN:
        raise BudgetExhausted("unit test inconclusive at this budget")
    return both is Tri.TRUE


def strictly_below(P: Premon, x: Element, y: Element, budget: SearchBudget = DEFAULT_BUDGET) -> Tri:
    """x < y in the strict part of the preorder: x <= y and not y <= x."""
    forward = P.preorder.leq(x, y, budget)
    if forward is Tri.FALSE:
        return Tri.FALSE
    backward = P.preorder.leq(y, x, budget)
    return tri_and(forward, backward.negate())


def _require_non_unit(P: Premon, x: Element, budget: SearchBudget) -> None:
    if is_preorder_unit(P, x, budget):
        raise NotANonUnit(f"{x!r} is a preorder-unit")


def _candidates_below(P: Premon, x: Element, budget: SearchBudget):
    """Non-unit elements strictly below x, with a completeness flag.

    Completeness degrades whenever the source enumeration is partial or
    any membership test came back UNKNOWN.
    """
    if P.hooks.divisor_candidates is not None:
        source = P.hooks.divisor_candidates(x, budget)
    else:
        source = P.monoid.carrier(budget)
    exhaustive = source.exhaustive
    below = []
    for b in source.items:
        strict = strictly_below(P, b, x, budget)
        if strict is Tri.FALSE:
            continue
        try:
            if is_preorder_unit(P, b, budget):
                continue
        except BudgetExhausted:
            exhaustive = False
            continue
        if strict is Tri.UNKNOWN:
            exhaustive = False
            continue
        below.append(b)
    return below, exhaustive


def is_quark(P: Premon, x: Element, budget: SearchBudget = DEFAULT_BUDGET) -> Verdict:
    """No non-unit sits strictly below a quark.

    FALSE comes with a witness; TRUE requires the candidate enumeration to
    be complete at this budget.
    """
    _require_non_unit(P, x, budget)
    below, exhaustive = _candidates_below(P, x, budget)
    if below:
        return Verdict(Tri.FALSE, witness=below[0])
    if exhaustive:
        return Verdict(Tri.TRUE)
    return Verdict(Tri.UNKNOWN, note="candidate enumeration truncated")


def is_irreducible(
    P: Premon,
    x: Element,
    s: int | float,
    budget: SearchBudget = DEFAULT_BUDGET,
) -> Verdict:
    """No product of k in [2, s] non-units strictly below x equals x.

    s may be UNBOUNDED, in which case the budget's factor-length cap bounds
    k and TRUE certifies the capped statement. FALSE carries the witness
    tuple. The search is exact (set-based) when the monoid has a canonical
    key; otherwise it falls back to bounded tuple enumeration with
    tri-state equality.
    """
    if s != UNBOUNDED and (not isinstance(s, int) or s < 2):
        raise ValidationError(f"degree must be an integer >= 2 or UNBOUNDED, got {s!r}")
    _require_non_unit(P, x, budget)
    below, exhaustive = _candidates_below(P, x, budget)
    max_k = budget.factor_len_cap if s == UNBOUNDED else min(s, budget.factor_len_cap)
    # A finite degree beyond the cap cannot be certified TRUE, only refuted.
    capped = s != UNBOUNDED and s > budget.factor_len_cap

    if not below:
        if exhaustive and not capped:
            return Verdict(Tri.TRUE)
        return Verdict(Tri.UNKNOWN, note="candidate enumeration truncated")

    if P.monoid.canonical_key and P.monoid.key is not None:
        found, completed = _product_search_keyed(P, x, below, max_k, budget)
        if found is not None:
            return Verdict(Tri.FALSE, witness=found)
        if completed and exhaustive and not capped:
            return Verdict(Tri.TRUE)
        return Verdict(Tri.UNKNOWN, note="candidate enumeration truncated")

    outcome = _product_search_generic(P, x, below, max_k, budget)
    if isinstance(outcome, tuple):
        return Verdict(Tri.FALSE, witness=outcome)
    if outcome and exhaustive and not capped:
        return Verdict(Tri.TRUE)
    return Verdict(Tri.UNKNOWN, note="equality or enumeration inconclusive")


def _product_search_keyed(P, x, below, max_k, budget):
    """Exact search for x among products of 2..max_k candidates.

    Level j holds {key(p): p} for all products of exactly j candidates,
    with back-pointers for witness reconstruction. Sound and complete over
    the candidate list because the key is canonical.
    """
    key = P.monoid.key
    mul = P.monoid.multiply
    target = key(x)
    meter = NodeMeter(budget.node_cap)
    level = {key(b): b for b in below}
    parents: list[dict] = [dict((k, None) for k in level)]
    levels = [level]
    for j in range(2, max_k + 1):
        nxt: dict = {}
        back: dict = {}
        for pk, p in levels[-1].items():
            for b in below:
                if not meter.spend():
                    return None
                q = mul(p, b)
                qk = key(q)
                if qk not in nxt:
                    nxt[qk] = q
                    back[qk] = (pk, b)
        levels.append(nxt)
        parents.append(back)
        if target in nxt:
            # Walk back-pointers to recover the factor tuple.
            parts = []
            ck = target
            for lv in range(j, 1, -1):
                pk, b = parents[lv - 1][ck]
                parts.append(b)
                ck = pk
            parts.append(levels[0][ck])
            parts.reverse()
            return tuple(parts)
    return None


def _product_search_generic(P, x, below, max_k, budget):
    """Tuple enumeration with tri-state equality.

    Returns a witness tuple, or True when exhaustive with all comparisons
    definite, or False when truncated/inconclusive.
    """
    mul = P.monoid.multiply
    eq = P.monoid.equal
    meter = NodeMeter(budget.node_cap)
    conclusive = True

    def rec(prefix_product, parts):
        nonlocal conclusive
        if len(parts) >= 2:
            cmp = eq(prefix_product, x, budget)
            if cmp is Tri.TRUE:
                return tuple(parts)
            if cmp is Tri.UNKNOWN:
                conclusive = False
        if len(parts) == max_k:
            return None
        for b in below:
            if not meter.spend():
                conclusive = False
                return None
            hit = rec(mul(prefix_product, b) if parts else b, parts + [b])
            if hit is not None:
                return hit
        return None

    hit = rec(None, [])
    if hit is not None:
        return hit
    return conclusive


def height(P: Premon, x: Element, budget: SearchBudget = DEFAULT_BUDGET) -> Height:
    """Longest strict descent through non-units starting at x.

    Exact when the descent tree is exhausted within budget; otherwise a
    certified lower bound, or witnessed-infinite when a family chain
    constructor applies.
    """
    try:
        if is_preorder_unit(P, x, budget):
            return Height("exact", 0)
    except BudgetExhausted:
        return Height("at_least", 0)

    if P.hooks.infinite_descent is not None:
        evidence = P.hooks.infinite_descent(x, budget)
        if evidence is not None and evidence.strict_certified:
            if evidence.extends_forever:
                return Height("infinite", len(evidence.chain))
            return Height("at_least", len(evidence.chain))

    meter = NodeMeter(budget.node_cap)
    memo: dict = {}
    key = P.monoid.key if P.monoid.key is not None else lambda e: e

    def descend(y) -> tuple[int, bool]:
        """(longest chain from y, certified exhaustive)."""
        yk = key(y)
        if yk in memo:
            return memo[yk]
        memo[yk] = (1, False)  # cycle guard; strict descent cannot cycle
        below, exhaustive = _candidates_below(P, y, budget)
        best, certified = 1, exhaustive
        for b in below:
            if not meter.spend():
                certified = False
                break
            sub, sub_cert = descend(b)
            best = max(best, 1 + sub)
            certified = certified and sub_cert
        memo[yk] = (best, certified)
        return memo[yk]

    best, certified = descend(x)
    if certified:
        return Height("exact", best)
    return Height("at_least", best)


def is_artinian_element(P: Premon, x: Element, budget: SearchBudget = DEFAULT_BUDGET) -> Verdict:
    """No infinite strictly descending chain starts at x.

    On a finite materialized carrier strict descent always terminates, so
    the answer is TRUE outright. On infinite carriers only family evidence
    decides: a chain constructor refutes, a family certificate confirms;
    anything else is UNKNOWN.
    """
    if P.monoid.carrier(budget).exhaustive:
        return Verdict(Tri.TRUE, note="finite carrier: strict descent terminates")
    if P.hooks.infinite_descent is not None:
        evidence = P.hooks.infinite_descent(x, budget)
        if evidence is not None and evidence.strict_certified and evidence.extends_forever:
            return Verdict(Tri.FALSE, witness=evidence.chain, note=evidence.note)
    if P.hooks.artinian_certificate is not None:
        verdict = P.hooks.artinian_certificate(x, budget)
        if verdict is not None:
            return verdict
    return Verdict(Tri.UNKNOWN, note="no family certificate at this budget")


def is_strongly_artinian_element(
    P: Premon, x: Element, budget: SearchBudget = DEFAULT_BUDGET
) -> Verdict:
    """Finite height. Exact height certifies TRUE; witnessed-infinite
    height certifies FALSE; a bare lower bound stays UNKNOWN."""
    h = height(P, x, budget)
    if h.kind == "exact":
        return Verdict(Tri.TRUE, witness=h.value)
    if h.kind == "infinite":
        return Verdict(Tri.FALSE, note="unbounded descending chain witnessed")
    return Verdict(Tri.UNKNOWN, note=f"only a lower bound ({h.render()}) certified")


def factor_into_irreducibles(
    P: Premon,
    x: Element,
    s: int | float,
    budget: SearchBudget = DEFAULT_BUDGET,
) -> Factorization:
    """Write a non-unit as a product of degree-s irreducibles.

    Mirrors the minimal-counterexample argument constructively: an
    irreducible is its own factorization; otherwise a found split into
    non-units strictly below the parent is recursed on part by part.
    Strict descent guarantees termination on artinian premons; the node
    cap guards the rest. Raises BudgetExhausted when the search becomes
    inconclusive.
    """
    _require_non_unit(P, x, budget)
    meter = NodeMeter(budget.node_cap)
    splits: list[FactorStep] = []

    def rec(y) -> list:
        if not meter.spend():
            raise BudgetExhausted("factorization node cap hit")
        verdict = is_irreducible(P, y, s, budget)
        if verdict.verdict is Tri.TRUE:
            return [y]
        if verdict.verdict is Tri.UNKNOWN:
            raise BudgetExhausted(f"irreducibility of {y!r} inconclusive at this budget")
        parts = verdict.witness
        splits.append(FactorStep(parent=y, parts=tuple(parts)))
        out: list = []
        for p in parts:
            out.extend(rec(p))
        return out

    factors = rec(x)
    return Factorization(target=x, factors=tuple(factors), degree=s, splits=tuple(splits))


def check_factorization(
    P: Premon, f: Factorization, budget: SearchBudget = DEFAULT_BUDGET
) -> bool:
    """Independently re-verify a factorization record.

    The ordered product must reproduce the target, every factor must pass
    the irreducibility check at the same budget, and every recorded split
    must consist of non-units strictly below their parent multiplying back
    to it.
    """
    product = f.factors[0]
    for g in f.factors[1:]:
        product = P.monoid.multiply(product, g)
    if P.monoid.equal(product, f.target, budget) is not Tri.TRUE:
        return False
    for g in f.factors:
        if is_irreducible(P, g, f.degree, budget).verdict is not Tri.TRUE:
            return False
    for step in f.splits:
        prod = step.parts[0]
        for p in step.parts[1:]:
            prod = P.monoid.multiply(prod, p)
        if P.monoid.equal(prod, step.parent, budget) is not Tri.TRUE:
            return False
        for p in step.parts:
            if strictly_below(P, p, step.parent, budget) is not Tri.TRUE:
                return False
            if is_preorder_unit(P, p, budget):
                return False
    return True


def down_set(P: Premon, x: Element, budget: SearchBudget = DEFAULT_BUDGET) -> frozenset:
    """{y : y <= x}, the principal ideal of x.

    Requires an exhaustive carrier or a certified-complete divisor
    enumeration; raises BudgetExhausted otherwise.
    """
    if P.hooks.divisor_candidates is not None:
        source = P.hooks.divisor_candidates(x, budget)
    else:
        source = P.monoid.carrier(budget)
    if not source.exhaustive:
        raise BudgetExhausted("down-set needs a complete enumeration")
    return frozenset(y for y in source.items if P.preorder.leq(y, x, budget) is Tri.TRUE)


def up_set(P: Premon, x: Element, budget: SearchBudget = DEFAULT_BUDGET) -> frozenset:
    """{y : x <= y}, the principal filter of x. Needs the full carrier."""
    source = P.monoid.carrier(budget)
    if not source.exhaustive:
        raise BudgetExhausted("up-set needs a complete carrier")
    return frozenset(y for y in source.items if P.preorder.leq(x, y, budget) is Tri.TRUE)


DEFAULT_DEGREES: tuple = (2, 3, UNBOUNDED)


def classify(
    P: Premon,
    x: Element,
    budget: SearchBudget = DEFAULT_BUDGET,
    degrees: Iterable[int | float] = DEFAULT_DEGREES,
) -> Classification:
    """Full classification record for one element."""
    try:
        unit = is_preorder_unit(P, x, budget)
    except BudgetExhausted:
        unit = False  # conservatively classify as non-unit; fields stay UNKNOWN
        quark = Verdict(Tri.UNKNOWN, note="unit test inconclusive")
        irr = {s: Tri.UNKNOWN for s in degrees}
        return Classification(x, unit, quark, irr, Height("at_least", 0), Verdict(Tri.UNKNOWN))

    if unit:
        return Classification(
            element=x,
            is_unit=True,
            quark=Verdict(Tri.FALSE, note="units are not quarks"),
            irreducible={s: Tri.FALSE for s in degrees},
            height=Height("exact", 0),
            artinian=is_artinian_element(P, x, budget),
        )

    quark = is_quark(P, x, budget)
    irr = {s: is_irreducible(P, x, s, budget).verdict for s in degrees}
    h = height(P, x, budget)
    if quark.verdict is Tri.TRUE and not h.is_exact:
        h = Height("exact", 1)  # a certified quark has height exactly one
    artinian = is_artinian_element(P, x, budget)
    if h.is_exact and artinian.verdict is Tri.UNKNOWN:
        artinian = Verdict(Tri.TRUE, note="finite height certified")
    return Classification(x, False, quark, irr, h, artinian)
