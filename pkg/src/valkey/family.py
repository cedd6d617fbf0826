"""Finite prefixes of continued families of augmented valuations.

A family prefix holds a base valuation and an ordered list of equal-degree
monic keys with strictly increasing values, each admissible over the base
and pairwise comparable, so member valuations grow pointwise along the
prefix.  Evaluating a polynomial along the members either strictly increases
through the whole prefix or stabilizes; once two consecutive members agree,
every later member agrees as well, which makes early stopping sound.

Membership of the strictly-increasing class can only ever be *presumed* from
a finite prefix; reports say so explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable

from .ground import Value
from .keypoly import psi_member
from .poly import Poly
from .valuation import (
    Augmented,
    LimitAugmented,
    MacLaneChain,
    Truncation,
    ValuationDescriptor,
    leq_same_degree,
)

if TYPE_CHECKING:
    from .harness import Sampler

PRESUMPTION_NOTE = (
    "finite prefix: the absence of a maximal gamma and unbounded growth "
    "beyond the prefix are presumed, not proved"
)


class NotStabilizedError(Exception):
    """A value did not stabilize within the family prefix; extend the prefix."""

    def __init__(self, f: Poly, length: int):
        super().__init__(
            f"value of {f.text()} did not stabilize within the "
            f"{length}-member prefix"
        )
        self.poly = f
        self.length = length


@dataclass(frozen=True)
class FamilyPrefix:
    """A finite prefix of a continued family over a fixed base valuation."""

    base: ValuationDescriptor
    members: tuple[tuple[Poly, Value], ...]

    def __post_init__(self):
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        if len(members) < 2:
            raise ValueError("a family prefix needs at least two members")
        d = members[0][0].degree
        for key, gamma in members:
            if not key.is_monic or key.degree != d:
                raise ValueError("family keys must be monic of one common degree")
            prior = self.base(key)
            if not gamma > prior:
                raise ValueError(
                    f"inadmissible member: gamma = {gamma} does not exceed "
                    f"the base value {prior} of {key.text()}"
                )
        gammas = [gamma for _, gamma in members]
        if not all(a < b for a, b in zip(gammas, gammas[1:])):
            raise ValueError("member gammas must increase strictly")
        for (k1, g1), (k2, g2) in zip(members, members[1:]):
            if not leq_same_degree(self.base, k1, g1, k2, g2):
                raise ValueError(
                    f"consecutive members are not pointwise comparable: "
                    f"[{k1.text()} -> {g1}] is not dominated by [{k2.text()} -> {g2}]"
                )
        vals = tuple(Augmented(self.base, key, gamma) for key, gamma in members)
        object.__setattr__(self, "_member_vals", vals)

    @property
    def degree(self) -> int:
        return self.members[0][0].degree

    def __len__(self) -> int:
        return len(self.members)

    def member_valuation(self, j: int) -> Augmented:
        return self._member_vals[j]

    def values_along(self, f: Poly) -> list[Value]:
        return [v(f) for v in self._member_vals]

    def stable_value(self, f: Poly) -> Value:
        """The stabilized value of f, raising NotStabilizedError otherwise."""
        result = stabilize(self, f)
        if not result.stabilized:
            raise NotStabilizedError(f, len(self))
        return result.value

    def extended(self, extra: Iterable[tuple[Poly, Value]]) -> "FamilyPrefix":
        return FamilyPrefix(self.base, self.members + tuple(extra))


@dataclass(frozen=True)
class StabilizationResult:
    """Member values of a polynomial and where (if at all) they stabilize.

    ``first_index`` is the member index at which the first consecutive
    equality is observed; values are recorded up to that point.
    """

    stabilized: bool
    value: Value | None
    first_index: int | None
    values: tuple[Value, ...]

    def to_json_dict(self) -> dict:
        doc: dict = {
            "stabilized": self.stabilized,
            "values": [str(v) for v in self.values],
        }
        if self.stabilized:
            doc["value"] = str(self.value)
            doc["firstIndex"] = self.first_index
        else:
            doc["note"] = PRESUMPTION_NOTE
        return doc


def stabilize(prefix: FamilyPrefix, f: Poly) -> StabilizationResult:
    """Evaluate f along the prefix, stopping at the first consecutive equality.

    Early stopping is sound: once two consecutive members agree on f, every
    longer extension of the family takes the same value.
    """
    values: list[Value] = []
    previous: Value | None = None
    for j in range(len(prefix)):
        current = prefix.member_valuation(j)(f)
        values.append(current)
        if previous is not None:
            if current == previous:
                return StabilizationResult(True, current, j, tuple(values))
            if current < previous:
                raise ValueError(
                    "member values decreased along the prefix; "
                    "the prefix is not pointwise monotone"
                )
        previous = current
    return StabilizationResult(False, None, None, tuple(values))


def nu_F(prefix: FamilyPrefix, f: Poly) -> Value:
    """The stabilized value of f along the family prefix."""
    return prefix.stable_value(f)


@dataclass(frozen=True)
class Classification:
    """Stable (with the first attaining index) or presumed unbounded."""

    presumed_unbounded: bool
    alpha_index: int | None
    value: Value | None
    values: tuple[Value, ...]

    def to_json_dict(self) -> dict:
        if self.presumed_unbounded:
            return {
                "class": "presumed-unbounded",
                "values": [str(v) for v in self.values],
                "note": PRESUMPTION_NOTE,
            }
        return {
            "class": "stable",
            "alphaIndex": self.alpha_index,
            "value": str(self.value),
        }


def classify(prefix: FamilyPrefix, f: Poly) -> Classification:
    """Split behaviour along the prefix: stable value or presumed unbounded.

    The stable case reports the first member index attaining the value.
    The unbounded case is prefix-limited evidence only.
    """
    result = stabilize(prefix, f)
    if result.stabilized:
        return Classification(
            presumed_unbounded=False,
            alpha_index=result.first_index - 1,
            value=result.value,
            values=result.values,
        )
    return Classification(
        presumed_unbounded=True, alpha_index=None, value=None, values=result.values
    )


@dataclass(frozen=True)
class LimitCheckReport:
    """Prefix evidence that a candidate is a limit key over the family."""

    strictly_increasing: bool
    gamma_dominates: bool
    minimality_evidence: bool
    minimality_witnesses: tuple[str, ...]
    values: tuple[Value, ...]

    @property
    def passed(self) -> bool:
        return self.strictly_increasing and self.gamma_dominates and self.minimality_evidence

    def to_json_dict(self) -> dict:
        return {
            "conditions": [
                {
                    "name": "candidate value strictly increases along the prefix",
                    "holds": self.strictly_increasing,
                },
                {
                    "name": "gamma exceeds every prefix member value",
                    "holds": self.gamma_dominates,
                },
                {
                    "name": "no sampled smaller-degree polynomial is presumed unbounded",
                    "holds": self.minimality_evidence,
                },
            ],
            "memberValues": [str(v) for v in self.values],
            "minimalityWitnesses": list(self.minimality_witnesses),
            "pass": self.passed,
            "note": PRESUMPTION_NOTE,
        }


def limit_check(
    prefix: FamilyPrefix, Q: Poly, gamma: Value, samples: Iterable[Poly] = ()
) -> LimitCheckReport:
    """Collect prefix evidence that Q (with the proposed gamma) is a limit key.

    Checks that Q's member values strictly increase, that gamma dominates
    all of them, and that no caller-supplied sample of smaller degree is
    itself presumed unbounded (degree-minimality evidence).
    """
    if not Q.is_monic or Q.degree < 1:
        raise ValueError("limit key candidate must be monic of degree >= 1")
    values = prefix.values_along(Q)
    increasing = all(a < b for a, b in zip(values, values[1:]))
    dominates = all(gamma > v for v in values)
    witnesses = []
    for s in samples:
        if s.is_zero or s.degree >= Q.degree:
            continue
        if classify(prefix, s).presumed_unbounded:
            witnesses.append(s.text())
    return LimitCheckReport(
        strictly_increasing=increasing,
        gamma_dominates=dominates,
        minimality_evidence=not witnesses,
        minimality_witnesses=tuple(witnesses),
        values=tuple(values),
    )


@dataclass(frozen=True)
class CorrespondenceReport:
    """Agreement of a truncation with its augmented reconstruction at a step."""

    kind: str  # "ordinary" or "limit"
    step: int
    agreement_checks: int
    agreement_failures: tuple[dict, ...]
    irreducibility_checks: int
    irreducibility_failures: tuple[dict, ...]
    minimality_checks: int
    minimality_failures: tuple[dict, ...]
    not_stabilized: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not (
            self.agreement_failures or self.irreducibility_failures or self.minimality_failures
        )

    @property
    def conclusive(self) -> bool:
        return not self.not_stabilized

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "step": self.step,
            "agreement": {
                "checks": self.agreement_checks,
                "failures": list(self.agreement_failures),
            },
            "irreducibilityEvidence": {
                "checks": self.irreducibility_checks,
                "failures": list(self.irreducibility_failures),
            },
            "minimalityEvidence": {
                "checks": self.minimality_checks,
                "failures": list(self.minimality_failures),
            },
            "notStabilized": list(self.not_stabilized),
            "pass": self.passed,
        }


def mlv_correspondence(chain: MacLaneChain, i: int, sampler: "Sampler") -> CorrespondenceReport:
    """Check that the truncation at the next key equals its augmented form.

    Ordinary case: the truncation at Q' (the step i+1 key) must agree with
    the augmentation of the truncation at Q by Q' at its chain value, on
    exhaustively enumerated small polynomials plus random samples.  Limit
    case (step i+1 is a limit step): the truncation at the limit key must
    agree with the limit augmentation at the key's chain value.  Both cases
    additionally gather irreducibility (one-sided divisor) and degree-
    minimality evidence for the new key.
    """
    if not 0 <= i < len(chain) - 1:
        raise IndexError(f"chain step {i} has no successor")
    top = chain.top
    cfg = chain.ground
    Qp = chain.key(i + 1)
    left = Truncation(top, Qp)
    not_stabilized: list[str] = []

    if chain.is_limit_step(i + 1):
        kind = "limit"
        prefix = chain.valuation(i + 1).prefix
        right = LimitAugmented(prefix, Qp, top(Qp))

        def drop(h: Poly) -> bool | None:
            c = classify(prefix, h)
            return c.presumed_unbounded
    else:
        kind = "ordinary"
        if not psi_member(chain, i, Qp):
            raise ValueError("the successor key is not a Psi-member of the step key")
        trunc_q = chain.truncation_at(i)
        right = Augmented(trunc_q, Qp, top(Qp))

        def drop(h: Poly) -> bool | None:
            return trunc_q(h) < top(h)

    agreement_checks = 0
    agreement_failures: list[dict] = []

    def compare(f: Poly):
        nonlocal agreement_checks
        if f.is_zero:
            return
        agreement_checks += 1
        try:
            lv, rv = left(f), right(f)
        except NotStabilizedError:
            not_stabilized.append(f.text())
            return
        if lv != rv:
            agreement_failures.append(
                {"f": f.text(), "truncation": str(lv), "augmented": str(rv)}
            )

    for f in sampler.iter_exhaustive(
        cfg, max_degree=sampler.degree_bound, height=sampler.height_bound
    ):
        compare(f)
    rng = sampler.rng()
    for _ in range(sampler.trials):
        compare(sampler.random_poly(rng, cfg))

    # one-sided divisor evidence for the new key and degree minimality
    irreducibility_checks = 0
    irreducibility_failures: list[dict] = []
    minimality_checks = 0
    minimality_failures: list[dict] = []
    rng2 = sampler.rng()
    for _ in range(sampler.trials):
        f = sampler.random_poly(rng2, cfg, nonzero=True)
        g = sampler.random_poly(rng2, cfg, nonzero=True)
        irreducibility_checks += 1
        try:
            if drop(f * g) and not (drop(f) or drop(g)):
                irreducibility_failures.append({"f": f.text(), "g": g.text()})
        except NotStabilizedError as exc:
            not_stabilized.append(exc.poly.text())
    for f in sampler.iter_exhaustive(
        cfg, max_degree=Qp.degree - 1, height=sampler.height_bound
    ):
        if f.is_zero:
            continue
        minimality_checks += 1
        try:
            if drop(f):
                minimality_failures.append({"f": f.text()})
        except NotStabilizedError as exc:
            not_stabilized.append(exc.poly.text())

    return CorrespondenceReport(
        kind=kind,
        step=i,
        agreement_checks=agreement_checks,
        agreement_failures=tuple(agreement_failures),
        irreducibility_checks=irreducibility_checks,
        irreducibility_failures=tuple(irreducibility_failures),
        minimality_checks=minimality_checks,
        minimality_failures=tuple(minimality_failures),
        not_stabilized=tuple(not_stabilized),
    )
