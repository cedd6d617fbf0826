"""Valuations on K[x] built from MacLane chains.

A valuation descriptor is a tree: a monomial valuation at the root, extended
by augmentation steps (assigning a new, larger value to a monic key
polynomial), truncations (forgetting everything a valuation knows above a
key), and limit augmentations over a finite prefix of a continued family.
Every variant evaluates polynomials through the same min-over-q-expansion
formula; descriptors are immutable and evaluation is pure, so calling a
descriptor on a polynomial is written ``v(f)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .ground import INFINITY, Value
from .poly import Poly, q_expansion

if TYPE_CHECKING:
    from .family import FamilyPrefix


class ValuationDescriptor:
    """Base class for valuation descriptors; instances are callable on Poly."""

    __slots__ = ()

    @property
    def ground(self):
        raise NotImplementedError

    def __call__(self, f: Poly) -> Value:
        raise NotImplementedError

    def _check_poly(self, f: Poly):
        if f.field != self.ground:
            raise TypeError("polynomial is over a different ground field")


def _min_formula(term_value, parts, gamma: Value) -> Value:
    """min over i of term_value(part_i) + i*gamma, skipping zero parts."""
    best = INFINITY
    for i, part in enumerate(parts):
        if part.is_zero:
            continue
        v = term_value(part)
        if i > 0:
            v = v + gamma.scaled(i)
        if v < best:
            best = v
    return best


@dataclass(frozen=True)
class Monomial(ValuationDescriptor):
    """The monomial valuation sending sum a_i x^i to min of v0(a_i) + i*gamma."""

    cfg: object
    gamma: Value

    @property
    def ground(self):
        return self.cfg

    def __call__(self, f: Poly) -> Value:
        self._check_poly(f)
        best = INFINITY
        is_zero = self.cfg.is_zero
        for i, c in enumerate(f.coeffs):
            if is_zero(c):
                continue
            v = self.cfg.valuation(c)
            if i > 0:
                v = v + self.gamma.scaled(i)
            if v < best:
                best = v
        return best

    def describe(self) -> str:
        return f"[{self.cfg.describe()}; v(x) = {self.gamma}]"


def _validate_key(key: Poly):
    if key.degree < 1:
        raise ValueError("key polynomial must have degree >= 1")
    if not key.is_monic:
        raise ValueError("key polynomial must be monic")


def _base_key_degree(base: ValuationDescriptor) -> int | None:
    # degree of the base's own key, where the chain monotonicity rule applies
    if isinstance(base, Monomial):
        return 1
    if isinstance(base, Augmented):
        return base.key.degree
    return None


@dataclass(frozen=True)
class Augmented(ValuationDescriptor):
    """The augmentation [base; v'(key) = gamma] with gamma > base(key)."""

    base: ValuationDescriptor
    key: Poly
    gamma: Value

    def __post_init__(self):
        _validate_key(self.key)
        if self.key.field != self.base.ground:
            raise TypeError("key polynomial is over a different ground field")
        prior = self.base(self.key)
        if not self.gamma > prior:
            raise ValueError(
                f"inadmissible augmentation: gamma = {self.gamma} "
                f"must exceed the base value {prior} of the key"
            )
        base_deg = _base_key_degree(self.base)
        if base_deg is not None and self.key.degree < base_deg:
            raise ValueError(
                "augmentation key degree must not drop below the base key degree"
            )

    @property
    def ground(self):
        return self.base.ground

    def __call__(self, f: Poly) -> Value:
        self._check_poly(f)
        if f.is_zero:
            return INFINITY
        if f.degree < self.key.degree:
            return self.base(f)
        return _min_formula(self.base, q_expansion(f, self.key).parts, self.gamma)

    def describe(self) -> str:
        return f"[{self.base.describe()}; v({self.key.text()}) = {self.gamma}]"


@dataclass(frozen=True)
class Truncation(ValuationDescriptor):
    """The truncation of an ambient valuation at a monic key.

    Evaluates f as the minimum of ambient(f_i * key^i) over the key
    expansion, computed as ambient(f_i) + i * ambient(key) since the ambient
    satisfies the product rule.  The formula is total for any monic key; the
    valuation axioms are only guaranteed when the key passes the abstract
    key check.
    """

    ambient: ValuationDescriptor
    key: Poly
    _gamma: Value = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        _validate_key(self.key)
        if self.key.field != self.ambient.ground:
            raise TypeError("key polynomial is over a different ground field")
        object.__setattr__(self, "_gamma", self.ambient(self.key))

    @property
    def ground(self):
        return self.ambient.ground

    @property
    def gamma(self) -> Value:
        """The ambient value of the key (the weight of each expansion step)."""
        return self._gamma

    def __call__(self, f: Poly) -> Value:
        self._check_poly(f)
        if f.is_zero:
            return INFINITY
        if f.degree < self.key.degree:
            return self.ambient(f)
        return _min_formula(self.ambient, q_expansion(f, self.key).parts, self._gamma)

    def describe(self) -> str:
        return f"truncation of {self.ambient.describe()} at {self.key.text()}"


def truncation_term_values(
    ambient: ValuationDescriptor, key: Poly, f: Poly
) -> tuple[Value, tuple[Poly, ...], list[Value]]:
    """Key expansion of f with the ambient value of every term f_i * key^i.

    Returns (ambient(key), parts, values).  This is the data behind both the
    truncated value (their minimum) and the support of the initial form.
    """
    _validate_key(key)
    if f.is_zero:
        raise ValueError("the zero polynomial has no key expansion terms")
    gamma = ambient(key)
    parts = q_expansion(f, key).parts
    values = []
    for i, part in enumerate(parts):
        if part.is_zero:
            values.append(INFINITY)
        elif i == 0:
            values.append(ambient(part))
        else:
            values.append(ambient(part) + gamma.scaled(i))
    return gamma, parts, values


@dataclass(frozen=True)
class LimitAugmented(ValuationDescriptor):
    """A limit augmentation over a finite prefix of a continued family.

    Coefficients of the key expansion are valued through the prefix's
    stabilized values, so evaluation raises NotStabilizedError whenever the
    prefix is too short to witness stabilization.
    """

    prefix: "FamilyPrefix"
    key: Poly
    gamma: Value

    def __post_init__(self):
        _validate_key(self.key)
        if self.key.field != self.prefix.base.ground:
            raise TypeError("key polynomial is over a different ground field")
        if self.key.degree < self.prefix.degree:
            raise ValueError(
                "limit key degree must be at least the family's common degree"
            )
        for j in range(len(self.prefix)):
            prior = self.prefix.member_valuation(j)(self.key)
            if not self.gamma > prior:
                raise ValueError(
                    f"inadmissible limit augmentation: gamma = {self.gamma} does not "
                    f"exceed the member value {prior} at index {j}"
                )

    @property
    def ground(self):
        return self.prefix.base.ground

    def __call__(self, f: Poly) -> Value:
        self._check_poly(f)
        if f.is_zero:
            return INFINITY
        if f.degree < self.key.degree:
            return self.prefix.stable_value(f)
        return _min_formula(
            self.prefix.stable_value, q_expansion(f, self.key).parts, self.gamma
        )

    def describe(self) -> str:
        return (
            f"[limit over {len(self.prefix)} members; "
            f"v({self.key.text()}) = {self.gamma}]"
        )


class MacLaneChain:
    """A monomial root followed by augmentation steps, indexed from 0.

    Step 0 is the monomial root with the conventional key x; step i >= 1 is
    the i-th augmentation.  Each step's base must be the previous step's
    valuation and only the final step may assign an infinite value.
    """

    def __init__(self, top: ValuationDescriptor):
        levels = []
        v = top
        while True:
            levels.append(v)
            if isinstance(v, Monomial):
                break
            if isinstance(v, Augmented):
                v = v.base
            elif isinstance(v, LimitAugmented):
                v = v.prefix.base
            else:
                raise ValueError(
                    "a MacLane chain may only contain monomial, augmented "
                    "and limit-augmented steps"
                )
        levels.reverse()
        for lvl in levels[:-1]:
            if lvl.gamma.is_infinite:
                raise ValueError("only the final chain step may have gamma = inf")
        self._levels = tuple(levels)

    def __len__(self) -> int:
        return len(self._levels)

    @property
    def top(self) -> ValuationDescriptor:
        return self._levels[-1]

    @property
    def ground(self):
        return self._levels[0].ground

    def valuation(self, i: int) -> ValuationDescriptor:
        return self._levels[i]

    def key(self, i: int) -> Poly:
        lvl = self._levels[i]
        if isinstance(lvl, Monomial):
            return Poly.x(self.ground)
        return lvl.key

    def gamma(self, i: int) -> Value:
        return self._levels[i].gamma

    def is_limit_step(self, i: int) -> bool:
        return isinstance(self._levels[i], LimitAugmented)

    def truncation_at(self, i: int) -> Truncation:
        """The truncation of the chain's full valuation at the step-i key."""
        return Truncation(self.top, self.key(i))

    def describe(self) -> str:
        return self.top.describe()


def _same_degree_setup(nu, Q1: Poly, gamma1: Value, Q2: Poly, gamma2: Value):
    _validate_key(Q1)
    _validate_key(Q2)
    if Q1.degree != Q2.degree:
        raise ValueError("keys must have equal degree")
    if not gamma1 < gamma2:
        raise ValueError("gamma1 < gamma2 is required")


def leq_same_degree(
    nu: ValuationDescriptor, Q1: Poly, gamma1: Value, Q2: Poly, gamma2: Value
) -> bool:
    """Decide whether [nu; Q1 -> gamma1] <= [nu; Q2 -> gamma2] pointwise.

    For equal-degree keys with gamma1 < gamma2 the comparison reduces to a
    single evaluation: the first valuation is dominated by the second if and
    only if gamma1 <= [nu; Q2 -> gamma2](Q1).
    """
    _same_degree_setup(nu, Q1, gamma1, Q2, gamma2)
    nu2 = Augmented(nu, Q2, gamma2)
    Augmented(nu, Q1, gamma1)  # admissibility of the left side
    return gamma1 <= nu2(Q1)


@dataclass(frozen=True)
class SameDegreeReport:
    """Computed values and per-assertion outcomes for equal-degree augmentations."""

    gamma1: Value
    gamma2: Value
    nu2_of_Q1: Value
    nu1_of_Q2: Value
    nu_of_diff: Value
    nu_of_Q1: Value
    nu_of_Q2: Value
    hypothesis_holds: bool
    assertions: tuple

    @property
    def passed(self) -> bool:
        return all(status != "fail" for _, status in self.assertions)

    def to_json_dict(self) -> dict:
        return {
            "values": {
                "gamma1": str(self.gamma1),
                "gamma2": str(self.gamma2),
                "nu2(Q1)": str(self.nu2_of_Q1),
                "nu1(Q2)": str(self.nu1_of_Q2),
                "nu(Q2 - Q1)": str(self.nu_of_diff),
                "nu(Q1)": str(self.nu_of_Q1),
                "nu(Q2)": str(self.nu_of_Q2),
            },
            "hypothesis": "holds" if self.hypothesis_holds else "violated",
            "assertions": [
                {"name": name, "status": status} for name, status in self.assertions
            ],
            "pass": self.passed,
        }


def check_same_degree_comparison(
    nu: ValuationDescriptor, Q1: Poly, gamma1: Value, Q2: Poly, gamma2: Value
) -> SameDegreeReport:
    """Compare nu1 = [nu; Q1 -> gamma1] with nu2 = [nu1; Q2 -> gamma2].

    When Q1 and Q2 are not nu1-equivalent, reports whether
    nu2(Q1) = nu1(Q2) = gamma1 = nu(Q2 - Q1) and gamma2 > gamma1; the
    equality nu(Q1) = nu(Q2) is asserted unconditionally.
    """
    _same_degree_setup(nu, Q1, gamma1, Q2, gamma2)
    nu1 = Augmented(nu, Q1, gamma1)
    nu2 = Augmented(nu1, Q2, gamma2)

    nu2_of_Q1 = nu2(Q1)
    nu1_of_Q2 = nu1(Q2)
    nu_of_diff = nu(Q2 - Q1)
    nu_of_Q1 = nu(Q1)
    nu_of_Q2 = nu(Q2)

    # nu1-equivalence of the keys: equal finite values and a strictly
    # larger value for the difference
    w1, w2 = nu1(Q1), nu1(Q2)
    equivalent = Q1 == Q2 or (
        w1 == w2 and not w1.is_infinite and nu1(Q1 - Q2) > w1
    )
    hypothesis_holds = not equivalent

    def status(ok: bool) -> str:
        if not hypothesis_holds:
            return "hypothesis violated"
        return "pass" if ok else "fail"

    assertions = (
        ("nu2(Q1) == nu1(Q2)", status(nu2_of_Q1 == nu1_of_Q2)),
        ("nu1(Q2) == gamma1", status(nu1_of_Q2 == gamma1)),
        ("gamma1 == nu(Q2 - Q1)", status(gamma1 == nu_of_diff)),
        ("gamma2 > gamma1", status(gamma2 > gamma1)),
        ("nu(Q1) == nu(Q2)", "pass" if nu_of_Q1 == nu_of_Q2 else "fail"),
    )
    return SameDegreeReport(
        gamma1=gamma1,
        gamma2=gamma2,
        nu2_of_Q1=nu2_of_Q1,
        nu1_of_Q2=nu1_of_Q2,
        nu_of_diff=nu_of_diff,
        nu_of_Q1=nu_of_Q1,
        nu_of_Q2=nu_of_Q2,
        hypothesis_holds=hypothesis_holds,
        assertions=assertions,
    )
