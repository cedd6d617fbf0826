"""Initial forms of truncated valuations and the induced divisibility tests.

The graded algebra of a truncation at a key Q is a polynomial ring R_Q[y]
where y is the initial form of Q and R_Q is generated by the initial forms
of polynomials of degree below deg(Q).  Only initial forms of concrete
polynomials are ever materialized: a form is the set of key-expansion terms
attaining the truncated value, with each residue represented by its
canonical expansion coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ground import Value
from .keypoly import psi_member
from .poly import Poly, euclid_divide
from .valuation import MacLaneChain, ValuationDescriptor, truncation_term_values


@dataclass(frozen=True)
class TruncInitialForm:
    """The initial form of a polynomial in R_Q[y].

    ``terms`` lists the pairs (i, f_i) of the key expansion with
    ambient(f_i * key^i) equal to the truncated value; ``support`` is the
    sorted tuple of those exponents i.
    """

    ambient: ValuationDescriptor
    key: Poly
    value: Value
    support: tuple[int, ...]
    terms: tuple[tuple[int, Poly], ...]

    def coefficient(self, i: int) -> Poly:
        for j, part in self.terms:
            if j == i:
                return part
        return Poly.zero(self.key.field)

    def same_as(self, other: "TruncInitialForm") -> bool:
        """Equality in the graded algebra.

        Supports and values must agree and the coefficient representatives
        must be ambient-equivalent termwise (they live below deg(key), where
        truncation and ambient agree).
        """
        if self.key != other.key or self.ambient != other.ambient:
            return False
        if self.value != other.value or self.support != other.support:
            return False
        for i in self.support:
            a, b = self.coefficient(i), other.coefficient(i)
            if a == b:
                continue
            va = self.ambient(a)
            diff = self.ambient(a - b)
            if not (va == self.ambient(b) and diff > va):
                return False
        return True

    def to_json_dict(self) -> dict:
        return {
            "key": self.key.text(),
            "value": str(self.value),
            "support": list(self.support),
            "terms": [{"power": i, "coefficient": p.text()} for i, p in self.terms],
        }


def initial_form(ambient: ValuationDescriptor, Q: Poly, f: Poly) -> TruncInitialForm:
    """The initial form of f in the graded algebra of the truncation at Q."""
    if f.is_zero:
        raise ValueError("the zero polynomial has no initial form")
    _, parts, values = truncation_term_values(ambient, Q, f)
    value = min(values)
    support = []
    terms = []
    for i, (part, v) in enumerate(zip(parts, values)):
        if not part.is_zero and v == value:
            support.append(i)
            terms.append((i, part))
    return TruncInitialForm(
        ambient=ambient,
        key=Q,
        value=value,
        support=tuple(support),
        terms=tuple(terms),
    )


def equivalent(v: ValuationDescriptor, f: Poly, g: Poly) -> bool:
    """Whether f and g have the same initial form under v.

    True when f = g, or when both values are finite, equal, and the value of
    the difference lies strictly above them.
    """
    if f == g:
        return True
    wf = v(f)
    if wf.is_infinite or wf != v(g):
        return False
    return v(f - g) > wf


def y_divides(ambient: ValuationDescriptor, Q: Poly, f: Poly) -> bool:
    """Whether the initial form of Q divides the initial form of f."""
    return 0 not in initial_form(ambient, Q, f).support


def inQprime_divides(chain: MacLaneChain, i: int, Qp: Poly, f: Poly) -> bool:
    """Whether the initial form of Qp divides the initial form of f at step i.

    Qp must lie in Psi of the step-i key; divisibility is then equivalent to
    the truncation at step i dropping strictly below the chain value on f.
    """
    if not psi_member(chain, i, Qp):
        raise ValueError("Qp is not a verified Psi-member of the step key")
    if f.is_zero:
        raise ValueError("the zero polynomial has no initial form")
    return chain.truncation_at(i)(f) < chain.top(f)


def multiply_initial_forms(
    ambient: ValuationDescriptor, Q: Poly, F: TruncInitialForm, G: TruncInitialForm
) -> TruncInitialForm:
    """Product of two initial forms, computed termwise in R_Q[y].

    Coefficient products are reduced by division with remainder through Q
    (the quotient term carries a strictly larger value and vanishes in the
    graded algebra); same powers of y are collected and the support is
    re-minimized afterwards.
    """
    if F.key != Q or G.key != Q or F.ambient != ambient or G.ambient != ambient:
        raise ValueError("forms do not live over the given ambient and key")
    coeff_by_power: dict[int, Poly] = {}
    for i, fi in F.terms:
        for j, gj in G.terms:
            _, r = euclid_divide(fi * gj, Q)
            if r.is_zero:
                raise ArithmeticError(
                    "key divides a product of lower-degree coefficients; "
                    "Q cannot be a key polynomial here"
                )
            k = i + j
            coeff_by_power[k] = coeff_by_power.get(k, Poly.zero(Q.field)) + r
    value = F.value + G.value
    gamma = ambient(Q)
    support = []
    terms = []
    for k in sorted(coeff_by_power):
        s = coeff_by_power[k]
        if s.is_zero:
            continue
        w = ambient(s) if k == 0 else ambient(s) + gamma.scaled(k)
        if w == value:
            support.append(k)
            terms.append((k, s))
    if not support:
        raise ArithmeticError(
            "graded product vanished in its homogeneous degree; "
            "Q cannot be a key polynomial here"
        )
    return TruncInitialForm(
        ambient=ambient,
        key=Q,
        value=value,
        support=tuple(support),
        terms=tuple(terms),
    )
