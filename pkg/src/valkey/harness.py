"""Brute-force oracles and property suites over enumerated and random inputs.

Every suite follows the same discipline: exhaust a small canonical instance
space, then run seeded random trials within the sampler's bounds.  All
arithmetic is exact and every comparison is an equality or strict order on
exact values, so there is no tolerance anywhere.  Reports are deterministic
for a fixed seed and serialize to stable JSON.

Exhaustive enumeration uses canonical coefficient alphabets: integers of
absolute value up to min(height, 3) over rational grounds, and unit
multiples of t^j (j <= min(height - 1, 2)) over rational-function grounds.
Literal exhaustion of all bounded-height elements is impossible over
rational-function fields; the random phase samples the full bounded space.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field

from gmpy2 import mpq

from .ground import (
    PAdicRationals,
    PrimeField,
    Rationals,
    TAdicRationalFunctions,
    Value,
)
from .graded import equivalent, initial_form, multiply_initial_forms, y_divides
from .keypoly import epsilon
from .poly import Poly, enumerate_polys, euclid_divide, hasse_derivative, q_expansion
from .valuation import MacLaneChain, Truncation, ValuationDescriptor


def exhaustive_elements(cfg, height: int) -> list:
    """Canonical small-height coefficient alphabet for exhaustive phases."""
    if height < 1:
        raise ValueError("height bound must be >= 1")
    if isinstance(cfg, (Rationals, PAdicRationals)):
        out = [mpq(0)]
        for a in range(1, min(height, 3) + 1):
            out += [mpq(a), mpq(-a)]
        return out
    if isinstance(cfg, TAdicRationalFunctions):
        scalars = cfg.scalars
        if isinstance(scalars, PrimeField):
            units = list(range(1, min(scalars.p, 3)))
        else:
            units = [mpq(1), mpq(-1)]
        out = [cfg.zero]
        den = Poly.one(scalars)
        for j in range(min(height - 1, 2) + 1):
            for c in units:
                num = Poly(scalars, (scalars.zero,) * j + (c,))
                out.append(cfg._make(num, den))
        return out
    raise TypeError(f"unsupported ground field {cfg!r}")


@dataclass(frozen=True)
class Sampler:
    """Deterministic sampling configuration for the property suites.

    degree_bound and height_bound cap random polynomials (height bounds the
    numerator, denominator and t-degree of coefficients; random t-degrees
    are additionally capped at 2 to keep rational-function reduction cheap).
    The same seed always yields the same stream.
    """

    degree_bound: int = 4
    height_bound: int = 3
    trials: int = 200
    seed: int = 0

    def __post_init__(self):
        if self.degree_bound < 1 or self.height_bound < 1:
            raise ValueError("sampler bounds must be >= 1")
        if self.trials < 0:
            raise ValueError("trial count must be >= 0")

    def rng(self) -> random.Random:
        return random.Random(self.seed)

    # -- random generation -------------------------------------------------

    def random_element(self, rng: random.Random, cfg):
        H = self.height_bound
        if isinstance(cfg, (Rationals, PAdicRationals)):
            return mpq(rng.randint(-H, H), rng.randint(1, H))
        if isinstance(cfg, TAdicRationalFunctions):
            scalars = cfg.scalars
            tdeg = min(H, 2)

            def scalar():
                if isinstance(scalars, PrimeField):
                    return rng.randrange(scalars.p)
                return mpq(rng.randint(-H, H), rng.randint(1, H))

            num = Poly(scalars, [scalar() for _ in range(rng.randint(0, tdeg) + 1)])
            den = Poly.one(scalars)
            if rng.random() < 0.15:
                # an occasional monic denominator t^j or t + c
                if rng.random() < 0.5:
                    den = Poly.x(scalars) ** rng.randint(1, tdeg)
                else:
                    den = Poly(scalars, [scalar(), scalars.one])
            return cfg._make(num, den)
        raise TypeError(f"unsupported ground field {cfg!r}")

    def random_poly(self, rng: random.Random, cfg, max_degree: int | None = None, nonzero: bool = False) -> Poly:
        bound = self.degree_bound if max_degree is None else max_degree
        while True:
            deg = rng.randint(0, bound)
            p = Poly(cfg, [self.random_element(rng, cfg) for _ in range(deg + 1)])
            if not nonzero or not p.is_zero:
                return p

    # -- exhaustive enumeration ---------------------------------------------

    def iter_exhaustive(self, cfg, max_degree: int | None = None, height: int | None = None):
        """All polynomials over the canonical alphabet up to the given bounds."""
        d = 2 if max_degree is None else max_degree
        h = 2 if height is None else height
        if d < 0:
            return iter(())
        return enumerate_polys(cfg, exhaustive_elements(cfg, h), d)


@dataclass
class SuiteReport:
    """Outcome of one property suite: counts, failures and observations.

    The pass flag is true exactly when there are no failures; observations
    record findings (such as hypothesis-violation witnesses) that do not
    fail the suite.
    """

    suite: str
    params: dict
    checks: int = 0
    failures: list = dc_field(default_factory=list)
    observations: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, failure: dict):
        self.checks += 1
        if not ok:
            self.failures.append(failure)

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "checks": self.checks,
            "failures": self.failures,
            "observations": self.observations,
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def _poly_pairs(polys):
    # unordered pairs including the diagonal; V1 and V2 are symmetric
    for i, f in enumerate(polys):
        for g in polys[i:]:
            yield f, g


def _check_v1v2(report: SuiteReport, value_of, pairs, label: str = ""):
    """Exact product and sum axioms for a Value-returning callable."""
    tag = f"{label} " if label else ""
    cache: dict = {}

    def val(p: Poly) -> Value:
        v = cache.get(p.coeffs)
        if v is None:
            v = value_of(p)
            cache[p.coeffs] = v
        return v

    for f, g in pairs:
        vf, vg = val(f), val(g)
        lhs = value_of(f * g)
        rhs = vf + vg
        report.record(
            lhs == rhs,
            {
                "relation": f"{tag}V1",
                "f": f.text(),
                "g": g.text(),
                "lhs v(fg)": str(lhs),
                "rhs v(f)+v(g)": str(rhs),
            },
        )
        vsum = value_of(f + g)
        bound = min(vf, vg)
        report.record(
            vsum >= bound,
            {
                "relation": f"{tag}V2",
                "f": f.text(),
                "g": g.text(),
                "lhs v(f+g)": str(vsum),
                "rhs min": str(bound),
            },
        )


def _contains_truncation(v) -> bool:
    while True:
        if isinstance(v, Truncation):
            return True
        if hasattr(v, "base"):
            v = v.base
        elif hasattr(v, "ambient"):
            v = v.ambient
        elif hasattr(v, "prefix"):
            v = v.prefix.base
        else:
            return False


def check_axioms(v: ValuationDescriptor, s: Sampler) -> SuiteReport:
    """V1/V2 exhaustively at degree <= 2, height <= 2, plus random pairs; V3 directly."""
    cfg = v.ground
    report = SuiteReport(
        suite="axioms",
        params={"descriptor": v.describe(), "sampler": _sampler_params(s)},
    )
    if _contains_truncation(v):
        report.observations.append(
            {
                "relation": "note",
                "detail": "expected: axioms not guaranteed unless every "
                "truncation key is a verified key polynomial",
            }
        )
    zero, one = Poly.zero(cfg), Poly.one(cfg)
    report.record(
        v(zero).is_infinite, {"relation": "V3", "f": "0", "lhs v(0)": str(v(zero))}
    )
    report.record(
        v(one) == Value.finite(0), {"relation": "V3", "f": "1", "lhs v(1)": str(v(one))}
    )
    polys = list(s.iter_exhaustive(cfg, max_degree=2, height=2))
    _check_v1v2(report, v, _poly_pairs(polys))
    rng = s.rng()
    random_pairs = (
        (s.random_poly(rng, cfg), s.random_poly(rng, cfg)) for _ in range(s.trials)
    )
    _check_v1v2(report, v, random_pairs)
    return report


def min_formula_extension(v_base: ValuationDescriptor, q: Poly, gamma: Value):
    """The raw min-formula extension of v_base along q, with no admissibility check."""

    def mu_prime(f: Poly) -> Value:
        if f.is_zero:
            return Value.infinity()
        best = Value.infinity()
        for i, part in enumerate(q_expansion(f, q).parts):
            if part.is_zero:
                continue
            w = v_base(part)
            if i > 0:
                w = w + gamma.scaled(i)
            if w < best:
                best = w
        return best

    return mu_prime


def check_extension_criterion(
    v_base: ValuationDescriptor, q: Poly, gamma: Value, s: Sampler
) -> SuiteReport:
    """Criterion for the min-formula extension along q to satisfy V1 and V2.

    Verifies, on sampled coefficient pairs below deg(q), that the base value
    is multiplicative and that the remainder of each pairwise product through
    q carries the product's value, strictly below the quotient term.  When
    the hypotheses hold on all samples, the extension itself is put through
    the product and sum axioms.  Hypothesis violations are recorded as
    observations (witnesses) and skip the implication.
    """
    if not q.is_monic or q.degree < 1:
        raise ValueError("the expansion base must be monic of degree >= 1")
    cfg = v_base.ground
    n = q.degree
    report = SuiteReport(
        suite="extension",
        params={
            "descriptor": v_base.describe(),
            "q": q.text(),
            "gamma": str(gamma),
            "sampler": _sampler_params(s),
        },
    )

    coeff_pairs = []
    small = [f for f in s.iter_exhaustive(cfg, max_degree=min(n - 1, 2), height=2) if not f.is_zero]
    coeff_pairs.extend(_poly_pairs(small))
    rng = s.rng()
    for _ in range(s.trials):
        coeff_pairs.append(
            (
                s.random_poly(rng, cfg, max_degree=n - 1, nonzero=True),
                s.random_poly(rng, cfg, max_degree=n - 1, nonzero=True),
            )
        )

    hypotheses_hold = True
    for fbar, gbar in coeff_pairs:
        prod = fbar * gbar
        report.checks += 1
        if v_base(prod) != v_base(fbar) + v_base(gbar):
            hypotheses_hold = False
            report.observations.append(
                {
                    "relation": "multiplicativity hypothesis violated",
                    "f": fbar.text(),
                    "g": gbar.text(),
                    "v(fg)": str(v_base(prod)),
                    "v(f)+v(g)": str(v_base(fbar) + v_base(gbar)),
                }
            )
            continue
        a, c = euclid_divide(prod, q)
        report.checks += 1
        vc, vprod = v_base(c), v_base(prod)
        va_gamma = Value.infinity() if a.is_zero else v_base(a) + gamma
        if not (vc == vprod and vprod < va_gamma):
            hypotheses_hold = False
            report.observations.append(
                {
                    "relation": "remainder hypothesis violated",
                    "f": fbar.text(),
                    "g": gbar.text(),
                    "v(c)": str(vc),
                    "v(fg)": str(vprod),
                    "v(a)+gamma": str(va_gamma),
                }
            )

    if not hypotheses_hold:
        report.observations.append(
            {"relation": "implication skipped", "reason": "hypotheses violated"}
        )
        return report

    mu_prime = min_formula_extension(v_base, q, gamma)
    polys = list(s.iter_exhaustive(cfg, max_degree=2, height=2))
    _check_v1v2(report, mu_prime, _poly_pairs(polys), label="extension")
    rng2 = s.rng()
    random_pairs = (
        (s.random_poly(rng2, cfg), s.random_poly(rng2, cfg)) for _ in range(s.trials)
    )
    _check_v1v2(report, mu_prime, random_pairs, label="extension")
    return report


def check_key_bounds(chain: MacLaneChain, i: int, s: Sampler) -> SuiteReport:
    """Derivative and remainder value laws below the step-i key.

    For f, g below deg(Q): every nonzero Hasse derivative of fg has value
    strictly above v(fg) - k * epsilon(Q).  For tuples below deg(Q) whose
    product is written through Q with nonzero remainder r: v(r) equals the
    product's value and lies strictly below the quotient term's value.
    """
    Q = chain.key(i)
    nu = chain.top
    cfg = chain.ground
    eps = epsilon(nu, Q).epsilon
    report = SuiteReport(
        suite="key-bounds",
        params={
            "descriptor": nu.describe(),
            "key": Q.text(),
            "epsilon": str(eps),
            "sampler": _sampler_params(s),
        },
    )

    def below_key_pairs():
        small = [
            f
            for f in s.iter_exhaustive(cfg, max_degree=Q.degree - 1, height=2)
            if not f.is_zero
        ]
        yield from _poly_pairs(small)
        rng = s.rng()
        for _ in range(s.trials):
            yield (
                s.random_poly(rng, cfg, max_degree=Q.degree - 1, nonzero=True),
                s.random_poly(rng, cfg, max_degree=Q.degree - 1, nonzero=True),
            )

    for f, g in below_key_pairs():
        prod = f * g
        vprod = nu(prod)
        if vprod.is_infinite or eps.is_infinite:
            continue
        for k in range(1, max(prod.degree, 1) + 1):
            dk = hasse_derivative(prod, k)
            if dk.is_zero:
                continue
            lhs = nu(dk)
            rhs = vprod - eps.scaled(k)
            report.record(
                lhs > rhs,
                {
                    "relation": "derivative bound",
                    "f": f.text(),
                    "g": g.text(),
                    "k": k,
                    "lhs v(d_k(fg))": str(lhs),
                    "rhs v(fg) - k*eps": str(rhs),
                },
            )

    rng = s.rng()
    for _ in range(s.trials):
        count = rng.randint(2, 3)
        hs = [
            s.random_poly(rng, cfg, max_degree=Q.degree - 1, nonzero=True)
            for _ in range(count)
        ]
        prod = Poly.one(cfg)
        for h in hs:
            prod = prod * h
        quot, r = euclid_divide(prod, Q)
        if r.is_zero:
            report.record(
                False,
                {
                    "relation": "remainder law",
                    "hs": [h.text() for h in hs],
                    "detail": "remainder vanished; key divides a smaller-degree product",
                },
            )
            continue
        vr, vprod = nu(r), nu(prod)
        vqQ = Value.infinity() if quot.is_zero else nu(quot * Q)
        report.record(
            vr == vprod and vr < vqQ,
            {
                "relation": "remainder law",
                "hs": [h.text() for h in hs],
                "v(r)": str(vr),
                "v(prod)": str(vprod),
                "v(qQ)": str(vqQ),
            },
        )
    return report


def check_graded(chain: MacLaneChain, i: int, s: Sampler) -> SuiteReport:
    """Graded-algebra invariants of the truncation at the step-i key."""
    Q = chain.key(i)
    nu = chain.top
    cfg = chain.ground
    trunc = chain.truncation_at(i)
    report = SuiteReport(
        suite="graded",
        params={
            "descriptor": nu.describe(),
            "key": Q.text(),
            "step": i,
            "sampler": _sampler_params(s),
        },
    )

    def nonzero_pairs(exhaustive_degree, random_degree):
        small = [
            f
            for f in s.iter_exhaustive(cfg, max_degree=exhaustive_degree, height=2)
            if not f.is_zero
        ]
        yield from _poly_pairs(small)
        rng = s.rng()
        for _ in range(s.trials):
            yield (
                s.random_poly(rng, cfg, max_degree=random_degree, nonzero=True),
                s.random_poly(rng, cfg, max_degree=random_degree, nonzero=True),
            )

    # product of initial forms against the initial form of the product;
    # exhaustive below the key degree, random at the sampler's degree bound
    for f, g in nonzero_pairs(max(Q.degree - 1, 0), s.degree_bound):
        F = initial_form(nu, Q, f)
        G = initial_form(nu, Q, g)
        try:
            P = multiply_initial_forms(nu, Q, F, G)
        except ArithmeticError as exc:
            report.record(
                False,
                {"relation": "graded product", "f": f.text(), "g": g.text(), "detail": str(exc)},
            )
            continue
        D = initial_form(nu, Q, f * g)
        report.record(
            P.same_as(D) and bool(P.support),
            {
                "relation": "form homomorphism",
                "f": f.text(),
                "g": g.text(),
                "product form": P.to_json_dict(),
                "form of product": D.to_json_dict(),
            },
        )

    # irreducibility of the initial form y of the key
    for f, g in nonzero_pairs(2, s.degree_bound):
        lhs = y_divides(nu, Q, f * g)
        rhs = y_divides(nu, Q, f) or y_divides(nu, Q, g)
        report.record(
            not lhs or rhs,
            {
                "relation": "y-primality",
                "f": f.text(),
                "g": g.text(),
                "y | in(fg)": lhs,
                "y | in(f) or in(g)": rhs,
            },
        )

    # the drop ideal is prime (the next chain key, when present, generates it)
    if i + 1 < len(chain):
        top = chain.top
        for f, g in nonzero_pairs(2, s.degree_bound):
            lhs = trunc(f * g) < top(f * g)
            rhs = trunc(f) < top(f) or trunc(g) < top(g)
            report.record(
                not lhs or rhs,
                {
                    "relation": "drop-ideal primality",
                    "f": f.text(),
                    "g": g.text(),
                    "drop(fg)": lhs,
                    "drop(f) or drop(g)": rhs,
                },
            )

    # equivalence is a multiplicative congruence: nudging each factor by a
    # strictly higher-value perturbation preserves the product's form
    u = Poly.constant(cfg, cfg.uniformizer)
    one = Poly.one(cfg)
    rng = s.rng()
    for _ in range(s.trials):
        f = s.random_poly(rng, cfg, nonzero=True)
        g = s.random_poly(rng, cfg, nonzero=True)
        if trunc(f).is_infinite or trunc(g).is_infinite:
            continue
        f2 = f * (one + u)
        g2 = g * (one + u * u)
        ok = (
            equivalent(trunc, f, f2)
            and equivalent(trunc, g, g2)
            and equivalent(trunc, f * g, f2 * g2)
        )
        report.record(
            ok,
            {
                "relation": "equivalence congruence",
                "f": f.text(),
                "g": g.text(),
            },
        )

    # irreducibility evidence: no sampled lower-degree factorization hits Q
    if Q.degree >= 2:
        rng = s.rng()
        for _ in range(s.trials):
            da = rng.randint(1, Q.degree - 1)
            a = s.random_poly(rng, cfg, max_degree=da, nonzero=True)
            b = s.random_poly(rng, cfg, max_degree=Q.degree - da, nonzero=True)
            report.record(
                a * b != Q,
                {"relation": "irreducibility", "a": a.text(), "b": b.text()},
            )
    return report


def check_complete_set(chain: MacLaneChain, s: Sampler) -> SuiteReport:
    """Every sampled polynomial's value is witnessed by a chain key of smaller degree."""
    cfg = chain.ground
    top = chain.top
    truncs = [(chain.key(i).degree, chain.truncation_at(i)) for i in range(len(chain))]
    report = SuiteReport(
        suite="complete-set",
        params={"descriptor": top.describe(), "sampler": _sampler_params(s)},
    )

    def witness(f: Poly) -> bool:
        if f.is_zero or f.degree == 0:
            return True  # constants carry their ground value under every key
        vf = top(f)
        return any(d <= f.degree and t(f) == vf for d, t in truncs)

    for f in s.iter_exhaustive(cfg):
        report.record(
            witness(f), {"relation": "complete set", "f": f.text()}
        )
    rng = s.rng()
    for _ in range(s.trials):
        f = s.random_poly(rng, cfg)
        report.record(witness(f), {"relation": "complete set", "f": f.text()})
    return report


def check_mlv_key(v: ValuationDescriptor, Q: Poly, s: Sampler) -> SuiteReport:
    """Irreducibility and degree-minimality evidence for a key over v.

    Minimality: no enumerated polynomial below deg(Q) is equivalent to any
    bounded multiple of Q.  Irreducibility: products detected as divisible
    by Q must have a divisible factor; detection is exact when v is the
    truncation at Q itself, and a bounded witness search otherwise (a failed
    search is reported as an observation, never as non-divisibility).  The
    division law v(f) <= min(v(aQ), v(r)) is checked on sampled expansions.
    """
    if not Q.is_monic or Q.degree < 1:
        raise ValueError("key candidate must be monic of degree >= 1")
    cfg = v.ground
    report = SuiteReport(
        suite="mlv-key",
        params={
            "descriptor": v.describe(),
            "key": Q.text(),
            "sampler": _sampler_params(s),
        },
    )

    # division law on sampled expansions
    rng = s.rng()
    for _ in range(s.trials):
        f = s.random_poly(rng, cfg, nonzero=True)
        a, r = euclid_divide(f, Q)
        bound = min(
            Value.infinity() if a.is_zero else v(a * Q),
            Value.infinity() if r.is_zero else v(r),
        )
        report.record(
            v(f) <= bound,
            {
                "relation": "division law",
                "f": f.text(),
                "v(f)": str(v(f)),
                "min(v(aQ), v(r))": str(bound),
            },
        )

    multiplier_cap = min(s.degree_bound, 2)
    multipliers = [
        h
        for h in s.iter_exhaustive(cfg, max_degree=multiplier_cap, height=s.height_bound)
        if not h.is_zero
    ]

    # degree minimality: nothing below deg(Q) is equivalent to a multiple of Q
    for f in s.iter_exhaustive(cfg, max_degree=Q.degree - 1, height=s.height_bound):
        if f.is_zero:
            continue
        hit = next((h for h in multipliers if equivalent(v, f, Q * h)), None)
        report.record(
            hit is None,
            {
                "relation": "degree minimality",
                "f": f.text(),
                "witness h": hit.text() if hit is not None else None,
            },
        )

    # irreducibility
    is_own_truncation = isinstance(v, Truncation) and v.key == Q
    rng = s.rng()
    for _ in range(s.trials):
        f = s.random_poly(rng, cfg, nonzero=True)
        g = s.random_poly(rng, cfg, nonzero=True)
        if is_own_truncation:
            if not y_divides(v.ambient, Q, f * g):
                continue
            report.record(
                y_divides(v.ambient, Q, f) or y_divides(v.ambient, Q, g),
                {"relation": "irreducibility", "f": f.text(), "g": g.text()},
            )
        else:
            prod_hit = next(
                (h for h in multipliers if equivalent(v, f * g, Q * h)), None
            )
            if prod_hit is None:
                continue
            one_sided = any(
                equivalent(v, f, Q * h) or equivalent(v, g, Q * h)
                for h in multipliers
            )
            report.checks += 1
            if not one_sided:
                report.observations.append(
                    {
                        "relation": "irreducibility",
                        "f": f.text(),
                        "g": g.text(),
                        "detail": "no one-sided divisor witness within bound",
                    }
                )
    return report


def _sampler_params(s: Sampler) -> dict:
    return {
        "degree": s.degree_bound,
        "height": s.height_bound,
        "trials": s.trials,
        "seed": s.seed,
    }


SUITES = {
    "axioms": check_axioms,
    "extension": check_extension_criterion,
    "key-bounds": check_key_bounds,
    "graded": check_graded,
    "complete-set": check_complete_set,
    "mlv-key": check_mlv_key,
}
