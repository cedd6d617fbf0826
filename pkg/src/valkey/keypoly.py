"""The epsilon invariant and verification of (abstract) key polynomials.

epsilon(f) is the maximum over k >= 1 of (v(f) - v(d_k f)) / k, where d_k is
the Hasse derivative of order k.  A monic Q is a key polynomial when every f
with epsilon(f) >= epsilon(Q) has degree at least deg(Q); truncating a
valuation at a key yields a valuation again.  alpha(Q) is the least degree
where the truncation at Q drops below the full valuation, and Psi(Q) collects
the monic polynomials of that degree realizing the drop.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .ground import INFINITY, Value
from .poly import Poly, hasse_derivative
from .valuation import MacLaneChain, Truncation, ValuationDescriptor


@dataclass(frozen=True)
class EpsilonReport:
    """The epsilon value of a polynomial and the orders attaining it."""

    epsilon: Value
    argmax: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {"epsilon": str(self.epsilon), "argmax": list(self.argmax)}


def epsilon(v: ValuationDescriptor, f: Poly) -> EpsilonReport:
    """Maximize (v(f) - v(d_k f)) / k over the orders 1 <= k <= deg f.

    Orders with d_k f = 0 are skipped; the top order always survives since
    d_{deg f}(f) is the leading coefficient.  When v(f) is infinite the
    report is infinite with every surviving order in the argmax.
    """
    if f.degree < 1:
        raise ValueError("epsilon is undefined below degree 1")
    vf = v(f)
    candidates = []
    for k in range(1, f.degree + 1):
        dk = hasse_derivative(f, k)
        if dk.is_zero:
            continue
        candidates.append((k, v(dk)))
    if vf.is_infinite:
        return EpsilonReport(INFINITY, tuple(k for k, _ in candidates))
    best: Value | None = None
    argmax: list[int] = []
    for k, dv in candidates:
        if dv.is_infinite:
            # a derivative inside the support can never attain the maximum
            continue
        ratio = (vf - dv).scaled(mpq(1, k))
        if best is None or ratio > best:
            best, argmax = ratio, [k]
        elif ratio == best:
            argmax.append(k)
    assert best is not None  # the leading-coefficient order is always finite
    return EpsilonReport(best, tuple(argmax))


def alpha(chain: MacLaneChain, i: int) -> Value:
    """Least degree of a later chain key whose truncation at step i drops.

    Returns the degree of the earliest chain key Q_j (j > i) with
    trunc_i(Q_j) < v(Q_j) under the chain's full valuation, or infinity when
    no later key drops.
    """
    if not 0 <= i < len(chain):
        raise IndexError(f"chain step {i} out of range")
    trunc = chain.truncation_at(i)
    top = chain.top
    for j in range(i + 1, len(chain)):
        qj = chain.key(j)
        if trunc(qj) < top(qj):
            return Value.finite(qj.degree)
    return INFINITY


def psi_member(chain: MacLaneChain, i: int, candidate: Poly) -> bool:
    """Whether candidate lies in Psi of the step-i key.

    Membership requires a monic candidate of degree alpha(chain, i) whose
    truncated value drops strictly below the chain value.
    """
    a = alpha(chain, i)
    if a.is_infinite:
        raise ValueError(
            "Psi is empty: the truncation agrees with the chain valuation "
            "on all later keys"
        )
    if not candidate.is_monic:
        return False
    if Value.finite(candidate.degree) != a:
        return False
    return chain.truncation_at(i)(candidate) < chain.top(candidate)


@dataclass(frozen=True)
class KeyCheckResult:
    """Outcome of the abstract key check for a chain step."""

    kind: str  # "ordinary", "limit" or "unverified"
    witness_step: int | None = None
    evidence: tuple = ()

    @property
    def verified(self) -> bool:
        return self.kind in ("ordinary", "limit")

    def to_json_dict(self) -> dict:
        doc: dict = {"kind": self.kind}
        if self.witness_step is not None:
            doc["witnessStep"] = self.witness_step
        if self.evidence:
            doc["evidence"] = [
                {"condition": name, "holds": ok} for name, ok in self.evidence
            ]
        return doc


def abstract_key_check(chain: MacLaneChain, i: int) -> KeyCheckResult:
    """Classify the step-i key as an ordinary key, a limit key, or unverified.

    Degree-1 monic keys are ordinary by convention.  An ordinary step is
    witnessed by Psi-membership over the previous step.  A limit step is
    classified by prefix evidence: the prefix keys share the base key's
    degree, their values on the key increase strictly, and each prefix
    member values the key below its assigned gamma.  Prefix evidence is
    evidence, not proof.
    """
    if not 0 <= i < len(chain):
        raise IndexError(f"chain step {i} out of range")
    key = chain.key(i)
    if chain.is_limit_step(i):
        lvl = chain.valuation(i)
        prefix = lvl.prefix
        base_deg = 1 if i == 0 else chain.key(i - 1).degree
        values = [prefix.member_valuation(j)(key) for j in range(len(prefix))]
        increasing = all(a < b for a, b in zip(values, values[1:]))
        dominated = all(v < lvl.gamma for v in values)
        degrees_match = prefix.degree == base_deg
        evidence = (
            ("prefix keys share the base key degree", degrees_match),
            ("key value strictly increases along the prefix", increasing),
            ("gamma exceeds every prefix member value", dominated),
        )
        if increasing and dominated and degrees_match:
            return KeyCheckResult("limit", witness_step=i - 1, evidence=evidence)
        return KeyCheckResult("unverified", evidence=evidence)
    if key.degree == 1:
        return KeyCheckResult("ordinary", witness_step=0 if i > 0 else None)
    if i > 0 and psi_member(chain, i - 1, key):
        return KeyCheckResult("ordinary", witness_step=i - 1)
    return KeyCheckResult("unverified")


@dataclass(frozen=True)
class KeyComparison:
    """Degrees, epsilon values, chain values and truncation drops of two keys."""

    deg_q: int
    deg_qp: int
    eps_q: Value
    eps_qp: Value
    nu_q: Value
    nu_qp: Value
    trunc_q_of_qp: Value
    trunc_qp_of_q: Value
    clauses: tuple

    @property
    def passed(self) -> bool:
        return all(holds for _, applicable, holds in self.clauses if applicable)

    def to_json_dict(self) -> dict:
        return {
            "values": {
                "deg(Q)": self.deg_q,
                "deg(Q')": self.deg_qp,
                "epsilon(Q)": str(self.eps_q),
                "epsilon(Q')": str(self.eps_qp),
                "nu(Q)": str(self.nu_q),
                "nu(Q')": str(self.nu_qp),
                "nu_Q(Q')": str(self.trunc_q_of_qp),
                "nu_Q'(Q)": str(self.trunc_qp_of_q),
            },
            "clauses": [
                {
                    "name": name,
                    "applicable": applicable,
                    "holds": holds if applicable else None,
                }
                for name, applicable, holds in self.clauses
            ],
            "pass": self.passed,
        }


def compare_keys(v: ValuationDescriptor, Q: Poly, Qp: Poly) -> KeyComparison:
    """Check the degree/epsilon/truncation comparison laws for two keys.

    Smaller degree forces smaller epsilon; smaller epsilon forces the
    truncation at Q to drop on Q'; at equal degrees, value comparison,
    truncation drop and epsilon comparison are all equivalent.
    """
    for q in (Q, Qp):
        if not q.is_monic or q.degree < 1:
            raise ValueError("compare_keys requires monic keys of degree >= 1")
    eps_q = epsilon(v, Q).epsilon
    eps_qp = epsilon(v, Qp).epsilon
    nu_q, nu_qp = v(Q), v(Qp)
    trunc_q_of_qp = Truncation(v, Q)(Qp)
    trunc_qp_of_q = Truncation(v, Qp)(Q)

    deg_lt = Q.degree < Qp.degree
    eps_lt = eps_q < eps_qp
    drop_qp = trunc_q_of_qp < nu_qp
    val_lt = nu_q < nu_qp

    clauses = (
        ("deg(Q) < deg(Q') implies epsilon(Q) < epsilon(Q')", deg_lt, eps_lt),
        ("epsilon(Q) < epsilon(Q') implies nu_Q(Q') < nu(Q')", eps_lt, drop_qp),
        (
            "equal degrees: nu(Q) < nu(Q') iff nu_Q(Q') < nu(Q') iff epsilon(Q) < epsilon(Q')",
            Q.degree == Qp.degree,
            val_lt == drop_qp == eps_lt,
        ),
    )
    return KeyComparison(
        deg_q=Q.degree,
        deg_qp=Qp.degree,
        eps_q=eps_q,
        eps_qp=eps_qp,
        nu_q=nu_q,
        nu_qp=nu_qp,
        trunc_q_of_qp=trunc_q_of_qp,
        trunc_qp_of_q=trunc_qp_of_q,
        clauses=clauses,
    )
