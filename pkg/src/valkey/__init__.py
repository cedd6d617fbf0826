"""Exact arithmetic for valuations on K[x] built from MacLane chains.

The package computes monomial, augmented, truncated and limit-augmented
valuations over p-adic rationals and t-adic rational function fields, the
epsilon invariant and key-polynomial checks, initial forms in the graded
algebra of a truncation, stabilization along continued families, and a
property-checking harness that exercises the defining laws on enumerated
and seeded-random instances.
"""

from .family import (
    Classification,
    FamilyPrefix,
    LimitCheckReport,
    NotStabilizedError,
    StabilizationResult,
    classify,
    limit_check,
    mlv_correspondence,
    nu_F,
    stabilize,
)
from .graded import (
    TruncInitialForm,
    equivalent,
    initial_form,
    inQprime_divides,
    multiply_initial_forms,
    y_divides,
)
from .ground import (
    INFINITY,
    PAdicRationals,
    PrimeField,
    Rationals,
    RatFunc,
    TAdicRationalFunctions,
    Value,
    ground_from_json,
    ground_to_json,
    parse_element,
)
from .harness import (
    Sampler,
    SuiteReport,
    check_axioms,
    check_complete_set,
    check_graded,
    check_key_bounds,
    check_mlv_key,
    check_extension_criterion,
)
from .keypoly import (
    EpsilonReport,
    KeyCheckResult,
    KeyComparison,
    abstract_key_check,
    alpha,
    compare_keys,
    epsilon,
    psi_member,
)
from .poly import (
    Poly,
    PolyParseError,
    QExpansion,
    euclid_divide,
    hasse_derivative,
    parse_poly,
    q_expansion,
)
from .serialize import (
    descriptor_from_json,
    descriptor_to_json,
    poly_from_json,
    prefix_from_json,
    prefix_to_json,
)
from .valuation import (
    Augmented,
    LimitAugmented,
    MacLaneChain,
    Monomial,
    Truncation,
    ValuationDescriptor,
    check_same_degree_comparison,
    leq_same_degree,
)

__version__ = "0.1.0"
