"""JSON encodings of descriptors and family prefixes.

A descriptor document is ``{"ground": {...}, "chain": [step, ...]}`` where
the first step is the monomial root and each later step extends the
valuation built so far::

    {"type": "monomial",   "gamma": "1"}
    {"type": "augmented",  "key": "x - t", "gamma": "3"}
    {"type": "truncation", "key": "x - t"}
    {"type": "limit", "prefix": [{"key": "...", "gamma": "..."}, ...],
     "key": "...", "gamma": "..."}

Values use "num/den", "num" or "inf"; polynomials use their text form or a
JSON array of coefficient strings.  A prefix document is
``{"base": {descriptor}, "members": [{"key", "gamma"}, ...]}``.
"""

from __future__ import annotations

from .family import FamilyPrefix
from .ground import Value, ground_from_json, ground_to_json, parse_element
from .poly import Poly, parse_poly
from .valuation import (
    Augmented,
    LimitAugmented,
    Monomial,
    Truncation,
    ValuationDescriptor,
)


def poly_from_json(cfg, data) -> Poly:
    """A polynomial from its text form or an array of coefficient strings."""
    if isinstance(data, str):
        return parse_poly(cfg, data)
    if isinstance(data, list):
        return Poly(cfg, [parse_element(cfg, c) for c in data])
    raise ValueError(f"cannot read a polynomial from {data!r}")


def descriptor_to_json(v: ValuationDescriptor) -> dict:
    steps = []
    node = v
    while node is not None:
        if isinstance(node, Monomial):
            steps.append({"type": "monomial", "gamma": str(node.gamma)})
            node = None
        elif isinstance(node, Augmented):
            steps.append(
                {"type": "augmented", "key": node.key.text(), "gamma": str(node.gamma)}
            )
            node = node.base
        elif isinstance(node, Truncation):
            steps.append({"type": "truncation", "key": node.key.text()})
            node = node.ambient
        elif isinstance(node, LimitAugmented):
            steps.append(
                {
                    "type": "limit",
                    "prefix": [
                        {"key": key.text(), "gamma": str(gamma)}
                        for key, gamma in node.prefix.members
                    ],
                    "key": node.key.text(),
                    "gamma": str(node.gamma),
                }
            )
            node = node.prefix.base
        else:
            raise TypeError(f"cannot serialize descriptor {node!r}")
    steps.reverse()
    return {"ground": ground_to_json(v.ground), "chain": steps}


def descriptor_from_json(doc: dict) -> ValuationDescriptor:
    if "ground" not in doc or "chain" not in doc:
        raise ValueError("descriptor document needs 'ground' and 'chain'")
    cfg = ground_from_json(doc["ground"])
    chain = doc["chain"]
    if not chain:
        raise ValueError("descriptor chain is empty")
    if chain[0].get("type") != "monomial":
        raise ValueError("descriptor chain must start with a monomial step")
    v: ValuationDescriptor = Monomial(cfg, Value.parse(chain[0]["gamma"]))
    for step in chain[1:]:
        kind = step.get("type")
        if kind == "augmented":
            v = Augmented(v, poly_from_json(cfg, step["key"]), Value.parse(step["gamma"]))
        elif kind == "truncation":
            v = Truncation(v, poly_from_json(cfg, step["key"]))
        elif kind == "limit":
            members = tuple(
                (poly_from_json(cfg, m["key"]), Value.parse(m["gamma"]))
                for m in step["prefix"]
            )
            prefix = FamilyPrefix(v, members)
            v = LimitAugmented(
                prefix, poly_from_json(cfg, step["key"]), Value.parse(step["gamma"])
            )
        else:
            raise ValueError(f"unknown chain step type {kind!r}")
    return v


def prefix_to_json(prefix: FamilyPrefix) -> dict:
    return {
        "base": descriptor_to_json(prefix.base),
        "members": [
            {"key": key.text(), "gamma": str(gamma)} for key, gamma in prefix.members
        ],
    }


def prefix_from_json(doc: dict) -> FamilyPrefix:
    if "base" not in doc or "members" not in doc:
        raise ValueError("prefix document needs 'base' and 'members'")
    base = descriptor_from_json(doc["base"])
    cfg = base.ground
    members = tuple(
        (poly_from_json(cfg, m["key"]), Value.parse(m["gamma"]))
        for m in doc["members"]
    )
    return FamilyPrefix(base, members)
