"""JSON round-trips for descriptors, prefixes and polynomials."""

import pytest

from valkey import (
    Augmented,
    FamilyPrefix,
    LimitAugmented,
    Monomial,
    Truncation,
    Value,
    descriptor_from_json,
    descriptor_to_json,
    parse_poly,
    poly_from_json,
    prefix_from_json,
    prefix_to_json,
)

V = Value.finite


def geometric_prefix(qt, nu_t, length=3):
    members = []
    acc = parse_poly(qt, "0")
    for k in range(1, length + 1):
        acc = acc + parse_poly(qt, f"t^{k}")
        members.append((parse_poly(qt, "x") - acc, V(k + 1)))
    return FamilyPrefix(nu_t, tuple(members))


class TestDescriptorJson:
    def test_monomial(self, q2):
        v = Monomial(q2, V("1/2"))
        doc = descriptor_to_json(v)
        assert doc["chain"] == [{"type": "monomial", "gamma": "1/2"}]
        assert descriptor_from_json(doc) == v

    def test_augmented_chain(self, qt, nu1):
        doc = descriptor_to_json(nu1)
        assert [step["type"] for step in doc["chain"]] == ["monomial", "augmented"]
        assert descriptor_from_json(doc) == nu1

    def test_truncation(self, qt, nu1):
        v = Truncation(nu1, parse_poly(qt, "x"))
        assert descriptor_from_json(descriptor_to_json(v)) == v

    def test_limit_step(self, qt, nu_t):
        prefix = geometric_prefix(qt, nu_t)
        lim = LimitAugmented(
            prefix, parse_poly(qt, "x") - parse_poly(qt, "(t)/(1 - t)"), V(50)
        )
        doc = descriptor_to_json(lim)
        assert doc["chain"][-1]["type"] == "limit"
        assert len(doc["chain"][-1]["prefix"]) == 3
        assert descriptor_from_json(doc) == lim

    def test_infinite_gamma(self, q2):
        v = Augmented(Monomial(q2, V(1)), parse_poly(q2, "x - 2"), Value.infinity())
        doc = descriptor_to_json(v)
        assert doc["chain"][-1]["gamma"] == "inf"
        assert descriptor_from_json(doc) == v

    def test_malformed_documents_rejected(self):
        with pytest.raises(ValueError):
            descriptor_from_json({"ground": {"kind": "p-adic", "p": 2}})
        with pytest.raises(ValueError):
            descriptor_from_json(
                {"ground": {"kind": "p-adic", "p": 2}, "chain": []}
            )
        with pytest.raises(ValueError):
            descriptor_from_json(
                {
                    "ground": {"kind": "p-adic", "p": 2},
                    "chain": [{"type": "augmented", "key": "x", "gamma": "1"}],
                }
            )


class TestPrefixJson:
    def test_round_trip(self, qt, nu_t):
        prefix = geometric_prefix(qt, nu_t)
        assert prefix_from_json(prefix_to_json(prefix)) == prefix

    def test_needs_base_and_members(self):
        with pytest.raises(ValueError):
            prefix_from_json({"members": []})


class TestPolyJson:
    def test_text_form(self, qt):
        assert poly_from_json(qt, "x^2 - t") == parse_poly(qt, "x^2 - t")

    def test_coefficient_array_form(self, qt):
        f = poly_from_json(qt, ["1", "0", "1"])
        assert f == parse_poly(qt, "x^2 + 1")
        g = poly_from_json(qt, ["(t^2)/(1 + t)", "-1"])
        assert g == parse_poly(qt, "(t^2)/(1 + t) - x")

    def test_other_shapes_rejected(self, qt):
        with pytest.raises(ValueError):
            poly_from_json(qt, {"coeffs": [1]})
