"""Family prefixes, stabilization, limit checks and the correspondence."""

import pytest

from valkey import (
    Augmented,
    FamilyPrefix,
    LimitAugmented,
    MacLaneChain,
    Monomial,
    NotStabilizedError,
    Poly,
    Sampler,
    Value,
    classify,
    limit_check,
    mlv_correspondence,
    nu_F,
    parse_poly,
    stabilize,
)

V = Value.finite


def geometric_members(qt, length):
    """Keys x - (t + t^2 + ... + t^k) with gamma_k = k + 1."""
    members = []
    acc = parse_poly(qt, "0")
    for k in range(1, length + 1):
        acc = acc + parse_poly(qt, f"t^{k}")
        members.append((parse_poly(qt, "x") - acc, V(k + 1)))
    return tuple(members)


@pytest.fixture
def geom5(qt, nu_t):
    return FamilyPrefix(nu_t, geometric_members(qt, 5))


@pytest.fixture
def geom_limit_key(qt):
    # the geometric sums converge to t/(1 - t); values keep climbing forever
    return parse_poly(qt, "x") - parse_poly(qt, "(t)/(1 - t)")


class TestFamilyPrefix:
    def test_member_valuations(self, qt, nu_t, geom5):
        assert len(geom5) == 5
        assert geom5.degree == 1
        assert geom5.member_valuation(0)(parse_poly(qt, "x - t")) == V(2)

    def test_prefix_needs_two_members(self, qt, nu_t):
        with pytest.raises(ValueError):
            FamilyPrefix(nu_t, ((parse_poly(qt, "x - t"), V(2)),))

    def test_gammas_must_increase(self, qt, nu_t):
        members = (
            (parse_poly(qt, "x - t"), V(3)),
            (parse_poly(qt, "x - t - t^3"), V(3)),
        )
        with pytest.raises(ValueError):
            FamilyPrefix(nu_t, members)

    def test_inadmissible_member_rejected(self, qt, nu_t):
        members = (
            (parse_poly(qt, "x - t"), V("1/2")),
            (parse_poly(qt, "x - t - t^3"), V(4)),
        )
        with pytest.raises(ValueError):
            FamilyPrefix(nu_t, members)

    def test_noncomparable_members_rejected(self, qt, nu_t):
        # the worked example: [x - t -> 3] is not dominated by [x - t - t^2 -> 4]
        members = (
            (parse_poly(qt, "x - t"), V(3)),
            (parse_poly(qt, "x - t - t^2"), V(4)),
        )
        with pytest.raises(ValueError):
            FamilyPrefix(nu_t, members)

    def test_mixed_degrees_rejected(self, qt, nu_t):
        members = (
            (parse_poly(qt, "x - t"), V(2)),
            (parse_poly(qt, "x^2"), V(3)),
        )
        with pytest.raises(ValueError):
            FamilyPrefix(nu_t, members)


class TestStabilize:
    def test_below_family_degree_stabilizes_immediately(self, qt, geom5):
        result = stabilize(geom5, parse_poly(qt, "t^2 + 1"))
        assert result.stabilized
        assert result.first_index == 1
        assert result.value == V(0)

    def test_last_key_increases_through_prefix(self, qt, geom5):
        last_key = geom5.members[-1][0]
        result = stabilize(geom5, last_key)
        assert not result.stabilized
        assert list(result.values) == [V(k) for k in (2, 3, 4, 5, 6)]

    def test_two_member_example(self, qt, nu_t):
        prefix = FamilyPrefix(
            nu_t,
            ((parse_poly(qt, "x - t"), V(3)), (parse_poly(qt, "x - t - t^3"), V(4))),
        )
        result = stabilize(prefix, parse_poly(qt, "x - t"))
        assert result.stabilized
        assert result.value == V(3)
        assert result.first_index == 1

    def test_early_stop_agrees_with_longer_prefixes(self, qt, nu_t, geom5):
        import itertools

        geom10 = FamilyPrefix(nu_t, geometric_members(qt, 10))
        alphabet = [qt.zero, qt.one, qt.neg(qt.one), qt.t]
        for coeffs in itertools.product(alphabet, repeat=4):
            f = Poly(qt, coeffs)
            if f.is_zero:
                continue
            short = stabilize(geom5, f)
            full = stabilize(geom10, f)
            if short.stabilized:
                assert full.stabilized
                assert full.value == short.value
                assert full.first_index == short.first_index


class TestNuF:
    def test_stable_value(self, qt, geom5):
        assert nu_F(geom5, parse_poly(qt, "x - t")) == V(2)

    def test_constant(self, qt, geom5):
        assert nu_F(geom5, parse_poly(qt, "t^3")) == V(3)

    def test_unstabilized_raises(self, qt, geom5, geom_limit_key):
        with pytest.raises(NotStabilizedError):
            nu_F(geom5, geom_limit_key)

    def test_multiplicative_on_stabilized_inputs(self, qt, geom5):
        polys = [
            parse_poly(qt, text)
            for text in ("x - t", "t", "x + 1", "x^2 - t", "1 + t*x")
        ]
        for f in polys:
            for g in polys:
                assert nu_F(geom5, f * g) == nu_F(geom5, f) + nu_F(geom5, g)
                assert nu_F(geom5, f + g) >= min(nu_F(geom5, f), nu_F(geom5, g))


class TestClassify:
    def test_unit_is_stable_at_index_zero(self, qt, geom5):
        c = classify(geom5, parse_poly(qt, "1"))
        assert not c.presumed_unbounded
        assert c.alpha_index == 0
        assert c.value == V(0)

    def test_limit_key_presumed_unbounded(self, qt, geom5, geom_limit_key):
        c = classify(geom5, geom_limit_key)
        assert c.presumed_unbounded
        assert "presumed" in c.to_json_dict()["note"]

    def test_product_classification(self, qt, geom5, geom_limit_key):
        stable = parse_poly(qt, "x - t")
        prod = classify(geom5, stable * geom_limit_key)
        assert prod.presumed_unbounded
        both = classify(geom5, stable * stable)
        assert not both.presumed_unbounded


class TestLimitCheck:
    def test_genuine_limit_key_passes(self, qt, geom5, geom_limit_key):
        samples = [parse_poly(qt, s) for s in ("1", "t", "2", "t^2 - 1")]
        report = limit_check(geom5, geom_limit_key, V(100), samples)
        assert report.passed
        assert report.values == (V(2), V(3), V(4), V(5), V(6))

    def test_stabilizing_candidate_fails(self, qt, geom5):
        report = limit_check(geom5, parse_poly(qt, "x - t"), V(100))
        assert not report.strictly_increasing
        assert not report.passed

    def test_insufficient_gamma_fails(self, qt, geom5, geom_limit_key):
        report = limit_check(geom5, geom_limit_key, V(4))
        assert report.strictly_increasing
        assert not report.gamma_dominates

    def test_presumption_note_always_present(self, qt, geom5, geom_limit_key):
        doc = limit_check(geom5, geom_limit_key, V(100)).to_json_dict()
        assert "presumed" in doc["note"]

    def test_non_monic_rejected(self, qt, geom5):
        with pytest.raises(ValueError):
            limit_check(geom5, parse_poly(qt, "2*x"), V(10))


class TestLimitAugmented:
    def test_evaluates_through_stable_values(self, qt, geom5, geom_limit_key):
        lim = LimitAugmented(geom5, geom_limit_key, V(100))
        assert lim(parse_poly(qt, "x - t")) == V(2)
        assert lim(geom_limit_key) == V(100)
        assert lim(geom_limit_key * geom_limit_key) == V(200)

    def test_unstabilized_coefficient_raises(self, qt, geom5, geom_limit_key):
        lim = LimitAugmented(geom5, parse_poly(qt, "x^2"), V(3))
        with pytest.raises(NotStabilizedError):
            lim(geom_limit_key)

    def test_gamma_must_dominate_all_members(self, qt, geom5, geom_limit_key):
        with pytest.raises(ValueError):
            LimitAugmented(geom5, geom_limit_key, V(4))

    def test_degree_below_family_rejected(self, qt, nu1):
        # a degree-2 continued family over the refined base: keys
        # (x - t)^2 + t^6 + t^(6+k) with gamma = 6 + k
        members = tuple(
            (parse_poly(qt, f"(x - t)^2 + t^6 + t^{6 + k}"), V(6 + k))
            for k in (1, 2)
        )
        prefix2 = FamilyPrefix(nu1, members)
        assert prefix2.degree == 2
        with pytest.raises(ValueError):
            LimitAugmented(prefix2, parse_poly(qt, "x"), V(100))

    def test_padic_geometric_family(self, q2):
        # 2-adic partial sums 2 + 4 + ... + 2^k approach -2
        nu0 = Monomial(q2, V(1))
        members = []
        total = 0
        for k in range(1, 6):
            total += 2**k
            members.append((parse_poly(q2, f"x - {total}"), V(k + 1)))
        prefix = FamilyPrefix(nu0, tuple(members))
        limit_key = parse_poly(q2, "x + 2")
        report = limit_check(prefix, limit_key, Value.infinity())
        assert report.passed
        lim = LimitAugmented(prefix, limit_key, Value.infinity())
        assert lim(limit_key).is_infinite
        assert lim(parse_poly(q2, "x")) == V(1)
        assert lim(parse_poly(q2, "x + 2") * parse_poly(q2, "3")).is_infinite


class TestCorrespondence:
    def test_ordinary_step(self, qt, nu1):
        chain = MacLaneChain(nu1)
        sampler = Sampler(degree_bound=3, height_bound=2, trials=60, seed=3)
        report = mlv_correspondence(chain, 0, sampler)
        assert report.kind == "ordinary"
        assert report.passed and report.conclusive
        assert report.agreement_checks > 100

    def test_quadratic_step(self, qt, nu1):
        quad = Augmented(nu1, parse_poly(qt, "(x - t)^2 + t^6"), V(7))
        chain = MacLaneChain(quad)
        sampler = Sampler(degree_bound=3, height_bound=2, trials=60, seed=3)
        for i in (0, 1):
            report = mlv_correspondence(chain, i, sampler)
            assert report.passed, report.to_json_dict()

    def test_limit_step(self, qt, geom5, geom_limit_key):
        lim = LimitAugmented(geom5, geom_limit_key, V(100))
        chain = MacLaneChain(lim)
        sampler = Sampler(degree_bound=2, height_bound=2, trials=40, seed=5)
        report = mlv_correspondence(chain, 0, sampler)
        assert report.kind == "limit"
        assert report.passed and report.conclusive

    def test_limit_step_short_prefix_surfaces_not_stabilized(self, qt, nu_t):
        # keys x - t^k make x itself presumed-unbounded, so a degree-2 limit
        # key leaves the sampled coefficient x unstabilized
        members = tuple(
            (parse_poly(qt, f"x - t^{k}"), V(k)) for k in range(2, 6)
        )
        prefix = FamilyPrefix(nu_t, members)
        assert classify(prefix, parse_poly(qt, "x")).presumed_unbounded
        lim = LimitAugmented(prefix, parse_poly(qt, "x^2"), V(20))
        chain = MacLaneChain(lim)
        sampler = Sampler(degree_bound=3, height_bound=2, trials=30, seed=9)
        report = mlv_correspondence(chain, 0, sampler)
        assert report.kind == "limit"
        assert not report.conclusive
        assert report.not_stabilized

    def test_last_step_has_no_successor(self, nu1):
        chain = MacLaneChain(nu1)
        sampler = Sampler(trials=5, seed=0)
        with pytest.raises(IndexError):
            mlv_correspondence(chain, 1, sampler)
