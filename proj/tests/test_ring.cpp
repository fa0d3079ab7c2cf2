#include <doctest.h>

#include <random>

#include "dore/ring.hpp"

using namespace dore;

namespace {

// The Jordan-plane style coefficient ring: x2 x1 -> x1 x2 + x1^2.
RingPtr jordan_plane(const Field& f) {
    RewriteRule rule;
    rule.lhs = Word{{1, 0}};
    rule.rhs = {{Scalar::one(f), Word{{0, 1}}}, {Scalar::one(f), Word{{0, 0}}}};
    return PresentedRing::make(f, {"x1", "x2"}, {rule});
}

// Quantum plane: x2 x1 -> -x1 x2.
RingPtr quantum_plane(const Field& f) {
    RewriteRule rule;
    rule.lhs = Word{{1, 0}};
    rule.rhs = {{-Scalar::one(f), Word{{0, 1}}}};
    return PresentedRing::make(f, {"x1", "x2"}, {rule});
}

RingElement rnd_element(const RingPtr& ring, std::mt19937& rng) {
    std::vector<std::pair<Scalar, Word>> raw;
    const std::vector<Word> basis = ring_basis(ring, 2);
    for (int t = 0; t < 3; ++t) {
        long c = static_cast<long>(rng() % 7) - 3;
        raw.emplace_back(Scalar::of(ring->field(), c), basis[rng() % basis.size()]);
    }
    return normalize(ring, raw);
}

} // namespace

TEST_CASE("normalization of the defining relation") {
    const Field q = Field::rationals();
    RingPtr r = jordan_plane(q);
    RingElement x1 = RingElement::generator(r, 0);
    RingElement x2 = RingElement::generator(r, 1);
    CHECK(x2 * x1 == x1 * x2 + x1 * x1);
    CHECK((x2 * x1).str() == "x1*x2 + x1^2");
    CHECK(normalize(r, {{Scalar::one(q), Word{}}}) == RingElement::one(r));
}

TEST_CASE("two-step rewrite with sign bookkeeping") {
    const Field q = Field::rationals();
    RingPtr r = quantum_plane(q);
    // x2 x2 x1 -> x1 x2 x2 after two sign flips
    RingElement e = normalize(r, {{Scalar::one(q), Word{{1, 1, 0}}}});
    CHECK(e == RingElement::monomial(r, Word{{0, 1, 1}}, Scalar::one(q)));
}

TEST_CASE("ring multiplication examples") {
    const Field q = Field::rationals();
    RingPtr r = quantum_plane(q);
    RingElement x1 = RingElement::generator(r, 0);
    RingElement x2 = RingElement::generator(r, 1);
    CHECK(x1 * x1 == RingElement::monomial(r, Word{{0, 0}}, Scalar::one(q)));
    CHECK(x2 * x1 == -(x1 * x2));
    CHECK((x1 * x2 + (-(x1 * x2))).is_zero());
}

TEST_CASE("normalize is idempotent and rejects foreign data") {
    const Field q = Field::rationals();
    RingPtr r = jordan_plane(q);
    std::mt19937 rng(7);
    for (int rep = 0; rep < 50; ++rep) {
        RingElement e = rnd_element(r, rng);
        std::vector<std::pair<Scalar, Word>> raw;
        for (const auto& [w, c] : e.terms()) raw.emplace_back(c, w);
        CHECK(normalize(r, raw) == e);
    }
    RingPtr other = jordan_plane(q);
    CHECK_THROWS_AS(RingElement::one(r) + RingElement::one(other), RingMismatch);
}

TEST_CASE("ring laws hold on random samples") {
    const Field f5 = Field::prime(5);
    RingPtr r = jordan_plane(f5);
    std::mt19937 rng(21);
    for (int rep = 0; rep < 30; ++rep) {
        RingElement a = rnd_element(r, rng);
        RingElement b = rnd_element(r, rng);
        RingElement c = rnd_element(r, rng);
        CHECK(a * (b * c) == (a * b) * c);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * RingElement::one(r) == a);
        CHECK(RingElement::one(r) * a == a);
    }
}

TEST_CASE("order-violating presentations are rejected") {
    const Field q = Field::rationals();
    RewriteRule bad;
    bad.lhs = Word{{0, 1}};
    bad.rhs = {{Scalar::one(q), Word{{1, 0}}}}; // x1 x2 -> x2 x1 is order-increasing
    CHECK_THROWS_AS(PresentedRing::make(q, {"x1", "x2"}, {bad}), Error);
    // and duplicate left-hand sides as well
    RewriteRule a;
    a.lhs = Word{{1, 0}};
    a.rhs = {{Scalar::one(q), Word{{0, 1}}}};
    RewriteRule b = a;
    b.rhs = {};
    CHECK_THROWS_AS(PresentedRing::make(q, {"x1", "x2"}, {a, b}), Error);
}

TEST_CASE("non-terminating diagnostics via the unvalidated escape hatch") {
    const Field q = Field::rationals();
    RewriteRule loop;
    loop.lhs = Word{{0, 1}};
    loop.rhs = {{Scalar::one(q), Word{{0, 1, 0, 1}}}}; // grows forever
    RingPtr r = PresentedRing::make_unvalidated(q, {"x1", "x2"}, {loop}, 1000);
    CHECK_THROWS_AS(normalize(r, {{Scalar::one(q), Word{{0, 1}}}}), NonTerminating);
}

TEST_CASE("local confluence of the catalog rings") {
    const Field q = Field::rationals();
    CHECK(check_local_confluence(jordan_plane(q), 4).empty());
    CHECK(check_local_confluence(quantum_plane(q), 4).empty());
    // commutative two-generator ring
    RewriteRule comm;
    comm.lhs = Word{{1, 0}};
    comm.rhs = {{Scalar::one(q), Word{{0, 1}}}};
    CHECK(check_local_confluence(PresentedRing::make(q, {"x1", "x2"}, {comm}), 4).empty());
}

TEST_CASE("a genuinely non-confluent system is detected") {
    const Field q = Field::rationals();
    // x1 x2 -> 1 and x2 x1 -> 0: the overlap x1 x2 x1 reduces to x1 one way
    // and to 0 the other.
    RewriteRule r1;
    r1.lhs = Word{{0, 1}};
    r1.rhs = {{Scalar::one(q), Word{}}};
    RewriteRule r2;
    r2.lhs = Word{{1, 0}};
    r2.rhs = {};
    RingPtr r = PresentedRing::make(q, {"x1", "x2"}, {r1, r2});
    CHECK_FALSE(check_local_confluence(r, 4).empty());
}

TEST_CASE("degenerate presentations") {
    const Field q = Field::rationals();
    SUBCASE("the free algebra: every word is already normal") {
        RingPtr free2 = PresentedRing::make(q, {"x1", "x2"}, {});
        RingElement w = normalize(free2, {{Scalar::one(q), Word{{1, 0, 1}}}});
        CHECK(w == RingElement::monomial(free2, Word{{1, 0, 1}}, Scalar::one(q)));
        CHECK(check_local_confluence(free2, 4).empty());
    }
    SUBCASE("the empty generator list is the ground field") {
        RingPtr k = PresentedRing::make(q, {}, {});
        CHECK(ring_basis(k, 3).size() == 1);
        RingElement two = RingElement::scalar(k, Scalar::of(q, 2));
        CHECK(two * two == RingElement::scalar(k, Scalar::of(q, 4)));
    }
}

TEST_CASE("ring basis enumeration") {
    const Field q = Field::rationals();
    RingPtr r = jordan_plane(q);
    std::vector<Word> b2 = ring_basis(r, 2);
    // 1, x1, x2, x1^2, x1 x2, x2^2
    REQUIRE(b2.size() == 6);
    CHECK(b2[0].is_unit());
    CHECK(b2[3] == Word{{0, 0}});
    CHECK(b2[4] == Word{{0, 1}});
    CHECK(b2[5] == Word{{1, 1}});

    RingPtr free2 = PresentedRing::make(q, {"x1", "x2"}, {});
    CHECK(ring_basis(free2, 2).size() == 7);
    CHECK(ring_basis(free2, 0).size() == 1);
}
