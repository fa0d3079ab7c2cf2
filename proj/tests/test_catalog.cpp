#include <doctest.h>

#include "dore/catalog.hpp"

using namespace dore;

TEST_CASE("fixture lookups") {
    CHECK_THROWS_AS(get_fixture("no-such"), UnknownFixture);
    for (const std::string& name : fixture_names()) {
        CAPTURE(name);
        Fixture fx = get_fixture(name);
        CHECK_FALSE(fx.instances.empty());
    }
}

TEST_CASE("parameter constraints are enforced at construction") {
    Fixture n = get_fixture("N");
    CHECK(n.instances.size() == 3);
    // f = g = 1 violates f^2 != g^2 and is rejected before any algebra exists
    CHECK_THROWS_AS(build_algebra_n(Field::rationals(), 1, 1), PreconditionFailure);
    CHECK_THROWS_AS(build_algebra_h(Field::rationals(), 0), PreconditionFailure);
    CHECK(build_algebra_n(Field::rationals(), 1, 2) != nullptr);
}

TEST_CASE("verify_all matches every expected verdict") {
    VerifyOutcome v = verify_all(2);
    CHECK(v.mismatches == 0);
    CHECK(v.pass());
    CHECK(v.fixtures == fixture_names().size());
    CHECK(v.checks > 0);
}

TEST_CASE("verify_all at degree zero is vacuous but green") {
    VerifyOutcome v = verify_all(0);
    // degree-zero checks trivially pass where expected to pass; negative
    // expectations that rely on degree-0 behaviour may mismatch, so only
    // demand the run completes deterministically
    VerifyOutcome v2 = verify_all(0);
    CHECK(v.report.render() == v2.report.render());
}

TEST_CASE("a corrupted fixture produces exactly its own mismatches") {
    Fixture bad = corrupted_h_fixture();
    VerifyOutcome clean = verify_all(2);
    VerifyOutcome with_bad = verify_all(2, 1, {bad});
    CHECK(clean.mismatches == 0);
    CHECK(with_bad.mismatches > 0);
    CHECK(with_bad.fixtures == clean.fixtures + 1);
    // corruption breaks compatibility and associativity of that one instance
    CHECK(with_bad.mismatches == 2);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    VerifyOutcome a = verify_all(2, 1);
    VerifyOutcome b = verify_all(2, 4);
    VerifyOutcome c = verify_all(2, 1);
    CHECK(a.report.render() == b.report.render());
    CHECK(a.report.render() == c.report.render());
}
