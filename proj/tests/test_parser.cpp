#include <doctest.h>

#include "dore/spec_parser.hpp"

using namespace dore;

namespace {

const char* h_spec = R"(# trimmed anti-diagonal example
field Q
ring R gens x1 x2 order x1 < x2
rel x2*x1 = x1*x2 + x1^2
map sigma12 x1 = x1
map sigma12 x2 = x1 + x2
map sigma21 x1 = x1
map sigma21 x2 = x1 + x2
param p12 = -1
param p11 = 0
extension B = double(R, sigma, zero, P, tau)
dcv q target B q1 = 2*y1 q2 = 2*y2 source(p12 = -1, p11 = 0, tau0 = 0, tau1 = 0, tau2 = 0, sigma = sigma, delta = zero)
check extension B --max-degree 3
check dcv q --max-degree 3
)";

} // namespace

TEST_CASE("a full spec resolves to one ring, one extension and one candidate") {
    SpecDocument doc = parse_spec(h_spec);
    CHECK(doc.field.is_rational());
    CHECK(doc.ring_name == "R");
    REQUIRE(doc.ring);
    CHECK(doc.ring->generator_count() == 2);
    CHECK(doc.ring->rules().size() == 1);
    REQUIRE(doc.extensions.size() == 1);
    CHECK(doc.extensions[0].name == "B");
    CHECK(doc.extensions[0].algebra->p12() == Scalar::of(doc.field, -1));
    CHECK(doc.extensions[0].algebra->trimmed());
    REQUIRE(doc.dcvs.size() == 1);
    CHECK(doc.dcvs[0].q1 == ExtElement::y1(doc.extensions[0].algebra).scale(Scalar::of(doc.field, 2)));
    REQUIRE(doc.checks.size() == 2);
    CHECK(doc.checks[1].kind == "dcv");
    CHECK(doc.checks[1].max_degree == 3);
}

TEST_CASE("empty input fails at 1:1 expecting the field header") {
    try {
        parse_spec("");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line == 1);
        CHECK(e.column == 1);
        CHECK(std::string(e.what()).find("field") != std::string::npos);
    }
}

TEST_CASE("unknown generators are resolution errors") {
    const char* bad = R"(field Q
ring R gens x1 x2
map sigma11 x3 = 0
)";
    CHECK_THROWS_AS(parse_spec(bad), ResolutionError);
}

TEST_CASE("bad map component indices are arity errors") {
    const char* bad = R"(field Q
ring R gens x1 x2
map sigma13 x1 = 0
)";
    CHECK_THROWS_AS(parse_spec(bad), ArityError);
}

TEST_CASE("syntax errors carry position and expectation") {
    const char* bad = R"(field Q
ring R gens x1 x2
rel x2*x1 =
)";
    try {
        parse_spec(bad);
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("expected") != std::string::npos);
    }
}

TEST_CASE("prime fields, fractions and residues in scalars") {
    const char* f5 = R"(field F 5
ring R gens x1 x2
rel x2*x1 = -x1*x2
param p12 = 1/2
)";
    SpecDocument doc = parse_spec(f5);
    CHECK(doc.field.characteristic == 5);
    // 1/2 = 1 * inv(2) = 3 in F5
    CHECK(*doc.p12 == Scalar::of(doc.field, 3));
}

TEST_CASE("render-parse canonicalisation is idempotent") {
    SpecDocument doc = parse_spec(h_spec);
    std::string once = render_spec(doc);
    SpecDocument redoc = parse_spec(once);
    std::string twice = render_spec(redoc);
    CHECK(once == twice);
    // and the canonical form still resolves to the same objects
    CHECK(redoc.extensions.size() == doc.extensions.size());
    CHECK(redoc.dcvs.size() == doc.dcvs.size());
    CHECK(redoc.dcvs[0].q1.str() == doc.dcvs[0].q1.str());
}

TEST_CASE("search declarations round-trip") {
    const char* s = R"(field F 5
ring R gens x1 x2
rel x2*x1 = x1*x2 + x1^2
map sigma12 x1 = x1
map sigma12 x2 = x1 + x2
map sigma21 x1 = x1
map sigma21 x2 = x1 + x2
param p12 = -1
extension B = double(R, sigma, zero, P, tau)
search s target B degree 1 pool 0 1 2 3 4 shape q1 = y1 shape q2 = y2 source(p12 = -1, p11 = 0, tau0 = 0, tau1 = 0, tau2 = 0, sigma = sigma, delta = zero)
check search s
)";
    SpecDocument doc = parse_spec(s);
    REQUIRE(doc.searches.size() == 1);
    CHECK(doc.searches[0].pool.size() == 5);
    REQUIRE(doc.searches[0].q1_monomials.size() == 1);
    CHECK(doc.searches[0].q1_monomials[0] == ExpPair{1, 0});
    std::string once = render_spec(doc);
    CHECK(render_spec(parse_spec(once)) == once);
}

TEST_CASE("solve markers parse into unset source slots") {
    const char* s = R"(field Q
ring R gens x1 x2
rel x2*x1 = x1*x2
map sigma11 x1 = x1
map sigma11 x2 = x2
map sigma22 x1 = x1
map sigma22 x2 = x2
param p12 = 1
extension B = double(R, sigma, zero, P, tau)
dcv q q1 = y1 q2 = y2 source(p12 = solve, p11 = solve, tau0 = solve, tau1 = solve, tau2 = solve, sigma = sigma, delta = zero)
)";
    SpecDocument doc = parse_spec(s);
    REQUIRE(doc.dcvs.size() == 1);
    CHECK_FALSE(doc.dcvs[0].source.p12.has_value());
    CHECK_FALSE(doc.dcvs[0].source.tau1.has_value());
    std::string once = render_spec(doc);
    CHECK(once.find("p12 = solve") != std::string::npos);
    CHECK(render_spec(parse_spec(once)) == once);
}
