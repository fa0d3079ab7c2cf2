#include <doctest.h>

#include <random>

#include "dore/catalog.hpp"
#include "dore/extension.hpp"

using namespace dore;

namespace {

AlgebraPtr fixture_algebra(const std::string& name, std::size_t instance = 0) {
    return get_fixture(name).instances.at(instance).algebra;
}

ExtElement rnd_ext(const AlgebraPtr& alg, std::mt19937& rng) {
    ExtElement e = ExtElement::zero(alg);
    const std::vector<Word> basis = ring_basis(alg->ring(), 1);
    for (int t = 0; t < 3; ++t) {
        long c = static_cast<long>(rng() % 7) - 3;
        RingElement coeff =
            RingElement::monomial(alg->ring(), basis[rng() % basis.size()], Scalar::of(alg->field(), c));
        e = e + ExtElement::monomial(alg, coeff, rng() % 3, rng() % 3);
    }
    return e;
}

} // namespace

TEST_CASE("defining relations of the trimmed anti-diagonal example") {
    AlgebraPtr h = fixture_algebra("H"); // f = 1
    const RingPtr& r = h->ring();
    ExtElement y1 = ExtElement::y1(h), y2 = ExtElement::y2(h);
    ExtElement x1 = ExtElement::from_ring(h, RingElement::generator(r, 0));

    CHECK(ext_mul(y2, y1) == -ext_mul(y1, y2));
    CHECK(ext_mul(y1, x1) == ext_mul(x1, y2));
    CHECK(ext_mul(ExtElement::one(h), y2) == y2);

    // (y2 y1) x1 = y2 (y1 x1), both sides in normal form x1 y1 y2
    ExtElement lhs = ext_mul(ext_mul(y2, y1), x1);
    ExtElement rhs = ext_mul(y2, ext_mul(y1, x1));
    CHECK(lhs == rhs);
    ExtElement expected = ExtElement::monomial(h, RingElement::generator(r, 0), 1, 1);
    CHECK(lhs == expected);
}

TEST_CASE("left normal form uniqueness and bilinearity") {
    AlgebraPtr h = fixture_algebra("H", 1); // f = 2
    std::mt19937 rng(31);
    const Scalar c = Scalar::rational(2, 3);
    for (int rep = 0; rep < 15; ++rep) {
        ExtElement a = rnd_ext(h, rng);
        ExtElement b = rnd_ext(h, rng);
        ExtElement d = rnd_ext(h, rng);
        CHECK(ext_mul(a, b + d) == ext_mul(a, b) + ext_mul(a, d));
        CHECK(ext_mul(a + b, d) == ext_mul(a, d) + ext_mul(b, d));
        CHECK(ext_mul(a.scale(c), b) == ext_mul(a, b).scale(c));
        CHECK(ext_mul(a, b.scale(c)) == ext_mul(a, b).scale(c));
        // equality iff identical coefficient maps
        CHECK(((a - b).is_zero()) == (a == b));
    }
}

TEST_CASE("compatibility and associativity pass for the catalog algebras") {
    for (const char* name : {"H", "subcase-4.1.1", "D", "E", "N"}) {
        AlgebraPtr alg = fixture_algebra(name);
        CAPTURE(name);
        CompatibilityReport comp = check_compatibility(alg, 3);
        CHECK(comp.pass);
        AssociativityReport assoc = check_associativity(alg, 2);
        CHECK(assoc.pass);
    }
}

TEST_CASE("the commuting scalar-identity case passes trivially") {
    AlgebraPtr alg = fixture_algebra("scalar-identity", 3); // P = {1, 0}, tau = 0
    CHECK(alg->trimmed());
    CHECK(check_compatibility(alg, 3).pass);
    CHECK(check_associativity(alg, 2).pass);
}

TEST_CASE("perturbing tau0 breaks the constant-coefficient identity and associativity") {
    AlgebraPtr h = fixture_algebra("H");
    AlgebraPtr bad = DoubleOreAlgebra::make(h->ring(), h->sigma(), h->delta(), h->p12(), h->p11(),
                                            RingElement::one(h->ring()), h->tau1(), h->tau2());
    CompatibilityReport comp = check_compatibility(bad, 3);
    CHECK_FALSE(comp.pass);
    bool later_relations_failed = false;
    for (const RelationCheck& rc : comp.relations)
        if (!rc.pass && (rc.name == "coeff-y1" || rc.name == "coeff-y2" || rc.name == "coeff-1"))
            later_relations_failed = true;
    CHECK(later_relations_failed);
    CHECK_FALSE(check_associativity(bad, 3).pass);
}

TEST_CASE("basis change case 1 rescales the data") {
    // p12 = 1, p11 = 2 over the rationals
    AlgebraPtr alg = fixture_algebra("scalar-identity", 0);
    REQUIRE(alg->p12() == Scalar::of(alg->field(), 1));
    REQUIRE(alg->p11() == Scalar::of(alg->field(), 2));
    ChangeBasisResult cb = change_basis(alg);
    CHECK(cb.case_id == 1);
    CHECK(cb.algebra->p12() == Scalar::of(alg->field(), 1));
    CHECK(cb.algebra->p11() == Scalar::of(alg->field(), 1));
    // tau -> {2 tau0, tau1, 2 tau2}
    CHECK(cb.algebra->tau0() == alg->tau0().scale(Scalar::of(alg->field(), 2)));
    CHECK(cb.algebra->tau1() == alg->tau1());
    CHECK(cb.algebra->tau2() == alg->tau2().scale(Scalar::of(alg->field(), 2)));
    CHECK(cb.new_y1 == ExtElement::y1(alg).scale(Scalar::of(alg->field(), 2)));
    CHECK(check_compatibility(cb.algebra, 3).pass);
}

TEST_CASE("basis change case 2 shifts the second variable") {
    AlgebraPtr alg = fixture_algebra("scalar-identity", 1); // P = {2, 1}
    ChangeBasisResult cb = change_basis(alg);
    CHECK(cb.case_id == 2);
    CHECK(cb.shift == Scalar::of(alg->field(), 1)); // q = p11 / (p12 - 1) = 1
    CHECK(cb.algebra->p11().is_zero());
    // tau1 -> tau1 - q tau2 = 2 - 3 = -1
    CHECK(cb.algebra->tau1() == RingElement::scalar(alg->ring(), Scalar::of(alg->field(), -1)));
    CHECK(cb.new_y2 == ExtElement::y2(alg) + ExtElement::y1(alg));
    CHECK(check_compatibility(cb.algebra, 3).pass);
}

TEST_CASE("basis change with p11 = 0 and p12 != 1 is the identity transform") {
    AlgebraPtr h = fixture_algebra("H"); // p12 = -1, p11 = 0
    ChangeBasisResult cb = change_basis(h);
    CHECK(cb.case_id == 2);
    CHECK(cb.shift.is_zero());
    CHECK(cb.new_y1 == ExtElement::y1(h));
    CHECK(cb.new_y2 == ExtElement::y2(h));
    CHECK(cb.algebra->p12() == h->p12());
}

TEST_CASE("basis change is not applicable when p11 = 0 and p12 = 1") {
    AlgebraPtr alg = fixture_algebra("scalar-identity", 3);
    CHECK_THROWS_AS(change_basis(alg), NotApplicable);
}

TEST_CASE("associated graded algebra") {
    SUBCASE("trimmed input with p11 = 0 is fixed") {
        AlgebraPtr h = fixture_algebra("H");
        AlgebraPtr g = associated_graded(h);
        CHECK(g->trimmed());
        CHECK(g->p12() == h->p12());
        CHECK(g->p11().is_zero());
        for (std::size_t gi = 0; gi < h->ring()->generator_count(); ++gi)
            for (int i = 1; i <= 2; ++i)
                for (int j = 1; j <= 2; ++j)
                    CHECK(g->sigma()->image(i, j, gi) == h->sigma()->image(i, j, gi));
    }
    SUBCASE("p12 = 1 is rejected") {
        CHECK_THROWS_AS(associated_graded(fixture_algebra("subcase-4.1.1")), NotApplicable);
    }
    SUBCASE("q-shift applied to the scalar-identity data") {
        AlgebraPtr alg = fixture_algebra("scalar-identity", 1); // P = {2, 1}
        AlgebraPtr g = associated_graded(alg);
        CHECK(g->p12() == Scalar::of(alg->field(), 2));
        CHECK(g->p11().is_zero());
        CHECK(g->trimmed());
        CHECK(check_compatibility(g, 3).pass);
    }
}

TEST_CASE("bounded right-basis certificate") {
    SUBCASE("invertible reorder passes") {
        RightBasisReport rep = check_right_basis(fixture_algebra("H"), 2);
        CHECK(rep.pass);
        CHECK(rep.span_equality_degree1);
        CHECK(rep.certified_double);
    }
    SUBCASE("degree zero always passes") {
        RightBasisReport rep = check_right_basis(fixture_algebra("table2-target"), 0);
        CHECK(rep.pass);
    }
    SUBCASE("p12 = 0 with invertible sigma fails exactly at degree 2") {
        RightBasisReport rep = check_right_basis(fixture_algebra("scalar-identity", 4), 2);
        CHECK_FALSE(rep.pass);
        REQUIRE(rep.degrees.size() == 3);
        CHECK(rep.degrees[0].pass);
        CHECK(rep.degrees[1].pass);
        CHECK_FALSE(rep.degrees[2].pass);
        CHECK_FALSE(rep.certified_double);
    }
    SUBCASE("p12 = 0 with singular sigma fails already at degree 1") {
        RightBasisReport rep = check_right_basis(fixture_algebra("table2-target"), 1);
        CHECK_FALSE(rep.pass);
        CHECK_FALSE(rep.certified_double);
    }
}

TEST_CASE("compatibility and associativity verdicts agree under random data perturbations") {
    std::mt19937 rng(2024);
    const std::vector<std::string> names = {"H", "subcase-4.1.1", "D", "E"};
    for (const std::string& name : names) {
        AlgebraPtr base = fixture_algebra(name);
        const Field f = base->field();
        const RingPtr& r = base->ring();
        for (int rep = 0; rep < 5; ++rep) {
            Scalar p12 = base->p12(), p11 = base->p11();
            RingElement t0 = base->tau0(), t1 = base->tau1(), t2 = base->tau2();
            const int slot = static_cast<int>(rng() % 5);
            const Scalar bump = Scalar::of(f, static_cast<long>(rng() % 3) + 1);
            switch (slot) {
            case 0: p12 = p12 + bump; break;
            case 1: p11 = p11 + bump; break;
            case 2: t0 = t0 + RingElement::scalar(r, bump); break;
            case 3: t1 = t1 + RingElement::generator(r, 0).scale(bump); break;
            case 4: t2 = t2 + RingElement::generator(r, 1).scale(bump); break;
            }
            AlgebraPtr mutant = DoubleOreAlgebra::make_unvalidated(r, base->sigma(), base->delta(),
                                                                   p12, p11, t0, t1, t2);
            const bool comp = check_compatibility(mutant, 2).pass;
            const bool assoc = check_associativity(mutant, 2).pass;
            CAPTURE(name);
            CAPTURE(slot);
            CHECK(comp == assoc);
        }
    }
}
