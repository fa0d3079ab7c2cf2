#include <doctest.h>

#include <random>

#include "dore/scalar.hpp"

using namespace dore;

TEST_CASE("rational arithmetic is exact and canonical") {
    const Field q = Field::rationals();
    CHECK(Scalar::rational(1, 2) + Scalar::rational(1, 3) == Scalar::rational(5, 6));
    CHECK(Scalar::rational(2, 4) == Scalar::rational(1, 2));
    CHECK(Scalar::rational(1, -2) == Scalar::rational(-1, 2));
    CHECK((Scalar::of(q, 2) * Scalar::of(q, 3)).str() == "6");
    CHECK(Scalar::rational(5, 6).str() == "5/6");
    CHECK(Scalar::rational(-5, 6).str() == "-5/6");
    CHECK_THROWS_AS(Scalar::rational(1, 0), DivisionByZero);
}

TEST_CASE("prime field arithmetic") {
    const Field f5 = Field::prime(5);
    CHECK(Scalar::of(f5, 2).inv() == Scalar::of(f5, 3));
    CHECK(Scalar::of(f5, 2) * Scalar::of(f5, 3) == Scalar::of(f5, 1));
    CHECK(Scalar::of(f5, -1) == Scalar::of(f5, 4));
    CHECK(Scalar::of(f5, 7).str() == "2 mod 5");
    CHECK_THROWS_AS(Scalar::zero(f5).inv(), DivisionByZero);
}

TEST_CASE("fields never mix silently") {
    CHECK_THROWS_AS(Scalar::of(Field::prime(5), 1) + Scalar::of(Field::prime(7), 1), FieldMismatch);
    CHECK_THROWS_AS(Scalar::of(Field::rationals(), 1) * Scalar::of(Field::prime(5), 1),
                    FieldMismatch);
}

TEST_CASE("a * inv(a) = 1 on random nonzero values in both fields") {
    std::mt19937 rng(12345);
    const Field q = Field::rationals();
    const Field f13 = Field::prime(13);
    for (int k = 0; k < 200; ++k) {
        long n = static_cast<long>(rng() % 2001) - 1000;
        long d = static_cast<long>(rng() % 999) + 1;
        if (n == 0) n = 7;
        Scalar a = Scalar::rational(n, d);
        CHECK(a * a.inv() == Scalar::one(q));
        Scalar b = Scalar::of(f13, static_cast<long>(rng() % 12) + 1);
        CHECK(b * b.inv() == Scalar::one(f13));
    }
}

TEST_CASE("solve_linear on small systems") {
    const Field q = Field::rationals();

    SUBCASE("identity system") {
        ScalarMatrix m = ScalarMatrix::identity(2, q);
        ScalarMatrix rhs(2, 1, q);
        rhs.at(0, 0) = Scalar::of(q, 1);
        LinearSolution s = solve_linear(m, rhs);
        CHECK(s.consistent);
        CHECK(s.rank == 2);
        CHECK(s.solution.at(0, 0) == Scalar::of(q, 1));
        CHECK(s.solution.at(1, 0) == Scalar::of(q, 0));
    }

    SUBCASE("inconsistent zero system") {
        ScalarMatrix m(2, 2, q);
        ScalarMatrix rhs(2, 1, q);
        rhs.at(0, 0) = Scalar::of(q, 1);
        LinearSolution s = solve_linear(m, rhs);
        CHECK_FALSE(s.consistent);
    }

    SUBCASE("dependent rows pick the canonical solution") {
        ScalarMatrix m(2, 2, q);
        m.at(0, 0) = Scalar::of(q, 1);
        m.at(0, 1) = Scalar::of(q, 1);
        m.at(1, 0) = Scalar::of(q, 2);
        m.at(1, 1) = Scalar::of(q, 2);
        ScalarMatrix rhs(2, 1, q);
        rhs.at(0, 0) = Scalar::of(q, 3);
        rhs.at(1, 0) = Scalar::of(q, 6);
        LinearSolution s = solve_linear(m, rhs);
        CHECK(s.consistent);
        CHECK(s.rank == 1);
        CHECK(s.solution.at(0, 0) == Scalar::of(q, 3)); // free variable pinned to zero
        CHECK(s.solution.at(1, 0) == Scalar::of(q, 0));
    }
}

TEST_CASE("solve_linear recovers the preimage of a random invertible matrix") {
    std::mt19937 rng(99);
    const Field f7 = Field::prime(7);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 4;
        ScalarMatrix m(n, n, f7);
        // random until invertible
        while (true) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    m.at(i, j) = Scalar::of(f7, static_cast<long>(rng() % 7));
            ScalarMatrix probe(n, 0, f7);
            if (solve_linear(m, probe).rank == n) break;
        }
        ScalarMatrix v(n, 1, f7);
        for (std::size_t i = 0; i < n; ++i) v.at(i, 0) = Scalar::of(f7, static_cast<long>(rng() % 7));
        ScalarMatrix rhs(n, 1, f7);
        for (std::size_t i = 0; i < n; ++i) {
            Scalar acc = Scalar::zero(f7);
            for (std::size_t j = 0; j < n; ++j) acc = acc + m.at(i, j) * v.at(j, 0);
            rhs.at(i, 0) = acc;
        }
        LinearSolution s = solve_linear(m, rhs);
        REQUIRE(s.consistent);
        for (std::size_t i = 0; i < n; ++i) CHECK(s.solution.at(i, 0) == v.at(i, 0));
    }
}
