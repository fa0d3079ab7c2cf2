#ifndef DORE_SCALAR_HPP
#define DORE_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <vector>

#include "dore/error.hpp"

namespace dore {

using BigInt = boost::multiprecision::cpp_int;

// Ground field descriptor: characteristic 0 means exact rationals,
// characteristic p > 0 means the prime field F_p.
struct Field {
    BigInt characteristic{0};

    bool is_rational() const { return characteristic == 0; }
    bool operator==(const Field&) const = default;
    std::string str() const;

    static Field rationals() { return Field{0}; }
    static Field prime(const BigInt& p);
};

// Exact field element. Rational values are kept fully reduced with a
// positive denominator; prime-field residues satisfy 0 <= r < p. Values
// from different fields never mix silently.
class Scalar {
public:
    Scalar() = default; // rational zero

    static Scalar zero(const Field& f);
    static Scalar one(const Field& f);
    static Scalar of(const Field& f, const BigInt& n);
    static Scalar of(const Field& f, long n) { return of(f, BigInt(n)); }
    static Scalar rational(const BigInt& num, const BigInt& den);

    const Field& field() const { return field_; }
    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inv() const;
    Scalar pow(unsigned long e) const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    // Total order usable as a map key; compares field, then value.
    bool operator<(const Scalar& o) const;

    // "n" or "n/d" for rationals, "r mod p" for prime fields.
    std::string str() const;

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

private:
    Field field_{};
    BigInt num_{0};
    BigInt den_{1};

    void reduce();
    void check_same_field(const Scalar& o) const;
};

// Dense exact matrix, row-major. Only used for the small linear systems
// behind bounded span checks and source-parameter completion.
class ScalarMatrix {
public:
    ScalarMatrix(std::size_t rows, std::size_t cols, const Field& f);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    static ScalarMatrix identity(std::size_t n, const Field& f);

private:
    std::size_t rows_;
    std::size_t cols_;
    Field field_;
    std::vector<Scalar> data_;
};

struct LinearSolution {
    bool consistent = false;
    std::size_t rank = 0;
    // One exact solution with every free variable pinned to zero; free
    // variables are the non-pivot columns under left-to-right elimination,
    // so earlier columns are preferred as pivots. Empty if inconsistent.
    ScalarMatrix solution;
};

// Exact Gaussian elimination. rhs may have several columns; the same
// elimination serves them all.
LinearSolution solve_linear(const ScalarMatrix& m, const ScalarMatrix& rhs);

} // namespace dore

#endif
