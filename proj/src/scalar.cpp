#include "dore/scalar.hpp"

#include <utility>

namespace dore {

std::string Field::str() const {
    if (is_rational()) return "Q";
    return "F" + characteristic.str();
}

Field Field::prime(const BigInt& p) {
    if (p < 2) throw Error("prime field modulus must be >= 2, got " + p.str());
    return Field{p};
}

static BigInt mod_pos(const BigInt& a, const BigInt& p) {
    BigInt r = a % p;
    if (r < 0) r += p;
    return r;
}

Scalar Scalar::zero(const Field& f) {
    Scalar s;
    s.field_ = f;
    return s;
}

Scalar Scalar::one(const Field& f) { return of(f, BigInt(1)); }

Scalar Scalar::of(const Field& f, const BigInt& n) {
    Scalar s;
    s.field_ = f;
    s.num_ = f.is_rational() ? n : mod_pos(n, f.characteristic);
    return s;
}

Scalar Scalar::rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    Scalar s;
    s.num_ = num;
    s.den_ = den;
    s.reduce();
    return s;
}

void Scalar::reduce() {
    if (!field_.is_rational()) {
        num_ = mod_pos(num_, field_.characteristic);
        den_ = 1;
        return;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

void Scalar::check_same_field(const Scalar& o) const {
    if (!(field_ == o.field_))
        throw FieldMismatch("mixed scalars from " + field_.str() + " and " + o.field_.str());
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(o);
    Scalar r;
    r.field_ = field_;
    r.num_ = num_ * o.den_ + o.num_ * den_;
    r.den_ = den_ * o.den_;
    r.reduce();
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(o);
    Scalar r;
    r.field_ = field_;
    r.num_ = num_ * o.num_;
    r.den_ = den_ * o.den_;
    r.reduce();
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::operator-() const {
    Scalar r = *this;
    if (r.field_.is_rational()) {
        r.num_ = -r.num_;
    } else {
        r.num_ = mod_pos(-r.num_, r.field_.characteristic);
    }
    return r;
}

// Extended Euclid, returns x with a*x = gcd(a, m) (mod m).
static BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    BigInt old_r = a, r = m;
    BigInt old_s = 1, s = 0;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt t = old_r - q * r;
        old_r = std::exchange(r, t);
        t = old_s - q * s;
        old_s = std::exchange(s, t);
    }
    if (old_r != 1 && old_r != -1)
        throw DivisionByZero("residue not invertible mod " + m.str());
    if (old_r == -1) old_s = -old_s;
    return mod_pos(old_s, m);
}

Scalar Scalar::inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    Scalar r;
    r.field_ = field_;
    if (field_.is_rational()) {
        r.num_ = den_;
        r.den_ = num_;
        r.reduce();
    } else {
        r.num_ = mod_inverse(num_, field_.characteristic);
    }
    return r;
}

Scalar Scalar::pow(unsigned long e) const {
    Scalar acc = Scalar::one(field_);
    Scalar base = *this;
    while (e > 0) {
        if (e & 1UL) acc = acc * base;
        base = base * base;
        e >>= 1UL;
    }
    return acc;
}

bool Scalar::operator==(const Scalar& o) const {
    return field_ == o.field_ && num_ == o.num_ && den_ == o.den_;
}

bool Scalar::operator<(const Scalar& o) const {
    if (field_.characteristic != o.field_.characteristic)
        return field_.characteristic < o.field_.characteristic;
    // cross-multiplied comparison; exact for both variants (den = 1 in F_p)
    return num_ * o.den_ < o.num_ * den_;
}

std::string Scalar::str() const {
    if (field_.is_rational()) {
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }
    return num_.str() + " mod " + field_.characteristic.str();
}

ScalarMatrix::ScalarMatrix(std::size_t rows, std::size_t cols, const Field& f)
    : rows_(rows), cols_(cols), field_(f), data_(rows * cols, Scalar::zero(f)) {}

ScalarMatrix ScalarMatrix::identity(std::size_t n, const Field& f) {
    ScalarMatrix m(n, n, f);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

LinearSolution solve_linear(const ScalarMatrix& m, const ScalarMatrix& rhs) {
    if (m.rows() != rhs.rows())
        throw Error("solve_linear: matrix has " + std::to_string(m.rows()) + " rows, rhs has " +
                    std::to_string(rhs.rows()));
    if (!(m.field() == rhs.field()))
        throw FieldMismatch("solve_linear: matrix and rhs over different fields");

    const Field f = m.field();
    const std::size_t nr = m.rows(), nc = m.cols(), nb = rhs.cols();

    // Augmented working copy.
    ScalarMatrix a(nr, nc + nb, f);
    for (std::size_t r = 0; r < nr; ++r) {
        for (std::size_t c = 0; c < nc; ++c) a.at(r, c) = m.at(r, c);
        for (std::size_t c = 0; c < nb; ++c) a.at(r, nc + c) = rhs.at(r, c);
    }

    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < nc && row < nr; ++col) {
        std::size_t pr = row;
        while (pr < nr && a.at(pr, col).is_zero()) ++pr;
        if (pr == nr) continue;
        if (pr != row)
            for (std::size_t c = col; c < nc + nb; ++c) std::swap(a.at(pr, c), a.at(row, c));
        const Scalar piv_inv = a.at(row, col).inv();
        for (std::size_t c = col; c < nc + nb; ++c) a.at(row, c) = a.at(row, c) * piv_inv;
        for (std::size_t r = 0; r < nr; ++r) {
            if (r == row || a.at(r, col).is_zero()) continue;
            const Scalar factor = a.at(r, col);
            for (std::size_t c = col; c < nc + nb; ++c)
                a.at(r, c) = a.at(r, c) - factor * a.at(row, c);
        }
        pivot_col.push_back(col);
        ++row;
    }

    LinearSolution out{false, pivot_col.size(), ScalarMatrix(nc, nb, f)};
    for (std::size_t r = row; r < nr; ++r)
        for (std::size_t c = 0; c < nb; ++c)
            if (!a.at(r, nc + c).is_zero()) return LinearSolution{false, pivot_col.size(), ScalarMatrix(0, 0, f)};

    out.consistent = true;
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
        for (std::size_t c = 0; c < nb; ++c) out.solution.at(pivot_col[i], c) = a.at(i, nc + c);
    return out;
}

} // namespace dore
