#ifndef DORE_EXTENSION_HPP
#define DORE_EXTENSION_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dore/maps.hpp"

namespace dore {

class DoubleOreAlgebra;
using AlgebraPtr = std::shared_ptr<const DoubleOreAlgebra>;

using ExpPair = std::pair<unsigned, unsigned>;

// The defining datum of a right double Ore extension B = R_P[y1, y2; sigma,
// delta, tau]: coefficient ring, the matrix homomorphism sigma, the
// sigma-derivation column delta, the scalar parameters p12 and p11, and the
// ring tail (tau0, tau1, tau2). Immutable after construction.
class DoubleOreAlgebra : public std::enable_shared_from_this<DoubleOreAlgebra> {
public:
    // Validates sigma and delta against the ring relations (bounded
    // well-definedness certificate at wd_degree); throws
    // WellDefinednessFailure on violation.
    static AlgebraPtr make(RingPtr ring, SigmaPtr sigma, DeltaPtr delta, Scalar p12, Scalar p11,
                           RingElement tau0, RingElement tau1, RingElement tau2,
                           std::size_t wd_degree = 3);
    // Skips validation; used for negative controls and perturbation sweeps.
    static AlgebraPtr make_unvalidated(RingPtr ring, SigmaPtr sigma, DeltaPtr delta, Scalar p12,
                                       Scalar p11, RingElement tau0, RingElement tau1,
                                       RingElement tau2);

    const RingPtr& ring() const { return ring_; }
    const SigmaPtr& sigma() const { return sigma_; }
    const DeltaPtr& delta() const { return delta_; }
    const Scalar& p12() const { return p12_; }
    const Scalar& p11() const { return p11_; }
    const RingElement& tau0() const { return tau0_; }
    const RingElement& tau1() const { return tau1_; }
    const RingElement& tau2() const { return tau2_; }
    const Field& field() const { return ring_->field(); }

    // delta = 0 and tau = {0, 0, 0}.
    bool trimmed() const { return trimmed_; }
    // p12 != 0 (necessary for the two-sided basis property).
    bool double_candidate() const { return double_candidate_; }

    std::size_t step_cap() const { return step_cap_; }

    using TermMap = std::map<ExpPair, RingElement>;
    // Normal form of y2 y1^c, memoized; the backbone of multiplication.
    const TermMap& reorder_table(unsigned c) const;

private:
    DoubleOreAlgebra(RingPtr ring, SigmaPtr sigma, DeltaPtr delta, Scalar p12, Scalar p11,
                     RingElement tau0, RingElement tau1, RingElement tau2);

    RingPtr ring_;
    SigmaPtr sigma_;
    DeltaPtr delta_;
    Scalar p12_, p11_;
    RingElement tau0_, tau1_, tau2_;
    bool trimmed_ = false;
    bool double_candidate_ = false;
    std::size_t step_cap_ = 1000000;

    mutable std::map<unsigned, TermMap> reorder_;
    mutable std::mutex reorder_mu_;
};

// Element of the extension in left-normal form: sum of r_ij y1^i y2^j with
// nonzero ring coefficients r_ij. Immutable value type.
class ExtElement {
public:
    ExtElement() = default;
    static ExtElement zero(AlgebraPtr alg);
    static ExtElement one(AlgebraPtr alg);
    static ExtElement y1(AlgebraPtr alg);
    static ExtElement y2(AlgebraPtr alg);
    static ExtElement monomial(AlgebraPtr alg, const RingElement& r, unsigned i, unsigned j);
    static ExtElement from_ring(AlgebraPtr alg, const RingElement& r);
    static ExtElement from_scalar(AlgebraPtr alg, const Scalar& s);

    const AlgebraPtr& algebra() const { return alg_; }
    const std::map<ExpPair, RingElement>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_ring_element() const;
    RingElement ring_part() const;
    RingElement coeff(unsigned i, unsigned j) const;

    unsigned total_degree() const;
    unsigned deg_y1() const;
    unsigned deg_y2() const;

    ExtElement operator+(const ExtElement& o) const;
    ExtElement operator-(const ExtElement& o) const;
    ExtElement operator-() const;
    ExtElement operator*(const ExtElement& o) const; // ext_mul
    ExtElement scale(const Scalar& s) const;
    ExtElement left_mul_ring(const RingElement& r) const;
    ExtElement pow(unsigned e) const;
    bool operator==(const ExtElement& o) const;
    bool operator!=(const ExtElement& o) const { return !(*this == o); }

    std::string str() const;

    void insert_term(unsigned i, unsigned j, const RingElement& r); // adds, drops zeros

private:
    AlgebraPtr alg_;
    std::map<ExpPair, RingElement> terms_;

    void check_same_algebra(const ExtElement& o) const;
};

ExtElement ext_mul(const ExtElement& a, const ExtElement& b);

struct RelationCheck {
    std::string name;
    bool pass = true;
    std::string counterexample; // first failing basis word, rendered
    std::string lhs_value;
    std::string rhs_value;
};

struct CompatibilityReport {
    bool pass = true;
    std::size_t max_degree = 0;
    std::vector<RelationCheck> relations;
};

// Evaluates the six operator identities that characterise existence of the
// extension on every basis word up to max_degree.
CompatibilityReport check_compatibility(const AlgebraPtr& alg, std::size_t max_degree);

struct AssociativityReport {
    bool pass = true;
    std::size_t max_degree = 0;
    std::size_t triples_checked = 0;
    std::string counterexample; // first failing triple, rendered
};

// Independent oracle: (ab)c = a(bc) on all triples drawn from the ring
// basis and the y-monomials up to max_degree.
AssociativityReport check_associativity(const AlgebraPtr& alg, std::size_t max_degree);

struct ChangeBasisResult {
    AlgebraPtr algebra;
    // The new generators expressed inside the old algebra.
    ExtElement new_y1;
    ExtElement new_y2;
    int case_id = 0; // 1: p11 != 0, p12 = 1; 2: p12 != 1
    Scalar shift;    // the q of case 2 (zero in case 1)
};

// Basis change normalising the parameter pair: case 1 rescales y1 by p11,
// case 2 replaces y2 by y2 + q y1 with q = p11/(p12 - 1) so that p11
// becomes 0. Throws NotApplicable when p11 = 0 and p12 = 1.
ChangeBasisResult change_basis(const AlgebraPtr& alg);

// Associated graded algebra for p12 != 1: the case-2 shift applied to
// sigma, with delta and tau zeroed and P = {p12, 0}.
AlgebraPtr associated_graded(const AlgebraPtr& alg);

struct RightBasisDegree {
    std::size_t degree = 0;
    bool pass = true;
    std::string missing; // first left-basis element not reached
};

struct RightBasisReport {
    bool pass = true;
    std::size_t max_degree = 0;
    std::vector<RightBasisDegree> degrees;
    bool span_equality_degree1 = false;
    bool certified_double = false; // pass && span equality && p12 != 0
};

// Bounded certificate that {y2^i y1^j} spans the same filtration as the
// left basis, degree by degree, plus the degree-one span equality.
RightBasisReport check_right_basis(const AlgebraPtr& alg, std::size_t max_degree);

// Exact linear system over the k-coordinates (ring word, y1-exp, y2-exp) of
// extension elements. Columns are span generators, targets the right-hand
// sides; solving yields one coefficient vector per target with free
// variables pinned to zero, in column order.
class ExtLinearSystem {
public:
    void add_column(ExtElement e) { columns_.push_back(std::move(e)); }
    void add_target(ExtElement e) { targets_.push_back(std::move(e)); }

    struct Result {
        bool consistent = false;
        // coefficients[t][c]: weight of column c in target t.
        std::vector<std::vector<Scalar>> coefficients;
    };
    Result solve(const Field& f) const;
    // Per-target consistency (slower: one elimination per target).
    std::vector<bool> solve_each(const Field& f, std::vector<std::vector<Scalar>>* coeffs) const;

private:
    std::vector<ExtElement> columns_;
    std::vector<ExtElement> targets_;
};

} // namespace dore

#endif
