#ifndef DORE_DCV_HPP
#define DORE_DCV_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dore/extension.hpp"
#include "dore/iterated.hpp"

namespace dore {

// Defining data of the source extension B' = R_{P'}[y1', y2'; sigma',
// delta', tau']; lives over the same coefficient ring as the target.
struct SourceData {
    SigmaPtr sigma;
    DeltaPtr delta;
    Scalar p12, p11;
    RingElement tau0, tau1, tau2;
};

// Candidate change-of-variable column (q1, q2) in the target algebra,
// together with its source data. Verification is an operation, not a
// construction invariant.
struct DcvMatrix {
    ExtElement q1, q2;
    SourceData source;
};

enum class DcvScope { Scalars, Generators, Basis };

std::string scope_name(DcvScope s);

struct DcvWordCheck {
    std::string word;
    bool pass = true;
};

struct DcvCertificate {
    bool product_relation = false; // q2 q1 = p12' q1 q2 + p11' q1^2 + tau1' q1 + tau2' q2 + tau0'
    bool commutation = false;      // [q1; q2] r = sigma'(r) [q1; q2] + delta'(r) over the scope
    DcvScope scope = DcvScope::Basis;
    std::size_t max_degree = 0;
    std::vector<DcvWordCheck> words;
    std::string product_lhs, product_rhs; // rendered when the product relation fails
    bool pass() const { return product_relation && commutation; }
};

DcvCertificate check_dcv(const DcvMatrix& c, const AlgebraPtr& target, std::size_t max_degree,
                         DcvScope scope = DcvScope::Basis);

// One term of a formal source element: coefficient a, exponents (n, m) of
// y1'^n y2'^m.
struct SourceTerm {
    RingElement coeff;
    unsigned e1 = 0;
    unsigned e2 = 0;
};

// phi(sum a y1'^n y2'^m) = sum a q1^n q2^m, normalised in the target.
ExtElement induced_hom_apply(const DcvMatrix& c, const std::vector<SourceTerm>& element,
                             const AlgebraPtr& target);

struct HomMultReport {
    bool pass = true;
    std::size_t sample_degree = 0;
    std::size_t pairs_checked = 0;
    std::string counterexample;
};

// For monomial pairs (u, v) of source degree <= sample_degree verifies
// phi(uv) = phi(u) phi(v), where uv is normalised in the source algebra
// built from the source data. With strict_source the source must pass the
// compatibility check (else SourceNotBuildable); otherwise it is built
// mechanically.
HomMultReport check_hom_multiplicative(const DcvMatrix& c, const AlgebraPtr& target,
                                       std::size_t sample_degree, bool strict_source = false);

struct SemiInvariantReport {
    bool pass = true;
    unsigned index = 1;
    unsigned power = 1;
    std::size_t max_degree = 0;
    std::string counterexample; // first word whose product leaves the span
};

// y_i^n r stays inside R y1^n + R y2^n for every basis word r up to
// max_degree.
SemiInvariantReport check_semi_invariant(const AlgebraPtr& alg, unsigned index, unsigned power,
                                         std::size_t max_degree);

struct DecomposeReport {
    bool q_side = false;       // (q1, q2) satisfies the commutation relation
    bool g_side = false;       // (g1, g2) satisfies it
    bool factor_condition = false; // f sigma^n(r) = sigma'(r) f entrywise
    bool agree = false;        // q_side == (g_side && factor_condition)
    std::size_t max_degree = 0;
};

// Biconditional instance for q1 = f y1^n + g1, q2 = f y2^n + g2 with y_i^n
// semi-invariant: the q-column satisfies the commutation relation iff the
// g-column does and f intertwines sigma^n with sigma'.
DecomposeReport decompose_semi_invariant(const DcvMatrix& c, const AlgebraPtr& target, unsigned n,
                                         const ExtElement& f, const ExtElement& g1,
                                         const ExtElement& g2, std::size_t max_degree);

struct IsoDegreeReport {
    bool pass = false;
    unsigned deg_q1_y1 = 0;
    unsigned deg_q2_y2 = 0;
};

// Necessary condition for the induced map to be an isomorphism: q1 has
// degree one in y1 and q2 degree one in y2.
IsoDegreeReport iso_degree_check(const DcvMatrix& c);

struct SurjectivityTarget {
    std::string target;
    bool reached = false;
    std::string witness; // combination reaching it, rendered
};

struct SurjectivityReport {
    bool pass = false; // both y1 and y2 reached
    std::size_t max_degree = 0;
    std::vector<SurjectivityTarget> targets;
};

// Bounded witness: do y1 and y2 lie in the span of ring-word multiples of
// phi-images of source monomials up to max_degree?
SurjectivityReport bounded_surjectivity(const DcvMatrix& c, const AlgebraPtr& target,
                                        std::size_t max_degree);

struct TrimmedDcvReport {
    bool left_side = false;  // certificate (check_dcv) outcome
    bool right_side = false; // degree/coefficient/composition conditions
    bool agree = false;
    std::size_t max_degree = 0;
    std::vector<std::string> right_failures;
};

// Both directions of the trimmed characterisation, evaluated independently:
// left = the certificate; right = same degrees, equal coefficient lists,
// vanishing mixed compositions, and a_i sigma_pq^i = sigma'_pq a_i on basis
// words. Requires trimmed data on both sides and the scalar product
// relation q2 q1 = p12' q1 q2 + p11' q1^2 (PreconditionFailure otherwise).
TrimmedDcvReport check_trimmed_dcv(const SourceData& source, const AlgebraPtr& target,
                                   const std::vector<Scalar>& a, const std::vector<Scalar>& b,
                                   std::size_t max_degree);

struct HomToIteratedResult {
    bool pass = false;
    // Every condition with its verdict, in a fixed order; violated repeats
    // the failed ones by name.
    std::vector<std::pair<std::string, bool>> conditions;
    std::vector<std::string> violated;
    bool lower_triangular_variant = false; // passes with sigma21' absorbed into ds'
    // Emitted data on success: the cv-relation q2 q1 = ss(q1) q2 + ds(q1).
    ExtElement ss_q1, ds_q1;
    std::string relation_check; // "pass" once re-verified by ext_mul
};

// Translates a verified dcv-matrix into a pair of one-variable cv-polynomials
// when the source data is iterated-shaped (p11' = 0, tau2' = tau0' = 0,
// sigma' diagonal, and the slope/derivation conditions on q1).
HomToIteratedResult hom_to_iterated(const DcvMatrix& c, const AlgebraPtr& target);

// ---------------------------------------------------------------------------
// Brute-force search oracle.
// ---------------------------------------------------------------------------

enum class CoeffSpace {
    PoolScalars,        // coefficients are pool scalars
    PoolTimesWordsLe1,  // pool scalars times ring words of degree <= 1
    PoolTimesGenerators // pool scalars times generators (no unit word)
};

struct CandidateSlot {
    ExpPair exponents;
    CoeffSpace space = CoeffSpace::PoolTimesWordsLe1;
};

struct SourceTemplateData {
    SigmaPtr sigma;
    DeltaPtr delta;
    std::optional<Scalar> p12, p11;
    std::optional<RingElement> tau0, tau1, tau2;
};

// The source template fills in per-candidate source data: fixed maps plus
// fixed-or-solved parameters. Parameters left unset are completed from the
// product relation by the canonical linear solve (tails before P', free
// variables pinned to zero).
struct SourceTemplate {
    // Returns maps and fixed parameters for a candidate; nullopt when the
    // candidate is outside the rule's domain.
    std::function<std::optional<SourceTemplateData>(const ExtElement& q1, const ExtElement& q2)> derive;
    std::size_t tau_expansion_degree = 2;
};

struct SearchSpec {
    std::vector<CandidateSlot> q1_slots, q2_slots;
    SourceTemplate source;
    std::size_t max_degree = 3;
    DcvScope scope = DcvScope::Basis;
    std::size_t candidate_cap = 10000000;
};

// Deterministic enumeration of all candidate columns over the coefficient
// pool; every candidate whose completed source data passes check_dcv is
// returned, in enumeration order. Identically-zero polynomials are skipped.
std::vector<DcvMatrix> search_dcv(const SearchSpec& spec, const AlgebraPtr& target,
                                  const std::vector<Scalar>& pool);

// Convenience: all exponent pairs of total degree <= bound with the default
// coefficient space.
std::vector<CandidateSlot> default_slots(std::size_t degree_bound);

// Fixed-source template (no solving).
SourceTemplate fixed_source_template(const SourceData& source);

// Completes unset parameters of the template data for a specific candidate,
// by the canonical linear solve. Returns nullopt if the product relation is
// unsatisfiable for every parameter choice.
std::optional<SourceData> complete_source(const SourceTemplateData& data, const ExtElement& q1,
                                          const ExtElement& q2, const AlgebraPtr& target,
                                          std::size_t tau_expansion_degree);

} // namespace dore

#endif
