#ifndef DORE_ITERATED_HPP
#define DORE_ITERATED_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dore/extension.hpp"

namespace dore {

enum class IterOrder { Y1ThenY2, Y2ThenY1 };

// Two-step skew-polynomial presentation R[vf; sf, df][vs; ss, ds]. The
// second-step action on the first variable always has the affine/quadratic
// shape ss(vf) = slope vf + sigma_tail, ds(vf) = quad vf^2 + lin vf + cnst,
// and ds on R lands in R + R vf (split into ds_const and ds_lin).
struct IteratedPresentation {
    RingPtr ring;
    IterOrder order = IterOrder::Y1ThenY2;

    using RingMap = std::function<RingElement(const RingElement&)>;
    RingMap sigma_first;
    RingMap deriv_first;
    RingMap sigma_second; // on R
    RingMap ds_const;     // R part of ds on R
    RingMap ds_lin;       // coefficient of vf in ds on R

    Scalar slope;
    RingElement sigma_tail;
    Scalar quad;
    RingElement lin;
    RingElement cnst;

    bool double_flag = false;
};

// Sum of r_i vf^i.
using OrePoly1 = std::map<unsigned, RingElement>;
// Sum of F_j vs^j with F_j in R[vf].
using OrePoly2 = std::map<unsigned, OrePoly1>;

OrePoly2 iter_monomial(const IteratedPresentation& pres, const RingElement& r, unsigned f_exp,
                       unsigned s_exp);
// Product computed entirely inside the two-step presentation, one variable
// at a time.
OrePoly2 iterated_mul(const IteratedPresentation& pres, const OrePoly2& a, const OrePoly2& b);
// Reads the iterated normal form back as an extension element (reordering
// through ext arithmetic when the orders differ).
ExtElement iterated_to_ext(const AlgebraPtr& alg, const IteratedPresentation& pres,
                           const OrePoly2& p);

struct ToIteratedResult {
    std::optional<IteratedPresentation> first_order;  // R[y1][y2]
    std::optional<IteratedPresentation> second_order; // R[y2][y1]
    std::vector<std::string> obstructions_first;
    std::vector<std::string> obstructions_second;
    bool any() const { return first_order.has_value() || second_order.has_value(); }
};

// Tries both variable orders: the first succeeds iff sigma12 = 0, the
// second iff sigma21 = 0, p12 != 0 and p11 = 0. Failed conditions are
// listed per order.
ToIteratedResult to_iterated(const AlgebraPtr& alg);

// The scalar-tail archetype: k[x1][x2; s2, d2] with s2(x1) = p12 x1 + tau2
// and d2(x1) = p11 x1^2 + tau1 x1 + tau0; double iff p12 != 0.
IteratedPresentation scalar_tail_iterated(const Field& field, const Scalar& p12, const Scalar& p11,
                                          const Scalar& tau0, const Scalar& tau1,
                                          const Scalar& tau2);

struct IterMatchReport {
    bool pass = true;
    std::size_t pairs_checked = 0;
    std::string counterexample;
};

// Cross-route consistency: products of iterated-basis monomials computed by
// the one-variable recursion agree with ext_mul after conversion.
IterMatchReport iterated_product_match(const AlgebraPtr& alg, const IteratedPresentation& pres,
                                       std::size_t max_degree);

} // namespace dore

#endif
