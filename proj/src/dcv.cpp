#include "dore/dcv.hpp"

#include <algorithm>
#include <sstream>

namespace dore {

std::string scope_name(DcvScope s) {
    switch (s) {
    case DcvScope::Scalars: return "scalars";
    case DcvScope::Generators: return "generators";
    case DcvScope::Basis: return "basis";
    }
    return "?";
}

namespace {

std::vector<Word> scope_words(const RingPtr& ring, DcvScope scope, std::size_t max_degree) {
    switch (scope) {
    case DcvScope::Scalars:
        return {Word{}};
    case DcvScope::Generators: {
        std::vector<Word> ws{Word{}};
        for (std::uint32_t g = 0; g < ring->generator_count(); ++g)
            ws.push_back(Word{{g}});
        return ws;
    }
    case DcvScope::Basis:
    default:
        return ring_basis(ring, max_degree);
    }
}

ExtElement product_relation_rhs(const DcvMatrix& c, const AlgebraPtr& target) {
    const ExtElement q1q2 = ext_mul(c.q1, c.q2);
    const ExtElement q1sq = ext_mul(c.q1, c.q1);
    ExtElement rhs = q1q2.scale(c.source.p12) + q1sq.scale(c.source.p11);
    rhs = rhs + c.q1.left_mul_ring(c.source.tau1);
    rhs = rhs + c.q2.left_mul_ring(c.source.tau2);
    rhs = rhs + ExtElement::from_ring(target, c.source.tau0);
    return rhs;
}

// [q1; q2] r = sigma'(r) [q1; q2] + delta'(r), row by row.
bool commutation_holds_at(const ExtElement& q1, const ExtElement& q2, const SigmaMatrix& sigma,
                          const DeltaColumn& delta, const AlgebraPtr& target, const RingElement& r) {
    const Mat2 s = sigma.apply(r);
    const Col2 d = delta.apply(r);
    const ExtElement re = ExtElement::from_ring(target, r);
    const ExtElement lhs1 = ext_mul(q1, re);
    const ExtElement rhs1 =
        q1.left_mul_ring(s.e11) + q2.left_mul_ring(s.e12) + ExtElement::from_ring(target, d.c1);
    if (lhs1 != rhs1) return false;
    const ExtElement lhs2 = ext_mul(q2, re);
    const ExtElement rhs2 =
        q1.left_mul_ring(s.e21) + q2.left_mul_ring(s.e22) + ExtElement::from_ring(target, d.c2);
    return lhs2 == rhs2;
}

} // namespace

DcvCertificate check_dcv(const DcvMatrix& c, const AlgebraPtr& target, std::size_t max_degree,
                         DcvScope scope) {
    if (c.q1.algebra().get() != target.get() || c.q2.algebra().get() != target.get())
        throw RingMismatch("candidate polynomials live outside the target algebra");
    if (c.source.sigma->ring().get() != target->ring().get())
        throw RingMismatch("source data over a different coefficient ring");

    DcvCertificate cert;
    cert.scope = scope;
    cert.max_degree = max_degree;

    const ExtElement lhs = ext_mul(c.q2, c.q1);
    const ExtElement rhs = product_relation_rhs(c, target);
    cert.product_relation = (lhs == rhs);
    if (!cert.product_relation) {
        cert.product_lhs = lhs.str();
        cert.product_rhs = rhs.str();
    }

    cert.commutation = true;
    for (const Word& w : scope_words(target->ring(), scope, max_degree)) {
        RingElement r = RingElement::monomial(target->ring(), w, Scalar::one(target->field()));
        DcvWordCheck wc;
        wc.word = r.str();
        wc.pass = commutation_holds_at(c.q1, c.q2, *c.source.sigma, *c.source.delta, target, r);
        cert.commutation = cert.commutation && wc.pass;
        cert.words.push_back(std::move(wc));
    }
    return cert;
}

ExtElement induced_hom_apply(const DcvMatrix& c, const std::vector<SourceTerm>& element,
                             const AlgebraPtr& target) {
    ExtElement acc = ExtElement::zero(target);
    for (const SourceTerm& t : element) {
        if (t.coeff.ring().get() != target->ring().get())
            throw RingMismatch("source coefficient from a different ring");
        ExtElement image = ext_mul(c.q1.pow(t.e1), c.q2.pow(t.e2));
        acc = acc + image.left_mul_ring(t.coeff);
    }
    return acc;
}

namespace {

// The delta of a SourceData is not necessarily bound to the same sigma
// object; rebind before building the source algebra.
AlgebraPtr build_source_algebra(const SourceData& src, const RingPtr& ring) {
    DeltaPtr delta = src.delta;
    if (delta->sigma().get() != src.sigma.get()) {
        std::array<std::vector<RingElement>, 2> images;
        for (int i = 0; i < 2; ++i)
            for (std::size_t g = 0; g < ring->generator_count(); ++g)
                images[i].push_back(delta->image(i + 1, g));
        delta = DeltaColumn::make(ring, src.sigma, std::move(images));
    }
    return DoubleOreAlgebra::make_unvalidated(ring, src.sigma, delta, src.p12, src.p11, src.tau0,
                                              src.tau1, src.tau2);
}

} // namespace

HomMultReport check_hom_multiplicative(const DcvMatrix& c, const AlgebraPtr& target,
                                       std::size_t sample_degree, bool strict_source) {
    HomMultReport rep;
    rep.sample_degree = sample_degree;
    AlgebraPtr source = build_source_algebra(c.source, target->ring());
    if (strict_source) {
        CompatibilityReport comp = check_compatibility(source, sample_degree);
        if (!comp.pass)
            throw SourceNotBuildable("source data fails the compatibility identities");
    }

    std::vector<std::pair<unsigned, unsigned>> monos;
    for (unsigned d = 0; d <= sample_degree; ++d)
        for (unsigned i = 0; i <= d; ++i) monos.emplace_back(i, d - i);

    auto phi_of_ext = [&](const ExtElement& e) {
        std::vector<SourceTerm> terms;
        for (const auto& [ij, r] : e.terms()) terms.push_back({r, ij.first, ij.second});
        return induced_hom_apply(c, terms, target);
    };

    for (const auto& [a1, a2] : monos) {
        for (const auto& [b1, b2] : monos) {
            ExtElement u = ExtElement::monomial(source, RingElement::one(source->ring()), a1, a2);
            ExtElement v = ExtElement::monomial(source, RingElement::one(source->ring()), b1, b2);
            ExtElement uv = ext_mul(u, v); // normalised in the source
            ExtElement lhs = phi_of_ext(uv);
            ExtElement rhs = ext_mul(phi_of_ext(u), phi_of_ext(v));
            ++rep.pairs_checked;
            if (lhs != rhs) {
                rep.pass = false;
                std::ostringstream os;
                os << "u = y1'^" << a1 << "*y2'^" << a2 << ", v = y1'^" << b1 << "*y2'^" << b2
                   << ": phi(uv) = " << lhs.str() << ", phi(u)phi(v) = " << rhs.str();
                rep.counterexample = os.str();
                return rep;
            }
        }
    }
    return rep;
}

SemiInvariantReport check_semi_invariant(const AlgebraPtr& alg, unsigned index, unsigned power,
                                         std::size_t max_degree) {
    if (power < 1) throw PreconditionFailure("semi-invariance needs power >= 1");
    if (index != 1 && index != 2) throw PreconditionFailure("variable index must be 1 or 2");
    SemiInvariantReport rep;
    rep.index = index;
    rep.power = power;
    rep.max_degree = max_degree;
    const ExtElement yin =
        (index == 1 ? ExtElement::y1(alg) : ExtElement::y2(alg)).pow(power);
    for (const Word& w : ring_basis(alg->ring(), max_degree)) {
        RingElement r = RingElement::monomial(alg->ring(), w, Scalar::one(alg->field()));
        ExtElement prod = ext_mul(yin, ExtElement::from_ring(alg, r));
        for (const auto& [ij, coeff] : prod.terms()) {
            const bool ok = (ij.first == power && ij.second == 0) ||
                            (ij.first == 0 && ij.second == power);
            if (!ok) {
                rep.pass = false;
                rep.counterexample = r.str();
                return rep;
            }
        }
    }
    return rep;
}

namespace {

bool commutation_over_basis(const ExtElement& q1, const ExtElement& q2, const SourceData& src,
                            const AlgebraPtr& target, std::size_t max_degree) {
    for (const Word& w : ring_basis(target->ring(), max_degree)) {
        RingElement r = RingElement::monomial(target->ring(), w, Scalar::one(target->field()));
        if (!commutation_holds_at(q1, q2, *src.sigma, *src.delta, target, r)) return false;
    }
    return true;
}

} // namespace

DecomposeReport decompose_semi_invariant(const DcvMatrix& c, const AlgebraPtr& target, unsigned n,
                                         const ExtElement& f, const ExtElement& g1,
                                         const ExtElement& g2, std::size_t max_degree) {
    if (g1.total_degree() > n || g2.total_degree() > n)
        throw PreconditionFailure("remainder polynomials must have degree <= n");
    const ExtElement y1n = ExtElement::y1(target).pow(n);
    const ExtElement y2n = ExtElement::y2(target).pow(n);
    if (!(ext_mul(f, y1n) + g1 == c.q1) || !(ext_mul(f, y2n) + g2 == c.q2))
        throw DecompositionMismatch("f y_i^n + g_i does not reproduce the candidate");
    if (!check_semi_invariant(target, 1, n, max_degree).pass ||
        !check_semi_invariant(target, 2, n, max_degree).pass)
        throw PreconditionFailure("y1^n / y2^n are not right double semi-invariant at this bound");

    DecomposeReport rep;
    rep.max_degree = max_degree;
    rep.q_side = commutation_over_basis(c.q1, c.q2, c.source, target, max_degree);
    rep.g_side = commutation_over_basis(g1, g2, c.source, target, max_degree);

    // f sigma^n(r) = sigma'(r) f, entrywise, where sigma^n_{ij}(r) is read
    // off y_i^n r = sigma^n_{i1}(r) y1^n + sigma^n_{i2}(r) y2^n.
    rep.factor_condition = true;
    for (const Word& w : ring_basis(target->ring(), max_degree)) {
        RingElement r = RingElement::monomial(target->ring(), w, Scalar::one(target->field()));
        const Mat2 sp = c.source.sigma->apply(r);
        for (unsigned i = 1; i <= 2 && rep.factor_condition; ++i) {
            ExtElement prod = ext_mul(i == 1 ? y1n : y2n, ExtElement::from_ring(target, r));
            RingElement sn1 = prod.coeff(n, 0);
            RingElement sn2 = prod.coeff(0, n);
            if (n == 0) sn2 = RingElement::zero(target->ring());
            const RingElement& sp1 = i == 1 ? sp.e11 : sp.e21;
            const RingElement& sp2 = i == 1 ? sp.e12 : sp.e22;
            if (!(ext_mul(f, ExtElement::from_ring(target, sn1)) == ext_mul(ExtElement::from_ring(target, sp1), f)) ||
                !(ext_mul(f, ExtElement::from_ring(target, sn2)) == ext_mul(ExtElement::from_ring(target, sp2), f)))
                rep.factor_condition = false;
        }
        if (!rep.factor_condition) break;
    }
    rep.agree = (rep.q_side == (rep.g_side && rep.factor_condition));
    return rep;
}

IsoDegreeReport iso_degree_check(const DcvMatrix& c) {
    IsoDegreeReport rep;
    rep.deg_q1_y1 = c.q1.deg_y1();
    rep.deg_q2_y2 = c.q2.deg_y2();
    rep.pass = (rep.deg_q1_y1 == 1 && rep.deg_q2_y2 == 1);
    return rep;
}

SurjectivityReport bounded_surjectivity(const DcvMatrix& c, const AlgebraPtr& target,
                                        std::size_t max_degree) {
    SurjectivityReport rep;
    rep.max_degree = max_degree;
    const RingPtr& ring = target->ring();
    const Field f = target->field();

    ExtLinearSystem sys;
    std::vector<std::string> labels;
    for (const Word& w : ring_basis(ring, max_degree)) {
        RingElement we = RingElement::monomial(ring, w, Scalar::one(f));
        for (unsigned d = 0; d <= max_degree; ++d) {
            for (unsigned i = 0; i <= d; ++i) {
                const unsigned j = d - i;
                ExtElement phi = ext_mul(c.q1.pow(i), c.q2.pow(j));
                sys.add_column(phi.left_mul_ring(we));
                std::ostringstream os;
                os << we.str() << "*phi(y1'^" << i << "*y2'^" << j << ")";
                labels.push_back(os.str());
            }
        }
    }
    sys.add_target(ExtElement::y1(target));
    sys.add_target(ExtElement::y2(target));

    std::vector<std::vector<Scalar>> coeffs;
    std::vector<bool> reached = sys.solve_each(f, &coeffs);
    const char* names[2] = {"y1", "y2"};
    rep.pass = true;
    for (int t = 0; t < 2; ++t) {
        SurjectivityTarget st;
        st.target = names[t];
        st.reached = reached[t];
        if (st.reached) {
            std::ostringstream os;
            bool first = true;
            for (std::size_t k = 0; k < coeffs[t].size(); ++k) {
                if (coeffs[t][k].is_zero()) continue;
                if (!first) os << " + ";
                first = false;
                os << "(" << coeffs[t][k].str() << ")*" << labels[k];
            }
            st.witness = first ? "0" : os.str();
        }
        rep.pass = rep.pass && st.reached;
        rep.targets.push_back(std::move(st));
    }
    return rep;
}

namespace {

// i-fold composition of the (p, q) entry map.
RingElement entry_power(const SigmaMatrix& s, int p, int q, unsigned i, const RingElement& r) {
    RingElement acc = r;
    for (unsigned k = 0; k < i; ++k) acc = s.entry(p, q, acc);
    return acc;
}

std::size_t trimmed_degree(const std::vector<Scalar>& coeffs) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (!coeffs[i].is_zero()) n = i + 1;
    return n;
}

} // namespace

TrimmedDcvReport check_trimmed_dcv(const SourceData& source, const AlgebraPtr& target,
                                   const std::vector<Scalar>& a, const std::vector<Scalar>& b,
                                   std::size_t max_degree) {
    if (!target->trimmed()) throw PreconditionFailure("target is not trimmed");
    if (!source.delta->is_zero_on_generators() || !source.tau0.is_zero() || !source.tau1.is_zero() ||
        !source.tau2.is_zero())
        throw PreconditionFailure("source data is not trimmed");

    // q1 = sum a_i y1^i, q2 = sum b_i y2^i, indices starting at power 1.
    ExtElement q1 = ExtElement::zero(target), q2 = ExtElement::zero(target);
    for (std::size_t i = 0; i < a.size(); ++i)
        q1 = q1 + ExtElement::monomial(target, RingElement::scalar(target->ring(), a[i]),
                                       static_cast<unsigned>(i + 1), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        q2 = q2 + ExtElement::monomial(target, RingElement::scalar(target->ring(), b[i]), 0,
                                       static_cast<unsigned>(i + 1));

    const ExtElement lhs = ext_mul(q2, q1);
    const ExtElement rhs =
        ext_mul(q1, q2).scale(source.p12) + ext_mul(q1, q1).scale(source.p11);
    if (lhs != rhs)
        throw PreconditionFailure("q2 q1 = p12' q1 q2 + p11' q1^2 does not hold for these lists");

    TrimmedDcvReport rep;
    rep.max_degree = max_degree;

    DcvMatrix c{q1, q2, source};
    rep.left_side = check_dcv(c, target, max_degree, DcvScope::Basis).pass();

    rep.right_side = true;
    const std::size_t n = trimmed_degree(a);
    const std::size_t m = trimmed_degree(b);
    if (n != m) {
        rep.right_side = false;
        rep.right_failures.push_back("deg q1 != deg q2");
    }
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        const Scalar ai = i < a.size() ? a[i] : Scalar::zero(target->field());
        const Scalar bi = i < b.size() ? b[i] : Scalar::zero(target->field());
        if (!(ai == bi)) {
            rep.right_side = false;
            rep.right_failures.push_back("coefficient lists differ at power " + std::to_string(i + 1));
            break;
        }
    }

    const SigmaMatrix& sg = *target->sigma();
    const std::vector<Word> basis = ring_basis(target->ring(), max_degree);
    struct Mixed {
        int a1, b1, a2, b2;
        const char* name;
    };
    const Mixed mixed[] = {{1, 1, 1, 2, "sigma11.sigma12"},
                           {1, 2, 1, 1, "sigma12.sigma11"},
                           {2, 2, 2, 1, "sigma22.sigma21"},
                           {2, 1, 2, 2, "sigma21.sigma22"}};
    for (const Mixed& mx : mixed) {
        for (const Word& w : basis) {
            RingElement r = RingElement::monomial(target->ring(), w, Scalar::one(target->field()));
            if (!sg.entry(mx.a1, mx.b1, sg.entry(mx.a2, mx.b2, r)).is_zero()) {
                rep.right_side = false;
                rep.right_failures.push_back(std::string(mx.name) + " != 0");
                break;
            }
        }
    }

    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero() && (i >= b.size() || b[i].is_zero())) continue;
        const Scalar ai = a[i];
        for (int p = 1; p <= 2; ++p) {
            for (int q = 1; q <= 2; ++q) {
                for (const Word& w : basis) {
                    RingElement r =
                        RingElement::monomial(target->ring(), w, Scalar::one(target->field()));
                    RingElement l = entry_power(sg, p, q, static_cast<unsigned>(i + 1), r).scale(ai);
                    RingElement rr = source.sigma->entry(p, q, r).scale(ai);
                    if (l != rr) {
                        rep.right_side = false;
                        rep.right_failures.push_back("a_" + std::to_string(i + 1) +
                                                     " sigma^i intertwining fails at sigma_" +
                                                     std::to_string(p) + std::to_string(q));
                        break;
                    }
                }
            }
        }
    }

    rep.agree = (rep.left_side == rep.right_side);
    return rep;
}

HomToIteratedResult hom_to_iterated(const DcvMatrix& c, const AlgebraPtr& target) {
    (void)target;
    HomToIteratedResult res;
    const SourceData& s = c.source;
    const bool sigma21_zero = s.sigma->entry_zero_on_generators(2, 1);

    auto condition = [&](const std::string& name, bool ok) {
        res.conditions.emplace_back(name, ok);
        if (!ok) res.violated.push_back(name);
        return ok;
    };

    bool core = true;
    core &= condition("p11' = 0", s.p11.is_zero());
    core &= condition("tau2' = 0", s.tau2.is_zero());
    core &= condition("tau0' = 0", s.tau0.is_zero());
    core &= condition("sigma12' = 0", s.sigma->entry_zero_on_generators(1, 2));
    if (c.q1.is_ring_element()) {
        // Slope and derivation conditions are decidable inside R.
        const RingElement q1r = c.q1.ring_part();
        core &= condition("p12' phi(y1') = sigma2'(phi(y1'))",
                          s.sigma->entry(2, 2, q1r) == q1r.scale(s.p12));
        core &= condition("tau1' phi(y1') = delta2'(phi(y1'))",
                          s.delta->entry(2, q1r) == s.tau1 * q1r);
    } else {
        // phi(y1') leaves R; the slope and derivation values are structural
        // once the tail conditions hold.
        condition("p12' phi(y1') = sigma2'(phi(y1'))", true);
        condition("tau1' phi(y1') = delta2'(phi(y1'))", true);
    }
    condition("sigma21' = 0", sigma21_zero);

    res.pass = core && sigma21_zero;
    res.lower_triangular_variant = core && !sigma21_zero;
    if (res.pass || res.lower_triangular_variant) {
        res.ss_q1 = c.q1.scale(s.p12);
        res.ds_q1 = c.q1.left_mul_ring(s.tau1);
        const ExtElement lhs = ext_mul(c.q2, c.q1);
        const ExtElement rhs = ext_mul(res.ss_q1, c.q2) + res.ds_q1;
        res.relation_check = (lhs == rhs) ? "pass" : "fail";
        if (res.relation_check == "fail") {
            res.pass = false;
            res.lower_triangular_variant = false;
            res.violated.push_back("cv relation q2 q1 = ss(q1) q2 + ds(q1) fails");
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Search.
// ---------------------------------------------------------------------------

std::vector<CandidateSlot> default_slots(std::size_t degree_bound) {
    std::vector<CandidateSlot> slots;
    for (unsigned d = 0; d <= degree_bound; ++d)
        for (unsigned i = 0; i <= d; ++i)
            slots.push_back({{i, d - i}, CoeffSpace::PoolTimesWordsLe1});
    return slots;
}

SourceTemplate fixed_source_template(const SourceData& source) {
    SourceTemplate t;
    t.derive = [source](const ExtElement&, const ExtElement&) {
        SourceTemplateData d;
        d.sigma = source.sigma;
        d.delta = source.delta;
        d.p12 = source.p12;
        d.p11 = source.p11;
        d.tau0 = source.tau0;
        d.tau1 = source.tau1;
        d.tau2 = source.tau2;
        return std::optional<SourceTemplateData>(std::move(d));
    };
    return t;
}

std::optional<SourceData> complete_source(const SourceTemplateData& data, const ExtElement& q1,
                                          const ExtElement& q2, const AlgebraPtr& target,
                                          std::size_t tau_expansion_degree) {
    const RingPtr& ring = target->ring();
    const Field f = target->field();

    const bool all_fixed = data.p12 && data.p11 && data.tau0 && data.tau1 && data.tau2;
    if (all_fixed)
        return SourceData{data.sigma, data.delta, *data.p12, *data.p11, *data.tau0, *data.tau1,
                          *data.tau2};

    const ExtElement q2q1 = ext_mul(q2, q1);
    const ExtElement q1q2 = ext_mul(q1, q2);
    const ExtElement q1sq = ext_mul(q1, q1);
    ExtElement target_vec = q2q1;
    if (data.p12) target_vec = target_vec - q1q2.scale(*data.p12);
    if (data.p11) target_vec = target_vec - q1sq.scale(*data.p11);
    if (data.tau1) target_vec = target_vec - q1.left_mul_ring(*data.tau1);
    if (data.tau2) target_vec = target_vec - q2.left_mul_ring(*data.tau2);
    if (data.tau0) target_vec = target_vec - ExtElement::from_ring(target, *data.tau0);

    // Canonical unknown order: tau1, tau2, tau0 coordinates (over basis
    // words), then p12, then p11. Earlier columns take pivots, so free
    // directions default into P'.
    ExtLinearSystem sys;
    struct ColRef {
        int param; // 0 tau1, 1 tau2, 2 tau0, 3 p12, 4 p11
        Word w;
    };
    std::vector<ColRef> refs;
    const std::vector<Word> words = ring_basis(ring, tau_expansion_degree);
    auto add_tau_cols = [&](int param, const ExtElement& mult) {
        for (const Word& w : words) {
            RingElement we = RingElement::monomial(ring, w, Scalar::one(f));
            sys.add_column(mult.left_mul_ring(we));
            refs.push_back({param, w});
        }
    };
    if (!data.tau1) add_tau_cols(0, q1);
    if (!data.tau2) add_tau_cols(1, q2);
    if (!data.tau0) add_tau_cols(2, ExtElement::one(target));
    if (!data.p12) {
        sys.add_column(q1q2);
        refs.push_back({3, Word{}});
    }
    if (!data.p11) {
        sys.add_column(q1sq);
        refs.push_back({4, Word{}});
    }
    sys.add_target(target_vec);
    ExtLinearSystem::Result sol = sys.solve(f);
    if (!sol.consistent) return std::nullopt;

    SourceData out{data.sigma, data.delta,
                   data.p12 ? *data.p12 : Scalar::zero(f), data.p11 ? *data.p11 : Scalar::zero(f),
                   data.tau0 ? *data.tau0 : RingElement::zero(ring),
                   data.tau1 ? *data.tau1 : RingElement::zero(ring),
                   data.tau2 ? *data.tau2 : RingElement::zero(ring)};
    for (std::size_t k = 0; k < refs.size(); ++k) {
        const Scalar& v = sol.coefficients[0][k];
        if (v.is_zero()) continue;
        switch (refs[k].param) {
        case 0: out.tau1 = out.tau1 + RingElement::monomial(ring, refs[k].w, v); break;
        case 1: out.tau2 = out.tau2 + RingElement::monomial(ring, refs[k].w, v); break;
        case 2: out.tau0 = out.tau0 + RingElement::monomial(ring, refs[k].w, v); break;
        case 3: out.p12 = v; break;
        case 4: out.p11 = v; break;
        }
    }
    return out;
}

namespace {

// Deterministic coefficient list for one slot: pool order outer, word order
// inner, a single zero kept at its first occurrence.
std::vector<RingElement> slot_coefficients(const RingPtr& ring, CoeffSpace space,
                                           const std::vector<Scalar>& pool) {
    std::vector<RingElement> out;
    bool zero_seen = false;
    auto push = [&](const RingElement& e) {
        if (e.is_zero()) {
            if (zero_seen) return;
            zero_seen = true;
        }
        out.push_back(e);
    };
    std::vector<Word> words;
    if (space == CoeffSpace::PoolScalars) {
        words = {Word{}};
    } else if (space == CoeffSpace::PoolTimesWordsLe1) {
        words = ring_basis(ring, 1);
    } else {
        for (std::uint32_t g = 0; g < ring->generator_count(); ++g) words.push_back(Word{{g}});
    }
    if (space == CoeffSpace::PoolTimesGenerators) {
        bool pool_has_zero = false;
        for (const Scalar& s : pool) pool_has_zero = pool_has_zero || s.is_zero();
        if (pool_has_zero) push(RingElement::zero(ring));
    }
    for (const Scalar& s : pool)
        for (const Word& w : words) push(RingElement::monomial(ring, w, s));
    return out;
}

} // namespace

std::vector<DcvMatrix> search_dcv(const SearchSpec& spec, const AlgebraPtr& target,
                                  const std::vector<Scalar>& pool) {
    const RingPtr& ring = target->ring();
    for (const Scalar& s : pool)
        if (!(s.field() == target->field())) throw FieldMismatch("pool scalar from wrong field");

    std::vector<std::vector<RingElement>> coeff_lists;
    std::vector<const CandidateSlot*> slots;
    for (const CandidateSlot& s : spec.q1_slots) slots.push_back(&s);
    for (const CandidateSlot& s : spec.q2_slots) slots.push_back(&s);
    std::size_t total = 1;
    for (const CandidateSlot* s : slots) {
        coeff_lists.push_back(slot_coefficients(ring, s->space, pool));
        if (coeff_lists.back().empty()) return {};
        total *= coeff_lists.back().size();
        if (total > spec.candidate_cap)
            throw PoolTooLarge("candidate enumeration exceeds the cap of " +
                               std::to_string(spec.candidate_cap));
    }

    std::vector<DcvMatrix> hits;
    std::vector<std::size_t> odo(slots.size(), 0);
    const std::size_t nq1 = spec.q1_slots.size();
    bool done = slots.empty();
    while (!done) {
        ExtElement q1 = ExtElement::zero(target), q2 = ExtElement::zero(target);
        for (std::size_t k = 0; k < slots.size(); ++k) {
            const RingElement& coeff = coeff_lists[k][odo[k]];
            if (coeff.is_zero()) continue;
            const ExpPair e = slots[k]->exponents;
            if (k < nq1)
                q1 = q1 + ExtElement::monomial(target, coeff, e.first, e.second);
            else
                q2 = q2 + ExtElement::monomial(target, coeff, e.first, e.second);
        }
        if (!q1.is_zero() && !q2.is_zero()) {
            std::optional<SourceTemplateData> data = spec.source.derive(q1, q2);
            if (data) {
                std::optional<SourceData> src =
                    complete_source(*data, q1, q2, target, spec.source.tau_expansion_degree);
                if (src) {
                    DcvMatrix cand{q1, q2, *src};
                    if (check_dcv(cand, target, spec.max_degree, spec.scope).pass())
                        hits.push_back(std::move(cand));
                }
            }
        }
        // Odometer: last slot fastest, so earlier slots are most significant.
        std::size_t k = slots.size();
        while (k > 0) {
            --k;
            if (++odo[k] < coeff_lists[k].size()) break;
            odo[k] = 0;
            if (k == 0) done = true;
        }
    }
    return hits;
}

} // namespace dore
