#include "dore/iterated.hpp"

#include <sstream>

namespace dore {

namespace {

void add_term1(OrePoly1& p, unsigned e, const RingElement& r) {
    if (r.is_zero()) return;
    auto [it, fresh] = p.emplace(e, r);
    if (!fresh) {
        it->second = it->second + r;
        if (it->second.is_zero()) p.erase(it);
    }
}

void add_poly1(OrePoly1& p, const OrePoly1& q) {
    for (const auto& [e, r] : q) add_term1(p, e, r);
}

void add_term2(OrePoly2& p, unsigned e, const OrePoly1& f) {
    if (f.empty()) return;
    auto [it, fresh] = p.emplace(e, f);
    if (!fresh) {
        add_poly1(it->second, f);
        if (it->second.empty()) p.erase(it);
    }
}

OrePoly1 p1_scalar(const IteratedPresentation&, const RingElement& r) {
    OrePoly1 p;
    add_term1(p, 0, r);
    return p;
}

// vf . G in R[vf]: vf r = sf(r) vf + df(r).
OrePoly1 vf_times(const IteratedPresentation& pres, const OrePoly1& g) {
    OrePoly1 out;
    for (const auto& [e, r] : g) {
        add_term1(out, e + 1, pres.sigma_first(r));
        add_term1(out, e, pres.deriv_first(r));
    }
    return out;
}

OrePoly1 p1_mul(const IteratedPresentation& pres, const OrePoly1& f, const OrePoly1& g) {
    OrePoly1 out;
    for (const auto& [e, r] : f) {
        OrePoly1 shifted = g;
        for (unsigned k = 0; k < e; ++k) shifted = vf_times(pres, shifted);
        for (const auto& [e2, r2] : shifted) add_term1(out, e2, r * r2);
    }
    return out;
}

// The second-step endomorphism on R[vf], extended multiplicatively from
// ss|R and ss(vf) = slope vf + sigma_tail.
OrePoly1 ss_apply(const IteratedPresentation& pres, const OrePoly1& f) {
    OrePoly1 ss_vf;
    add_term1(ss_vf, 1, RingElement::scalar(pres.ring, pres.slope));
    add_term1(ss_vf, 0, pres.sigma_tail);
    OrePoly1 out;
    for (const auto& [e, r] : f) {
        OrePoly1 acc = p1_scalar(pres, pres.sigma_second(r));
        for (unsigned k = 0; k < e; ++k) acc = p1_mul(pres, acc, ss_vf);
        add_poly1(out, acc);
    }
    return out;
}

// The second-step derivation on R[vf]: ds(FG) = ss(F) ds(G) + ds(F) G with
// ds(r) = ds_const(r) + ds_lin(r) vf and ds(vf) = quad vf^2 + lin vf + cnst.
OrePoly1 ds_apply(const IteratedPresentation& pres, const OrePoly1& f) {
    OrePoly1 ds_vf;
    add_term1(ds_vf, 2, RingElement::scalar(pres.ring, pres.quad));
    add_term1(ds_vf, 1, pres.lin);
    add_term1(ds_vf, 0, pres.cnst);
    OrePoly1 ss_vf;
    add_term1(ss_vf, 1, RingElement::scalar(pres.ring, pres.slope));
    add_term1(ss_vf, 0, pres.sigma_tail);

    OrePoly1 out;
    for (const auto& [e, r] : f) {
        // ds(r vf^e) = ss(r) ds(vf^e) + ds(r) vf^e
        OrePoly1 ds_vfe; // sum_{k<e} ss(vf)^k ds(vf) vf^{e-1-k}
        for (unsigned k = 0; k < e; ++k) {
            OrePoly1 term = p1_scalar(pres, RingElement::one(pres.ring));
            for (unsigned m = 0; m < k; ++m) term = p1_mul(pres, term, ss_vf);
            term = p1_mul(pres, term, ds_vf);
            OrePoly1 tail;
            add_term1(tail, e - 1 - k, RingElement::one(pres.ring));
            term = p1_mul(pres, term, tail);
            add_poly1(ds_vfe, term);
        }
        OrePoly1 left = p1_mul(pres, p1_scalar(pres, pres.sigma_second(r)), ds_vfe);
        add_poly1(out, left);
        OrePoly1 ds_r;
        add_term1(ds_r, 0, pres.ds_const(r));
        add_term1(ds_r, 1, pres.ds_lin(r));
        OrePoly1 vfe;
        add_term1(vfe, e, RingElement::one(pres.ring));
        add_poly1(out, p1_mul(pres, ds_r, vfe));
    }
    return out;
}

// vs . B: vs F = ss(F) vs + ds(F).
OrePoly2 vs_times(const IteratedPresentation& pres, const OrePoly2& b) {
    OrePoly2 out;
    for (const auto& [e, f] : b) {
        add_term2(out, e + 1, ss_apply(pres, f));
        add_term2(out, e, ds_apply(pres, f));
    }
    return out;
}

} // namespace

OrePoly2 iter_monomial(const IteratedPresentation&, const RingElement& r, unsigned f_exp,
                       unsigned s_exp) {
    OrePoly2 p;
    OrePoly1 f;
    add_term1(f, f_exp, r);
    add_term2(p, s_exp, f);
    return p;
}

OrePoly2 iterated_mul(const IteratedPresentation& pres, const OrePoly2& a, const OrePoly2& b) {
    OrePoly2 out;
    for (const auto& [e, f] : a) {
        OrePoly2 shifted = b;
        for (unsigned k = 0; k < e; ++k) shifted = vs_times(pres, shifted);
        for (const auto& [e2, g] : shifted) add_term2(out, e2, p1_mul(pres, f, g));
    }
    return out;
}

ExtElement iterated_to_ext(const AlgebraPtr& alg, const IteratedPresentation& pres,
                           const OrePoly2& p) {
    ExtElement out = ExtElement::zero(alg);
    for (const auto& [s_exp, f] : p) {
        for (const auto& [f_exp, r] : f) {
            if (pres.order == IterOrder::Y1ThenY2) {
                out = out + ExtElement::monomial(alg, r, f_exp, s_exp);
            } else {
                // r y2^{f_exp} y1^{s_exp}, reordered to left-normal form
                ExtElement e = ExtElement::from_ring(alg, r);
                e = ext_mul(e, ExtElement::y2(alg).pow(f_exp));
                e = ext_mul(e, ExtElement::y1(alg).pow(s_exp));
                out = out + e;
            }
        }
    }
    return out;
}

ToIteratedResult to_iterated(const AlgebraPtr& alg) {
    ToIteratedResult res;
    const RingPtr& ring = alg->ring();
    const SigmaPtr sigma = alg->sigma();
    const DeltaPtr delta = alg->delta();
    const Field f = ring->field();

    if (!sigma->entry_zero_on_generators(1, 2))
        res.obstructions_first.push_back("sigma12 != 0");
    if (res.obstructions_first.empty()) {
        IteratedPresentation p;
        p.ring = ring;
        p.order = IterOrder::Y1ThenY2;
        p.sigma_first = [sigma](const RingElement& r) { return sigma->entry(1, 1, r); };
        p.deriv_first = [delta](const RingElement& r) { return delta->entry(1, r); };
        p.sigma_second = [sigma](const RingElement& r) { return sigma->entry(2, 2, r); };
        p.ds_const = [delta](const RingElement& r) { return delta->entry(2, r); };
        p.ds_lin = [sigma](const RingElement& r) { return sigma->entry(2, 1, r); };
        p.slope = alg->p12();
        p.sigma_tail = alg->tau2();
        p.quad = alg->p11();
        p.lin = alg->tau1();
        p.cnst = alg->tau0();
        p.double_flag = alg->double_candidate();
        res.first_order = std::move(p);
    }

    if (!sigma->entry_zero_on_generators(2, 1))
        res.obstructions_second.push_back("sigma21 != 0");
    if (alg->p12().is_zero()) res.obstructions_second.push_back("p12 = 0");
    if (!alg->p11().is_zero()) res.obstructions_second.push_back("p11 != 0");
    if (res.obstructions_second.empty()) {
        IteratedPresentation p;
        p.ring = ring;
        p.order = IterOrder::Y2ThenY1;
        p.sigma_first = [sigma](const RingElement& r) { return sigma->entry(2, 2, r); };
        p.deriv_first = [delta](const RingElement& r) { return delta->entry(2, r); };
        p.sigma_second = [sigma](const RingElement& r) { return sigma->entry(1, 1, r); };
        p.ds_const = [delta](const RingElement& r) { return delta->entry(1, r); };
        p.ds_lin = [sigma](const RingElement& r) { return sigma->entry(1, 2, r); };
        const Scalar pinv = alg->p12().inv();
        p.slope = pinv;
        p.sigma_tail = -alg->tau1().scale(pinv);
        p.quad = Scalar::zero(f);
        p.lin = -alg->tau2().scale(pinv);
        p.cnst = -alg->tau0().scale(pinv);
        p.double_flag = alg->double_candidate();
        res.second_order = std::move(p);
    }
    return res;
}

IteratedPresentation scalar_tail_iterated(const Field& field, const Scalar& p12, const Scalar& p11,
                                          const Scalar& tau0, const Scalar& tau1,
                                          const Scalar& tau2) {
    for (const Scalar* s : {&p12, &p11, &tau0, &tau1, &tau2})
        if (!(s->field() == field)) throw FieldMismatch("scalar-tail data from wrong field");
    RingPtr ground = PresentedRing::make(field, {}, {});
    IteratedPresentation p;
    p.ring = ground;
    p.order = IterOrder::Y1ThenY2;
    auto ident = [](const RingElement& r) { return r; };
    auto zero = [ground](const RingElement&) { return RingElement::zero(ground); };
    p.sigma_first = ident;
    p.deriv_first = zero;
    p.sigma_second = ident;
    p.ds_const = zero;
    p.ds_lin = zero;
    p.slope = p12;
    p.sigma_tail = RingElement::scalar(ground, tau2);
    p.quad = p11;
    p.lin = RingElement::scalar(ground, tau1);
    p.cnst = RingElement::scalar(ground, tau0);
    p.double_flag = !p12.is_zero();
    return p;
}

IterMatchReport iterated_product_match(const AlgebraPtr& alg, const IteratedPresentation& pres,
                                       std::size_t max_degree) {
    IterMatchReport rep;
    const RingPtr& ring = alg->ring();
    const Field f = ring->field();

    struct Sample {
        OrePoly2 iter;
        ExtElement ext;
        std::string label;
    };
    std::vector<Sample> samples;
    for (const Word& w : ring_basis(ring, std::min<std::size_t>(max_degree, 2))) {
        RingElement r = RingElement::monomial(ring, w, Scalar::one(f));
        OrePoly2 ip = iter_monomial(pres, r, 0, 0);
        samples.push_back({ip, iterated_to_ext(alg, pres, ip), r.str()});
    }
    for (unsigned d = 1; d <= max_degree; ++d) {
        for (unsigned i = 0; i <= d; ++i) {
            OrePoly2 ip = iter_monomial(pres, RingElement::one(ring), i, d - i);
            std::ostringstream label;
            label << "vf^" << i << "*vs^" << (d - i);
            samples.push_back({ip, iterated_to_ext(alg, pres, ip), label.str()});
        }
    }

    for (const Sample& a : samples) {
        for (const Sample& b : samples) {
            OrePoly2 prod = iterated_mul(pres, a.iter, b.iter);
            ExtElement via_iter = iterated_to_ext(alg, pres, prod);
            ExtElement via_ext = ext_mul(a.ext, b.ext);
            ++rep.pairs_checked;
            if (via_iter != via_ext) {
                rep.pass = false;
                rep.counterexample = "(" + a.label + ", " + b.label + ")";
                return rep;
            }
        }
    }
    return rep;
}

} // namespace dore
