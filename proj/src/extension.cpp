#include "dore/extension.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <tuple>

namespace dore {

DoubleOreAlgebra::DoubleOreAlgebra(RingPtr ring, SigmaPtr sigma, DeltaPtr delta, Scalar p12,
                                   Scalar p11, RingElement tau0, RingElement tau1, RingElement tau2)
    : ring_(std::move(ring)), sigma_(std::move(sigma)), delta_(std::move(delta)),
      p12_(std::move(p12)), p11_(std::move(p11)), tau0_(std::move(tau0)), tau1_(std::move(tau1)),
      tau2_(std::move(tau2)) {
    trimmed_ = delta_->is_zero_on_generators() && tau0_.is_zero() && tau1_.is_zero() && tau2_.is_zero();
    double_candidate_ = !p12_.is_zero();
}

static void validate_algebra_data(const RingPtr& ring, const SigmaPtr& sigma, const DeltaPtr& delta,
                                  const Scalar& p12, const Scalar& p11, const RingElement& tau0,
                                  const RingElement& tau1, const RingElement& tau2) {
    if (sigma->ring().get() != ring.get() || delta->ring().get() != ring.get())
        throw RingMismatch("sigma/delta over wrong ring");
    if (delta->sigma().get() != sigma.get())
        throw Error("delta must be bound to the algebra's sigma");
    for (const RingElement* t : {&tau0, &tau1, &tau2})
        if (t->ring().get() != ring.get()) throw RingMismatch("tail element from wrong ring");
    if (!(p12.field() == ring->field()) || !(p11.field() == ring->field()))
        throw FieldMismatch("parameter scalar from wrong field");
}

AlgebraPtr DoubleOreAlgebra::make(RingPtr ring, SigmaPtr sigma, DeltaPtr delta, Scalar p12,
                                  Scalar p11, RingElement tau0, RingElement tau1, RingElement tau2,
                                  std::size_t wd_degree) {
    validate_algebra_data(ring, sigma, delta, p12, p11, tau0, tau1, tau2);
    WellDefinednessReport ws = check_well_defined(*sigma, wd_degree);
    if (!ws.pass)
        throw WellDefinednessFailure("sigma violates ring relations: " + ws.violations.front().where);
    WellDefinednessReport wd = check_well_defined(*delta, wd_degree);
    if (!wd.pass)
        throw WellDefinednessFailure("delta violates ring relations: " + wd.violations.front().where);
    return AlgebraPtr(new DoubleOreAlgebra(std::move(ring), std::move(sigma), std::move(delta),
                                           std::move(p12), std::move(p11), std::move(tau0),
                                           std::move(tau1), std::move(tau2)));
}

AlgebraPtr DoubleOreAlgebra::make_unvalidated(RingPtr ring, SigmaPtr sigma, DeltaPtr delta,
                                              Scalar p12, Scalar p11, RingElement tau0,
                                              RingElement tau1, RingElement tau2) {
    validate_algebra_data(ring, sigma, delta, p12, p11, tau0, tau1, tau2);
    return AlgebraPtr(new DoubleOreAlgebra(std::move(ring), std::move(sigma), std::move(delta),
                                           std::move(p12), std::move(p11), std::move(tau0),
                                           std::move(tau1), std::move(tau2)));
}

// ---------------------------------------------------------------------------
// Left-normal-form arithmetic.
//
// Products are computed one variable at a time over merged coefficient
// maps: pushing y_k to the right through a ring element uses the
// commutation row of sigma/delta, and pushing y2 past a power of y1 uses
// the memoized reorder table for y2 y1^c. Intermediate results stay merged,
// so no branch duplication survives a step.
// ---------------------------------------------------------------------------

namespace {

using TermMap = DoubleOreAlgebra::TermMap;

void add_term(TermMap& m, unsigned i, unsigned j, const RingElement& r) {
    if (r.is_zero()) return;
    auto [it, fresh] = m.emplace(ExpPair{i, j}, r);
    if (!fresh) {
        it->second = it->second + r;
        if (it->second.is_zero()) m.erase(it);
    }
}

// E |-> y1 . E
TermMap y1_times(const DoubleOreAlgebra& alg, const TermMap& e) {
    TermMap out;
    for (const auto& [ij, s] : e) {
        const Mat2 im = alg.sigma()->apply(s);
        const Col2 dm = alg.delta()->apply(s);
        add_term(out, ij.first + 1, ij.second, im.e11);
        add_term(out, ij.first, ij.second, dm.c1);
        if (!im.e12.is_zero()) {
            // sigma12(s) y2 y1^i y2^j
            for (const auto& [kl, t] : alg.reorder_table(ij.first))
                add_term(out, kl.first, kl.second + ij.second, im.e12 * t);
        }
    }
    return out;
}

// E |-> y2 . E
TermMap y2_times(const DoubleOreAlgebra& alg, const TermMap& e) {
    TermMap out;
    for (const auto& [ij, s] : e) {
        const Mat2 im = alg.sigma()->apply(s);
        const Col2 dm = alg.delta()->apply(s);
        add_term(out, ij.first + 1, ij.second, im.e21);
        add_term(out, ij.first, ij.second, dm.c2);
        if (!im.e22.is_zero()) {
            for (const auto& [kl, t] : alg.reorder_table(ij.first))
                add_term(out, kl.first, kl.second + ij.second, im.e22 * t);
        }
    }
    return out;
}

} // namespace

const DoubleOreAlgebra::TermMap& DoubleOreAlgebra::reorder_table(unsigned c) const {
    {
        std::lock_guard<std::mutex> lock(reorder_mu_);
        auto it = reorder_.find(c);
        if (it != reorder_.end()) return it->second;
    }
    if (c > 4096) throw IterationCap("reorder table degree out of range");
    TermMap result;
    if (c == 0) {
        add_term(result, 0, 1, RingElement::one(ring_));
    } else {
        // y2 y1^c = p12 y1 (y2 y1^{c-1}) + p11 y1^{c+1} + tau1 y1^c
        //           + tau2 (y2 y1^{c-1}) + tau0 y1^{c-1}.
        // The recursive y1-push only needs tables at strictly smaller
        // exponents: the sole y1^c term of the inner table carries a scalar
        // coefficient, which sigma sends to a diagonal matrix.
        const TermMap inner = reorder_table(c - 1);
        if (!p12_.is_zero()) {
            for (const auto& [ij, t] : y1_times(*this, inner))
                add_term(result, ij.first, ij.second, t.scale(p12_));
        }
        if (!p11_.is_zero()) add_term(result, c + 1, 0, RingElement::scalar(ring_, p11_));
        add_term(result, c, 0, tau1_);
        for (const auto& [ij, t] : inner) add_term(result, ij.first, ij.second, tau2_ * t);
        add_term(result, c - 1, 0, tau0_);
    }
    std::lock_guard<std::mutex> lock(reorder_mu_);
    return reorder_.emplace(c, std::move(result)).first->second;
}

ExtElement ExtElement::zero(AlgebraPtr alg) {
    ExtElement e;
    e.alg_ = std::move(alg);
    return e;
}

ExtElement ExtElement::one(AlgebraPtr alg) {
    const Field f = alg->field();
    return from_scalar(std::move(alg), Scalar::one(f));
}

ExtElement ExtElement::y1(AlgebraPtr alg) {
    ExtElement e = zero(alg);
    e.insert_term(1, 0, RingElement::one(alg->ring()));
    return e;
}

ExtElement ExtElement::y2(AlgebraPtr alg) {
    ExtElement e = zero(alg);
    e.insert_term(0, 1, RingElement::one(alg->ring()));
    return e;
}

ExtElement ExtElement::monomial(AlgebraPtr alg, const RingElement& r, unsigned i, unsigned j) {
    if (r.ring().get() != alg->ring().get()) throw RingMismatch("coefficient from wrong ring");
    ExtElement e = zero(std::move(alg));
    e.insert_term(i, j, r);
    return e;
}

ExtElement ExtElement::from_ring(AlgebraPtr alg, const RingElement& r) {
    return monomial(std::move(alg), r, 0, 0);
}

ExtElement ExtElement::from_scalar(AlgebraPtr alg, const Scalar& s) {
    const RingPtr ring = alg->ring();
    return from_ring(std::move(alg), RingElement::scalar(ring, s));
}

bool ExtElement::is_ring_element() const {
    for (const auto& [ij, r] : terms_)
        if (ij.first != 0 || ij.second != 0) return false;
    return true;
}

RingElement ExtElement::ring_part() const {
    auto it = terms_.find(ExpPair{0, 0});
    if (it == terms_.end()) return RingElement::zero(alg_->ring());
    return it->second;
}

RingElement ExtElement::coeff(unsigned i, unsigned j) const {
    auto it = terms_.find(ExpPair{i, j});
    if (it == terms_.end()) return RingElement::zero(alg_->ring());
    return it->second;
}

unsigned ExtElement::total_degree() const {
    unsigned d = 0;
    for (const auto& [ij, r] : terms_) d = std::max(d, ij.first + ij.second);
    return d;
}

unsigned ExtElement::deg_y1() const {
    unsigned d = 0;
    for (const auto& [ij, r] : terms_) d = std::max(d, ij.first);
    return d;
}

unsigned ExtElement::deg_y2() const {
    unsigned d = 0;
    for (const auto& [ij, r] : terms_) d = std::max(d, ij.second);
    return d;
}

void ExtElement::insert_term(unsigned i, unsigned j, const RingElement& r) {
    if (r.is_zero()) return;
    auto [it, fresh] = terms_.emplace(ExpPair{i, j}, r);
    if (!fresh) {
        it->second = it->second + r;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void ExtElement::check_same_algebra(const ExtElement& o) const {
    if (alg_.get() != o.alg_.get()) throw RingMismatch("elements of different extensions");
}

ExtElement ExtElement::operator+(const ExtElement& o) const {
    check_same_algebra(o);
    ExtElement r = *this;
    for (const auto& [ij, c] : o.terms_) r.insert_term(ij.first, ij.second, c);
    return r;
}

ExtElement ExtElement::operator-(const ExtElement& o) const { return *this + (-o); }

ExtElement ExtElement::operator-() const {
    ExtElement r = *this;
    for (auto& [ij, c] : r.terms_) c = -c;
    return r;
}

ExtElement ExtElement::scale(const Scalar& s) const {
    ExtElement r = zero(alg_);
    if (s.is_zero()) return r;
    for (const auto& [ij, c] : terms_) r.terms_.emplace(ij, c.scale(s));
    return r;
}

ExtElement ExtElement::left_mul_ring(const RingElement& re) const {
    if (re.ring().get() != alg_->ring().get()) throw RingMismatch("coefficient from wrong ring");
    ExtElement r = zero(alg_);
    for (const auto& [ij, c] : terms_) r.insert_term(ij.first, ij.second, re * c);
    return r;
}

ExtElement ExtElement::operator*(const ExtElement& o) const { return ext_mul(*this, o); }

ExtElement ExtElement::pow(unsigned e) const {
    ExtElement acc = one(alg_);
    for (unsigned k = 0; k < e; ++k) acc = ext_mul(acc, *this);
    return acc;
}

bool ExtElement::operator==(const ExtElement& o) const {
    check_same_algebra(o);
    return terms_ == o.terms_;
}

ExtElement ext_mul(const ExtElement& a, const ExtElement& b) {
    if (a.algebra().get() != b.algebra().get()) throw RingMismatch("elements of different extensions");
    const AlgebraPtr& alg = a.algebra();
    ExtElement out = ExtElement::zero(alg);
    for (const auto& [ija, ra] : a.terms()) {
        TermMap cur = b.terms();
        for (unsigned k = 0; k < ija.second; ++k) cur = y2_times(*alg, cur);
        for (unsigned k = 0; k < ija.first; ++k) cur = y1_times(*alg, cur);
        for (const auto& [ij, s] : cur) out.insert_term(ij.first, ij.second, ra * s);
    }
    return out;
}

std::string ExtElement::str() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<ExpPair, RingElement>> sorted(terms_.begin(), terms_.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        const auto da = a.first.first + a.first.second;
        const auto db = b.first.first + b.first.second;
        return std::tie(da, a.first.first, a.first.second) <
               std::tie(db, b.first.first, b.first.second);
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [ij, r] : sorted) {
        if (!first) os << " + ";
        first = false;
        std::string mono;
        {
            std::ostringstream ms;
            bool mfirst = true;
            if (ij.first > 0) {
                ms << "y1";
                if (ij.first > 1) ms << "^" << ij.first;
                mfirst = false;
            }
            if (ij.second > 0) {
                if (!mfirst) ms << "*";
                ms << "y2";
                if (ij.second > 1) ms << "^" << ij.second;
            }
            mono = ms.str();
        }
        if (mono.empty()) {
            os << r.str();
        } else if (r.term_count() == 1 && r.is_scalar() && r.scalar_part().is_one()) {
            os << mono;
        } else if (r.term_count() > 1) {
            os << "(" << r.str() << ")*" << mono;
        } else {
            os << r.str() << "*" << mono;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Compatibility: the six coefficient-matching identities of y2(y1 r) =
// (y2 y1) r, evaluated on basis words. sigma_{i0} stands for delta_i and the
// tau factors multiply on the side the expansion produces them.
// ---------------------------------------------------------------------------

CompatibilityReport check_compatibility(const AlgebraPtr& alg, std::size_t max_degree) {
    const RingPtr& ring = alg->ring();
    const SigmaMatrix& sg = *alg->sigma();
    const DeltaColumn& dl = *alg->delta();
    const Scalar &p12 = alg->p12(), &p11 = alg->p11();
    const RingElement &t0 = alg->tau0(), &t1 = alg->tau1(), &t2 = alg->tau2();

    auto S = [&](int i, int j, const RingElement& r) { return sg.entry(i, j, r); };
    auto D = [&](int i, const RingElement& r) { return dl.entry(i, r); };

    struct Rel {
        std::string name;
        std::function<RingElement(const RingElement&)> lhs, rhs;
    };

    std::vector<Rel> rels;
    rels.push_back({"coeff-y1^2",
                    [&](const RingElement& r) { return S(2, 1, S(1, 1, r)) + S(2, 2, S(1, 1, r)).scale(p11); },
                    [&](const RingElement& r) {
                        return S(1, 1, S(1, 1, r)).scale(p11) + S(1, 2, S(1, 1, r)).scale(p11 * p11) +
                               S(1, 1, S(2, 1, r)).scale(p12) + S(1, 2, S(2, 1, r)).scale(p11 * p12);
                    }});
    rels.push_back({"coeff-y1y2",
                    [&](const RingElement& r) { return S(2, 1, S(1, 2, r)) + S(2, 2, S(1, 1, r)).scale(p12); },
                    [&](const RingElement& r) {
                        return S(1, 1, S(1, 2, r)).scale(p11) + S(1, 2, S(1, 1, r)).scale(p11 * p12) +
                               S(1, 1, S(2, 2, r)).scale(p12) + S(1, 2, S(2, 1, r)).scale(p12 * p12);
                    }});
    rels.push_back({"coeff-y2^2",
                    [&](const RingElement& r) { return S(2, 2, S(1, 2, r)); },
                    [&](const RingElement& r) {
                        return S(1, 2, S(1, 2, r)).scale(p11) + S(1, 2, S(2, 2, r)).scale(p12);
                    }});
    rels.push_back({"coeff-y1",
                    [&](const RingElement& r) {
                        return D(2, S(1, 1, r)) + S(2, 1, D(1, r)) + S(2, 2, S(1, 1, r)) * t1;
                    },
                    [&](const RingElement& r) {
                        RingElement a = D(1, S(1, 1, r)) + S(1, 1, D(1, r)) + S(1, 2, S(1, 1, r)) * t1;
                        RingElement b = D(1, S(2, 1, r)) + S(1, 1, D(2, r)) + S(1, 2, S(2, 1, r)) * t1;
                        return a.scale(p11) + b.scale(p12) + t1 * S(1, 1, r) + t2 * S(2, 1, r);
                    }});
    rels.push_back({"coeff-y2",
                    [&](const RingElement& r) {
                        return D(2, S(1, 2, r)) + S(2, 2, D(1, r)) + S(2, 2, S(1, 1, r)) * t2;
                    },
                    [&](const RingElement& r) {
                        RingElement a = D(1, S(1, 2, r)) + S(1, 2, D(1, r)) + S(1, 2, S(1, 1, r)) * t2;
                        RingElement b = D(1, S(2, 2, r)) + S(1, 2, D(2, r)) + S(1, 2, S(2, 1, r)) * t2;
                        return a.scale(p11) + b.scale(p12) + t1 * S(1, 2, r) + t2 * S(2, 2, r);
                    }});
    rels.push_back({"coeff-1",
                    [&](const RingElement& r) { return D(2, D(1, r)) + S(2, 2, S(1, 1, r)) * t0; },
                    [&](const RingElement& r) {
                        RingElement a = D(1, D(1, r)) + S(1, 2, S(1, 1, r)) * t0;
                        RingElement b = D(1, D(2, r)) + S(1, 2, S(2, 1, r)) * t0;
                        return a.scale(p11) + b.scale(p12) + t1 * D(1, r) + t2 * D(2, r) + t0 * r;
                    }});

    CompatibilityReport rep;
    rep.max_degree = max_degree;
    const std::vector<Word> basis = ring_basis(ring, max_degree);
    for (const Rel& rel : rels) {
        RelationCheck rc;
        rc.name = rel.name;
        for (const Word& w : basis) {
            RingElement r = RingElement::monomial(ring, w, Scalar::one(ring->field()));
            RingElement l = rel.lhs(r);
            RingElement rr = rel.rhs(r);
            if (l != rr) {
                rc.pass = false;
                rc.counterexample = r.str();
                rc.lhs_value = l.str();
                rc.rhs_value = rr.str();
                break;
            }
        }
        rep.pass = rep.pass && rc.pass;
        rep.relations.push_back(std::move(rc));
    }
    return rep;
}

AssociativityReport check_associativity(const AlgebraPtr& alg, std::size_t max_degree) {
    AssociativityReport rep;
    rep.max_degree = max_degree;
    const RingPtr& ring = alg->ring();

    std::vector<ExtElement> sample;
    for (const Word& w : ring_basis(ring, max_degree))
        sample.push_back(
            ExtElement::from_ring(alg, RingElement::monomial(ring, w, Scalar::one(ring->field()))));
    for (unsigned d = 1; d <= max_degree; ++d)
        for (unsigned i = 0; i <= d; ++i)
            sample.push_back(ExtElement::monomial(alg, RingElement::one(ring), i, d - i));

    const std::size_t n = sample.size();
    std::vector<ExtElement> products(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) products[a * n + b] = ext_mul(sample[a], sample[b]);

    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                ExtElement left = ext_mul(products[a * n + b], sample[c]);
                ExtElement right = ext_mul(sample[a], products[b * n + c]);
                ++rep.triples_checked;
                if (left != right) {
                    rep.pass = false;
                    rep.counterexample = "(" + sample[a].str() + ", " + sample[b].str() + ", " +
                                         sample[c].str() + ")";
                    return rep;
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Basis change and associated graded.
// ---------------------------------------------------------------------------

static SigmaPtr build_sigma(const RingPtr& ring,
                            const std::function<RingElement(int, int, std::size_t)>& image) {
    std::array<std::array<std::vector<RingElement>, 2>, 2> images;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (std::size_t g = 0; g < ring->generator_count(); ++g)
                images[i][j].push_back(image(i + 1, j + 1, g));
    return SigmaMatrix::make(ring, std::move(images));
}

static DeltaPtr build_delta(const RingPtr& ring, const SigmaPtr& sigma,
                            const std::function<RingElement(int, std::size_t)>& image) {
    std::array<std::vector<RingElement>, 2> images;
    for (int i = 0; i < 2; ++i)
        for (std::size_t g = 0; g < ring->generator_count(); ++g)
            images[i].push_back(image(i + 1, g));
    return DeltaColumn::make(ring, sigma, std::move(images));
}

ChangeBasisResult change_basis(const AlgebraPtr& alg) {
    const RingPtr& ring = alg->ring();
    const Field f = ring->field();
    const SigmaMatrix& sg = *alg->sigma();
    const DeltaColumn& dl = *alg->delta();
    const Scalar one = Scalar::one(f);

    if (alg->p11().is_zero() && alg->p12() == one)
        throw NotApplicable("p11 = 0 and p12 = 1: nothing to change");

    ChangeBasisResult out;
    if (!alg->p11().is_zero() && alg->p12() == one) {
        out.case_id = 1;
        const Scalar c = alg->p11();
        const Scalar cinv = c.inv();
        SigmaPtr ns = build_sigma(ring, [&](int i, int j, std::size_t g) {
            RingElement im = sg.image(i, j, g);
            if (i == 1 && j == 2) return im.scale(c);
            if (i == 2 && j == 1) return im.scale(cinv);
            return im;
        });
        DeltaPtr nd = build_delta(ring, ns, [&](int i, std::size_t g) {
            RingElement im = dl.image(i, g);
            return i == 1 ? im.scale(c) : im;
        });
        out.algebra = DoubleOreAlgebra::make(ring, ns, nd, one, one, alg->tau0().scale(c),
                                             alg->tau1(), alg->tau2().scale(c));
        out.shift = Scalar::zero(f);
        out.new_y1 = ExtElement::y1(alg).scale(c);
        out.new_y2 = ExtElement::y2(alg);
        return out;
    }

    out.case_id = 2;
    const Scalar q = alg->p11() / (alg->p12() - one);
    SigmaPtr ns = build_sigma(ring, [&](int i, int j, std::size_t g) {
        const RingElement s11 = sg.image(1, 1, g), s12 = sg.image(1, 2, g);
        const RingElement s21 = sg.image(2, 1, g), s22 = sg.image(2, 2, g);
        if (i == 1 && j == 1) return s11 - s12.scale(q);
        if (i == 1 && j == 2) return s12;
        if (i == 2 && j == 1) return s21 + (s11 - s22).scale(q) - s12.scale(q * q);
        return s22 + s12.scale(q);
    });
    DeltaPtr nd = build_delta(ring, ns, [&](int i, std::size_t g) {
        if (i == 1) return dl.image(1, g);
        return dl.image(2, g) + dl.image(1, g).scale(q);
    });
    out.algebra = DoubleOreAlgebra::make(ring, ns, nd, alg->p12(), Scalar::zero(f), alg->tau0(),
                                         alg->tau1() - alg->tau2().scale(q), alg->tau2());
    out.shift = q;
    out.new_y1 = ExtElement::y1(alg);
    out.new_y2 = ExtElement::y2(alg) + ExtElement::y1(alg).scale(q);
    return out;
}

AlgebraPtr associated_graded(const AlgebraPtr& alg) {
    const RingPtr& ring = alg->ring();
    const Field f = ring->field();
    const Scalar one = Scalar::one(f);
    if (alg->p12() == one) throw NotApplicable("associated graded requires p12 != 1");
    const SigmaMatrix& sg = *alg->sigma();
    const Scalar q = alg->p11() / (alg->p12() - one);
    SigmaPtr ns = build_sigma(ring, [&](int i, int j, std::size_t g) {
        const RingElement s11 = sg.image(1, 1, g), s12 = sg.image(1, 2, g);
        const RingElement s21 = sg.image(2, 1, g), s22 = sg.image(2, 2, g);
        if (i == 1 && j == 1) return s11 - s12.scale(q);
        if (i == 1 && j == 2) return s12;
        if (i == 2 && j == 1) return s21 + (s11 - s22).scale(q) - s12.scale(q * q);
        return s22 + s12.scale(q);
    });
    DeltaPtr nd = DeltaColumn::zero(ring, ns);
    const RingElement z = RingElement::zero(ring);
    return DoubleOreAlgebra::make(ring, ns, nd, alg->p12(), Scalar::zero(f), z, z, z);
}

// ---------------------------------------------------------------------------
// Bounded right-basis certificate.
// ---------------------------------------------------------------------------

namespace {

// Coordinates are ordered with higher y-degree first, so eliminations pivot
// on leading coefficients before constant terms; the canonical completion
// in the search relies on this.
struct CoordKey {
    Word w;
    unsigned i, j;
    bool operator<(const CoordKey& o) const {
        const unsigned da = i + j, db = o.i + o.j;
        if (da != db) return da > db;
        if (i != o.i) return i > o.i;
        if (j != o.j) return j > o.j;
        return word_less(w, o.w);
    }
};

struct ExtVectorizer {
    std::map<CoordKey, std::size_t> index;

    void collect(const ExtElement& e) {
        for (const auto& [ij, r] : e.terms())
            for (const auto& [w, c] : r.terms())
                index.emplace(CoordKey{w, ij.first, ij.second}, 0);
    }
    void freeze() {
        std::size_t n = 0;
        for (auto& [k, v] : index) v = n++;
    }
    std::size_t dim() const { return index.size(); }
    void fill_column(ScalarMatrix& m, std::size_t col, const ExtElement& e) const {
        for (const auto& [ij, r] : e.terms())
            for (const auto& [w, c] : r.terms())
                m.at(index.at(CoordKey{w, ij.first, ij.second}), col) = c;
    }
};

bool spans(const std::vector<ExtElement>& columns, const std::vector<ExtElement>& targets,
           const Field& f, std::string* first_missing) {
    ExtVectorizer vec;
    for (const auto& e : columns) vec.collect(e);
    for (const auto& e : targets) vec.collect(e);
    vec.freeze();
    ScalarMatrix a(vec.dim(), columns.size(), f);
    for (std::size_t c = 0; c < columns.size(); ++c) vec.fill_column(a, c, columns[c]);
    ScalarMatrix b(vec.dim(), targets.size(), f);
    for (std::size_t c = 0; c < targets.size(); ++c) vec.fill_column(b, c, targets[c]);
    LinearSolution sol = solve_linear(a, b);
    if (sol.consistent) return true;
    if (first_missing) {
        // Re-solve one target at a time to name the first unreachable one.
        for (std::size_t c = 0; c < targets.size(); ++c) {
            ScalarMatrix t(vec.dim(), 1, f);
            vec.fill_column(t, 0, targets[c]);
            if (!solve_linear(a, t).consistent) {
                *first_missing = targets[c].str();
                break;
            }
        }
    }
    return false;
}

} // namespace

ExtLinearSystem::Result ExtLinearSystem::solve(const Field& f) const {
    ExtVectorizer vec;
    for (const auto& e : columns_) vec.collect(e);
    for (const auto& e : targets_) vec.collect(e);
    vec.freeze();
    ScalarMatrix a(vec.dim(), columns_.size(), f);
    for (std::size_t c = 0; c < columns_.size(); ++c) vec.fill_column(a, c, columns_[c]);
    ScalarMatrix b(vec.dim(), targets_.size(), f);
    for (std::size_t c = 0; c < targets_.size(); ++c) vec.fill_column(b, c, targets_[c]);
    LinearSolution sol = solve_linear(a, b);
    Result out;
    out.consistent = sol.consistent;
    if (sol.consistent) {
        out.coefficients.assign(targets_.size(), std::vector<Scalar>(columns_.size(), Scalar::zero(f)));
        for (std::size_t t = 0; t < targets_.size(); ++t)
            for (std::size_t c = 0; c < columns_.size(); ++c)
                out.coefficients[t][c] = sol.solution.at(c, t);
    }
    return out;
}

std::vector<bool> ExtLinearSystem::solve_each(const Field& f,
                                              std::vector<std::vector<Scalar>>* coeffs) const {
    std::vector<bool> reached;
    if (coeffs) coeffs->clear();
    for (const auto& t : targets_) {
        ExtLinearSystem single;
        for (const auto& c : columns_) single.add_column(c);
        single.add_target(t);
        Result r = single.solve(f);
        reached.push_back(r.consistent);
        if (coeffs) coeffs->push_back(r.consistent ? r.coefficients[0] : std::vector<Scalar>{});
    }
    return reached;
}

RightBasisReport check_right_basis(const AlgebraPtr& alg, std::size_t max_degree) {
    RightBasisReport rep;
    rep.max_degree = max_degree;
    const RingPtr& ring = alg->ring();
    const Field f = ring->field();
    const std::vector<Word> words = ring_basis(ring, max_degree);

    for (std::size_t d = 0; d <= max_degree; ++d) {
        std::vector<ExtElement> columns;
        for (unsigned i = 0; i <= d; ++i)
            for (unsigned j = 0; i + j <= d; ++j)
                for (const Word& w : words) {
                    // y2^i y1^j w, rewritten to left-normal form
                    ExtElement y2i = ExtElement::y2(alg).pow(i);
                    ExtElement y1j = ExtElement::y1(alg).pow(j);
                    ExtElement we = ExtElement::from_ring(
                        alg, RingElement::monomial(ring, w, Scalar::one(f)));
                    columns.push_back(ext_mul(ext_mul(y2i, y1j), we));
                }
        std::vector<ExtElement> targets;
        for (unsigned i = 0; i <= d; ++i)
            for (unsigned j = 0; i + j <= d; ++j)
                for (const Word& w : words)
                    targets.push_back(ExtElement::monomial(
                        alg, RingElement::monomial(ring, w, Scalar::one(f)), i, j));
        RightBasisDegree rd;
        rd.degree = d;
        rd.pass = spans(columns, targets, f, &rd.missing);
        rep.pass = rep.pass && rd.pass;
        rep.degrees.push_back(std::move(rd));
    }

    // Degree-one span equality: y1 R + y2 R + R vs R y1 + R y2 + R with ring
    // words up to degree max_degree.
    {
        std::vector<ExtElement> left, right;
        for (const Word& w : words) {
            ExtElement we = ExtElement::from_ring(alg, RingElement::monomial(ring, w, Scalar::one(f)));
            left.push_back(ext_mul(ExtElement::y1(alg), we));
            left.push_back(ext_mul(ExtElement::y2(alg), we));
            left.push_back(we);
            right.push_back(ExtElement::monomial(alg, RingElement::monomial(ring, w, Scalar::one(f)), 1, 0));
            right.push_back(ExtElement::monomial(alg, RingElement::monomial(ring, w, Scalar::one(f)), 0, 1));
            right.push_back(we);
        }
        rep.span_equality_degree1 = spans(right, left, f, nullptr) && spans(left, right, f, nullptr);
    }
    rep.certified_double = rep.pass && rep.span_equality_degree1 && alg->double_candidate();
    return rep;
}

} // namespace dore
