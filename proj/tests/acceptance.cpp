// Acceptance suite: replays the structural and change-of-variable checks
// that gate a release, one line per criterion. Everything is exact; there
// are no tolerances anywhere.

#include <functional>
#include <random>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dore/catalog.hpp"
#include "dore/commands.hpp"

using namespace dore;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, const std::function<bool()>& body) {
    bool ok = false;
    std::string error;
    try {
        ok = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    if (!ok) ++failures;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << number << ". " << title;
    if (!error.empty()) std::cout << " (error: " << error << ")";
    std::cout << "\n" << std::flush;
}

SourceData own_source(const AlgebraPtr& alg) {
    return SourceData{alg->sigma(), alg->delta(), alg->p12(), alg->p11(),
                      alg->tau0(), alg->tau1(), alg->tau2()};
}

DcvMatrix rescaling(const AlgebraPtr& alg, const Scalar& lambda) {
    return DcvMatrix{ExtElement::y1(alg).scale(lambda), ExtElement::y2(alg).scale(lambda),
                     own_source(alg)};
}

std::vector<Scalar> field_pool(const Field& f, long upto) {
    std::vector<Scalar> pool;
    for (long v = 0; v < upto; ++v) pool.push_back(Scalar::of(f, v));
    return pool;
}

// --- criterion bodies ------------------------------------------------------

bool h_structural() {
    for (long f : {1L, 2L, 5L}) {
        AlgebraPtr h = build_algebra_h(Field::rationals(), f);
        if (!check_compatibility(h, 3).pass) return false;
        if (!check_associativity(h, 3).pass) return false;
    }
    return true;
}

bool h_nakayama() {
    AlgebraPtr h = build_algebra_h(Field::rationals(), 1);
    const Field f = h->field();
    for (long l : {2L, -1L, 7L}) {
        const Scalar lambda = Scalar::of(f, l);
        DcvMatrix cand = rescaling(h, lambda);
        if (!(cand.source.p12 == Scalar::of(f, -1))) return false;
        if (!check_dcv(cand, h, 3, DcvScope::Basis).pass()) return false;
        TrimmedDcvReport tr = check_trimmed_dcv(cand.source, h, {lambda}, {lambda}, 3);
        if (!tr.left_side || !tr.right_side || !tr.agree) return false;
    }
    return true;
}

bool n_nakayama() {
    const Field q = Field::rationals();
    for (const auto& [f, g] : std::vector<std::pair<long, long>>{{1, 2}, {2, 1}, {0, 3}}) {
        AlgebraPtr n = build_algebra_n(q, f, g);
        const Scalar lambda = Scalar::of(q, g * g - f * f);
        DcvMatrix cand = rescaling(n, lambda);
        if (!check_dcv(cand, n, 3, DcvScope::Basis).pass()) return false;
    }
    // the degenerate instantiation is rejected at construction
    try {
        build_algebra_n(q, 1, 1);
        return false;
    } catch (const PreconditionFailure&) {
    }
    return true;
}

bool d_to_e() {
    Fixture fx = get_fixture("dcv-DtoE");
    if (fx.instances.size() != 2) return false; // F5 with p = 2 and F13 with p = 5
    for (const FixtureInstance& inst : fx.instances) {
        if (!(inst.dcv->source.p12 == Scalar::of(inst.algebra->field(), -1))) return false;
        if (!check_dcv(*inst.dcv, inst.algebra, 3, DcvScope::Scalars).pass()) return false;
        HomToIteratedResult res = hom_to_iterated(*inst.dcv, inst.algebra);
        if (!res.pass || !res.violated.empty() || res.relation_check != "pass") return false;
        // every named condition is reported satisfied
        if (res.conditions.size() != 7) return false;
        for (const auto& [name, ok] : res.conditions)
            if (!ok) return false;
    }
    return true;
}

bool iterated_presentability() {
    Fixture fx = get_fixture("subcase-4.1.1");
    for (const FixtureInstance& inst : fx.instances) {
        ToIteratedResult r = to_iterated(inst.algebra);
        if (!r.first_order || r.first_order->order != IterOrder::Y1ThenY2) return false;
        if (!iterated_product_match(inst.algebra, *r.first_order, 3).pass) return false;
    }
    AlgebraPtr h = build_algebra_h(Field::rationals(), 1);
    ToIteratedResult r = to_iterated(h);
    if (r.first_order || r.second_order) return false;
    bool cites_12 = false, cites_21 = false;
    for (const std::string& o : r.obstructions_first) cites_12 = cites_12 || o == "sigma12 != 0";
    for (const std::string& o : r.obstructions_second) cites_21 = cites_21 || o == "sigma21 != 0";
    return cites_12 && cites_21;
}

bool basis_change_roundtrip() {
    Fixture fx = get_fixture("scalar-identity");
    // instances 0..2 carry (p12, p11) = (1,2), (2,1), (3,5)
    for (std::size_t k = 0; k < 3; ++k) {
        const AlgebraPtr& alg = fx.instances[k].algebra;
        ChangeBasisResult cb = change_basis(alg);
        if (!check_compatibility(cb.algebra, 3).pass) return false;
        ExtElement lhs = ext_mul(cb.new_y2, cb.new_y1);
        ExtElement rhs = ext_mul(cb.new_y1, cb.new_y2).scale(cb.algebra->p12()) +
                         ext_mul(cb.new_y1, cb.new_y1).scale(cb.algebra->p11()) +
                         cb.new_y1.left_mul_ring(cb.algebra->tau1()) +
                         cb.new_y2.left_mul_ring(cb.algebra->tau2()) +
                         ExtElement::from_ring(alg, cb.algebra->tau0());
        if (!(lhs == rhs)) return false;
    }
    return true;
}

// Independent straight-line verdict for one affine-plus-constant candidate
// with the displayed row source, used to re-count the search hits.
bool row2_candidate_holds(const AlgebraPtr& target, const Scalar& a1, const RingElement& a0,
                          const RingElement& c) {
    const RingPtr& r = target->ring();
    ExtElement q1 = ExtElement::y1(target).scale(a1) + ExtElement::from_ring(target, a0);
    ExtElement q2 = ExtElement::from_ring(target, c);
    if (!(ext_mul(q2, q1) == q1.left_mul_ring(c))) return false;
    for (const Word& w : ring_basis(r, 2)) {
        RingElement rr = RingElement::monomial(r, w, Scalar::one(target->field()));
        ExtElement re = ExtElement::from_ring(target, rr);
        RingElement s11 = target->sigma()->entry(1, 1, rr);
        if (!(ext_mul(q1, re) == q1.left_mul_ring(s11) +
                                     ExtElement::from_ring(target, a0 * rr - s11 * a0)))
            return false;
        if (!(ext_mul(q2, re) ==
              q2.left_mul_ring(rr) + ExtElement::from_ring(target, c * rr - rr * c)))
            return false;
    }
    return true;
}

bool table_oracle() {
    for (long mod : {3L, 5L}) {
        const Field f = Field::prime(mod);
        std::vector<Scalar> pool = field_pool(f, mod);

        // affine-plus-constant row over a sigma12 = 0 target
        AlgebraPtr t1 = get_fixture("table1-row-2").instances.at(mod == 3 ? 0 : 1).algebra;
        std::vector<DcvMatrix> hits = search_dcv(table1_row2_search_spec(t1), t1, pool);
        if (hits.empty()) return false;
        for (const DcvMatrix& hit : hits) {
            if (!hit.source.p12.is_zero() || !hit.source.p11.is_zero()) return false;
            if (!hit.source.tau2.is_zero() || !hit.source.tau0.is_zero()) return false;
            if (!(hit.source.tau1 == hit.q2.ring_part())) return false;
        }
        std::size_t expected = 0;
        {
            const RingPtr& r = t1->ring();
            std::vector<RingElement> consts{RingElement::zero(r)};
            for (const Scalar& s : pool)
                if (!s.is_zero())
                    for (const Word& w : ring_basis(r, 1))
                        consts.push_back(RingElement::monomial(r, w, s));
            for (const Scalar& a1 : pool) {
                if (a1.is_zero()) continue;
                for (const RingElement& a0 : consts)
                    for (const RingElement& c : consts) {
                        if (c.is_zero()) continue;
                        if (row2_candidate_holds(t1, a1, a0, c)) ++expected;
                    }
            }
        }
        if (hits.size() != expected) return false;

        // affine pair row over the equal-entry target
        AlgebraPtr t2 = get_fixture("table2-target").instances.at(mod == 3 ? 0 : 1).algebra;
        std::vector<DcvMatrix> hits2 = search_dcv(table2_row3_search_spec(t2), t2, pool);
        if (hits2.empty()) return false;
        std::size_t equal_leads = 0;
        for (const DcvMatrix& hit : hits2) {
            const Scalar a1 = hit.q1.coeff(1, 0).scalar_part();
            const Scalar b1 = hit.q2.coeff(0, 1).scalar_part();
            const RingElement a0 = hit.q1.coeff(0, 0);
            const RingElement b0 = hit.q2.coeff(0, 0);
            const Scalar p11 = b1 * a1.inv();
            if (!hit.source.p12.is_zero() || !hit.source.tau2.is_zero()) return false;
            if (!(hit.source.p11 == p11)) return false;
            if (!(hit.source.tau1 == b0 - a0.scale(p11))) return false;
            if (!(a1 == b1)) return false;
            ++equal_leads;
        }
        // independent count: each equal-lead pair with any generator
        // constants verifies; nothing else does
        std::size_t nonzero_scalars = static_cast<std::size_t>(mod - 1);
        std::size_t const_count = 1 + 2 * nonzero_scalars; // 0 plus s*x1, s*x2
        std::size_t expected2 = nonzero_scalars * const_count * const_count;
        if (hits2.size() != expected2 || equal_leads != hits2.size()) return false;
    }
    return true;
}

bool negative_controls() {
    AlgebraPtr h = build_algebra_h(Field::rationals(), 1);
    AlgebraPtr bad = DoubleOreAlgebra::make(h->ring(), h->sigma(), h->delta(), h->p12(), h->p11(),
                                            RingElement::one(h->ring()), h->tau1(), h->tau2());
    CompatibilityReport comp = check_compatibility(bad, 3);
    bool tail_relation_failed = false;
    for (const RelationCheck& rc : comp.relations)
        if (!rc.pass && (rc.name == "coeff-y1" || rc.name == "coeff-y2" || rc.name == "coeff-1"))
            tail_relation_failed = true;
    if (!tail_relation_failed) return false;
    if (check_associativity(bad, 3).pass) return false;

    DcvMatrix perturbed = rescaling(h, Scalar::of(h->field(), 2));
    perturbed.source.tau1 = RingElement::one(h->ring());
    if (check_dcv(perturbed, h, 3, DcvScope::Basis).product_relation) return false;

    DcvMatrix square{ExtElement::y1(h).pow(2), ExtElement::y2(h), own_source(h)};
    if (iso_degree_check(square).pass) return false;
    return true;
}

bool equivalence_property() {
    std::mt19937 rng(777);
    const std::vector<std::string> algebra_fixtures = {
        "H", "subcase-4.1.1", "D", "E", "N", "table2-target", "scalar-identity", "jordan-delta"};
    for (const std::string& name : algebra_fixtures) {
        const AlgebraPtr base = get_fixture(name).instances.front().algebra;
        const Field f = base->field();
        const RingPtr& r = base->ring();
        if (check_compatibility(base, 2).pass != check_associativity(base, 2).pass) return false;
        for (int rep = 0; rep < 20; ++rep) {
            Scalar p12 = base->p12(), p11 = base->p11();
            RingElement t0 = base->tau0(), t1 = base->tau1(), t2 = base->tau2();
            const Scalar bump = Scalar::of(f, static_cast<long>(rng() % 4) + 1);
            switch (rng() % 5) {
            case 0: p12 = p12 + bump; break;
            case 1: p11 = p11 + bump; break;
            case 2: t0 = t0 + RingElement::scalar(r, bump); break;
            case 3: t1 = t1 + RingElement::generator(r, 0).scale(bump); break;
            default: t2 = t2 + RingElement::generator(r, rng() % r->generator_count()).scale(bump);
            }
            AlgebraPtr mutant = DoubleOreAlgebra::make_unvalidated(r, base->sigma(), base->delta(),
                                                                   p12, p11, t0, t1, t2);
            if (check_compatibility(mutant, 2).pass != check_associativity(mutant, 2).pass)
                return false;
        }
    }
    return true;
}

bool determinism() {
    auto run_verify = [](const std::vector<std::string>& extra) {
        std::ostringstream out, err;
        std::vector<std::string> argv{"catalog", "verify", "--format", "structured"};
        argv.insert(argv.end(), extra.begin(), extra.end());
        int code = run_command(argv, out, err);
        return std::make_pair(code, out.str());
    };
    auto a = run_verify({});
    auto b = run_verify({});
    auto c = run_verify({"--threads", "4"});
    return a.first == exit_ok && a == b && a.second == c.second && c.first == exit_ok;
}

} // namespace

int main() {
    criterion(1, "trimmed anti-diagonal family: structure checks pass at degree 3 for f in {1,2,5}",
              h_structural);
    criterion(2, "rescaling candidates certify and the trimmed characterisation agrees (lambda in {2,-1,7})",
              h_nakayama);
    criterion(3, "matrix-defined family: rescaling candidates certify; f = g is rejected",
              n_nakayama);
    criterion(4, "generator pair into the companion algebra: scalar-scope certificate and translation",
              d_to_e);
    criterion(5, "iterated presentability: one family presents in the y1-y2 order, the other cites both obstructions",
              iterated_presentability);
    criterion(6, "basis change round-trip recovers the defining relation for three parameter pairs",
              basis_change_roundtrip);
    criterion(7, "search oracle over F3 and F5 matches the independent re-enumeration and the row columns",
              table_oracle);
    criterion(8, "negative controls: corrupted tail, perturbed source tail, degree-two candidate",
              negative_controls);
    criterion(9, "compatibility and associativity verdicts agree on catalog algebras and 20 perturbations each",
              equivalence_property);
    criterion(10, "catalog verify reports are byte-identical across runs and thread counts",
              determinism);

    if (failures == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << failures << " criterion(s) failed\n";
    return 1;
}
