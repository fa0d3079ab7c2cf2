#include "dore/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "dore/catalog.hpp"
#include "dore/report.hpp"
#include "dore/spec_parser.hpp"

namespace dore {

namespace {

struct Options {
    std::size_t max_degree = 3;
    std::optional<DcvScope> scope;
    std::string format = "structured";
    std::string out_path;
    unsigned threads = 1;
    std::size_t degree = 1; // search degree override
    std::vector<std::string> pool_tokens;
    std::vector<std::string> positional;
};

int parse_flags(const std::vector<std::string>& argv, std::size_t start, Options& o,
                std::ostream& err) {
    for (std::size_t i = start; i < argv.size(); ++i) {
        const std::string& a = argv[i];
        auto need_value = [&](const char* flag) -> const std::string* {
            if (i + 1 >= argv.size()) {
                err << "error: flag " << flag << " needs a value\n";
                return nullptr;
            }
            return &argv[++i];
        };
        if (a == "--max-degree") {
            const std::string* v = need_value("--max-degree");
            if (!v) return exit_spec_error;
            o.max_degree = static_cast<std::size_t>(std::stoul(*v));
        } else if (a == "--scope") {
            const std::string* v = need_value("--scope");
            if (!v) return exit_spec_error;
            if (*v == "scalars")
                o.scope = DcvScope::Scalars;
            else if (*v == "generators")
                o.scope = DcvScope::Generators;
            else if (*v == "basis")
                o.scope = DcvScope::Basis;
            else {
                err << "error: unknown scope '" << *v << "'\n";
                return exit_spec_error;
            }
        } else if (a == "--format") {
            const std::string* v = need_value("--format");
            if (!v) return exit_spec_error;
            if (*v != "text" && *v != "structured") {
                err << "error: unknown format '" << *v << "'\n";
                return exit_spec_error;
            }
            o.format = *v;
        } else if (a == "--out") {
            const std::string* v = need_value("--out");
            if (!v) return exit_spec_error;
            o.out_path = *v;
        } else if (a == "--threads") {
            const std::string* v = need_value("--threads");
            if (!v) return exit_spec_error;
            o.threads = static_cast<unsigned>(std::stoul(*v));
        } else if (a == "--degree") {
            const std::string* v = need_value("--degree");
            if (!v) return exit_spec_error;
            o.degree = static_cast<std::size_t>(std::stoul(*v));
        } else if (a == "--pool") {
            const std::string* v = need_value("--pool");
            if (!v) return exit_spec_error;
            std::stringstream ss(*v);
            std::string tok;
            while (std::getline(ss, tok, ',')) o.pool_tokens.push_back(tok);
        } else if (a.rfind("--", 0) == 0) {
            err << "error: unknown flag '" << a << "'\n";
            return exit_spec_error;
        } else {
            o.positional.push_back(a);
        }
    }
    return exit_ok;
}

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw ResolutionError("cannot open spec file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Text format keeps one headline per document; structured format renders the
// full tree.
void emit(const std::vector<ReportNode>& docs, const Options& o, std::ostream& out) {
    std::string payload;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (i) payload += "---\n";
        payload += docs[i].render();
    }
    if (o.format == "text") {
        // condensed: keep top-level lines only
        std::string condensed;
        std::istringstream is(payload);
        std::string line;
        while (std::getline(is, line))
            if (!line.empty() && line[0] != ' ') condensed += line + "\n";
        payload = condensed;
    }
    if (o.out_path.empty()) {
        out << payload;
        return;
    }
    // Atomic write: temp file in the same directory, then rename.
    std::filesystem::path target(o.out_path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot write report to '" + o.out_path + "'");
        f << payload;
    }
    std::filesystem::rename(tmp, target);
    out << "report written to " << o.out_path << "\n";
}

ReportNode relation_node(const RelationCheck& rc) {
    ReportNode n;
    n.put("name", rc.name);
    n.put("status", rc.pass);
    if (!rc.pass) {
        n.put("counterexample", rc.counterexample);
        n.put("lhs", rc.lhs_value);
        n.put("rhs", rc.rhs_value);
    }
    return n;
}

ReportNode extension_report(const std::string& name, const AlgebraPtr& alg, std::size_t degree,
                            bool& pass) {
    ReportNode doc;
    doc.put("check", "extension-structure");
    doc.put("extension", name);
    doc.put("max-degree", degree);
    doc.put("trimmed", alg->trimmed() ? "yes" : "no");
    doc.put("double-candidate", alg->double_candidate() ? "yes" : "no");

    WellDefinednessReport ws = check_well_defined(*alg->sigma(), degree);
    WellDefinednessReport wd = check_well_defined(*alg->delta(), degree);
    doc.put("sigma-well-defined", ws.pass);
    doc.put("delta-well-defined", wd.pass);

    CompatibilityReport comp = check_compatibility(alg, degree);
    for (const RelationCheck& rc : comp.relations) doc.add_item("relations", relation_node(rc));
    doc.put("compatibility", comp.pass);

    AssociativityReport assoc = check_associativity(alg, degree);
    doc.put("associativity", assoc.pass);
    doc.put("associativity-triples", assoc.triples_checked);
    if (!assoc.pass) doc.put("associativity-counterexample", assoc.counterexample);

    pass = ws.pass && wd.pass && comp.pass && assoc.pass;
    doc.put("result", pass);
    return doc;
}

ReportNode certificate_report(const std::string& name, const DcvCertificate& cert) {
    ReportNode doc;
    doc.put("check", "dcv-certificate");
    doc.put("candidate", name);
    doc.put("max-degree", cert.max_degree);
    doc.put("scope", scope_name(cert.scope));
    doc.put("product-relation", cert.product_relation);
    if (!cert.product_relation) {
        doc.put("product-lhs", cert.product_lhs);
        doc.put("product-rhs", cert.product_rhs);
    }
    doc.put("commutation-relation", cert.commutation);
    for (const DcvWordCheck& wc : cert.words) {
        ReportNode n;
        n.put("word", wc.word);
        n.put("status", wc.pass);
        doc.add_item("commutation-words", std::move(n));
    }
    doc.put("result", cert.pass());
    return doc;
}

SourceData resolved_source(const SpecDocument::DcvDecl& d, const AlgebraPtr& target,
                           std::size_t tau_degree) {
    std::optional<SourceData> src = complete_source(d.source, d.q1, d.q2, target, tau_degree);
    if (!src)
        throw PreconditionFailure("no source parameters satisfy the product relation for dcv '" +
                                  d.name + "'");
    return *src;
}

int cmd_check_extension(const SpecDocument& doc, const Options& o, std::ostream& out) {
    std::vector<std::string> subjects;
    for (const auto& ch : doc.checks)
        if (ch.kind == "extension") subjects.push_back(ch.subject);
    if (subjects.empty())
        for (const auto& e : doc.extensions) subjects.push_back(e.name);

    bool all = true;
    std::vector<ReportNode> docs;
    for (const std::string& name : subjects) {
        std::size_t degree = o.max_degree;
        for (const auto& ch : doc.checks)
            if (ch.kind == "extension" && ch.subject == name && ch.max_degree)
                degree = *ch.max_degree;
        bool pass = false;
        docs.push_back(extension_report(name, doc.extension(name).algebra, degree, pass));
        all = all && pass;
    }
    // basis directives attach the two-sided basis certificate
    for (const auto& ch : doc.checks) {
        if (ch.kind != "basis") continue;
        const std::size_t degree = ch.max_degree.value_or(std::min<std::size_t>(o.max_degree, 2));
        RightBasisReport rb = check_right_basis(doc.extension(ch.subject).algebra, degree);
        ReportNode n;
        n.put("check", "right-basis");
        n.put("extension", ch.subject);
        n.put("max-degree", degree);
        for (const RightBasisDegree& d : rb.degrees) {
            ReportNode dn;
            dn.put("degree", d.degree);
            dn.put("status", d.pass);
            if (!d.pass) dn.put("unreachable", d.missing);
            n.add_item("degrees", std::move(dn));
        }
        n.put("span-equality-degree1", rb.span_equality_degree1);
        n.put("certified-double", rb.certified_double ? "yes" : "no");
        n.put("result", rb.pass);
        all = all && rb.pass;
        docs.push_back(std::move(n));
    }
    emit(docs, o, out);
    return all ? exit_ok : exit_check_failed;
}

int cmd_check_dcv(const SpecDocument& doc, const Options& o, std::ostream& out) {
    std::vector<std::string> subjects;
    for (const auto& ch : doc.checks)
        if (ch.kind == "dcv") subjects.push_back(ch.subject);
    if (subjects.empty())
        for (const auto& d : doc.dcvs) subjects.push_back(d.name);

    bool all = true;
    std::vector<ReportNode> docs;
    for (const std::string& name : subjects) {
        const auto& d = doc.dcv(name);
        std::size_t degree = o.max_degree;
        DcvScope scope = o.scope.value_or(DcvScope::Basis);
        for (const auto& ch : doc.checks) {
            if (ch.kind == "dcv" && ch.subject == name) {
                if (ch.max_degree) degree = *ch.max_degree;
                if (ch.scope && !o.scope) scope = *ch.scope;
            }
        }
        const AlgebraPtr& target = doc.extension(d.target).algebra;
        DcvMatrix m{d.q1, d.q2, resolved_source(d, target, degree)};
        DcvCertificate cert = check_dcv(m, target, degree, scope);
        docs.push_back(certificate_report(name, cert));
        all = all && cert.pass();
    }
    emit(docs, o, out);
    return all ? exit_ok : exit_check_failed;
}

int cmd_to_iterated(const SpecDocument& doc, const Options& o, std::ostream& out) {
    bool all = true;
    std::vector<ReportNode> docs;
    auto present_order = [&](ReportNode& n, const char* key, const IteratedPresentation& p) {
        ReportNode sub;
        sub.put("order", p.order == IterOrder::Y1ThenY2 ? "y1-then-y2" : "y2-then-y1");
        sub.put("slope", p.slope.str());
        sub.put("sigma-tail", p.sigma_tail.str());
        sub.put("deriv-quadratic", p.quad.str());
        sub.put("deriv-linear", p.lin.str());
        sub.put("deriv-constant", p.cnst.str());
        sub.put("double", p.double_flag ? "yes" : "no");
        n.put_child(key, std::move(sub));
    };

    for (const auto& e : doc.extensions) {
        ReportNode n;
        n.put("check", "iterated-presentation");
        n.put("extension", e.name);
        ToIteratedResult r = to_iterated(e.algebra);
        if (r.first_order) {
            present_order(n, "first-order", *r.first_order);
            IterMatchReport m = iterated_product_match(e.algebra, *r.first_order, o.max_degree);
            n.put("first-order-product-match", m.pass);
        } else {
            for (const std::string& ob : r.obstructions_first) {
                ReportNode onode;
                onode.put("condition", ob);
                n.add_item("first-order-obstructions", std::move(onode));
            }
        }
        if (r.second_order) {
            present_order(n, "second-order", *r.second_order);
            IterMatchReport m = iterated_product_match(e.algebra, *r.second_order, o.max_degree);
            n.put("second-order-product-match", m.pass);
        } else {
            for (const std::string& ob : r.obstructions_second) {
                ReportNode onode;
                onode.put("condition", ob);
                n.add_item("second-order-obstructions", std::move(onode));
            }
        }
        n.put("result", r.any());
        all = all && r.any();
        docs.push_back(std::move(n));
    }

    for (const auto& d : doc.dcvs) {
        ReportNode n;
        n.put("check", "dcv-to-iterated");
        n.put("candidate", d.name);
        const AlgebraPtr& target = doc.extension(d.target).algebra;
        DcvMatrix m{d.q1, d.q2, resolved_source(d, target, o.max_degree)};
        HomToIteratedResult r = hom_to_iterated(m, target);
        for (const auto& [name, ok] : r.conditions) {
            ReportNode cn;
            cn.put("condition", name);
            cn.put("status", ok);
            n.add_item("conditions", std::move(cn));
        }
        if (r.pass || r.lower_triangular_variant) {
            n.put("cv-image-sigma", r.ss_q1.str());
            n.put("cv-image-deriv", r.ds_q1.str());
            n.put("cv-relation", r.relation_check);
        }
        n.put("lower-triangular-variant", r.lower_triangular_variant ? "yes" : "no");
        n.put("result", r.pass);
        all = all && r.pass;
        docs.push_back(std::move(n));
    }
    emit(docs, o, out);
    return all ? exit_ok : exit_check_failed;
}

int cmd_search_dcv(const SpecDocument& doc, const Options& o, std::ostream& out) {
    std::vector<ReportNode> docs;
    for (const auto& s : doc.searches) {
        const AlgebraPtr& target = doc.extension(s.target).algebra;
        SearchSpec spec;
        std::size_t degree = o.pool_tokens.empty() && o.degree == 1 ? s.degree : o.degree;
        std::vector<Scalar> pool = s.pool;
        if (!o.pool_tokens.empty()) {
            pool.clear();
            for (const std::string& t : o.pool_tokens)
                pool.push_back(Scalar::of(doc.field, BigInt(t)));
        }
        auto slots_for = [&](const std::vector<ExpPair>& monos) {
            std::vector<CandidateSlot> slots;
            if (monos.empty()) return default_slots(degree);
            for (const ExpPair& m : monos) slots.push_back({m, CoeffSpace::PoolTimesWordsLe1});
            return slots;
        };
        spec.q1_slots = slots_for(s.q1_monomials);
        spec.q2_slots = slots_for(s.q2_monomials);
        spec.max_degree = o.max_degree;
        spec.scope = o.scope.value_or(DcvScope::Basis);
        SourceTemplateData data = s.source;
        spec.source.derive = [data](const ExtElement&, const ExtElement&) {
            return std::optional<SourceTemplateData>(data);
        };
        std::vector<DcvMatrix> hits = search_dcv(spec, target, pool);

        ReportNode n;
        n.put("check", "dcv-search");
        n.put("search", s.name);
        n.put("target", s.target);
        n.put("degree-bound", degree);
        n.put("pool-size", pool.size());
        n.put("hits", hits.size());
        for (const DcvMatrix& h : hits) {
            ReportNode hn;
            hn.put("q1", h.q1.str());
            hn.put("q2", h.q2.str());
            hn.put("p12", h.source.p12.str());
            hn.put("p11", h.source.p11.str());
            hn.put("tau0", h.source.tau0.str());
            hn.put("tau1", h.source.tau1.str());
            hn.put("tau2", h.source.tau2.str());
            n.add_item("matches", std::move(hn));
        }
        docs.push_back(std::move(n));
    }
    emit(docs, o, out);
    return exit_ok;
}

int cmd_graded(const SpecDocument& doc, const Options& o, std::ostream& out) {
    bool all = true;
    std::vector<ReportNode> docs;
    for (const auto& e : doc.extensions) {
        ReportNode n;
        n.put("check", "associated-graded");
        n.put("extension", e.name);
        try {
            AlgebraPtr g = associated_graded(e.algebra);
            n.put("applicable", "yes");
            n.put("p12", g->p12().str());
            n.put("p11", g->p11().str());
            CompatibilityReport comp = check_compatibility(g, o.max_degree);
            n.put("compatibility", comp.pass);
            n.put("result", comp.pass);
            all = all && comp.pass;
        } catch (const NotApplicable& ex) {
            n.put("applicable", "no");
            n.put("reason", ex.what());
            n.put("result", false);
            all = false;
        }
        docs.push_back(std::move(n));
    }
    emit(docs, o, out);
    return all ? exit_ok : exit_check_failed;
}

int cmd_change_basis(const SpecDocument& doc, const Options& o, std::ostream& out) {
    bool all = true;
    std::vector<ReportNode> docs;
    for (const auto& e : doc.extensions) {
        ReportNode n;
        n.put("check", "change-basis");
        n.put("extension", e.name);
        try {
            ChangeBasisResult cb = change_basis(e.algebra);
            n.put("case", static_cast<std::size_t>(cb.case_id));
            n.put("new-y1", cb.new_y1.str());
            n.put("new-y2", cb.new_y2.str());
            n.put("new-p12", cb.algebra->p12().str());
            n.put("new-p11", cb.algebra->p11().str());
            CompatibilityReport comp = check_compatibility(cb.algebra, o.max_degree);
            n.put("compatibility", comp.pass);
            ExtElement lhs = ext_mul(cb.new_y2, cb.new_y1);
            ExtElement rhs = ext_mul(cb.new_y1, cb.new_y2).scale(cb.algebra->p12()) +
                             ext_mul(cb.new_y1, cb.new_y1).scale(cb.algebra->p11()) +
                             cb.new_y1.left_mul_ring(cb.algebra->tau1()) +
                             cb.new_y2.left_mul_ring(cb.algebra->tau2()) +
                             ExtElement::from_ring(e.algebra, cb.algebra->tau0());
            const bool recovered = lhs == rhs;
            n.put("relation-recovered", recovered);
            n.put("result", comp.pass && recovered);
            all = all && comp.pass && recovered;
        } catch (const NotApplicable& ex) {
            n.put("applicable", "no");
            n.put("reason", ex.what());
            n.put("result", false);
            all = false;
        }
        docs.push_back(std::move(n));
    }
    emit(docs, o, out);
    return all ? exit_ok : exit_check_failed;
}

int cmd_catalog(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    Options o;
    if (argv.size() < 2 || argv[1] != "verify") {
        err << "error: usage: catalog verify [flags]\n";
        return exit_spec_error;
    }
    int rc = parse_flags(argv, 2, o, err);
    if (rc != exit_ok) return rc;
    if (!o.positional.empty()) {
        err << "error: catalog verify takes no positional arguments\n";
        return exit_spec_error;
    }
    VerifyOutcome v = verify_all(o.max_degree, o.threads);
    emit({v.report}, o, out);
    return v.pass() ? exit_ok : exit_check_failed;
}

} // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    if (argv.empty()) {
        err << "usage: dore <check-extension|check-dcv|to-iterated|search-dcv|graded|change-basis|"
               "catalog> ...\n";
        return exit_spec_error;
    }
    const std::string& cmd = argv[0];
    try {
        if (cmd == "catalog") return cmd_catalog(argv, out, err);

        const std::vector<std::string> known = {"check-extension", "check-dcv", "to-iterated",
                                                "search-dcv",      "graded",    "change-basis"};
        bool ok = false;
        for (const auto& k : known) ok = ok || cmd == k;
        if (!ok) {
            err << "error: unknown subcommand '" << cmd << "'\n";
            return exit_spec_error;
        }
        Options o;
        int rc = parse_flags(argv, 1, o, err);
        if (rc != exit_ok) return rc;
        if (o.positional.size() != 1) {
            err << "error: " << cmd << " needs exactly one spec file\n";
            return exit_spec_error;
        }
        SpecDocument doc = parse_spec(slurp(o.positional[0]));
        if (cmd == "check-extension") return cmd_check_extension(doc, o, out);
        if (cmd == "check-dcv") return cmd_check_dcv(doc, o, out);
        if (cmd == "to-iterated") return cmd_to_iterated(doc, o, out);
        if (cmd == "search-dcv") return cmd_search_dcv(doc, o, out);
        if (cmd == "graded") return cmd_graded(doc, o, out);
        if (cmd == "change-basis") return cmd_change_basis(doc, o, out);
        return exit_spec_error;
    } catch (const SyntaxError& e) {
        err << "error: " << e.what() << "\n";
        return exit_spec_error;
    } catch (const ResolutionError& e) {
        err << "error: " << e.what() << "\n";
        return exit_spec_error;
    } catch (const ArityError& e) {
        err << "error: " << e.what() << "\n";
        return exit_spec_error;
    } catch (const NonTerminating& e) {
        err << "error: " << e.what() << "\n";
        return exit_internal_cap;
    } catch (const IterationCap& e) {
        err << "error: " << e.what() << "\n";
        return exit_internal_cap;
    } catch (const PoolTooLarge& e) {
        err << "error: " << e.what() << "\n";
        return exit_internal_cap;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_spec_error;
    }
}

} // namespace dore
