#include "dore/spec_parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dore {

namespace {

struct Token {
    enum Kind { Ident, Number, Symbol, Flag, End } kind = End;
    std::string text;
    int line = 0;
    int col = 0;
};

struct Tokenizer {
    std::vector<Token> tokens;

    explicit Tokenizer(const std::string& text) {
        int line = 1, col = 1;
        std::size_t i = 0;
        auto advance = [&](std::size_t n) {
            for (std::size_t k = 0; k < n; ++k) {
                if (text[i + k] == '\n') {
                    ++line;
                    col = 1;
                } else {
                    ++col;
                }
            }
            i += n;
        };
        while (i < text.size()) {
            const char c = text[i];
            if (c == '#') {
                while (i < text.size() && text[i] != '\n') advance(1);
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance(1);
                continue;
            }
            Token t;
            t.line = line;
            t.col = col;
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t j = i;
                while (j < text.size() &&
                       (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' ||
                        text[j] == '.'))
                    ++j;
                t.kind = Token::Ident;
                t.text = text.substr(i, j - i);
                advance(j - i);
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
                t.kind = Token::Number;
                t.text = text.substr(i, j - i);
                advance(j - i);
            } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
                std::size_t j = i + 2;
                while (j < text.size() &&
                       (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '-'))
                    ++j;
                t.kind = Token::Flag;
                t.text = text.substr(i, j - i);
                advance(j - i);
            } else if (std::string("=(),+-*^</").find(c) != std::string::npos) {
                t.kind = Token::Symbol;
                t.text = std::string(1, c);
                advance(1);
            } else {
                throw SyntaxError(line, col, std::string("unexpected character '") + c + "'");
            }
            tokens.push_back(std::move(t));
        }
        Token end;
        end.kind = Token::End;
        end.line = line;
        end.col = col;
        tokens.push_back(end);
    }
};

struct Cursor {
    const std::vector<Token>* toks;
    std::size_t pos = 0;

    const Token& peek() const { return (*toks)[pos]; }
    const Token& get() { return (*toks)[pos++]; }
    bool at_end() const { return peek().kind == Token::End; }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        throw SyntaxError(t.line, t.col,
                          "expected " + expected +
                              (t.kind == Token::End ? " but reached end of input"
                                                    : " but found '" + t.text + "'"));
    }
    const Token& expect_ident(const std::string& what) {
        if (peek().kind != Token::Ident) fail(what);
        return get();
    }
    void expect_symbol(const std::string& s) {
        if (peek().kind != Token::Symbol || peek().text != s) fail("'" + s + "'");
        get();
    }
    bool accept_symbol(const std::string& s) {
        if (peek().kind == Token::Symbol && peek().text == s) {
            get();
            return true;
        }
        return false;
    }
    bool accept_ident(const std::string& s) {
        if (peek().kind == Token::Ident && peek().text == s) {
            get();
            return true;
        }
        return false;
    }
};

BigInt parse_unsigned(Cursor& c) {
    if (c.peek().kind != Token::Number) c.fail("a number");
    return BigInt(c.get().text);
}

Scalar parse_scalar(Cursor& c, const Field& f) {
    bool neg = c.accept_symbol("-");
    BigInt num = parse_unsigned(c);
    if (neg) num = -num;
    if (c.accept_symbol("/")) {
        BigInt den = parse_unsigned(c);
        if (!f.is_rational()) {
            Scalar d = Scalar::of(f, den);
            return Scalar::of(f, num) * d.inv();
        }
        return Scalar::rational(num, den);
    }
    return Scalar::of(f, num);
}

// --- expression evaluation ------------------------------------------------

struct RingCtx {
    RingPtr ring;
    using Value = RingElement;
    Value from_scalar(const Scalar& s) const { return RingElement::scalar(ring, s); }
    Value from_name(const std::string& name, const Token& t) const {
        for (std::size_t g = 0; g < ring->generator_count(); ++g)
            if (ring->generator_name(g) == name) return RingElement::generator(ring, g);
        if (name == "y1" || name == "y2")
            throw SyntaxError(t.line, t.col, "extension variable '" + name + "' in a ring context");
        throw ResolutionError("unknown name '" + name + "' at " + std::to_string(t.line) + ":" +
                              std::to_string(t.col));
    }
    static Value mul(const Value& a, const Value& b) { return a * b; }
    static Value add(const Value& a, const Value& b) { return a + b; }
    static Value neg(const Value& a) { return -a; }
    Value pow(const Value& a, unsigned e) const {
        Value r = from_scalar(Scalar::one(ring->field()));
        for (unsigned k = 0; k < e; ++k) r = r * a;
        return r;
    }
    const Field& field() const { return ring->field(); }
};

struct ExtCtx {
    AlgebraPtr alg;
    using Value = ExtElement;
    Value from_scalar(const Scalar& s) const { return ExtElement::from_scalar(alg, s); }
    Value from_name(const std::string& name, const Token& t) const {
        if (name == "y1") return ExtElement::y1(alg);
        if (name == "y2") return ExtElement::y2(alg);
        const RingPtr& ring = alg->ring();
        for (std::size_t g = 0; g < ring->generator_count(); ++g)
            if (ring->generator_name(g) == name)
                return ExtElement::from_ring(alg, RingElement::generator(ring, g));
        throw ResolutionError("unknown name '" + name + "' at " + std::to_string(t.line) + ":" +
                              std::to_string(t.col));
    }
    static Value mul(const Value& a, const Value& b) { return ext_mul(a, b); }
    static Value add(const Value& a, const Value& b) { return a + b; }
    static Value neg(const Value& a) { return -a; }
    Value pow(const Value& a, unsigned e) const { return a.pow(e); }
    const Field& field() const { return alg->field(); }
};

template <typename Ctx> typename Ctx::Value parse_expression(Cursor& c, const Ctx& ctx);

template <typename Ctx> typename Ctx::Value parse_factor(Cursor& c, const Ctx& ctx) {
    using V = typename Ctx::Value;
    if (c.accept_symbol("(")) {
        V inner = parse_expression(c, ctx);
        c.expect_symbol(")");
        if (c.accept_symbol("^")) {
            BigInt e = parse_unsigned(c);
            return ctx.pow(inner, static_cast<unsigned>(e.convert_to<unsigned long>()));
        }
        return inner;
    }
    if (c.peek().kind == Token::Number) {
        Scalar s = parse_scalar(c, ctx.field());
        return ctx.from_scalar(s);
    }
    if (c.peek().kind == Token::Ident) {
        const Token t = c.get();
        V v = ctx.from_name(t.text, t);
        if (c.accept_symbol("^")) {
            BigInt e = parse_unsigned(c);
            return ctx.pow(v, static_cast<unsigned>(e.convert_to<unsigned long>()));
        }
        return v;
    }
    c.fail("a factor");
}

template <typename Ctx> typename Ctx::Value parse_term(Cursor& c, const Ctx& ctx) {
    typename Ctx::Value v = parse_factor(c, ctx);
    while (c.accept_symbol("*")) v = Ctx::mul(v, parse_factor(c, ctx));
    return v;
}

template <typename Ctx> typename Ctx::Value parse_expression(Cursor& c, const Ctx& ctx) {
    bool neg = false;
    if (c.accept_symbol("-")) neg = true;
    typename Ctx::Value v = parse_term(c, ctx);
    if (neg) v = Ctx::neg(v);
    while (true) {
        if (c.accept_symbol("+")) {
            v = Ctx::add(v, parse_term(c, ctx));
        } else if (c.accept_symbol("-")) {
            v = Ctx::add(v, Ctx::neg(parse_term(c, ctx)));
        } else {
            break;
        }
    }
    return v;
}

// Leading word of a relation: product of generators only.
Word parse_lhs_word(Cursor& c, const RingPtr& ring) {
    Word w;
    while (true) {
        const Token& t = c.peek();
        if (t.kind != Token::Ident) c.fail("a generator");
        bool found = false;
        for (std::size_t g = 0; g < ring->generator_count(); ++g) {
            if (ring->generator_name(g) == t.text) {
                c.get();
                unsigned e = 1;
                if (c.accept_symbol("^"))
                    e = static_cast<unsigned>(parse_unsigned(c).convert_to<unsigned long>());
                for (unsigned k = 0; k < e; ++k)
                    w.letters.push_back(static_cast<std::uint32_t>(g));
                found = true;
                break;
            }
        }
        if (!found) throw ResolutionError("unknown generator '" + t.text + "'");
        if (!c.accept_symbol("*")) break;
    }
    return w;
}

} // namespace

const SpecDocument::ExtensionDecl& SpecDocument::extension(const std::string& name) const {
    for (const auto& e : extensions)
        if (e.name == name) return e;
    throw ResolutionError("unknown extension '" + name + "'");
}

const SpecDocument::DcvDecl& SpecDocument::dcv(const std::string& name) const {
    for (const auto& d : dcvs)
        if (d.name == name) return d;
    throw ResolutionError("unknown dcv candidate '" + name + "'");
}

const SpecDocument::SearchDecl& SpecDocument::search(const std::string& name) const {
    for (const auto& s : searches)
        if (s.name == name) return s;
    throw ResolutionError("unknown search '" + name + "'");
}

namespace {

struct ParserState {
    SpecDocument doc;
    bool field_seen = false;
    std::vector<std::string> gen_names;
    std::vector<RewriteRule> pending_rules;
    bool ring_built = false;

    void require_field(const Token& t) const {
        if (!field_seen) throw SyntaxError(t.line, t.col, "'field' must come first");
    }
    void build_ring_if_needed() {
        if (ring_built || doc.ring_name.empty()) return;
        doc.ring = PresentedRing::make(doc.field, gen_names, pending_rules);
        ring_built = true;
    }
    RingPtr ring(const Token& t) {
        if (doc.ring_name.empty()) throw SyntaxError(t.line, t.col, "no ring declared yet");
        build_ring_if_needed();
        return doc.ring;
    }
};

void parse_map_statement(ParserState& st, Cursor& c) {
    const Token name_tok = c.expect_ident("a map name like sigma11 or delta1");
    const std::string& full = name_tok.text;
    std::size_t digits = 0;
    while (digits < full.size() &&
           std::isdigit(static_cast<unsigned char>(full[full.size() - 1 - digits])))
        ++digits;
    if (digits == 0 || digits > 2 || digits == full.size())
        throw SyntaxError(name_tok.line, name_tok.col,
                          "map name must end in a component index (11/12/21/22 or 1/2)");
    const std::string family = full.substr(0, full.size() - digits);
    const RingPtr ring = st.ring(name_tok);
    const std::size_t gens = ring->generator_count();

    const Token gen_tok = c.expect_ident("a generator name");
    std::size_t gen = gens;
    for (std::size_t g = 0; g < gens; ++g)
        if (ring->generator_name(g) == gen_tok.text) gen = g;
    if (gen == gens) throw ResolutionError("unknown generator '" + gen_tok.text + "'");
    c.expect_symbol("=");
    RingElement image = parse_expression(c, RingCtx{ring});

    if (digits == 2) {
        const int i = full[full.size() - 2] - '0';
        const int j = full[full.size() - 1] - '0';
        if (i < 1 || i > 2 || j < 1 || j > 2)
            throw ArityError("matrix component must be 11, 12, 21 or 22 in '" + full + "'");
        auto& fam = st.doc.sigma_families[family];
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                if (fam.images[a][b].empty())
                    fam.images[a][b].assign(gens, RingElement::zero(ring));
        fam.images[i - 1][j - 1][gen] = image;
    } else {
        const int i = full[full.size() - 1] - '0';
        if (i < 1 || i > 2) throw ArityError("column component must be 1 or 2 in '" + full + "'");
        auto& fam = st.doc.delta_families[family];
        for (int a = 0; a < 2; ++a)
            if (fam.images[a].empty()) fam.images[a].assign(gens, RingElement::zero(ring));
        fam.images[i - 1][gen] = image;
    }
}

SigmaPtr build_sigma_family(ParserState& st, const std::string& family, const Token& t) {
    auto it = st.doc.sigma_families.find(family);
    if (it == st.doc.sigma_families.end())
        throw ResolutionError("unknown sigma family '" + family + "' at line " +
                              std::to_string(t.line));
    if (it->second.built) return it->second.built;
    const RingPtr ring = st.ring(t);
    std::array<std::array<std::vector<RingElement>, 2>, 2> images;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            images[a][b] = it->second.images[a][b];
            if (images[a][b].empty())
                images[a][b].assign(ring->generator_count(), RingElement::zero(ring));
        }
    it->second.built = SigmaMatrix::make(ring, std::move(images));
    return it->second.built;
}

DeltaPtr build_delta_family(ParserState& st, const std::string& family, const SigmaPtr& sigma,
                            const Token& t) {
    const RingPtr ring = st.ring(t);
    if (family == "zero") return DeltaColumn::zero(ring, sigma);
    auto it = st.doc.delta_families.find(family);
    if (it == st.doc.delta_families.end())
        throw ResolutionError("unknown delta family '" + family + "' at line " +
                              std::to_string(t.line));
    std::array<std::vector<RingElement>, 2> images;
    for (int a = 0; a < 2; ++a) {
        images[a] = it->second.images[a];
        if (images[a].empty()) images[a].assign(ring->generator_count(), RingElement::zero(ring));
    }
    return DeltaColumn::make(ring, sigma, std::move(images));
}

SourceTemplateData parse_source_clause(ParserState& st, Cursor& c, const Token& t,
                                       std::string& sigma_family, std::string& delta_family) {
    SourceTemplateData data;
    sigma_family.clear();
    delta_family = "zero";
    const RingPtr ring = st.ring(t);
    if (!c.accept_ident("source")) c.fail("'source'");
    c.expect_symbol("(");
    bool first = true;
    while (!c.accept_symbol(")")) {
        if (!first) c.expect_symbol(",");
        first = false;
        const Token key = c.expect_ident("a source key");
        c.expect_symbol("=");
        auto solve = [&]() { return c.accept_ident("solve"); };
        if (key.text == "p12") {
            if (!solve()) data.p12 = parse_scalar(c, st.doc.field);
        } else if (key.text == "p11") {
            if (!solve()) data.p11 = parse_scalar(c, st.doc.field);
        } else if (key.text == "tau0") {
            if (!solve()) data.tau0 = parse_expression(c, RingCtx{ring});
        } else if (key.text == "tau1") {
            if (!solve()) data.tau1 = parse_expression(c, RingCtx{ring});
        } else if (key.text == "tau2") {
            if (!solve()) data.tau2 = parse_expression(c, RingCtx{ring});
        } else if (key.text == "sigma") {
            sigma_family = c.expect_ident("a sigma family name").text;
        } else if (key.text == "delta") {
            delta_family = c.expect_ident("a delta family name or zero").text;
        } else {
            throw SyntaxError(key.line, key.col, "unknown source key '" + key.text + "'");
        }
    }
    if (sigma_family.empty())
        throw SyntaxError(t.line, t.col, "source(...) must name a sigma family");
    data.sigma = build_sigma_family(st, sigma_family, t);
    data.delta = build_delta_family(st, delta_family, data.sigma, t);
    return data;
}

std::vector<ExpPair> parse_shape_monomials(Cursor& c) {
    std::vector<ExpPair> monos;
    while (true) {
        unsigned i = 0, j = 0;
        if (c.peek().kind == Token::Number) {
            const Token t = c.get();
            if (t.text != "1") throw SyntaxError(t.line, t.col, "shape terms are monomials or 1");
        } else {
            while (c.peek().kind == Token::Ident &&
                   (c.peek().text == "y1" || c.peek().text == "y2")) {
                const Token t = c.get();
                unsigned e = 1;
                if (c.accept_symbol("^"))
                    e = static_cast<unsigned>(parse_unsigned(c).convert_to<unsigned long>());
                if (t.text == "y1")
                    i += e;
                else
                    j += e;
                if (!c.accept_symbol("*")) break;
            }
        }
        monos.push_back({i, j});
        if (!c.accept_symbol("+")) break;
    }
    return monos;
}

} // namespace

SpecDocument parse_spec(const std::string& text) {
    Tokenizer tz(text);
    ParserState st;

    // Line-oriented grammar: group the token stream into one statement per
    // line, each closed by its own End token.
    std::vector<std::vector<Token>> lines;
    for (const Token& t : tz.tokens) {
        if (t.kind == Token::End) break;
        if (lines.empty() || lines.back().front().line != t.line) lines.push_back({});
        lines.back().push_back(t);
    }
    for (auto& line : lines) {
        Token end;
        end.kind = Token::End;
        end.line = line.back().line;
        end.col = line.back().col + static_cast<int>(line.back().text.size());
        line.push_back(end);
    }

    if (lines.empty()) throw SyntaxError(1, 1, "expected 'field'");

    for (auto& line : lines) {
        Cursor c{&line, 0};
        const Token head = c.expect_ident("a statement keyword");
        if (head.text == "field") {
            if (st.field_seen) throw SyntaxError(head.line, head.col, "duplicate field declaration");
            const Token which = c.expect_ident("Q or F");
            if (which.text == "Q") {
                st.doc.field = Field::rationals();
            } else if (which.text == "F") {
                st.doc.field = Field::prime(parse_unsigned(c));
            } else {
                throw SyntaxError(which.line, which.col, "field must be Q or F <p>");
            }
            st.field_seen = true;
        } else if (head.text == "ring") {
            st.require_field(head);
            if (!st.doc.ring_name.empty())
                throw SyntaxError(head.line, head.col, "only one ring per spec");
            st.doc.ring_name = c.expect_ident("a ring name").text;
            if (!c.accept_ident("gens")) c.fail("'gens'");
            while (c.peek().kind == Token::Ident && c.peek().text != "order")
                st.gen_names.push_back(c.get().text);
            if (c.accept_ident("order")) {
                // precedence declaration: must list the generators in their
                // declared order (the term order is fixed by position)
                std::vector<std::string> order;
                order.push_back(c.expect_ident("a generator").text);
                while (c.accept_symbol("<")) order.push_back(c.expect_ident("a generator").text);
                if (order != st.gen_names)
                    throw ResolutionError(
                        "order clause must list the generators in declaration order");
            }
        } else if (head.text == "rel") {
            st.require_field(head);
            if (st.ring_built)
                throw SyntaxError(head.line, head.col, "relations must precede map declarations");
            if (st.doc.ring_name.empty())
                throw SyntaxError(head.line, head.col, "no ring declared yet");
            // Temporary free ring over the declared generators for parsing.
            RingPtr free_ring = PresentedRing::make(st.doc.field, st.gen_names, {});
            Word lhs = parse_lhs_word(c, free_ring);
            c.expect_symbol("=");
            RingElement rhs = parse_expression(c, RingCtx{free_ring});
            RewriteRule rule;
            rule.lhs = lhs;
            for (const auto& [w, s] : rhs.terms()) rule.rhs.push_back({s, w});
            st.pending_rules.push_back(std::move(rule));
        } else if (head.text == "map") {
            st.require_field(head);
            parse_map_statement(st, c);
        } else if (head.text == "param") {
            st.require_field(head);
            const Token which = c.expect_ident("p12 or p11");
            c.expect_symbol("=");
            Scalar v = parse_scalar(c, st.doc.field);
            if (which.text == "p12")
                st.doc.p12 = v;
            else if (which.text == "p11")
                st.doc.p11 = v;
            else
                throw SyntaxError(which.line, which.col, "param must be p12 or p11");
        } else if (head.text == "tau0" || head.text == "tau1" || head.text == "tau2") {
            st.require_field(head);
            c.expect_symbol("=");
            const RingPtr ring = st.ring(head);
            st.doc.tau[head.text[3] - '0'] = parse_expression(c, RingCtx{ring});
        } else if (head.text == "extension") {
            st.require_field(head);
            SpecDocument::ExtensionDecl decl;
            decl.name = c.expect_ident("an extension name").text;
            c.expect_symbol("=");
            if (!c.accept_ident("double")) c.fail("'double'");
            c.expect_symbol("(");
            const Token rname = c.expect_ident("the ring name");
            if (rname.text != st.doc.ring_name)
                throw ResolutionError("unknown ring '" + rname.text + "'");
            c.expect_symbol(",");
            decl.sigma_family = c.expect_ident("a sigma family").text;
            c.expect_symbol(",");
            decl.delta_family = c.expect_ident("a delta family or zero").text;
            c.expect_symbol(",");
            const Token ptok = c.expect_ident("'P'");
            if (ptok.text != "P") throw SyntaxError(ptok.line, ptok.col, "expected 'P'");
            c.expect_symbol(",");
            const Token ttok = c.expect_ident("'tau'");
            if (ttok.text != "tau") throw SyntaxError(ttok.line, ttok.col, "expected 'tau'");
            c.expect_symbol(")");
            const RingPtr ring = st.ring(head);
            SigmaPtr sigma = build_sigma_family(st, decl.sigma_family, head);
            DeltaPtr delta = build_delta_family(st, decl.delta_family, sigma, head);
            const Scalar p12 = st.doc.p12.value_or(Scalar::zero(st.doc.field));
            const Scalar p11 = st.doc.p11.value_or(Scalar::zero(st.doc.field));
            const RingElement t0 = st.doc.tau[0].value_or(RingElement::zero(ring));
            const RingElement t1 = st.doc.tau[1].value_or(RingElement::zero(ring));
            const RingElement t2 = st.doc.tau[2].value_or(RingElement::zero(ring));
            decl.algebra =
                DoubleOreAlgebra::make_unvalidated(ring, sigma, delta, p12, p11, t0, t1, t2);
            st.doc.extensions.push_back(std::move(decl));
        } else if (head.text == "dcv") {
            st.require_field(head);
            SpecDocument::DcvDecl decl;
            decl.name = c.expect_ident("a dcv name").text;
            if (c.accept_ident("target")) decl.target = c.expect_ident("an extension name").text;
            if (decl.target.empty()) {
                if (st.doc.extensions.size() != 1)
                    throw ResolutionError("dcv '" + decl.name +
                                          "' needs an explicit target extension");
                decl.target = st.doc.extensions.front().name;
            }
            const AlgebraPtr alg = st.doc.extension(decl.target).algebra;
            if (!c.accept_ident("q1")) c.fail("'q1'");
            c.expect_symbol("=");
            decl.q1 = parse_expression(c, ExtCtx{alg});
            if (!c.accept_ident("q2")) c.fail("'q2'");
            c.expect_symbol("=");
            decl.q2 = parse_expression(c, ExtCtx{alg});
            decl.source = parse_source_clause(st, c, head, decl.sigma_family, decl.delta_family);
            st.doc.dcvs.push_back(std::move(decl));
        } else if (head.text == "search") {
            st.require_field(head);
            SpecDocument::SearchDecl decl;
            decl.name = c.expect_ident("a search name").text;
            if (c.accept_ident("target")) decl.target = c.expect_ident("an extension name").text;
            if (decl.target.empty()) {
                if (st.doc.extensions.size() != 1)
                    throw ResolutionError("search '" + decl.name +
                                          "' needs an explicit target extension");
                decl.target = st.doc.extensions.front().name;
            }
            if (!c.accept_ident("degree")) c.fail("'degree'");
            decl.degree = static_cast<std::size_t>(parse_unsigned(c).convert_to<unsigned long>());
            if (!c.accept_ident("pool")) c.fail("'pool'");
            while (c.peek().kind == Token::Number ||
                   (c.peek().kind == Token::Symbol && c.peek().text == "-"))
                decl.pool.push_back(parse_scalar(c, st.doc.field));
            while (c.accept_ident("shape")) {
                const Token which = c.expect_ident("q1 or q2");
                c.expect_symbol("=");
                std::vector<ExpPair> monos = parse_shape_monomials(c);
                if (which.text == "q1")
                    decl.q1_monomials = monos;
                else if (which.text == "q2")
                    decl.q2_monomials = monos;
                else
                    throw SyntaxError(which.line, which.col, "shape must name q1 or q2");
            }
            decl.source = parse_source_clause(st, c, head, decl.sigma_family, decl.delta_family);
            st.doc.searches.push_back(std::move(decl));
        } else if (head.text == "check") {
            st.require_field(head);
            SpecDocument::CheckDirective dir;
            dir.kind = c.expect_ident("a check kind").text;
            if (dir.kind == "change") {
                // allow "change-basis" split by the tokenizer
                c.expect_symbol("-");
                const Token b = c.expect_ident("'basis'");
                if (b.text != "basis") throw SyntaxError(b.line, b.col, "expected 'basis'");
                dir.kind = "change-basis";
            }
            const std::vector<std::string> kinds = {"extension", "dcv",   "iterated", "graded",
                                                    "change-basis", "basis", "search"};
            if (std::find(kinds.begin(), kinds.end(), dir.kind) == kinds.end())
                throw SyntaxError(head.line, head.col, "unknown check kind '" + dir.kind + "'");
            dir.subject = c.expect_ident("a declared name").text;
            while (c.peek().kind == Token::Flag) {
                const Token flag = c.get();
                if (flag.text == "--max-degree") {
                    dir.max_degree =
                        static_cast<std::size_t>(parse_unsigned(c).convert_to<unsigned long>());
                } else if (flag.text == "--scope") {
                    const Token s = c.expect_ident("scalars, generators or basis");
                    if (s.text == "scalars")
                        dir.scope = DcvScope::Scalars;
                    else if (s.text == "generators")
                        dir.scope = DcvScope::Generators;
                    else if (s.text == "basis")
                        dir.scope = DcvScope::Basis;
                    else
                        throw SyntaxError(s.line, s.col, "unknown scope '" + s.text + "'");
                } else {
                    throw SyntaxError(flag.line, flag.col, "unknown flag '" + flag.text + "'");
                }
            }
            // validate the reference
            if (dir.kind == "dcv")
                st.doc.dcv(dir.subject);
            else if (dir.kind == "search")
                st.doc.search(dir.subject);
            else
                st.doc.extension(dir.subject);
            st.doc.checks.push_back(std::move(dir));
        } else {
            throw SyntaxError(head.line, head.col, "unknown statement '" + head.text + "'");
        }
        if (!c.at_end()) c.fail("end of line");
    }
    st.build_ring_if_needed();
    if (!st.field_seen) throw SyntaxError(1, 1, "expected 'field'");
    return st.doc;
}

// ---------------------------------------------------------------------------
// Canonical rendering.
// ---------------------------------------------------------------------------

namespace {

std::string spec_scalar(const Scalar& s) {
    if (s.field().is_rational()) {
        if (s.den() == 1) return s.num().str();
        return s.num().str() + "/" + s.den().str();
    }
    return s.num().str();
}

std::string spec_word(const RingPtr& ring, const Word& w) {
    if (w.is_unit()) return "1";
    std::ostringstream os;
    std::size_t i = 0;
    bool first = true;
    while (i < w.letters.size()) {
        std::size_t j = i;
        while (j < w.letters.size() && w.letters[j] == w.letters[i]) ++j;
        if (!first) os << "*";
        os << ring->generator_name(w.letters[i]);
        if (j - i > 1) os << "^" << (j - i);
        first = false;
        i = j;
    }
    return os.str();
}

std::string spec_ring_elem(const RingElement& e) {
    if (e.is_zero()) return "0";
    const RingPtr& ring = e.ring();
    std::ostringstream os;
    bool first = true;
    for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it) {
        const std::string mono = spec_word(ring, it->first);
        std::string cs = spec_scalar(it->second);
        if (!first) os << " + ";
        first = false;
        if (mono == "1") {
            const bool wrap = cs.find('/') != std::string::npos || (!cs.empty() && cs[0] == '-');
            os << (wrap ? "(" + cs + ")" : cs);
        } else if (cs == "1") {
            os << mono;
        } else if (cs.find('/') != std::string::npos || (cs.size() && cs[0] == '-')) {
            os << "(" << cs << ")*" << mono;
        } else {
            os << cs << "*" << mono;
        }
    }
    return os.str();
}

std::string spec_ext_elem(const ExtElement& e) {
    if (e.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [ij, r] : e.terms()) {
        if (!first) os << " + ";
        first = false;
        std::ostringstream mono;
        if (ij.first > 0) {
            mono << "y1";
            if (ij.first > 1) mono << "^" << ij.first;
        }
        if (ij.second > 0) {
            if (ij.first > 0) mono << "*";
            mono << "y2";
            if (ij.second > 1) mono << "^" << ij.second;
        }
        const std::string ms = mono.str();
        const std::string rs = spec_ring_elem(r);
        if (ms.empty()) {
            const bool wrap = r.term_count() > 1 || (!rs.empty() && rs[0] == '-');
            os << (wrap ? "(" + rs + ")" : rs);
        } else if (rs == "1") {
            os << ms;
        } else if (r.term_count() > 1 || rs.find('/') != std::string::npos ||
                   (rs.size() && rs[0] == '-')) {
            os << "(" << rs << ")*" << ms;
        } else {
            os << rs << "*" << ms;
        }
    }
    return os.str();
}

void render_source(std::ostringstream& os, const SourceTemplateData& s,
                   const std::string& sigma_family, const std::string& delta_family) {
    os << "source(";
    os << "p12 = " << (s.p12 ? spec_scalar(*s.p12) : "solve");
    os << ", p11 = " << (s.p11 ? spec_scalar(*s.p11) : "solve");
    os << ", tau0 = " << (s.tau0 ? spec_ring_elem(*s.tau0) : "solve");
    os << ", tau1 = " << (s.tau1 ? spec_ring_elem(*s.tau1) : "solve");
    os << ", tau2 = " << (s.tau2 ? spec_ring_elem(*s.tau2) : "solve");
    os << ", sigma = " << sigma_family;
    os << ", delta = " << delta_family;
    os << ")";
}

} // namespace

std::string render_spec(const SpecDocument& doc) {
    std::ostringstream os;
    if (doc.field.is_rational())
        os << "field Q\n";
    else
        os << "field F " << doc.field.characteristic.str() << "\n";

    if (!doc.ring_name.empty()) {
        os << "ring " << doc.ring_name << " gens";
        for (const auto& g : doc.ring->generator_names()) os << " " << g;
        os << " order";
        for (std::size_t g = 0; g < doc.ring->generator_count(); ++g)
            os << (g ? " < " : " ") << doc.ring->generator_name(g);
        os << "\n";
        for (const RewriteRule& r : doc.ring->rules()) {
            os << "rel " << spec_word(doc.ring, r.lhs) << " = "
               << spec_ring_elem(normalize(doc.ring, r.rhs)) << "\n";
        }
    }

    for (const auto& [family, fam] : doc.sigma_families) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (std::size_t g = 0; g < fam.images[i][j].size(); ++g)
                    if (!fam.images[i][j][g].is_zero())
                        os << "map " << family << (i + 1) << (j + 1) << " "
                           << doc.ring->generator_name(g) << " = "
                           << spec_ring_elem(fam.images[i][j][g]) << "\n";
    }
    for (const auto& [family, fam] : doc.delta_families) {
        for (int i = 0; i < 2; ++i)
            for (std::size_t g = 0; g < fam.images[i].size(); ++g)
                if (!fam.images[i][g].is_zero())
                    os << "map " << family << (i + 1) << " " << doc.ring->generator_name(g)
                       << " = " << spec_ring_elem(fam.images[i][g]) << "\n";
    }

    if (doc.p12) os << "param p12 = " << spec_scalar(*doc.p12) << "\n";
    if (doc.p11) os << "param p11 = " << spec_scalar(*doc.p11) << "\n";
    for (int k = 0; k < 3; ++k)
        if (doc.tau[k]) os << "tau" << k << " = " << spec_ring_elem(*doc.tau[k]) << "\n";

    for (const auto& e : doc.extensions)
        os << "extension " << e.name << " = double(" << doc.ring_name << ", " << e.sigma_family
           << ", " << e.delta_family << ", P, tau)\n";

    for (const auto& d : doc.dcvs) {
        os << "dcv " << d.name << " target " << d.target << " q1 = " << spec_ext_elem(d.q1)
           << " q2 = " << spec_ext_elem(d.q2) << " ";
        render_source(os, d.source, d.sigma_family, d.delta_family);
        os << "\n";
    }

    for (const auto& s : doc.searches) {
        os << "search " << s.name << " target " << s.target << " degree " << s.degree << " pool";
        for (const Scalar& p : s.pool) os << " " << spec_scalar(p);
        auto render_shape = [&](const char* which, const std::vector<ExpPair>& monos) {
            if (monos.empty()) return;
            os << " shape " << which << " = ";
            for (std::size_t k = 0; k < monos.size(); ++k) {
                if (k) os << " + ";
                const auto [i, j] = monos[k];
                if (i == 0 && j == 0) {
                    os << "1";
                } else {
                    if (i > 0) {
                        os << "y1";
                        if (i > 1) os << "^" << i;
                        if (j > 0) os << "*";
                    }
                    if (j > 0) {
                        os << "y2";
                        if (j > 1) os << "^" << j;
                    }
                }
            }
        };
        render_shape("q1", s.q1_monomials);
        render_shape("q2", s.q2_monomials);
        os << " ";
        render_source(os, s.source, s.sigma_family, s.delta_family);
        os << "\n";
    }

    for (const auto& ch : doc.checks) {
        os << "check " << ch.kind << " " << ch.subject;
        if (ch.max_degree) os << " --max-degree " << *ch.max_degree;
        if (ch.scope) os << " --scope " << scope_name(*ch.scope);
        os << "\n";
    }
    return os.str();
}

} // namespace dore
