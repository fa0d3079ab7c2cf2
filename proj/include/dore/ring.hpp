#ifndef DORE_RING_HPP
#define DORE_RING_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dore/scalar.hpp"

namespace dore {

// Monomial of the free algebra: a sequence of generator indices. The empty
// word is the unit.
struct Word {
    std::vector<std::uint32_t> letters;

    Word() = default;
    explicit Word(std::vector<std::uint32_t> l) : letters(std::move(l)) {}

    std::size_t degree() const { return letters.size(); }
    bool is_unit() const { return letters.empty(); }
    Word concat(const Word& o) const;
    Word sub(std::size_t pos, std::size_t len) const;

    bool operator==(const Word&) const = default;
};

// Degree-lexicographic order with generator precedence given by index
// (index 0 is the smallest generator).
bool word_less(const Word& a, const Word& b);

struct WordOrder {
    bool operator()(const Word& a, const Word& b) const { return word_less(a, b); }
};

// lhs -> sum of (coefficient, word). Every rhs word must be strictly
// smaller than lhs in the term order; that is the termination witness.
struct RewriteRule {
    Word lhs;
    std::vector<std::pair<Scalar, Word>> rhs;
};

class PresentedRing;
using RingPtr = std::shared_ptr<const PresentedRing>;

// Finitely presented associative algebra k<x1..xg> / <rules>, with unique
// normal forms computed by exhaustive leftmost rewriting. Immutable after
// construction.
class PresentedRing : public std::enable_shared_from_this<PresentedRing> {
public:
    static RingPtr make(Field field, std::vector<std::string> generator_names,
                        std::vector<RewriteRule> rules, std::size_t step_cap = 1000000);
    // Skips the order-decreasing validation; exists so diagnostics for
    // ill-founded presentations stay reachable.
    static RingPtr make_unvalidated(Field field, std::vector<std::string> generator_names,
                                    std::vector<RewriteRule> rules, std::size_t step_cap = 1000000);

    const Field& field() const { return field_; }
    std::size_t generator_count() const { return generator_names_.size(); }
    const std::string& generator_name(std::size_t i) const { return generator_names_[i]; }
    const std::vector<std::string>& generator_names() const { return generator_names_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    std::size_t step_cap() const { return step_cap_; }
    bool validated() const { return validated_; }

    bool is_word_irreducible(const Word& w) const;
    // First (position, rule index) whose lhs occurs in w, scanning positions
    // left to right; rules are tried in stored order at each position.
    std::optional<std::pair<std::size_t, std::size_t>> find_redex(const Word& w) const;

private:
    PresentedRing(Field f, std::vector<std::string> names, std::vector<RewriteRule> rules,
                  std::size_t cap, bool validated)
        : field_(std::move(f)), generator_names_(std::move(names)), rules_(std::move(rules)),
          step_cap_(cap), validated_(validated) {}

    Field field_;
    std::vector<std::string> generator_names_;
    std::vector<RewriteRule> rules_;
    std::size_t step_cap_;
    bool validated_;
};

// Element of a presented ring in normal form: map from irreducible word to
// nonzero coefficient. Immutable value type.
class RingElement {
public:
    RingElement() = default;
    static RingElement zero(RingPtr ring);
    static RingElement one(RingPtr ring);
    static RingElement scalar(RingPtr ring, const Scalar& s);
    static RingElement generator(RingPtr ring, std::size_t i);
    static RingElement monomial(RingPtr ring, const Word& w, const Scalar& c);

    const RingPtr& ring() const { return ring_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_scalar() const;
    // Coefficient of the unit word (the whole value when is_scalar()).
    Scalar scalar_part() const;
    Scalar coeff(const Word& w) const;
    std::size_t degree() const; // 0 for the zero element
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Word, Scalar, WordOrder>& terms() const { return terms_; }

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator-() const;
    RingElement scale(const Scalar& s) const;
    bool operator==(const RingElement& o) const;
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    std::string str() const;

    friend RingElement normalize(const RingPtr& ring,
                                 std::vector<std::pair<Scalar, Word>> raw);

private:
    RingPtr ring_;
    std::map<Word, Scalar, WordOrder> terms_;

    void insert_term(const Word& w, const Scalar& c);
    void check_same_ring(const RingElement& o) const;
};

// Exhaustively rewrites the formal combination to its unique normal form.
RingElement normalize(const RingPtr& ring, std::vector<std::pair<Scalar, Word>> raw);

struct CriticalPair {
    Word overlap;
    std::size_t rule_a = 0;
    std::size_t rule_b = 0;
    RingElement reduced_a;
    RingElement reduced_b;
};

// Enumerates overlap and inclusion ambiguities between rule left-hand sides
// up to the given overlap-word length and reduces both ways; returns the
// pairs whose normal forms differ. Empty result = locally confluent at this
// bound.
std::vector<CriticalPair> check_local_confluence(const RingPtr& ring, std::size_t max_overlap_len);

// All irreducible words of degree <= max_degree, in term order (starts with
// the unit word).
std::vector<Word> ring_basis(const RingPtr& ring, std::size_t max_degree);

} // namespace dore

#endif
