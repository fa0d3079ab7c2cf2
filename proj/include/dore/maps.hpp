#ifndef DORE_MAPS_HPP
#define DORE_MAPS_HPP

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "dore/ring.hpp"

namespace dore {

struct Mat2 {
    RingElement e11, e12, e21, e22;
    const RingElement& at(int i, int j) const;
    Mat2 mul(const Mat2& o) const;
    bool operator==(const Mat2&) const = default;
    static Mat2 identity(const RingPtr& ring);
    static Mat2 zero(const RingPtr& ring);
};

struct Col2 {
    RingElement c1, c2;
    bool operator==(const Col2&) const = default;
    static Col2 zero(const RingPtr& ring);
};

enum class MapLaw { Multiplicative, SigmaDerivation };

// k-linear map R -> R determined by generator images plus an extension law:
// multiplicative maps extend as algebra endomorphisms, sigma-derivations by
// the twisted Leibniz rule d(uv) = twist(u) d(v) + d(u) v.
class LinearMapSpec {
public:
    LinearMapSpec() = default;
    static LinearMapSpec multiplicative(RingPtr ring, std::vector<RingElement> images);
    static LinearMapSpec identity(RingPtr ring);
    static LinearMapSpec sigma_derivation(RingPtr ring, std::vector<RingElement> images,
                                          std::shared_ptr<const LinearMapSpec> twist);
    static LinearMapSpec zero_derivation(RingPtr ring, std::shared_ptr<const LinearMapSpec> twist);

    const RingPtr& ring() const { return ring_; }
    MapLaw law() const { return law_; }
    const std::vector<RingElement>& images() const { return images_; }
    const std::shared_ptr<const LinearMapSpec>& twist() const { return twist_; }

    RingElement apply(const RingElement& r) const;
    RingElement apply_word(const Word& w) const;

    bool is_zero_map_on_generators() const;

private:
    RingPtr ring_;
    std::vector<RingElement> images_;
    MapLaw law_ = MapLaw::Multiplicative;
    std::shared_ptr<const LinearMapSpec> twist_;

    // Copies of a spec share one memo table; the spec data is immutable so
    // the cached values stay valid.
    struct Cache {
        std::map<Word, RingElement, WordOrder> values;
        std::mutex mu;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// The inner derivation r |-> a r - twist(r) a, a sigma-derivation for the
// given multiplicative twist.
LinearMapSpec inner_derivation(const RingElement& a, const LinearMapSpec& twist);

class SigmaMatrix;
using SigmaPtr = std::shared_ptr<const SigmaMatrix>;

// Algebra homomorphism sigma: R -> M_2(R), stored via the four component
// images on generators and extended matrix-multiplicatively word by word.
// Individual components are not maps of algebras; all evaluation goes
// through the matrix.
class SigmaMatrix {
public:
    // images[i][j] lists sigma_ij(x_k) for each generator k (i, j in {0,1}).
    static SigmaPtr make(RingPtr ring, std::array<std::array<std::vector<RingElement>, 2>, 2> images);
    static SigmaPtr diagonal_identity(RingPtr ring);

    const RingPtr& ring() const { return ring_; }
    const RingElement& image(int i, int j, std::size_t gen) const;

    Mat2 apply(const RingElement& r) const;
    Mat2 apply_word(const Word& w) const;
    // Entry map r |-> sigma(r)_{ij}; i, j are 1-based to match the usual
    // subscripts.
    RingElement entry(int i, int j, const RingElement& r) const;

    bool entry_zero_on_generators(int i, int j) const;

private:
    explicit SigmaMatrix(RingPtr ring) : ring_(std::move(ring)) {}

    RingPtr ring_;
    std::array<std::array<std::vector<RingElement>, 2>, 2> images_;

    mutable std::map<Word, Mat2, WordOrder> cache_;
    mutable std::mutex mu_;
};

class DeltaColumn;
using DeltaPtr = std::shared_ptr<const DeltaColumn>;

// sigma-derivation delta: R -> M_{2x1}(R), extended word by word through
// delta(uv) = sigma(u) delta(v) + delta(u) v. Bound to the sigma it twists
// against.
class DeltaColumn {
public:
    static DeltaPtr make(RingPtr ring, SigmaPtr sigma,
                         std::array<std::vector<RingElement>, 2> images);
    static DeltaPtr zero(RingPtr ring, SigmaPtr sigma);

    const RingPtr& ring() const { return ring_; }
    const SigmaPtr& sigma() const { return sigma_; }
    const RingElement& image(int i, std::size_t gen) const;

    Col2 apply(const RingElement& r) const;
    Col2 apply_word(const Word& w) const;
    RingElement entry(int i, const RingElement& r) const;

    bool is_zero_on_generators() const;

private:
    DeltaColumn(RingPtr ring, SigmaPtr sigma) : ring_(std::move(ring)), sigma_(std::move(sigma)) {}

    RingPtr ring_;
    SigmaPtr sigma_;
    std::array<std::vector<RingElement>, 2> images_;

    mutable std::map<Word, Col2, WordOrder> cache_;
    mutable std::mutex mu_;
};

struct WellDefinednessViolation {
    std::string where; // rule or split description
    std::string lhs;
    std::string rhs;
};

struct WellDefinednessReport {
    bool pass = true;
    std::size_t max_degree = 0;
    std::vector<WellDefinednessViolation> violations;
};

// Confirms the bundle respects every ring relation, and that word-by-word
// evaluation is independent of how basis words up to max_degree are split
// into products. A bounded certificate, not a proof.
WellDefinednessReport check_well_defined(const SigmaMatrix& sigma, std::size_t max_degree);
WellDefinednessReport check_well_defined(const DeltaColumn& delta, std::size_t max_degree);

} // namespace dore

#endif
