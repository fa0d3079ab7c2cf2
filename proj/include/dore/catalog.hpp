#ifndef DORE_CATALOG_HPP
#define DORE_CATALOG_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dore/dcv.hpp"
#include "dore/report.hpp"

namespace dore {

struct TrimmedDcvInput {
    std::vector<Scalar> a, b; // coefficient lists, power 1 first
};

// One parameter instantiation of a fixture: the target algebra plus any
// attached candidate data, with the expected verdict per check.
struct FixtureInstance {
    std::string label;
    AlgebraPtr algebra;
    std::optional<DcvMatrix> dcv;
    DcvScope dcv_scope = DcvScope::Basis;
    std::optional<TrimmedDcvInput> trimmed_input;
    // Ordered (check name, expected pass) pairs; only listed checks run.
    std::vector<std::pair<std::string, bool>> expected;
};

struct Fixture {
    std::string name;
    std::string notes;
    std::vector<FixtureInstance> instances;
};

// Fully instantiated fixture with parameters bound per its recipe. Throws
// UnknownFixture for unrecognised names.
Fixture get_fixture(const std::string& name);

std::vector<std::string> fixture_names();

struct VerifyOutcome {
    ReportNode report;
    std::size_t fixtures = 0;
    std::size_t instances = 0;
    std::size_t checks = 0;
    std::size_t mismatches = 0;
    bool pass() const { return mismatches == 0; }
};

// Replays every fixture's checks and compares against the expected
// verdicts. extra fixtures (e.g. deliberately corrupted ones) take part
// like catalog members. threads > 1 evaluates fixtures concurrently; the
// report is merged in catalog order either way.
VerifyOutcome verify_all(std::size_t max_degree, unsigned threads = 1,
                         const std::vector<Fixture>& extra = {});

// The corrupted variant used as a negative control: H with tau0 set to 1
// but the catalog verdicts of H, so verify_all reports exactly its
// mismatches.
Fixture corrupted_h_fixture();

// Search specifications reproducing the condition rows of the candidate
// tables: the affine-plus-constant row over a sigma12 = 0 target and the
// affine pair row over the equal-entry target. Source parameters are left
// to the canonical completion.
SearchSpec table1_row2_search_spec(const AlgebraPtr& target);
SearchSpec table2_row3_search_spec(const AlgebraPtr& target);

// Direct parameterized constructors for catalog families; construction
// enforces the family's parameter constraints (f != 0 for the anti-diagonal
// Jordan-plane family, f^2 != g^2 for the matrix-defined one).
AlgebraPtr build_algebra_h(const Field& field, long f);
AlgebraPtr build_algebra_n(const Field& field, long f, long g);

} // namespace dore

#endif
