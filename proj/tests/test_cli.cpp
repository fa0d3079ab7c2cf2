#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dore/commands.hpp"

using namespace dore;

namespace {

const std::string fixture_dir = std::string(DORE_SOURCE_DIR) + "/fixtures/";

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> argv) {
    std::ostringstream out, err;
    int code = run_command(argv, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("certificates from the shipped candidate spec") {
    RunResult r = run({"check-dcv", fixture_dir + "h_lambda.spec"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("check: dcv-certificate") != std::string::npos);
    CHECK(r.out.find("result: pass") != std::string::npos);
}

TEST_CASE("basis directives attach the two-sided certificate") {
    RunResult r = run({"check-extension", fixture_dir + "h_lambda.spec"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("check: right-basis") != std::string::npos);
    CHECK(r.out.find("certified-double: yes") != std::string::npos);
}

TEST_CASE("report documents carry their stable top-level keys") {
    RunResult r = run({"check-extension", fixture_dir + "h_lambda.spec"});
    for (const char* key :
         {"check: extension-structure", "extension: H", "max-degree: 3", "trimmed: yes",
          "sigma-well-defined: pass", "relations:", "compatibility: pass",
          "associativity: pass", "result: pass"})
        CHECK(r.out.find(key) != std::string::npos);
}

TEST_CASE("iterated presentation of the lower-triangular spec") {
    RunResult r = run({"to-iterated", fixture_dir + "subcase411.spec"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("first-order:") != std::string::npos);
    CHECK(r.out.find("order: y1-then-y2") != std::string::npos);
    CHECK(r.out.find("first-order-product-match: pass") != std::string::npos);
}

TEST_CASE("the anti-diagonal spec admits no iterated order and exits nonzero") {
    RunResult r = run({"to-iterated", fixture_dir + "h_lambda.spec"});
    CHECK(r.code == exit_check_failed);
    CHECK(r.out.find("sigma12 != 0") != std::string::npos);
    CHECK(r.out.find("sigma21 != 0") != std::string::npos);
}

TEST_CASE("the corrupted spec fails with a counterexample shown") {
    RunResult r = run({"check-extension", fixture_dir + "h_corrupted.spec"});
    CHECK(r.code == exit_check_failed);
    CHECK(r.out.find("status: fail") != std::string::npos);
    CHECK(r.out.find("counterexample") != std::string::npos);
    CHECK(r.out.find("associativity: fail") != std::string::npos);
}

TEST_CASE("scalar-scope certificate for the generator pair") {
    RunResult r = run({"check-dcv", fixture_dir + "dtoe.spec"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("scope: scalars") != std::string::npos);
    CHECK(r.out.find("result: pass") != std::string::npos);
}

TEST_CASE("search subcommand reports the four rescalings") {
    RunResult r = run({"search-dcv", fixture_dir + "h_search.spec"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("hits: 4") != std::string::npos);
}

TEST_CASE("graded and change-basis subcommands") {
    RunResult g = run({"graded", fixture_dir + "scalar_identity.spec"});
    CHECK(g.code == exit_ok);
    CHECK(g.out.find("applicable: yes") != std::string::npos);
    RunResult c = run({"change-basis", fixture_dir + "scalar_identity.spec"});
    CHECK(c.code == exit_ok);
    CHECK(c.out.find("relation-recovered: pass") != std::string::npos);

    // p12 = 1 spec: graded is not applicable
    RunResult ng = run({"graded", fixture_dir + "subcase411.spec"});
    CHECK(ng.code == exit_check_failed);
    CHECK(ng.out.find("applicable: no") != std::string::npos);
}

TEST_CASE("usage and spec errors exit with code 2") {
    CHECK(run({}).code == exit_spec_error);
    CHECK(run({"frobnicate"}).code == exit_spec_error);
    CHECK(run({"check-dcv"}).code == exit_spec_error);
    CHECK(run({"check-dcv", fixture_dir + "h_lambda.spec", "--definitely-not-a-flag"}).code ==
          exit_spec_error);
    CHECK(run({"check-dcv", "/nonexistent/path.spec"}).code == exit_spec_error);

    const std::filesystem::path tmp =
        std::filesystem::temp_directory_path() / "dore_bad_spec.spec";
    {
        std::ofstream f(tmp);
        f << "ring before field\n";
    }
    RunResult r = run({"check-extension", tmp.string()});
    CHECK(r.code == exit_spec_error);
    CHECK(r.err.find("error:") != std::string::npos);
    std::filesystem::remove(tmp);
}

TEST_CASE("reports can be written to a file atomically") {
    const std::filesystem::path tmp =
        std::filesystem::temp_directory_path() / "dore_report_out.txt";
    std::filesystem::remove(tmp);
    RunResult r = run({"check-dcv", fixture_dir + "h_lambda.spec", "--out", tmp.string()});
    CHECK(r.code == exit_ok);
    REQUIRE(std::filesystem::exists(tmp));
    std::ifstream f(tmp);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str().find("result: pass") != std::string::npos);
    std::filesystem::remove(tmp);
}

TEST_CASE("text format condenses to the top-level lines") {
    RunResult s = run({"check-dcv", fixture_dir + "h_lambda.spec", "--format", "structured"});
    RunResult t = run({"check-dcv", fixture_dir + "h_lambda.spec", "--format", "text"});
    CHECK(s.code == exit_ok);
    CHECK(t.code == exit_ok);
    CHECK(t.out.size() < s.out.size());
    CHECK(t.out.find("result: pass") != std::string::npos);
}

TEST_CASE("catalog verify is deterministic across runs and thread counts") {
    RunResult a = run({"catalog", "verify", "--max-degree", "2", "--format", "structured"});
    RunResult b = run({"catalog", "verify", "--max-degree", "2", "--format", "structured",
                       "--threads", "4"});
    CHECK(a.code == exit_ok);
    CHECK(b.code == exit_ok);
    CHECK(a.out == b.out);
}

TEST_CASE("catalog verify output matches the committed golden copy") {
    std::ifstream golden(fixture_dir + "golden/catalog_verify_d2.txt");
    REQUIRE_MESSAGE(golden.good(), "golden file missing");
    std::stringstream want;
    want << golden.rdbuf();
    RunResult r = run({"catalog", "verify", "--max-degree", "2", "--format", "structured"});
    CHECK(r.code == exit_ok);
    CHECK(r.out == want.str());
}
