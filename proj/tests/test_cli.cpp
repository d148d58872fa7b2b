#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

// Inputs are referenced relative to the golden directory so reports never embed absolute paths.
Result run(std::vector<std::string> args) {
    const auto saved = fs::current_path();
    fs::current_path(fs::path(GOLDEN_DIR) / "inputs");
    std::ostringstream out, err;
    const int code = hardyrep::cli::run(args, out, err);
    fs::current_path(saved);
    return {code, out.str(), err.str()};
}

std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Set HARDYREP_UPDATE_GOLDEN=1 to rewrite the expected outputs.
void golden(const std::string& name, const std::vector<std::string>& args, int expect_code) {
    const auto r = run(args);
    CHECK_MESSAGE(r.code == expect_code, name << ": " << r.err);
    const fs::path file = fs::path(GOLDEN_DIR) / name;
    if (std::getenv("HARDYREP_UPDATE_GOLDEN")) {
        std::ofstream(file, std::ios::binary) << r.out;
        return;
    }
    REQUIRE_MESSAGE(fs::exists(file), "missing golden file " << file);
    CHECK_MESSAGE(r.out == read(file), name);
}

} // namespace

TEST_CASE("golden reports") {
    golden("gamma_gen.json", {"gamma", "gen", "--base", "4", "--digits", "0,1", "--max-level", "2"}, 0);
    golden("gamma_diff.json", {"gamma", "diff", "--gamma", R"({"elements":[0,1,4,5]})", "--bound", "10"}, 0);
    golden("gamma_coverage.json", {"gamma", "coverage", "--base", "4", "--digits", "0,1", "--max-level", "8",
                                   "--bound", "10"}, 0);
    golden("gamma_disjoint.json", {"gamma", "disjoint", "--set", "gamma4prime.json", "--gamma", "gamma4.json",
                                   "--bound", "4096"}, 0);
    golden("measure_fourier.json", {"measure", "fourier", "--measure", "mu4", "--k", "0,1,2,3,-2"}, 0);
    golden("measure_validate_bad.json",
           {"measure", "validate", "--measure", R"({"type":"trig","b":{"2":1.2}})"}, 1);
    golden("kernel_eval.json", {"kernel", "eval", "--kernel", "k4", "--w", "0.5", "--z", "0.5"}, 0);
    golden("kernel_gram.csv", {"kernel", "gram", "--kernel", "szego", "--count", "3", "--seed", "42",
                               "--format", "csv"}, 0);
    golden("check_cmc_lebesgue.json", {"check", "cmc", "--matrix", "diag:gamma4.json", "--measure", "lebesgue",
                                       "--size", "64"}, 0);
    golden("check_cmc_gamma3.json", {"check", "cmc", "--matrix", "diag:gamma3.json", "--measure",
                                     "built_gamma4.json", "--size", "64"}, 1);
    golden("check_projection.table", {"check", "projection", "--matrix", "bergman", "--size", "4", "--format",
                                      "table"}, 1);
    golden("check_vanishing.json", {"check", "vanishing", "--measure", "trig_b2.json", "--gamma", "gamma3.json",
                                    "--bound", "100"}, 1);
    golden("check_reproduce.json", {"check", "reproduce", "--matrix", "k4", "--measure", "mu4", "--samples", "3",
                                    "--radius", "0.8", "--seed", "7"}, 0);
    golden("check_norms.json", {"check", "norms", "--measure", "trig_b2.json", "--freqs", "1,3", "--coeffs", "1,1"}, 1);
    golden("check_transpose.json", {"check", "transpose", "--matrix", "dense:rank1.csv", "--measure",
                                    R"({"type":"trig","b":{"1":0.4}})", "--size", "2"}, 1);
    golden("build_measure.json", {"build", "measure", "--gamma", "gamma4.json", "--freq-bound", "100"}, 0);
    golden("build_certify.json", {"build", "certify", "--measure", "built_gamma4.json", "--gamma", "gamma4.json",
                                  "--window", "64"}, 0);
}

TEST_CASE("spec command lines") {
    const auto gen = run({"gamma", "gen", "--base", "4", "--digits", "0,1", "--max-level", "2"});
    CHECK(gen.code == 0);
    CHECK(json::parse(gen.out)["elements"] == json::array({0, 1, 4, 5, 16, 17, 20, 21}));

    const auto leb = run({"check", "cmc", "--matrix", "diag:gamma4.json", "--measure", "lebesgue", "--size", "64"});
    CHECK(leb.code == 0);
    CHECK(json::parse(leb.out)["residual"] == 0);
    CHECK(json::parse(leb.out)["pass"] == true);

    const auto g3 = run({"check", "cmc", "--matrix", "diag:gamma3.json", "--measure", "built_gamma4.json",
                         "--size", "64"});
    CHECK(g3.code == 1);
    CHECK(json::parse(g3.out)["pass"] == false);
}

TEST_CASE("built measure input matches a fresh build") {
    const auto r = run({"build", "measure", "--gamma", "gamma4.json", "--freq-bound", "100"});
    CHECK(r.out == read(fs::path(GOLDEN_DIR) / "inputs" / "built_gamma4.json"));
}

TEST_CASE("builder failure exits 1") {
    const auto r = run({"build", "measure", "--base", "3", "--digits", "0,1", "--max-level", "9", "--freq-bound",
                        "1000"});
    CHECK(r.code == 1);
    CHECK(json::parse(r.out)["error"].get<std::string>().find("no admissible frequency ≤ 1000") != std::string::npos);
}

TEST_CASE("usage and validation errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"gamma"}).code == 2);
    CHECK(run({"gamma", "gen", "--base", "4", "--digits", "0,1", "--max-level", "2", "--bogus"}).code == 2);
    CHECK(run({"gamma", "gen", "--base", "4", "--digits", "0,x", "--max-level", "2"}).code == 2);
    CHECK(run({"measure", "fourier", "--measure", "{\"type\":", "--k", "1"}).code == 2);
    CHECK(run({"measure", "fourier", "--measure", "missing.json", "--k", "1"}).code == 2);
    CHECK(run({"kernel", "eval", "--kernel", "k4", "--w", "1", "--z", "0"}).code == 2);
    CHECK(run({"kernel", "eval", "--kernel", "k4", "--w", "0.1+", "--z", "0"}).code == 2);
    CHECK(run({"check", "cmc", "--matrix", "dense:rank1.csv", "--measure", "mu4", "--size", "2"}).code == 2);
    CHECK(run({"check", "cmc", "--matrix", "k4", "--measure", "lebesgue", "--format", "xml"}).code == 2);
    const auto r = run({"check", "cmc", "--matrix", "nope", "--measure", "lebesgue"});
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
    CHECK(r.out.empty());
}

TEST_CASE("help exits 0") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("gamma") != std::string::npos);
    CHECK(run({"check", "reproduce", "--help"}).code == 0);
}

TEST_CASE("identical argv and seed give byte-identical reports") {
    const std::vector<std::string> args{"check", "reproduce", "--matrix", "gamma:gamma4.json", "--measure",
                                        "built_gamma4.json", "--samples", "4", "--seed", "123"};
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(json::parse(a.out)["seed"] == 123);
    auto other = args;
    other.back() = "124";
    CHECK(run(other).out != a.out);
}

TEST_CASE("--out writes the report to a file") {
    const fs::path path = fs::temp_directory_path() / "hardyrep_cli_out.json";
    fs::remove(path);
    const auto r = run({"gamma", "gen", "--base", "3", "--digits", "0,1", "--max-level", "1", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(json::parse(read(path))["elements"] == json::array({0, 1, 3, 4}));
    fs::remove(path);
}
