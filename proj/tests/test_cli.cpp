#include "sac/cli.hpp"

#include "sac/blockmodel.hpp"
#include "sac/bounds.hpp"
#include "sac/errors.hpp"
#include "sac/io.hpp"
#include "sac/witness.hpp"
#include "test_util.hpp"

#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace sac;
using namespace sac::test;

namespace {

std::string data_path(const std::string& name) {
    return std::string(SAC_TEST_DATA_DIR) + "/" + name;
}

struct RunResult {
    int exit_code;
    std::string output;
};

// run the installed binary end to end; stdout captured through a temp file
RunResult run_binary(const std::string& args) {
    const std::string out_file = "/tmp/sac_cli_test_out.txt";
    const std::string cmd =
        std::string(SAC_CLI_PATH) + " " + args + " > " + out_file + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::remove(out_file.c_str());
    return {WEXITSTATUS(status), ss.str()};
}

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    // trailing empty cell
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

} // namespace

TEST_CASE("cmd_bound payload equals the library result") {
    const std::string payload = cmd_bound(2.0, 1.0, 1.0, {});
    const Json j = Json::parse(payload);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 3);
    CHECK(j[0]["kind"] == "xi");
    CHECK(j[0]["valid"] == true);
    CHECK(j[0]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(j[1]["kind"] == "apriori");
    CHECK(j[1]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(j[2]["kind"] == "kappa");
    CHECK(j[2]["valid"] == false);
    CHECK_FALSE(j[2].contains("value"));

    // piecewise equality against a direct library call
    const GapGeometry g = make_geometry(-1.0, 1.0, 1.0);
    const auto direct = best_bound(g, 1.0);
    for (std::size_t k = 0; k < direct.size(); ++k) {
        CHECK(j[k]["kind"] == kind_name(direct[k].kind));
        CHECK(j[k]["valid"] == direct[k].valid);
        if (direct[k].valid)
            CHECK(j[k]["value"].get<double>() == direct[k].value);
    }
}

TEST_CASE("cmd_bound: zero coupling and out-of-range kinds") {
    const Json zeros = Json::parse(cmd_bound(4.0, 1.0, 0.0, {}));
    for (const auto& bv : zeros) {
        CHECK(bv["valid"] == true);
        CHECK(bv["value"].get<double>() == 0.0);
    }
    const Json invalid = Json::parse(cmd_bound(4.0, 1.0, 2.1, {}));
    for (const auto& bv : invalid)
        if (bv["kind"] == "xi") CHECK(bv["valid"] == false);
}

TEST_CASE("cmd_witness payload matches build_xi_witness") {
    const Json j = Json::parse(cmd_witness(4.0, 1.0, 0.5));
    CHECK(j["regime"] == "first-branch");
    CHECK(j["matrix"]["b_minus"].get<double>() == 0.0);
    const WitnessReport direct = build_xi_witness(4.0, 1.0, 0.5);
    CHECK(j["tan_theta"].get<double>() == direct.tan_theta);
    CHECK(j["bound"].get<double>() == direct.bound);
    CHECK(j["z"].get<double>() == direct.z);

    const Json j2 = Json::parse(cmd_witness(2.0, 1.0, 1.0));
    CHECK(j2["gap_ratio"].get<double>() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("cmd_verify on the fixture file") {
    const VerifyOutcome out = cmd_verify_file(data_path("balanced3.json"));
    CHECK(out.violations == 0);
    const Json j = Json::parse(out.payload);
    CHECK(j["summary"]["violations"] == 0);
    CHECK(j["summary"]["max_tightest_ratio"].get<double>() ==
          doctest::Approx(1.0).epsilon(1e-8));
    REQUIRE(j["instances"].size() == 1);
    CHECK(j["instances"][0]["gap"]["split_ok"] == true);
}

TEST_CASE("cmd_verify random equals direct certification") {
    const VerifyOutcome out = cmd_verify_random(2, 5, 4.0, 1.0, 1.1, 77, 4);
    CHECK(out.violations == 0);
    const Json j = Json::parse(out.payload);
    REQUIRE(j["instances"].size() == 4);
    const GapGeometry g = make_geometry(-2.0, 2.0, 1.0);
    for (int t = 0; t < 4; ++t) {
        const std::uint64_t inst_seed = derive_seed(77, t);
        CHECK(j["instances"][t]["seed"].get<std::uint64_t>() == inst_seed);
        const CertifyResult direct = certify(random_instance(2, 5, g, 1.1, inst_seed));
        REQUIRE(j["instances"][t]["reports"].size() == direct.reports.size());
        for (std::size_t r = 0; r < direct.reports.size(); ++r)
            CHECK(j["instances"][t]["reports"][r]["tan_theta"].get<double>() ==
                  direct.reports[r].tan_theta);
    }
}

TEST_CASE("infinite tangents serialize as the literal string") {
    AngleReport r;
    r.eigenvalue = 0.0;
    r.in_window = true;
    r.tan_theta = std::numeric_limits<double>::infinity();
    r.all_satisfied = false;
    r.tightest_ratio = std::numeric_limits<double>::infinity();
    const Json j = to_json(r);
    CHECK(j["tan_theta"] == "inf");
    CHECK(j["tightest_ratio"] == "inf");
}

TEST_CASE("cmd_verify random Monte-Carlo batch stays clean") {
    const VerifyOutcome out = cmd_verify_random(2, 8, 4.0, 1.0, 1.3, 7, 100);
    CHECK(out.violations == 0);
    const Json j = Json::parse(out.payload);
    CHECK(j["summary"]["all_split_ok"] == true);
    CHECK(j["summary"]["instances"] == 100);
}

TEST_CASE("cmd_sweep CSV") {
    const std::string csv = cmd_sweep(4.0, 1.0, 1.9, 12, 2, 5);
    const auto lines = split_lines(csv);
    REQUIRE(lines.size() == 13);
    CHECK(lines[0] == "b,sqrt_xi,apriori,kappa_tan,max_achieved_tan,delta_remdel,aposteriori");

    const auto first = split_csv(lines[1]);
    REQUIRE(first.size() == 7);
    CHECK(first[0] == "0");
    CHECK(first[1] == "0");
    CHECK(first[2] == "0");
    CHECK(first[3] == "0");
    CHECK(first[4] == "0");
    CHECK(first[5] == "1");
    CHECK(first[6] == "0");

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split_csv(lines[i]);
        REQUIRE(cells.size() == 7);
        const double b = std::stod(cells[0]);
        const double sqrt_xi = std::stod(cells[1]);
        const double achieved = std::stod(cells[4]);
        CHECK(achieved <= sqrt_xi + 1e-8);
        if (b > 0.0) CHECK(achieved / sqrt_xi >= 1.0 - 1e-8); // witness row
        if (!cells[3].empty())
            CHECK(sqrt_xi <= std::stod(cells[3]) + 1e-12); // kappa dominates
        // invalid cells empty exactly when the conditions fail
        CHECK(cells[2].empty() == (b * b >= 2.0));
        CHECK(cells[3].empty() == (b * b >= 3.0));
        CHECK(cells[5].empty() == (b * b >= 2.0));
    }

    // byte-identical reruns under the same seed
    CHECK(cmd_sweep(4.0, 1.0, 1.9, 12, 2, 5) == csv);
}

TEST_CASE("binary end-to-end: exit codes and output") {
    SUBCASE("bound") {
        const RunResult r = run_binary("bound --D 2 --d 1 --b 1");
        CHECK(r.exit_code == 0);
        CHECK(r.output == cmd_bound(2.0, 1.0, 1.0, {}));
    }
    SUBCASE("bound with explicit kinds") {
        const RunResult r = run_binary("bound --D 4 --d 1 --b 0.5 --kinds xi --kinds tan2theta");
        CHECK(r.exit_code == 0);
        const Json j = Json::parse(r.output);
        REQUIRE(j.size() == 2);
    }
    SUBCASE("witness domain error exits 2") {
        const RunResult r = run_binary("witness --D 4 --d 1 --b 3");
        CHECK(r.exit_code == 2);
    }
    SUBCASE("verify fixture exits 0") {
        const RunResult r = run_binary(std::string("verify ") + data_path("balanced3.json"));
        CHECK(r.exit_code == 0);
    }
    SUBCASE("malformed JSON exits 3") {
        const std::string bad = "/tmp/sac_cli_bad.json";
        std::ofstream(bad) << "{ not json";
        const RunResult r = run_binary(std::string("verify ") + bad);
        CHECK(r.exit_code == 3);
        std::remove(bad.c_str());
    }
    SUBCASE("schema violation exits 3") {
        const std::string bad = "/tmp/sac_cli_schema.json";
        std::ofstream(bad) << R"({"a0": [[0.0]], "a1": [[1.0]]})";
        const RunResult r = run_binary(std::string("verify ") + bad);
        CHECK(r.exit_code == 3);
        std::remove(bad.c_str());
    }
    SUBCASE("random verify exits 0 and is reproducible byte for byte") {
        const std::string args =
            "verify --random --n0 2 --n1 8 --D 4 --d 1 --vnorm 1.3 --seed 7 --trials 5";
        const RunResult a = run_binary(args);
        const RunResult b = run_binary(args);
        CHECK(a.exit_code == 0);
        CHECK(a.output == b.output);
    }
    SUBCASE("SAC_SEED supplies the default seed") {
        const RunResult with_flag = run_binary(
            "sweep --D 4 --d 1 --bmax 1 --steps 3 --trials 1 --seed 33");
        const std::string out_file = "/tmp/sac_cli_env_out.txt";
        const std::string cmd = std::string("SAC_SEED=33 ") + SAC_CLI_PATH +
                                " sweep --D 4 --d 1 --bmax 1 --steps 3 --trials 1 > " +
                                out_file + " 2>/dev/null";
        const int status = std::system(cmd.c_str());
        CHECK(WEXITSTATUS(status) == 0);
        std::ifstream in(out_file);
        std::ostringstream ss;
        ss << in.rdbuf();
        std::remove(out_file.c_str());
        CHECK(ss.str() == with_flag.output);
    }
    SUBCASE("sweep domain error exits 2") {
        const RunResult r = run_binary("sweep --D 4 --d 1 --bmax 2.5 --steps 5");
        CHECK(r.exit_code == 2);
    }
    SUBCASE("unknown flag exits 2") {
        const RunResult r = run_binary("bound --D 2 --d 1 --b 1 --bogus 3");
        CHECK(r.exit_code == 2);
    }
}
