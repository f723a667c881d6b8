#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vsvm/error.hpp"
#include "vsvm/experiment.hpp"

using namespace vsvm;
namespace fs = std::filesystem;

namespace {

ExperimentConfig cell(const std::string& dataset, const std::string& kernel) {
    ExperimentConfig c;
    c.dataset = dataset;
    c.kernel = kernel;
    return c;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("vsvm_test_experiment_" + name); }

}  // namespace

TEST_CASE("xor with rbf") {
    const ExperimentReport r = run_experiment(cell("xor", "rbf"));
    const Json& d = r.document;
    CHECK(d["solver"]["status"] == "Optimal");
    CHECK(d["gram"]["rank"] == 4);
    CHECK(d["feasibility"]["verdict"] == "Feasible");
    REQUIRE(d["model"].is_object());
    CHECK(d["model"]["alpha"].size() == 4);
    CHECK(d["model"]["mean_probability"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(d.back().is_number());
    CHECK(std::prev(d.end()).key() == "wall_time_ms");
    CHECK(r.summary.find("Optimal") != std::string::npos);
}

TEST_CASE("xor with ink-spline") {
    const ExperimentReport r = run_experiment(cell("xor", "ink0"));
    const Json& d = r.document;
    CHECK(d["gram"]["rank"] == 2);
    CHECK(d["gram"]["condition_number"] == "inf");
    CHECK(d["solver"]["status"] == "SingularKkt");
    CHECK(d["solver"]["deficiency"] == "gram_rank");
    CHECK(d["feasibility"]["verdict"] == "Feasible");
    CHECK(d["feasibility"]["witness"]["alpha_recovered"] == true);
    CHECK(d["model"].is_null());
}

TEST_CASE("gaussian mixture fixtures at seed 42") {
    const ExperimentReport rbf = run_experiment(cell("gauss", "rbf"));
    const Json& g = rbf.document["gram"];
    CHECK(g["size"] == 200);
    CHECK(g["rank"] == 41);
    CHECK(g["condition_number"] == "inf");
    CHECK(g["restricted_condition"].get<double>() == doctest::Approx(2.407e7).epsilon(1e-3));
    CHECK(rbf.document["solver"]["status"] == "SingularKkt");
    CHECK(rbf.document["feasibility"]["verdict"] == "Feasible");

    const ExperimentReport ink = run_experiment(cell("gauss", "ink0"));
    CHECK(ink.document["gram"]["rank"] == 200);
    CHECK(ink.document["gram"]["condition_number"].get<double>() == doctest::Approx(3.32705e6).epsilon(1e-5));
    CHECK(ink.document["gram"]["psd"] == false);
    CHECK(ink.document["solver"]["status"] == "Optimal");
}

TEST_CASE("report round trip and reproducibility") {
    const fs::path p = temp_file("report.json");
    ExperimentConfig c = cell("xor", "ink0");
    c.report_path = p;
    const ExperimentReport r = run_experiment(c);
    const std::string text = read_file(p);
    CHECK(text == dump_report(r.document));
    CHECK(dump_report(parse_report(text)) == text);

    const ExperimentReport again = run_experiment(c);
    CHECK(dump_report(again.deterministic()) == dump_report(r.deterministic()));

    // the echoed config reproduces the run
    const Json echo = parse_report(text)["config"];
    ExperimentConfig from_echo = cell(echo["dataset"].get<std::string>(), echo["kernel"].get<std::string>());
    from_echo.rbf_param = echo["rbf_param"].get<double>();
    from_echo.gamma = echo["gamma"].get<double>();
    from_echo.seed = echo["seed"].get<std::uint64_t>();
    CHECK(dump_report(run_experiment(from_echo).deterministic()) == dump_report(r.deterministic()));
    fs::remove(p);
}

TEST_CASE("report number formatting") {
    Json j;
    j["a"] = 0.1;
    j["b"] = real_to_json(std::numeric_limits<double>::infinity());
    j["c"] = real_to_json(std::nan(""));
    j["d"] = -0.0;
    j["e"] = Json::array({1.5, 2.0});
    const std::string text = dump_report(j);
    CHECK(text.find("0.10000000000000001") != std::string::npos);
    CHECK(text.find("\"inf\"") != std::string::npos);
    CHECK(text.find("\"nan\"") != std::string::npos);
    CHECK(text.find("[1.5, 2]") != std::string::npos);
    CHECK(dump_report(parse_report(text)) == text);
    CHECK(format_fixed17(0.5) == "0.5");
}

TEST_CASE("compare") {
    SUBCASE("the four standard cells") {
        const auto rows = compare(standard_cells());
        REQUIRE(rows.size() == 4);
        CHECK(rows[0].status == "Optimal");
        CHECK(rows[1].status == "SingularKkt");
        CHECK(rows[2].status == "SingularKkt");
        CHECK(rows[3].status == "Optimal");
        for (const auto& r : rows) {
            CHECK(r.error.empty());
            CHECK(r.feasibility == "Feasible");
        }
        CHECK(rows[1].rank == 2);
        CHECK(rows[2].rank == 41);
        CHECK(std::isinf(rows[2].condition_number));
        CHECK(format_table(rows) == format_table(compare(standard_cells())));
        CHECK(table_to_json(rows).size() == 4);
    }
    SUBCASE("single row") {
        const auto rows = compare({cell("xor", "rbf")});
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].rank == 4);
        CHECK(rows[0].condition_number == doctest::Approx(16.6708).epsilon(1e-5));
    }
    SUBCASE("missing csv becomes an error row") {
        const auto rows = compare({cell("csv:/nonexistent/vsvm.csv", "rbf"), cell("xor", "rbf")});
        REQUIRE(rows.size() == 2);
        CHECK_FALSE(rows[0].error.empty());
        CHECK(rows[1].error.empty());
        CHECK(format_table(rows).find("error:") != std::string::npos);
        CHECK(table_to_json(rows)[0].contains("error"));
    }
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(cell("moons", "rbf").validate(), ContractViolation);
    CHECK_THROWS_AS(cell("xor", "poly").validate(), ContractViolation);
    ExperimentConfig c = cell("xor", "rbf");
    c.rbf_param = 0.0;
    CHECK_THROWS_AS(run_experiment(c), ContractViolation);
    c = cell("xor", "rbf");
    c.v_matrix = "diag";
    CHECK_THROWS_AS(c.validate(), ContractViolation);
    c.v_matrix = "csv:/nonexistent/v.csv";
    CHECK_THROWS_AS(run_experiment(c), IoError);
}

TEST_CASE("v-matrix from csv") {
    const fs::path p = temp_file("v.csv");
    ExperimentConfig c = cell("xor", "rbf");
    c.v_matrix = "csv:" + p.string();

    std::ofstream(p) << "1,0,0,0\n0,1,0,0\n0,0,1,0\n0,0,0,1\n";
    const ExperimentReport r = run_experiment(c);
    CHECK(dump_report(r.document["model"]) == dump_report(run_experiment(cell("xor", "rbf")).document["model"]));

    std::ofstream(p) << "1,0.5,0,0\n0,1,0,0\n0,0,1,0\n0,0,0,1\n";
    CHECK_THROWS_AS(run_experiment(c), ContractViolation);
    std::ofstream(p) << "1,0\n0,1\n";
    CHECK_THROWS_AS(run_experiment(c), ContractViolation);
    fs::remove(p);
}
