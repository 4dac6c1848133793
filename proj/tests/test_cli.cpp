#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "depcov/csv.hpp"
#include "depcov/json_io.hpp"
#include "depcov/types.hpp"

// Spawns the installed binary the way a user would: through the shell, with
// stdout/stderr captured to files. CMake passes the binary path in the
// DEPCOV_BIN environment variable.

using depcov::Json;

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;

    Json json() const { return Json::parse(out); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "depcov_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const char* bin = std::getenv("DEPCOV_BIN");
    if (bin == nullptr) throw std::runtime_error("DEPCOV_BIN is not set");

    const fs::path out_path = work_dir() / ("out." + std::to_string(counter));
    const fs::path err_path = work_dir() / ("err." + std::to_string(counter));
    ++counter;

    const std::string cmd = env_prefix + "\"" + std::string(bin) + "\" " + args +
                            " > " + out_path.string() + " 2> " + err_path.string();
    const int status = std::system(cmd.c_str());

    RunResult r;
    if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

std::string example1_csv() {
    const fs::path p = work_dir() / "example1.csv";
    std::ofstream(p) << "x,y,p\n-1,1,0.25\n1,1,0.25\n0,0.6,0.25\n0,-1,0.25\n";
    return p.string();
}

std::string example1_sample_csv() {
    const fs::path p = work_dir() / "example1_sample.csv";
    std::ofstream(p) << "x,y\n-1,1\n1,1\n0,0.6\n0,-1\n";
    return p.string();
}

}  // namespace

TEST_CASE("exact reports the counterexample") {
    const RunResult r = run_cli("exact " + example1_csv());
    REQUIRE(r.exit_code == 0);
    const Json j = r.json();
    CHECK(j["schema_version"] == 1);
    CHECK(j["method"] == "population-exact");
    CHECK(j["dcov"].get<double>() == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(j["dcor"].get<double>() == doctest::Approx(0.2581988897471611).epsilon(1e-12));
    CHECK(std::abs(j["cov_dist"].get<double>()) <= 1e-12);
    CHECK(j["cross_cov_dist"].get<double>() == doctest::Approx(-0.05).epsilon(1e-12));
    CHECK(std::abs(j["cov_xy"].get<double>()) <= 1e-12);
    CHECK_FALSE(j["degenerate"].get<bool>());
    CHECK_FALSE(j.contains("panels"));
}

TEST_CASE("exact --panels --sqrt adds the derived tables and roots") {
    const RunResult r = run_cli("exact " + example1_csv() + " --panels --sqrt");
    REQUIRE(r.exit_code == 0);
    const Json j = r.json();
    CHECK(j["panels"]["abs_diff"]["atoms"].size() == 5);
    CHECK(j["panels"]["doubly_centered"]["atoms"].size() == 7);
    CHECK(j["dcov_sqrt"].get<double>() ==
          doctest::Approx(std::sqrt(0.1)).epsilon(1e-12));
    CHECK(j["dcor_sqrt"].get<double>() ==
          doctest::Approx(std::sqrt(0.2581988897471611)).epsilon(1e-12));
}

TEST_CASE("parse failures name the offending row") {
    const fs::path bad = work_dir() / "bad.csv";
    std::ofstream(bad) << "x,y\n1,2\n3,zebra\n";
    const RunResult r = run_cli("sample " + bad.string());
    CHECK(r.exit_code == 1);
    CHECK(r.out.empty());
    CHECK(r.err.rfind("ParseError: ", 0) == 0);
    CHECK(r.err.find("row 3") != std::string::npos);
}

TEST_CASE("missing input file") {
    const RunResult r = run_cli("exact /nonexistent/never.csv");
    CHECK(r.exit_code == 1);
    CHECK(r.err.rfind("FileNotFound: ", 0) == 0);
}

TEST_CASE("a one-row sample is too small") {
    const fs::path p = work_dir() / "one.csv";
    std::ofstream(p) << "x,y\n1,2\n";
    const RunResult r = run_cli("sample " + p.string());
    CHECK(r.exit_code == 1);
    CHECK(r.err.rfind("LengthTooSmall: ", 0) == 0);
}

TEST_CASE("sample --method both cross-checks the estimators") {
    const RunResult gen =
        run_cli("generate --kind gaussian-pair --n 500 --seed 21 --rho 0.5 --out " +
                (work_dir() / "g.csv").string());
    REQUIRE(gen.exit_code == 0);

    const RunResult r =
        run_cli("sample " + (work_dir() / "g.csv").string() + " --method both");
    REQUIRE(r.exit_code == 0);
    const Json j = r.json();
    CHECK(j["method"] == "sample-fast");
    CHECK(j["fast_naive_abs_diff"].get<double>() <= j["tolerance"].get<double>());
    CHECK(j["tolerance"].get<double>() >= 1e-10);
    CHECK(j["naive_dcov"].get<double>() ==
          doctest::Approx(j["dcov"].get<double>()).epsilon(1e-7));
    CHECK(j["fast_seconds"].get<double>() >= 0.0);
    CHECK(j["naive_seconds"].get<double>() > 0.0);
}

TEST_CASE("sample rejects unknown methods") {
    const RunResult r =
        run_cli("sample " + example1_sample_csv() + " --method quantum");
    CHECK(r.exit_code == 1);
    CHECK(r.err.rfind("InvalidParameter: ", 0) == 0);
}

TEST_CASE("permtest is reproducible and reports the contract fields") {
    const std::string csv = example1_sample_csv();
    const RunResult a = run_cli("permtest " + csv + " --m 200 --seed 5");
    REQUIRE(a.exit_code == 0);
    const Json j = a.json();
    CHECK(j["m"] == 200);
    CHECK(j["seed"] == 5);
    CHECK(j["exceed_count"].get<std::uint64_t>() <= 200);
    const double p = j["p_hat"].get<double>();
    CHECK(p >= 1.0 / 201.0);
    CHECK(p <= 1.0);
    CHECK_FALSE(j["exhaustive"].get<bool>());
    CHECK_FALSE(j["ties_geq"].get<bool>());

    const RunResult b = run_cli("permtest " + csv + " --m 200 --seed 5");
    CHECK(b.out == a.out);
}

TEST_CASE("permtest --exhaustive on four points") {
    const RunResult r =
        run_cli("permtest " + example1_sample_csv() + " --exhaustive --seed 1");
    REQUIRE(r.exit_code == 0);
    const Json j = r.json();
    CHECK(j["m"] == 24);
    CHECK(j["exceed_count"] == 20);
    CHECK(j["p_hat"].get<double>() == doctest::Approx(0.84).epsilon(1e-15));

    const RunResult geq = run_cli("permtest " + example1_sample_csv() +
                                  " --exhaustive --ties-geq --seed 1");
    CHECK(geq.json()["p_hat"].get<double>() == 1.0);
}

TEST_CASE("permtest --m 0 is invalid") {
    const RunResult r = run_cli("permtest " + example1_sample_csv() + " --m 0 --seed 1");
    CHECK(r.exit_code == 1);
    CHECK(r.err.rfind("InvalidParameter: ", 0) == 0);
}

TEST_CASE("permtest --alpha adds the decision") {
    const RunResult r =
        run_cli("permtest " + example1_sample_csv() + " --m 99 --seed 9 --alpha 0.05");
    REQUIRE(r.exit_code == 0);
    const Json j = r.json();
    CHECK(j["alpha"].get<double>() == 0.05);
    CHECK(j["reject"].get<bool>() == (j["p_hat"].get<double>() < 0.05));
}

TEST_CASE("an omitted seed is drawn from entropy and echoed on stderr") {
    const RunResult r = run_cli("permtest " + example1_sample_csv() + " --m 50");
    REQUIRE(r.exit_code == 0);
    CHECK(r.err.rfind("seed: ", 0) == 0);
    const std::uint64_t echoed = std::stoull(r.err.substr(6));
    CHECK(r.json()["seed"].get<std::uint64_t>() == echoed);
}

TEST_CASE("permtest output does not depend on the thread budget") {
    const std::string csv = example1_sample_csv();
    const RunResult one =
        run_cli("permtest " + csv + " --m 160 --seed 33", "DEPCOV_THREADS=1 ");
    const RunResult three =
        run_cli("permtest " + csv + " --m 160 --seed 33", "DEPCOV_THREADS=3 ");
    REQUIRE(one.exit_code == 0);
    REQUIRE(three.exit_code == 0);
    CHECK(one.out == three.out);
}

TEST_CASE("generate --grid emits the exact lattice") {
    const RunResult r = run_cli("generate --kind uniform-parabola --grid --n 3 --seed 1");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == "x,y\n-1,1\n0,0\n1,1\n");
}

TEST_CASE("generate is reproducible per seed") {
    const std::string path = (work_dir() / "rep.csv").string();
    REQUIRE(run_cli("generate --kind bivariate-t --nu 4 --n 50 --seed 77 --out " + path)
                .exit_code == 0);
    const std::string first = slurp(path);
    REQUIRE(run_cli("generate --kind bivariate-t --nu 4 --n 50 --seed 77 --out " + path)
                .exit_code == 0);
    CHECK(slurp(path) == first);
    CHECK(first.rfind("x,y\n", 0) == 0);
}

TEST_CASE("generate guards its inputs") {
    CHECK(run_cli("generate --kind discrete --n 10 --seed 1").exit_code == 1);
    CHECK(run_cli("generate --kind discrete --n 10 --seed 1").err.rfind(
              "InvalidParameter: ", 0) == 0);
    CHECK(run_cli("generate --kind warp-drive --n 10 --seed 1").err.rfind(
              "UnknownGenerator: ", 0) == 0);
    CHECK(run_cli("generate --kind gaussian-pair --n 10 --seed 1 --rho 2").exit_code == 1);
}

TEST_CASE("generate --kind discrete samples a distribution file") {
    const std::string out = (work_dir() / "disc.csv").string();
    const RunResult r = run_cli("generate --kind discrete --dist " + example1_csv() +
                                " --n 100 --seed 3 --out " + out);
    REQUIRE(r.exit_code == 0);
    const depcov::PairedSample s = depcov::read_sample_csv(out);
    CHECK(s.size() == 100);
    for (double x : s.x) CHECK((x == -1.0 || x == 0.0 || x == 1.0));
}

TEST_CASE("generated samples flow into the other subcommands") {
    const std::string csv = (work_dir() / "pipe.csv").string();
    REQUIRE(run_cli("generate --kind uniform-parabola --n 600 --seed 4 --out " + csv)
                .exit_code == 0);

    const RunResult rep = run_cli("sample " + csv + " --method fast");
    REQUIRE(rep.exit_code == 0);
    const double dcor = rep.json()["dcor"].get<double>();
    CHECK(dcor > 0.1);
    CHECK(dcor < 0.4);

    const RunResult pt = run_cli("permtest " + csv + " --m 199 --seed 3");
    REQUIRE(pt.exit_code == 0);
    CHECK(pt.json()["p_hat"].get<double>() < 0.05);
}

TEST_CASE("examples run all --quick writes every artifact") {
    const fs::path dir = work_dir() / "examples_out";
    fs::create_directories(dir);
    const RunResult r = run_cli("examples run all --quick --out " + dir.string());
    REQUIRE(r.exit_code == 0);
    for (const char* name : {"example1_tables.json", "example2_report.json",
                             "example3_report.json", "example4_curve.csv"})
        CHECK(fs::exists(dir / name));

    const Json e3 = depcov::read_json_file((dir / "example3_report.json").string());
    CHECK(e3["dcor"].get<double>() > 0.2);
    CHECK(e3["dcor"].get<double>() < 0.3);
    CHECK(e3["schema_version"] == 1);

    std::ifstream curve(dir / "example4_curve.csv");
    std::string header;
    std::getline(curve, header);
    CHECK(header == "nu,dcor");
}

TEST_CASE("examples run rejects unknown selectors") {
    CHECK(run_cli("examples run 9 --out .").exit_code != 0);
}

TEST_CASE("bench --quick emits timings to stdout") {
    const RunResult r = run_cli("bench --quick --reps 1 --seed 2");
    REQUIRE(r.exit_code == 0);
    const Json j = r.json();
    CHECK(j["fast"]["n"].size() == 3);
    CHECK(j["naive"]["n"].size() == 3);
    CHECK(j["agreement"]["ok"].get<bool>());

    const fs::path dir = work_dir() / "bench_out";
    fs::create_directories(dir);
    REQUIRE(run_cli("bench --quick --reps 1 --seed 2 --out " + dir.string()).exit_code ==
            0);
    CHECK(fs::exists(dir / "bench.json"));
}

TEST_CASE("bare invocation asks for a subcommand") {
    const RunResult r = run_cli("");
    CHECK(r.exit_code != 0);
}
