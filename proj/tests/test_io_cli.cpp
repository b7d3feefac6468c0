#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "proflik/errors.hpp"
#include "proflik/io.hpp"
#include "proflik/samples.hpp"

using namespace proflik;

#ifndef PROFLIK_CLI_PATH
#error "PROFLIK_CLI_PATH must be defined by the build"
#endif

namespace {

std::string temp_path(const std::string& name) {
    return std::string("proflik_test_") + name;
}

struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& content) : path(temp_path(name)) {
        write_text_file(path, content);
    }
    ~TempFile() { std::remove(path.c_str()); }
};

int run_cli(const std::string& args) {
    const std::string cmd = std::string(PROFLIK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("scalar CSV round trip") {
    const ScalarSample s({0.5, -1.25, 3.75});
    TempFile f("scalar.csv", scalar_to_csv(s));
    const ScalarSample back = read_scalar_csv(f.path);
    REQUIRE(back.n() == 3);
    for (int i = 0; i < 3; ++i)
        CHECK(back.y[static_cast<std::size_t>(i)] == s.y[static_cast<std::size_t>(i)]);
}

TEST_CASE("scalar CSV rejects malformed input") {
    TempFile no_header("no_header.csv", "0.5\n1.5\n");
    CHECK_THROWS_AS(read_scalar_csv(no_header.path), Error);

    TempFile bad_value("bad_value.csv", "y\n0.5\nnot_a_number\n");
    CHECK_THROWS_AS(read_scalar_csv(bad_value.path), Error);

    TempFile trailing("trailing.csv", "y\n0.5x\n");
    CHECK_THROWS_AS(read_scalar_csv(trailing.path), Error);

    TempFile empty("empty.csv", "y\n");
    CHECK_THROWS_AS(read_scalar_csv(empty.path), Error);

    CHECK_THROWS_AS(read_scalar_csv("does_not_exist.csv"), Error);
}

TEST_CASE("scalar CSV accepts CRLF and surrounding spaces") {
    TempFile f("crlf.csv", "y\r\n 0.5 \r\n-1.5\r\n");
    const ScalarSample s = read_scalar_csv(f.path);
    REQUIRE(s.n() == 2);
    CHECK(s.y[0] == 0.5);
    CHECK(s.y[1] == -1.5);
}

TEST_CASE("vector CSV reads the y1..yd convention") {
    TempFile f("vec.csv", "y1,y2\n0.5,-0.2\n1.25,0.75\n");
    const VectorSample vs = read_vector_csv(f.path);
    CHECK(vs.n() == 2);
    CHECK(vs.d() == 2);
    CHECK(vs.rows(1, 0) == 1.25);
    CHECK(vs.rows(1, 1) == 0.75);

    TempFile bad_header("vec_bad.csv", "a,b\n0.5,-0.2\n");
    CHECK_THROWS_AS(read_vector_csv(bad_header.path), Error);

    TempFile ragged("vec_ragged.csv", "y1,y2\n0.5,-0.2\n1.25\n");
    CHECK_THROWS_AS(read_vector_csv(ragged.path), Error);
}

TEST_CASE("regression CSV reads the x1..xq,y convention") {
    TempFile f("reg.csv", "x1,x2,y\n1,0,0.5\n1,1,1.25\n1,2,2.5\n");
    const RegressionSample rs = read_regression_csv(f.path);
    CHECK(rs.n() == 3);
    CHECK(rs.q() == 2);
    CHECK(rs.X(2, 1) == 2.0);
    CHECK(rs.y[2] == 2.5);

    TempFile bad("reg_bad.csv", "x1,z,y\n1,0,0.5\n");
    CHECK_THROWS_AS(read_regression_csv(bad.path), Error);

    TempFile noy("reg_noy.csv", "x1,x2\n1,0\n");
    CHECK_THROWS_AS(read_regression_csv(noy.path), Error);
}

TEST_CASE("CLI gen writes deterministic data") {
    const std::string out1 = temp_path("gen1.csv");
    const std::string out2 = temp_path("gen2.csv");
    CHECK(run_cli("gen --family normal --n 10 --seed 42 -o " + out1) == 0);
    CHECK(run_cli("gen --family normal --n 10 --seed 42 -o " + out2) == 0);
    CHECK(read_text_file(out1) == read_text_file(out2));

    const ScalarSample s = read_scalar_csv(out1);
    CHECK(s.n() == 10);

    const std::string out3 = temp_path("gen3.csv");
    CHECK(run_cli("gen --family normal --n 10 --seed 43 -o " + out3) == 0);
    CHECK(read_text_file(out1) != read_text_file(out3));

    std::remove(out1.c_str());
    std::remove(out2.c_str());
    std::remove(out3.c_str());
}

TEST_CASE("CLI usage errors exit with 2") {
    CHECK(run_cli("") == 2);
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("gen --family klingon --n 10 --seed 1 -o /dev/null") == 2);
    CHECK(run_cli("gen --family normal --seed 1 -o /dev/null") == 2);  // missing --n
    CHECK(run_cli("verify --model normal --mode analytic") == 2);      // missing --input
    CHECK(run_cli("--help") == 0);
}

TEST_CASE("CLI verify pipeline exits 0 on a passing model") {
    const std::string data = temp_path("verify_data.csv");
    const std::string report = temp_path("verify_report.json");
    REQUIRE(run_cli("gen --family normal --n 10 --mu 0 --sigma2 1 --seed 42 -o " + data) == 0);
    CHECK(run_cli("verify --model normal --mode analytic --input " + data + " -o " + report) == 0);

    const auto j = nlohmann::json::parse(read_text_file(report));
    CHECK(j["model"] == "normal");
    CHECK(j["pass"] == true);
    CHECK(j["sup_abs_discrepancy"].get<double>() <= 1e-10);

    // Byte-identical rerun.
    const std::string report2 = temp_path("verify_report2.json");
    CHECK(run_cli("verify --model normal --mode analytic --input " + data + " -o " + report2) ==
          0);
    CHECK(read_text_file(report) == read_text_file(report2));

    std::remove(data.c_str());
    std::remove(report.c_str());
    std::remove(report2.c_str());
}

TEST_CASE("CLI verify reports computation failures with exit 3") {
    // Two observations in d=2 cannot produce a positive-definite scatter.
    TempFile data("mvn_tiny.csv", "y1,y2\n0.0,1.0\n1.0,0.0\n");
    const std::string report = temp_path("mvn_tiny_report.json");
    CHECK(run_cli("verify --model mvn --mode analytic --input " + data.path + " -o " + report) ==
          3);
    const auto j = nlohmann::json::parse(read_text_file(report));
    CHECK(j.contains("error"));
    CHECK(j["error"] == "TooFewObservations");
    std::remove(report.c_str());
}

TEST_CASE("CLI verify rejects unparseable data with exit 2") {
    TempFile data("garbled.csv", "y\n0.5\nhello\n");
    CHECK(run_cli("verify --model normal --mode analytic --input " + data.path +
                  " -o /dev/null") == 2);
}

TEST_CASE("CLI posterior runs the grid route with one curve per prior") {
    const std::string data = temp_path("post_data.csv");
    const std::string out = temp_path("post.json");
    REQUIRE(run_cli("gen --family normal --n 10 --seed 42 -o " + data) == 0);
    CHECK(run_cli("posterior --input " + data + " --prior all -o " + out) == 0);

    const auto j = nlohmann::json::parse(read_text_file(out));
    REQUIRE(j.is_array());
    CHECK(j.size() == 3);
    CHECK(j[0]["meta"]["prior"] == "flat");
    CHECK(j[0]["meta"]["kind"] == "grid-posterior");

    std::remove(data.c_str());
    std::remove(out.c_str());
}

TEST_CASE("CLI conjecture scan exits 0 and writes both artifacts") {
    const std::string csv = temp_path("scan.csv");
    const std::string summary = temp_path("scan_summary.json");
    CHECK(run_cli("conjecture --family normal-control --ns 5,10 --reps 3 --seed 4 -o " + csv +
                  " --summary-out " + summary) == 0);
    const auto j = nlohmann::json::parse(read_text_file(summary));
    CHECK(j["cells"] == 6);
    CHECK(read_text_file(csv).rfind("family,", 0) == 0);
    std::remove(csv.c_str());
    std::remove(summary.c_str());
}
