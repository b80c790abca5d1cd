#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wbell/cli.hpp"

using namespace wbell;
using wbell::cli::run_cli;

namespace {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("complex amplitude parsing", "[cli]") {
    using wbell::cli::parse_complex;
    CHECK(parse_complex("0.57735+0j") == cplx(0.57735, 0.0));
    CHECK(parse_complex("1") == cplx(1.0, 0.0));
    CHECK(parse_complex("-0.5") == cplx(-0.5, 0.0));
    CHECK(parse_complex("0.5-0.3j") == cplx(0.5, -0.3));
    CHECK(parse_complex("1.5e-3+2j") == cplx(1.5e-3, 2.0));
    CHECK(parse_complex("0.5j") == cplx(0.0, 0.5));
    CHECK(parse_complex("-1j") == cplx(0.0, -1.0));
    CHECK(parse_complex("j") == cplx(0.0, 1.0));
    CHECK_THROWS_AS(parse_complex("abc"), validation_error);
    CHECK_THROWS_AS(parse_complex("1.2.3"), validation_error);
    CHECK_THROWS_AS(wbell::cli::parse_amp_list("1,2"), validation_error);
    CHECK_THROWS_AS(wbell::cli::parse_amp_list("1,2,3,4"), validation_error);
}

TEST_CASE("help lists every subcommand and exits zero", "[cli]") {
    const CliRun r = invoke({"--help"});
    CHECK(r.code == 0);
    for (const char* sub : {"measure", "sample", "boundary", "figure", "verify"})
        CHECK(r.out.find(sub) != std::string::npos);
}

TEST_CASE("measure prints the W-state table", "[cli]") {
    const CliRun r =
        invoke({"measure", "--amps", "0.57735+0j,0.57735+0j,0.57735+0j", "--sector", "single"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("0.888889") != std::string::npos);
    CHECK(r.out.find("0.666667") != std::string::npos);
    CHECK(r.out.find("0.412023") != std::string::npos);
    CHECK(r.out.find("0.592593") != std::string::npos);
    CHECK(r.out.find("no") != std::string::npos);
}

TEST_CASE("measure --json emits machine-readable records", "[cli]") {
    const CliRun r = invoke({"measure", "--amps", "0,0.7071067811865476,0.7071067811865476",
                          "--sector", "single", "--json", "--verify"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["pairs"].size() == 3);
    CHECK(doc["pairs"][0]["pair"] == "12");
    CHECK(doc["pairs"][0]["m"].get<double>() == Catch::Approx(2.0).margin(1e-12));
    CHECK(doc["pairs"][0]["violates"].get<bool>());
    CHECK(doc["sector"] == "single");
}

TEST_CASE("measure rejects the zero vector with exit 2", "[cli]") {
    const CliRun r = invoke({"measure", "--amps", "0,0,0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("zero") != std::string::npos);
}

TEST_CASE("unknown flags are usage errors", "[cli]") {
    CHECK(invoke({"measure", "--amps", "1,0,0", "--frobnicate"}).code == 1);
    CHECK(invoke({"nonsense"}).code == 1);
    CHECK(invoke({}).code == 1);
}

TEST_CASE("boundary emits the requested polyline", "[cli]") {
    const CliRun r = invoke({"boundary", "--curve", "m_max_vs_entropy", "--from", "0", "--to",
                          "0.6666", "--steps", "3"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("x,y", 0) == 0);
    CHECK(r.out.find("0,2\n") != std::string::npos);
    // endpoint row: x = 0.6666, y close to 0.5
    std::istringstream in(r.out);
    std::string line, last;
    while (std::getline(in, line))
        if (!line.empty()) last = line;
    const auto comma = last.find(',');
    CHECK(std::stod(last.substr(0, comma)) == Catch::Approx(0.6666).margin(1e-12));
    // m_max(0.6666) = (2 + sqrt(0.0004))^2 / 8 = 0.51005
    CHECK(std::stod(last.substr(comma + 1)) == Catch::Approx(0.51005).margin(1e-9));

    CHECK(invoke({"boundary", "--curve", "no_such", "--from", "0", "--to", "1"}).code == 2);
    CHECK(invoke({"boundary", "--curve", "m_max_vs_entropy", "--from", "0", "--to", "0.9"}).code == 2);
}

TEST_CASE("sample writes deterministic CSV and echoes the seed", "[cli]") {
    namespace fs = std::filesystem;
    const fs::path p1 = fs::temp_directory_path() / "wbell_cli_s1.csv";
    const fs::path p2 = fs::temp_directory_path() / "wbell_cli_s2.csv";

    const CliRun r1 = invoke({"sample", "--n", "500", "--seed", "42", "--out", p1.string()});
    REQUIRE(r1.code == 0);
    CHECK(r1.out.find("seed: 42") != std::string::npos);
    const CliRun r2 = invoke({"sample", "--n", "500", "--seed", "42", "--out", p2.string(),
                           "--workers", "4"});
    REQUIRE(r2.code == 0);
    CHECK(slurp(p1) == slurp(p2));
    fs::remove(p1);
    fs::remove(p2);
}

TEST_CASE("sample without --seed randomizes but still echoes it", "[cli]") {
    namespace fs = std::filesystem;
    const fs::path p = fs::temp_directory_path() / "wbell_cli_s3.csv";
    const CliRun r = invoke({"sample", "--n", "10", "--out", p.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("seed: ") != std::string::npos);
    fs::remove(p);
}

TEST_CASE("figure writes scatter, curves and SVG", "[cli]") {
    namespace fs = std::filesystem;
    const fs::path csv = fs::temp_directory_path() / "wbell_cli_fig6.csv";
    const fs::path svg = fs::temp_directory_path() / "wbell_cli_fig6.svg";
    const CliRun r = invoke({"figure", "--id", "fig6", "--n", "2000", "--seed", "3", "--csv",
                          csv.string(), "--svg", svg.string()});
    REQUIRE(r.code == 0);
    CHECK(fs::exists(csv));
    CHECK(fs::exists(svg));
    const fs::path curve = fs::temp_directory_path() / "wbell_cli_fig6_m_max_vs_entropy.csv";
    CHECK(fs::exists(curve));
    CHECK(slurp(csv).find("x,y,region") != std::string::npos);
    CHECK(slurp(svg).find("</svg>") != std::string::npos);
    fs::remove(csv);
    fs::remove(svg);
    fs::remove(curve);

    CHECK(invoke({"figure", "--id", "fig9", "--n", "10", "--seed", "1", "--csv", "x.csv"}).code == 2);
}

TEST_CASE("figure --id fig2 emits both panels", "[cli]") {
    namespace fs = std::filesystem;
    const fs::path csv = fs::temp_directory_path() / "wbell_cli_fig2.csv";
    const CliRun r =
        invoke({"figure", "--id", "fig2", "--n", "2000", "--seed", "3", "--csv", csv.string()});
    REQUIRE(r.code == 0);
    const fs::path a = fs::temp_directory_path() / "wbell_cli_fig2_a.csv";
    const fs::path b = fs::temp_directory_path() / "wbell_cli_fig2_b.csv";
    CHECK(fs::exists(a));
    CHECK(fs::exists(b));
    for (const auto& entry : fs::directory_iterator(fs::temp_directory_path())) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("wbell_cli_fig2", 0) == 0) fs::remove(entry.path());
    }
}

TEST_CASE("verify on a small scan exits zero and prints the resolved interval", "[cli]") {
    const CliRun r = invoke({"verify", "--n", "5000", "--seed", "11"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("seed: 11") != std::string::npos);
    CHECK(r.out.find("resolved:") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);

    const CliRun rj = invoke({"verify", "--n", "2000", "--seed", "11", "--json"});
    REQUIRE(rj.code == 0);
    const auto pos = rj.out.find('{');
    REQUIRE(pos != std::string::npos);
    const auto doc = nlohmann::json::parse(rj.out.substr(pos));
    CHECK(doc["all_pass"].get<bool>());
}

TEST_CASE("I/O failures exit with code 4", "[cli]") {
    const CliRun r = invoke({"sample", "--n", "5", "--seed", "1", "--out", "/nonexistent/dir/x.csv"});
    CHECK(r.code == 4);
    CHECK(r.err.find("/nonexistent/dir/x.csv") != std::string::npos);
}
