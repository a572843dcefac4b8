#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "wxray/cli.hpp"
#include "wxray/io.hpp"

using namespace wxray;
namespace fs = std::filesystem;

namespace {
struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "wxray");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("wxray_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int count_rows(const std::string& text) {
    int rows = 0;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    return rows;
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }
}  // namespace

TEST_CASE("usage errors exit with status 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"verify", "--suite", "nonsense"}).code == 2);
    CHECK(run({"spectrum", "--gamma", "-1"}).code == 2);
    CHECK(run({"spectrum", "--degree", "-3"}).code == 2);
    CHECK(run({"synthesize", "x.txt", "--noise", "-0.1"}).code == 2);
    CHECK(run({"spectrum", "--gamma", "abc"}).code == 2);
}

TEST_CASE("spectrum command") {
    auto r = run({"spectrum", "--gamma", "0", "--degree", "2"});
    CHECK(r.code == 0);
    CHECK(count_rows(r.out) == 7);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        const int n = line[0] - '0';
        CHECK(std::abs(std::stod(line.substr(line.rfind(',') + 1)) - 4 * kPi / (n + 1)) < 1e-13);
    }
    CHECK(count_rows(run({"spectrum", "--gamma", "0.5", "--degree", "0"}).out) == 2);
    r = run({"spectrum", "--gamma", "-0.99", "--degree", "20"});
    CHECK(r.code == 0);
    std::istringstream js(r.out);
    std::getline(js, line);
    while (std::getline(js, line)) {
        const double v = std::stod(line.substr(line.rfind(',') + 1));
        CHECK(std::isfinite(v));
        CHECK(v > 0.0);
    }
    TempDir dir;
    CHECK(run({"spectrum", "--degree", "1", "--out", dir / "no_such" + "/t.csv"}).code == 1);
}

TEST_CASE("synthesize, reconstruct and range-check") {
    TempDir dir;
    std::mt19937_64 rng(71);
    const CoefficientField f(WeightParam(0.5), 6, oracle::random_coefficients(6, rng));
    {
        std::ofstream os(dir / "phantom.txt");
        write_coefficients(os, f);
    }
    auto r = run({"synthesize", dir / "phantom.txt", "--gamma", "0.5", "--degree", "6", "--out", dir / "s.txt"});
    REQUIRE(r.code == 0);
    r = run({"reconstruct", dir / "s.txt", "--gamma", "0.5", "--degree", "6", "--out", dir / "f.txt", "--image", dir / "f.pgm",
             "--resolution", "32"});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("range_defect=") != std::string::npos);
    std::ifstream in(dir / "f.txt");
    CHECK(read_coefficients(in).max_abs_difference(f) <= 1e-9);
    CHECK(fs::exists(dir / "f.pgm"));
    CHECK(fs::exists(dir / "f.pgm.txt"));
    CHECK(run({"range-check", dir / "s.txt", "--gamma", "0.5", "--degree", "6", "--tol", "1e-9"}).code == 0);

    // Gamma mismatch between file and configuration is a hard error.
    r = run({"reconstruct", dir / "s.txt", "--gamma", "0.4", "--degree", "6"});
    CHECK(r.code == 1);
    CHECK(r.err.find("gamma") != std::string::npos);
}

TEST_CASE("constant phantom and empty phantom") {
    TempDir dir;
    write_file(dir / "one.txt", "# coefficient-field v1\ngamma=0\ndegree=0\nn,k,re,im\n0,0," +
                                    format_double(std::sqrt(kPi)) + ",0\n");
    REQUIRE(run({"synthesize", dir / "one.txt", "--degree", "0", "--out", dir / "s1.txt"}).code == 0);
    std::ifstream in(dir / "s1.txt");
    for (const auto& v : read_sinogram(in).sinogram.values) CHECK(std::abs(v - 2.0) < 1e-13);

    write_file(dir / "empty.txt", "# coefficient-field v1\ngamma=0\ndegree=3\nn,k,re,im\n");
    REQUIRE(run({"synthesize", dir / "empty.txt", "--degree", "3", "--out", dir / "s0.txt"}).code == 0);
    std::ifstream in0(dir / "s0.txt");
    for (const auto& v : read_sinogram(in0).sinogram.values) CHECK(v == Complex(0.0));
    const auto r = run({"reconstruct", dir / "s0.txt", "--degree", "3", "--out", dir / "f0.txt"});
    CHECK(r.code == 0);
    CHECK(r.err.find("range_defect=0") != std::string::npos);
    std::ifstream inf(dir / "f0.txt");
    CHECK(read_coefficients(inf).l2_norm() == 0.0);
}

TEST_CASE("seeded noise is deterministic") {
    TempDir dir;
    write_file(dir / "b.txt", "# bump-phantom v1\ncx,cy,width,amplitude\n0.1,0.2,0.3,1\n-0.4,0,0.5,0.5\n");
    const std::vector<std::string> base{"synthesize", dir / "b.txt", "--gamma", "0.5", "--degree", "8", "--noise", "0.01", "--seed", "17"};
    auto a = base, b = base, c = base;
    a.insert(a.end(), {"--out", dir / "a.txt"});
    b.insert(b.end(), {"--out", dir / "b2.txt"});
    c[9] = "18";
    c.insert(c.end(), {"--out", dir / "c.txt"});
    REQUIRE(run(a).code == 0);
    REQUIRE(run(b).code == 0);
    REQUIRE(run(c).code == 0);
    CHECK(slurp(dir / "a.txt") == slurp(dir / "b2.txt"));
    CHECK(slurp(dir / "a.txt") != slurp(dir / "c.txt"));
    std::ifstream in(dir / "a.txt");
    const auto s = read_sinogram(in);
    CHECK(s.meta.seed == 17);
    CHECK(s.meta.noise == 0.01);
}

TEST_CASE("kernel-contaminated sinogram reports a defect and still inverts") {
    TempDir dir;
    const WeightParam G(0.0);
    const int N = 4;
    const auto o = default_orders(N);
    const auto rule = boundary_rule(G, o.beta_count, o.s_order);
    auto s = synthesize(CoefficientField::delta(G, N, 2, 1, 3.0), rule);
    for (std::size_t q = 0; q < rule.size(); ++q) s.values[q] += 0.5 * boundary_basis_regular_factor(BoundaryMode(3, -1, G), rule.nodes[q]);
    {
        std::ofstream os(dir / "k.txt");
        write_sinogram(os, s);
    }
    auto r = run({"reconstruct", dir / "k.txt", "--degree", "4", "--out", dir / "k_f.txt"});
    CHECK(r.code == 0);
    const auto pos = r.err.find("range_defect=");
    REQUIRE(pos != std::string::npos);
    CHECK(std::abs(std::stod(r.err.substr(pos + 13)) - 0.5) < 1e-9);
    std::ifstream in(dir / "k_f.txt");
    CHECK(read_coefficients(in).max_abs_difference(CoefficientField::delta(G, N, 2, 1, 3.0)) <= 1e-9);
    CHECK(run({"range-check", dir / "k.txt", "--degree", "4", "--tol", "1e-6"}).code == 1);
}

TEST_CASE("malformed inputs") {
    TempDir dir;
    write_file(dir / "bad.txt", "# bump-phantom v1\ncx,cy,width,amplitude\n0.1,0.2,oops,1\n");
    auto r = run({"synthesize", dir / "bad.txt"});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 3") != std::string::npos);
    r = run({"synthesize", dir / "missing.txt"});
    CHECK(r.code == 1);
    CHECK(r.err.find("missing.txt") != std::string::npos);
}

TEST_CASE("verify suites") {
    auto r = run({"verify", "--suite", "eigen", "--gamma", "0", "--degree", "8"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(run({"verify", "--suite", "kernel", "--degree", "10", "--gamma", "0.5"}).code == 0);
    CHECK(run({"verify", "--suite", "funcrel", "--degree", "50"}).code == 0);
    CHECK(run({"verify", "--suite", "asym", "--degree", "6", "--gamma", "0.5"}).code == 0);
    CHECK(run({"verify", "--suite", "all", "--degree", "6", "--gamma", "-0.5"}).code == 0);
    CHECK(run({"verify", "--suite", "eigen", "--gamma", "0", "--degree", "4", "--tol", "1e-30"}).code == 1);
    CHECK(run({"ccd-verify", "--kappa", "0.3", "--radius", "0.9", "--degree", "1"}).code == 0);
    CHECK(run({"ccd-verify", "--kappa", "2", "--radius", "0.9"}).code == 1);
}
