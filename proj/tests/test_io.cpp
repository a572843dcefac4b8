#include "doctest.h"

#include <filesystem>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "wxray/io.hpp"

using namespace wxray;

namespace {
int parse_error_line(const std::string& text, const std::function<void(std::istream&)>& reader) {
    std::istringstream is(text);
    try {
        reader(is);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).rfind("line " + std::to_string(e.line()) + ":", 0) == 0);
        return e.line();
    }
    return -1;
}

const auto read_coeffs = [](std::istream& is) { read_coefficients(is); };
const auto read_sino = [](std::istream& is) { read_sinogram(is); };
const auto read_bump = [](std::istream& is) { read_bumps(is); };
}  // namespace

TEST_CASE("doubles survive a decimal round trip") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(std::stod(format_double(0.1)) == 0.1);
}

TEST_CASE("coefficient files round trip exactly") {
    std::mt19937_64 rng(62);
    const CoefficientField f(WeightParam(-0.37), 7, oracle::random_coefficients(7, rng));
    std::stringstream ss;
    write_coefficients(ss, f);
    CHECK(sniff_kind(ss) == "coefficient-field");
    const auto g = read_coefficients(ss);
    CHECK(g.gamma() == f.gamma());
    CHECK(g.degree() == 7);
    CHECK(g.max_abs_difference(f) == 0.0);
}

TEST_CASE("coefficient files: sparse rows and errors") {
    std::istringstream sparse("# coefficient-field v1\ngamma=0.5\ndegree=2\nn,k,re,im\n2,1,1.5,-2\n");
    const auto f = read_coefficients(sparse);
    CHECK(f(2, 1) == Complex(1.5, -2));
    CHECK(f(0, 0) == Complex(0.0));
    std::istringstream empty("# coefficient-field v1\ngamma=0\ndegree=0\nn,k,re,im\n");
    CHECK(read_coefficients(empty).l2_norm() == 0.0);
    CHECK(parse_error_line("# sinogram v1\n", read_coeffs) == 1);
    CHECK(parse_error_line("# coefficient-field v1\ngamma=abc\ndegree=2\nn,k,re,im\n", read_coeffs) == 2);
    CHECK(parse_error_line("# coefficient-field v1\ngamma=0\ndegree=2\nn,k,re,im\n0,0,1,0\n3,1,1,0\n", read_coeffs) == 6);
    CHECK(parse_error_line("# coefficient-field v1\ngamma=0\ndegree=2\nn,k,re,im\n1,2,1,0\n", read_coeffs) == 5);
    CHECK(parse_error_line("# coefficient-field v1\ngamma=0\ndegree=2\nn,k,re,im\n1,0,1,0\n1,0,2,0\n", read_coeffs) == 6);
    CHECK(parse_error_line("# coefficient-field v1\ngamma=0\ndegree=2\nn,k,re,im\n1,0,1\n", read_coeffs) == 5);
    CHECK(parse_error_line("# coefficient-field v1\ngamma=-1\ndegree=2\nn,k,re,im\n", read_coeffs) >= 2);
}

TEST_CASE("sinogram files round trip exactly, metadata included") {
    std::mt19937_64 rng(63);
    std::normal_distribution<double> nd;
    Sinogram s(WeightParam(1.25), 5, 3);
    for (auto& v : s.values) v = Complex(nd(rng), nd(rng));
    std::stringstream ss;
    write_sinogram(ss, s, {0.01, 12345678901234ULL});
    CHECK(sniff_kind(ss) == "sinogram");
    const auto r = read_sinogram(ss);
    CHECK(r.sinogram.gamma == s.gamma);
    CHECK(r.sinogram.beta_count == 5);
    CHECK(r.sinogram.s_order == 3);
    CHECK(r.sinogram.values == s.values);
    CHECK(r.meta.noise == 0.01);
    CHECK(r.meta.seed == 12345678901234ULL);
}

TEST_CASE("sinogram parse errors carry line numbers") {
    const std::string head = "# sinogram v1\ngamma=0\nbeta_count=1\ns_order=2\nnoise=0\nseed=0\ni,j,re,im\n";
    CHECK(parse_error_line(head + "0,0,1,0\n", read_sino) > 0);
    CHECK(parse_error_line(head + "0,0,1,0\n0,5,1,0\n", read_sino) == 9);
    CHECK(parse_error_line(head + "0,0,1,0\n0,1,x,0\n", read_sino) == 9);
    CHECK(parse_error_line("# sinogram v1\ngamma=0\nbeta_count=0\ns_order=2\nnoise=0\nseed=0\ni,j,re,im\n", read_sino) > 0);
    std::istringstream ok(head + "0,0,1,0\n0,1,2,3\n");
    CHECK(read_sinogram(ok).sinogram.at(0, 1) == Complex(2, 3));
}

TEST_CASE("bump phantoms") {
    const std::vector<Bump> bumps{{Complex(0.2, -0.1), 0.3, 1.5}, {Complex(-0.5, 0.0), 0.1, -0.25}};
    std::stringstream ss;
    write_bumps(ss, bumps);
    CHECK(sniff_kind(ss) == "bump-phantom");
    const auto back = read_bumps(ss);
    REQUIRE(back.size() == 2);
    CHECK(back[1].center == bumps[1].center);
    CHECK(back[1].width == bumps[1].width);
    CHECK(back[1].amplitude == bumps[1].amplitude);
    const DiskPoint p(0.25, -0.05);
    const Complex want = 1.5 * std::exp(-std::norm(p.z() - Complex(0.2, -0.1)) / 0.09) - 0.25 * std::exp(-std::norm(p.z() + 0.5) / 0.01);
    CHECK(std::abs(evaluate_bumps(bumps, p) - want) < 1e-15);
    CHECK(parse_error_line("# bump-phantom v1\ncx,cy,width,amplitude\n1.0,0,0.2,1\n", read_bump) == 3);
    CHECK(parse_error_line("# bump-phantom v1\ncx,cy,width,amplitude\n0,0,0.2,1\n0,0,0,1\n", read_bump) == 4);
    std::istringstream junk("hello\n");
    CHECK(sniff_kind(junk) == "");
}

TEST_CASE("spectrum table output") {
    std::ostringstream os;
    write_spectrum(os, SpectrumTable(WeightParam(0), 2));
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "n,k,sigma,sigma_sq");
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        const auto last = line.rfind(',');
        const int n = line[0] - '0';
        CHECK(std::abs(std::stod(line.substr(last + 1)) - 4 * kPi / (n + 1)) < 1e-13);
    }
    CHECK(rows == 6);
}

TEST_CASE("graymap rendering and output") {
    const auto f = CoefficientField::delta(WeightParam(0), 1, 1, 0);
    const auto g = render_field(f, 9, true);
    CHECK(g.size == 9);
    CHECK(g.values.size() == 81);
    CHECK(g.values[0] == 0.0);  // corner lies outside the disk
    CHECK(g.values[4 * 9 + 8] > 0.0);  // x = +1 on the middle row
    CHECK(g.values[4 * 9 + 0] < 0.0);
    CHECK(g.max >= g.values[4 * 9 + 8]);
    const auto dir = std::filesystem::temp_directory_path() / "wxray_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "img.pgm";
    write_graymap(path, g, "real");
    std::ifstream in(path, std::ios::binary);
    std::string magic;
    in >> magic;
    CHECK(magic == "P5");
    CHECK(std::filesystem::exists(dir / "img.pgm.txt"));
    CHECK(std::filesystem::file_size(path) > 81);
    CHECK_THROWS_AS(open_input(dir / "missing.txt"), IoError);
    CHECK_THROWS_AS(open_output(dir / "no_such_dir" / "x.txt"), IoError);
    std::filesystem::remove_all(dir);
}
