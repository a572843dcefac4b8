// Text file formats: a "# <kind> v1" magic line, key=value header lines, a CSV column
// line, then rows. Numbers are written with 17 significant digits.
#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "wxray/svdcore.hpp"
#include "wxray/xray.hpp"
#include "wxray/zernike.hpp"

namespace wxray {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what);
    int line() const noexcept { return line_; }

private:
    int line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string format_double(double v);

void write_coefficients(std::ostream& os, const CoefficientField& f);
/// Rows may be sparse; missing entries are zero.
CoefficientField read_coefficients(std::istream& is);

struct SinogramMeta {
    double noise = 0.0;
    std::uint64_t seed = 0;
};
struct SinogramFile {
    Sinogram sinogram;
    SinogramMeta meta;
};
void write_sinogram(std::ostream& os, const Sinogram& s, const SinogramMeta& meta = {});
SinogramFile read_sinogram(std::istream& is);

/// a exp(-|z - c|^2 / w^2)
struct Bump {
    Complex center;
    double width;
    double amplitude;
};
Complex evaluate_bumps(const std::vector<Bump>& bumps, const DiskPoint& p);
void write_bumps(std::ostream& os, const std::vector<Bump>& bumps);
std::vector<Bump> read_bumps(std::istream& is);

/// "coefficient-field", "sinogram", "bump-phantom", or an empty string.
std::string sniff_kind(std::istream& is);

void write_spectrum(std::ostream& os, const SpectrumTable& table);

struct Graymap {
    int size = 0;
    std::vector<double> values;  // row-major, row 0 at y = +1
    double min = 0.0;
    double max = 0.0;
};
/// Samples f on an m x m grid over [-1,1]^2; points outside the disk are zero.
Graymap render_field(const CoefficientField& f, int size, bool real_part);
/// Binary PGM plus "<path>.txt" holding the linear scaling.
void write_graymap(const std::filesystem::path& path, const Graymap& g, const std::string& mode);

std::ifstream open_input(const std::filesystem::path& path);
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace wxray
