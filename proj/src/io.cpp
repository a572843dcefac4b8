#include "wxray/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace wxray {

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

struct Line {
    int number;
    std::string text;
};

std::string trim(std::string s) {
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

std::vector<Line> read_lines(std::istream& is) {
    std::vector<Line> out;
    std::string s;
    int n = 0;
    while (std::getline(is, s)) {
        ++n;
        s = trim(s);
        if (!s.empty()) out.push_back({n, s});
    }
    return out;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(s);
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& s, int line) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto r = std::from_chars(s.data(), end, v);
    if (r.ec != std::errc() || r.ptr != end) throw ParseError(line, "expected a number, got '" + s + "'");
    if (!std::isfinite(v)) throw ParseError(line, "non-finite number '" + s + "'");
    return v;
}

long long parse_int(const std::string& s, int line) {
    long long v = 0;
    const auto* end = s.data() + s.size();
    const auto r = std::from_chars(s.data(), end, v);
    if (r.ec != std::errc() || r.ptr != end) throw ParseError(line, "expected an integer, got '" + s + "'");
    return v;
}

std::uint64_t parse_uint(const std::string& s, int line) {
    std::uint64_t v = 0;
    const auto* end = s.data() + s.size();
    const auto r = std::from_chars(s.data(), end, v);
    if (r.ec != std::errc() || r.ptr != end) throw ParseError(line, "expected an unsigned integer, got '" + s + "'");
    return v;
}

// Splits a document into header map and data rows after the column line.
struct Document {
    std::map<std::string, Line> header;
    std::vector<Line> rows;
    int column_line = 0;
};

Document parse_document(std::istream& is, const std::string& kind, const std::string& columns) {
    const auto lines = read_lines(is);
    const std::string magic = "# " + kind + " v1";
    if (lines.empty()) throw ParseError(1, "empty file, expected '" + magic + "'");
    if (lines.front().text != magic) throw ParseError(lines.front().number, "expected '" + magic + "'");
    Document doc;
    std::size_t i = 1;
    for (; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.text[0] == '#') continue;
        if (l.text == columns) {
            doc.column_line = l.number;
            ++i;
            break;
        }
        const auto eq = l.text.find('=');
        if (eq == std::string::npos) throw ParseError(l.number, "expected key=value or '" + columns + "'");
        const auto key = trim(l.text.substr(0, eq));
        if (doc.header.count(key)) throw ParseError(l.number, "duplicate key '" + key + "'");
        doc.header[key] = {l.number, trim(l.text.substr(eq + 1))};
    }
    if (doc.column_line == 0) throw ParseError(lines.back().number, "missing column line '" + columns + "'");
    for (; i < lines.size(); ++i)
        if (lines[i].text[0] != '#') doc.rows.push_back(lines[i]);
    return doc;
}

const Line& require_key(const Document& doc, const std::string& key) {
    const auto it = doc.header.find(key);
    if (it == doc.header.end()) throw ParseError(doc.column_line, "missing header key '" + key + "'");
    return it->second;
}

WeightParam parse_gamma(const Document& doc) {
    const auto& l = require_key(doc, "gamma");
    const double g = parse_double(l.text, l.number);
    try {
        return WeightParam(g);
    } catch (const std::domain_error& e) {
        throw ParseError(l.number, e.what());
    }
}

std::vector<std::string> row_cells(const Line& l, std::size_t count) {
    auto cells = split_csv(l.text);
    if (cells.size() != count)
        throw ParseError(l.number, "expected " + std::to_string(count) + " fields, got " + std::to_string(cells.size()));
    return cells;
}

}  // namespace

void write_coefficients(std::ostream& os, const CoefficientField& f) {
    os << "# coefficient-field v1\n";
    os << "gamma=" << format_double(f.gamma().value()) << "\n";
    os << "degree=" << f.degree() << "\n";
    os << "n,k,re,im\n";
    for (int n = 0; n <= f.degree(); ++n)
        for (int k = 0; k <= n; ++k) {
            const Complex c = f(n, k);
            os << n << ',' << k << ',' << format_double(c.real()) << ',' << format_double(c.imag()) << '\n';
        }
}

CoefficientField read_coefficients(std::istream& is) {
    const auto doc = parse_document(is, "coefficient-field", "n,k,re,im");
    const WeightParam gamma = parse_gamma(doc);
    const auto& dl = require_key(doc, "degree");
    const long long degree = parse_int(dl.text, dl.number);
    if (degree < 0 || degree > 100000) throw ParseError(dl.number, "degree must be non-negative");
    std::vector<Complex> c(CoefficientField::size_for(static_cast<int>(degree)), Complex(0.0));
    std::set<std::pair<long long, long long>> seen;
    for (const auto& row : doc.rows) {
        const auto cells = row_cells(row, 4);
        const long long n = parse_int(cells[0], row.number);
        const long long k = parse_int(cells[1], row.number);
        if (n < 0 || n > degree) throw ParseError(row.number, "n outside [0, degree]");
        if (k < 0 || k > n) throw ParseError(row.number, "k outside [0, n]");
        if (!seen.insert({n, k}).second) throw ParseError(row.number, "duplicate entry");
        c[CoefficientField::index(static_cast<int>(n), static_cast<int>(k))] =
            Complex(parse_double(cells[2], row.number), parse_double(cells[3], row.number));
    }
    return CoefficientField(gamma, static_cast<int>(degree), std::move(c));
}

void write_sinogram(std::ostream& os, const Sinogram& s, const SinogramMeta& meta) {
    os << "# sinogram v1\n";
    os << "gamma=" << format_double(s.gamma.value()) << "\n";
    os << "beta_count=" << s.beta_count << "\n";
    os << "s_order=" << s.s_order << "\n";
    os << "noise=" << format_double(meta.noise) << "\n";
    os << "seed=" << meta.seed << "\n";
    os << "i,j,re,im\n";
    for (int i = 0; i < s.beta_count; ++i)
        for (int j = 0; j < s.s_order; ++j) {
            const Complex v = s.at(i, j);
            os << i << ',' << j << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
        }
}

SinogramFile read_sinogram(std::istream& is) {
    const auto doc = parse_document(is, "sinogram", "i,j,re,im");
    const WeightParam gamma = parse_gamma(doc);
    const auto& bl = require_key(doc, "beta_count");
    const auto& sl = require_key(doc, "s_order");
    const long long B = parse_int(bl.text, bl.number);
    const long long S = parse_int(sl.text, sl.number);
    if (B < 1 || B > 1000000) throw ParseError(bl.number, "beta_count must be positive");
    if (S < 1 || S > 1000000) throw ParseError(sl.number, "s_order must be positive");
    SinogramMeta meta;
    if (doc.header.count("noise")) {
        const auto& l = doc.header.at("noise");
        meta.noise = parse_double(l.text, l.number);
    }
    if (doc.header.count("seed")) {
        const auto& l = doc.header.at("seed");
        meta.seed = parse_uint(l.text, l.number);
    }
    std::vector<Complex> v(static_cast<std::size_t>(B * S));
    std::vector<bool> seen(v.size(), false);
    for (const auto& row : doc.rows) {
        const auto cells = row_cells(row, 4);
        const long long i = parse_int(cells[0], row.number);
        const long long j = parse_int(cells[1], row.number);
        if (i < 0 || i >= B) throw ParseError(row.number, "i outside [0, beta_count)");
        if (j < 0 || j >= S) throw ParseError(row.number, "j outside [0, s_order)");
        const auto q = static_cast<std::size_t>(i * S + j);
        if (seen[q]) throw ParseError(row.number, "duplicate entry");
        seen[q] = true;
        v[q] = Complex(parse_double(cells[2], row.number), parse_double(cells[3], row.number));
    }
    const auto missing = std::find(seen.begin(), seen.end(), false);
    if (missing != seen.end()) {
        const auto q = static_cast<long long>(missing - seen.begin());
        throw ParseError(doc.rows.empty() ? doc.column_line : doc.rows.back().number,
                         "missing entry i=" + std::to_string(q / S) + ", j=" + std::to_string(q % S));
    }
    return {Sinogram(gamma, static_cast<int>(B), static_cast<int>(S), std::move(v)), meta};
}

Complex evaluate_bumps(const std::vector<Bump>& bumps, const DiskPoint& p) {
    double s = 0.0;
    for (const auto& b : bumps) s += b.amplitude * std::exp(-std::norm(p.z() - b.center) / (b.width * b.width));
    return s;
}

void write_bumps(std::ostream& os, const std::vector<Bump>& bumps) {
    os << "# bump-phantom v1\n";
    os << "cx,cy,width,amplitude\n";
    for (const auto& b : bumps)
        os << format_double(b.center.real()) << ',' << format_double(b.center.imag()) << ',' << format_double(b.width)
           << ',' << format_double(b.amplitude) << '\n';
}

std::vector<Bump> read_bumps(std::istream& is) {
    const auto doc = parse_document(is, "bump-phantom", "cx,cy,width,amplitude");
    std::vector<Bump> out;
    for (const auto& row : doc.rows) {
        const auto cells = row_cells(row, 4);
        Bump b{Complex(parse_double(cells[0], row.number), parse_double(cells[1], row.number)),
               parse_double(cells[2], row.number), parse_double(cells[3], row.number)};
        if (!(std::abs(b.center) < 1.0)) throw ParseError(row.number, "bump center must lie strictly inside the disk");
        if (!(b.width > 0.0)) throw ParseError(row.number, "bump width must be positive");
        out.push_back(b);
    }
    return out;
}

std::string sniff_kind(std::istream& is) {
    const auto pos = is.tellg();
    std::string s;
    std::string kind;
    while (std::getline(is, s)) {
        s = trim(s);
        if (s.empty()) continue;
        for (const char* k : {"coefficient-field", "sinogram", "bump-phantom"})
            if (s == std::string("# ") + k + " v1") kind = k;
        break;
    }
    is.clear();
    is.seekg(pos);
    return kind;
}

void write_spectrum(std::ostream& os, const SpectrumTable& table) {
    os << "n,k,sigma,sigma_sq\n";
    for (int n = 0; n <= table.max_degree(); ++n)
        for (int k = 0; k <= n; ++k)
            os << n << ',' << k << ',' << format_double(table.sigma(n, k)) << ','
               << format_double(table.sigma_sq(n, k)) << '\n';
}

Graymap render_field(const CoefficientField& f, int size, bool real_part) {
    if (size < 1) throw std::domain_error("image resolution must be positive");
    Graymap g;
    g.size = size;
    g.values.assign(static_cast<std::size_t>(size) * size, 0.0);
    g.min = 1e300;
    g.max = -1e300;
    for (int r = 0; r < size; ++r) {
        const double y = 1.0 - (2.0 * r + 1.0) / size;
        for (int c = 0; c < size; ++c) {
            const double x = -1.0 + (2.0 * c + 1.0) / size;
            double v = 0.0;
            if (x * x + y * y <= 1.0) {
                const Complex z = f.evaluate(DiskPoint(x, y));
                v = real_part ? z.real() : std::abs(z);
            }
            g.values[static_cast<std::size_t>(r) * size + c] = v;
            g.min = std::min(g.min, v);
            g.max = std::max(g.max, v);
        }
    }
    return g;
}

void write_graymap(const std::filesystem::path& path, const Graymap& g, const std::string& mode) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot write image '" + path.string() + "'");
    os << "P5\n" << g.size << ' ' << g.size << "\n255\n";
    const double span = g.max - g.min;
    for (const double v : g.values) {
        const double t = span > 0.0 ? (v - g.min) / span : 0.0;
        os.put(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * t))));
    }
    if (!os) throw IoError("failed writing image '" + path.string() + "'");
    auto side = path;
    side += ".txt";
    std::ofstream ss(side);
    if (!ss) throw IoError("cannot write '" + side.string() + "'");
    ss << "mode=" << mode << "\nmin=" << format_double(g.min) << "\nmax=" << format_double(g.max) << "\n";
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open '" + path.string() + "' for reading");
    return is;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    return os;
}

}  // namespace wxray
