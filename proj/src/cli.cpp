#include "wxray/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>

#include "wxray/io.hpp"
#include "wxray/quadrature.hpp"
#include "wxray/svdcore.hpp"
#include "wxray/verify.hpp"
#include "wxray/xray.hpp"

namespace wxray {

namespace {

struct RunConfig {
    double gamma = 0.0;
    bool gamma_set = false;
    bool degree_given = false;
    int degree = 8;
    std::optional<int> beta_count, s_order, radial_order, angular_count;
    double noise = 0.0;
    std::uint64_t seed = 1;
    int resolution = 128;
    std::string out;
    std::string image;
    std::string render = "abs";
    std::string suite;
    std::string input;
    double kappa = 0.3;
    double radius = 0.9;
    std::optional<double> tol;
    double truncate = 0.0;
};

void validate(const RunConfig& c) {
    try {
        WeightParam{c.gamma};
    } catch (const std::domain_error& e) {
        throw CLI::ValidationError("--gamma", e.what());
    }
    if (c.degree < 0) throw CLI::ValidationError("--degree", "must be non-negative");
    if (!(c.noise >= 0.0)) throw CLI::ValidationError("--noise", "must be non-negative");
}

BoundaryQuadrature boundary_for(const RunConfig& c, int degree) {
    const auto d = default_orders(degree);
    return BoundaryQuadrature(WeightParam(c.gamma), c.beta_count.value_or(d.beta_count), c.s_order.value_or(d.s_order));
}

void add_noise(Sinogram& s, double level, std::uint64_t seed) {
    if (level == 0.0) return;
    double ms = 0.0;
    for (const auto& v : s.values) ms += std::norm(v);
    const double rms = std::sqrt(ms / static_cast<double>(s.values.size()));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, level * rms / std::sqrt(2.0));
    for (auto& v : s.values) {
        const double re = normal(rng);
        const double im = normal(rng);
        v += Complex(re, im);
    }
}

// Writes to the --out path, or to the given stream when none is set.
template <typename Writer>
void emit(const std::string& path, std::ostream& fallback, Writer&& write) {
    if (path.empty() || path == "-") {
        write(fallback);
        return;
    }
    auto os = open_output(path);
    write(os);
    if (!os) throw IoError("failed writing '" + path + "'");
}

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
    const SpectrumTable table(WeightParam(c.gamma), c.degree);
    emit(c.out, out, [&](std::ostream& os) { write_spectrum(os, table); });
    return 0;
}

int cmd_synthesize(const RunConfig& c, std::ostream& out, std::ostream& err) {
    auto in = open_input(c.input);
    const auto kind = sniff_kind(in);
    const WeightParam gamma(c.gamma);
    std::optional<Sinogram> sino;
    if (kind == "coefficient-field") {
        const auto f = read_coefficients(in);
        if (!(f.gamma() == gamma))
            throw std::invalid_argument("phantom gamma " + format_double(f.gamma().value()) +
                                        " differs from --gamma " + format_double(c.gamma));
        sino = synthesize(f, boundary_for(c, f.degree()));
    } else if (kind == "bump-phantom") {
        const auto bumps = read_bumps(in);
        const auto d = default_orders(c.degree);
        const DiskQuadrature rule(gamma, c.radial_order.value_or(d.radial_order),
                                  c.angular_count.value_or(d.angular_count));
        const auto f = project_onto_basis([&](const DiskPoint& p) { return evaluate_bumps(bumps, p); }, gamma,
                                          c.degree, rule);
        sino = synthesize(f, boundary_for(c, c.degree));
    } else {
        throw ParseError(1, "'" + c.input + "' is neither a coefficient-field nor a bump-phantom file");
    }
    add_noise(*sino, c.noise, c.seed);
    emit(c.out, out, [&](std::ostream& os) { write_sinogram(os, *sino, {c.noise, c.seed}); });
    if (!c.out.empty() && c.out != "-")
        err << "wrote " << sino->beta_count << "x" << sino->s_order << " sinogram to " << c.out << "\n";
    return 0;
}

int cmd_reconstruct(const RunConfig& c, std::ostream& out, std::ostream& err) {
    auto in = open_input(c.input);
    const auto file = read_sinogram(in);
    if (!(file.sinogram.gamma == WeightParam(c.gamma)))
        throw std::invalid_argument("sinogram gamma " + format_double(file.sinogram.gamma.value()) +
                                    " differs from --gamma " + format_double(c.gamma));
    const auto inv = invert(file.sinogram, c.degree, c.truncate);
    emit(c.out, out, [&](std::ostream& os) { write_coefficients(os, inv.field); });
    err << "range_defect=" << format_double(inv.range_defect) << "\n";
    if (!c.image.empty()) {
        const auto g = render_field(inv.field, c.resolution, c.render == "real");
        write_graymap(c.image, g, c.render);
    }
    return 0;
}

int cmd_range_check(const RunConfig& c, std::ostream& out) {
    auto in = open_input(c.input);
    const auto file = read_sinogram(in);
    if (c.gamma_set && !(file.sinogram.gamma == WeightParam(c.gamma)))
        throw std::invalid_argument("sinogram gamma differs from --gamma");
    const auto a = analyze(file.sinogram, c.degree);
    const double defect = range_defect(a);
    out << "range_defect=" << format_double(defect) << "\n";
    out << "n,k,abs\n";
    for (int n = 0; n <= a.degree(); ++n)
        for (int j = 1; j <= a.k_extra(); ++j)
            for (const int k : {-j, n + j}) {
                const double v = std::abs(a.at(n, k));
                if (v > 1e-12) out << n << ',' << k << ',' << format_double(v) << "\n";
            }
    if (c.tol && defect > *c.tol) return 1;
    return 0;
}

int report(const std::vector<CheckResult>& results, std::ostream& out) {
    bool ok = true;
    for (const auto& r : results) {
        out << (r.pass ? "PASS " : "FAIL ") << r.suite << " " << r.name << " residual=" << std::setprecision(3)
            << std::scientific << r.residual << " tol=" << r.tolerance << std::defaultfloat << "\n";
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    VerifyConfig v;
    if (c.gamma_set) v.gammas = {c.gamma};
    if (c.degree_given) v.degree = c.degree;
    v.tolerance = c.tol;
    return report(run_suite(c.suite, v), out);
}

int cmd_ccd_verify(const RunConfig& c, std::ostream& out) {
    VerifyConfig v;
    if (c.gamma_set) v.gammas = {c.gamma};
    else v.gammas = {0.0, 0.5};
    if (c.degree_given) v.degree = c.degree;
    v.tolerance = c.tol;
    v.charts = {{c.kappa, c.radius}};
    return report(run_suite("ccd", v), out);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weighted X-ray transform on the disk: spectra, synthesis, reconstruction, checks", "wxray"};
    app.require_subcommand(1);
    RunConfig c;

    auto common = [&](CLI::App* s) {
        s->add_option("--gamma", c.gamma, "weight exponent, > -1");
        s->add_option("--degree", c.degree, "maximal polynomial degree N");
    };
    auto rules = [&](CLI::App* s) {
        s->add_option("--beta-count", c.beta_count, "boundary beta nodes");
        s->add_option("--s-order", c.s_order, "boundary Gauss-Jacobi order");
        s->add_option("--radial-order", c.radial_order, "disk radial order");
        s->add_option("--angular-count", c.angular_count, "disk angular nodes");
    };

    auto* spectrum = app.add_subcommand("spectrum", "write the singular values");
    common(spectrum);
    spectrum->add_option("--out", c.out, "output table (stdout if omitted)");

    auto* synth = app.add_subcommand("synthesize", "compute a sinogram from a phantom");
    common(synth);
    rules(synth);
    synth->add_option("phantom", c.input, "coefficient-field or bump-phantom file")->required();
    synth->add_option("--noise", c.noise, "relative additive noise level");
    synth->add_option("--seed", c.seed, "noise seed");
    synth->add_option("--out", c.out, "output sinogram (stdout if omitted)");

    auto* recon = app.add_subcommand("reconstruct", "invert a sinogram");
    common(recon);
    recon->add_option("sinogram", c.input, "sinogram file")->required();
    recon->add_option("--out", c.out, "output coefficients (stdout if omitted)");
    recon->add_option("--image", c.image, "PGM image of the reconstruction");
    recon->add_option("--resolution", c.resolution, "image size in pixels")->check(CLI::PositiveNumber);
    recon->add_option("--render", c.render, "image content")->check(CLI::IsMember({"abs", "real"}));
    recon->add_option("--truncate", c.truncate, "drop modes with singular value below this");

    auto* verify = app.add_subcommand("verify", "run an invariant suite");
    common(verify);
    verify->add_option("--suite", c.suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
    verify->add_option("--tol", c.tol, "override the suite tolerance");

    auto* range = app.add_subcommand("range-check", "report the range-condition defect of a sinogram");
    common(range);
    range->add_option("sinogram", c.input, "sinogram file")->required();
    range->add_option("--tol", c.tol, "fail when the defect exceeds this");

    auto* ccd = app.add_subcommand("ccd-verify", "check the constant-curvature transfer");
    common(ccd);
    ccd->add_option("--kappa", c.kappa, "curvature parameter");
    ccd->add_option("--radius", c.radius, "disk radius");
    ccd->add_option("--tol", c.tol, "intertwining tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        for (auto* s : {spectrum, synth, recon, verify, range, ccd}) {
            if (!s->parsed()) continue;
            c.gamma_set = s->count("--gamma") > 0;
            c.degree_given = s->count("--degree") > 0;
        }
        validate(c);
        if (*spectrum) return cmd_spectrum(c, out);
        if (*synth) return cmd_synthesize(c, out, err);
        if (*recon) return cmd_reconstruct(c, out, err);
        if (*verify) return cmd_verify(c, out);
        if (*range) return cmd_range_check(c, out);
        if (*ccd) return cmd_ccd_verify(c, out);
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace wxray
