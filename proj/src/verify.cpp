#include "wxray/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "wxray/ccd.hpp"
#include "wxray/svdcore.hpp"
#include "wxray/xray.hpp"
#include "wxray/zernike.hpp"

namespace wxray {

std::vector<DiskPoint> sample_points(int count, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<DiskPoint> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
        // Every eighth point on the boundary circle.
        const double rho = (i % 8 == 7) ? 1.0 : std::sqrt(u(rng));
        pts.push_back(DiskPoint::polar(rho, 2.0 * kPi * u(rng)));
    }
    return pts;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"eigen", "kernel", "funcrel", "asym", "ladder", "ccd", "all"};
    return names;
}

namespace {

std::string gamma_tag(double g) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "gamma=%g", g);
    return buf;
}

CheckResult make(const std::string& suite, const std::string& name, double residual, double tol) {
    return {suite, name, residual, tol, residual <= tol};
}

std::vector<CheckResult> suite_eigen(const VerifyConfig& cfg) {
    const int N = cfg.degree.value_or(8);
    const double tol = cfg.tolerance.value_or(1e-8);
    const auto pts = sample_points(16, 11);
    std::vector<CheckResult> out;
    for (const double g : cfg.gammas) {
        const WeightParam gamma(g);
        double worst = 0.0;
        for (int n = 0; n <= N; ++n)
            for (int k = 0; k <= n; ++k) {
                const ZernikeIndex idx(n, k, gamma);
                const DiskFunction f = [&](const DiskPoint& p) { return g_hat_eval(idx, p); };
                const double s2 = sigma_sq(n, k, gamma);
                for (const auto& p : pts)
                    worst = std::max(worst, std::abs(normal_apply(f, gamma, p, normal_orders_for(n)) - s2 * f(p)) / s2);
            }
        out.push_back(make("eigen", gamma_tag(g) + " N=" + std::to_string(N), worst, tol));
    }
    return out;
}

std::vector<CheckResult> suite_kernel(const VerifyConfig& cfg) {
    const int N = cfg.degree.value_or(10);
    const double tol = cfg.tolerance.value_or(1e-10);
    const auto pts = sample_points(64, 12);
    std::vector<CheckResult> out;
    for (const double g : cfg.gammas) {
        const WeightParam gamma(g);
        double worst = 0.0;
        for (int n = 0; n <= N; ++n)
            for (int j = 1; j <= 3; ++j)
                for (const int k : {-j, n + j}) {
                    const BoundaryMode mode(n, k, gamma);
                    const BoundaryFunction psi = [&](const FanBeam& l) { return psi_regular_factor(mode, l); };
                    for (const auto& p : pts)
                        worst = std::max(worst, std::abs(backproject(psi, gamma, p, normal_orders_for(n + 3).theta_order)));
                }
        out.push_back(make("kernel", gamma_tag(g) + " N=" + std::to_string(N), worst, tol));
    }
    return out;
}

std::vector<CheckResult> suite_funcrel(const VerifyConfig& cfg) {
    const int N = cfg.degree.value_or(50);
    const double tol = cfg.tolerance.value_or(1e-12);
    std::vector<CheckResult> out;
    for (const double g : cfg.gammas) {
        const WeightParam gamma(g);
        double gap = 0.0;
        for (int n = 0; n <= N; ++n)
            for (int k = 0; k <= n; ++k) {
                const double s2 = sigma_sq(n, k, gamma);
                gap = std::max(gap, std::abs(funcrel_sigma_sq(n, k, gamma) - s2) / s2);
                gap = std::max(gap, std::abs(funcrel_sigma_sq_beta_form(n, k, gamma) - s2) / s2);
                gap = std::max(gap, std::abs(sigma_sq_beta_form(n, k, gamma) - s2) / s2);
            }
        out.push_back(make("funcrel", gamma_tag(g) + " N=" + std::to_string(N), gap, tol));
    }
    return out;
}

std::vector<CheckResult> suite_asym(const VerifyConfig& cfg) {
    const int N = cfg.degree.value_or(300);
    const double tol = cfg.tolerance.value_or(1e-12);
    std::vector<CheckResult> out;
    for (const double g : cfg.gammas) {
        const WeightParam gamma(g);
        // The envelope limits are asymptotic, so the scan always reaches degree 300.
        const int scan = std::max(N, 300);
        const auto r = asym_envelope_check(gamma, scan);
        out.push_back(make("asym", gamma_tag(g) + " extremizers N=" + std::to_string(scan), r.extremizers_ok ? 0.0 : 1.0, 0.0));
        const bool finite = r.mid_min > 0.0 && r.end_min > 0.0 && std::isfinite(r.mid_max) && std::isfinite(r.end_max);
        const double band = std::max(std::abs(r.tail_min - 1.0), std::abs(r.tail_max - 1.0));
        out.push_back(make("asym", gamma_tag(g) + " envelope tail N=" + std::to_string(scan),
                           finite ? band : std::numeric_limits<double>::infinity(), kEnvelopeTailBand));
        double ratio_gap = 0.0;
        for (int n = 1; n <= N; ++n)
            for (int k = 0; k < n; ++k) {
                const double direct = std::exp(ln_sigma_sq(n, k + 1, gamma) - ln_sigma_sq(n, k, gamma));
                ratio_gap = std::max(ratio_gap, std::abs(sigma_ratio(n, k, gamma) - direct) / direct);
            }
        out.push_back(make("asym", gamma_tag(g) + " ratio", ratio_gap, tol));
    }
    return out;
}

// d/dz and d/dzbar of a field by Richardson-extrapolated central differences.
std::pair<Complex, Complex> fd_wirtinger(const CoefficientField& f, const DiskPoint& p, double h) {
    auto central = [&](double step) {
        const Complex ex = (f.evaluate(DiskPoint(p.z() + step)) - f.evaluate(DiskPoint(p.z() - step))) / (2.0 * step);
        const Complex ey = (f.evaluate(DiskPoint(p.z() + Complex(0, step))) -
                            f.evaluate(DiskPoint(p.z() - Complex(0, step)))) / (2.0 * step);
        return std::pair{ex, ey};
    };
    const auto [ax, ay] = central(h);
    const auto [bx, by] = central(h / 2);
    const Complex fx = (4.0 * bx - ax) / 3.0;
    const Complex fy = (4.0 * by - ay) / 3.0;
    const Complex I(0.0, 1.0);
    return {0.5 * (fx - I * fy), 0.5 * (fx + I * fy)};
}

std::vector<CheckResult> suite_ladder(const VerifyConfig& cfg) {
    const int N = cfg.degree.value_or(8);
    const double tol = cfg.tolerance.value_or(1e-7);
    std::vector<CheckResult> out;
    std::mt19937_64 rng(13);
    std::normal_distribution<double> normal;
    std::vector<DiskPoint> pts;
    for (const auto& p : sample_points(24, 14))
        if (p.rho() < 0.9) pts.push_back(p);
    for (const double g : cfg.gammas) {
        const WeightParam gamma(g);
        std::vector<Complex> c(CoefficientField::size_for(N));
        for (auto& v : c) v = Complex(normal(rng), normal(rng));
        const CoefficientField f(gamma, N, std::move(c));
        const auto dz = d_dz(f);
        const auto dzb = d_dzbar(f);
        double worst = 0.0, scale = 1.0;
        for (const auto& p : pts) {
            const auto [fz, fzb] = fd_wirtinger(f, p, 1e-3);
            scale = std::max({scale, std::abs(fz), std::abs(fzb)});
            worst = std::max({worst, std::abs(fz - dz.evaluate(p)), std::abs(fzb - dzb.evaluate(p))});
        }
        out.push_back(make("ladder", gamma_tag(g) + " N=" + std::to_string(N), worst / scale, tol));
        bool bound = true;
        for (int n = 0; n <= 200; ++n) bound = bound && ladder_bound_holds(n, gamma);
        out.push_back(make("ladder", gamma_tag(g) + " coefficient bound n<=200", bound ? 0.0 : 1.0, 0.0));
    }
    return out;
}

std::vector<CheckResult> suite_ccd(const VerifyConfig& cfg) {
    const int N = cfg.degree.value_or(2);
    const double tol = cfg.tolerance.value_or(1e-6);
    std::vector<CheckResult> out;
    const std::vector<Complex> pts{{0.0, 0.0}, {0.31, 0.22}, {-0.45, 0.38}, {0.1, -0.7}};
    for (const auto& [kappa, R] : cfg.charts) {
        const CCDChart chart(kappa, R);
        char tag[64];
        std::snprintf(tag, sizeof tag, "kappa=%g R=%g", kappa, R);
        double murel = 0.0;
        for (int i = -50; i <= 50; ++i) {
            const auto [l, r] = murel_check(chart, FanBeam(0.0, i * (kPi / 2) / 50.0));
            murel = std::max(murel, std::abs(l - r));
        }
        out.push_back(make("ccd", std::string(tag) + " murel", murel, 1e-12));
        double gap = 0.0;
        for (const auto& p : pts) {
            if (std::abs(p) > 0.95 * R) continue;
            const auto fan = curved_fan(chart, p, 64, 1e-3);
            for (const double g : cfg.gammas)
                for (int n = 0; n <= N; ++n)
                    for (int k = 0; k <= n; ++k)
                        gap = std::max(gap, interIstar_verify(chart, WeightParam(g), BoundaryMode(n, k, WeightParam(g)), p, fan));
        }
        out.push_back(make("ccd", std::string(tag) + " intertwining", gap, tol));
    }
    // Flat unit chart against the Euclidean normal operator.
    const CCDChart flat(0.0, 1.0);
    double flat_gap = 0.0;
    for (const double g : cfg.gammas) {
        const WeightParam gamma(g);
        const ZernikeIndex idx(std::min(N, 3), 0, gamma);
        const DiskFunction f = [&](const DiskPoint& p) { return g_hat_eval(idx, p); };
        const auto orders = normal_orders_for(idx.n);
        for (const auto& p : sample_points(8, 15)) {
            const Complex a = transfer_normal_apply(flat, gamma, [&](Complex z) { return f(DiskPoint(z)); }, p.z(), orders);
            const Complex b = normal_apply(f, gamma, p, orders);
            flat_gap = std::max(flat_gap, std::abs(a - b) / std::max(std::abs(b), 1.0));
        }
    }
    out.push_back(make("ccd", "flat chart reduction", flat_gap, 1e-10));
    return out;
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyConfig& config) {
    if (suite == "eigen") return suite_eigen(config);
    if (suite == "kernel") return suite_kernel(config);
    if (suite == "funcrel") return suite_funcrel(config);
    if (suite == "asym") return suite_asym(config);
    if (suite == "ladder") return suite_ladder(config);
    if (suite == "ccd") return suite_ccd(config);
    if (suite == "all") {
        std::vector<CheckResult> all;
        for (const auto& s : suite_names()) {
            if (s == "all") continue;
            auto r = run_suite(s, config);
            all.insert(all.end(), r.begin(), r.end());
        }
        return all;
    }
    throw std::invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace wxray
