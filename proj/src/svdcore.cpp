#include "wxray/svdcore.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace wxray {

namespace {

Complex i_pow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

void require_lattice(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw std::domain_error("singular values exist only for 0 <= k <= n");
}

}  // namespace

BoundaryMode::BoundaryMode(int n_, int k_, WeightParam gamma_) : n(n_), k(k_), gamma(gamma_) {
    if (n < 0) throw std::domain_error("boundary mode degree must be non-negative");
}

Complex psi_regular_factor(const BoundaryMode& mode, const FanBeam& line) {
    const double sign = (mode.n % 2 == 0) ? 1.0 : -1.0;
    const double amp = sign / (2.0 * kPi) * gegenbauer_L(mode.n, mode.gamma, std::sin(line.alpha));
    return std::polar(amp, (mode.n - 2.0 * mode.k) * (line.beta + line.alpha));
}

double psi_norm_sq(const BoundaryMode& mode) { return gegenbauer_norm_sq(mode.n, mode.gamma) / (2.0 * kPi); }

Complex boundary_basis_regular_factor(const BoundaryMode& mode, const FanBeam& line) {
    return i_pow(mode.n) * psi_regular_factor(mode, line) / std::sqrt(psi_norm_sq(mode));
}

double ln_sigma_sq(int n, int k, WeightParam gamma) {
    require_lattice(n, k);
    k = std::min(k, n - k);
    const double g = gamma.value();
    return (2.0 * g + 2.0) * std::log(2.0) + std::log(kPi) + ln_binomial(n, k) + ln_gamma(n - k + g + 1.0) +
           ln_gamma(k + g + 1.0) - ln_gamma(n + 2.0 * g + 2.0);
}

double sigma_sq(int n, int k, WeightParam gamma) { return std::exp(ln_sigma_sq(n, k, gamma)); }

double sigma(int n, int k, WeightParam gamma) { return std::exp(0.5 * ln_sigma_sq(n, k, gamma)); }

double sigma_sq_beta_form(int n, int k, WeightParam gamma) {
    require_lattice(n, k);
    const double g = gamma.value();
    const double ln = (2.0 * g + 2.0) * std::log(2.0) + std::log(kPi) - std::log(n + 1.0) +
                      ln_beta(n - k + 1.0 + g, k + 1.0 + g) - ln_beta(n - k + 1.0, k + 1.0);
    return std::exp(ln);
}

double sigma_ratio(int n, int k, WeightParam gamma) {
    if (n < 1 || k < 0 || k > n - 1) throw std::domain_error("sigma_ratio requires 0 <= k <= n-1");
    const double g = gamma.value();
    return (n - k) / (n - k + g) * ((k + 1.0 + g) / (k + 1.0));
}

SpectrumTable::SpectrumTable(WeightParam gamma, int max_degree)
    : gamma_(gamma), max_degree_(max_degree), sigma_(CoefficientField::size_for(max_degree)) {
    for (int n = 0; n <= max_degree; ++n)
        for (int k = 0; k <= n; ++k) sigma_[CoefficientField::index(n, k)] = wxray::sigma(n, k, gamma);
}

double SpectrumTable::sigma(int n, int k) const {
    require_lattice(n, k);
    if (n > max_degree_) throw std::out_of_range("degree beyond spectrum table");
    return sigma_[CoefficientField::index(n, k)];
}

double SpectrumTable::sigma_sq(int n, int k) const {
    const double s = sigma(n, k);
    return s * s;
}

EnvelopeReport asym_envelope_check(WeightParam gamma, int max_degree) {
    if (max_degree < 2) throw std::domain_error("envelope check needs N >= 2");
    const double g = gamma.value();
    EnvelopeReport r;
    r.mid_limit = 4.0 * kPi;
    r.end_limit = std::exp((2.0 * g + 2.0) * std::log(2.0) + std::log(kPi) + ln_gamma(1.0 + g));
    r.mid_min = r.end_min = r.tail_min = 1e300;
    r.mid_max = r.end_max = r.tail_max = 0.0;
    r.lower_constant = 1e300;
    r.upper_constant = 0.0;
    const double lo_exp = std::min(-1.0, -1.0 - g);
    const double hi_exp = std::max(-1.0, -1.0 - g);
    const double rel = 1e-12;
    for (int n = 0; n <= max_degree; ++n) {
        const double mid = sigma_sq(n, n / 2, gamma);
        const double end = sigma_sq(n, 0, gamma);
        double lo = 1e300, hi = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double s2 = sigma_sq(n, k, gamma);
            lo = std::min(lo, s2);
            hi = std::max(hi, s2);
            const double scale = n + 1.0 + g;
            r.lower_constant = std::min(r.lower_constant, s2 * std::pow(scale, -lo_exp));
            r.upper_constant = std::max(r.upper_constant, s2 * std::pow(scale, -hi_exp));
        }
        // gamma > 0: largest in the middle, smallest at the ends; gamma < 0 reversed.
        bool ok = true;
        if (g > 0.0) ok = mid >= hi * (1.0 - rel) && end <= lo * (1.0 + rel);
        else if (g < 0.0) ok = mid <= lo * (1.0 + rel) && end >= hi * (1.0 - rel);
        else ok = hi <= lo * (1.0 + rel);
        if (!ok && r.extremizers_ok) {
            r.extremizers_ok = false;
            r.first_bad_degree = n;
        }
        const double mid_env = mid * (n + 1.0) / r.mid_limit;
        const double end_env = end * std::pow(n + 1.0, 1.0 + g) / r.end_limit;
        r.mid_min = std::min(r.mid_min, mid_env);
        r.mid_max = std::max(r.mid_max, mid_env);
        r.end_min = std::min(r.end_min, end_env);
        r.end_max = std::max(r.end_max, end_env);
        if (2 * n >= max_degree) {
            r.tail_min = std::min({r.tail_min, mid_env, end_env});
            r.tail_max = std::max({r.tail_max, mid_env, end_env});
        }
    }
    r.bands_ok = r.mid_min > 0.0 && r.end_min > 0.0 && std::isfinite(r.mid_max) && std::isfinite(r.end_max) &&
                 r.tail_min >= 1.0 - kEnvelopeTailBand && r.tail_max <= 1.0 + kEnvelopeTailBand;
    return r;
}

// ---------------------------------------------------------------------------------------

BoundaryCoefficients::BoundaryCoefficients(WeightParam gamma, int degree, int k_extra)
    : gamma_(gamma), degree_(degree), k_extra_(k_extra) {
    if (degree < 0 || k_extra < 0) throw std::domain_error("boundary coefficient ranges must be non-negative");
    values_.assign(offset(degree, degree + k_extra) + 1, Complex(0.0));
}

std::size_t BoundaryCoefficients::offset(int n, int k) const {
    if (n < 0 || n > degree_ || k < -k_extra_ || k > n + k_extra_)
        throw std::out_of_range("boundary coefficient index outside the analyzed band");
    // Row n holds n + 1 + 2K entries.
    const auto nn = static_cast<std::size_t>(n);
    const auto kk = static_cast<std::size_t>(k_extra_);
    return nn * (nn + 1) / 2 + nn * (2 * kk) + static_cast<std::size_t>(k + k_extra_);
}

Complex& BoundaryCoefficients::at(int n, int k) { return values_[offset(n, k)]; }
Complex BoundaryCoefficients::at(int n, int k) const { return values_[offset(n, k)]; }

void require_resolved(const Sinogram& s, int degree, int k_extra) {
    const int need_s = degree + 2;
    const int need_b = 2 * (degree + k_extra) + 2;
    if (s.s_order < need_s || s.beta_count < need_b) {
        std::ostringstream msg;
        msg << "boundary rule under-resolved for degree " << degree << ": need s_order >= " << need_s
            << " and beta_count >= " << need_b << " (have " << s.s_order << ", " << s.beta_count << ")";
        throw std::invalid_argument(msg.str());
    }
}

BoundaryCoefficients analyze(const Sinogram& s, int degree, int k_extra) {
    require_resolved(s, degree, k_extra);
    const BoundaryQuadrature rule = s.rule();
    const int S = s.s_order;
    const int B = s.beta_count;
    BoundaryCoefficients out(s.gamma, degree, k_extra);

    // L_n(s_j) / ||psi_n|| with the (-1)^n / 2pi and i^n factors folded in.
    std::vector<std::vector<Complex>> profile(static_cast<std::size_t>(degree) + 1, std::vector<Complex>(S));
    for (int j = 0; j < S; ++j) {
        const auto L = gegenbauer_L_all(degree, s.gamma, rule.s_rule.nodes[j]);
        for (int n = 0; n <= degree; ++n) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            const BoundaryMode m(n, 0, s.gamma);
            profile[n][j] = i_pow(n) * (sign / (2.0 * kPi) * L[n] / std::sqrt(psi_norm_sq(m)));
        }
    }
    // Fourier moments of the data in beta + alpha at each s node:
    // M_j(m) = sum_i w_beta g~(beta_i, s_j) e^{-i m (beta_i + alpha_j)}.
    const int mmax = degree + 2 * k_extra;
    const double wb = 2.0 * kPi / B;
    std::vector<std::vector<Complex>> moment(2 * static_cast<std::size_t>(mmax) + 1, std::vector<Complex>(S));
    for (int j = 0; j < S; ++j) {
        const double alpha = std::asin(rule.s_rule.nodes[j]);
        for (int m = -mmax; m <= mmax; ++m) {
            Complex acc = 0.0;
            for (int i = 0; i < B; ++i) acc += s.at(i, j) * std::polar(1.0, -m * (rule.betas[i] + alpha));
            moment[m + mmax][j] = wb * acc;
        }
    }
    for (int n = 0; n <= degree; ++n) {
        for (int k = -k_extra; k <= n + k_extra; ++k) {
            const int m = n - 2 * k;
            Complex acc = 0.0;
            for (int j = 0; j < S; ++j) acc += rule.s_rule.weights[j] * moment[m + mmax][j] * std::conj(profile[n][j]);
            out.at(n, k) = acc;
        }
    }
    return out;
}

Sinogram synthesize(const CoefficientField& f, const BoundaryQuadrature& rule) {
    if (!(f.gamma() == rule.gamma)) throw std::invalid_argument("field and boundary rule use different gamma");
    const int N = f.degree();
    Sinogram out(rule.gamma, rule.beta_count, rule.s_order);
    const SpectrumTable table(rule.gamma, N);
    for (int j = 0; j < rule.s_order; ++j) {
        const double sj = rule.s_rule.nodes[j];
        const double alpha = std::asin(sj);
        const auto L = gegenbauer_L_all(N, rule.gamma, sj);
        std::vector<Complex> radial(static_cast<std::size_t>(N) + 1);
        for (int n = 0; n <= N; ++n) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            radial[n] = i_pow(n) * (sign / (2.0 * kPi) * L[n] / std::sqrt(psi_norm_sq(BoundaryMode(n, 0, rule.gamma))));
        }
        for (int i = 0; i < rule.beta_count; ++i) {
            const double phase = rule.betas[i] + alpha;
            Complex acc = 0.0;
            for (int n = 0; n <= N; ++n)
                for (int k = 0; k <= n; ++k) {
                    const Complex c = f(n, k);
                    if (c == Complex(0.0)) continue;
                    acc += c * table.sigma(n, k) * radial[n] * std::polar(1.0, (n - 2.0 * k) * phase);
                }
            out.at(i, j) = acc;
        }
    }
    return out;
}

double range_defect(const BoundaryCoefficients& a) {
    double m = 0.0;
    for (int n = 0; n <= a.degree(); ++n)
        for (int j = 1; j <= a.k_extra(); ++j) {
            m = std::max(m, std::abs(a.at(n, -j)));
            m = std::max(m, std::abs(a.at(n, n + j)));
        }
    return m;
}

double range_defect(const Sinogram& s, int degree, int k_extra) { return range_defect(analyze(s, degree, k_extra)); }

Inversion invert(const Sinogram& s, int degree, double truncate_below, int k_extra) {
    auto a = analyze(s, degree, k_extra);
    std::vector<Complex> c(CoefficientField::size_for(degree));
    for (int n = 0; n <= degree; ++n)
        for (int k = 0; k <= n; ++k) {
            const double sv = sigma(n, k, s.gamma);
            c[CoefficientField::index(n, k)] = sv < truncate_below ? Complex(0.0) : a.at(n, k) / sv;
        }
    const double defect = range_defect(a);
    return {CoefficientField(s.gamma, degree, std::move(c)), std::move(a), defect};
}

double sobolev_norm(const CoefficientField& f, double s) {
    if (!(s >= 0.0)) throw std::domain_error("Sobolev index must be non-negative");
    const double g = f.gamma().value();
    double acc = 0.0;
    for (int n = 0; n <= f.degree(); ++n) {
        const double w = std::pow(n + 1.0 + g, 2.0 * s);
        for (int k = 0; k <= n; ++k) acc += w * std::norm(f(n, k));
    }
    return std::sqrt(acc);
}

// ---------------------------------------------------------------------------------------

namespace {

struct JointEigen {
    double D;  // eigenvalue of L_gamma^{1/2} - gamma - 1
    double W;  // eigenvalue of D_omega
};

JointEigen joint_eigen(int n, int k, WeightParam gamma) {
    require_lattice(n, k);
    const double g = gamma.value();
    const auto one = CoefficientField::delta(gamma, n, n, k);
    const double l = apply_L_gamma(one)(n, k).real();
    const double w = apply_D_omega(one)(n, k).real();
    return {std::sqrt(l) - g - 1.0, w};
}

}  // namespace

double funcrel_sigma_sq(int n, int k, WeightParam gamma) {
    const auto [D, W] = joint_eigen(n, k, gamma);
    const double g = gamma.value();
    const double plus = (D + W) / 2.0;
    const double minus = (D - W) / 2.0;
    const double ln = (2.0 * g + 2.0) * std::log(2.0) + std::log(kPi) + ln_gamma(D + 1.0) - ln_gamma(D + 2.0 * g + 2.0) +
                      ln_gamma(plus + g + 1.0) - ln_gamma(plus + 1.0) + ln_gamma(minus + g + 1.0) -
                      ln_gamma(minus + 1.0);
    return std::exp(ln);
}

double funcrel_sigma_sq_beta_form(int n, int k, WeightParam gamma) {
    const auto [D, W] = joint_eigen(n, k, gamma);
    const double g = gamma.value();
    const double plus = (D + W) / 2.0;
    const double minus = (D - W) / 2.0;
    const double ln = (2.0 * g + 2.0) * std::log(2.0) + std::log(kPi) - std::log(D + 1.0) +
                      ln_beta(plus + 1.0 + g, minus + 1.0 + g) - ln_beta(plus + 1.0, minus + 1.0);
    return std::exp(ln);
}

CoefficientField funcrel_apply(const CoefficientField& f) {
    std::vector<Complex> c(f.coefficients().begin(), f.coefficients().end());
    for (int n = 0; n <= f.degree(); ++n)
        for (int k = 0; k <= n; ++k) c[CoefficientField::index(n, k)] *= funcrel_sigma_sq(n, k, f.gamma());
    return CoefficientField(f.gamma(), f.degree(), std::move(c));
}

TameBoundsReport tame_bounds_check(const std::vector<CoefficientField>& fields, double s) {
    if (fields.empty()) throw std::invalid_argument("tame bounds check needs at least one field");
    const WeightParam gamma = fields.front().gamma();
    const double g = gamma.value();
    TameBoundsReport r{std::min(-1.0, -1.0 - g), std::max(-1.0, -1.0 - g), 1e300, 0.0, true};
    if (s + r.lower_exponent < 0.0) throw std::domain_error("Sobolev indices must stay non-negative");
    int N = 2;
    for (const auto& f : fields) N = std::max(N, f.degree());
    const auto env = asym_envelope_check(gamma, N);
    for (const auto& f : fields) {
        const auto nf = funcrel_apply(f);
        const double lhs = sobolev_norm(nf, s);
        const double lo = env.lower_constant * sobolev_norm(f, s + r.lower_exponent);
        const double hi = env.upper_constant * sobolev_norm(f, s + r.upper_exponent);
        if (lo > 0.0) r.worst_lower_ratio = std::min(r.worst_lower_ratio, lhs / lo);
        if (hi > 0.0) r.worst_upper_ratio = std::max(r.worst_upper_ratio, lhs / hi);
    }
    const double tol = 1e-12;
    r.holds = r.worst_lower_ratio >= 1.0 - tol && r.worst_upper_ratio <= 1.0 + tol;
    return r;
}

TameBoundsReport tame_bounds_check(WeightParam gamma, int max_degree, double s, int trials, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<CoefficientField> fields;
    for (int t = 0; t < trials; ++t) {
        std::vector<Complex> c(CoefficientField::size_for(max_degree));
        for (auto& v : c) v = Complex(normal(rng), normal(rng));
        fields.emplace_back(gamma, max_degree, std::move(c));
    }
    return tame_bounds_check(fields, s);
}

}  // namespace wxray
