#include "wxray/zernike.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace wxray {

ZernikeIndex::ZernikeIndex(int n_, int k_, WeightParam gamma_) : n(n_), k(k_), gamma(gamma_) {
    if (n < 0 || k < 0 || k > n) throw std::domain_error("Zernike index requires 0 <= k <= n");
}

// ---------------------------------------------------------------------------------------
// CoefficientField

CoefficientField::CoefficientField(WeightParam gamma, int degree)
    : gamma_(gamma), degree_(degree), coeffs_(size_for(degree), Complex(0.0)) {}

CoefficientField::CoefficientField(WeightParam gamma, int degree, std::vector<Complex> coefficients)
    : gamma_(gamma), degree_(degree), coeffs_(std::move(coefficients)) {
    if (coeffs_.size() != size_for(degree))
        throw std::invalid_argument("coefficient array length does not match (N+1)(N+2)/2");
}

CoefficientField CoefficientField::delta(WeightParam gamma, int degree, int n, int k, Complex value) {
    if (n < 0 || k < 0 || k > n || n > degree) throw std::domain_error("delta index outside the lattice");
    std::vector<Complex> c(size_for(degree), Complex(0.0));
    c[index(n, k)] = value;
    return CoefficientField(gamma, degree, std::move(c));
}

std::size_t CoefficientField::size_for(int degree) {
    if (degree < 0) throw std::domain_error("coefficient field degree must be non-negative");
    const auto n = static_cast<std::size_t>(degree);
    return (n + 1) * (n + 2) / 2;
}

std::size_t CoefficientField::index(int n, int k) {
    return static_cast<std::size_t>(n) * (n + 1) / 2 + static_cast<std::size_t>(k);
}

Complex CoefficientField::operator()(int n, int k) const {
    if (n < 0 || k < 0 || k > n) throw std::domain_error("coefficient index requires 0 <= k <= n");
    if (n > degree_) return 0.0;
    return coeffs_[index(n, k)];
}

double CoefficientField::l2_norm() const {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::norm(c);
    return std::sqrt(s);
}

Complex CoefficientField::evaluate(const DiskPoint& p) const {
    const auto basis = g_hat_all(gamma_, degree_, p);
    Complex s = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) s += coeffs_[i] * basis[i];
    return s;
}

double CoefficientField::max_abs_difference(const CoefficientField& other) const {
    const int n = std::max(degree_, other.degree_);
    double m = 0.0;
    for (int i = 0; i <= n; ++i)
        for (int k = 0; k <= i; ++k) m = std::max(m, std::abs((*this)(i, k) - other(i, k)));
    return m;
}

CoefficientField CoefficientField::operator+(const CoefficientField& other) const {
    if (!(gamma_ == other.gamma_)) throw std::invalid_argument("adding fields with different gamma");
    const int n = std::max(degree_, other.degree_);
    std::vector<Complex> c(size_for(n));
    for (int i = 0; i <= n; ++i)
        for (int k = 0; k <= i; ++k) c[index(i, k)] = (*this)(i, k) + other(i, k);
    return CoefficientField(gamma_, n, std::move(c));
}

CoefficientField CoefficientField::operator*(Complex scale) const {
    auto c = coeffs_;
    for (auto& v : c) v *= scale;
    return CoefficientField(gamma_, degree_, std::move(c));
}

// ---------------------------------------------------------------------------------------
// Disk polynomials

namespace {

double ln_fact(double x) { return ln_gamma(x + 1.0); }

// ln of the prefactor l! g! / (l+g)! in front of z^{m-l} P_l^{(g, m-l)} (m >= l).
double ln_disk_prefactor(int l, double g) { return ln_fact(l) + ln_fact(g) - ln_fact(l + g); }

// Unit-modulus phase of Ghat relative to Phat.
double ghat_sign(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

Complex i_pow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace

Complex disk_poly(int m, int l, WeightParam gamma, const DiskPoint& p) {
    if (m < 0 || l < 0) throw std::domain_error("disk_poly: negative bidegree");
    const double g = gamma.value();
    const double rho = p.rho();
    const double x = 2.0 * rho * rho - 1.0;
    if (m >= l) {
        const int d = m - l;
        const double radial = std::exp(ln_disk_prefactor(l, g)) * jacobi_eval(JacobiParams(l, g, d), x);
        return std::polar(std::pow(rho, d) * radial, d * p.omega()) ;
    }
    const int d = l - m;
    const double radial = std::exp(ln_disk_prefactor(m, g)) * jacobi_eval(JacobiParams(m, g, d), x);
    return std::polar(std::pow(rho, d) * radial, -d * p.omega());
}

double ln_zernike_norm_sq(const ZernikeIndex& idx) {
    const double g = idx.gamma.value();
    const int m = idx.n - idx.k;
    const int l = idx.k;
    return std::log(kPi) - std::log(idx.n + g + 1.0) + ln_fact(m) + 2.0 * ln_fact(g) + ln_fact(l) -
           ln_fact(l + g) - ln_fact(m + g);
}

double zernike_norm_sq(const ZernikeIndex& idx) { return std::exp(ln_zernike_norm_sq(idx)); }

namespace {
double ln_leading_coeff_p(const ZernikeIndex& idx) {
    const double g = idx.gamma.value();
    return ln_fact(g) + ln_fact(idx.n + g) - ln_fact(idx.n - idx.k + g) - ln_fact(idx.k + g);
}
}  // namespace

double leading_coeff_p(const ZernikeIndex& idx) { return std::exp(ln_leading_coeff_p(idx)); }

Complex g_leading_coeff(const ZernikeIndex& idx) {
    const double mag = std::exp(ln_gegenbauer_leading_coeff(idx.n, idx.gamma) - idx.n * std::log(2.0) +
                                ln_binomial(idx.n, idx.k));
    // (2i)^{-n} = 2^{-n} (-i)^n
    return ghat_sign(idx.k) * mag * i_pow(-idx.n);
}

Complex g_eval(const ZernikeIndex& idx, const DiskPoint& p) {
    const double ln_mag = ln_gegenbauer_leading_coeff(idx.n, idx.gamma) - idx.n * std::log(2.0) +
                          ln_binomial(idx.n, idx.k) - ln_leading_coeff_p(idx);
    const Complex phase = ghat_sign(idx.k) * i_pow(-idx.n);
    return std::exp(ln_mag) * phase * disk_poly(idx.n - idx.k, idx.k, idx.gamma, p);
}

Complex g_hat_eval(const ZernikeIndex& idx, const DiskPoint& p) {
    const double inv_norm = std::exp(-0.5 * ln_zernike_norm_sq(idx));
    return ghat_sign(idx.k) * inv_norm * disk_poly(idx.n - idx.k, idx.k, idx.gamma, p);
}

std::vector<Complex> g_hat_all(WeightParam gamma, int degree, const DiskPoint& p) {
    std::vector<Complex> out(CoefficientField::size_for(degree));
    const double g = gamma.value();
    const double rho = p.rho();
    const double omega = p.omega();
    const double x = 2.0 * rho * rho - 1.0;
    std::vector<double> rho_pow(static_cast<std::size_t>(degree) + 1, 1.0);
    for (int d = 1; d <= degree; ++d) rho_pow[d] = rho_pow[d - 1] * rho;
    for (int n = 0; n <= degree; ++n) {
        for (int k = 0; k <= n; ++k) {
            const int m = n - k;
            const int lo = std::min(m, k);
            const int d = std::abs(m - k);
            const ZernikeIndex idx(n, k, gamma);
            const double ln_scale = ln_disk_prefactor(lo, g) - 0.5 * ln_zernike_norm_sq(idx);
            const double radial = std::exp(ln_scale) * jacobi_eval(JacobiParams(lo, g, d), x) * rho_pow[d];
            const double ang = (m >= k ? 1.0 : -1.0) * d * omega;
            out[CoefficientField::index(n, k)] = ghat_sign(k) * std::polar(radial, ang);
        }
    }
    return out;
}

Complex g_fourier_oracle(int n, int k, WeightParam gamma, const DiskPoint& p, int theta_order) {
    if (n < 0) throw std::domain_error("g_fourier_oracle: negative degree");
    if (theta_order <= 2 * n) throw std::domain_error("g_fourier_oracle: theta_order must exceed 2n");
    const Complex z = p.z();
    Complex s = 0.0;
    for (int j = 0; j < theta_order; ++j) {
        const double th = 2.0 * kPi * j / theta_order;
        const Complex e = std::polar(1.0, th);
        const double arg = (Complex(0.0, 0.5) * (std::conj(z) * e - z * std::conj(e))).real();
        s += std::polar(1.0, (n - 2 * k) * th) * gegenbauer_L(n, gamma, arg);
    }
    return s / static_cast<double>(theta_order);
}

// ---------------------------------------------------------------------------------------
// Spectral operators

CoefficientField apply_L_gamma(const CoefficientField& f) {
    const double g = f.gamma().value();
    std::vector<Complex> c(f.coefficients().begin(), f.coefficients().end());
    for (int n = 0; n <= f.degree(); ++n) {
        const double ev = (n + 1.0 + g) * (n + 1.0 + g);
        for (int k = 0; k <= n; ++k) c[CoefficientField::index(n, k)] *= ev;
    }
    return CoefficientField(f.gamma(), f.degree(), std::move(c));
}

CoefficientField apply_D_omega(const CoefficientField& f) {
    std::vector<Complex> c(f.coefficients().begin(), f.coefficients().end());
    for (int n = 0; n <= f.degree(); ++n)
        for (int k = 0; k <= n; ++k) c[CoefficientField::index(n, k)] *= static_cast<double>(n - 2 * k);
    return CoefficientField(f.gamma(), f.degree(), std::move(c));
}

double d_dz_coeff_sq(int n, int k, WeightParam gamma) {
    const double g = gamma.value();
    return (n - k) * (k + g + 1.0);
}

double d_dzbar_coeff_sq(int n, int k, WeightParam gamma) {
    const double g = gamma.value();
    return (n - k + g + 1.0) * k;
}

CoefficientField d_dz(const CoefficientField& f) {
    const WeightParam up(f.gamma().value() + 1.0);
    if (f.degree() < 1) return CoefficientField(up, 0);
    std::vector<Complex> c(CoefficientField::size_for(f.degree() - 1), Complex(0.0));
    for (int n = 1; n <= f.degree(); ++n)
        for (int k = 0; k <= n - 1; ++k)
            c[CoefficientField::index(n - 1, k)] = std::sqrt(d_dz_coeff_sq(n, k, f.gamma())) * f(n, k);
    return CoefficientField(up, f.degree() - 1, std::move(c));
}

CoefficientField d_dzbar(const CoefficientField& f) {
    const WeightParam up(f.gamma().value() + 1.0);
    if (f.degree() < 1) return CoefficientField(up, 0);
    std::vector<Complex> c(CoefficientField::size_for(f.degree() - 1), Complex(0.0));
    for (int n = 1; n <= f.degree(); ++n)
        for (int k = 1; k <= n; ++k)
            c[CoefficientField::index(n - 1, k - 1)] = -std::sqrt(d_dzbar_coeff_sq(n, k, f.gamma())) * f(n, k);
    return CoefficientField(up, f.degree() - 1, std::move(c));
}

bool ladder_bound_holds(int n, WeightParam gamma) {
    const double g = gamma.value();
    const double rhs = (g + 1.0) * (n + g + 2.0) * (n + g + 2.0) / 4.0;
    for (int k = 0; k <= n + 1; ++k) {
        const double lhs = (g + 1.0) * (n + 1.0 - k) * (k + g + 1.0);
        if (lhs > rhs * (1.0 + 1e-15)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------------------
// Pointwise L_gamma

namespace {

struct Derivs {
    Complex fx, fy, fxx, fyy, fxy;
};

// Finite-difference weights along one axis: centered when there is room, else
// one-sided pointing into the disk (sigma = +-1).
struct AxisStencil {
    std::array<int, 4> offsets;
    std::array<double, 4> d1;
    std::array<double, 4> d2;
    int count;
};

AxisStencil make_axis(bool centered, int sigma) {
    if (centered) return {{-1, 0, 1, 0}, {-0.5, 0.0, 0.5, 0.0}, {1.0, -2.0, 1.0, 0.0}, 3};
    const double s = sigma;
    return {{0, sigma, 2 * sigma, 3 * sigma},
            {-1.5 * s, 2.0 * s, -0.5 * s, 0.0},
            {2.0, -5.0, 4.0, -1.0},
            4};
}

Derivs stencil_derivs(const DiskFunction& f, const DiskPoint& p, double h) {
    const double x = p.x();
    const double y = p.y();
    auto fits = [&](double px, double py) { return px * px + py * py <= 1.0; };
    // Centered in x needs x +- h with y within +- h (for the mixed term); same for y.
    const bool cx = fits(x + h, y + h) && fits(x + h, y - h) && fits(x - h, y + h) && fits(x - h, y - h);
    const bool cy = cx;
    const int sx = x > 0 ? -1 : 1;
    const int sy = y > 0 ? -1 : 1;
    const AxisStencil ax = make_axis(cx, sx);
    const AxisStencil ay = make_axis(cy, sy);

    auto eval = [&](int i, int j) { return f(DiskPoint(Complex(x + i * h, y + j * h))); };

    Derivs d{};
    for (int a = 0; a < ax.count; ++a) {
        const Complex v = eval(ax.offsets[a], 0);
        d.fx += ax.d1[a] * v;
        d.fxx += ax.d2[a] * v;
    }
    for (int b = 0; b < ay.count; ++b) {
        const Complex v = eval(0, ay.offsets[b]);
        d.fy += ay.d1[b] * v;
        d.fyy += ay.d2[b] * v;
    }
    for (int a = 0; a < ax.count; ++a) {
        if (ax.d1[a] == 0.0) continue;
        for (int b = 0; b < ay.count; ++b) {
            if (ay.d1[b] == 0.0) continue;
            d.fxy += ax.d1[a] * ay.d1[b] * eval(ax.offsets[a], ay.offsets[b]);
        }
    }
    d.fx /= h;
    d.fy /= h;
    d.fxx /= h * h;
    d.fyy /= h * h;
    d.fxy /= h * h;
    return d;
}

}  // namespace

Complex L_gamma_pointwise(const DiskFunction& f, WeightParam gamma, const DiskPoint& p, double h) {
    if (!(h > 0.0)) throw std::domain_error("finite-difference step must be positive");
    const Derivs a = stencil_derivs(f, p, h);
    const Derivs b = stencil_derivs(f, p, 0.5 * h);
    auto rich = [](Complex coarse, Complex fine) { return (4.0 * fine - coarse) / 3.0; };
    const Complex fx = rich(a.fx, b.fx);
    const Complex fy = rich(a.fy, b.fy);
    const Complex fxx = rich(a.fxx, b.fxx);
    const Complex fyy = rich(a.fyy, b.fyy);
    const Complex fxy = rich(a.fxy, b.fxy);

    const double x = p.x();
    const double y = p.y();
    const double g = gamma.value();
    const Complex f0 = f(p);
    const Complex lap = fxx + fyy;
    const Complex radial = x * fx + y * fy;
    const Complex angular2 = x * x * fyy + y * y * fxx - 2.0 * x * y * fxy - x * fx - y * fy;
    return -(1.0 - x * x - y * y) * lap + (2.0 * g + 2.0) * radial - angular2 + (g + 1.0) * (g + 1.0) * f0;
}

CoefficientField project_onto_basis(const DiskFunction& f, WeightParam gamma, int degree,
                                    const DiskQuadrature& rule) {
    if (!(rule.gamma == gamma)) throw std::invalid_argument("disk rule gamma does not match");
    std::vector<Complex> c(CoefficientField::size_for(degree), Complex(0.0));
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const Complex fv = f(rule.points[q]);
        const auto basis = g_hat_all(gamma, degree, rule.points[q]);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += rule.weights[q] * fv * std::conj(basis[i]);
    }
    return CoefficientField(gamma, degree, std::move(c));
}

}  // namespace wxray
