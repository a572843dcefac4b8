#include "wxray/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wxray {

WeightParam::WeightParam(double gamma) : gamma_(gamma) {
    if (!(gamma > -1.0) || !std::isfinite(gamma))
        throw std::domain_error("weight parameter gamma must be finite and > -1, got " +
                                std::to_string(gamma));
}

JacobiParams::JacobiParams(int n_, double a_, double b_) : n(n_), a(a_), b(b_) {
    if (n < 0) throw std::domain_error("Jacobi degree must be non-negative");
    if (!(a > -1.0) || !(b > -1.0))
        throw std::domain_error("Jacobi exponents must satisfy a > -1 and b > -1");
}

double ln_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("ln_gamma: argument must be positive");
    return std::lgamma(x);
}

double ln_beta(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0)) throw std::domain_error("beta: arguments must be positive");
    return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y);
}

double beta(double x, double y) { return std::exp(ln_beta(x, y)); }

double ln_binomial(double x, double y) {
    return ln_gamma(x + 1.0) - ln_gamma(y + 1.0) - ln_gamma(x - y + 1.0);
}

double jacobi_eval(const JacobiParams& p, double x) {
    const double a = p.a;
    const double b = p.b;
    if (p.n == 0) return 1.0;
    double prev = 1.0;
    double cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
    for (int m = 2; m <= p.n; ++m) {
        const double s = 2.0 * m + a + b;
        const double c0 = 2.0 * m * (m + a + b) * (s - 2.0);
        const double c1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        const double c2 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * s;
        const double next = (c1 * cur - c2 * prev) / c0;
        prev = cur;
        cur = next;
    }
    return cur;
}

double jacobi_derivative(const JacobiParams& p, double x) {
    if (p.n == 0) return 0.0;
    return 0.5 * (p.n + p.a + p.b + 1.0) * jacobi_eval(JacobiParams(p.n - 1, p.a + 1.0, p.b + 1.0), x);
}

std::vector<double> gegenbauer_L_all(int nmax, WeightParam gamma, double x) {
    if (nmax < 0) return {};
    const double lambda = gamma.value() + 1.0;
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
    out[0] = 1.0;
    if (nmax >= 1) out[1] = 2.0 * lambda * x;
    for (int m = 2; m <= nmax; ++m)
        out[m] = (2.0 * x * (m + lambda - 1.0) * out[m - 1] - (m + 2.0 * lambda - 2.0) * out[m - 2]) / m;
    return out;
}

double gegenbauer_L(int n, WeightParam gamma, double x) {
    if (n < 0) throw std::domain_error("gegenbauer_L: negative degree");
    const double lambda = gamma.value() + 1.0;
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 2.0 * lambda * x;
    for (int m = 2; m <= n; ++m) {
        const double next = (2.0 * x * (m + lambda - 1.0) * cur - (m + 2.0 * lambda - 2.0) * prev) / m;
        prev = cur;
        cur = next;
    }
    return cur;
}

double ln_gegenbauer_leading_coeff(int n, WeightParam gamma) {
    const double lambda = gamma.value() + 1.0;
    return n * std::log(2.0) + ln_gamma(n + lambda) - ln_gamma(n + 1.0) - ln_gamma(lambda);
}

double gegenbauer_leading_coeff(int n, WeightParam gamma) {
    return std::exp(ln_gegenbauer_leading_coeff(n, gamma));
}

double ln_gegenbauer_norm_sq(int n, WeightParam gamma) {
    const double lambda = gamma.value() + 1.0;
    return std::log(kPi) + (1.0 - 2.0 * lambda) * std::log(2.0) + ln_gamma(n + 2.0 * lambda) -
           ln_gamma(n + 1.0) - std::log(n + lambda) - 2.0 * ln_gamma(lambda);
}

double gegenbauer_norm_sq(int n, WeightParam gamma) { return std::exp(ln_gegenbauer_norm_sq(n, gamma)); }

std::vector<double> gegenbauer_coefficients(int n, WeightParam gamma) {
    if (n < 0) throw std::domain_error("gegenbauer_coefficients: negative degree");
    const double lambda = gamma.value() + 1.0;
    std::vector<double> prev{1.0};
    if (n == 0) return prev;
    std::vector<double> cur{0.0, 2.0 * lambda};
    for (int m = 2; m <= n; ++m) {
        std::vector<double> next(static_cast<std::size_t>(m) + 1, 0.0);
        const double ax = 2.0 * (m + lambda - 1.0) / m;
        const double bp = (m + 2.0 * lambda - 2.0) / m;
        for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += ax * cur[j];
        for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= bp * prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::vector<double> gegenbauer_ode_residual(int n, WeightParam gamma) {
    const auto c = gegenbauer_coefficients(n, gamma);
    const double g = gamma.value();
    const double eig = n * (n + 2.0 * g + 2.0);
    std::vector<double> r(c.size(), 0.0);
    for (std::size_t jj = 0; jj < c.size(); ++jj) {
        const double j = static_cast<double>(jj);
        // -(1-x^2) L'': x^{j-2} term j(j-1)c_j moves down, x^j term stays.
        if (jj >= 2) r[jj - 2] -= j * (j - 1.0) * c[jj];
        r[jj] += j * (j - 1.0) * c[jj];
        r[jj] += (2.0 * g + 3.0) * j * c[jj];
        r[jj] -= eig * c[jj];
    }
    return r;
}

DuplicationSides legendre_duplication_check(double z) {
    if (!(z > 0.0)) throw std::domain_error("duplication check requires z > 0");
    const long double zl = z;
    const long double pi = 3.141592653589793238462643383279502884L;
    const long double lhs = std::exp(std::lgamma(2.0L * zl));
    const long double rhs = std::exp(std::log(2.0L) * (2.0L * zl - 1.0L) - 0.5L * std::log(pi) +
                                     std::lgamma(zl) + std::lgamma(zl + 0.5L));
    return {lhs, rhs};
}

}  // namespace wxray
