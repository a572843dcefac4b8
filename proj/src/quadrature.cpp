#include "wxray/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace wxray {

namespace {

// Recurrence coefficients of the monic Jacobi polynomials.
double jacobi_diag(int k, double a, double b) {
    const double s = 2.0 * k + a + b;
    if (k == 0) return (b - a) / (a + b + 2.0);
    return (b * b - a * a) / (s * (s + 2.0));
}

double jacobi_offdiag_sq(int k, double a, double b) {
    const double s = 2.0 * k + a + b;
    if (k == 1) return 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    return 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
}

long double jacobi_eval_ext(int n, long double a, long double b, long double x) {
    if (n == 0) return 1.0L;
    long double prev = 1.0L;
    long double cur = (a + 1.0L) + 0.5L * (a + b + 2.0L) * (x - 1.0L);
    for (int m = 2; m <= n; ++m) {
        const long double s = 2.0L * m + a + b;
        const long double c0 = 2.0L * m * (m + a + b) * (s - 2.0L);
        const long double c1 = (s - 1.0L) * (s * (s - 2.0L) * x + a * a - b * b);
        const long double c2 = 2.0L * (m + a - 1.0L) * (m + b - 1.0L) * s;
        const long double next = (c1 * cur - c2 * prev) / c0;
        prev = cur;
        cur = next;
    }
    return cur;
}

long double jacobi_derivative_ext(int n, long double a, long double b, long double x) {
    if (n == 0) return 0.0L;
    return 0.5L * (n + a + b + 1.0L) * jacobi_eval_ext(n - 1, a + 1.0L, b + 1.0L, x);
}

}  // namespace

QuadratureRule1D gauss_jacobi(int order, double a, double b) {
    if (order < 1) throw std::domain_error("gauss_jacobi: order must be >= 1");
    if (!(a > -1.0) || !(b > -1.0)) throw std::domain_error("gauss_jacobi: exponents must exceed -1");

    Eigen::VectorXd diag(order);
    Eigen::VectorXd sub(std::max(order - 1, 0));
    for (int k = 0; k < order; ++k) diag[k] = jacobi_diag(k, a, b);
    for (int k = 1; k < order; ++k) sub[k - 1] = std::sqrt(jacobi_offdiag_sq(k, a, b));

    std::vector<double> x(order);
    if (order == 1) {
        x[0] = diag[0];
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw std::runtime_error("gauss_jacobi: eigensolve failed");
        for (int i = 0; i < order; ++i) x[i] = es.eigenvalues()[i];
    }

    // Nodes near the endpoints amplify node error into the weights; polish in extended precision.
    using Ext = long double;
    const Ext ea = a, eb = b;
    std::vector<Ext> xe(x.begin(), x.end());
    for (auto& xi : xe) {
        for (int it = 0; it < 6; ++it) {
            const Ext dp = jacobi_derivative_ext(order, ea, eb, xi);
            if (dp == 0.0L) break;
            const Ext step = jacobi_eval_ext(order, ea, eb, xi) / dp;
            const Ext next = xi - step;
            if (!(next > -1.0L && next < 1.0L)) break;
            xi = next;
            if (std::abs(step) < 1e-21L) break;
        }
    }

    const Ext n = order;
    const Ext ln_c = (ea + eb + 1.0L) * std::log(2.0L) + std::lgamma(n + ea + 1.0L) + std::lgamma(n + eb + 1.0L) -
                     std::lgamma(n + ea + eb + 1.0L) - std::lgamma(n + 1.0L);
    QuadratureRule1D rule;
    rule.a = a;
    rule.b = b;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        const Ext dp = jacobi_derivative_ext(order, ea, eb, xe[i]);
        rule.nodes[i] = static_cast<double>(xe[i]);
        rule.weights[i] = static_cast<double>(std::exp(ln_c - std::log1p(-xe[i] * xe[i]) - 2.0L * std::log(std::abs(dp))));
    }
    return rule;
}

DiskQuadrature::DiskQuadrature(WeightParam gamma_, int radial_order_, int angular_count_)
    : gamma(gamma_), radial_order(radial_order_), angular_count(angular_count_) {
    if (radial_order < 1 || angular_count < 1)
        throw std::domain_error("disk_rule: orders must be >= 1");
    const double g = gamma.value();
    const auto r = gauss_jacobi(radial_order, g, 0.0);
    // u = (1 + x)/2 maps (1-x)^g dx to 2^{g+1} (1-u)^g du; area element is (1/2) du d omega.
    const double scale = (2.0 * kPi / angular_count) * 0.5 * std::pow(0.5, g + 1.0);
    points.reserve(static_cast<std::size_t>(radial_order) * angular_count);
    weights.reserve(points.capacity());
    for (int i = 0; i < radial_order; ++i) {
        const double rho = std::sqrt(0.5 * (1.0 + r.nodes[i]));
        radii.push_back(rho);
        for (int l = 0; l < angular_count; ++l) {
            points.push_back(DiskPoint::polar(rho, 2.0 * kPi * l / angular_count));
            weights.push_back(scale * r.weights[i]);
        }
    }
}

BoundaryQuadrature::BoundaryQuadrature(WeightParam gamma_, int beta_count_, int s_order_)
    : gamma(gamma_), beta_count(beta_count_), s_order(s_order_) {
    if (beta_count < 1 || s_order < 1) throw std::domain_error("boundary_rule: orders must be >= 1");
    const double e = gamma.value() + 0.5;
    s_rule = gauss_jacobi(s_order, e, e);
    const double wb = 2.0 * kPi / beta_count;
    nodes.reserve(static_cast<std::size_t>(beta_count) * s_order);
    weights.reserve(nodes.capacity());
    for (int i = 0; i < beta_count; ++i) {
        const double beta = 2.0 * kPi * i / beta_count;
        betas.push_back(beta);
        for (int j = 0; j < s_order; ++j) {
            nodes.emplace_back(beta, std::asin(s_rule.nodes[j]));
            weights.push_back(wb * s_rule.weights[j]);
        }
    }
}

DefaultOrders default_orders(int max_degree) {
    const int n = std::max(max_degree, 0);
    return {n + 8, 4 * n + 16, n + 8, 4 * n + 16};
}

}  // namespace wxray
