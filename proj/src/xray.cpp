#include "wxray/xray.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wxray {

Sinogram::Sinogram(WeightParam gamma_, int beta_count_, int s_order_)
    : Sinogram(gamma_, beta_count_, s_order_,
               std::vector<Complex>(static_cast<std::size_t>(std::max(beta_count_, 0)) * std::max(s_order_, 0))) {}

Sinogram::Sinogram(WeightParam gamma_, int beta_count_, int s_order_, std::vector<Complex> values_)
    : gamma(gamma_), beta_count(beta_count_), s_order(s_order_), values(std::move(values_)) {
    if (beta_count < 1 || s_order < 1) throw std::domain_error("sinogram dimensions must be positive");
    if (values.size() != static_cast<std::size_t>(beta_count) * s_order)
        throw std::invalid_argument("sinogram value array must have beta_count * s_order entries");
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error("sinogram entries must be finite");
}

Complex forward_at(const DiskFunction& f, WeightParam gamma, const FanBeam& line, const QuadratureRule1D& chord_rule) {
    if (!(chord_rule.a == gamma.value() && chord_rule.b == gamma.value()))
        throw std::invalid_argument("chord rule exponents must both equal gamma");
    const double c = std::cos(line.alpha);
    const Complex start = std::polar(1.0, line.beta);
    const Complex dir = std::polar(1.0, line.beta + kPi + line.alpha);
    Complex sum = 0.0;
    for (int j = 0; j < chord_rule.order(); ++j) {
        const double t = c * (1.0 + chord_rule.nodes[j]);
        const Complex v = f(DiskPoint(start + t * dir));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            std::ostringstream msg;
            msg << "non-finite integrand on line (beta=" << line.beta << ", alpha=" << line.alpha << ")";
            throw std::domain_error(msg.str());
        }
        sum += chord_rule.weights[j] * v;
    }
    return sum;
}

Complex forward_at(const DiskFunction& f, WeightParam gamma, const FanBeam& line, int chord_order) {
    if (chord_order < 1) throw std::domain_error("chord_order must be >= 1");
    return forward_at(f, gamma, line, gauss_jacobi(chord_order, gamma.value(), gamma.value()));
}

Sinogram forward(const DiskFunction& f, WeightParam gamma, const BoundaryQuadrature& rule, int chord_order) {
    if (!(rule.gamma == gamma)) throw std::invalid_argument("boundary rule gamma does not match");
    if (chord_order < 1) throw std::domain_error("chord_order must be >= 1");
    const auto chord = gauss_jacobi(chord_order, gamma.value(), gamma.value());
    Sinogram out(gamma, rule.beta_count, rule.s_order);
    for (std::size_t q = 0; q < rule.size(); ++q) out.values[q] = forward_at(f, gamma, rule.nodes[q], chord);
    return out;
}

Complex backproject(const BoundaryFunction& gtilde, WeightParam, const DiskPoint& p, int theta_order) {
    if (theta_order < 1) throw std::domain_error("theta_order must be >= 1");
    Complex sum = 0.0;
    for (int j = 0; j < theta_order; ++j) sum += gtilde(fanbeam_through(p, 2.0 * kPi * j / theta_order));
    return sum * (2.0 * kPi / theta_order);
}

NormalOrders normal_orders_for(int degree) {
    const int n = std::max(degree, 0);
    return {n / 2 + 2, 2 * n + 4};
}

Complex normal_apply(const DiskFunction& f, WeightParam gamma, const DiskPoint& p, NormalOrders orders) {
    if (orders.chord_order < 1) throw std::domain_error("chord_order must be >= 1");
    const auto chord = gauss_jacobi(orders.chord_order, gamma.value(), gamma.value());
    const BoundaryFunction g = [&](const FanBeam& line) { return forward_at(f, gamma, line, chord); };
    return backproject(g, gamma, p, orders.theta_order);
}

std::pair<Complex, Complex> adjoint_pairing_check(const DiskFunction& f, const BoundaryFunction& gtilde,
                                                  WeightParam gamma, const PairingRules& rules) {
    const BoundaryQuadrature boundary(gamma, rules.beta_count, rules.s_order);
    const auto chord = gauss_jacobi(rules.chord_order, gamma.value(), gamma.value());
    Complex lhs = 0.0;
    for (std::size_t q = 0; q < boundary.size(); ++q) {
        const auto& line = boundary.nodes[q];
        lhs += boundary.weights[q] * forward_at(f, gamma, line, chord) * std::conj(gtilde(line));
    }
    const DiskQuadrature disk(gamma, rules.radial_order, rules.angular_count);
    Complex rhs = 0.0;
    for (std::size_t q = 0; q < disk.points.size(); ++q)
        rhs += disk.weights[q] * f(disk.points[q]) *
               std::conj(backproject(gtilde, gamma, disk.points[q], rules.theta_order));
    return {lhs, rhs};
}

}  // namespace wxray
