#include "wxray/ccd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wxray {

namespace {

constexpr double kRadiusSlack = 1e-12;

double wrap_pi(double a) {
    double r = reduce_angle(a + kPi) - kPi;
    return r;
}

void require_inside(const CCDChart& c, Complex z) {
    if (!(std::abs(z) <= c.radius() * (1.0 + kRadiusSlack))) throw std::domain_error("point lies outside the disk of radius R");
}

}  // namespace

CCDChart::CCDChart(double kappa, double radius) : kappa_(kappa), radius_(radius) {
    if (!(radius > 0.0) || !std::isfinite(radius) || !std::isfinite(kappa))
        throw std::domain_error("chart radius must be positive and finite");
    if (!(radius * radius * std::abs(kappa) < 1.0)) throw std::domain_error("chart requires R^2 |kappa| < 1");
}

double CCDChart::ss_constant() const noexcept {
    const double q = kappa_ * radius_ * radius_;
    return (1.0 - q) / (1.0 + q);
}

double CCDChart::murel_constant() const noexcept {
    const double q = kappa_ * radius_ * radius_;
    return std::sqrt((1.0 + q) / (1.0 - q));
}

Complex phi_map(const CCDChart& c, Complex z) {
    require_inside(c, z);
    const double R = c.radius();
    const double k = c.kappa();
    return (1.0 - k * R * R) / (1.0 - k * std::norm(z)) * z / R;
}

Complex phi_inverse(const CCDChart& c, Complex u) {
    const double rho = std::abs(u);
    if (rho > 1.0 + kRadiusSlack) throw std::domain_error("point lies outside the unit disk");
    if (rho == 0.0) return 0.0;
    const double R = c.radius();
    const double k = c.kappa();
    const double a = (1.0 - k * R * R) / R;
    // kappa rho r^2 + a r - rho = 0, root in [0, R].
    const double r = 2.0 * rho / (a + std::sqrt(a * a + 4.0 * k * rho * rho));
    return u * (r / rho);
}

double w_factor(const CCDChart& c, Complex z) {
    require_inside(c, z);
    const double q = c.kappa() * std::norm(z);
    return (1.0 + q) / (1.0 - q);
}

double d_R(const CCDChart& c, Complex z) {
    require_inside(c, z);
    const double R = c.radius();
    const double k = c.kappa();
    const double r2 = std::norm(z);
    const double q = 1.0 - k * r2;
    return (1.0 - r2 / (R * R)) * (1.0 - k * k * R * R * r2) / (q * q);
}

FanBeam ss_map(const CCDChart& c, const FanBeam& line) {
    if (std::abs(line.alpha) >= kPi / 2) return line;
    return FanBeam(line.beta, std::atan(c.ss_constant() * std::tan(line.alpha)));
}

double ss_jacobian(const CCDChart& c, const FanBeam& line) {
    const double cc = c.ss_constant();
    if (std::abs(line.alpha) >= kPi / 2) return 1.0 / cc;
    const double ca = std::cos(line.alpha);
    const double sa = std::sin(line.alpha);
    // c (1 + tan^2) / (1 + c^2 tan^2), multiplied through by cos^2.
    return cc / (ca * ca + cc * cc * sa * sa);
}

std::pair<double, double> murel_check(const CCDChart& c, const FanBeam& line) {
    const double lhs = std::cos(ss_map(c, line).alpha);
    const double rhs = c.murel_constant() * std::sqrt(ss_jacobian(c, line)) * std::cos(line.alpha);
    return {lhs, rhs};
}

double t_function(const CCDChart& c, WeightParam gamma, const FanBeam& line) {
    const double g = gamma.value();
    const double mu = std::max(0.0, std::cos(line.alpha));
    const double mu_e = std::max(0.0, std::cos(ss_map(c, line).alpha));
    if (mu == 0.0 || mu_e == 0.0) return 0.0;
    return std::exp((std::log(mu) + 2.0 * g * std::log(mu_e)) / (2.0 * g + 1.0));
}

Complex transfer_normal_apply(const CCDChart& c, WeightParam gamma, const std::function<Complex(Complex)>& f,
                              Complex p, NormalOrders orders) {
    const DiskFunction pulled = [&](const DiskPoint& u) {
        const Complex z = phi_inverse(c, u.z());
        const double w = w_factor(c, z);
        return f(z) / (w * w);
    };
    const double R = c.radius();
    const double scale = R / (1.0 - c.kappa() * R * R) * w_factor(c, p);
    return scale * normal_apply(pulled, gamma, DiskPoint(phi_map(c, p)), orders);
}

// ---------------------------------------------------------------------------------------
// Geodesics of (1 + kappa|z|^2)^{-2}|dz|^2 in Hamiltonian form:
//   z' = lambda^2 p,  p' = -2 kappa lambda |p|^2 z,  lambda = 1 + kappa|z|^2.

namespace {

struct State {
    Complex z;
    Complex p;
};

State rhs(double kappa, const State& s) {
    const double lambda = 1.0 + kappa * std::norm(s.z);
    return {lambda * lambda * s.p, -2.0 * kappa * lambda * std::norm(s.p) * s.z};
}

State rk4(double kappa, const State& s, double h) {
    auto add = [](const State& a, const State& b, double t) { return State{a.z + t * b.z, a.p + t * b.p}; };
    const State k1 = rhs(kappa, s);
    const State k2 = rhs(kappa, add(s, k1, h / 2));
    const State k3 = rhs(kappa, add(s, k2, h / 2));
    const State k4 = rhs(kappa, add(s, k3, h));
    return {s.z + h / 6 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z), s.p + h / 6 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p)};
}

double speed_drift(double kappa, const State& s) {
    const double lambda = 1.0 + kappa * std::norm(s.z);
    return std::abs(lambda * lambda * std::norm(s.p) - 1.0);
}

}  // namespace

GeodesicPath integrate_geodesic(const CCDChart& c, Complex z0, Complex v0, double step) {
    if (!(step > 0.0)) throw std::domain_error("geodesic step must be positive");
    if (std::abs(v0) == 0.0) throw std::domain_error("geodesic needs a nonzero initial velocity");
    const double k = c.kappa();
    const double R2 = c.radius() * c.radius();
    const double lambda0 = 1.0 + k * std::norm(z0);
    // Unit metric speed: |z'| = lambda, so p = z' / lambda^2 has |p| = 1 / lambda.
    State s{z0, v0 / std::abs(v0) / lambda0};
    GeodesicPath path;
    path.points.push_back(z0);
    // The longest geodesic in a simple disk is far shorter than this bound.
    const double max_length = 16.0 * c.radius() / (1.0 - std::abs(k) * R2) + 1.0;
    double t = 0.0;
    bool left_start = std::norm(z0) < R2;
    while (true) {
        const State next = rk4(k, s, step);
        const double f_next = R2 - std::norm(next.z);
        if (left_start && f_next < 0.0) {
            // Secant refinement on R^2 - |z|^2 using partial steps from the last inside state.
            double a = 0.0, fa = R2 - std::norm(s.z);
            double b = step, fb = f_next;
            State hit = next;
            double tau = step;
            for (int it = 0; it < 8; ++it) {
                tau = b - fb * (b - a) / (fb - fa);
                hit = rk4(k, s, tau);
                const double fh = R2 - std::norm(hit.z);
                if (std::abs(fh) < 1e-15 * R2) break;
                a = b;
                fa = fb;
                b = tau;
                fb = fh;
            }
            path.exit_point = hit.z;
            const double lambda = 1.0 + k * std::norm(hit.z);
            path.exit_velocity = lambda * lambda * hit.p;
            path.length = t + tau;
            path.max_speed_drift = std::max(path.max_speed_drift, speed_drift(k, hit));
            path.points.push_back(hit.z);
            return path;
        }
        if (f_next > 0.0) left_start = true;
        s = next;
        t += step;
        path.points.push_back(s.z);
        path.max_speed_drift = std::max(path.max_speed_drift, speed_drift(k, s));
        if (t > max_length) throw std::runtime_error("geodesic did not reach the boundary");
    }
}

GeodesicPath geodesic_trace(const CCDChart& c, const FanBeam& line, double step) {
    if (std::abs(line.alpha) >= kPi / 2) throw std::domain_error("tangent rays have no interior geodesic");
    const double R = c.radius();
    const Complex z0 = std::polar(R, line.beta);
    const Complex v0 = (1.0 + R * R * c.kappa()) * std::polar(1.0, line.beta + kPi + line.alpha);
    return integrate_geodesic(c, z0, v0, step);
}

std::vector<FanBeam> curved_fan(const CCDChart& c, Complex p, int theta_order, double step) {
    if (theta_order < 1) throw std::domain_error("theta_order must be >= 1");
    require_inside(c, p);
    std::vector<FanBeam> out;
    out.reserve(theta_order);
    for (int j = 0; j < theta_order; ++j) {
        const double theta = 2.0 * kPi * j / theta_order;
        // Trace backward to the entry point.
        const auto path = integrate_geodesic(c, p, -std::polar(1.0, theta), step);
        const double beta = reduce_angle(std::arg(path.exit_point));
        const double alpha = wrap_pi(std::arg(-path.exit_velocity) - beta - kPi);
        out.emplace_back(beta, std::clamp(alpha, -kPi / 2, kPi / 2));
    }
    return out;
}

double interIstar_verify(const CCDChart& c, WeightParam gamma, const BoundaryMode& mode, Complex p,
                         const std::vector<FanBeam>& fan) {
    if (!(mode.gamma == gamma)) throw std::invalid_argument("mode gamma does not match");
    const int T = static_cast<int>(fan.size());
    if (T < 1) throw std::domain_error("empty direction fan");
    const BoundaryFunction psi = [&](const FanBeam& line) { return psi_regular_factor(mode, line); };
    const Complex lhs = backproject(psi, gamma, DiskPoint(phi_map(c, p)), T);

    const double cc = c.ss_constant();
    Complex acc = 0.0;
    for (const auto& line : fan) {
        const FanBeam mapped = ss_map(c, line);
        const double ca = std::cos(line.alpha);
        const double sa = std::sin(line.alpha);
        // cos(mapped alpha) / cos(alpha)
        const double cos_ratio = 1.0 / std::sqrt(ca * ca + cc * cc * sa * sa);
        acc += std::sqrt(ss_jacobian(c, line)) * cos_ratio * psi(mapped);
    }
    const Complex rhs = c.murel_constant() / w_factor(c, p) * acc * (2.0 * kPi / T);
    return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1.0);
}

double interIstar_verify(const CCDChart& c, WeightParam gamma, const BoundaryMode& mode, Complex p,
                         int theta_order, double step) {
    return interIstar_verify(c, gamma, mode, p, curved_fan(c, p, theta_order, step));
}

}  // namespace wxray
