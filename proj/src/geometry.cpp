#include "wxray/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wxray/specfun.hpp"

namespace wxray {

namespace {
constexpr double kRhoSlack = 1e-12;
constexpr double kChordSlack = 1e-12;
}  // namespace

FanBeam::FanBeam(double beta_, double alpha_) : beta(beta_), alpha(alpha_) {
    if (!(alpha >= -kPi / 2 - 1e-15 && alpha <= kPi / 2 + 1e-15))
        throw std::domain_error("fan-beam alpha must lie in [-pi/2, pi/2]");
    alpha = std::clamp(alpha, -kPi / 2, kPi / 2);
}

DiskPoint::DiskPoint(Complex z) : z_(z) {
    const double r = std::abs(z);
    if (!std::isfinite(r)) throw std::domain_error("disk point must be finite");
    if (r > 1.0 + kRhoSlack) throw std::domain_error("point lies outside the closed unit disk");
    if (r > 1.0) z_ /= r;
}

DiskPoint DiskPoint::polar(double rho, double omega) { return DiskPoint(std::polar(rho, omega)); }

double reduce_angle(double a) {
    double r = std::fmod(a, 2.0 * kPi);
    if (r < 0) r += 2.0 * kPi;
    if (r >= 2.0 * kPi) r = 0.0;
    return r;
}

double angle_distance(double a, double b) {
    const double d = reduce_angle(a - b);
    return std::min(d, 2.0 * kPi - d);
}

DiskPoint chord_point(const FanBeam& line, double t) {
    const double tmax = exit_time(line);
    if (t < -kChordSlack || t > tmax + kChordSlack)
        throw std::domain_error("chord parameter outside [0, 2 cos alpha]");
    t = std::clamp(t, 0.0, tmax);
    const Complex z = std::polar(1.0, line.beta) + t * std::polar(1.0, line.beta + kPi + line.alpha);
    return DiskPoint(z);
}

double exit_time(const FanBeam& line) { return std::max(0.0, 2.0 * std::cos(line.alpha)); }

double boundary_distance(const DiskPoint& p) { return 1.0 - std::norm(p.z()); }

double boundary_distance_on_chord(const FanBeam& line, double t) {
    return t * (2.0 * std::cos(line.alpha) - t);
}

FanBeam fanbeam_through(const DiskPoint& p, double theta) {
    const double s = std::clamp(-p.rho() * std::sin(theta - p.omega()), -1.0, 1.0);
    const double alpha = std::asin(s);
    return FanBeam(reduce_angle(theta - kPi - alpha), alpha);
}

double chord_parameter_of(const FanBeam& line, const DiskPoint& p) {
    const Complex dir = std::polar(1.0, line.beta + kPi + line.alpha);
    const Complex rel = p.z() - std::polar(1.0, line.beta);
    return (rel * std::conj(dir)).real();
}

BundleCoords scattering(BundleCoords c) {
    return {reduce_angle(c.beta + kPi + 2.0 * c.alpha), reduce_angle(kPi - c.alpha)};
}

BundleCoords antipodal_scattering(BundleCoords c) {
    return {reduce_angle(c.beta + kPi + 2.0 * c.alpha), reduce_angle(-c.alpha)};
}

}  // namespace wxray
