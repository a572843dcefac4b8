// Disks of constant curvature: the radius-R disk with metric (1 + kappa|z|^2)^{-2}|dz|^2,
// its diffeomorphisms onto the Euclidean unit disk, and a geodesic integrator.
#pragma once

#include <utility>
#include <vector>

#include "wxray/svdcore.hpp"
#include "wxray/xray.hpp"

namespace wxray {

/// Curvature parameter kappa (curvature 4 kappa) and radius R with R^2 |kappa| < 1.
class CCDChart {
public:
    CCDChart(double kappa, double radius);
    double kappa() const noexcept { return kappa_; }
    double radius() const noexcept { return radius_; }
    /// (1 - R^2 kappa) / (1 + R^2 kappa)
    double ss_constant() const noexcept;
    /// sqrt((1 + kappa R^2) / (1 - kappa R^2)), the constant relating the two cos(alpha)'s.
    double murel_constant() const noexcept;

private:
    double kappa_;
    double radius_;
};

Complex phi_map(const CCDChart& c, Complex z);
/// Closed-form inverse of the radial profile r -> (1 - kappa R^2) r / ((1 - kappa r^2) R).
Complex phi_inverse(const CCDChart& c, Complex u);
double w_factor(const CCDChart& c, Complex z);
double d_R(const CCDChart& c, Complex z);

FanBeam ss_map(const CCDChart& c, const FanBeam& line);
double ss_jacobian(const CCDChart& c, const FanBeam& line);

/// (cos of the mapped angle, murel_constant * sqrt(ss') * cos alpha).
std::pair<double, double> murel_check(const CCDChart& c, const FanBeam& line);

/// (cos alpha * cos(mapped alpha)^{2 gamma})^{1 / (2 gamma + 1)}
double t_function(const CCDChart& c, WeightParam gamma, const FanBeam& line);

/// Curved normal operator conjugated to the Euclidean one:
/// R/(1 - kappa R^2) w(p) N_e[(f / w^2) o Phi^{-1}](Phi(p)).
Complex transfer_normal_apply(const CCDChart& c, WeightParam gamma, const std::function<Complex(Complex)>& f,
                              Complex p, NormalOrders orders);

struct GeodesicPath {
    std::vector<Complex> points;  // one per integration step, starting point first
    Complex exit_point;
    Complex exit_velocity;
    double length = 0.0;
    double max_speed_drift = 0.0;  // max |g(v, v) - 1| along the path
};

/// Unit-speed geodesic from z0 with Euclidean velocity v0 (rescaled to unit metric speed),
/// integrated by fixed-step RK4 until it leaves the disk of radius R.
GeodesicPath integrate_geodesic(const CCDChart& c, Complex z0, Complex v0, double step);
/// Geodesic entering at R e^{i beta} with velocity (1 + R^2 kappa) e^{i(beta + pi + alpha)}.
GeodesicPath geodesic_trace(const CCDChart& c, const FanBeam& line, double step);

/// Fan-beam coordinates of the curved geodesics through p with directions 2 pi j / theta_order.
std::vector<FanBeam> curved_fan(const CCDChart& c, Complex p, int theta_order, double step);

/// Relative gap |L - R| / max(|L|, 1) between the Euclidean weighted backprojection of
/// psi_{n,k} at Phi(p) and its curved representation
/// K/w(p) int mu^{-1} sqrt(ss') (ss^* mu_e)^{-2 gamma} ss^* psi d theta.
double interIstar_verify(const CCDChart& c, WeightParam gamma, const BoundaryMode& mode, Complex p,
                         const std::vector<FanBeam>& fan);
double interIstar_verify(const CCDChart& c, WeightParam gamma, const BoundaryMode& mode, Complex p,
                         int theta_order, double step);

}  // namespace wxray
