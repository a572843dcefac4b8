// Weighted fan-beam X-ray transform, its backprojection and the normal operator,
// all evaluated by quadrature.
#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "wxray/quadrature.hpp"
#include "wxray/zernike.hpp"

namespace wxray {

/// Regular factor g~ of boundary data g = cos(alpha)^{2 gamma + 1} g~, sampled on the
/// nodes of a BoundaryQuadrature. values[i * s_order + j] belongs to (beta_i, s_j).
struct Sinogram {
    Sinogram(WeightParam gamma, int beta_count, int s_order);
    Sinogram(WeightParam gamma, int beta_count, int s_order, std::vector<Complex> values);

    WeightParam gamma;
    int beta_count;
    int s_order;
    std::vector<Complex> values;

    Complex& at(int i, int j) { return values[static_cast<std::size_t>(i) * s_order + j]; }
    Complex at(int i, int j) const { return values[static_cast<std::size_t>(i) * s_order + j]; }
    BoundaryQuadrature rule() const { return BoundaryQuadrature(gamma, beta_count, s_order); }
};

using BoundaryFunction = std::function<Complex(const FanBeam&)>;

/// Regular factor of the weighted transform along one line:
/// int_{-1}^{1} f(chord(s)) (1 - s^2)^gamma ds.
Complex forward_at(const DiskFunction& f, WeightParam gamma, const FanBeam& line, const QuadratureRule1D& chord_rule);
Complex forward_at(const DiskFunction& f, WeightParam gamma, const FanBeam& line, int chord_order);

Sinogram forward(const DiskFunction& f, WeightParam gamma, const BoundaryQuadrature& rule, int chord_order);

/// int_{S^1} g~(fanbeam_through(p, theta)) d theta on a uniform theta grid.
Complex backproject(const BoundaryFunction& gtilde, WeightParam gamma, const DiskPoint& p, int theta_order);

struct NormalOrders {
    int chord_order;
    int theta_order;
};
/// Orders that integrate the normal operator exactly on polynomials of degree <= n.
NormalOrders normal_orders_for(int degree);

Complex normal_apply(const DiskFunction& f, WeightParam gamma, const DiskPoint& p, NormalOrders orders);

struct PairingRules {
    int chord_order;
    int theta_order;
    int beta_count;
    int s_order;
    int radial_order;
    int angular_count;
};

/// (<I f, g>_boundary, <f, I^# g>_disk), each computed by its own quadrature.
std::pair<Complex, Complex> adjoint_pairing_check(const DiskFunction& f, const BoundaryFunction& gtilde,
                                                  WeightParam gamma, const PairingRules& rules);

}  // namespace wxray
