// Gauss-Jacobi rules and the tensor rules on the disk and on the boundary manifold.
#pragma once

#include <vector>

#include "wxray/geometry.hpp"
#include "wxray/specfun.hpp"

namespace wxray {

/// Gauss rule for the weight (1-x)^a (1+x)^b on [-1,1]. Nodes ascend.
struct QuadratureRule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
    double a = 0.0;
    double b = 0.0;

    int order() const noexcept { return static_cast<int>(nodes.size()); }
};

QuadratureRule1D gauss_jacobi(int order, double a, double b);

/// Rule for integrals against d^gamma dA, d = 1 - |z|^2. Radial nodes are Gauss-Jacobi in
/// u = rho^2 (weight (1-u)^gamma); angular nodes are uniform starting at omega = 0.
struct DiskQuadrature {
    DiskQuadrature(WeightParam gamma, int radial_order, int angular_count);

    WeightParam gamma;
    int radial_order;
    int angular_count;
    std::vector<DiskPoint> points;  // radial-major: index r * angular_count + a
    std::vector<double> weights;
    std::vector<double> radii;
};

inline DiskQuadrature disk_rule(WeightParam gamma, int radial_order, int angular_count) {
    return DiskQuadrature(gamma, radial_order, angular_count);
}

/// Rule for pairings of regular factors on the boundary manifold: the represented
/// function is g = mu^{2 gamma + 1} g~, so every pairing carries the net weight
/// mu^{2 gamma + 2} d beta d alpha = (1 - s^2)^{gamma + 1/2} d beta ds with s = sin alpha.
struct BoundaryQuadrature {
    BoundaryQuadrature(WeightParam gamma, int beta_count, int s_order);

    WeightParam gamma;
    int beta_count;
    int s_order;
    QuadratureRule1D s_rule;
    std::vector<double> betas;
    std::vector<FanBeam> nodes;  // beta-major: index i * s_order + j
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

inline BoundaryQuadrature boundary_rule(WeightParam gamma, int beta_count, int s_order) {
    return BoundaryQuadrature(gamma, beta_count, s_order);
}

/// Rule sizes sufficient to make every inner product up to degree N exact.
struct DefaultOrders {
    int radial_order;
    int angular_count;
    int s_order;
    int beta_count;
};
DefaultOrders default_orders(int max_degree);

}  // namespace wxray
