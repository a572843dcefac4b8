// Disk polynomials (generalized Zernike polynomials) and the operators they diagonalize.
//
// Basis conventions:
//   P_{m,l}^gamma   disk polynomial of bidegree (m, l), equal to z^{m-l} on |z| = 1 when m >= l
//   G_{n,k}^gamma   = (g_{n,k} / p_{n-k,k}) P_{n-k,k}^gamma, the backprojected boundary mode
//   Ghat_{n,k}      = (-1)^k P_{n-k,k} / ||P_{n-k,k}||, orthonormal in L^2(d^gamma)
// Ghat differs from G / ||G|| by the unit factor i^n; this phase keeps the derivative
// ladders real.
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "wxray/geometry.hpp"
#include "wxray/quadrature.hpp"
#include "wxray/specfun.hpp"

namespace wxray {

using DiskFunction = std::function<Complex(const DiskPoint&)>;

struct ZernikeIndex {
    ZernikeIndex(int n, int k, WeightParam gamma);
    int n;
    int k;
    WeightParam gamma;
};

/// Truncated expansion sum f_{n,k} Ghat_{n,k}^gamma over n <= degree, 0 <= k <= n.
class CoefficientField {
public:
    CoefficientField(WeightParam gamma, int degree);
    CoefficientField(WeightParam gamma, int degree, std::vector<Complex> coefficients);
    static CoefficientField delta(WeightParam gamma, int degree, int n, int k, Complex value = 1.0);

    static std::size_t size_for(int degree);
    static std::size_t index(int n, int k);

    WeightParam gamma() const noexcept { return gamma_; }
    int degree() const noexcept { return degree_; }
    std::span<const Complex> coefficients() const noexcept { return coeffs_; }
    Complex operator()(int n, int k) const;

    /// L^2(d^gamma) norm; Parseval in the orthonormal basis.
    double l2_norm() const;
    Complex evaluate(const DiskPoint& p) const;
    double max_abs_difference(const CoefficientField& other) const;

    CoefficientField operator+(const CoefficientField& other) const;
    CoefficientField operator*(Complex scale) const;

private:
    WeightParam gamma_;
    int degree_;
    std::vector<Complex> coeffs_;
};

Complex disk_poly(int m, int l, WeightParam gamma, const DiskPoint& p);
double zernike_norm_sq(const ZernikeIndex& idx);
double ln_zernike_norm_sq(const ZernikeIndex& idx);
double leading_coeff_p(const ZernikeIndex& idx);
Complex g_leading_coeff(const ZernikeIndex& idx);

Complex g_eval(const ZernikeIndex& idx, const DiskPoint& p);
Complex g_hat_eval(const ZernikeIndex& idx, const DiskPoint& p);
/// Ghat_{n,k}(p) for every n <= degree, 0 <= k <= n, in CoefficientField index order.
std::vector<Complex> g_hat_all(WeightParam gamma, int degree, const DiskPoint& p);

/// (1/2pi) int e^{i(n-2k) theta} L_n((i/2)(zbar e^{i theta} - z e^{-i theta})) d theta by a
/// uniform theta rule; k may be any integer.
Complex g_fourier_oracle(int n, int k, WeightParam gamma, const DiskPoint& p, int theta_order);

CoefficientField apply_L_gamma(const CoefficientField& f);
CoefficientField apply_D_omega(const CoefficientField& f);
/// d/dz maps the gamma basis at degree N to the gamma + 1 basis at degree N - 1.
CoefficientField d_dz(const CoefficientField& f);
CoefficientField d_dzbar(const CoefficientField& f);

/// Squared ladder coefficients.
double d_dz_coeff_sq(int n, int k, WeightParam gamma);     // (n-k)(k+gamma+1)
double d_dzbar_coeff_sq(int n, int k, WeightParam gamma);  // (n-k+gamma+1)k
/// (gamma+1)(n+1-k)(k+gamma+1) <= (gamma+1)(n+gamma+2)^2/4 for all 0 <= k <= n+1, so the
/// ladders are bounded from degree s+1 to degree s with constant 1/2.
bool ladder_bound_holds(int n, WeightParam gamma);

/// -(1-rho^2) Lap f + (2 gamma + 2)(x d_x + y d_y) f - (x d_y - y d_x)^2 f + (gamma+1)^2 f
/// by Richardson-extrapolated finite differences. Stencils turn one-sided where the
/// centered stencil would leave the disk; accuracy degrades there.
Complex L_gamma_pointwise(const DiskFunction& f, WeightParam gamma, const DiskPoint& p, double h = 1e-4);

/// Orthogonal projection of f onto degree <= N by disk quadrature.
CoefficientField project_onto_basis(const DiskFunction& f, WeightParam gamma, int degree,
                                    const DiskQuadrature& rule);

}  // namespace wxray
