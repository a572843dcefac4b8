// Singular value decomposition of the weighted transform: boundary modes, singular
// values, spectral analysis/synthesis/inversion and the range conditions.
#pragma once

#include <vector>

#include "wxray/xray.hpp"
#include "wxray/zernike.hpp"

namespace wxray {

/// Boundary mode psi_{n,k}; k is unrestricted, modes with k outside [0, n] span the
/// kernel of the backprojection.
struct BoundaryMode {
    BoundaryMode(int n, int k, WeightParam gamma);
    int n;
    int k;
    WeightParam gamma;
};

/// ((-1)^n / 2pi) e^{i(n-2k)(beta+alpha)} L_n(sin alpha); psi = cos(alpha)^{2 gamma + 1} times this.
Complex psi_regular_factor(const BoundaryMode& mode, const FanBeam& line);
/// Squared norm of psi for the boundary weight cos(alpha)^{-2 gamma}.
double psi_norm_sq(const BoundaryMode& mode);
/// Regular factor of the unit boundary singular function i^n psi / ||psi||, paired with
/// Ghat so that the forward transform of Ghat_{n,k} is sigma_{n,k} times it.
Complex boundary_basis_regular_factor(const BoundaryMode& mode, const FanBeam& line);

double ln_sigma_sq(int n, int k, WeightParam gamma);
double sigma_sq(int n, int k, WeightParam gamma);
double sigma(int n, int k, WeightParam gamma);
/// Same quantity through the Beta-function ratio, computed independently.
double sigma_sq_beta_form(int n, int k, WeightParam gamma);
/// (sigma_{n,k+1} / sigma_{n,k})^2 in closed form, 0 <= k <= n-1.
double sigma_ratio(int n, int k, WeightParam gamma);

class SpectrumTable {
public:
    SpectrumTable(WeightParam gamma, int max_degree);
    WeightParam gamma() const noexcept { return gamma_; }
    int max_degree() const noexcept { return max_degree_; }
    double sigma(int n, int k) const;
    double sigma_sq(int n, int k) const;

private:
    WeightParam gamma_;
    int max_degree_;
    std::vector<double> sigma_;
};

/// Extremizer locations of sigma over k and the two power-law envelopes
///   mid(n) = sigma^2_{n, floor(n/2)} (n+1),  end(n) = sigma^2_{n,0} (n+1)^{1+gamma},
/// whose limits are 4 pi and 2^{2 gamma + 2} pi Gamma(1 + gamma).
inline constexpr double kEnvelopeTailBand = 0.15;

struct EnvelopeReport {
    bool extremizers_ok = true;
    int first_bad_degree = -1;
    double mid_limit = 0.0;
    double end_limit = 0.0;
    double mid_min = 0.0, mid_max = 0.0;  // over n <= N, relative to mid_limit
    double end_min = 0.0, end_max = 0.0;  // over n <= N, relative to end_limit
    double tail_min = 0.0, tail_max = 0.0;  // both envelopes over N/2 <= n <= N, relative
    /// Constants with C1 (n+1)^{min(-1,-1-gamma)} <= sigma^2 <= C2 (n+1)^{max(-1,-1-gamma)}.
    double lower_constant = 0.0;
    double upper_constant = 0.0;
    /// Positive finite bands, with the tail within kEnvelopeTailBand of the limits.
    bool bands_ok = true;
};
EnvelopeReport asym_envelope_check(WeightParam gamma, int max_degree);

/// Boundary coefficients a_{n,k} = <g, i^n psi_{n,k}/||psi||> for n <= N and
/// -K <= k <= n + K.
class BoundaryCoefficients {
public:
    BoundaryCoefficients(WeightParam gamma, int degree, int k_extra);
    WeightParam gamma() const noexcept { return gamma_; }
    int degree() const noexcept { return degree_; }
    int k_extra() const noexcept { return k_extra_; }
    Complex& at(int n, int k);
    Complex at(int n, int k) const;

private:
    std::size_t offset(int n, int k) const;
    WeightParam gamma_;
    int degree_;
    int k_extra_;
    std::vector<Complex> values_;
};

inline constexpr int kDefaultKExtra = 3;

/// Throws std::invalid_argument naming the required orders when the rule cannot resolve degree N.
void require_resolved(const Sinogram& s, int degree, int k_extra);

BoundaryCoefficients analyze(const Sinogram& s, int degree, int k_extra = kDefaultKExtra);
Sinogram synthesize(const CoefficientField& f, const BoundaryQuadrature& rule);

struct Inversion {
    CoefficientField field;
    BoundaryCoefficients coefficients;  // includes the kernel band, left uninverted
    double range_defect;
};
/// f_{n,k} = a_{n,k} / sigma_{n,k}; modes with sigma below truncate_below are set to zero.
Inversion invert(const Sinogram& s, int degree, double truncate_below = 0.0, int k_extra = kDefaultKExtra);

double range_defect(const BoundaryCoefficients& a);
double range_defect(const Sinogram& s, int degree, int k_extra = kDefaultKExtra);

double sobolev_norm(const CoefficientField& f, double s);

/// sigma^2 rebuilt from the eigenvalues of L_gamma and D_omega on Ghat_{n,k} through the
/// Gamma-function form of the functional calculus.
double funcrel_sigma_sq(int n, int k, WeightParam gamma);
/// The Beta-function form of the same expression.
double funcrel_sigma_sq_beta_form(int n, int k, WeightParam gamma);
/// Normal operator acting on a field through the functional calculus.
CoefficientField funcrel_apply(const CoefficientField& f);

struct TameBoundsReport {
    double lower_exponent;
    double upper_exponent;
    double worst_lower_ratio;  // min over fields of ||N f||_s / (C1 ||f||_{s+lower})
    double worst_upper_ratio;  // max over fields of ||N f||_s / (C2 ||f||_{s+upper})
    bool holds;
};
/// Random fields drawn from a seeded generator.
TameBoundsReport tame_bounds_check(WeightParam gamma, int max_degree, double s, int trials = 20,
                                   unsigned long long seed = 1);
TameBoundsReport tame_bounds_check(const std::vector<CoefficientField>& fields, double s);

}  // namespace wxray
