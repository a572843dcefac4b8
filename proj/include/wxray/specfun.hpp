// Scalar special functions and orthogonal-polynomial recurrences.
#pragma once

#include <vector>

namespace wxray {

inline constexpr double kPi = 3.14159265358979323846;

/// Weight exponent gamma > -1 selecting a weighted transform pair.
class WeightParam {
public:
    explicit WeightParam(double gamma);
    double value() const noexcept { return gamma_; }
    friend bool operator==(const WeightParam&, const WeightParam&) = default;

private:
    double gamma_;
};

/// Degree and exponents of a Jacobi polynomial P_n^{(a,b)}.
struct JacobiParams {
    JacobiParams(int n, double a, double b);
    int n;
    double a;
    double b;
};

double ln_gamma(double x);
double beta(double x, double y);
/// log B(x, y), finite for arguments where B itself under/overflows.
double ln_beta(double x, double y);
/// log of the binomial coefficient C(x, y) = Gamma(x+1) / (Gamma(y+1) Gamma(x-y+1)).
double ln_binomial(double x, double y);

/// P_n^{(a,b)}(x) by forward three-term recurrence; x may lie outside [-1,1].
double jacobi_eval(const JacobiParams& p, double x);
/// Derivative d/dx P_n^{(a,b)}(x) = (n+a+b+1)/2 P_{n-1}^{(a+1,b+1)}(x).
double jacobi_derivative(const JacobiParams& p, double x);

// L_n^gamma is fixed as the Gegenbauer polynomial C_n^{(gamma+1)}, orthogonal for the
// weight (1-x^2)^{gamma+1/2} on [-1,1].
double gegenbauer_L(int n, WeightParam gamma, double x);
/// Values L_0(x), ..., L_nmax(x) from one recurrence sweep.
std::vector<double> gegenbauer_L_all(int nmax, WeightParam gamma, double x);
double gegenbauer_leading_coeff(int n, WeightParam gamma);
double ln_gegenbauer_leading_coeff(int n, WeightParam gamma);
double gegenbauer_norm_sq(int n, WeightParam gamma);
double ln_gegenbauer_norm_sq(int n, WeightParam gamma);

/// Monomial coefficients c[0..n] of L_n^gamma, built by running the recurrence on
/// coefficient vectors. Only the polynomial-identity checks use this.
std::vector<double> gegenbauer_coefficients(int n, WeightParam gamma);

/// Coefficients of -(1-x^2)L'' + (2 gamma + 3) x L' - n(n + 2 gamma + 2) L, which is the
/// zero polynomial when L = L_n^gamma.
std::vector<double> gegenbauer_ode_residual(int n, WeightParam gamma);

/// Both sides of Gamma(2z) = pi^{-1/2} 2^{2z-1} Gamma(z) Gamma(z+1/2), in extended precision.
struct DuplicationSides {
    long double lhs;
    long double rhs;
};
DuplicationSides legendre_duplication_check(double z);

}  // namespace wxray
