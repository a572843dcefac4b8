// Fan-beam parameterization of chords of the closed unit disk.
#pragma once

#include <complex>

namespace wxray {

using Complex = std::complex<double>;

/// Line entering the disk at e^{i beta} with direction e^{i(beta + pi + alpha)}.
struct FanBeam {
    FanBeam(double beta, double alpha);
    double beta;
    double alpha;
};

/// Point of the closed unit disk. Radii within 1e-12 beyond the boundary are clamped.
class DiskPoint {
public:
    explicit DiskPoint(Complex z);
    DiskPoint(double x, double y) : DiskPoint(Complex(x, y)) {}
    static DiskPoint polar(double rho, double omega);

    Complex z() const noexcept { return z_; }
    double x() const noexcept { return z_.real(); }
    double y() const noexcept { return z_.imag(); }
    double rho() const noexcept { return std::abs(z_); }
    double omega() const noexcept { return std::arg(z_); }

private:
    Complex z_;
};

/// Unrestricted coordinates on the full circle bundle, used for scattering maps.
struct BundleCoords {
    double beta;
    double alpha;
};

double reduce_angle(double a);  // into [0, 2 pi)
/// Distance between two angles on the circle, in [0, pi].
double angle_distance(double a, double b);

DiskPoint chord_point(const FanBeam& line, double t);
double exit_time(const FanBeam& line);
double boundary_distance(const DiskPoint& p);
/// Closed form of boundary_distance(chord_point(line, t)) = t (2 cos alpha - t).
double boundary_distance_on_chord(const FanBeam& line, double t);
/// Fan-beam coordinates (beta_-, alpha_-) of the line through p with direction theta.
FanBeam fanbeam_through(const DiskPoint& p, double theta);
/// Chord parameter of the projection of p onto the line.
double chord_parameter_of(const FanBeam& line, const DiskPoint& p);

BundleCoords scattering(BundleCoords c);            // (beta + pi + 2 alpha, pi - alpha)
BundleCoords antipodal_scattering(BundleCoords c);  // (beta + pi + 2 alpha, -alpha)

}  // namespace wxray
