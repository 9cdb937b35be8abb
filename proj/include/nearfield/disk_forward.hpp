#pragma once

// Exact series solution for a homogeneous isotropic unit disk (A = a I,
// constant n) probed by point sources on the circle of radius 2, and the
// discretized, truncated near-field operator N_M built from it.

#include "nearfield/geometry.hpp"
#include "nearfield/linalg.hpp"

namespace nf::disk {

inline constexpr double kDiskRadius = 1.0;
inline constexpr double kCurveRadius = 2.0;

struct DiskMedium {
  cplx a{1.0, 0.0};
  cplx n{1.0, 0.0};
  double k = 1.0;
};

/// Checks the sign conditions for the chosen regime.
void validate_medium(const DiskMedium& m, linalg::Regime regime);

/// sigma_m = [J_m(kc) J'_m(k) - sqrt(na) J'_m(kc) J_m(k)]
///         / [J_m(kc) H'_m(k)  - sqrt(na) J'_m(kc) H_m(k)],   c = sqrt(n/a).
/// Throws ResonanceError when the denominator is below 1e-14 in modulus.
cplx sigma_m(const DiskMedium& medium, int m);

struct SeriesCoefficients {
  int truncation = 0;
  std::vector<cplx> sigma;   // sigma_0 .. sigma_M
  std::vector<cplx> kernel;  // (i/4) sigma_m |H^(1)_m(2k)|^2
};

SeriesCoefficients series_coefficients(const DiskMedium& medium, int truncation);

/// u^s(x, y) for x, y on the curve |x| = 2 given by their polar angles,
/// truncated to |m| <= M with sigma_{-m} = sigma_m.
cplx disk_scattered_field(const DiskMedium& medium, int truncation, double x_angle, double y_angle);
cplx disk_scattered_field(const SeriesCoefficients& c, double x_angle, double y_angle);

/// Q x Q circulant with entries (2 pi / Q) u^s(theta_i, theta_j),
/// theta_i = 2 pi i / Q. Requires Q >= 2M + 2.
linalg::ComplexMatrix assemble_nearfield_matrix(const DiskMedium& medium, int truncation, int quad_points);

/// Analytic eigenvalues of that circulant: lambda_l for Fourier mode l in
/// 0..Q-1 (mode l <-> m = l or l - Q).
std::vector<cplx> circulant_symbol(const DiskMedium& medium, int truncation, int quad_points);

/// (Phi(x_1, z), ..., Phi(x_N, z)) for z strictly inside the sensor circle.
ComplexVector rhs_point_source(Point2 z, double k, const geometry::SensorArray& sensors);

}  // namespace nf::disk
