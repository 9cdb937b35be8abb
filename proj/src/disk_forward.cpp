#include "nearfield/disk_forward.hpp"

#include <string>

#include "nearfield/specfun.hpp"

namespace nf::disk {

void validate_medium(const DiskMedium& m, linalg::Regime regime) {
  if (!(m.k > 0.0)) throw DomainError("wavenumber must be positive");
  if (!(m.a.real() > 0.0)) throw DomainError("Re(a) must be positive");
  if (regime == linalg::Regime::absorbing) {
    if (!(m.a.imag() < 0.0) || !(m.n.imag() > 0.0)) {
      throw DomainError("absorbing regime needs Im(a) < 0 and Im(n) > 0");
    }
  } else {
    if (m.a.imag() != 0.0 || m.n.imag() != 0.0) {
      throw DomainError("non-absorbing regime needs real a and n");
    }
    if (m.a == 1.0) throw DomainError("non-absorbing regime needs a != 1");
  }
}

cplx sigma_m(const DiskMedium& medium, int m) {
  if (m < 0) m = -m;
  const double k = medium.k;
  const cplx c = std::sqrt(medium.n / medium.a);
  const cplx root_na = std::sqrt(medium.n * medium.a);
  const cplx kc = k * c;

  const cplx j_in = specfun::bessel_j(m, kc);
  const cplx jp_in = specfun::bessel_j_prime(m, kc);
  const double j_out = specfun::bessel_j(m, k);
  const double jp_out = specfun::bessel_j_prime(m, k);
  const cplx h_out = specfun::hankel1(m, k);
  const cplx hp_out = specfun::hankel1_prime(m, k);

  const cplx num = j_in * jp_out - root_na * jp_in * j_out;
  const cplx den = j_in * hp_out - root_na * jp_in * h_out;
  if (std::abs(den) < 1e-14) {
    throw ResonanceError("sigma_" + std::to_string(m) + ": denominator " + std::to_string(std::abs(den)) +
                         " below 1e-14 (k is numerically resonant)");
  }
  return num / den;
}

SeriesCoefficients series_coefficients(const DiskMedium& medium, int truncation) {
  if (truncation < 0) throw DomainError("truncation must be non-negative");
  SeriesCoefficients out;
  out.truncation = truncation;
  const std::vector<cplx> h = specfun::hankel1_sequence(truncation, 2.0 * medium.k);
  for (int m = 0; m <= truncation; ++m) {
    const cplx s = sigma_m(medium, m);
    out.sigma.push_back(s);
    out.kernel.push_back(0.25 * kI * s * std::norm(h[static_cast<std::size_t>(m)]));
  }
  return out;
}

cplx disk_scattered_field(const SeriesCoefficients& c, double x_angle, double y_angle) {
  const double t = x_angle - y_angle;
  cplx sum = c.kernel[0];
  for (int m = 1; m <= c.truncation; ++m) {
    sum += 2.0 * c.kernel[static_cast<std::size_t>(m)] * std::cos(m * t);
  }
  return sum;
}

cplx disk_scattered_field(const DiskMedium& medium, int truncation, double x_angle, double y_angle) {
  return disk_scattered_field(series_coefficients(medium, truncation), x_angle, y_angle);
}

linalg::ComplexMatrix assemble_nearfield_matrix(const DiskMedium& medium, int truncation, int quad_points) {
  if (truncation < 0) throw DomainError("truncation must be non-negative");
  if (quad_points < 2 * truncation + 2) {
    throw DomainError("quad_points = " + std::to_string(quad_points) + " cannot resolve Fourier modes up to M = " +
                      std::to_string(truncation) + " (need >= 2M + 2)");
  }
  const SeriesCoefficients c = series_coefficients(medium, truncation);
  const auto q = static_cast<std::size_t>(quad_points);
  const double w = 2.0 * kPi / quad_points;
  // The kernel depends on (i - j) mod Q only; evaluate each lag once.
  std::vector<cplx> lag(q);
  for (std::size_t d = 0; d < q; ++d) lag[d] = w * disk_scattered_field(c, 2.0 * kPi * d / quad_points, 0.0);
  linalg::ComplexMatrix n(q, q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) n(i, j) = lag[(i + q - j) % q];
  return n;
}

std::vector<cplx> circulant_symbol(const DiskMedium& medium, int truncation, int quad_points) {
  const SeriesCoefficients c = series_coefficients(medium, truncation);
  std::vector<cplx> out(static_cast<std::size_t>(quad_points), 0.0);
  for (int m = -truncation; m <= truncation; ++m) {
    const int l = ((m % quad_points) + quad_points) % quad_points;
    out[static_cast<std::size_t>(l)] += 2.0 * kPi * c.kernel[static_cast<std::size_t>(std::abs(m))];
  }
  return out;
}

ComplexVector rhs_point_source(Point2 z, double k, const geometry::SensorArray& sensors) {
  if (!(norm(z) < sensors.radius)) {
    throw DomainError("point source must lie strictly inside the measurement curve");
  }
  ComplexVector v(sensors.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = specfun::fundamental_solution(k, sensors.points[i], z);
  return v;
}

}  // namespace nf::disk
