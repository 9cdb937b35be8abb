#pragma once

#include "nearfield/geometry.hpp"
#include "nearfield/specfun.hpp"

namespace nf {

/// phi_z = (Phi(x_1, z), ..., Phi(x_N, z)). Defined for every z that is not a
/// sensor position.
inline ComplexVector steering_vector(Point2 z, const geometry::SensorArray& sensors, double k) {
  ComplexVector v(sensors.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (distance(sensors.points[i], z) == 0.0) throw DomainError("sampling point coincides with a sensor");
    v[i] = specfun::fundamental_solution(k, sensors.points[i], z);
  }
  return v;
}

/// Sampling points may not sit on the measurement curve itself.
inline void check_off_curve(Point2 z, const geometry::SensorArray& sensors) {
  const double r = sensors.radius;
  if (std::abs(norm(z) - r) <= 1e-9 * r) throw DomainError("sampling point lies on the measurement curve");
}

}  // namespace nf
