#pragma once

#include <string>

#include "nearfield/geometry.hpp"

namespace nf {

/// Indicator values over a sampling grid, row-major with y as the outer index.
struct IndicatorField {
  geometry::SamplingGrid grid;
  std::vector<double> values;
  std::string mode;
  std::string config_hash;

  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * grid.nx + ix]; }
};

/// Finite stand-in for +infinity in indicator functions.
inline constexpr double kIndicatorCap = 1e12;

inline double capped_reciprocal(double denom) {
  if (!(denom > 0.0)) return kIndicatorCap;
  const double v = 1.0 / denom;
  return v > kIndicatorCap ? kIndicatorCap : v;
}

}  // namespace nf
