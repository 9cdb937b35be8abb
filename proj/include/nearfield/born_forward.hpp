#pragma once

// Born-approximation near-field data for small penetrable scatterers:
//   u_B(x, y) = k^2 sum_p w_p (n(z_p) - 1) Phi(x, z_p) Phi(z_p, y)
// over the Gauss nodes of every scatterer.

#include <cstdint>
#include <span>

#include "nearfield/geometry.hpp"
#include "nearfield/linalg.hpp"

namespace nf::born {

inline constexpr int kDefaultRuleOrder = 16;

struct MultistaticMatrix {
  linalg::ComplexMatrix data;
  geometry::SensorArray sensors;
  double k = 1.0;
  double noise_delta = 0.0;
  std::uint64_t noise_seed = 0;
};

/// Quadrature nodes of all scatterers with weights w_p (n(z_p) - 1).
struct ContrastQuadrature {
  std::vector<Point2> nodes;
  std::vector<cplx> weighted_contrast;
  std::vector<geometry::Shape> shapes;

  bool inside_any(Point2 p) const;
};

ContrastQuadrature contrast_quadrature(std::span<const geometry::ScattererSpec> scatterers, int rule_order);

cplx born_scattered_field(std::span<const geometry::ScattererSpec> scatterers, int rule_order, double k,
                          Point2 x, Point2 y);
cplx born_scattered_field(const ContrastQuadrature& q, double k, Point2 x, Point2 y);

MultistaticMatrix assemble_multistatic(std::span<const geometry::ScattererSpec> scatterers,
                                       const geometry::SensorArray& sensors, double k,
                                       int rule_order = kDefaultRuleOrder, Exec exec = Exec::parallel);

enum class NoiseKind { complex, real };

/// Random N x N matrix with i.i.d. standard normal entries (both parts for
/// NoiseKind::complex) rescaled to spectral norm exactly 1.
linalg::ComplexMatrix unit_noise_matrix(std::size_t n, std::uint64_t seed, NoiseKind kind = NoiseKind::complex);

/// Entry-wise u_ij (1 + delta E_ij) with E = unit_noise_matrix(N, seed, kind).
MultistaticMatrix add_noise(const MultistaticMatrix& m, double delta, std::uint64_t seed,
                            NoiseKind kind = NoiseKind::complex);

/// max_x k^2 |sum_p w_p (n - 1) Phi(x, z_p)| over the sensors. The Born
/// approximation is trustworthy when this is well below 1.
double born_smallness(const ContrastQuadrature& q, const geometry::SensorArray& sensors, double k);

}  // namespace nf::born
