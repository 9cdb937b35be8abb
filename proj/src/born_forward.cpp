#include "nearfield/born_forward.hpp"

#include <random>

#include "nearfield/parallel.hpp"
#include "nearfield/specfun.hpp"

namespace nf::born {

using geometry::ScattererSpec;
using geometry::SensorArray;
using linalg::ComplexMatrix;

bool ContrastQuadrature::inside_any(Point2 p) const {
  for (const auto& s : shapes)
    if (geometry::contains(s, p)) return true;
  return false;
}

ContrastQuadrature contrast_quadrature(std::span<const ScattererSpec> scatterers, int rule_order) {
  ContrastQuadrature q;
  for (const ScattererSpec& s : scatterers) {
    if (!s.index_fn) throw DomainError("scatterer has no refractive index function");
    const geometry::Shape shape = s.effective_shape();
    const geometry::QuadratureRule rule = geometry::gauss_quadrature(shape, rule_order);
    for (std::size_t p = 0; p < rule.size(); ++p) {
      q.nodes.push_back(rule.nodes[p]);
      q.weighted_contrast.push_back(rule.weights[p] * (s.index_fn(rule.nodes[p]) - 1.0));
    }
    q.shapes.push_back(shape);
  }
  return q;
}

cplx born_scattered_field(const ContrastQuadrature& q, double k, Point2 x, Point2 y) {
  if (q.inside_any(x) || q.inside_any(y)) {
    throw DomainError("Born field requested at a point inside a scatterer");
  }
  cplx sum = 0.0;
  for (std::size_t p = 0; p < q.nodes.size(); ++p) {
    if (q.weighted_contrast[p] == 0.0) continue;
    const cplx a = specfun::fundamental_solution(k, x, q.nodes[p]);
    const cplx b = specfun::fundamental_solution(k, q.nodes[p], y);
    sum += q.weighted_contrast[p] * (a * b);
  }
  return k * k * sum;
}

cplx born_scattered_field(std::span<const ScattererSpec> scatterers, int rule_order, double k, Point2 x,
                          Point2 y) {
  return born_scattered_field(contrast_quadrature(scatterers, rule_order), k, x, y);
}

MultistaticMatrix assemble_multistatic(std::span<const ScattererSpec> scatterers, const SensorArray& sensors,
                                       double k, int rule_order, Exec exec) {
  if (!(k > 0.0)) throw DomainError("wavenumber must be positive");
  const ContrastQuadrature q = contrast_quadrature(scatterers, rule_order);
  for (const Point2& x : sensors.points) {
    if (q.inside_any(x)) throw DomainError("sensor lies inside a scatterer");
  }
  const auto n = static_cast<long>(sensors.size());
  const auto np = static_cast<long>(q.nodes.size());

  // phi(i, p) = Phi(x_i, z_p); shared by rows and columns since x_i = y_i.
  ComplexMatrix phi(static_cast<std::size_t>(n), static_cast<std::size_t>(np));
  auto fill_row = [&](long i) {
    for (long p = 0; p < np; ++p) {
      phi(static_cast<std::size_t>(i), static_cast<std::size_t>(p)) =
          specfun::fundamental_solution(k, sensors.points[static_cast<std::size_t>(i)],
                                        q.nodes[static_cast<std::size_t>(p)]);
    }
  };

  MultistaticMatrix out;
  out.data = ComplexMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  out.sensors = sensors;
  out.k = k;
  auto entry_row = [&](long i) {
    for (long j = 0; j < n; ++j) {
      cplx sum = 0.0;
      for (long p = 0; p < np; ++p) {
        const auto up = static_cast<std::size_t>(p);
        if (q.weighted_contrast[up] == 0.0) continue;
        sum += q.weighted_contrast[up] *
               (phi(static_cast<std::size_t>(i), up) * phi(static_cast<std::size_t>(j), up));
      }
      out.data(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = k * k * sum;
    }
  };

  for_each_index(n, exec, fill_row);
  for_each_index(n, exec, entry_row);
  return out;
}

ComplexMatrix unit_noise_matrix(std::size_t n, std::uint64_t seed, NoiseKind kind) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix e(n, n);
  for (cplx& v : e.data()) {
    const double re = normal(rng);
    const double im = kind == NoiseKind::complex ? normal(rng) : 0.0;
    v = {re, im};
  }
  const double s = linalg::spectral_norm(e);
  if (s > 0.0) e *= 1.0 / s;
  return e;
}

MultistaticMatrix add_noise(const MultistaticMatrix& m, double delta, std::uint64_t seed, NoiseKind kind) {
  if (!(delta >= 0.0)) throw DomainError("noise level must be non-negative");
  if (delta == 0.0) return m;
  if (!m.data.square()) throw DomainError("noise requires a square multistatic matrix");
  const ComplexMatrix e = unit_noise_matrix(m.data.rows(), seed, kind);
  MultistaticMatrix out = m;
  for (std::size_t i = 0; i < e.data().size(); ++i) {
    out.data.data()[i] = m.data.data()[i] * (1.0 + delta * e.data()[i]);
  }
  out.noise_delta = delta;
  out.noise_seed = seed;
  return out;
}

double born_smallness(const ContrastQuadrature& q, const SensorArray& sensors, double k) {
  double worst = 0.0;
  for (const Point2& x : sensors.points) {
    cplx s = 0.0;
    for (std::size_t p = 0; p < q.nodes.size(); ++p) {
      s += q.weighted_contrast[p] * specfun::fundamental_solution(k, x, q.nodes[p]);
    }
    worst = std::max(worst, k * k * std::abs(s));
  }
  return worst;
}

}  // namespace nf::born
