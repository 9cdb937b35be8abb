#include "nearfield/sampling_methods.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "nearfield/parallel.hpp"
#include "nearfield/steering.hpp"

namespace nf::sampling {
namespace {

// (phi, psi_j) for the leading `count` eigenvectors.
std::vector<cplx> coefficients(const PicardData& data, std::span<const cplx> phi, int count) {
  const std::size_t n = data.eig.vectors.rows();
  if (phi.size() != n) throw DomainError("vector length does not match the operator size");
  std::vector<cplx> c(static_cast<std::size_t>(count));
  for (std::size_t j = 0; j < c.size(); ++j) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += phi[i] * std::conj(data.eig.vectors(i, j));
    c[j] = s;
  }
  return c;
}

void require_spectrum(const PicardData& data) {
  if (data.retained <= 0) throw DegenerateSpectrumError("no eigenvalue survives the spectral clip");
}

}  // namespace

PicardData make_picard_data(linalg::EigenSystem eig, double weight) {
  if (!(weight > 0.0)) throw DomainError("quadrature weight must be positive");
  PicardData d;
  d.weight = weight;
  // Re-sort by signed value so the positive spectrum leads; with a PSD
  // operator this matches the magnitude ordering.
  const std::size_t n = eig.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return eig.values[a] > eig.values[b]; });
  d.eig.values.resize(n);
  d.eig.vectors = linalg::ComplexMatrix(eig.vectors.rows(), n);
  for (std::size_t jj = 0; jj < n; ++jj) {
    d.eig.values[jj] = eig.values[order[jj]];
    for (std::size_t i = 0; i < eig.vectors.rows(); ++i) d.eig.vectors(i, jj) = eig.vectors(i, order[jj]);
  }
  const double lmax = n ? d.eig.values.front() : 0.0;
  const double lmin = n ? d.eig.values.back() : 0.0;
  if (lmin < -1e-8 * std::max(lmax, 0.0) && lmin < 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "operator is not positive: lambda_min = %.6e, lambda_max = %.6e", lmin, lmax);
    throw DomainError(buf);
  }
  if (!(lmax > 0.0)) throw DegenerateSpectrumError("operator has no positive eigenvalue");
  d.retained = 0;
  for (double l : d.eig.values)
    if (l > kSpectralClip * lmax) ++d.retained;
  return d;
}

double picard_partial_sum(const PicardData& data, std::span<const cplx> phi_z, int terms) {
  require_spectrum(data);
  terms = std::clamp(terms, 0, data.retained);
  const std::vector<cplx> c = coefficients(data, phi_z, terms);
  double s = 0.0;
  for (int j = 0; j < terms; ++j) s += std::norm(c[static_cast<std::size_t>(j)]) / data.eig.values[static_cast<std::size_t>(j)];
  return data.weight * s;
}

double picard_sum(const PicardData& data, std::span<const cplx> phi_z) {
  return picard_partial_sum(data, phi_z, data.retained);
}

double picard_indicator(const PicardData& data, std::span<const cplx> phi_z) {
  return capped_reciprocal(picard_sum(data, phi_z));
}

void validate_filter(const FilterSpec& f) {
  if (!(f.eps > 0.0)) throw DomainError("filter parameter eps must be positive");
  if (f.kind == FilterKind::landweber && !(f.a > 0.0)) throw DomainError("Landweber step a must be positive");
}

double filter_value(const FilterSpec& f, double t) {
  validate_filter(f);
  if (!(t > 0.0)) throw DomainError("filter argument must be positive");
  switch (f.kind) {
    case FilterKind::tikhonov:
      return 1.0 / (t + f.eps);
    case FilterKind::spectral_cutoff:
      return t > f.eps ? 1.0 / t : 0.0;
    case FilterKind::landweber: {
      // 1 - (1 - a t)^{1/eps}, computed without cancellation for small a t.
      const double at = f.a * t;
      if (at >= 1.0) return at == 1.0 ? 1.0 / t : (1.0 - std::pow(1.0 - at, 1.0 / f.eps)) / t;
      return -std::expm1(std::log1p(-at) / f.eps) / t;
    }
  }
  return 0.0;
}

FilterSpec cutoff_at_rank(const PicardData& data, int rank) {
  require_spectrum(data);
  rank = std::clamp(rank, 1, data.retained);
  const double above = data.eig.values[static_cast<std::size_t>(rank) - 1];
  const double below =
      static_cast<std::size_t>(rank) < data.eig.size() ? std::max(data.eig.values[static_cast<std::size_t>(rank)], 0.0) : 0.0;
  return FilterSpec::cutoff(0.5 * (above * above + below * below));
}

ComplexVector mlsm_solve(const PicardData& data, std::span<const cplx> phi_z, const FilterSpec& f) {
  require_spectrum(data);
  validate_filter(f);
  if (f.kind == FilterKind::landweber && !(f.a < data.lambda_max() * data.lambda_max())) {
    throw DomainError("Landweber step a must be below lambda_1^2");
  }
  const std::vector<cplx> c = coefficients(data, phi_z, data.retained);
  const std::size_t n = data.eig.vectors.rows();
  ComplexVector g(n);
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double l = data.eig.values[j];
    const cplx coef = l * filter_value(f, l * l) * c[j];
    if (coef == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) g[i] += coef * data.eig.vectors(i, j);
  }
  return g;
}

MlsmIndicators mlsm_indicators(const PicardData& data, std::span<const cplx> g) {
  const std::size_t n = data.eig.vectors.rows();
  if (g.size() != n) throw DomainError("vector length does not match the operator size");
  const std::vector<cplx> c = coefficients(data, g, static_cast<int>(data.eig.size()));
  MlsmIndicators out;
  double quad = 0.0;
  ComplexVector half(n);
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double l = std::max(data.eig.values[j], 0.0);
    quad += l * std::norm(c[j]);
  }
  // N^{1/2} g assembled explicitly as a vector, independent of the sum above.
  const ComplexVector root = linalg::sqrt_op_apply(data.eig, g);
  out.quad_form = data.weight * quad;
  out.half_norm2 = data.weight * std::pow(linalg::norm2(root), 2);
  const double scale = std::max(std::abs(out.quad_form), std::abs(out.half_norm2));
  out.identity_ok = std::abs(out.quad_form - out.half_norm2) <= 1e-9 * scale + 1e-300;
  out.P = capped_reciprocal(std::abs(out.quad_form));
  out.I = capped_reciprocal(std::sqrt(data.weight) * linalg::norm2(g));
  return out;
}

EquivalenceReport fm_mlsm_equivalence_check(const PicardData& data, std::span<const cplx> phi_z, int m_terms,
                                            std::span<const double> eps_sequence, FilterKind kind,
                                            double landweber_a, double tol) {
  require_spectrum(data);
  for (std::size_t i = 1; i < eps_sequence.size(); ++i) {
    if (!(eps_sequence[i] < eps_sequence[i - 1])) throw DomainError("eps sequence must be strictly decreasing");
  }
  const int m = std::clamp(m_terms, 0, data.retained);
  const std::vector<cplx> c = coefficients(data, phi_z, data.retained);
  const double full = picard_sum(data, phi_z);
  const double partial = picard_partial_sum(data, phi_z, m);

  EquivalenceReport report;
  for (double eps : eps_sequence) {
    const FilterSpec f{kind, eps, landweber_a};
    const ComplexVector g = mlsm_solve(data, phi_z, f);
    EquivalenceRow row;
    row.eps = eps;
    row.value = mlsm_indicators(data, g).half_norm2;
    double filtered = 0.0;
    for (int j = 0; j < m; ++j) {
      const double l = data.eig.values[static_cast<std::size_t>(j)];
      const double fl = filter_value(f, l * l);
      filtered += l * l * l * fl * fl * std::norm(c[static_cast<std::size_t>(j)]);
    }
    row.filtered_partial = data.weight * filtered;
    row.partial_picard = partial;
    row.full_picard = full;
    row.lower_ok = row.filtered_partial <= row.value * (1.0 + tol) + tol;
    row.upper_ok = row.value <= row.full_picard * (1.0 + tol) + tol;
    if (!row.lower_ok) {
      report.violations.push_back("eps=" + std::to_string(eps) + ": partial sum exceeds the MLSM value");
    }
    if (!row.upper_ok) {
      report.violations.push_back("eps=" + std::to_string(eps) + ": MLSM value exceeds the full Picard sum");
    }
    report.rows.push_back(row);
  }
  return report;
}

std::vector<double> default_eps_sequence() {
  std::vector<double> out;
  double e = 1e-1;
  for (int i = 0; i < 8; ++i, e /= 10.0) out.push_back(e);
  return out;
}

IndicatorField fm_field(const PicardData& data, const SweepSetup& setup, const geometry::SamplingGrid& grid,
                        Exec exec) {
  require_spectrum(data);
  IndicatorField f;
  f.grid = grid;
  f.mode = "fm";
  f.values.assign(grid.points.size(), 0.0);
  for_each_index(static_cast<long>(grid.points.size()), exec, [&](long i) {
    const auto u = static_cast<std::size_t>(i);
    check_off_curve(grid.points[u], setup.sensors);
    const ComplexVector phi = steering_vector(grid.points[u], setup.sensors, setup.k);
    f.values[u] = picard_indicator(data, phi);
  });
  return f;
}

IndicatorField mlsm_field(const PicardData& data, const SweepSetup& setup, const geometry::SamplingGrid& grid,
                          const FilterSpec& filter, Exec exec) {
  require_spectrum(data);
  IndicatorField f;
  f.grid = grid;
  f.mode = "mlsm";
  f.values.assign(grid.points.size(), 0.0);
  for_each_index(static_cast<long>(grid.points.size()), exec, [&](long i) {
    const auto u = static_cast<std::size_t>(i);
    check_off_curve(grid.points[u], setup.sensors);
    const ComplexVector phi = steering_vector(grid.points[u], setup.sensors, setup.k);
    const ComplexVector g = mlsm_solve(data, phi, filter);
    f.values[u] = mlsm_indicators(data, g).P;
  });
  return f;
}

}  // namespace nf::sampling
