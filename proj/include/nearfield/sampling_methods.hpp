#pragma once

// Factorization method (Picard-series indicator W) and the modified linear
// sampling method (filtered solutions of N_sharp g = Phi(., z)).
//
// Discrete inner products on the measurement curve carry a uniform
// quadrature weight w: (f, g)_{L2} ~ w * sum f_i conj(g_i). For the disk
// operator w = 2 pi / Q, matching the Riemann weight folded into N_M.

#include "nearfield/field.hpp"
#include "nearfield/linalg.hpp"

namespace nf::sampling {

inline constexpr double kSpectralClip = 1e-12;

struct PicardData {
  linalg::EigenSystem eig;  // of N_sharp
  double weight = 1.0;
  int retained = 0;  // leading eigenpairs with lambda_j > kSpectralClip * lambda_1

  double lambda_max() const { return eig.size() ? eig.values.front() : 0.0; }
};

/// Throws DegenerateSpectrumError if no eigenvalue is positive, DomainError
/// if the operator has a negative eigenvalue below -1e-8 lambda_max.
PicardData make_picard_data(linalg::EigenSystem eig, double weight);

/// Sum over the retained spectrum of w |(phi, psi_j)|^2 / lambda_j.
double picard_sum(const PicardData& data, std::span<const cplx> phi_z);
/// Same sum restricted to the first `terms` retained eigenpairs.
double picard_partial_sum(const PicardData& data, std::span<const cplx> phi_z, int terms);

/// W(z) = 1 / picard_sum, capped.
double picard_indicator(const PicardData& data, std::span<const cplx> phi_z);

enum class FilterKind { tikhonov, spectral_cutoff, landweber };

struct FilterSpec {
  FilterKind kind = FilterKind::tikhonov;
  double eps = 1e-8;
  double a = 0.0;  // Landweber step, needs 0 < a < lambda_1^2

  static FilterSpec tikhonov(double eps) { return {FilterKind::tikhonov, eps, 0.0}; }
  static FilterSpec cutoff(double eps) { return {FilterKind::spectral_cutoff, eps, 0.0}; }
  static FilterSpec landweber(double eps, double a) { return {FilterKind::landweber, eps, a}; }
};

void validate_filter(const FilterSpec& f);

/// f_eps(t):  1/(t+eps) | 1/t for t > eps else 0 | (1 - (1 - a t)^{1/eps}) / t.
double filter_value(const FilterSpec& f, double t);

/// Spectral cutoff keeping exactly the leading `rank` retained eigenpairs.
FilterSpec cutoff_at_rank(const PicardData& data, int rank);

/// g = sum_j lambda_j f(lambda_j^2) (phi, psi_j) psi_j over the retained spectrum.
ComplexVector mlsm_solve(const PicardData& data, std::span<const cplx> phi_z, const FilterSpec& f);

struct MlsmIndicators {
  double P = 0.0;           // |(N_sharp g, g)|^{-1}
  double I = 0.0;           // ||g||^{-1}
  double quad_form = 0.0;   // (N_sharp g, g)
  double half_norm2 = 0.0;  // ||N_sharp^{1/2} g||^2
  bool identity_ok = true;  // quad_form and half_norm2 agree to 1e-9 relative
};

MlsmIndicators mlsm_indicators(const PicardData& data, std::span<const cplx> g);

struct EquivalenceRow {
  double eps = 0.0;
  double value = 0.0;            // ||N_sharp^{1/2} g_eps||^2
  double filtered_partial = 0.0;  // sum_{j <= M} w lambda^3 f^2 |(phi, psi_j)|^2
  double partial_picard = 0.0;   // sum_{j <= M} w |(phi, psi_j)|^2 / lambda_j
  double full_picard = 0.0;      // over the whole retained spectrum
  bool lower_ok = true;
  bool upper_ok = true;
};

struct EquivalenceReport {
  std::vector<EquivalenceRow> rows;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Evaluates the FM/MLSM sandwich for a decreasing eps sequence:
///   filtered partial (M terms) <= ||N^{1/2} g_eps||^2 <= C_reg^2 full Picard sum,
/// with C_reg = 1 for all three filters. Violations are reported, not thrown.
EquivalenceReport fm_mlsm_equivalence_check(const PicardData& data, std::span<const cplx> phi_z, int m_terms,
                                            std::span<const double> eps_sequence,
                                            FilterKind kind = FilterKind::tikhonov, double landweber_a = 0.0,
                                            double tol = 1e-9);

/// Default eps sweep 1e-1, 1e-2, ..., 1e-8.
std::vector<double> default_eps_sequence();

struct SweepSetup {
  geometry::SensorArray sensors;
  double k = 1.0;
};

IndicatorField fm_field(const PicardData& data, const SweepSetup& setup, const geometry::SamplingGrid& grid,
                        Exec exec = Exec::parallel);

IndicatorField mlsm_field(const PicardData& data, const SweepSetup& setup, const geometry::SamplingGrid& grid,
                          const FilterSpec& filter, Exec exec = Exec::parallel);

}  // namespace nf::sampling
