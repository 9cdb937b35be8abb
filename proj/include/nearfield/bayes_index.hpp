#pragma once

// Hierarchical Bayesian estimate of a constant refractive-index contrast
// gamma ~ n(x0) - 1 from noisy Born near-field readings:
//   u(x_i, y_i) ~ N(mu_i, delta^2)  (real and imaginary parts independently)
//   mu_i = k^2 sum_p w_p eta_p Phi(x_i, z_p) Phi(z_p, y_i)
//   eta_p ~ N(gamma, h^2),  gamma ~ N(0, prior_sd^2)
// sampled jointly over (gamma, eta) by random-walk Metropolis-Hastings.

#include <cstdint>
#include <optional>

#include "nearfield/born_forward.hpp"

namespace nf::bayes {

struct Reading {
  Point2 x;
  Point2 y;
  cplx u;
};

struct Readings {
  std::vector<Reading> items;
  double delta = 0.0;  // standard deviation of each real / imaginary residual
};

/// All N^2 source/receiver pairs of a multistatic matrix.
Readings readings_from_matrix(const born::MultistaticMatrix& m, double delta);

/// Empirical per-component rms of the perturbation noisy - clean, i.e. the
/// absolute noise level actually injected by a relative perturbation.
double injected_noise_sd(const born::MultistaticMatrix& clean, const born::MultistaticMatrix& noisy);

struct ChainConfig {
  int iterations = 20000;
  int burn_in = 5000;
  int thinning = 1;
  std::uint64_t seed = 1;
  double proposal_scale = 0.0;  // 0: 2.38 / sqrt(dim)
};

struct BayesModel {
  geometry::QuadratureRule rhat;  // over the reconstructed support D-hat
  std::vector<geometry::Shape> support;
  double k = 1.0;
  double h = 0.0;
  double prior_sd = 1e5;
  ChainConfig chain;
};

/// Diameter of a shape (side * sqrt(2) for squares, 2r for disks).
double diameter(const geometry::Shape& s);

BayesModel make_model(const geometry::Shape& support, int rule_order, double k, ChainConfig chain = {});

void validate_model(const BayesModel& m);

inline constexpr double kQuadratureNoiseRatio = 0.01;
inline constexpr int kReferenceRuleOrder = 20;

/// Smallest Gauss rule order in 2..16 whose predicted mean for eta == 1
/// differs from the order-20 rule by at most ratio * noise_sd at every
/// sensor pair, i.e. the coarsest rule with negligible integration error.
int select_rule_order(const geometry::Shape& support, double k, const geometry::SensorArray& sensors,
                      double noise_sd, double ratio = kQuadratureNoiseRatio);

cplx predicted_mean(const BayesModel& model, std::span<const double> eta, Point2 x, Point2 y);

/// Unnormalized log posterior with all additive constants dropped.
double log_posterior(const BayesModel& model, const Readings& readings, double gamma, std::span<const double> eta);

/// Precomputed quadratic form of the likelihood, equal to the direct
/// evaluation up to rounding:
///   sum_i |u_i - mu_i|^2 = eta^T G eta - 2 b^T eta + c.
class Posterior {
 public:
  Posterior(const BayesModel& model, const Readings& readings);

  std::size_t nodes() const { return b_.size(); }
  double log_density(double gamma, std::span<const double> eta) const;

  /// Exact Gaussian posterior of (gamma, eta): mean and covariance, row-major
  /// (dim x dim) with gamma first.
  struct Gaussian {
    std::vector<double> mean;
    std::vector<double> cov;
    std::size_t dim = 0;
    double gamma_sd() const;
  };
  Gaussian exact() const;

  /// eta = c for all nodes with c the least-squares constant fit.
  double constant_fit() const;

 private:
  std::vector<double> gram_;  // P x P
  std::vector<double> b_;
  double c_ = 0.0;
  double inv_delta2_ = 0.0;
  double inv_h2_ = 0.0;
  double inv_prior2_ = 0.0;
};

struct PosteriorSummary {
  std::vector<double> samples;     // retained gamma draws
  std::vector<double> log_post;    // matching log posterior values
  std::vector<int> iteration;      // chain iteration of each retained draw
  double mean = 0.0;
  double sd = 0.0;
  double map = 0.0;                // histogram mode
  double mcse = 0.0;               // batch-means standard error of the mean
  double acceptance_rate = 0.0;
};

inline constexpr int kHistogramBins = 50;
inline constexpr double kMinAcceptance = 0.01;

PosteriorSummary run_mh(const BayesModel& model, const Readings& readings);

/// Histogram mode over `bins` equal bins spanning the sample range.
double histogram_mode(std::span<const double> samples, int bins = kHistogramBins);
/// Batch-means standard error of the mean with ~sqrt(n) batches.
double batch_means_se(std::span<const double> samples);

/// One-dimensional reduction eta_p == gamma: conjugate normal posterior.
struct ConjugateResult {
  double mean = 0.0;
  double sd = 0.0;
};
ConjugateResult conjugate_reduction(const BayesModel& model, const Readings& readings);
/// MH on the one-dimensional reduction, for checking against the closed form.
PosteriorSummary run_mh_reduced(const BayesModel& model, const Readings& readings);

}  // namespace nf::bayes
