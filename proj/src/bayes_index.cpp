#include "nearfield/bayes_index.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "nearfield/specfun.hpp"

namespace nf::bayes {
namespace {

void check_outside(const BayesModel& model, Point2 p) {
  for (const auto& s : model.support) {
    if (geometry::contains(s, p)) throw DomainError("reading position lies inside the reconstructed support");
  }
}

// Column p of the design: k^2 w_p Phi(x, z_p) Phi(z_p, y).
std::vector<cplx> design_row(const BayesModel& model, Point2 x, Point2 y) {
  check_outside(model, x);
  check_outside(model, y);
  const double k2 = model.k * model.k;
  std::vector<cplx> row(model.rhat.size());
  for (std::size_t p = 0; p < row.size(); ++p) {
    const Point2 z = model.rhat.nodes[p];
    row[p] = k2 * model.rhat.weights[p] * specfun::fundamental_solution(model.k, x, z) *
             specfun::fundamental_solution(model.k, z, y);
  }
  return row;
}

void check_readings(const Readings& r) {
  if (!(r.delta > 0.0)) throw DomainError("noise level delta must be positive");
  if (r.items.empty()) throw DomainError("no readings");
}

double summary_sd(std::span<const double> v, double mean) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

void finish_summary(PosteriorSummary& out, long accepted, long proposed) {
  out.acceptance_rate = proposed > 0 ? static_cast<double>(accepted) / static_cast<double>(proposed) : 0.0;
  if (out.acceptance_rate < kMinAcceptance) {
    throw ChainError("acceptance rate " + std::to_string(out.acceptance_rate) + " below 1%");
  }
  double m = 0.0;
  for (double x : out.samples) m += x;
  m /= static_cast<double>(out.samples.size());
  out.mean = m;
  out.sd = summary_sd(out.samples, m);
  out.map = histogram_mode(out.samples);
  out.mcse = batch_means_se(out.samples);
}

void validate_chain(const ChainConfig& c) {
  if (c.iterations <= 0 || c.burn_in < 0 || c.iterations <= c.burn_in) {
    throw DomainError("chain needs iterations > burn_in >= 0");
  }
  if (c.thinning < 1) throw DomainError("thinning must be >= 1");
  if (c.proposal_scale < 0.0) throw DomainError("proposal scale must be non-negative");
}

}  // namespace

Readings readings_from_matrix(const born::MultistaticMatrix& m, double delta) {
  Readings r;
  r.delta = delta;
  const std::size_t n = m.sensors.size();
  if (m.data.rows() != n || m.data.cols() != n) throw DomainError("matrix does not match the sensor array");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.items.push_back({m.sensors.points[i], m.sensors.points[j], m.data(i, j)});
  return r;
}

double injected_noise_sd(const born::MultistaticMatrix& clean, const born::MultistaticMatrix& noisy) {
  if (clean.data.rows() != noisy.data.rows() || clean.data.cols() != noisy.data.cols()) {
    throw DomainError("matrix shapes differ");
  }
  const auto a = clean.data.data();
  const auto b = noisy.data.data();
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(b[i] - a[i]);
  return std::sqrt(s / (2.0 * static_cast<double>(a.size())));
}

double diameter(const geometry::Shape& s) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, geometry::Disk>) {
          return 2.0 * v.radius;
        } else if constexpr (std::is_same_v<T, geometry::Ellipse>) {
          return 2.0 * std::max(v.a, v.b);
        } else {
          return distance(v.corner_min, v.corner_max);
        }
      },
      s);
}

BayesModel make_model(const geometry::Shape& support, int rule_order, double k, ChainConfig chain) {
  BayesModel m;
  m.rhat = geometry::gauss_quadrature(support, rule_order);
  m.support = {support};
  m.k = k;
  m.h = diameter(support);
  m.chain = chain;
  validate_model(m);
  return m;
}

void validate_model(const BayesModel& m) {
  if (!(m.h > 0.0)) throw DomainError("spread h must be positive");
  if (!(m.k > 0.0)) throw DomainError("wavenumber must be positive");
  if (!(m.prior_sd > 0.0)) throw DomainError("prior sd must be positive");
  if (m.rhat.size() == 0) throw DomainError("empty quadrature rule");
  validate_chain(m.chain);
}

int select_rule_order(const geometry::Shape& support, double k, const geometry::SensorArray& sensors,
                      double noise_sd, double ratio) {
  if (!(noise_sd > 0.0) || !(ratio > 0.0)) throw DomainError("rule selection needs positive noise level and ratio");
  const BayesModel ref = make_model(support, kReferenceRuleOrder, k);
  const std::vector<double> one_ref(ref.rhat.size(), 1.0);
  std::vector<cplx> target;
  for (const Point2& x : sensors.points)
    for (const Point2& y : sensors.points) target.push_back(predicted_mean(ref, one_ref, x, y));
  for (int order = 2; order <= 16; ++order) {
    const BayesModel m = make_model(support, order, k);
    const std::vector<double> one(m.rhat.size(), 1.0);
    double err = 0.0;
    std::size_t i = 0;
    for (const Point2& x : sensors.points)
      for (const Point2& y : sensors.points) err = std::max(err, std::abs(predicted_mean(m, one, x, y) - target[i++]));
    if (err <= ratio * noise_sd) return order;
  }
  return 16;
}

cplx predicted_mean(const BayesModel& model, std::span<const double> eta, Point2 x, Point2 y) {
  if (eta.size() != model.rhat.size()) throw DomainError("eta length does not match the quadrature rule");
  const std::vector<cplx> row = design_row(model, x, y);
  cplx s = 0.0;
  for (std::size_t p = 0; p < row.size(); ++p) s += row[p] * eta[p];
  return s;
}

double log_posterior(const BayesModel& model, const Readings& readings, double gamma, std::span<const double> eta) {
  check_readings(readings);
  double like = 0.0;
  for (const Reading& r : readings.items) like += std::norm(r.u - predicted_mean(model, eta, r.x, r.y));
  double spread = 0.0;
  for (double e : eta) spread += (e - gamma) * (e - gamma);
  return -like / (2.0 * readings.delta * readings.delta) - spread / (2.0 * model.h * model.h) -
         gamma * gamma / (2.0 * model.prior_sd * model.prior_sd);
}

Posterior::Posterior(const BayesModel& model, const Readings& readings) {
  validate_model(model);
  check_readings(readings);
  const std::size_t p = model.rhat.size();
  gram_.assign(p * p, 0.0);
  b_.assign(p, 0.0);
  c_ = 0.0;
  for (const Reading& r : readings.items) {
    const std::vector<cplx> row = design_row(model, r.x, r.y);
    for (std::size_t a = 0; a < p; ++a) {
      const cplx ca = std::conj(row[a]);
      b_[a] += (ca * r.u).real();
      for (std::size_t q = a; q < p; ++q) gram_[a * p + q] += (ca * row[q]).real();
    }
    c_ += std::norm(r.u);
  }
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t q = 0; q < a; ++q) gram_[a * p + q] = gram_[q * p + a];
  inv_delta2_ = 1.0 / (readings.delta * readings.delta);
  inv_h2_ = 1.0 / (model.h * model.h);
  inv_prior2_ = 1.0 / (model.prior_sd * model.prior_sd);
}

double Posterior::log_density(double gamma, std::span<const double> eta) const {
  const std::size_t p = b_.size();
  if (eta.size() != p) throw DomainError("eta length does not match the quadrature rule");
  double quad = 0.0;
  double lin = 0.0;
  double spread = 0.0;
  for (std::size_t a = 0; a < p; ++a) {
    double ga = 0.0;
    for (std::size_t q = 0; q < p; ++q) ga += gram_[a * p + q] * eta[q];
    quad += eta[a] * ga;
    lin += b_[a] * eta[a];
    spread += (eta[a] - gamma) * (eta[a] - gamma);
  }
  const double resid = std::max(quad - 2.0 * lin + c_, 0.0);
  return -0.5 * inv_delta2_ * resid - 0.5 * inv_h2_ * spread - 0.5 * inv_prior2_ * gamma * gamma;
}

Posterior::Gaussian Posterior::exact() const {
  const auto p = static_cast<Eigen::Index>(b_.size());
  const Eigen::Index d = p + 1;
  Eigen::MatrixXd prec = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd lin = Eigen::VectorXd::Zero(d);
  prec(0, 0) = static_cast<double>(p) * inv_h2_ + inv_prior2_;
  for (Eigen::Index a = 0; a < p; ++a) {
    prec(0, a + 1) = prec(a + 1, 0) = -inv_h2_;
    for (Eigen::Index q = 0; q < p; ++q) prec(a + 1, q + 1) = inv_delta2_ * gram_[static_cast<std::size_t>(a * p + q)];
    prec(a + 1, a + 1) += inv_h2_;
    lin(a + 1) = inv_delta2_ * b_[static_cast<std::size_t>(a)];
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(prec);
  if (llt.info() != Eigen::Success) throw DomainError("posterior precision is not positive definite");
  const Eigen::VectorXd mean = llt.solve(lin);
  const Eigen::MatrixXd cov = llt.solve(Eigen::MatrixXd::Identity(d, d));
  Gaussian g;
  g.dim = static_cast<std::size_t>(d);
  g.mean.assign(mean.data(), mean.data() + d);
  g.cov.resize(g.dim * g.dim);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g.cov[static_cast<std::size_t>(i * d + j)] = 0.5 * (cov(i, j) + cov(j, i));
  return g;
}

double Posterior::Gaussian::gamma_sd() const { return std::sqrt(cov.at(0)); }

double Posterior::constant_fit() const {
  double num = 0.0;
  double den = 0.0;
  for (double v : b_) num += v;
  for (double v : gram_) den += v;
  if (!(den > 0.0)) throw DomainError("readings carry no information about the contrast");
  return num / den;
}

PosteriorSummary run_mh(const BayesModel& model, const Readings& readings) {
  const Posterior post(model, readings);
  const ChainConfig& cfg = model.chain;
  const std::size_t p = post.nodes();
  const std::size_t d = p + 1;

  // Proposal covariance: the exact Gaussian posterior covariance, scaled.
  const Posterior::Gaussian g = post.exact();
  Eigen::MatrixXd cov(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = g.cov[i * d + j];
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) throw DomainError("posterior covariance is not positive definite");
  const Eigen::MatrixXd chol = llt.matrixL();
  const double scale = cfg.proposal_scale > 0.0 ? cfg.proposal_scale : 2.38 / std::sqrt(static_cast<double>(d));

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  std::vector<double> x(d, post.constant_fit());
  double lp = post.log_density(x[0], std::span<const double>(x).subspan(1));
  std::vector<double> z(d);
  std::vector<double> y(d);

  PosteriorSummary out;
  long accepted = 0;
  for (int it = 0; it < cfg.iterations; ++it) {
    for (double& v : z) v = normal(rng);
    for (std::size_t i = 0; i < d; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j <= i; ++j) s += chol(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * z[j];
      y[i] = x[i] + scale * s;
    }
    const double lq = post.log_density(y[0], std::span<const double>(y).subspan(1));
    if (std::log(unif(rng)) < lq - lp) {
      x.swap(y);
      lp = lq;
      ++accepted;
    }
    if (it >= cfg.burn_in && (it - cfg.burn_in) % cfg.thinning == 0) {
      out.samples.push_back(x[0]);
      out.log_post.push_back(lp);
      out.iteration.push_back(it);
    }
  }
  finish_summary(out, accepted, cfg.iterations);
  return out;
}

ConjugateResult conjugate_reduction(const BayesModel& model, const Readings& readings) {
  validate_model(model);
  check_readings(readings);
  double ss = 0.0;
  double su = 0.0;
  for (const Reading& r : readings.items) {
    const std::vector<cplx> row = design_row(model, r.x, r.y);
    cplx s = 0.0;
    for (const cplx& v : row) s += v;
    ss += std::norm(s);
    su += (std::conj(s) * r.u).real();
  }
  const double d2 = readings.delta * readings.delta;
  const double prec = ss / d2 + 1.0 / (model.prior_sd * model.prior_sd);
  return {su / d2 / prec, 1.0 / std::sqrt(prec)};
}

PosteriorSummary run_mh_reduced(const BayesModel& model, const Readings& readings) {
  validate_model(model);
  check_readings(readings);
  const ChainConfig& cfg = model.chain;
  double ss = 0.0;
  double su = 0.0;
  double uu = 0.0;
  for (const Reading& r : readings.items) {
    const std::vector<cplx> row = design_row(model, r.x, r.y);
    cplx s = 0.0;
    for (const cplx& v : row) s += v;
    ss += std::norm(s);
    su += (std::conj(s) * r.u).real();
    uu += std::norm(r.u);
  }
  const double d2 = readings.delta * readings.delta;
  const double p2 = model.prior_sd * model.prior_sd;
  auto logp = [&](double gm) {
    return -std::max(gm * gm * ss - 2.0 * gm * su + uu, 0.0) / (2.0 * d2) - gm * gm / (2.0 * p2);
  };
  // Step from the curvature of the log density.
  const double curv_sd = 1.0 / std::sqrt(ss / d2 + 1.0 / p2);
  const double step = (cfg.proposal_scale > 0.0 ? cfg.proposal_scale : 2.38) * curv_sd;

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  // Least-squares start, as for the joint chain.
  double x = ss > 0.0 ? su / ss : 0.0;
  double lp = logp(x);
  PosteriorSummary out;
  long accepted = 0;
  for (int it = 0; it < cfg.iterations; ++it) {
    const double y = x + step * normal(rng);
    const double lq = logp(y);
    if (std::log(unif(rng)) < lq - lp) {
      x = y;
      lp = lq;
      ++accepted;
    }
    if (it >= cfg.burn_in && (it - cfg.burn_in) % cfg.thinning == 0) {
      out.samples.push_back(x);
      out.log_post.push_back(lp);
      out.iteration.push_back(it);
    }
  }
  finish_summary(out, accepted, cfg.iterations);
  return out;
}

double histogram_mode(std::span<const double> samples, int bins) {
  if (samples.empty()) throw DomainError("histogram of an empty sample");
  if (bins < 1) throw DomainError("histogram needs at least one bin");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (hi == lo) return lo;
  const double width = (hi - lo) / bins;
  std::vector<long> count(static_cast<std::size_t>(bins), 0);
  for (double s : samples) {
    auto b = static_cast<long>((s - lo) / width);
    b = std::clamp(b, 0L, static_cast<long>(bins) - 1);
    ++count[static_cast<std::size_t>(b)];
  }
  const auto best = std::max_element(count.begin(), count.end()) - count.begin();
  return lo + (static_cast<double>(best) + 0.5) * width;
}

double batch_means_se(std::span<const double> samples) {
  const std::size_t n = samples.size();
  const auto nb = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
  if (nb < 2) return 0.0;
  const std::size_t len = n / nb;
  std::vector<double> means(nb, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t i = 0; i < len; ++i) means[b] += samples[b * len + i];
    means[b] /= static_cast<double>(len);
  }
  double m = 0.0;
  for (double v : means) m += v;
  m /= static_cast<double>(nb);
  return summary_sd(means, m) / std::sqrt(static_cast<double>(nb));
}

}  // namespace nf::bayes
