#pragma once

// Config-driven experiment runner behind the command-line tool.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "nearfield/bayes_index.hpp"
#include "nearfield/born_forward.hpp"
#include "nearfield/disk_forward.hpp"
#include "nearfield/sampling_methods.hpp"

namespace nf::experiment {

using json = nlohmann::json;

enum class Mode { born_music, disk_fm, disk_mlsm, bayes };

/// n(x) = sum_t c_t x1^px_t x2^py_t.
struct IndexPolynomial {
  struct Term {
    cplx c;
    int px = 0;
    int py = 0;
  };
  std::vector<Term> terms;

  cplx operator()(Point2 p) const;
};

struct ScattererConfig {
  geometry::Shape shape;
  IndexPolynomial index;
};

struct FilterConfig {
  sampling::FilterKind kind = sampling::FilterKind::spectral_cutoff;
  double eps = 1e-8;
  double a = 0.0;
  bool at_rank = true;  // cutoff placed at the numerical rank of N_sharp
};

struct BayesSupport {
  std::string label;
  geometry::Shape shape;
};

struct BayesConfig {
  std::vector<BayesSupport> supports;
  std::optional<int> rule_order;  // default: select_rule_order
  std::optional<double> h;        // default: diameter of the support
  double prior_sd = 1e5;
  bayes::ChainConfig chain;
  std::optional<std::uint64_t> chain_seed;  // default: noise seed + 1
};

struct ExperimentConfig {
  Mode mode = Mode::born_music;
  double k = 1.0;
  int sensor_count = 32;
  double sensor_radius = 1.0;
  std::vector<ScattererConfig> scatterers;
  int rule_order = born::kDefaultRuleOrder;

  disk::DiskMedium medium;
  int truncation = 20;
  int quad_points = 64;
  linalg::Regime regime = linalg::Regime::nonabsorbing;
  double absorbing_sign = linalg::kAbsorbingSign;

  geometry::Rect grid_bounds{{-1.0, -1.0}, {1.0, 1.0}};
  int nx = 101;
  int ny = 101;
  FilterConfig filter;
  std::optional<int> rank_override;
  double rank_tol = 1e-4;

  double noise_delta = 0.0;
  std::uint64_t seed = 1;
  born::NoiseKind noise_kind = born::NoiseKind::complex;

  BayesConfig bayes;
  std::string output = "nearfield_out";

  json echo;  // the validated input document
};

std::string mode_name(Mode m);

/// Validates a config document; unknown keys and out-of-range values raise
/// ConfigError.
ExperimentConfig parse_config(const json& doc);

std::vector<std::string> preset_names();
/// Built-in named config; ConfigError for unknown names.
json preset(const std::string& name);

/// 64-bit FNV-1a of the compact dump, as 16 hex digits.
std::string config_hash(const json& doc);

struct RunOptions {
  std::optional<std::string> config_path;
  std::optional<std::string> preset;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
};

struct RunResult {
  int exit_code = 0;
  std::filesystem::path out_dir;
  std::vector<std::string> files;
  json error;  // empty on success
};

/// Exit 0 on success, 2 on config / IO errors, 3 on numerical errors. On
/// failure an error document is printed to stderr and written to
/// <out>/error.json when possible.
RunResult run(const RunOptions& opts);

/// Executes an already validated config; throws on failure.
RunResult execute(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace nf::experiment
