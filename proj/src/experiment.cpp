#include "nearfield/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>

#include "nearfield/io.hpp"
#include "nearfield/music.hpp"
#include "nearfield/specfun.hpp"

#ifndef NEARFIELD_GIT_DESCRIBE
#define NEARFIELD_GIT_DESCRIBE "unknown"
#endif

namespace nf::experiment {
namespace {

namespace fs = std::filesystem;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!ok.count(key)) fail(where, "unknown key '" + key + "'");
  }
}

double get_number(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where + "." + key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(where + "." + key, "must be finite");
  return d;
}

double number_or(const json& obj, const std::string& key, const std::string& where, double fallback) {
  return obj.contains(key) ? get_number(obj, key, where) : fallback;
}

long long get_int(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
  return v.get<long long>();
}

int int_or(const json& obj, const std::string& key, const std::string& where, int fallback, int lo, int hi) {
  if (!obj.contains(key)) return fallback;
  const long long v = get_int(obj, key, where);
  if (v < lo || v > hi) {
    fail(where + "." + key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

std::uint64_t get_seed(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    fail(where + "." + key, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_string()) fail(where + "." + key, "expected a string");
  return v.get<std::string>();
}

cplx get_complex(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  fail(where, "expected a number or [re, im]");
}

Point2 get_point(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    fail(where + "." + key, "expected [x, y]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

double positive(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) fail(where, "missing '" + key + "'");
  const double v = get_number(obj, key, where);
  if (!(v > 0.0)) fail(where + "." + key, "must be positive");
  return v;
}

geometry::Shape parse_shape(const json& obj, const std::string& where) {
  if (!obj.contains("shape")) fail(where, "missing 'shape'");
  const std::string kind = get_string(obj, "shape", where);
  if (kind == "disk") {
    return geometry::Disk{get_point(obj, "center", where), positive(obj, "radius", where)};
  }
  if (kind == "ellipse") {
    return geometry::Ellipse{get_point(obj, "center", where), positive(obj, "a", where), positive(obj, "b", where)};
  }
  if (kind == "rectangle") {
    const Point2 lo = get_point(obj, "min", where);
    const Point2 hi = get_point(obj, "max", where);
    if (!(lo.x < hi.x && lo.y < hi.y)) fail(where, "rectangle needs min < max in both coordinates");
    return geometry::Rectangle{lo, hi};
  }
  fail(where + ".shape", "unknown shape '" + kind + "' (disk, ellipse, rectangle)");
}

IndexPolynomial parse_index(const json& v, const std::string& where) {
  IndexPolynomial p;
  if (v.is_object()) {
    check_keys(v, where, {"polynomial"});
    const json& terms = v.at("polynomial");
    if (!terms.is_array() || terms.empty()) fail(where + ".polynomial", "expected a non-empty list of terms");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string w = where + ".polynomial[" + std::to_string(i) + "]";
      check_keys(terms[i], w, {"c", "px", "py"});
      if (!terms[i].contains("c")) fail(w, "missing 'c'");
      p.terms.push_back({get_complex(terms[i].at("c"), w + ".c"), int_or(terms[i], "px", w, 0, 0, 16),
                         int_or(terms[i], "py", w, 0, 0, 16)});
    }
  } else {
    p.terms.push_back({get_complex(v, where), 0, 0});
  }
  return p;
}

void parse_born_forward(const json& doc, ExperimentConfig& c) {
  if (doc.contains("sensors")) {
    const json& s = doc.at("sensors");
    check_keys(s, "sensors", {"count", "radius"});
    c.sensor_count = int_or(s, "count", "sensors", c.sensor_count, 2, 4096);
    if (s.contains("radius")) c.sensor_radius = positive(s, "radius", "sensors");
  }
  if (!doc.contains("scatterers")) fail("config", "missing 'scatterers'");
  const json& list = doc.at("scatterers");
  if (!list.is_array() || list.empty()) fail("scatterers", "expected a non-empty list");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string w = "scatterers[" + std::to_string(i) + "]";
    check_keys(list[i], w, {"shape", "center", "radius", "a", "b", "min", "max", "n"});
    if (!list[i].contains("n")) fail(w, "missing 'n'");
    ScattererConfig s{parse_shape(list[i], w), parse_index(list[i].at("n"), w + ".n")};
    c.scatterers.push_back(std::move(s));
  }
  c.rule_order = int_or(doc, "rule_order", "config", c.rule_order, 2, 64);
  for (std::size_t i = 0; i < c.scatterers.size(); ++i) {
    const auto& s = c.scatterers[i];
    try {
      geometry::validate_scatterer({s.shape, s.index, 1.0}, c.rule_order);
    } catch (const DomainError& e) {
      fail("scatterers[" + std::to_string(i) + "]", e.what());
    }
    for (const Point2& x : geometry::make_sensor_array(c.sensor_count, c.sensor_radius).points) {
      if (geometry::contains(s.shape, x)) fail("scatterers[" + std::to_string(i) + "]", "overlaps the sensor curve");
    }
  }
  if (doc.contains("noise")) {
    const json& n = doc.at("noise");
    check_keys(n, "noise", {"delta", "seed", "kind"});
    c.noise_delta = number_or(n, "delta", "noise", 0.0);
    if (c.noise_delta < 0.0) fail("noise.delta", "must be non-negative");
    if (n.contains("seed")) c.seed = get_seed(n, "seed", "noise");
    if (n.contains("kind")) {
      const std::string k = get_string(n, "kind", "noise");
      if (k == "complex") {
        c.noise_kind = born::NoiseKind::complex;
      } else if (k == "real") {
        c.noise_kind = born::NoiseKind::real;
      } else {
        fail("noise.kind", "expected 'complex' or 'real'");
      }
    }
  }
}

void parse_grid(const json& doc, ExperimentConfig& c, double sensor_radius) {
  if (!doc.contains("grid")) fail("config", "missing 'grid'");
  const json& g = doc.at("grid");
  check_keys(g, "grid", {"min", "max", "nx", "ny"});
  c.grid_bounds = {get_point(g, "min", "grid"), get_point(g, "max", "grid")};
  c.nx = int_or(g, "nx", "grid", c.nx, 2, 4001);
  c.ny = int_or(g, "ny", "grid", c.ny, 2, 4001);
  try {
    (void)geometry::make_grid(c.grid_bounds, c.nx, c.ny, sensor_radius);
  } catch (const DomainError& e) {
    fail("grid", e.what());
  }
}

void parse_disk(const json& doc, ExperimentConfig& c) {
  if (!doc.contains("disk")) fail("config", "missing 'disk'");
  const json& d = doc.at("disk");
  check_keys(d, "disk", {"a", "n", "truncation", "quad_points", "regime", "absorbing_sign"});
  if (!d.contains("a") || !d.contains("n")) fail("disk", "needs both 'a' and 'n'");
  c.medium = {get_complex(d.at("a"), "disk.a"), get_complex(d.at("n"), "disk.n"), c.k};
  c.truncation = int_or(d, "truncation", "disk", c.truncation, 0, specfun::kMaxOrder - 1);
  c.quad_points = int_or(d, "quad_points", "disk", c.quad_points, 2, 4096);
  if (c.quad_points < 2 * c.truncation + 2) {
    fail("disk", "truncation M = " + std::to_string(c.truncation) + " exceeds quad_points / 2 - 1 = " +
                     std::to_string(c.quad_points / 2 - 1));
  }
  if (d.contains("regime")) {
    const std::string r = get_string(d, "regime", "disk");
    if (r == "nonabsorbing") {
      c.regime = linalg::Regime::nonabsorbing;
    } else if (r == "absorbing") {
      c.regime = linalg::Regime::absorbing;
    } else {
      fail("disk.regime", "expected 'nonabsorbing' or 'absorbing'");
    }
  }
  if (d.contains("absorbing_sign")) {
    const long long s = get_int(d, "absorbing_sign", "disk");
    if (s != 1 && s != -1) fail("disk.absorbing_sign", "must be +1 or -1");
    c.absorbing_sign = static_cast<double>(s);
  }
  try {
    disk::validate_medium(c.medium, c.regime);
  } catch (const DomainError& e) {
    fail("disk", e.what());
  }
  if (doc.contains("filter")) {
    const json& f = doc.at("filter");
    check_keys(f, "filter", {"kind", "eps", "a", "at_rank"});
    const std::string kind = f.contains("kind") ? get_string(f, "kind", "filter") : "cutoff";
    if (kind == "tikhonov") {
      c.filter.kind = sampling::FilterKind::tikhonov;
    } else if (kind == "cutoff") {
      c.filter.kind = sampling::FilterKind::spectral_cutoff;
    } else if (kind == "landweber") {
      c.filter.kind = sampling::FilterKind::landweber;
    } else {
      fail("filter.kind", "expected 'tikhonov', 'cutoff' or 'landweber'");
    }
    c.filter.at_rank = f.contains("at_rank") ? f.at("at_rank").get<bool>() : kind == "cutoff" && !f.contains("eps");
    if (c.filter.at_rank && c.filter.kind != sampling::FilterKind::spectral_cutoff) {
      fail("filter.at_rank", "only applies to the cutoff filter");
    }
    if (f.contains("eps")) c.filter.eps = positive(f, "eps", "filter");
    if (c.filter.kind == sampling::FilterKind::landweber) c.filter.a = positive(f, "a", "filter");
  }
}

void parse_music(const json& doc, ExperimentConfig& c) {
  if (!doc.contains("music")) return;
  const json& m = doc.at("music");
  check_keys(m, "music", {"rank_override", "rank_tol"});
  if (m.contains("rank_override")) c.rank_override = int_or(m, "rank_override", "music", 0, 0, c.sensor_count);
  c.rank_tol = number_or(m, "rank_tol", "music", c.rank_tol);
  if (!(c.rank_tol > 0.0 && c.rank_tol < 1.0)) fail("music.rank_tol", "must lie in (0, 1)");
}

void parse_bayes(const json& doc, ExperimentConfig& c) {
  if (!doc.contains("bayes")) fail("config", "missing 'bayes'");
  const json& b = doc.at("bayes");
  check_keys(b, "bayes",
             {"supports", "rule_order", "h", "prior_sd", "iterations", "burn_in", "thinning", "chain_seed",
              "proposal_scale"});
  if (!b.contains("supports") || !b.at("supports").is_array() || b.at("supports").empty()) {
    fail("bayes.supports", "expected a non-empty list");
  }
  std::set<std::string> labels;
  const auto sensors = geometry::make_sensor_array(c.sensor_count, c.sensor_radius);
  for (std::size_t i = 0; i < b.at("supports").size(); ++i) {
    const json& s = b.at("supports")[i];
    const std::string w = "bayes.supports[" + std::to_string(i) + "]";
    check_keys(s, w, {"label", "shape", "center", "radius", "a", "b", "min", "max"});
    const std::string label = s.contains("label") ? get_string(s, "label", w) : std::to_string(i);
    if (label.empty() || label.find_first_not_of("abcdefghijklmnopqrstuvwxyz0123456789_-") != std::string::npos) {
      fail(w + ".label", "use lowercase letters, digits, '_' or '-'");
    }
    if (!labels.insert(label).second) fail(w + ".label", "duplicate label '" + label + "'");
    BayesSupport sup{label, parse_shape(s, w)};
    for (const Point2& x : sensors.points) {
      if (geometry::contains(sup.shape, x)) fail(w, "support overlaps the sensor curve");
    }
    c.bayes.supports.push_back(std::move(sup));
  }
  if (b.contains("rule_order")) c.bayes.rule_order = int_or(b, "rule_order", "bayes", 4, 2, 64);
  if (b.contains("h")) c.bayes.h = positive(b, "h", "bayes");
  if (b.contains("prior_sd")) c.bayes.prior_sd = positive(b, "prior_sd", "bayes");
  auto& ch = c.bayes.chain;
  ch.iterations = int_or(b, "iterations", "bayes", ch.iterations, 1, 100000000);
  ch.burn_in = int_or(b, "burn_in", "bayes", ch.burn_in, 0, 100000000);
  ch.thinning = int_or(b, "thinning", "bayes", ch.thinning, 1, 1000000);
  if (ch.burn_in >= ch.iterations) fail("bayes", "iterations must exceed burn_in");
  if (b.contains("proposal_scale")) ch.proposal_scale = positive(b, "proposal_scale", "bayes");
  if (b.contains("chain_seed")) c.bayes.chain_seed = get_seed(b, "chain_seed", "bayes");
  if (c.noise_delta <= 0.0) fail("noise.delta", "bayes mode needs positive noise (it sets the likelihood scale)");
}

std::vector<geometry::ScattererSpec> scatterer_specs(const ExperimentConfig& c) {
  std::vector<geometry::ScattererSpec> out;
  for (const auto& s : c.scatterers) out.push_back({s.shape, s.index, 1.0});
  return out;
}

json shape_json(const geometry::Shape& s) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, geometry::Disk>) {
          return {{"shape", "disk"}, {"center", {v.center.x, v.center.y}}, {"radius", v.radius}};
        } else if constexpr (std::is_same_v<T, geometry::Ellipse>) {
          return {{"shape", "ellipse"}, {"center", {v.center.x, v.center.y}}, {"a", v.a}, {"b", v.b}};
        } else {
          return {{"shape", "rectangle"},
                  {"min", {v.corner_min.x, v.corner_min.y}},
                  {"max", {v.corner_max.x, v.corner_max.y}}};
        }
      },
      s);
}

void emit_field(IndicatorField f, const std::string& stem, const std::string& hash, const fs::path& dir,
                RunResult& res) {
  f.config_hash = hash;
  io::write_text(dir / (stem + ".csv"), io::field_csv(f));
  io::write_text(dir / (stem + ".pgm"), io::field_pgm(f));
  res.files.push_back(stem + ".csv");
  res.files.push_back(stem + ".pgm");
}

void emit_matrix(const linalg::ComplexMatrix& m, const json& meta, const std::string& stem, const fs::path& dir,
                 RunResult& res) {
  io::write_text(dir / (stem + ".csv"), io::matrix_csv(m));
  json side = meta;
  side["rows"] = m.rows();
  side["cols"] = m.cols();
  side["format"] = "i,j,re,im (0-based)";
  io::write_text(dir / (stem + ".json"), side.dump(2) + "\n");
  res.files.push_back(stem + ".csv");
  res.files.push_back(stem + ".json");
}

json run_born_music(const ExperimentConfig& c, const std::string& hash, const fs::path& dir, RunResult& res) {
  const auto sensors = geometry::make_sensor_array(c.sensor_count, c.sensor_radius);
  const auto specs = scatterer_specs(c);
  born::MultistaticMatrix m = born::assemble_multistatic(specs, sensors, c.k, c.rule_order);
  if (c.noise_delta > 0.0) m = born::add_noise(m, c.noise_delta, c.seed, c.noise_kind);
  music::MusicOptions opts;
  opts.rank_override = c.rank_override;
  opts.rank_rel_tol = c.rank_tol;
  const music::MusicModel model = music::build_music(m, opts);
  const auto grid = geometry::make_grid(c.grid_bounds, c.nx, c.ny, c.sensor_radius);
  emit_field(music::music_field(model, grid), "field", hash, dir, res);
  json eig = json::array();
  for (double v : model.eig.values) eig.push_back(v);
  emit_matrix(m.data, {{"k", c.k}, {"noise_delta", c.noise_delta}, {"noise_seed", c.seed}}, "matrix", dir, res);
  return {{"rank", model.rank}, {"nn_star_eigenvalues", eig}};
}

json run_disk(const ExperimentConfig& c, const std::string& hash, const fs::path& dir, RunResult& res) {
  const linalg::ComplexMatrix n = disk::assemble_nearfield_matrix(c.medium, c.truncation, c.quad_points);
  const linalg::NsharpResult ns = linalg::nsharp(n, c.regime, c.absorbing_sign);
  const sampling::PicardData data = sampling::make_picard_data(ns.eig, 2.0 * kPi / c.quad_points);
  const int rank = linalg::numerical_rank(ns.eig);
  const sampling::FilterSpec filter = c.filter.at_rank ? sampling::cutoff_at_rank(data, rank)
                                                       : sampling::FilterSpec{c.filter.kind, c.filter.eps, c.filter.a};
  const sampling::SweepSetup setup{geometry::make_sensor_array(c.quad_points, disk::kCurveRadius), c.k};
  const auto grid = geometry::make_grid(c.grid_bounds, c.nx, c.ny, disk::kCurveRadius);
  IndicatorField w = sampling::fm_field(data, setup, grid);
  IndicatorField p = sampling::mlsm_field(data, setup, grid, filter);
  const bool fm = c.mode == Mode::disk_fm;
  emit_field(fm ? std::move(w) : std::move(p), "field", hash, dir, res);
  emit_field(fm ? std::move(p) : std::move(w), "companion", hash, dir, res);
  emit_matrix(n, {{"k", c.k}, {"truncation", c.truncation}, {"quad_points", c.quad_points}}, "matrix", dir, res);
  return {{"nsharp_lambda_min", ns.lambda_min},
          {"nsharp_lambda_max", ns.lambda_max},
          {"numerical_rank", rank},
          {"retained", data.retained},
          {"filter_eps", filter.eps},
          {"companion_mode", fm ? "mlsm" : "fm"}};
}

json run_bayes(const ExperimentConfig& c, const fs::path& dir, RunResult& res) {
  const auto sensors = geometry::make_sensor_array(c.sensor_count, c.sensor_radius);
  const auto specs = scatterer_specs(c);
  const born::MultistaticMatrix clean = born::assemble_multistatic(specs, sensors, c.k, c.rule_order);
  const born::MultistaticMatrix noisy = born::add_noise(clean, c.noise_delta, c.seed, c.noise_kind);
  const double delta_abs = bayes::injected_noise_sd(clean, noisy);
  const bayes::Readings readings = bayes::readings_from_matrix(noisy, delta_abs);
  emit_matrix(noisy.data, {{"k", c.k}, {"noise_delta", c.noise_delta}, {"noise_seed", c.seed}}, "matrix", dir, res);

  json runs = json::object();
  for (const BayesSupport& s : c.bayes.supports) {
    const int order = c.bayes.rule_order ? *c.bayes.rule_order
                                         : bayes::select_rule_order(s.shape, c.k, sensors, delta_abs);
    bayes::ChainConfig chain = c.bayes.chain;
    chain.seed = c.bayes.chain_seed ? *c.bayes.chain_seed : c.seed + 1;
    bayes::BayesModel model = bayes::make_model(s.shape, order, c.k, chain);
    if (c.bayes.h) model.h = *c.bayes.h;
    model.prior_sd = c.bayes.prior_sd;
    const bayes::PosteriorSummary sum = bayes::run_mh(model, readings);
    const bayes::Posterior::Gaussian exact = bayes::Posterior(model, readings).exact();
    json summary = {{"support", shape_json(s.shape)},
                    {"mean", sum.mean},
                    {"sd", sum.sd},
                    {"map", sum.map},
                    {"acceptance_rate", sum.acceptance_rate},
                    {"mcse", sum.mcse},
                    {"samples", sum.samples.size()},
                    {"rule_order", order},
                    {"nodes", model.rhat.size()},
                    {"h", model.h},
                    {"likelihood_sd", delta_abs},
                    {"chain_seed", chain.seed},
                    {"exact_gaussian_mean", exact.mean[0]},
                    {"exact_gaussian_sd", exact.gamma_sd()}};
    io::write_text(dir / ("chain_" + s.label + ".csv"), io::chain_csv(sum));
    io::write_text(dir / ("summary_" + s.label + ".json"), summary.dump(2) + "\n");
    res.files.push_back("chain_" + s.label + ".csv");
    res.files.push_back("summary_" + s.label + ".json");
    runs[s.label] = summary;
  }
  return {{"likelihood_sd", delta_abs}, {"runs", runs}};
}

json error_doc(int code, const std::string& kind, const std::string& message) {
  return {{"status", "error"}, {"exit_code", code}, {"error", {{"kind", kind}, {"message", message}}}};
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  if (dynamic_cast<const IoError*>(&e)) return "IoError";
  if (dynamic_cast<const ResonanceError*>(&e)) return "ResonanceError";
  if (dynamic_cast<const NotHermitianError*>(&e)) return "NotHermitianError";
  if (dynamic_cast<const ConvergenceError*>(&e)) return "ConvergenceError";
  if (dynamic_cast<const DegenerateSpectrumError*>(&e)) return "DegenerateSpectrumError";
  if (dynamic_cast<const ChainError*>(&e)) return "ChainError";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  return "Error";
}

}  // namespace

cplx IndexPolynomial::operator()(Point2 p) const {
  cplx s = 0.0;
  for (const Term& t : terms) s += t.c * std::pow(p.x, t.px) * std::pow(p.y, t.py);
  return s;
}

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::born_music:
      return "born-music";
    case Mode::disk_fm:
      return "disk-fm";
    case Mode::disk_mlsm:
      return "disk-mlsm";
    case Mode::bayes:
      return "bayes";
  }
  return "unknown";
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) fail("config", "expected a JSON object");
  if (!doc.contains("mode")) fail("config", "missing 'mode'");
  ExperimentConfig c;
  const std::string mode = get_string(doc, "mode", "config");
  if (mode == "born-music") {
    c.mode = Mode::born_music;
    check_keys(doc, "config", {"mode", "k", "sensors", "scatterers", "rule_order", "grid", "music", "noise", "output"});
  } else if (mode == "disk-fm" || mode == "disk-mlsm") {
    c.mode = mode == "disk-fm" ? Mode::disk_fm : Mode::disk_mlsm;
    check_keys(doc, "config", {"mode", "k", "disk", "grid", "filter", "output"});
  } else if (mode == "bayes") {
    c.mode = Mode::bayes;
    check_keys(doc, "config", {"mode", "k", "sensors", "scatterers", "rule_order", "noise", "bayes", "output"});
  } else {
    fail("config.mode", "unknown mode '" + mode + "' (born-music, disk-fm, disk-mlsm, bayes)");
  }
  if (doc.contains("k")) c.k = positive(doc, "k", "config");
  if (doc.contains("output")) c.output = get_string(doc, "output", "config");

  switch (c.mode) {
    case Mode::born_music:
      parse_born_forward(doc, c);
      parse_grid(doc, c, c.sensor_radius);
      parse_music(doc, c);
      break;
    case Mode::disk_fm:
    case Mode::disk_mlsm:
      parse_disk(doc, c);
      parse_grid(doc, c, disk::kCurveRadius);
      break;
    case Mode::bayes:
      parse_born_forward(doc, c);
      parse_bayes(doc, c);
      break;
  }
  c.echo = doc;
  return c;
}

std::vector<std::string> preset_names() {
  return {"figure1", "figure2", "figure3", "figure45", "figure6", "figure7"};
}

json preset(const std::string& name) {
  const json circle = {{"count", 32}, {"radius", 1.0}};
  const json grid_music = {{"min", {-0.9, -0.9}}, {"max", {0.9, 0.9}}, {"nx", 101}, {"ny", 101}};
  const json grid_disk = {{"min", {-1.8, -1.8}}, {"max", {1.8, 1.8}}, {"nx", 101}, {"ny", 101}};
  const json ellipse = {{"shape", "ellipse"}, {"center", {0.5, -0.5}}, {"a", 0.2}, {"b", 0.1}};
  const json square = {{"shape", "rectangle"}, {"min", {-0.2, -0.2}}, {"max", {0.2, 0.2}}};
  const json square_index = {{"polynomial", {{{"c", 2.0}}, {{"c", 1.0}, {"px", 2}}}}};

  if (name == "figure1") {
    json disk = {{"shape", "disk"}, {"center", {-0.5, 0.5}}, {"radius", 0.2}, {"n", 5.0}};
    json ell = ellipse;
    ell["n"] = 5.0;
    return {{"mode", "born-music"}, {"k", 1.0}, {"sensors", circle}, {"scatterers", {disk, ell}},
            {"grid", grid_music},   {"noise", {{"delta", 0.0}, {"seed", 1}}}};
  }
  if (name == "figure2") {
    json ell = ellipse;
    ell["n"] = {2.0, 1.0};
    return {{"mode", "born-music"}, {"k", 1.0}, {"sensors", circle}, {"scatterers", {ell}},
            {"grid", grid_music},   {"noise", {{"delta", 0.0}, {"seed", 1}}}};
  }
  if (name == "figure3") {
    json sq = square;
    sq["n"] = square_index;
    return {{"mode", "born-music"}, {"k", 1.0}, {"sensors", circle}, {"scatterers", {sq}},
            {"grid", grid_music},   {"noise", {{"delta", 0.0}, {"seed", 1}}}};
  }
  if (name == "figure45") {
    json sq = square;
    sq["n"] = square_index;
    json exact = square;
    exact["label"] = "exact";
    json inflated = {{"label", "inflated"}, {"shape", "rectangle"}, {"min", {-0.265, -0.265}}, {"max", {0.265, 0.265}}};
    return {{"mode", "bayes"},
            {"k", 1.0},
            {"sensors", circle},
            {"scatterers", {sq}},
            {"noise", {{"delta", 0.15}, {"seed", 1}}},
            {"bayes", {{"supports", {exact, inflated}}, {"iterations", 20000}, {"burn_in", 5000}}}};
  }
  if (name == "figure6") {
    return {{"mode", "disk-fm"},
            {"k", 1.0},
            {"disk", {{"a", 0.5}, {"n", 5.0}, {"truncation", 20}, {"quad_points", 64}, {"regime", "nonabsorbing"}}},
            {"grid", grid_disk},
            {"filter", {{"kind", "cutoff"}, {"at_rank", true}}}};
  }
  if (name == "figure7") {
    return {{"mode", "disk-fm"},
            {"k", 1.0},
            {"disk",
             {{"a", {3.0, -1.0}}, {"n", {0.25, 2.0}}, {"truncation", 20}, {"quad_points", 64}, {"regime", "absorbing"}}},
            {"grid", grid_disk},
            {"filter", {{"kind", "cutoff"}, {"at_rank", true}}}};
  }
  throw ConfigError("unknown preset '" + name + "'");
}

std::string config_hash(const json& doc) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : doc.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunResult execute(const ExperimentConfig& c, const fs::path& out_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
  RunResult res;
  res.out_dir = out_dir;
  const std::string hash = config_hash(c.echo);
  json diag;
  switch (c.mode) {
    case Mode::born_music:
      diag = run_born_music(c, hash, out_dir, res);
      break;
    case Mode::disk_fm:
    case Mode::disk_mlsm:
      diag = run_disk(c, hash, out_dir, res);
      break;
    case Mode::bayes:
      diag = run_bayes(c, out_dir, res);
      break;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json manifest = {{"mode", mode_name(c.mode)},
                   {"config", c.echo},
                   {"config_hash", hash},
                   {"git_describe", NEARFIELD_GIT_DESCRIBE},
                   {"wall_time_s", wall},
                   {"outputs", res.files},
                   {"diagnostics", diag}};
  io::write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
  res.files.push_back("manifest.json");
  return res;
}

RunResult run(const RunOptions& opts) {
  fs::path out_dir = opts.out_dir ? fs::path(*opts.out_dir) : fs::path();
  auto report = [&](int code, const std::string& kind, const std::string& msg) {
    RunResult r;
    r.exit_code = code;
    r.out_dir = out_dir;
    r.error = error_doc(code, kind, msg);
    std::cerr << r.error.dump() << "\n";
    if (!out_dir.empty()) {
      std::error_code ec;
      fs::create_directories(out_dir, ec);
      if (!ec) {
        try {
          io::write_text(out_dir / "error.json", r.error.dump(2) + "\n");
          r.files.push_back("error.json");
        } catch (const IoError&) {
        }
      }
    }
    return r;
  };
  try {
    if (!opts.config_path && !opts.preset) throw ConfigError("need --config and/or --preset");
    json doc = opts.preset ? preset(*opts.preset) : json::object();
    if (opts.config_path) {
      json user;
      try {
        user = json::parse(io::read_text(*opts.config_path));
      } catch (const json::exception& e) {
        throw ConfigError(*opts.config_path + ": invalid JSON: " + e.what());
      }
      if (!user.is_object()) throw ConfigError(*opts.config_path + ": expected a JSON object");
      doc.merge_patch(user);
    }
    const bool randomized = !(doc.contains("mode") && doc["mode"].is_string() &&
                              doc["mode"].get<std::string>().rfind("disk", 0) == 0);
    if (opts.seed && randomized) {
      if (!doc.contains("noise")) doc["noise"] = json::object();
      doc["noise"]["seed"] = *opts.seed;
    }
    if (out_dir.empty()) out_dir = doc.contains("output") && doc["output"].is_string()
                                       ? fs::path(doc["output"].get<std::string>())
                                       : fs::path("nearfield_out");
    const ExperimentConfig cfg = parse_config(doc);
    return execute(cfg, out_dir);
  } catch (const ConfigError& e) {
    return report(2, "ConfigError", e.what());
  } catch (const IoError& e) {
    return report(2, "IoError", e.what());
  } catch (const json::exception& e) {
    return report(2, "ConfigError", e.what());
  } catch (const Error& e) {
    return report(3, error_kind(e), e.what());
  } catch (const std::exception& e) {
    return report(3, "Error", e.what());
  }
}

}  // namespace nf::experiment
