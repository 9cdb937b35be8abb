#include <CLI11.hpp>
#include <iostream>

#include "nearfield/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Near-field inverse scattering experiments"};
  app.require_subcommand(1);

  nf::experiment::RunOptions opts;
  std::string config;
  std::string preset;
  std::string out;
  std::uint64_t seed = 0;
  CLI::App* run = app.add_subcommand("run", "Run an experiment from a JSON config and/or a preset");
  auto* config_opt = run->add_option("--config", config, "JSON config file (overrides preset keys)");
  auto* preset_opt = run->add_option("--preset", preset, "Built-in figure preset");
  auto* out_opt = run->add_option("--out", out, "Output directory");
  auto* seed_opt = run->add_option("--seed", seed, "Noise seed override");

  CLI::App* list = app.add_subcommand("presets", "List the built-in presets");
  CLI::App* show = app.add_subcommand("show-preset", "Print a preset config as JSON");
  std::string show_name;
  show->add_option("name", show_name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (list->parsed()) {
    for (const auto& n : nf::experiment::preset_names()) std::cout << n << "\n";
    return 0;
  }
  if (show->parsed()) {
    try {
      std::cout << nf::experiment::preset(show_name).dump(2) << "\n";
      return 0;
    } catch (const nf::ConfigError& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
  }
  if (*config_opt) opts.config_path = config;
  if (*preset_opt) opts.preset = preset;
  if (*out_opt) opts.out_dir = out;
  if (*seed_opt) opts.seed = seed;
  return nf::experiment::run(opts).exit_code;
}
