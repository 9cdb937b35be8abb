#pragma once

// File formats:
//   field.csv     "x,y,value", 17 significant digits, y outer / x inner
//   field.pgm     ASCII P2, maxval 255, min -> 0, max -> 255, constant -> 128
//   matrix.csv    "i,j,re,im" (0-based), plus a JSON sidecar
//   chain.csv     "iteration,gamma,log_post"

#include <filesystem>
#include <string>

#include "nearfield/bayes_index.hpp"
#include "nearfield/field.hpp"
#include "nearfield/linalg.hpp"

namespace nf::io {

namespace fs = std::filesystem;

/// "%.17g"; round-trips every finite double.
std::string format_double(double v);

void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);

std::string field_csv(const IndicatorField& f);
/// Parses a field CSV back into (x, y, value) triples.
struct FieldRow {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};
std::vector<FieldRow> parse_field_csv(const std::string& text);

std::vector<int> pgm_levels(std::span<const double> values);
std::string field_pgm(const IndicatorField& f);

/// Checks the P2 grammar: magic, width, height, maxval, then exactly
/// width * height integers in [0, maxval]; '#' comments allowed between
/// tokens of the header. Returns an empty string when valid, else the reason.
std::string validate_pgm(const std::string& text);

std::string matrix_csv(const linalg::ComplexMatrix& m);
linalg::ComplexMatrix parse_matrix_csv(const std::string& text);

std::string chain_csv(const bayes::PosteriorSummary& s);

}  // namespace nf::io
