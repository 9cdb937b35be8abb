#include "nearfield/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nf::io {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw IoError("malformed number '" + s + "'");
  return v;
}

std::vector<std::string> data_lines(const std::string& text, const std::string& header) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != header) throw IoError("expected header '" + header + "'");
  std::vector<std::string> out;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string field_csv(const IndicatorField& f) {
  if (f.values.size() != f.grid.points.size()) throw DomainError("field values do not match the grid");
  std::string out = "x,y,value\n";
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    out += format_double(f.grid.points[i].x);
    out += ',';
    out += format_double(f.grid.points[i].y);
    out += ',';
    out += format_double(f.values[i]);
    out += '\n';
  }
  return out;
}

std::vector<FieldRow> parse_field_csv(const std::string& text) {
  std::vector<FieldRow> rows;
  for (const std::string& line : data_lines(text, "x,y,value")) {
    const auto parts = split(line, ',');
    if (parts.size() != 3) throw IoError("field row needs 3 columns: '" + line + "'");
    rows.push_back({parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2])});
  }
  return rows;
}

std::vector<int> pgm_levels(std::span<const double> values) {
  if (values.empty()) return {};
  for (double v : values)
    if (!std::isfinite(v)) throw DomainError("field contains a non-finite value");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<int> out(values.size(), 128);
  if (hi == lo) return out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = static_cast<int>(std::lround((values[i] - lo) / (hi - lo) * 255.0));
  }
  return out;
}

std::string field_pgm(const IndicatorField& f) {
  if (f.values.size() != static_cast<std::size_t>(f.grid.nx) * static_cast<std::size_t>(f.grid.ny)) {
    throw DomainError("field values do not match the grid");
  }
  const std::vector<int> lv = pgm_levels(f.values);
  std::string out = "P2\n" + std::to_string(f.grid.nx) + " " + std::to_string(f.grid.ny) + "\n255\n";
  for (int iy = 0; iy < f.grid.ny; ++iy) {
    for (int ix = 0; ix < f.grid.nx; ++ix) {
      if (ix) out += ' ';
      out += std::to_string(lv[static_cast<std::size_t>(iy) * f.grid.nx + ix]);
    }
    out += '\n';
  }
  return out;
}

std::string validate_pgm(const std::string& text) {
  std::size_t pos = 0;
  auto skip = [&](bool allow_comments) {
    while (pos < text.size()) {
      const char c = text[pos];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos;
      } else if (allow_comments && c == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  };
  auto number = [&](long& v) {
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start || pos - start > 9) return false;
    v = std::stol(text.substr(start, pos - start));
    return true;
  };
  if (text.compare(0, 2, "P2") != 0) return "missing P2 magic";
  pos = 2;
  long header[3];
  const char* names[3] = {"width", "height", "maxval"};
  for (int i = 0; i < 3; ++i) {
    const std::size_t before = pos;
    skip(true);
    if (pos == before) return std::string("no whitespace before ") + names[i];
    if (!number(header[i])) return std::string("bad ") + names[i];
  }
  if (header[0] <= 0 || header[1] <= 0) return "non-positive dimensions";
  if (header[2] <= 0 || header[2] > 65535) return "maxval out of range";
  const long expected = header[0] * header[1];
  long count = 0;
  while (true) {
    const std::size_t before = pos;
    skip(false);
    if (pos >= text.size()) break;
    if (pos == before) return "missing separator between pixels";
    long v = 0;
    if (!number(v)) return "non-numeric pixel token";
    if (v > header[2]) return "pixel above maxval";
    ++count;
  }
  if (count != expected) return "expected " + std::to_string(expected) + " pixels, found " + std::to_string(count);
  return {};
}

std::string matrix_csv(const linalg::ComplexMatrix& m) {
  std::string out = "i,j,re,im\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out += std::to_string(i) + ',' + std::to_string(j) + ',' + format_double(m(i, j).real()) + ',' +
             format_double(m(i, j).imag()) + '\n';
    }
  }
  return out;
}

linalg::ComplexMatrix parse_matrix_csv(const std::string& text) {
  struct Entry {
    std::size_t i, j;
    cplx v;
  };
  std::vector<Entry> entries;
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const std::string& line : data_lines(text, "i,j,re,im")) {
    const auto parts = split(line, ',');
    if (parts.size() != 4) throw IoError("matrix row needs 4 columns: '" + line + "'");
    const auto i = static_cast<std::size_t>(std::stoul(parts[0]));
    const auto j = static_cast<std::size_t>(std::stoul(parts[1]));
    entries.push_back({i, j, {parse_double(parts[2]), parse_double(parts[3])}});
    rows = std::max(rows, i + 1);
    cols = std::max(cols, j + 1);
  }
  if (entries.size() != rows * cols) throw IoError("matrix CSV is not a complete rectangular listing");
  linalg::ComplexMatrix m(rows, cols);
  for (const Entry& e : entries) m(e.i, e.j) = e.v;
  return m;
}

std::string chain_csv(const bayes::PosteriorSummary& s) {
  std::string out = "iteration,gamma,log_post\n";
  for (std::size_t i = 0; i < s.samples.size(); ++i) {
    out += std::to_string(s.iteration[i]) + ',' + format_double(s.samples[i]) + ',' + format_double(s.log_post[i]) +
           '\n';
  }
  return out;
}

}  // namespace nf::io
