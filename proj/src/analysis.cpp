#include "nearfield/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nf::analysis {
namespace {

std::vector<double> ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

std::vector<Peak> local_maxima(const IndicatorField& f, int min_separation) {
  const int nx = f.grid.nx;
  const int ny = f.grid.ny;
  if (f.values.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
    throw DomainError("field values do not match the grid");
  }
  std::vector<Peak> cand;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const double v = f.at(ix, iy);
      bool top = true;
      for (int dy = -1; dy <= 1 && top; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int jx = ix + dx;
          const int jy = iy + dy;
          if ((dx == 0 && dy == 0) || jx < 0 || jy < 0 || jx >= nx || jy >= ny) continue;
          if (f.at(jx, jy) > v) {
            top = false;
            break;
          }
        }
      }
      if (top) cand.push_back({ix, iy, f.grid.at(ix, iy), v});
    }
  }
  std::stable_sort(cand.begin(), cand.end(), [](const Peak& a, const Peak& b) { return a.value > b.value; });
  std::vector<Peak> out;
  for (const Peak& p : cand) {
    const bool near = std::any_of(out.begin(), out.end(), [&](const Peak& q) {
      return std::max(std::abs(p.ix - q.ix), std::abs(p.iy - q.iy)) <= min_separation;
    });
    if (!near) out.push_back(p);
  }
  return out;
}

double jaccard(const std::vector<bool>& a, const std::vector<bool>& b) {
  if (a.size() != b.size()) throw DomainError("masks differ in size");
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    inter += a[i] && b[i];
    uni += a[i] || b[i];
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<bool> mask(const geometry::SamplingGrid& g, const std::function<bool(Point2)>& pred) {
  std::vector<bool> m(g.points.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = pred(g.points[i]);
  return m;
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) throw DomainError("spearman needs two equal-length samples");
  const std::vector<double> ra = ranks(a);
  const std::vector<double> rb = ranks(b);
  const double n = static_cast<double>(a.size());
  const double mean = (n + 1.0) / 2.0;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - mean) * (rb[i] - mean);
    saa += (ra[i] - mean) * (ra[i] - mean);
    sbb += (rb[i] - mean) * (rb[i] - mean);
  }
  if (saa == 0.0 || sbb == 0.0) throw DomainError("spearman of a constant sample");
  return sab / std::sqrt(saa * sbb);
}

double median_where(const IndicatorField& f, const std::function<bool(Point2)>& pred) {
  std::vector<double> v;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    if (pred(f.grid.points[i])) v.push_back(f.values[i]);
  if (v.empty()) throw DomainError("median over an empty region");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<long>(mid), v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + static_cast<long>(mid)));
  return m;
}

}  // namespace nf::analysis
