#pragma once

// Post-processing of indicator fields: peak finding, set overlap and rank
// correlation.

#include <functional>
#include <span>

#include "nearfield/field.hpp"

namespace nf::analysis {

struct Peak {
  int ix = 0;
  int iy = 0;
  Point2 at;
  double value = 0.0;
};

/// Grid points whose value is >= all 8 neighbours, sorted by decreasing
/// value; a candidate within `min_separation` cells (Chebyshev) of a stronger
/// accepted peak is dropped, so plateaus yield a single peak.
std::vector<Peak> local_maxima(const IndicatorField& f, int min_separation = 2);

/// |A n B| / |A u B| over grid points; 1 when both sets are empty.
double jaccard(const std::vector<bool>& a, const std::vector<bool>& b);

/// Membership mask of grid points satisfying `pred`.
std::vector<bool> mask(const geometry::SamplingGrid& g, const std::function<bool(Point2)>& pred);

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> a, std::span<const double> b);

/// Median of the values whose grid point satisfies `pred`.
double median_where(const IndicatorField& f, const std::function<bool(Point2)>& pred);

}  // namespace nf::analysis
