#pragma once

// MUSIC localization of small scatterers. A sampling point z is a scatterer
// location iff the steering vector phi_z lies in the signal subspace of
// N N^*; the indicator is the reciprocal squared norm of its projection onto
// the noise subspace.

#include <optional>

#include "nearfield/born_forward.hpp"
#include "nearfield/field.hpp"

namespace nf::music {

/// Relative eigenvalue cut used to pick the signal-subspace dimension of
/// N N^* when no rank override is given.
inline constexpr double kDefaultRankTol = 1e-4;

struct MusicModel {
  linalg::EigenSystem eig;  // of N N^*
  int rank = 0;
  geometry::SensorArray sensors;
  double k = 1.0;
};

struct MusicOptions {
  std::optional<int> rank_override;
  double rank_rel_tol = kDefaultRankTol;
};

MusicModel build_music(const born::MultistaticMatrix& n, const MusicOptions& opts = {});

ComplexVector steering_vector(Point2 z, const geometry::SensorArray& sensors, double k);

/// sum_{j > r} |(phi_z, w_j)|^2.
double noise_projection_norm2(const MusicModel& model, std::span<const cplx> phi);

/// [sum_{j > r} |(phi_z, w_j)|^2]^{-1}, capped at kIndicatorCap.
double music_indicator(const MusicModel& model, Point2 z);

IndicatorField music_field(const MusicModel& model, const geometry::SamplingGrid& grid,
                           Exec exec = Exec::parallel);

}  // namespace nf::music
