#include "nearfield/music.hpp"

#include <string>

#include "nearfield/parallel.hpp"
#include "nearfield/steering.hpp"

namespace nf::music {

MusicModel build_music(const born::MultistaticMatrix& n, const MusicOptions& opts) {
  if (!n.data.square()) throw DomainError("MUSIC needs a square multistatic matrix");
  MusicModel m;
  m.eig = linalg::hermitian_eig(n.data * n.data.adjoint());
  m.sensors = n.sensors;
  m.k = n.k;
  const int size = static_cast<int>(n.data.rows());
  if (opts.rank_override) {
    if (*opts.rank_override < 0 || *opts.rank_override > size) {
      throw DomainError("rank override " + std::to_string(*opts.rank_override) + " outside [0, " +
                        std::to_string(size) + "]");
    }
    m.rank = *opts.rank_override;
  } else {
    m.rank = linalg::numerical_rank(m.eig, opts.rank_rel_tol);
  }
  return m;
}

ComplexVector steering_vector(Point2 z, const geometry::SensorArray& sensors, double k) {
  return nf::steering_vector(z, sensors, k);
}

double noise_projection_norm2(const MusicModel& model, std::span<const cplx> phi) {
  double s = 0.0;
  const std::size_t n = model.eig.vectors.rows();
  for (std::size_t j = static_cast<std::size_t>(model.rank); j < model.eig.size(); ++j) {
    cplx c = 0.0;
    for (std::size_t i = 0; i < n; ++i) c += phi[i] * std::conj(model.eig.vectors(i, j));
    s += std::norm(c);
  }
  return s;
}

double music_indicator(const MusicModel& model, Point2 z) {
  check_off_curve(z, model.sensors);
  const ComplexVector phi = nf::steering_vector(z, model.sensors, model.k);
  return capped_reciprocal(noise_projection_norm2(model, phi));
}

IndicatorField music_field(const MusicModel& model, const geometry::SamplingGrid& grid, Exec exec) {
  IndicatorField f;
  f.grid = grid;
  f.mode = "born-music";
  f.values.assign(grid.points.size(), 0.0);
  for_each_index(static_cast<long>(grid.points.size()), exec, [&](long i) {
    const auto u = static_cast<std::size_t>(i);
    f.values[u] = music_indicator(model, grid.points[u]);
  });
  return f;
}

}  // namespace nf::music
