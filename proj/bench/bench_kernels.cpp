// Serial reference vs OpenMP kernels: wall time and bit equality.

#include <chrono>
#include <cstdio>

#include "nearfield/disk_forward.hpp"
#include "nearfield/music.hpp"
#include "nearfield/sampling_methods.hpp"

#ifdef NEARFIELD_HAVE_OPENMP
#include <omp.h>
#endif

using namespace nf;

namespace {

template <typename F>
double seconds(F&& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void report(const char* name, double serial, double parallel, bool equal) {
  std::printf("%-22s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  bit-equal %s\n", name, serial, parallel,
              serial / parallel, equal ? "yes" : "NO");
}

}  // namespace

int main() {
  int threads = 1;
#ifdef NEARFIELD_HAVE_OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads: %d\n", threads);

  const auto sensors = geometry::make_sensor_array(32, 1.0);
  const std::vector<geometry::ScattererSpec> scat{
      {geometry::Disk{{-0.5, 0.5}, 0.2}, geometry::constant_index(5.0), 1.0},
      {geometry::Ellipse{{0.5, -0.5}, 0.2, 0.1}, geometry::constant_index(5.0), 1.0}};

  born::MultistaticMatrix ms, mp;
  const double a_s = seconds([&] { ms = born::assemble_multistatic(scat, sensors, 1.0, 16, Exec::serial); }, 3);
  const double a_p = seconds([&] { mp = born::assemble_multistatic(scat, sensors, 1.0, 16, Exec::parallel); }, 3);
  report("born assembly", a_s, a_p, ms.data == mp.data);

  const auto model = music::build_music(ms);
  const auto grid = geometry::make_grid({{-0.9, -0.9}, {0.9, 0.9}}, 101, 101, 1.0);
  IndicatorField fs, fp;
  const double m_s = seconds([&] { fs = music::music_field(model, grid, Exec::serial); }, 1);
  const double m_p = seconds([&] { fp = music::music_field(model, grid, Exec::parallel); }, 1);
  report("music field 101^2", m_s, m_p, fs.values == fp.values);

  const disk::DiskMedium med{0.5, 5.0, 1.0};
  const auto n = disk::assemble_nearfield_matrix(med, 20, 64);
  const auto ns = linalg::nsharp(n, linalg::Regime::nonabsorbing);
  const auto data = sampling::make_picard_data(ns.eig, 2.0 * kPi / 64);
  const sampling::SweepSetup setup{geometry::make_sensor_array(64, 2.0), 1.0};
  const auto dgrid = geometry::make_grid({{-1.8, -1.8}, {1.8, 1.8}}, 101, 101, 2.0);
  const double w_s = seconds([&] { fs = sampling::fm_field(data, setup, dgrid, Exec::serial); }, 1);
  const double w_p = seconds([&] { fp = sampling::fm_field(data, setup, dgrid, Exec::parallel); }, 1);
  report("fm field 101^2", w_s, w_p, fs.values == fp.values);

  const auto filt = sampling::FilterSpec::tikhonov(1e-8);
  const double p_s = seconds([&] { fs = sampling::mlsm_field(data, setup, dgrid, filt, Exec::serial); }, 1);
  const double p_p = seconds([&] { fp = sampling::mlsm_field(data, setup, dgrid, filt, Exec::parallel); }, 1);
  report("mlsm field 101^2", p_s, p_p, fs.values == fp.values);
  return 0;
}
