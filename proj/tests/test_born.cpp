#include <doctest.h>

#include "nearfield/born_forward.hpp"
#include "nearfield/specfun.hpp"

using namespace nf;
using namespace nf::geometry;

namespace {

std::vector<ScattererSpec> two_scatterers() {
  return {{Disk{{-0.4, 0.3}, 0.15}, constant_index(3.0), 1.0},
          {Rectangle{{0.2, -0.5}, {0.4, -0.2}}, [](Point2 p) { return cplx(2.0 + p.x, 0.1); }, 1.0}};
}

}  // namespace

TEST_CASE("unit contrast produces an exactly zero matrix") {
  const std::vector<ScattererSpec> s{{Disk{{0.0, 0.0}, 0.3}, constant_index(1.0), 1.0}};
  const auto m = born::assemble_multistatic(s, make_sensor_array(16, 1.0), 1.0);
  for (const cplx& v : m.data.data()) CHECK(v == cplx(0.0, 0.0));
}

TEST_CASE("small scatterer behaves like a point scatterer") {
  const double eps = 1e-3;
  const std::vector<ScattererSpec> s{{Disk{{0.2, -0.1}, 1.0}, constant_index(4.0), eps}};
  const Point2 x{0.9, 0.1}, y{-0.5, 0.7};
  const double k = 1.5;
  const cplx point = k * k * (kPi * eps * eps) * 3.0 * specfun::fundamental_solution(k, x, {0.2, -0.1}) *
                     specfun::fundamental_solution(k, {0.2, -0.1}, y);
  const cplx got = born::born_scattered_field(s, 8, k, x, y);
  CHECK(std::abs(got - point) < 1e-5 * std::abs(point));
}

TEST_CASE("multistatic matrix is complex symmetric and matches the pointwise field") {
  const auto s = two_scatterers();
  const auto sensors = make_sensor_array(12, 1.0);
  const auto m = born::assemble_multistatic(s, sensors, 2.0, 10);
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = 0; j < 12; ++j) CHECK(std::abs(m.data(i, j) - m.data(j, i)) <= 1e-15 * std::abs(m.data(i, j)));
  }
  const cplx direct = born::born_scattered_field(s, 10, 2.0, sensors.points[3], sensors.points[7]);
  CHECK(std::abs(m.data(3, 7) - direct) <= 1e-14 * std::abs(direct));
}

TEST_CASE("serial and parallel assembly are bit-identical") {
  const auto s = two_scatterers();
  const auto sensors = make_sensor_array(40, 1.0);
  const auto a = born::assemble_multistatic(s, sensors, 1.0, 16, Exec::serial);
  const auto b = born::assemble_multistatic(s, sensors, 1.0, 16, Exec::parallel);
  CHECK(a.data == b.data);
}

TEST_CASE("noise model") {
  const auto e = born::unit_noise_matrix(20, 9);
  CHECK(linalg::spectral_norm(e) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e == born::unit_noise_matrix(20, 9));
  CHECK_FALSE(e == born::unit_noise_matrix(20, 10));
  const auto r = born::unit_noise_matrix(10, 2, born::NoiseKind::real);
  for (const cplx& v : r.data()) CHECK(v.imag() == 0.0);

  const auto m = born::assemble_multistatic(two_scatterers(), make_sensor_array(20, 1.0), 1.0);
  CHECK(born::add_noise(m, 0.0, 5).data == m.data);
  const auto n = born::add_noise(m, 0.1, 9);
  CHECK(n.noise_delta == 0.1);
  for (std::size_t i = 0; i < e.data().size(); ++i) {
    const cplx expect = m.data.data()[i] * (1.0 + 0.1 * e.data()[i]);
    CHECK(n.data.data()[i] == expect);
  }
  CHECK_THROWS_AS(born::add_noise(m, -0.1, 1), DomainError);
}

TEST_CASE("invalid configurations") {
  const std::vector<ScattererSpec> big{{Disk{{0.0, 0.0}, 1.5}, constant_index(2.0), 1.0}};
  CHECK_THROWS_AS(born::assemble_multistatic(big, make_sensor_array(8, 1.0), 1.0), DomainError);
  CHECK_THROWS_AS(born::assemble_multistatic(two_scatterers(), make_sensor_array(8, 1.0), 0.0), DomainError);
  const auto q = born::contrast_quadrature(two_scatterers(), 4);
  CHECK_THROWS_AS(born::born_scattered_field(q, 1.0, {-0.4, 0.3}, {0.9, 0.0}), DomainError);
}

TEST_CASE("Born smallness grows with contrast") {
  const auto sensors = make_sensor_array(16, 1.0);
  const std::vector<ScattererSpec> lo{{Disk{{0.0, 0.0}, 0.1}, constant_index(1.5), 1.0}};
  const std::vector<ScattererSpec> hi{{Disk{{0.0, 0.0}, 0.1}, constant_index(3.0), 1.0}};
  const double a = born::born_smallness(born::contrast_quadrature(lo, 8), sensors, 1.0);
  const double b = born::born_smallness(born::contrast_quadrature(hi, 8), sensors, 1.0);
  CHECK(b == doctest::Approx(4.0 * a).epsilon(1e-12));
}
