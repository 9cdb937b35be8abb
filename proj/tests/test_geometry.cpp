#include <doctest.h>

#include "nearfield/geometry.hpp"

using namespace nf;
using namespace nf::geometry;

namespace {

double integrate(const QuadratureRule& q, double (*f)(Point2)) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * f(q.nodes[i]);
  return s;
}

}  // namespace

TEST_CASE("sensor array is uniform on the circle") {
  const SensorArray s = make_sensor_array(8, 2.0);
  REQUIRE(s.size() == 8);
  CHECK(s.points[0].x == doctest::Approx(2.0));
  for (const Point2& p : s.points) CHECK(norm(p) == doctest::Approx(2.0));
  CHECK(distance(s.points[1], {std::sqrt(2.0), std::sqrt(2.0)}) < 1e-15);
  CHECK_THROWS_AS(make_sensor_array(0, 1.0), DomainError);
  CHECK_THROWS_AS(make_sensor_array(4, 0.0), DomainError);
}

TEST_CASE("grid layout and validation") {
  const SamplingGrid g = make_grid({{-0.5, -0.25}, {0.5, 0.25}}, 11, 6, 1.0);
  CHECK(g.points.size() == 66);
  CHECK(g.dx() == doctest::Approx(0.1));
  CHECK(g.dy() == doctest::Approx(0.1));
  CHECK(g.points[0] == Point2{-0.5, -0.25});
  CHECK(g.points[10] == Point2{0.5, -0.25});
  CHECK(g.points.back() == Point2{0.5, 0.25});
  CHECK_THROWS_AS(make_grid({{-1.0, -0.5}, {0.5, 0.5}}, 5, 5, 1.0), DomainError);
  CHECK_THROWS_AS(make_grid({{0.5, 0.5}, {0.5, 0.6}}, 5, 5, 1.0), DomainError);
  CHECK_THROWS_AS(make_grid({{-0.5, -0.5}, {0.5, 0.5}}, 1, 5, 1.0), DomainError);
}

TEST_CASE("shape predicates and scaling") {
  const Shape d = Disk{{0.1, 0.2}, 0.3};
  const Shape e = Ellipse{{0.0, 0.0}, 0.4, 0.1};
  const Shape r = Rectangle{{-0.2, -0.1}, {0.2, 0.3}};
  CHECK(contains(d, {0.1, 0.45}));
  CHECK_FALSE(contains(d, {0.1, 0.55}));
  CHECK(contains(e, {0.35, 0.0}));
  CHECK_FALSE(contains(e, {0.0, 0.15}));
  CHECK(contains(r, {0.0, 0.25}));
  CHECK(area_of(d) == doctest::Approx(kPi * 0.09));
  CHECK(area_of(e) == doctest::Approx(kPi * 0.04));
  CHECK(area_of(r) == doctest::Approx(0.16));
  CHECK(area_of(scaled(r, 0.5)) == doctest::Approx(0.04));
  CHECK(center_of(scaled(r, 0.5)) == Point2{0.0, 0.1});
  CHECK_THROWS_AS(scaled(d, 0.0), DomainError);
}

TEST_CASE("rectangle rule is exact for tensor polynomials of degree 2n-1") {
  const QuadratureRule q = gauss_quadrature(Rectangle{{-0.3, 0.1}, {0.5, 0.4}}, 4);
  CHECK(q.size() == 16);
  // integral of x^7 y^7 over [-0.3,0.5] x [0.1,0.4]
  const double ix = (std::pow(0.5, 8) - std::pow(-0.3, 8)) / 8.0;
  const double iy = (std::pow(0.4, 8) - std::pow(0.1, 8)) / 8.0;
  const double got = integrate(q, [](Point2 p) { return std::pow(p.x, 7) * std::pow(p.y, 7); });
  CHECK(got == doctest::Approx(ix * iy).epsilon(1e-13));
  CHECK(q.total_weight() == doctest::Approx(0.8 * 0.3).epsilon(1e-14));
}

TEST_CASE("disk and ellipse rules integrate radial and angular polynomials") {
  const QuadratureRule q = gauss_quadrature(Disk{{0.0, 0.0}, 0.5}, 6);
  CHECK(q.total_weight() == doctest::Approx(kPi * 0.25).epsilon(1e-14));
  // integral of (x^2 + y^2)^2 over the disk of radius R = pi R^6 / 3
  CHECK(integrate(q, [](Point2 p) { return std::pow(p.x * p.x + p.y * p.y, 2); }) ==
        doctest::Approx(kPi * std::pow(0.5, 6) / 3.0).epsilon(1e-13));
  CHECK(std::abs(integrate(q, [](Point2 p) { return p.x * p.y * p.y; })) < 1e-16);
  const QuadratureRule qe = gauss_quadrature(Ellipse{{0.2, -0.1}, 0.3, 0.1}, 5);
  CHECK(qe.total_weight() == doctest::Approx(kPi * 0.03).epsilon(1e-14));
  for (const Point2& p : qe.nodes) CHECK(contains(Ellipse{{0.2, -0.1}, 0.3, 0.1}, p));
  CHECK_THROWS_AS(gauss_quadrature(Disk{{0.0, 0.0}, 0.5}, 1), DomainError);
  CHECK_THROWS_AS(gauss_quadrature(Disk{{0.0, 0.0}, 0.5}, 65), DomainError);
}

TEST_CASE("Gauss-Legendre weights sum to 2 and nodes are symmetric") {
  for (int n : {1, 2, 7, 20, 64}) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    double s = 0.0;
    for (double v : w) s += v;
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    for (int i = 0; i < n; ++i) CHECK(x[static_cast<std::size_t>(i)] == doctest::Approx(-x[static_cast<std::size_t>(n - 1 - i)]).epsilon(1e-14));
  }
}

TEST_CASE("scatterer index validation") {
  ScattererSpec ok{Disk{{0.0, 0.0}, 0.1}, constant_index(cplx(2.0, 0.5)), 1.0};
  CHECK_NOTHROW(validate_scatterer(ok));
  ScattererSpec bad{Disk{{0.0, 0.0}, 0.1}, constant_index(cplx(2.0, -0.5)), 1.0};
  CHECK_THROWS_AS(validate_scatterer(bad), DomainError);
  ScattererSpec none{Disk{{0.0, 0.0}, 0.1}, {}, 1.0};
  CHECK_THROWS_AS(validate_scatterer(none), DomainError);
}
