#include "nearfield/geometry.hpp"

#include <string>

namespace nf::geometry {

SensorArray make_sensor_array(int count, double radius) {
  if (count < 1) throw DomainError("sensor count must be >= 1");
  if (!(radius > 0.0)) throw DomainError("sensor radius must be positive");
  SensorArray s;
  s.radius = radius;
  s.points.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = 2.0 * kPi * i / count;
    s.points.push_back({radius * std::cos(t), radius * std::sin(t)});
  }
  return s;
}

SamplingGrid make_grid(Rect bounds, int nx, int ny, double sensor_radius) {
  if (nx < 2 || ny < 2) throw DomainError("grid needs at least 2 points per axis");
  if (!(bounds.min.x < bounds.max.x) || !(bounds.min.y < bounds.max.y)) {
    throw DomainError("grid bounds are empty");
  }
  const double r = sensor_radius;
  if (bounds.min.x <= -r || bounds.min.y <= -r || bounds.max.x >= r || bounds.max.y >= r) {
    throw DomainError("grid bounds leave the sensor region [-R, R]^2 with R = " +
                      std::to_string(r));
  }
  SamplingGrid g;
  g.bounds = bounds;
  g.nx = nx;
  g.ny = ny;
  g.points.reserve(static_cast<std::size_t>(nx) * ny);
  const double hx = (bounds.max.x - bounds.min.x) / (nx - 1);
  const double hy = (bounds.max.y - bounds.min.y) / (ny - 1);
  for (int iy = 0; iy < ny; ++iy) {
    const double y = iy == ny - 1 ? bounds.max.y : bounds.min.y + iy * hy;
    for (int ix = 0; ix < nx; ++ix) {
      const double x = ix == nx - 1 ? bounds.max.x : bounds.min.x + ix * hx;
      const Point2 p{x, y};
      if (std::abs(norm(p) - r) <= 1e-9 * r) {
        throw DomainError("grid point lies on the measurement curve");
      }
      g.points.push_back(p);
    }
  }
  return g;
}

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

Point2 center_of(const Shape& shape) {
  return std::visit(overloaded{
                        [](const Disk& d) { return d.center; },
                        [](const Ellipse& e) { return e.center; },
                        [](const Rectangle& r) { return 0.5 * (r.corner_min + r.corner_max); },
                    },
                    shape);
}

double area_of(const Shape& shape) {
  return std::visit(overloaded{
                        [](const Disk& d) { return kPi * d.radius * d.radius; },
                        [](const Ellipse& e) { return kPi * e.a * e.b; },
                        [](const Rectangle& r) {
                          return (r.corner_max.x - r.corner_min.x) * (r.corner_max.y - r.corner_min.y);
                        },
                    },
                    shape);
}

bool contains(const Shape& shape, Point2 p) {
  return std::visit(overloaded{
                        [p](const Disk& d) { return distance(p, d.center) < d.radius; },
                        [p](const Ellipse& e) {
                          const double u = (p.x - e.center.x) / e.a;
                          const double v = (p.y - e.center.y) / e.b;
                          return u * u + v * v < 1.0;
                        },
                        [p](const Rectangle& r) {
                          return p.x > r.corner_min.x && p.x < r.corner_max.x && p.y > r.corner_min.y &&
                                 p.y < r.corner_max.y;
                        },
                    },
                    shape);
}

Shape scaled(const Shape& shape, double s) {
  if (!(s > 0.0)) throw DomainError("epsilon scale must be positive");
  return std::visit(overloaded{
                        [s](const Disk& d) -> Shape { return Disk{d.center, s * d.radius}; },
                        [s](const Ellipse& e) -> Shape { return Ellipse{e.center, s * e.a, s * e.b}; },
                        [s](const Rectangle& r) -> Shape {
                          const Point2 c = 0.5 * (r.corner_min + r.corner_max);
                          return Rectangle{c + s * (r.corner_min - c), c + s * (r.corner_max - c)};
                        },
                    },
                    shape);
}

IndexFunction constant_index(cplx n) {
  return [n](Point2) { return n; };
}

void validate_scatterer(const ScattererSpec& s, int order) {
  if (!s.index_fn) throw DomainError("scatterer has no refractive index function");
  const QuadratureRule rule = gauss_quadrature(s.effective_shape(), order);
  for (const Point2& p : rule.nodes) {
    const cplx n = s.index_fn(p);
    if (!(n.real() > 0.0) || n.imag() < 0.0 || !std::isfinite(n.real()) || !std::isfinite(n.imag())) {
      throw DomainError("refractive index must satisfy Re(n) > 0 and Im(n) >= 0");
    }
  }
}

double QuadratureRule::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  if (order < 1) throw DomainError("Gauss-Legendre order must be positive");
  nodes.assign(static_cast<std::size_t>(order), 0.0);
  weights.assign(static_cast<std::size_t>(order), 0.0);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int n = 2; n <= order; ++n) {
        const double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0;
    double p1 = x;
    for (int n = 2; n <= order; ++n) {
      const double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(order - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(order - 1 - i)] = w;
  }
}

namespace {

QuadratureRule polar_rule(Point2 c, double a, double b, int order) {
  std::vector<double> t;
  std::vector<double> w;
  gauss_legendre(order, t, w);
  const int n_angle = 2 * order;
  QuadratureRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(order) * n_angle);
  rule.weights.reserve(rule.nodes.capacity());
  // s = r^2 in [0, 1], dA = (a b / 2) ds dtheta.
  for (int i = 0; i < order; ++i) {
    const double s = 0.5 * (t[static_cast<std::size_t>(i)] + 1.0);
    const double ws = 0.5 * w[static_cast<std::size_t>(i)];
    const double r = std::sqrt(s);
    for (int j = 0; j < n_angle; ++j) {
      const double th = 2.0 * kPi * (j + 0.5) / n_angle;
      rule.nodes.push_back({c.x + a * r * std::cos(th), c.y + b * r * std::sin(th)});
      rule.weights.push_back(0.5 * a * b * ws * (2.0 * kPi / n_angle));
    }
  }
  return rule;
}

}  // namespace

QuadratureRule gauss_quadrature(const Shape& shape, int order) {
  if (order < 2 || order > 64) {
    throw DomainError("quadrature order " + std::to_string(order) + " outside [2, 64]");
  }
  return std::visit(overloaded{
                        [order](const Disk& d) { return polar_rule(d.center, d.radius, d.radius, order); },
                        [order](const Ellipse& e) { return polar_rule(e.center, e.a, e.b, order); },
                        [order](const Rectangle& r) {
                          std::vector<double> t;
                          std::vector<double> w;
                          gauss_legendre(order, t, w);
                          const double hx = 0.5 * (r.corner_max.x - r.corner_min.x);
                          const double hy = 0.5 * (r.corner_max.y - r.corner_min.y);
                          const Point2 c = 0.5 * (r.corner_min + r.corner_max);
                          QuadratureRule rule;
                          for (int j = 0; j < order; ++j) {
                            for (int i = 0; i < order; ++i) {
                              rule.nodes.push_back({c.x + hx * t[static_cast<std::size_t>(i)],
                                                    c.y + hy * t[static_cast<std::size_t>(j)]});
                              rule.weights.push_back(hx * hy * w[static_cast<std::size_t>(i)] *
                                                     w[static_cast<std::size_t>(j)]);
                            }
                          }
                          return rule;
                        },
                    },
                    shape);
}

}  // namespace nf::geometry
