#pragma once

#include <functional>
#include <variant>

#include "nearfield/types.hpp"

namespace nf::geometry {

/// Coincident sources and receivers equally spaced on the circle |x| = radius,
/// point i at angle 2*pi*i/count (0-based), so points[0] = (radius, 0).
struct SensorArray {
  double radius = 1.0;
  std::vector<Point2> points;

  std::size_t size() const { return points.size(); }
};

SensorArray make_sensor_array(int count, double radius);

struct Rect {
  Point2 min;
  Point2 max;
};

/// Row-major lattice (y outer, x inner) including the corners of `bounds`.
struct SamplingGrid {
  Rect bounds;
  int nx = 0;
  int ny = 0;
  std::vector<Point2> points;

  double dx() const { return (bounds.max.x - bounds.min.x) / (nx - 1); }
  double dy() const { return (bounds.max.y - bounds.min.y) / (ny - 1); }
  Point2 at(int ix, int iy) const { return points[static_cast<std::size_t>(iy) * nx + ix]; }
};

/// Sampling points may lie anywhere in the bounding box [-R, R]^2 of the
/// sensor circle but never on the circle itself.
SamplingGrid make_grid(Rect bounds, int nx, int ny, double sensor_radius);

struct Disk {
  Point2 center;
  double radius = 0.0;
};

struct Ellipse {
  Point2 center;
  double a = 0.0;  // semi-axis along x
  double b = 0.0;  // semi-axis along y
};

struct Rectangle {
  Point2 corner_min;
  Point2 corner_max;
};

using Shape = std::variant<Disk, Ellipse, Rectangle>;

Point2 center_of(const Shape& shape);
double area_of(const Shape& shape);
bool contains(const Shape& shape, Point2 p);
/// Shape scaled about its center by factor s (D = z + s*B).
Shape scaled(const Shape& shape, double s);

using IndexFunction = std::function<cplx(Point2)>;

IndexFunction constant_index(cplx n);

/// A scatterer D = center + epsilon_scale * B with refractive index n(x).
struct ScattererSpec {
  Shape shape;
  IndexFunction index_fn;
  double epsilon_scale = 1.0;

  Shape effective_shape() const { return scaled(shape, epsilon_scale); }
};

/// Checks Re(n) > 0 and Im(n) >= 0 at the quadrature nodes of the scatterer.
void validate_scatterer(const ScattererSpec& s, int order = 8);

struct QuadratureRule {
  std::vector<Point2> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  double total_weight() const;
};

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

/// Area quadrature of the given order (2..64). Rectangles use the tensor
/// Gauss-Legendre rule; disks and ellipses use Gauss-Legendre in r^2 (no
/// Jacobian singularity at the center) times the 2*order point periodic rule
/// in angle.
QuadratureRule gauss_quadrature(const Shape& shape, int order);

}  // namespace nf::geometry
