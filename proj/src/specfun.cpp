#include "nearfield/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nf::specfun {
namespace {

constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kBig = 1e250;
constexpr double kBigInv = 1e-250;
constexpr double kSeriesRadius = 2.0;

void check_order(int order) {
  if (order < 0 || order > kMaxOrder) {
    throw DomainError("bessel order " + std::to_string(order) + " outside [0, " +
                      std::to_string(kMaxOrder) + "]");
  }
}

void check_argument(double modulus) {
  if (!(modulus <= kMaxArgument)) {
    throw DomainError("bessel argument modulus " + std::to_string(modulus) + " exceeds " +
                      std::to_string(kMaxArgument));
  }
}

// Miller start index: far enough above both the order and the turning point
// |z| that J_N is negligible relative to every requested order.
int miller_start(int max_order, double modulus) {
  const double top = std::max(static_cast<double>(max_order), modulus);
  int n = static_cast<int>(std::ceil(top + 30.0 + 20.0 * std::cbrt(top)));
  return n + (n % 2);
}

template <typename T>
double magnitude(const T& v) {
  if constexpr (std::is_same_v<T, double>) {
    return std::abs(v);
  } else {
    return std::abs(v.real()) + std::abs(v.imag());
  }
}

// Unnormalized backward recurrence f_{n-1} = (2n/z) f_n - f_{n+1} from n = N
// down to 0. Returns f_0 .. f_N, rescaled so nothing overflows.
template <typename T>
std::vector<T> backward_recurrence(int start, T z) {
  std::vector<T> f(static_cast<std::size_t>(start) + 1, T{0});
  T next{0};
  T cur{1e-30};
  f[static_cast<std::size_t>(start)] = cur;
  for (int n = start; n >= 1; --n) {
    T prev = (2.0 * n / z) * cur - next;
    f[static_cast<std::size_t>(n - 1)] = prev;
    next = cur;
    cur = prev;
    if (magnitude(cur) > kBig) {
      for (int j = n - 1; j <= start; ++j) f[static_cast<std::size_t>(j)] *= kBigInv;
      next *= kBigInv;
      cur *= kBigInv;
    }
  }
  return f;
}

// J_0..J_N for real x > 0 normalized by J_0 + 2 sum J_2k = 1.
std::vector<double> miller_real(int max_order, double x) {
  const int start = miller_start(max_order, x);
  std::vector<double> f = backward_recurrence<double>(start, x);
  double sum = f[0];
  for (int k = 2; k <= start; k += 2) sum += 2.0 * f[static_cast<std::size_t>(k)];
  for (double& v : f) v /= sum;
  return f;
}

// J_0..J_N for complex z normalized with exp(-i s z) = J_0 + 2 sum (-i s)^k J_k,
// s = sign(Im z). The sign keeps |exp(-i s z)| >= 1 so the sum has no
// catastrophic cancellation when J grows like exp(|Im z|).
std::vector<cplx> miller_complex(int max_order, cplx z) {
  const int start = miller_start(max_order, std::abs(z));
  std::vector<cplx> f = backward_recurrence<cplx>(start, z);
  const double s = z.imag() >= 0.0 ? 1.0 : -1.0;
  const cplx step = -kI * s;
  cplx power{1.0, 0.0};
  cplx sum = f[0];
  for (int k = 1; k <= start; ++k) {
    power *= step;
    sum += 2.0 * power * f[static_cast<std::size_t>(k)];
  }
  const cplx scale = std::exp(-kI * s * z) / sum;
  for (cplx& v : f) v *= scale;
  return f;
}

// Ascending series sum_k (-z^2/4)^k / (k! (k+m)!) times (z/2)^m.
template <typename T>
T ascending_series(int order, T z) {
  const T half = z / 2.0;
  T lead{1.0};
  for (int i = 1; i <= order; ++i) lead *= half / static_cast<double>(i);
  const T q = -half * half;
  T term{1.0};
  T sum{1.0};
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + order));
    sum += term;
    if (magnitude(term) <= 1e-17 * magnitude(sum)) break;
  }
  return lead * sum;
}

double j_real_positive(int order, double x) {
  if (x <= kSeriesRadius) return ascending_series<double>(order, x);
  return miller_real(order, x)[static_cast<std::size_t>(order)];
}

// Y_0 and Y_1 from Neumann series over the Miller J sequence:
//   Y_0 = (2/pi)(ln(x/2)+gamma) J_0 - (4/pi) sum_k (-1)^k J_2k / k
//   Y_1 = -Y_0'
std::pair<double, double> y0_y1(double x, const std::vector<double>& j) {
  const double lg = std::log(x / 2.0) + kEulerGamma;
  const std::size_t top = j.size() - 1;
  double s0 = 0.0;
  double s1 = 0.0;
  for (std::size_t k = 1; 2 * k + 1 <= top; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    s0 += sign * j[2 * k] / static_cast<double>(k);
    s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / static_cast<double>(k);
  }
  const double y0 = (2.0 / kPi) * lg * j[0] - (4.0 / kPi) * s0;
  const double y1 = (2.0 / kPi) * lg * j[1] - (2.0 / kPi) * j[0] / x + (2.0 / kPi) * s1;
  return {y0, y1};
}

std::vector<double> y_sequence(int max_order, double x, const std::vector<double>& j) {
  auto [y0, y1] = y0_y1(x, j);
  std::vector<double> y(static_cast<std::size_t>(max_order) + 1);
  y[0] = y0;
  if (max_order >= 1) y[1] = y1;
  for (int m = 1; m < max_order; ++m) {
    y[static_cast<std::size_t>(m) + 1] =
        (2.0 * m / x) * y[static_cast<std::size_t>(m)] - y[static_cast<std::size_t>(m) - 1];
  }
  for (int m = 0; m <= max_order; ++m) {
    if (!std::isfinite(y[static_cast<std::size_t>(m)])) {
      throw DomainError("Y_" + std::to_string(m) + "(" + std::to_string(x) + ") overflows");
    }
  }
  return y;
}

void check_positive(double x, const char* what) {
  if (!(x > 0.0)) throw DomainError(std::string(what) + " requires x > 0, got " + std::to_string(x));
  check_argument(x);
}

}  // namespace

double bessel_j(int order, double x) {
  check_order(order);
  check_argument(std::abs(x));
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  const double v = j_real_positive(order, std::abs(x));
  return (x < 0.0 && order % 2 == 1) ? -v : v;
}

cplx bessel_j(int order, cplx z) {
  if (z.imag() == 0.0) return {bessel_j(order, z.real()), 0.0};
  check_order(order);
  check_argument(std::abs(z));
  if (std::abs(z) <= kSeriesRadius) return ascending_series<cplx>(order, z);
  return miller_complex(order, z)[static_cast<std::size_t>(order)];
}

std::vector<double> bessel_j_sequence(int max_order, double x) {
  check_order(max_order);
  check_argument(std::abs(x));
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const std::vector<double> j = miller_real(max_order, std::abs(x));
  for (int m = 0; m <= max_order; ++m) {
    const double v = j[static_cast<std::size_t>(m)];
    out[static_cast<std::size_t>(m)] = (x < 0.0 && m % 2 == 1) ? -v : v;
  }
  return out;
}

std::vector<cplx> bessel_j_sequence(int max_order, cplx z) {
  check_order(max_order);
  check_argument(std::abs(z));
  std::vector<cplx> out(static_cast<std::size_t>(max_order) + 1);
  if (z.imag() == 0.0) {
    const auto r = bessel_j_sequence(max_order, z.real());
    for (std::size_t m = 0; m < r.size(); ++m) out[m] = {r[m], 0.0};
    return out;
  }
  const std::vector<cplx> j = miller_complex(max_order, z);
  std::copy(j.begin(), j.begin() + max_order + 1, out.begin());
  return out;
}

double bessel_y(int order, double x) {
  check_order(order);
  check_positive(x, "bessel_y");
  const std::vector<double> j = miller_real(std::max(order, 2), x);
  return y_sequence(order, x, j)[static_cast<std::size_t>(order)];
}

std::vector<cplx> hankel1_sequence(int max_order, double x) {
  check_order(max_order);
  check_positive(x, "hankel1");
  const std::vector<double> j = miller_real(std::max(max_order, 2), x);
  const std::vector<double> y = y_sequence(max_order, x, j);
  std::vector<cplx> h(static_cast<std::size_t>(max_order) + 1);
  for (std::size_t m = 0; m < h.size(); ++m) h[m] = {j[m], y[m]};
  return h;
}

cplx hankel1(int order, double x) {
  return hankel1_sequence(order, x)[static_cast<std::size_t>(order)];
}

cplx bessel_j_prime(int order, cplx z) {
  check_order(order);
  if (order == 0) return -bessel_j(1, z);
  if (order + 1 > kMaxOrder) throw DomainError("bessel_j_prime needs order + 1 <= max order");
  return 0.5 * (bessel_j(order - 1, z) - bessel_j(order + 1, z));
}

double bessel_j_prime(int order, double x) {
  check_order(order);
  if (order == 0) return -bessel_j(1, x);
  if (order + 1 > kMaxOrder) throw DomainError("bessel_j_prime needs order + 1 <= max order");
  return 0.5 * (bessel_j(order - 1, x) - bessel_j(order + 1, x));
}

cplx hankel1_prime(int order, double x) {
  check_order(order);
  if (order + 1 > kMaxOrder) throw DomainError("hankel1_prime needs order + 1 <= max order");
  const std::vector<cplx> h = hankel1_sequence(order + 1, x);
  if (order == 0) return -h[1];
  return 0.5 * (h[static_cast<std::size_t>(order) - 1] - h[static_cast<std::size_t>(order) + 1]);
}

cplx fundamental_solution(double k, Point2 x, Point2 y) {
  if (!(k > 0.0)) throw DomainError("wavenumber must be positive");
  const double r = distance(x, y);
  if (r == 0.0) throw DomainError("fundamental solution is singular at x = y");
  return 0.25 * kI * hankel1(0, k * r);
}

}  // namespace nf::specfun
