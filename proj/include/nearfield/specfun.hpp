#pragma once

// Integer-order Bessel and Hankel functions.
//
// J_m accepts complex arguments (needed for the interior wavenumber
// k*sqrt(n/a) of absorbing media); Y_m and H^(1)_m are real-argument only.
// Derivatives use the two-term recurrence
//   f'_0 = -f_1,   f'_m = (f_{m-1} - f_{m+1}) / 2.

#include "nearfield/types.hpp"

namespace nf::specfun {

inline constexpr int kMaxOrder = 200;
inline constexpr double kMaxArgument = 700.0;

/// J_order(z). Real z yields an exactly real result.
cplx bessel_j(int order, cplx z);
double bessel_j(int order, double x);

/// Y_order(x), x > 0. Throws DomainError if the value overflows.
double bessel_y(int order, double x);

/// H^(1)_order(x) = J_order(x) + i Y_order(x).
cplx hankel1(int order, double x);

cplx bessel_j_prime(int order, cplx z);
double bessel_j_prime(int order, double x);
cplx hankel1_prime(int order, double x);

/// J_0(z) .. J_max_order(z) in one pass.
std::vector<cplx> bessel_j_sequence(int max_order, cplx z);
std::vector<double> bessel_j_sequence(int max_order, double x);

/// H^(1)_0(x) .. H^(1)_max_order(x) in one pass.
std::vector<cplx> hankel1_sequence(int max_order, double x);

/// Phi(x, y) = (i/4) H^(1)_0(k |x - y|), the outgoing 2-D Helmholtz kernel.
cplx fundamental_solution(double k, Point2 x, Point2 y);

}  // namespace nf::specfun
