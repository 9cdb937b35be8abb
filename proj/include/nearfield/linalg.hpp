#pragma once

// Dense complex linear algebra and the spectral operator calculus used by
// the sampling methods: Hermitian eigendecomposition, |B|, B^{1/2} and the
// positive combinations N_sharp built from the real/imaginary parts of a
// near-field matrix.

#include <span>

#include "nearfield/types.hpp"

namespace nf::linalg {

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector operator*(const ComplexMatrix& a, std::span<const cplx> x);

/// (a, b) = sum a_i conj(b_i).
cplx inner(std::span<const cplx> a, std::span<const cplx> b);
double norm2(std::span<const cplx> a);
double frobenius_norm(const ComplexMatrix& a);

/// Largest singular value, via the eigenvalues of A^* A.
double spectral_norm(const ComplexMatrix& a);

/// Eigenvalues ordered by descending |lambda| (ties: descending lambda);
/// eigenvectors are the columns of `vectors`, each with its first
/// significant component real and positive.
struct EigenSystem {
  std::vector<double> values;
  ComplexMatrix vectors;

  std::size_t size() const { return values.size(); }
  ComplexVector vector(std::size_t j) const;
};

struct EigOptions {
  double hermitian_tol = 1e-8;  // relative Frobenius tolerance on A - A^*
  double off_tol = 1e-13;       // stop when off(A) <= off_tol * ||A||_F
  int max_sweeps = 100;
};

/// Cyclic complex Jacobi. Throws NotHermitianError / ConvergenceError.
EigenSystem hermitian_eig(const ComplexMatrix& a, const EigOptions& opts = {});

/// Sum_j f(lambda_j) psi_j psi_j^*.
template <typename F>
ComplexMatrix spectral_function(const EigenSystem& e, F&& f) {
  const std::size_t n = e.vectors.rows();
  ComplexMatrix out(n, n);
  for (std::size_t j = 0; j < e.size(); ++j) {
    const double fj = f(e.values[j]);
    if (fj == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r) {
      const cplx vr = fj * e.vectors(r, j);
      for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * std::conj(e.vectors(c, j));
    }
  }
  return out;
}

ComplexMatrix real_part_op(const ComplexMatrix& n);  // (N + N^*)/2
ComplexMatrix imag_part_op(const ComplexMatrix& n);  // (N - N^*)/(2i)
ComplexMatrix abs_op(const ComplexMatrix& b);        // |B|

enum class Regime { nonabsorbing, absorbing };

struct NsharpResult {
  ComplexMatrix matrix;
  EigenSystem eig;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  bool positive = true;  // lambda_min >= -1e-8 * lambda_max
};

/// nonabsorbing: |Re N| + |Im N|;  absorbing: -Im N.
/// Absorbing-regime sign: N_sharp = sigma Im(N).
inline constexpr double kAbsorbingSign = -1.0;

/// |Re N| + |Im N| (non-absorbing) or sigma Im N (absorbing), sigma = +-1.
NsharpResult nsharp(const ComplexMatrix& n, Regime regime, double absorbing_sign = kAbsorbingSign);

/// N_sharp^{1/2} g with eigenvalues in [-1e-8 lambda_max, 0) clipped to 0.
ComplexVector sqrt_op_apply(const EigenSystem& e, std::span<const cplx> g);

/// Count of |lambda_j| > rel_tol * |lambda_1|.
int numerical_rank(const EigenSystem& e, double rel_tol);

/// MATLAB-style rank: tolerance max_dim * eps * |lambda_1|.
int numerical_rank(const EigenSystem& e);

}  // namespace nf::linalg
