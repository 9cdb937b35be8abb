#include "nearfield/linalg.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace nf::linalg {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DomainError("matrix shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DomainError("matrix shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& v : data_) v *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix shape mismatch in *");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexVector operator*(const ComplexMatrix& a, std::span<const cplx> x) {
  if (a.cols() != x.size()) throw DomainError("matrix-vector shape mismatch");
  ComplexVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw DomainError("inner product of vectors with different lengths");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

double norm2(std::span<const cplx> a) {
  double s = 0.0;
  for (const cplx& v : a) s += std::norm(v);
  return std::sqrt(s);
}

double frobenius_norm(const ComplexMatrix& a) { return norm2(a.data()); }

ComplexVector EigenSystem::vector(std::size_t j) const {
  ComplexVector v(vectors.rows());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, j);
  return v;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One unitary two-sided rotation annihilating a(p, q). With
// a(p, q) = g e^{i phi}, U = diag(1, e^{-i phi}) R where R is the real
// Jacobi rotation of [[a_pp, g], [g, a_qq]].
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double g = std::abs(apq);
  const cplx e = apq / g;
  const cplx eb = std::conj(e);
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * g);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.rows();

  for (std::size_t k = 0; k < n; ++k) {  // A <- A U
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = c * akp - s * eb * akq;
    a(k, q) = s * akp + c * eb * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {  // A <- U^* A
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = c * apk - s * e * aqk;
    a(q, k) = s * apk + c * e * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * g;
  a(q, q) = aqq + t * g;
  for (std::size_t k = 0; k < n; ++k) {  // V <- V U
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = c * vkp - s * eb * vkq;
    v(k, q) = s * vkp + c * eb * vkq;
  }
}

}  // namespace

EigenSystem hermitian_eig(const ComplexMatrix& input, const EigOptions& opts) {
  if (!input.square()) throw NotHermitianError("eigendecomposition needs a square matrix");
  const std::size_t n = input.rows();
  const double fro = frobenius_norm(input);
  const double skew = frobenius_norm(input - input.adjoint());
  if (skew > opts.hermitian_tol * fro) {
    throw NotHermitianError("matrix is not Hermitian: ||A - A*||_F / ||A||_F = " +
                            std::to_string(skew / fro));
  }
  ComplexMatrix a = 0.5 * (input + input.adjoint());
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double target = opts.off_tol * fro;
  bool converged = false;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= target) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g == 0.0) continue;
        const double dp = std::abs(a(p, p).real());
        const double dq = std::abs(a(q, q).real());
        if (sweep > 3 && dp + 1e3 * g == dp && dq + 1e3 * g == dq) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
  }
  if (!converged && off_diagonal_norm(a) > target) {
    throw ConvergenceError("Jacobi eigensolver did not converge in " + std::to_string(opts.max_sweeps) +
                           " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const double li = a(i, i).real();
    const double lj = a(j, j).real();
    if (std::abs(li) != std::abs(lj)) return std::abs(li) > std::abs(lj);
    return li > lj;
  });

  EigenSystem out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t jj = 0; jj < n; ++jj) {
    const std::size_t j = order[jj];
    out.values[jj] = a(j, j).real();
    // Fix the phase: first component above 1e-10 becomes real positive.
    cplx phase = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double m = std::abs(v(i, j));
      if (m > 1e-10) {
        phase = std::conj(v(i, j)) / m;
        break;
      }
    }
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, jj) = v(i, j) * phase;
  }
  return out;
}

double spectral_norm(const ComplexMatrix& a) {
  const EigenSystem e = hermitian_eig(a.adjoint() * a);
  return e.size() == 0 ? 0.0 : std::sqrt(std::max(0.0, e.values.front()));
}

ComplexMatrix real_part_op(const ComplexMatrix& n) {
  if (!n.square()) throw DomainError("real part operator needs a square matrix");
  return 0.5 * (n + n.adjoint());
}

ComplexMatrix imag_part_op(const ComplexMatrix& n) {
  if (!n.square()) throw DomainError("imaginary part operator needs a square matrix");
  return cplx(0.0, -0.5) * (n - n.adjoint());
}

ComplexMatrix abs_op(const ComplexMatrix& b) {
  return spectral_function(hermitian_eig(b), [](double l) { return std::abs(l); });
}

NsharpResult nsharp(const ComplexMatrix& n, Regime regime, double absorbing_sign) {
  if (!n.square()) throw DomainError("N_sharp needs a square matrix");
  if (absorbing_sign != 1.0 && absorbing_sign != -1.0) throw DomainError("absorbing sign must be +1 or -1");
  NsharpResult r;
  if (regime == Regime::nonabsorbing) {
    r.matrix = abs_op(real_part_op(n)) + abs_op(imag_part_op(n));
  } else {
    r.matrix = absorbing_sign * imag_part_op(n);
  }
  // Exact Hermitian symmetry for downstream eigensolves.
  r.matrix = 0.5 * (r.matrix + r.matrix.adjoint());
  r.eig = hermitian_eig(r.matrix);
  if (r.eig.size() > 0) {
    r.lambda_max = *std::max_element(r.eig.values.begin(), r.eig.values.end());
    r.lambda_min = *std::min_element(r.eig.values.begin(), r.eig.values.end());
  }
  r.positive = r.lambda_min >= -1e-8 * std::max(r.lambda_max, 0.0);
  return r;
}

ComplexVector sqrt_op_apply(const EigenSystem& e, std::span<const cplx> g) {
  if (g.size() != e.vectors.rows()) throw DomainError("sqrt_op_apply: vector length mismatch");
  double lmax = 0.0;
  for (double l : e.values) lmax = std::max(lmax, l);
  ComplexVector out(g.size());
  for (std::size_t j = 0; j < e.size(); ++j) {
    const double l = e.values[j];
    if (l < -1e-8 * lmax) {
      throw DomainError("operator is not positive: eigenvalue " + std::to_string(l));
    }
    if (l <= 0.0) continue;
    cplx c = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) c += g[i] * std::conj(e.vectors(i, j));
    c *= std::sqrt(l);
    for (std::size_t i = 0; i < g.size(); ++i) out[i] += c * e.vectors(i, j);
  }
  return out;
}

int numerical_rank(const EigenSystem& e, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("rank tolerance must lie in (0, 1)");
  if (e.size() == 0) return 0;
  const double cut = rel_tol * std::abs(e.values.front());
  int r = 0;
  for (double l : e.values)
    if (std::abs(l) > cut) ++r;
  return r;
}

int numerical_rank(const EigenSystem& e) {
  const double eps = std::numeric_limits<double>::epsilon();
  return numerical_rank(e, static_cast<double>(e.vectors.rows()) * eps);
}

}  // namespace nf::linalg
