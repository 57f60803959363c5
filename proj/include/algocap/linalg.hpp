#pragma once

// Dense complex linear algebra: row-major matrices, Kronecker products,
// partial traces, a cyclic Jacobi Hermitian eigensolver and spectral
// matrix functions.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "algocap/error.hpp"

namespace algocap {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Default tolerance for treating a matrix as Hermitian.
inline constexpr double kHermitianTol = 1e-10;
/// Eigenvalues at or below this value are outside the support of a PSD matrix.
inline constexpr double kSupportCutoff = 1e-12;
/// Most negative eigenvalue tolerated for a positive semidefinite input.
inline constexpr double kPsdTol = 1e-9;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw DimensionError("matrix data has " + std::to_string(data_.size()) +
                           " entries, expected " + std::to_string(rows_ * cols_));
    }
  }

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimensionError("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  static ComplexMatrix diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
  }

  /// |a><b|
  static ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b) {
    ComplexMatrix m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
    return m;
  }

  /// |i><j| in dimension n.
  static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
    ComplexMatrix m(n, n);
    m(i, j) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ComplexVector column(std::size_t j) const {
    ComplexVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  Complex trace() const {
    require_square("trace");
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& other) {
    require_same_shape(other, "+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& other) {
    require_same_shape(other, "-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
  }

  ComplexMatrix& operator*=(Complex s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= Complex{s, 0.0}; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionError("matrix product of " + a.shape() + " and " + b.shape());
    }
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{0.0, 0.0}) continue;
        const Complex* brow = &b.data_[k * b.cols_];
        Complex* orow = &out.data_[i * out.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) orow[j] += aik * brow[j];
      }
    }
    return out;
  }

  friend ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> v) {
    if (a.cols_ != v.size()) throw DimensionError("matrix-vector product of " + a.shape());
    ComplexVector out(a.rows_, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  bool operator==(const ComplexMatrix&) const = default;

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  void require_square(const char* what) const {
    if (!is_square()) throw DimensionError(std::string(what) + " needs a square matrix, got " + shape());
  }

 private:
  void require_same_shape(const ComplexMatrix& other, const char* op) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
      throw DimensionError(std::string("shape mismatch in ") + op + ": " + shape() + " vs " +
                           other.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

inline double max_abs(const ComplexMatrix& m) {
  double worst = 0.0;
  for (const auto& x : m.data()) worst = std::max(worst, std::abs(x));
  return worst;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("cannot compare " + a.shape() + " with " + b.shape());
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  return worst;
}

/// max |M - M^dagger| entrywise.
inline double hermitian_residual(const ComplexMatrix& m) {
  m.require_square("hermitian_residual");
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol) {
  return m.is_square() && hermitian_residual(m) <= tol;
}

/// Re Tr(a b) without forming the product.
inline double trace_product_real(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionError("trace of product " + a.shape() + " * " + b.shape());
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) sum += (a(i, k) * b(k, i)).real();
  return sum;
}

/// Tr(a b) without forming the product.
inline Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionError("trace of product " + a.shape() + " * " + b.shape());
  }
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, i);
  return sum;
}

/// K m K^dagger, the building block of every Kraus sum.
inline ComplexMatrix sandwich(const ComplexMatrix& k, const ComplexMatrix& m) {
  return k * m * k.adjoint();
}

// ---------------------------------------------------------------------------
// Tensor structure

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const Complex x = a(ia, ja);
      if (x == Complex{0.0, 0.0}) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          out(ia * b.rows() + ib, ja * b.cols() + jb) = x * b(ib, jb);
    }
  return out;
}

inline ComplexVector kron(std::span<const Complex> a, std::span<const Complex> b) {
  ComplexVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

/// a^{(x)n}; n >= 1.
inline ComplexMatrix kron_power(const ComplexMatrix& a, std::size_t n) {
  if (n == 0) throw DimensionError("kron_power needs n >= 1");
  ComplexMatrix out = a;
  for (std::size_t k = 1; k < n; ++k) out = kron(out, a);
  return out;
}

/// Trace out every subsystem not listed in `keep`. Subsystem 0 is the most
/// significant factor of the row index.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                   std::span<const std::size_t> keep) {
  m.require_square("partial_trace");
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (total != m.rows()) {
    throw DimensionError("partial_trace: subsystem dimensions multiply to " + std::to_string(total) +
                         " but matrix is " + m.shape());
  }
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) throw DimensionError("partial_trace: subsystem index out of range");
    kept[k] = true;
  }
  std::size_t kept_dim = 1;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (kept[s]) kept_dim *= dims[s];

  // Split each full index into (kept part, traced part).
  std::vector<std::size_t> kept_index(total), traced_index(total);
  for (std::size_t full = 0; full < total; ++full) {
    std::size_t rest = full;
    std::size_t kidx = 0, tidx = 0, kstride = 1, tstride = 1;
    for (std::size_t s = dims.size(); s-- > 0;) {
      const std::size_t digit = rest % dims[s];
      rest /= dims[s];
      if (kept[s]) {
        kidx += digit * kstride;
        kstride *= dims[s];
      } else {
        tidx += digit * tstride;
        tstride *= dims[s];
      }
    }
    kept_index[full] = kidx;
    traced_index[full] = tidx;
  }

  ComplexMatrix out(kept_dim, kept_dim);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j)
      if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += m(i, j);
  return out;
}

inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::initializer_list<std::size_t> dims,
                                   std::initializer_list<std::size_t> keep) {
  return partial_trace(m, std::span<const std::size_t>(dims.begin(), dims.size()),
                       std::span<const std::size_t>(keep.begin(), keep.size()));
}

// ---------------------------------------------------------------------------
// Hermitian eigenproblem

struct HermitianEigenDecomposition {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // unitary, one eigenvector per column

  std::size_t dim() const noexcept { return eigenvalues.size(); }
  double max_eigenvalue() const { return eigenvalues.front(); }
  double min_eigenvalue() const { return eigenvalues.back(); }
  ComplexVector vector(std::size_t k) const { return eigenvectors.column(k); }

  /// U f(diag) U^dagger for a scalar function f.
  template <typename F>
  ComplexMatrix apply(F&& f) const {
    const std::size_t n = dim();
    std::vector<double> fvals(n);
    for (std::size_t k = 0; k < n; ++k) fvals[k] = f(eigenvalues[k]);
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      if (fvals[k] == 0.0) continue;
      for (std::size_t i = 0; i < n; ++i) {
        const Complex ui = eigenvectors(i, k) * fvals[k];
        for (std::size_t j = 0; j < n; ++j) out(i, j) += ui * std::conj(eigenvectors(j, k));
      }
    }
    return out;
  }

  ComplexMatrix reconstruct() const {
    return apply([](double x) { return x; });
  }
};

namespace detail {

inline double off_diagonal_norm2(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) s += std::norm(a(p, q));
  return 2.0 * s;
}

// One complex Jacobi rotation annihilating a(p,q). G = diag(1, conj(phase)) * R
// with R the real symmetric Jacobi rotation.
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double g = std::abs(apq);
  if (g == 0.0) return;
  const Complex phase_conj = std::conj(apq / g);
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * g);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex gpp = c, gpq = s, gqp = -s * phase_conj, gqq = c * phase_conj;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p), akq = a(k, q);
    a(k, p) = akp * gpp + akq * gqp;
    a(k, q) = akp * gpq + akq * gqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k), aqk = a(q, k);
    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p), vkq = v(k, q);
    v(k, p) = vkp * gpp + vkq * gqp;
    v(k, q) = vkp * gpq + vkq * gqq;
  }
}

}  // namespace detail

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix. Sweeps visit pairs
/// in row-major order, so results are reproducible bit for bit. Eigenvalues
/// come back descending and each eigenvector has its first nonzero component
/// real and positive.
inline HermitianEigenDecomposition eigh(const ComplexMatrix& m, double hermitian_tol = kHermitianTol) {
  m.require_square("eigh");
  const double residual = hermitian_residual(m);
  if (residual > hermitian_tol) {
    throw NotHermitianError("eigh: max|M - M^dagger| = " + std::to_string(residual));
  }
  const std::size_t n = m.rows();
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  double scale2 = 0.0;
  for (const auto& x : a.data()) scale2 += std::norm(x);
  const double stop2 = scale2 * 1e-32;

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (detail::off_diagonal_norm2(a) <= stop2) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

  HermitianEigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.eigenvalues[k] = a(src, src).real();
    Complex phase{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::abs(v(i, src));
      if (mag > 1e-12) {
        phase = std::conj(v(i, src)) / mag;
        break;
      }
    }
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, src) * phase;
  }
  return out;
}

inline std::vector<double> eigvalsh(const ComplexMatrix& m) { return eigh(m).eigenvalues; }

/// Support-restricted base-2 logarithm of a PSD matrix: eigenvalues at or
/// below `support_cutoff` map to zero.
inline ComplexMatrix herm_log2(const ComplexMatrix& m, double support_cutoff = kSupportCutoff) {
  const auto dec = eigh(m);
  if (dec.min_eigenvalue() < -kPsdTol) {
    throw NegativeEigenvalueError("herm_log2: eigenvalue " + std::to_string(dec.min_eigenvalue()));
  }
  return dec.apply([support_cutoff](double x) { return x > support_cutoff ? std::log2(x) : 0.0; });
}

/// Projector onto the eigenspace with eigenvalues at or below `cutoff`.
inline ComplexMatrix kernel_projector(const HermitianEigenDecomposition& dec,
                                      double cutoff = kSupportCutoff) {
  return dec.apply([cutoff](double x) { return x > cutoff ? 0.0 : 1.0; });
}

}  // namespace algocap
