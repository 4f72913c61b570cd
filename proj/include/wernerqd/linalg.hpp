#pragma once

// Dense complex Hermitian kernel: tensor products, partial trace/transpose,
// cyclic Jacobi eigensolver and trace norm. Row-major storage throughout.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wernerqd/errors.hpp"

namespace wernerqd {

using Complex = std::complex<double>;

/// Largest dense dimension we are willing to allocate (2^12).
inline constexpr std::size_t kDenseCap = 4096;
inline constexpr double kHermitianTol = 1e-12;

class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t dim) : dim_(checked_dim(dim)), entries_(dim * dim) {}

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    ComplexMatrix m(rows.size());
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != rows.size()) throw DimensionError("from_rows: matrix must be square");
      std::size_t j = 0;
      for (const auto& v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * dim_ + j];
  }

  std::span<const Complex> data() const noexcept { return entries_; }
  std::span<Complex> data() noexcept { return entries_; }

  Complex trace() const noexcept {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  bool is_hermitian(double tol = kHermitianTol) const noexcept {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j)
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
  }

  double frobenius_norm() const noexcept {
    double s = 0.0;
    for (const auto& v : entries_) s += std::norm(v);
    return std::sqrt(s);
  }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs) {
    require_same_dim(rhs);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& rhs) {
    require_same_dim(rhs);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) noexcept {
    for (auto& v : entries_) v *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  static std::size_t checked_dim(std::size_t dim) {
    if (dim == 0) throw DimensionError("matrix dimension must be at least 1");
    if (dim > kDenseCap)
      throw CapacityError("dense dimension " + std::to_string(dim) + " exceeds cap " +
                          std::to_string(kDenseCap));
    return dim;
  }

  void require_same_dim(const ComplexMatrix& rhs) const {
    if (rhs.dim_ != dim_) throw DimensionError("matrix dimensions differ");
  }

  std::size_t dim_;
  std::vector<Complex> entries_;
};

/// Largest element-wise |a - b|.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("max_abs_diff: dimensions differ");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  return worst;
}

inline ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("multiply: dimensions differ");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim(), db = b.dim();
  if (da > kDenseCap / db)
    throw CapacityError("kron: product dimension " + std::to_string(da) + "x" + std::to_string(db) +
                        " exceeds cap " + std::to_string(kDenseCap));
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
    }
  return out;
}

namespace detail {

inline void require_factorization(const ComplexMatrix& rho, std::size_t dim_a, std::size_t dim_b,
                                  const char* who) {
  if (dim_a == 0 || dim_b == 0 || rho.dim() != dim_a * dim_b)
    throw DimensionError(std::string(who) + ": dimension " + std::to_string(rho.dim()) +
                         " does not factor as " + std::to_string(dim_a) + "x" +
                         std::to_string(dim_b));
}

}  // namespace detail

/// tr_B over the trailing factor of an (A ⊗ B) operator.
inline ComplexMatrix partial_trace_B(const ComplexMatrix& rho, std::size_t dim_a,
                                     std::size_t dim_b) {
  detail::require_factorization(rho, dim_a, dim_b, "partial_trace_B");
  ComplexMatrix out(dim_a);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_a; ++j) {
      Complex s = 0.0;
      for (std::size_t b = 0; b < dim_b; ++b) s += rho(i * dim_b + b, j * dim_b + b);
      out(i, j) = s;
    }
  return out;
}

/// tr_A over the leading factor of an (A ⊗ B) operator.
inline ComplexMatrix partial_trace_A(const ComplexMatrix& rho, std::size_t dim_a,
                                     std::size_t dim_b) {
  detail::require_factorization(rho, dim_a, dim_b, "partial_trace_A");
  ComplexMatrix out(dim_b);
  for (std::size_t a = 0; a < dim_a; ++a)
    for (std::size_t b = 0; b < dim_b; ++b)
      for (std::size_t c = 0; c < dim_b; ++c) out(b, c) += rho(a * dim_b + b, a * dim_b + c);
  return out;
}

/// Transpose of the B index only: <i b|out|j c> = <i c|rho|j b>.
inline ComplexMatrix partial_transpose_B(const ComplexMatrix& rho, std::size_t dim_a,
                                         std::size_t dim_b) {
  detail::require_factorization(rho, dim_a, dim_b, "partial_transpose_B");
  ComplexMatrix out(rho.dim());
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_a; ++j)
      for (std::size_t b = 0; b < dim_b; ++b)
        for (std::size_t c = 0; c < dim_b; ++c)
          out(i * dim_b + b, j * dim_b + c) = rho(i * dim_b + c, j * dim_b + b);
  return out;
}

/// tr_B[(I_A ⊗ K) rho (I_A ⊗ K)^†] without forming the full-size product.
///
/// The B-trace collapses the sandwich to contraction against K^† K, so the
/// cost is O(dim_a^2 dim_b^2) and no dim x dim temporary is allocated.
inline ComplexMatrix partial_trace_B_after(const ComplexMatrix& rho, std::size_t dim_a,
                                           std::size_t dim_b, const ComplexMatrix& local_op) {
  detail::require_factorization(rho, dim_a, dim_b, "partial_trace_B_after");
  if (local_op.dim() != dim_b) throw DimensionError("partial_trace_B_after: local operator dim");
  const ComplexMatrix gram = multiply(local_op.adjoint(), local_op);
  ComplexMatrix out(dim_a);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_a; ++j) {
      Complex s = 0.0;
      for (std::size_t b = 0; b < dim_b; ++b)
        for (std::size_t c = 0; c < dim_b; ++c) {
          const Complex w = gram(c, b);
          if (w != Complex{}) s += rho(i * dim_b + b, j * dim_b + c) * w;
        }
      out(i, j) = s;
    }
  return out;
}

/// Real eigenvalues, descending.
struct Spectrum {
  std::vector<double> eigenvalues;

  std::size_t size() const noexcept { return eigenvalues.size(); }
  double sum() const noexcept {
    return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
  }
  double min() const { return eigenvalues.back(); }
  double max() const { return eigenvalues.front(); }
};

struct JacobiOptions {
  /// Stop once the off-diagonal Frobenius norm is below tolerance * max(1, ||m||_F).
  double tolerance = 1e-12;
  int max_sweeps = 100;
  /// Hermiticity check on entry; leave on at module boundaries.
  bool validate = true;
};

/// Eigenpairs with eigenvectors as columns of `vectors`, values descending.
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
  return std::sqrt(2.0 * s);
}

// Cyclic Jacobi on a Hermitian matrix with complex plane rotations.
// Rotation J = diag-phase * real Givens zeroes a(p,q); a <- J^† a J.
inline std::vector<double> jacobi_diagonalize(ComplexMatrix& a, ComplexMatrix* vectors,
                                              const JacobiOptions& opts) {
  const std::size_t n = a.dim();
  if (opts.validate && !a.is_hermitian(kHermitianTol))
    throw ValidationError("eig_hermitian: input is not Hermitian within 1e-12");
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  const double scale = std::max(1.0, a.frobenius_norm());
  const double stop = opts.tolerance * scale;
  const double skip = stop / static_cast<double>(n);

  int sweep = 0;
  double off = off_diagonal_norm(a);
  while (off > stop) {
    if (sweep == opts.max_sweeps)
      throw ConvergenceError("eig_hermitian: no convergence after " +
                                 std::to_string(opts.max_sweeps) +
                                 " sweeps, off-diagonal norm " + std::to_string(off),
                             off);
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g <= skip) continue;

        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * g);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex phase = std::conj(apq / g);

        const Complex jpp = c, jpq = s, jqp = -s * phase, jqq = c * phase;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, p) = app - t * g;
        a(q, q) = aqq + t * g;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        if (vectors != nullptr) {
          ComplexMatrix& v = *vectors;
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = v(k, p), vkq = v(k, q);
            v(k, p) = vkp * jpp + vkq * jqp;
            v(k, q) = vkp * jpq + vkq * jqq;
          }
        }
      }
    ++sweep;
    off = off_diagonal_norm(a);
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(a(i, i).imag()) > 1e-10)
      throw ValidationError("eig_hermitian: eigenvalue has imaginary residue");
    values[i] = a(i, i).real();
  }
  return values;
}

}  // namespace detail

/// Full real spectrum of a Hermitian matrix, descending. Consumes its argument.
inline Spectrum eig_hermitian(ComplexMatrix m, const JacobiOptions& opts = {}) {
  auto values = detail::jacobi_diagonalize(m, nullptr, opts);
  std::sort(values.begin(), values.end(), std::greater<>());
  return Spectrum{std::move(values)};
}

inline HermitianEigen eigh(ComplexMatrix m, const JacobiOptions& opts = {}) {
  const std::size_t n = m.dim();
  ComplexMatrix v = ComplexMatrix::identity(n);
  auto values = detail::jacobi_diagonalize(m, &v, opts);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t l, std::size_t r) { return values[l] > values[r]; });

  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = values[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

/// Sum of |eigenvalue|.
inline double trace_norm(ComplexMatrix m, const JacobiOptions& opts = {}) {
  const Spectrum s = eig_hermitian(std::move(m), opts);
  double total = 0.0;
  for (double v : s.eigenvalues) total += std::abs(v);
  return total;
}

}  // namespace wernerqd
