#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfmirror/errors.hpp"
#include "pfmirror/scalar.hpp"

namespace pfm {

// Dense row-major matrix with value semantics.
template <class S>
class Matrix {
 public:
  using value_type = S;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const S& fill = S{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<S>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n, const S& one = S(1), const S& zero = S(0)) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool square() const { return rows_ == cols_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  template <class F>
  [[nodiscard]] auto map(F f) const -> Matrix<decltype(f(std::declval<const S&>()))> {
    Matrix<decltype(f(std::declval<const S&>()))> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const S& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend Matrix operator*(Matrix a, const S& s) { return a *= s; }
  friend Matrix operator*(const S& s, Matrix a) {
    for (auto& x : a.data_) x = s * x;
    return a;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionError("matrix product: " + a.shape() + " * " + b.shape());
    }
    Matrix c(a.rows_, b.cols_);
    if (a.cols_ == 0) return c;
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < b.cols_; ++j) {
        S acc = a(i, 0) * b(0, j);
        for (std::size_t k = 1; k < a.cols_; ++k) acc += a(i, k) * b(k, j);
        c(i, j) = std::move(acc);
      }
    }
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  [[nodiscard]] std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionError("shape mismatch: " + shape() + " vs " + o.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

using Complex = std::complex<double>;
using IntMatrix = Matrix<std::int64_t>;
using RatMatrix = Matrix<Rational>;
using QCMatrix = Matrix<QComplex>;
using RMatrix = Matrix<double>;
using CMatrix = Matrix<Complex>;
using CVector = std::vector<Complex>;

template <class S>
std::vector<S> operator*(const Matrix<S>& m, const std::vector<S>& v) {
  if (m.cols() != v.size()) throw DimensionError("matrix-vector size mismatch");
  std::vector<S> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.cols() == 0) continue;
    S acc = m(i, 0) * v[0];
    for (std::size_t k = 1; k < m.cols(); ++k) acc += m(i, k) * v[k];
    out[i] = std::move(acc);
  }
  return out;
}

// Per-field behaviour needed by the elimination routines. Exact fields
// decide zero exactly; floating fields compare magnitudes to a tolerance.
template <class S>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x, double /*tol*/ = 0) { return x == 0; }
  static double magnitude(const Rational& x) { return std::abs(to_double(x)); }
  static Rational zero_like(const Rational&) { return 0; }
  static Rational one_like(const Rational&) { return 1; }
  static Rational inverse(const Rational& x) { return Rational(1) / x; }
};

template <>
struct FieldTraits<QComplex> {
  static constexpr bool exact = true;
  static bool is_zero(const QComplex& x, double /*tol*/ = 0) { return x.is_zero(); }
  static double magnitude(const QComplex& x) { return std::abs(x.to_complex()); }
  static QComplex zero_like(const QComplex&) { return 0; }
  static QComplex one_like(const QComplex&) { return 1; }
  static QComplex inverse(const QComplex& x) { return QComplex(1) / x; }
};

template <>
struct FieldTraits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x, double tol) { return std::abs(x) <= tol; }
  static double magnitude(double x) { return std::abs(x); }
  static double zero_like(double) { return 0.0; }
  static double one_like(double) { return 1.0; }
  static double inverse(double x) { return 1.0 / x; }
};

template <>
struct FieldTraits<Complex> {
  static constexpr bool exact = false;
  static bool is_zero(const Complex& x, double tol) { return std::abs(x) <= tol; }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static Complex zero_like(const Complex&) { return 0.0; }
  static Complex one_like(const Complex&) { return 1.0; }
  static Complex inverse(const Complex& x) { return 1.0 / x; }
};

template <class S>
struct Echelon {
  Matrix<S> reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
  S determinant;                     // meaningful only for square input
  [[nodiscard]] std::size_t rank() const { return pivots.size(); }
};

// Gauss-Jordan elimination. Exact fields take the first nonzero entry of a
// column as pivot; floating fields take the largest magnitude and treat
// entries below tol * (max |entry|) as zero.
// `scale_cols` limits the columns that set the magnitude scale (an augmented
// right-hand side should not); `flush` zeroes tiny entries at the end.
template <class S>
Echelon<S> reduced_row_echelon(Matrix<S> m, double tol = 1e-12,
                               std::size_t scale_cols = static_cast<std::size_t>(-1), bool flush = true) {
  using T = FieldTraits<S>;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Echelon<S> out;
  if (rows == 0 || cols == 0) {
    out.reduced = std::move(m);
    out.determinant = S(1);
    return out;
  }
  const S zero = T::zero_like(m(0, 0));
  S det = T::one_like(m(0, 0));
  double scale = 0.0;
  if constexpr (!T::exact) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < std::min(cols, scale_cols); ++j) scale = std::max(scale, T::magnitude(m(i, j)));
  }
  const double cutoff = tol * (scale > 0 ? scale : 1.0);
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::optional<std::size_t> pivot;
    if constexpr (T::exact) {
      for (std::size_t i = row; i < rows; ++i) {
        if (!T::is_zero(m(i, col))) {
          pivot = i;
          break;
        }
      }
    } else {
      double best = cutoff;
      for (std::size_t i = row; i < rows; ++i) {
        const double mag = T::magnitude(m(i, col));
        if (mag > best) {
          best = mag;
          pivot = i;
        }
      }
    }
    if (!pivot) {
      det = zero;
      continue;
    }
    if (*pivot != row) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(row, j), m(*pivot, j));
      det = -det;
    }
    const S p = m(row, col);
    det *= p;
    const S inv = T::inverse(p);
    for (std::size_t j = 0; j < cols; ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || T::is_zero(m(i, col), 0.0)) continue;
      const S f = m(i, col);
      for (std::size_t j = 0; j < cols; ++j) m(i, j) -= f * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  if (row < rows) det = zero;
  if constexpr (!T::exact) {
    if (flush)
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          if (T::is_zero(m(i, j), cutoff)) m(i, j) = zero;
  }
  out.reduced = std::move(m);
  out.determinant = std::move(det);
  return out;
}

template <class S>
std::size_t rank(const Matrix<S>& m, double tol = 1e-12) {
  return reduced_row_echelon(m, tol).rank();
}

template <class S>
S determinant(const Matrix<S>& m) {
  if (!m.square()) throw DimensionError("determinant of non-square " + m.shape());
  if (m.rows() == 0) return S(1);
  return reduced_row_echelon(m, 0.0).determinant;
}

// Inverse via [m | I] elimination; nullopt when singular.
template <class S>
std::optional<Matrix<S>> inverse(const Matrix<S>& m, double tol = 1e-12) {
  using T = FieldTraits<S>;
  if (!m.square()) throw DimensionError("inverse of non-square " + m.shape());
  const std::size_t n = m.rows();
  if (n == 0) return m;
  const S zero = T::zero_like(m(0, 0));
  const S one = T::one_like(m(0, 0));
  Matrix<S> aug(n, 2 * n, zero);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = one;
  }
  // Pivot only inside the left block: eliminate column by column.
  // Singularity is judged relative to m alone; the inverse keeps small entries.
  auto e = reduced_row_echelon(std::move(aug), tol, n, false);
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<S> inv(n, n, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

template <class S>
bool is_zero_matrix(const Matrix<S>& m, double tol = 0.0) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!FieldTraits<S>::is_zero(m(i, j), tol)) return false;
  return true;
}

template <class S>
bool is_symmetric(const Matrix<S>& m, double tol = 0.0) {
  return m.square() && is_zero_matrix(Matrix<S>(m - m.transpose()), tol);
}

template <class S>
double max_abs(const Matrix<S>& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      best = std::max(best, FieldTraits<S>::magnitude(m(i, j)));
  return best;
}

// Component maps between the exact and floating worlds.
inline QCMatrix to_qc(const RatMatrix& m) {
  return m.map([](const Rational& x) { return QComplex(x); });
}
inline QCMatrix to_qc(const IntMatrix& m) {
  return m.map([](std::int64_t x) { return QComplex(static_cast<long long>(x)); });
}
inline RatMatrix to_rat(const IntMatrix& m) {
  return m.map([](std::int64_t x) { return Rational(static_cast<long long>(x)); });
}
inline CMatrix to_complex(const QCMatrix& m) {
  return m.map([](const QComplex& x) { return x.to_complex(); });
}
inline CMatrix to_complex(const IntMatrix& m) {
  return m.map([](std::int64_t x) { return Complex(static_cast<double>(x), 0.0); });
}
inline CMatrix to_complex(const RMatrix& m) {
  return m.map([](double x) { return Complex(x, 0.0); });
}
inline RMatrix to_double(const RatMatrix& m) {
  return m.map([](const Rational& x) { return pfm::to_double(x); });
}
inline RatMatrix real_part(const QCMatrix& m) {
  return m.map([](const QComplex& x) { return x.re; });
}
inline RatMatrix imag_part(const QCMatrix& m) {
  return m.map([](const QComplex& x) { return x.im; });
}
inline RMatrix real_part(const CMatrix& m) {
  return m.map([](const Complex& x) { return x.real(); });
}
inline RMatrix imag_part(const CMatrix& m) {
  return m.map([](const Complex& x) { return x.imag(); });
}
inline QCMatrix conj(const QCMatrix& m) {
  return m.map([](const QComplex& x) { return x.conj(); });
}
inline CMatrix conj(const CMatrix& m) {
  return m.map([](const Complex& x) { return std::conj(x); });
}

}  // namespace pfm
