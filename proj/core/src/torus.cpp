#include "pfmirror/torus.hpp"

#include "pfmirror/errors.hpp"

namespace pfm {

TorusData::TorusData(QCMatrix exact_T) : numeric_(to_complex(exact_T)) {
  if (!exact_T.square() || exact_T.rows() == 0) {
    throw DimensionError("period matrix must be square and non-empty, got " + exact_T.shape());
  }
  exact_ = std::move(exact_T);
}

TorusData::TorusData(CMatrix numeric_T) : numeric_(std::move(numeric_T)) {
  if (!numeric_.square() || numeric_.rows() == 0) {
    throw DimensionError("period matrix must be square and non-empty, got " + numeric_.shape());
  }
}

const QCMatrix& TorusData::exact() const {
  if (!exact_) throw PreconditionError("torus has no exact period matrix");
  return *exact_;
}

namespace {

template <class S>
TorusValidation validate_impl(const Matrix<S>& T, const Matrix<S>& sym_im, double tol) {
  TorusValidation v;
  const std::size_t n = T.rows();
  v.im_positive_definite = true;
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<S> lead(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead(i, j) = sym_im(i, j);
    const S minor = determinant(lead);
    bool positive = false;
    std::string text;
    if constexpr (FieldTraits<S>::exact) {
      positive = minor > 0;
      text = to_string(minor);
    } else {
      positive = minor > tol;
      text = std::to_string(minor);
    }
    if (!positive) {
      v.im_positive_definite = false;
      v.failing_minor_order = static_cast<int>(k);
      v.failing_minor_value = text;
      break;
    }
  }
  return v;
}

}  // namespace

TorusValidation validate_torus(const TorusData& torus) {
  TorusValidation v;
  if (torus.is_exact()) {
    const QCMatrix& T = torus.exact();
    const RatMatrix im = imag_part(T);
    RatMatrix sym = im + im.transpose();
    sym *= Rational(1, 2);
    v = validate_impl(im, sym, 0.0);
    const QComplex det = determinant(T);
    v.nonsingular = !det.is_zero();
    v.determinant = format(det);
  } else {
    const CMatrix& T = torus.numeric();
    const RMatrix im = imag_part(T);
    RMatrix sym = im + im.transpose();
    sym *= 0.5;
    v = validate_impl(im, sym, kNumericTolerance);
    const Complex det = determinant(T);
    v.nonsingular = std::abs(det) > kNumericTolerance;
    v.determinant = std::to_string(det.real()) + "+" + std::to_string(det.imag()) + "i";
  }
  return v;
}

void require_valid(const TorusData& torus) {
  const TorusValidation v = validate_torus(torus);
  if (!v.im_positive_definite) {
    throw PreconditionError("Im T is not positive definite (leading minor of order " +
                            std::to_string(v.failing_minor_order.value_or(0)) + " = " +
                            v.failing_minor_value.value_or("?") + ")");
  }
  if (!v.nonsingular) throw PreconditionError("T is singular");
}

LatticeVector LatticeVector::zero(int n) {
  return {std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(n, 0)};
}

LatticeVector LatticeVector::gamma(int n, int j) {
  if (j < 1 || j > n) throw DimensionError("generator index out of range");
  LatticeVector v = zero(n);
  v.m[j - 1] = 1;
  return v;
}

LatticeVector LatticeVector::gamma_prime(int n, int k) {
  if (k < 1 || k > n) throw DimensionError("generator index out of range");
  LatticeVector v = zero(n);
  v.n_prime[k - 1] = 1;
  return v;
}

bool LatticeVector::is_zero() const {
  for (auto x : m)
    if (x != 0) return false;
  for (auto x : n_prime)
    if (x != 0) return false;
  return true;
}

LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
  if (a.m.size() != b.m.size()) throw DimensionError("lattice vectors of different dimension");
  LatticeVector c = a;
  for (std::size_t i = 0; i < c.m.size(); ++i) {
    c.m[i] += b.m[i];
    c.n_prime[i] += b.n_prime[i];
  }
  return c;
}

LatticeVector operator-(const LatticeVector& a) { return -1 * a; }

LatticeVector operator*(std::int64_t s, const LatticeVector& a) {
  LatticeVector c = a;
  for (std::size_t i = 0; i < c.m.size(); ++i) {
    c.m[i] *= s;
    c.n_prime[i] *= s;
  }
  return c;
}

CVector lattice_embed(const LatticeVector& v, const TorusData& torus) {
  const int n = torus.n();
  if (v.dimension() != n || static_cast<int>(v.n_prime.size()) != n) {
    throw DimensionError("lattice vector dimension does not match torus");
  }
  const CMatrix& T = torus.numeric();
  CVector out(n);
  for (int i = 0; i < n; ++i) {
    Complex acc = static_cast<double>(v.m[i]);
    for (int k = 0; k < n; ++k) acc += T(i, k) * static_cast<double>(v.n_prime[k]);
    out[i] = 2.0 * kPi * acc;
  }
  return out;
}

std::vector<QComplex> lattice_embed_over_2pi(const LatticeVector& v, const TorusData& torus) {
  const int n = torus.n();
  if (v.dimension() != n) throw DimensionError("lattice vector dimension does not match torus");
  const QCMatrix& T = torus.exact();
  std::vector<QComplex> out(n);
  for (int i = 0; i < n; ++i) {
    QComplex acc(static_cast<long long>(v.m[i]));
    for (int k = 0; k < n; ++k) acc += T(i, k) * QComplex(static_cast<long long>(v.n_prime[k]));
    out[i] = acc;
  }
  return out;
}

CMatrix t_minus_tbar_inverse(const TorusData& torus) {
  const CMatrix& T = torus.numeric();
  auto inv = inverse(CMatrix(T - conj(T)));
  if (!inv) throw PreconditionError("T - conj(T) is singular");
  return *inv;
}

QCMatrix exact_t_minus_tbar_inverse(const TorusData& torus) {
  const QCMatrix& T = torus.exact();
  auto inv = inverse(QCMatrix(T - conj(T)));
  if (!inv) throw PreconditionError("T - conj(T) is singular");
  return *inv;
}

RealCoords zy_coords(const CVector& z, const TorusData& torus) {
  const int n = torus.n();
  if (static_cast<int>(z.size()) != n) throw DimensionError("point dimension mismatch");
  const CMatrix W = t_minus_tbar_inverse(torus);
  CVector diff(n);
  for (int i = 0; i < n; ++i) diff[i] = z[i] - std::conj(z[i]);
  const CVector y = W * diff;
  const CVector ty = torus.numeric() * y;
  RealCoords out;
  for (int i = 0; i < n; ++i) {
    out.y.push_back(y[i].real());
    out.x.push_back((z[i] - ty[i]).real());
  }
  return out;
}

ExactRealCoords zy_coords(const std::vector<QComplex>& z, const TorusData& torus) {
  const int n = torus.n();
  if (static_cast<int>(z.size()) != n) throw DimensionError("point dimension mismatch");
  const QCMatrix W = exact_t_minus_tbar_inverse(torus);
  std::vector<QComplex> diff(n);
  for (int i = 0; i < n; ++i) diff[i] = z[i] - z[i].conj();
  const std::vector<QComplex> y = W * diff;
  const std::vector<QComplex> ty = torus.exact() * y;
  ExactRealCoords out;
  for (int i = 0; i < n; ++i) {
    const QComplex x = z[i] - ty[i];
    if (!y[i].is_real() || !x.is_real()) {
      throw std::logic_error("zy_coords produced a non-real coordinate");
    }
    out.y.push_back(y[i].re);
    out.x.push_back(x.re);
  }
  return out;
}

CVector z_from_xy(const std::vector<double>& x, const std::vector<double>& y,
                  const TorusData& torus) {
  const int n = torus.n();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n) {
    throw DimensionError("coordinate dimension mismatch");
  }
  CVector yc(y.begin(), y.end());
  CVector z = torus.numeric() * yc;
  for (int i = 0; i < n; ++i) z[i] += x[i];
  return z;
}

}  // namespace pfm
