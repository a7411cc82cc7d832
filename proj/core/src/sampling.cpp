#include "pfmirror/sampling.hpp"

#include "pfmirror/smith.hpp"

namespace pfm {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InputError("uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection keeps the draw unbiased; span == 0 means the full 64-bit range.
  if (span == 0) return static_cast<std::int64_t>(engine_());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return lo + static_cast<std::int64_t>(x % span);
}

double Rng::uniform_real(double lo, double hi) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

Rational Rng::rational(std::int64_t num_bound, std::int64_t den_bound) {
  const std::int64_t p = uniform_int(-num_bound, num_bound);
  const std::int64_t q = uniform_int(1, den_bound);
  return Rational(p, q);
}

IntMatrix random_int_matrix(Rng& rng, int n, std::int64_t bound) {
  IntMatrix m(n, n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.uniform_int(-bound, bound);
  return m;
}

IntMatrix random_symmetric_int(Rng& rng, int n, std::int64_t bound) {
  IntMatrix m(n, n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = rng.uniform_int(-bound, bound);
  return m;
}

IntMatrix random_unimodular(Rng& rng, int n, int steps) {
  IntMatrix m = IntMatrix::identity(n, 1, 0);
  if (n < 2) {
    if (rng.coin()) m(0, 0) = -1;
    return m;
  }
  for (int s = 0; s < steps; ++s) {
    const int i = static_cast<int>(rng.uniform_int(0, n - 1));
    int j = static_cast<int>(rng.uniform_int(0, n - 2));
    if (j >= i) ++j;
    const std::int64_t c = rng.coin() ? 1 : -1;
    // row_i += c * row_j
    for (int k = 0; k < n; ++k) m(i, k) += c * m(j, k);
  }
  if (rng.coin()) {
    const int i = static_cast<int>(rng.uniform_int(0, n - 1));
    for (int k = 0; k < n; ++k) m(i, k) = -m(i, k);
  }
  return m;
}

RatMatrix random_rat_matrix(Rng& rng, int rows, int cols, std::int64_t num_bound, std::int64_t den_bound) {
  RatMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.rational(num_bound, den_bound);
  return m;
}

namespace {

QComplex random_upper(Rng& rng) {
  const Rational im(rng.uniform_int(1, 4), rng.uniform_int(1, 2));
  return {rng.rational(3, 2), im};
}

HolomorphicInstance conjugate(Rng& rng, const QCMatrix& T0, const IntMatrix& A0, int kind) {
  const int n = static_cast<int>(T0.rows());
  const IntMatrix M = random_unimodular(rng, n, 2);
  const IntMatrix Minv = unimodular_inverse(M);
  const QCMatrix Mq = to_qc(M);
  return {Mq * T0 * Mq.transpose(), M * A0 * Minv, kind};
}

}  // namespace

HolomorphicInstance random_holomorphic(Rng& rng, int n) {
  const int kind = static_cast<int>(rng.uniform_int(0, n >= 2 ? 2 : 1));
  QCMatrix T0(n, n, QComplex(0));
  IntMatrix A0(n, n, 0);
  if (kind == 0) {
    const QComplex tau = random_upper(rng);
    for (int i = 0; i < n; ++i) T0(i, i) = tau;
    A0 = random_symmetric_int(rng, n, 2);
  } else {
    for (int i = 0; i < n; ++i) {
      T0(i, i) = random_upper(rng);
      A0(i, i) = rng.uniform_int(-2, 2);
    }
    if (kind == 2) {
      // A real entry above the diagonal keeps Im T diagonal; A0 must then
      // vanish on the first row so that A0 T0 stays diagonal.
      T0(0, 1) = QComplex(rng.rational(2, 2) + 1);
      A0(0, 0) = 0;
    }
  }
  return conjugate(rng, T0, A0, kind);
}

HolomorphicInstance random_generic(Rng& rng, int n) {
  QCMatrix T(n, n, QComplex(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // Diagonally dominant imaginary part, so its symmetric part is positive definite.
      const Rational im = i == j ? Rational(rng.uniform_int(n, n + 3)) : Rational(rng.uniform_int(-1, 1), 2);
      T(i, j) = QComplex(rng.rational(2, 3), im);
    }
  }
  return {T, random_int_matrix(rng, n, 2), -1};
}

std::vector<PiComplex> random_mu(Rng& rng, int n, bool allow_pi) {
  std::vector<PiComplex> mu;
  for (int i = 0; i < n; ++i) {
    PiLinear re(rng.rational(3, 3));
    PiLinear im(rng.rational(3, 3));
    if (allow_pi && rng.coin()) re.pi = rng.rational(2, 2);
    if (allow_pi && rng.coin()) im.pi = rng.rational(2, 2);
    mu.emplace_back(re, im);
  }
  return mu;
}

LatticeVector random_lattice(Rng& rng, int n, std::int64_t bound) {
  LatticeVector v = LatticeVector::zero(n);
  for (int i = 0; i < n; ++i) {
    v.m[i] = rng.uniform_int(-bound, bound);
    v.n_prime[i] = rng.uniform_int(-bound, bound);
  }
  return v;
}

CVector random_point(Rng& rng, const TorusData& torus) {
  std::vector<double> x(torus.n()), y(torus.n());
  for (int i = 0; i < torus.n(); ++i) {
    x[i] = rng.uniform_real(-kPi, kPi);
    y[i] = rng.uniform_real(-kPi, kPi);
  }
  return z_from_xy(x, y, torus);
}

LagrangianPair random_rank1_pair(Rng& rng, int n) {
  const int r = static_cast<int>(rng.uniform_int(1, 3));
  const int s = static_cast<int>(rng.uniform_int(1, 3));
  const IntMatrix S = random_symmetric_int(rng, n, 2);
  const std::int64_t c = rng.uniform_int(-2, 2);
  std::vector<std::int64_t> w(n);
  for (auto& x : w) x = rng.uniform_int(-1, 1);

  IntMatrix A0 = S * static_cast<std::int64_t>(r);
  IntMatrix B0(n, n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B0(i, j) = s * (S(i, j) - c * w[i] * w[j]);

  const IntMatrix M = random_unimodular(rng, n, 2);
  const IntMatrix Minv = unimodular_inverse(M);
  const QComplex tau = random_upper(rng);
  const QCMatrix Mq = to_qc(M);
  QCMatrix T = Mq * Mq.transpose();
  T *= tau;

  LagrangianPair out;
  out.T = T;
  out.first.r = r;
  out.first.A = M * A0 * Minv;
  out.second.r = s;
  out.second.A = M * B0 * Minv;

  std::vector<PiLinear> p(n), xcheck(n), q(n), q2(n);
  for (int i = 0; i < n; ++i) {
    p[i] = PiLinear(rng.rational(3, 3), rng.coin() ? rng.rational(2, 2) : Rational(0));
    xcheck[i] = PiLinear(rng.rational(3, 3), rng.coin() ? rng.rational(2, 2) : Rational(0));
    q[i] = PiLinear(rng.rational(2, 3));
    q2[i] = PiLinear(rng.rational(2, 3));
  }
  const RatMatrix alpha =
      to_rat(out.first.A) * Rational(1, r) - to_rat(out.second.A) * Rational(1, s);
  std::vector<PiLinear> beta(n);
  const bool alpha_zero = is_zero_matrix(alpha);
  for (int i = 0; i < n; ++i) {
    if (alpha_zero) {
      beta[i] = PiLinear(0, 2 * rng.uniform_int(-2, 2));
    } else {
      for (int j = 0; j < n; ++j) beta[i] += xcheck[j] * alpha(i, j);
    }
  }
  // β = u/s - p/r
  std::vector<PiLinear> u(n);
  for (int i = 0; i < n; ++i) u[i] = (beta[i] + p[i] / Rational(r)) * Rational(s);
  out.first.p = p;
  out.first.q = q;
  out.second.p = u;
  out.second.q = q2;
  return out;
}

}  // namespace pfm
