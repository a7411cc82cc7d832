#include <doctest.h>

#include "pfmirror/errors.hpp"
#include "pfmirror/sampling.hpp"
#include "pfmirror/torus.hpp"

using namespace pfm;

TEST_CASE("square torus is valid") {
  const TorusData t(QCMatrix{{kI}});
  const TorusValidation v = validate_torus(t);
  CHECK(v.valid());
  CHECK(v.determinant == "i");
  CHECK_NOTHROW(require_valid(t));
}

TEST_CASE("indefinite imaginary part reports the failing minor") {
  const TorusData t(QCMatrix{{kI, QComplex(0)}, {QComplex(0), -kI}});
  const TorusValidation v = validate_torus(t);
  CHECK_FALSE(v.im_positive_definite);
  REQUIRE(v.failing_minor_order);
  CHECK(*v.failing_minor_order == 2);
  CHECK(v.failing_minor_value == "-1");
  CHECK_THROWS_AS(require_valid(t), PreconditionError);
}

TEST_CASE("singular period matrix with definite imaginary part") {
  // [[i, 1], [-1, i]] has det = -1 + 1 = 0
  const TorusData t(QCMatrix{{kI, QComplex(1)}, {QComplex(-1), kI}});
  const TorusValidation v = validate_torus(t);
  CHECK(v.im_positive_definite);
  CHECK_FALSE(v.nonsingular);
  CHECK_FALSE(v.valid());
}

TEST_CASE("only the symmetric part of Im T must be definite") {
  // Im T = [[1, 4], [-4, 1]] is not symmetric; its symmetric part is I.
  const TorusData t(QCMatrix{{kI, QComplex(0, 4)}, {QComplex(0, -4), kI}});
  CHECK(validate_torus(t).im_positive_definite);
}

TEST_CASE("numeric tori use the tolerance") {
  const TorusData t(CMatrix{{Complex(0.3, 1.5)}});
  CHECK_FALSE(t.is_exact());
  CHECK(validate_torus(t).valid());
  CHECK_THROWS(static_cast<void>(t.exact()));
  CHECK_FALSE(validate_torus(TorusData(CMatrix{{Complex(1.0, 1e-14)}})).im_positive_definite);
}

TEST_CASE("lattice embedding") {
  const QCMatrix T{{QComplex(Rational(1, 2), Rational(1)), QComplex(0)}, {QComplex(1), QComplex(0, 2)}};
  const TorusData t(T);
  const auto g2 = lattice_embed_over_2pi(LatticeVector::gamma(2, 2), t);
  CHECK(g2[0] == QComplex(0));
  CHECK(g2[1] == QComplex(1));
  // γ'_1 / 2π is column 1 of T
  const auto gp1 = lattice_embed_over_2pi(LatticeVector::gamma_prime(2, 1), t);
  CHECK(gp1[0] == T(0, 0));
  CHECK(gp1[1] == T(1, 0));
  const CVector num = lattice_embed(LatticeVector::gamma_prime(2, 1), t);
  CHECK(std::abs(num[0] - 2 * kPi * Complex(0.5, 1.0)) < 1e-14);
}

TEST_CASE("lattice vector arithmetic") {
  const LatticeVector a = LatticeVector::gamma(2, 1) + 3 * LatticeVector::gamma_prime(2, 2);
  CHECK(a.m == std::vector<std::int64_t>{1, 0});
  CHECK(a.n_prime == std::vector<std::int64_t>{0, 3});
  CHECK((a + -a).is_zero());
  CHECK_THROWS(LatticeVector::gamma(2, 3));
}

TEST_CASE("real coordinates round-trip") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    const TorusData t(random_holomorphic(rng, n).T);
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = rng.uniform_real(-3, 3);
      y[i] = rng.uniform_real(-3, 3);
    }
    const RealCoords back = zy_coords(z_from_xy(x, y, t), t);
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(back.x[i] - x[i]) < 1e-12);
      CHECK(std::abs(back.y[i] - y[i]) < 1e-12);
    }
  }
}

TEST_CASE("exact real coordinates") {
  const TorusData t(QCMatrix{{QComplex(Rational(1, 2), Rational(2))}});
  // z = x + T y with x = 1/3, y = 1/4
  const std::vector<QComplex> z{QComplex(Rational(1, 3) + Rational(1, 8), Rational(1, 2))};
  const ExactRealCoords c = zy_coords(z, t);
  CHECK(c.x[0] == Rational(1, 3));
  CHECK(c.y[0] == Rational(1, 4));
  CHECK(exact_t_minus_tbar_inverse(t)(0, 0) == QComplex(0, Rational(-1, 4)));
}
