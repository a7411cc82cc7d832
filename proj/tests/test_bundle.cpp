#include <doctest.h>

#include "pfmirror/bundle.hpp"
#include "pfmirror/errors.hpp"
#include "pfmirror/sampling.hpp"

using namespace pfm;

namespace {
BundleData line(int r, const IntMatrix& A) {
  return {r, A, std::vector<PiComplex>(A.rows()), std::nullopt};
}
}  // namespace

TEST_CASE("curvature of the square torus bundle") {
  const TorusData t(QCMatrix{{kI}});
  const PairingForm f = curvature_R(line(1, IntMatrix{{1}}), t);
  REQUIRE(f.four_pi_R);
  CHECK(*f.four_pi_R == RatMatrix{{1}});
  CHECK(f.R(0, 0) == doctest::Approx(1.0 / (4 * kPi)));
}

TEST_CASE("generator table on the square torus") {
  const TorusData t(QCMatrix{{kI}});
  const GeneratorPairings g = generator_pairings(line(1, IntMatrix{{1}}), t);
  CHECK(g.exact);
  CHECK(g.gamma_gamma(0, 0) == QComplex(1));
  CHECK(g.gammap_gammap(0, 0) == QComplex(1));
  CHECK(g.gamma_gammap(0, 0) == QComplex(0, -1));
  CHECK(g.gammap_gamma(0, 0) == QComplex(0, 1));
  CHECK(g.r_real_symmetric);
  CHECK(g.imaginary_parts_match);
}

TEST_CASE("generator table on a diagonal torus") {
  const TorusData t(QCMatrix{{QComplex(0, 2), QComplex(0)}, {QComplex(0), kI}});
  const GeneratorPairings g = generator_pairings(line(3, IntMatrix{{1, 0}, {0, 2}}), t);
  // 4πR = (Y^{-1})ᵗ A = diag(1/2, 2)
  CHECK(g.gamma_gamma == QCMatrix{{QComplex(Rational(1, 2)), QComplex(0)}, {QComplex(0), QComplex(2)}});
  CHECK(g.gammap_gamma(1, 1) == QComplex(0, 2));
  CHECK(g.gammap_gamma(0, 1) == QComplex(0));
}

TEST_CASE("holomorphy: AT symmetric and the (0,2) part agree") {
  const TorusData t(QCMatrix{{QComplex(0, 2), QComplex(0)}, {QComplex(0), kI}});
  const HolomorphyReport bad = is_holomorphic(line(1, IntMatrix{{0, 1}, {0, 0}}), t);
  CHECK(bad.exact);
  CHECK_FALSE(bad.holomorphic);
  CHECK_FALSE(bad.curvature02_symmetric);
  CHECK(is_holomorphic(line(1, IntMatrix{{1, 0}, {0, 2}}), t).holomorphic);
  CHECK_THROWS_AS(require_holomorphic(line(1, IntMatrix{{0, 1}, {0, 0}}), t), PreconditionError);
  CHECK_THROWS_AS(curvature_R(line(1, IntMatrix{{0, 1}, {0, 0}}), t), PreconditionError);
}

TEST_CASE("holomorphy equivalence on random data") {
  Rng rng(21);
  for (int k = 0; k < 60; ++k) {
    const int n = 2 + k % 2;
    const HolomorphicInstance inst = k % 2 ? random_holomorphic(rng, n) : random_generic(rng, n);
    const HolomorphyReport h = is_holomorphic(line(2, inst.A), TorusData(inst.T));
    CHECK(h.holomorphic == h.curvature02_symmetric);
    if (k % 2) CHECK(h.holomorphic);
  }
}

TEST_CASE("mu splits into p + Tᵗq") {
  const TorusData t(QCMatrix{{QComplex(Rational(1, 2), Rational(1))}});
  const MuSplit s = mu_split({PiComplex(QComplex(1, 2))}, t);
  CHECK(s.q[0] == PiLinear(2));
  CHECK(s.p[0] == PiLinear(0));
  Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    const int n = 1 + k % 3;
    const TorusData torus(random_holomorphic(rng, n).T);
    const auto mu = random_mu(rng, n);
    const MuSplit split = mu_split(mu, torus);
    CHECK(mu_from_pq(split.p, split.q, torus) == mu);
  }
}

TEST_CASE("bundle shape checks") {
  BundleData b = line(0, IntMatrix{{1}});
  CHECK_THROWS_AS(b.check(1), InputError);
  b = line(1, IntMatrix{{1}});
  CHECK_THROWS_AS(b.check(2), DimensionError);
}

TEST_CASE("connection curvature matches -(i/2πr) dxᵗAᵗdy") {
  Rng rng(9);
  for (int k = 0; k < 10; ++k) {
    const int n = 1 + k % 3;
    const BundleData b{static_cast<int>(rng.uniform_int(1, 4)), random_int_matrix(rng, n, 3), random_mu(rng, n),
                       std::nullopt};
    std::vector<double> x(n);
    for (auto& v : x) v = rng.uniform_real(-2, 2);
    CHECK(connection_curvature_check(b, x).max_abs_error < 1e-8);
  }
}

TEST_CASE("pairing is Hermitian with integral imaginary part on the lattice") {
  Rng rng(12);
  for (int k = 0; k < 20; ++k) {
    const int n = 1 + k % 3;
    const HolomorphicInstance inst = random_holomorphic(rng, n);
    const TorusData t(inst.T);
    const PairingForm f = curvature_R(line(1, inst.A), t);
    const LatticeVector a = random_lattice(rng, n, 3), c = random_lattice(rng, n, 3);
    const QComplex ac = pairing_over_pi(f, t, a, c);
    CHECK(ac == pairing_over_pi(f, t, c, a).conj());
    CHECK(denominator(ac.im) == 1);
    CHECK(std::abs(pairing_value(f, t, a, c) - kPi * ac.to_complex()) < 1e-9 * (1 + std::abs(ac.to_complex())));
  }
}
