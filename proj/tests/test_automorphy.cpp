#include <doctest.h>

#include "pfmirror/automorphy.hpp"
#include "pfmirror/cone.hpp"
#include "pfmirror/errors.hpp"
#include "pfmirror/sampling.hpp"

using namespace pfm;

namespace {

std::pair<BundleData, TorusData> square_example() {
  return {BundleData{2, IntMatrix{{1}}, {PiComplex(QComplex(Rational(1, 2)))}, section5_cocycle()},
          TorusData(QCMatrix{{kI}})};
}

std::vector<CVector> points(Rng& rng, const TorusData& t, int count) {
  std::vector<CVector> out;
  for (int k = 0; k < count; ++k) out.push_back(random_point(rng, t));
  return out;
}

}  // namespace

TEST_CASE("script A on the square torus is i/4") {
  const auto [b, t] = square_example();
  const ScriptA a = script_A(b, t);
  REQUIRE(a.exact);
  CHECK((*a.exact)(0, 0) == QComplex(0, Rational(1, 4)));
  CHECK(a.symmetric);
  CHECK(a.t2);
  CHECK(a.t5);
  CHECK(a.t6);
}

TEST_CASE("script A vanishes with A") {
  const TorusData t(QCMatrix{{kI, QComplex(0)}, {QComplex(1), QComplex(0, 3)}});
  const BundleData b{1, IntMatrix{{0, 0}, {0, 0}}, {PiComplex(0), PiComplex(0)}, std::nullopt};
  const ScriptA a = script_A(b, t);
  CHECK(is_zero_matrix(*a.exact));
  CHECK((a.t2 && a.t5 && a.t6));
}

TEST_CASE("identities t2, t5, t6 hold exactly on random holomorphic data") {
  Rng rng(61);
  for (int k = 0; k < 30; ++k) {
    const int n = 1 + k % 3;
    const HolomorphicInstance inst = random_holomorphic(rng, n);
    const BundleData b{2, inst.A, random_mu(rng, n), std::nullopt};
    const ScriptA a = script_A(b, TorusData(inst.T));
    CHECK(a.exact.has_value());
    CHECK(a.symmetric);
    CHECK((a.t2 && a.t5 && a.t6));
  }
}

TEST_CASE("constants on the square torus") {
  const auto [b, t] = square_example();
  const Theorem36Constants c = theorem36_constants(b, t);
  // (i/2)(Wᵗμ) with W = -i/2, μ = 1/2 gives 1/8; the primed exponent is -i/8.
  CHECK(std::abs(c.c_exponent[0] - Complex(0.125, 0)) < 1e-15);
  CHECK(std::abs(c.c_prime_exponent[0] - Complex(0, -0.125)) < 1e-15);
  CHECK(std::abs(c.c[0] - std::exp(0.125)) < 1e-15);
}

TEST_CASE("semi-representation law") {
  Rng rng(71);
  for (int k = 0; k < 10; ++k) {
    const int n = 1 + k % 2;
    const HolomorphicInstance inst = random_holomorphic(rng, n);
    const TorusData t(inst.T);
    const int r = minimal_dimension(2, inst.A) <= 2 ? 2 : 4;
    auto set = construct_standard(r, inst.A, r);
    if (!set) continue;
    const FactorOfAutomorphy foa(BundleData{r, inst.A, random_mu(rng, n), set}, t);
    for (int s = 0; s < 10; ++s) {
      const LatticeVector g = random_lattice(rng, n, 2), h = random_lattice(rng, n, 2);
      const CMatrix lhs = semi_rep_extend(foa, g + h);
      CMatrix rhs = semi_rep_extend(foa, g) * semi_rep_extend(foa, h);
      rhs *= std::exp(Complex(0, kPi * static_cast<double>(im_pairing_over_pi(inst.A, h, g)) / r));
      CHECK(frobenius_norm(CMatrix(lhs - rhs)) <= 1e-10 * frobenius_norm(lhs));
    }
  }
}

TEST_CASE("cocycle residual of the worked example") {
  const auto [b, t] = square_example();
  const FactorOfAutomorphy foa(b, t);
  Rng rng(81);
  for (int s = 0; s < 50; ++s) {
    const LatticeVector g = random_lattice(rng, 1, 3), h = random_lattice(rng, 1, 3);
    CHECK(cocycle_residual(foa, g, h, random_point(rng, t)) < 1e-9);
  }
  CHECK(frobenius_norm(CMatrix(automorphy_eval(foa, LatticeVector::zero(1), CVector{Complex(0.3, 0.1)}) -
                               CMatrix::identity(2))) < 1e-15);
}

TEST_CASE("a factor of automorphy needs valid transition matrices") {
  auto [b, t] = square_example();
  b.cocycle.reset();
  CHECK_THROWS_AS(FactorOfAutomorphy(b, t), PreconditionError);
  b.cocycle = section5_cocycle();
  b.A = IntMatrix{{2}};  // 3 would act like 1 mod 2
  CHECK_THROWS_AS(FactorOfAutomorphy(b, t), PreconditionError);
}

TEST_CASE("corrected Psi satisfies the gauge equation") {
  const auto [b, t] = square_example();
  Rng rng(91);
  const GaugeReport g = gauge_and_conjugation_check(b, t, points(rng, t, 100));
  CHECK(g.t1_residual_max < 1e-12);
  CHECK(g.t1_fd_residual_max < 1e-6);
  CHECK(g.conjugation_residual_max < 1e-12);
}

TEST_CASE("Psi with script A in the zbar-zbar term fails the gauge equation") {
  const auto [b, t] = square_example();
  Rng rng(92);
  const GaugeReport g = gauge_and_conjugation_check(b, t, points(rng, t, 20), PsiForm::as_printed);
  CHECK(g.t1_residual_max > 1e-2);
  CHECK(g.t1_fd_residual_max > 1e-2);
}

TEST_CASE("gauge and conjugation on random data") {
  Rng rng(101);
  for (int k = 0; k < 8; ++k) {
    const int n = 1 + k % 2;
    const HolomorphicInstance inst = random_holomorphic(rng, n);
    const TorusData t(inst.T);
    auto set = construct_standard(1, inst.A, 1);
    const BundleData b{1, inst.A, random_mu(rng, n), set};
    const GaugeReport g = gauge_and_conjugation_check(b, t, points(rng, t, 30));
    CHECK(g.t1_residual_max < 1e-9);
    CHECK(g.conjugation_residual_max < 1e-9);
    CHECK((g.t2 && g.t5 && g.t6));
  }
}

TEST_CASE("Psi exponent on the square torus") {
  // 𝒜 = i/4, r = 1, μ = 0: E = (z̄² - z²)/16π + |z|²/8π
  const TorusData t(QCMatrix{{kI}});
  const BundleData b{1, IntMatrix{{1}}, {PiComplex(0)}, std::nullopt};
  const Complex z(0.4, -0.7);
  const Complex expected = (std::conj(z) * std::conj(z) - z * z) / (16 * kPi) + std::norm(z) / (8 * kPi);
  const Complex e = psi_exponent(b, t, CVector{z});
  CHECK(std::abs(e - expected) < 1e-15);
  CHECK(std::abs(psi_eval(b, t, CVector{z}) - std::exp(expected)) < 1e-15);
}

TEST_CASE("cocycle holds when the constants are far from unit modulus") {
  // A tall period matrix and large Im μ push the constants past 1e7 or below 1e-7;
  // inverting them must not lose the small entries.
  const TorusData t(QCMatrix{{QComplex(Rational(13, 2), 7), QComplex(Rational(5, 2), 4)},
                             {QComplex(Rational(5, 2), 4), QComplex(Rational(1, 2), Rational(5, 2))}});
  const IntMatrix A{{-3, 4}, {-2, 3}};
  BundleData b{1, A, {PiComplex(QComplex(Rational(1, 2), 24)), PiComplex(QComplex(-1, 36))}, construct_standard(1, A, 1)};
  REQUIRE(is_holomorphic(b, t).holomorphic);
  const FactorOfAutomorphy foa(b, t);
  double spread = 1.0;
  for (const auto* family : {&foa.u_gamma(), &foa.u_gamma_prime()})
    for (const auto& u : *family) spread = std::max({spread, std::abs(u(0, 0)), 1.0 / std::abs(u(0, 0))});
  CHECK(spread > 1e7);
  LatticeVector g = LatticeVector::zero(2), h = LatticeVector::zero(2);
  g.m = {0, -2};
  g.n_prime = {2, 2};
  h.m = {-2, 1};
  h.n_prime = {-1, 0};
  Rng rng(3);
  for (const CVector& z : points(rng, t, 20)) {
    CHECK(cocycle_residual(foa, g, h, z) < 1e-9);
    CHECK(cocycle_residual(foa, h, g, z) < 1e-9);
  }
  CHECK(std::abs(semi_rep_extend(foa, h)(0, 0)) > 0.0);
}
