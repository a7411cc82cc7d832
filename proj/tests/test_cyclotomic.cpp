#include <doctest.h>

#include "pfmirror/cyclotomic.hpp"

using namespace pfm;

namespace {
RatPoly poly(std::initializer_list<int> c) {
  RatPoly p;
  for (int x : c) p.emplace_back(x);
  return p;
}
}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == poly({-1, 1}));
  CHECK(cyclotomic_polynomial(2) == poly({1, 1}));
  CHECK(cyclotomic_polynomial(4) == poly({1, 0, 1}));
  CHECK(cyclotomic_polynomial(6) == poly({1, -1, 1}));
  CHECK(cyclotomic_polynomial(12) == poly({1, 0, -1, 0, 1}));
  CHECK(cyclotomic_polynomial(9) == poly({1, 0, 0, 1, 0, 0, 1}));
}

TEST_CASE("product of Φ_d over d | r is x^r - 1") {
  for (int r = 1; r <= 24; ++r) {
    RatPoly acc = poly({1});
    for (int d = 1; d <= r; ++d)
      if (r % d == 0) acc = poly_mul(acc, cyclotomic_polynomial(d));
    RatPoly expected(r + 1, Rational(0));
    expected[0] = -1;
    expected[r] = 1;
    CHECK(acc == expected);
  }
}

TEST_CASE("roots of unity") {
  for (int r = 1; r <= 12; ++r) {
    const Cyclotomic z = Cyclotomic::zeta_power(r, 1);
    Cyclotomic acc = 1, sum = 0;
    for (int k = 0; k < r; ++k) {
      sum += acc;
      acc *= z;
    }
    CHECK(acc.is_one());
    if (r > 1) CHECK(sum.is_zero());
    CHECK(Cyclotomic::zeta_power(r, -1) * z == Cyclotomic(1));
    CHECK(std::abs(z.to_complex() - std::polar(1.0, 2 * M_PI / r)) < 1e-14);
  }
}

TEST_CASE("field equality is modulo the cyclotomic polynomial") {
  // In Q(ζ_4), ζ^2 = -1, which x^4 - 1 alone would not identify.
  CHECK(Cyclotomic::zeta_power(4, 2) == Cyclotomic(-1));
  CHECK(Cyclotomic::zeta_power(6, 3) == Cyclotomic(-1));
  CHECK(Cyclotomic::zeta_power(3, 1) + Cyclotomic::zeta_power(3, 2) == Cyclotomic(-1));
}

TEST_CASE("inverse of a general element") {
  const auto f = CyclotomicField::get(5);
  const Cyclotomic a(f, {Rational(1), Rational(2), Rational(0), Rational(-1, 3)});
  const Cyclotomic inv = a.inverse();
  CHECK((a * inv).is_one());
  CHECK(std::abs(inv.to_complex() - 1.0 / a.to_complex()) < 1e-12);
  CHECK_THROWS(Cyclotomic(f, {Rational(0), Rational(0), Rational(0), Rational(0)}).inverse());
}

TEST_CASE("unbound constants adopt the field they meet") {
  const Cyclotomic z = Cyclotomic::zeta_power(3, 1);
  const Cyclotomic sum = z + Cyclotomic(2);
  CHECK(sum.bound());
  CHECK(sum.coefficients() == std::vector<Rational>{2, 1});
  CHECK_THROWS(z + Cyclotomic::zeta_power(4, 1));
}
