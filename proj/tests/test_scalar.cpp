#include <doctest.h>

#include "pfmirror/errors.hpp"
#include "pfmirror/matrix.hpp"
#include "pfmirror/scalar.hpp"

using namespace pfm;

TEST_CASE("parse_rational accepts fractions and decimals exactly") {
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("2.5e-3") == Rational(1, 400));
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("doubles convert to their exact dyadic value") {
  CHECK(rational_from_double(0.5) == Rational(1, 2));
  CHECK(rational_from_double(-3.0) == -3);
  // 0.1 is not 1/10 in binary
  const Rational tenth = rational_from_double(0.1);
  CHECK(tenth != Rational(1, 10));
  CHECK(denominator(tenth) == BigInt(1) << 55);
  CHECK(to_double(tenth) == 0.1);
}

TEST_CASE("parse_number handles pi and i") {
  CHECK(parse_number("pi") == PiComplex(PiLinear(0, 1)));
  CHECK(parse_number("-pi/3") == PiComplex(PiLinear(0, Rational(-1, 3))));
  CHECK(parse_number("1/2+3/2i") == PiComplex(QComplex(Rational(1, 2), Rational(3, 2))));
  CHECK(parse_number("1+pi*i") == PiComplex(PiLinear(1), PiLinear(0, 1)));
  CHECK(parse_number("(1+i)/2") == PiComplex(QComplex(Rational(1, 2), Rational(1, 2))));
  CHECK(parse_number("2*pi") == PiComplex(PiLinear(0, 2)));
  CHECK(parse_number("i*i") == PiComplex(-1));
  CHECK_THROWS_AS(parse_number("pi*pi"), InputError);
  CHECK_THROWS_AS(parse_number("1+"), InputError);
}

TEST_CASE("format round-trips through parse_number") {
  for (const char* text : {"0", "-7/3", "pi", "1/2-pi/5", "3i", "1+2*pi-1/3i", "-pi*i", "2/7+pi/2+(1/3-4*pi)*i"}) {
    const PiComplex z = parse_number(text);
    CHECK(parse_number(format(z)) == z);
  }
}

TEST_CASE("Gaussian rational field operations") {
  const QComplex a(Rational(1), Rational(2));
  const QComplex b(Rational(3), Rational(-1));
  CHECK(a * b == QComplex(Rational(5), Rational(5)));
  CHECK((a / b) * b == a);
  CHECK(a.conj() * a == QComplex(a.norm2()));
  CHECK(kI * kI == QComplex(-1));
}

TEST_CASE("exact linear algebra helpers") {
  const RatMatrix m{{1, 2}, {3, 4}};
  CHECK(determinant(m) == -2);
  const auto inv = inverse(m);
  REQUIRE(inv);
  CHECK(m * *inv == RatMatrix::identity(2));
  CHECK(rank(RatMatrix{{1, 2}, {2, 4}}) == 1);
  CHECK_FALSE(inverse(RatMatrix{{1, 2}, {2, 4}}).has_value());
  CHECK(is_symmetric(RatMatrix{{1, 5}, {5, 2}}));
  const RatMatrix row{{1, 2, 3}};
  CHECK_THROWS_AS(m * row, DimensionError);
}

TEST_CASE("floating inverse of badly scaled matrices") {
  const auto big = inverse(CMatrix{{Complex(-1.2e6, -8.8e5)}});
  REQUIRE(big);
  CHECK(std::abs((*big)(0, 0) * Complex(-1.2e6, -8.8e5) - 1.0) < 1e-14);

  const RMatrix d{{1e4, 0}, {0, 1e-4}};
  const auto dinv = inverse(d);
  REQUIRE(dinv);
  CHECK((*dinv)(0, 0) == doctest::Approx(1e-4).epsilon(1e-14));
  CHECK((*dinv)(1, 1) == doctest::Approx(1e4).epsilon(1e-14));

  // Uniformly tiny is still invertible; singularity is relative.
  const auto tiny = inverse(RMatrix{{1e-13, 2e-13}, {3e-13, 1e-13}});
  REQUIRE(tiny);
  CHECK(std::abs((*tiny)(0, 0) * 1e-13 + (*tiny)(0, 1) * 3e-13 - 1.0) < 1e-12);
  CHECK_FALSE(inverse(RMatrix{{1, 2}, {2, 4}}).has_value());
  CHECK_FALSE(inverse(RMatrix{{1e-20, 2e-20}, {2e-20, 4e-20}}).has_value());
}
