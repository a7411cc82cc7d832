#include <doctest.h>

#include "pfmirror/cone.hpp"
#include "pfmirror/exterior.hpp"
#include "pfmirror/sampling.hpp"

using namespace pfm;
using exterior::FormElement;

TEST_CASE("generators anticommute and square to zero") {
  const FormElement dx1 = FormElement::dx(2, 1), dy1 = FormElement::dy(2, 1), dx2 = FormElement::dx(2, 2);
  CHECK(exterior::wedge(dx1, dy1) == exterior::wedge(dy1, dx1) * QComplex(-1));
  CHECK(exterior::wedge(dx1, dx1).is_zero());
  const FormElement three = exterior::wedge(exterior::wedge(dx1, dy1), dx2);
  CHECK(three.degree() == 3);
  CHECK(three.coefficient({0, 2, 1}) == QComplex(1));
  CHECK(three.coefficient({1, 0, 2}) == QComplex(1));
  CHECK(three.coefficient({2, 0, 1}) == QComplex(-1));
}

TEST_CASE("wedge is associative and graded commutative") {
  Rng rng(11);
  const int n = 3;
  auto random_two_form = [&] { return exterior::two_form_from_matrix(random_rat_matrix(rng, n, n, 3, 2)); };
  auto random_one_form = [&] {
    FormElement f(n);
    for (int g = 0; g < 2 * n; ++g) f += FormElement::generator(n, g) * QComplex(rng.rational(3, 2));
    return f;
  };
  for (int t = 0; t < 10; ++t) {
    const FormElement a = random_two_form(), b = random_one_form(), c = random_one_form();
    CHECK(exterior::wedge(exterior::wedge(a, b), c) == exterior::wedge(a, exterior::wedge(b, c)));
    CHECK(exterior::wedge(a, b) == exterior::wedge(b, a));
    CHECK(exterior::wedge(b, c) == exterior::wedge(c, b) * QComplex(-1));
  }
}

TEST_CASE("top power of dx^dy sums is n! times the volume form") {
  for (int n = 1; n <= 4; ++n) {
    const FormElement omega = exterior::two_form_from_matrix(RatMatrix::identity(n));
    const FormElement top = exterior::wedge_power(omega, n);
    REQUIRE(top.terms().size() == 1);
    std::vector<int> vol;
    for (int i = 0; i < n; ++i) {
      vol.push_back(i);
      vol.push_back(n + i);
    }
    Rational fact = 1;
    for (int k = 2; k <= n; ++k) fact *= k;
    CHECK(top.coefficient(vol) == QComplex(fact));
    CHECK(exterior::wedge(top, omega).is_zero());
  }
}

TEST_CASE("square of a curvature difference is the sum of 2x2 minors") {
  // (Ω'_r - Ω'_s)^2 = (1/8π^4) Σ_{i<j,k<l} (α_ik α_jl - α_il α_jk) dx_k dy_i dx_l dy_j
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 3;
    const int r = static_cast<int>(rng.uniform_int(1, 3)), s = static_cast<int>(rng.uniform_int(1, 3));
    const IntMatrix A = random_int_matrix(rng, n, 2), B = random_int_matrix(rng, n, 2);
    const FormElement diff = normalized_curvature(r, A) - normalized_curvature(s, B);
    const RatMatrix alpha = to_rat(A) * Rational(1, r) - to_rat(B) * Rational(1, s);
    FormElement expected(n, 2);  // carries (4π²)^{-2} = 1/16π^4
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = k + 1; l < n; ++l) {
            const Rational minor = alpha(i, k) * alpha(j, l) - alpha(i, l) * alpha(j, k);
            expected.add_term({k, n + i, l, n + j}, QComplex(2 * minor));
          }
    CHECK(exterior::wedge_power(diff, 2) == expected);
  }
}

TEST_CASE("forms on different tori or pi powers do not mix") {
  CHECK_THROWS(FormElement::dx(2, 1) + FormElement::dx(3, 1));
  CHECK_THROWS(FormElement::dx(2, 1) + FormElement::scalar(2, QComplex(1), 1));
  // Zero carries no exponent of its own.
  CHECK_NOTHROW(FormElement(2, 1) + FormElement::dx(2, 1));
  CHECK_THROWS(exterior::wedge_power(FormElement::dx(2, 1), 0));
}
