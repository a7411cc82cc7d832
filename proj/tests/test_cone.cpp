#include <doctest.h>

#include "pfmirror/cone.hpp"
#include "pfmirror/errors.hpp"
#include "pfmirror/sampling.hpp"

using namespace pfm;
using exterior::FormElement;

TEST_CASE("Chern character of a flat and a degree-one bundle") {
  const ChernVector flat = chern_character(3, IntMatrix{{0, 0}, {0, 0}});
  REQUIRE(flat.ch.size() == 3);
  CHECK(flat.ch[0] == FormElement::scalar(2, QComplex(3)));
  CHECK(flat.ch[1].is_zero());
  CHECK(flat.ch[2].is_zero());

  const ChernVector one = chern_character(1, IntMatrix{{1}});
  FormElement expected(1, 1);
  expected.add_term({0, 1}, QComplex(1));
  CHECK(one.ch[1] == expected);
}

TEST_CASE("top Chern character of the identity") {
  // Ω' = (1/4π² r) Σ dx_i dy_i, ch_n = (r/n!) Ω'^n = r^{1-n} vol / (4π²)^n
  const ChernVector ch = chern_character(2, IntMatrix::identity(3, 1, 0));
  std::vector<int> vol{0, 3, 1, 4, 2, 5};
  CHECK(ch.ch[3].coefficient(vol) == QComplex(Rational(1, 4)));
  CHECK(ch.ch[3].inv_4pi2_power() == 3);
}

TEST_CASE("cone target") {
  const ConeTarget t = cone_target(1, IntMatrix{{0}}, 1, IntMatrix{{1}});
  CHECK(t.t == 2);
  CHECK(t.C == IntMatrix{{1}});
  CHECK_THROWS_AS(cone_target(1, IntMatrix{{0}}, 1, IntMatrix{{1, 0}, {0, 1}}), DimensionError);
}

TEST_CASE("projective flatness of the cone") {
  CHECK_FALSE(cone_projectively_flat(1, IntMatrix{{0, 0}, {0, 0}}, 1, IntMatrix{{1, 0}, {0, 1}}).pf);
  CHECK(cone_projectively_flat(2, IntMatrix{{2, 0}, {0, 0}}, 1, IntMatrix{{1, 0}, {0, 0}}).pf);
  CHECK(cone_projectively_flat(1, IntMatrix{{1, 1}, {1, 1}}, 1, IntMatrix{{0, 0}, {0, 0}}).pf);
  // On a 2-torus every α has vanishing square.
  CHECK(cone_projectively_flat(1, IntMatrix{{5}}, 3, IntMatrix{{-2}}).pf);
}

TEST_CASE("Chern chain reductions") {
  const IntMatrix zero{{0, 0}, {0, 0}}, id{{1, 0}, {0, 1}};
  const ChernChain bad = chern_chain(1, zero, 1, id, 2, id);
  CHECK(bad.c0);
  CHECK(bad.c1);
  CHECK_FALSE(bad.c2);
  CHECK_FALSE(bad.c2_prime);
  CHECK_FALSE(bad.c2_double_prime);
  CHECK(bad.c2_reduction_consistent);

  const IntMatrix e11{{1, 0}, {0, 0}};
  const ChernChain good = chern_chain(1, zero, 1, e11, 2, e11);
  CHECK((good.c0 && good.c1 && good.c2 && good.c2_prime && good.c2_double_prime));
}

TEST_CASE("Chern chain reductions agree on random data") {
  Rng rng(17);
  for (int k = 0; k < 40; ++k) {
    const int n = 2 + k % 3;
    const int r = static_cast<int>(rng.uniform_int(1, 3)), s = static_cast<int>(rng.uniform_int(1, 3));
    IntMatrix A, B;
    if (k % 2) {
      const LagrangianPair p = random_rank1_pair(rng, n);
      A = p.first.A;
      B = p.second.A;
      CHECK(chern_chain(p.first.r, A, p.second.r, B, p.first.r + p.second.r, A + B).c2_double_prime);
    } else {
      A = random_int_matrix(rng, n, 2);
      B = random_int_matrix(rng, n, 2);
    }
    CHECK(chern_chain(r, A, s, B, r + s, A + B).c2_reduction_consistent);
  }
}

TEST_CASE("higher Chern factorization") {
  Rng rng(19);
  for (const auto& [i, n] : std::vector<std::pair<int, int>>{{3, 3}, {3, 4}, {4, 4}, {3, 5}, {5, 5}}) {
    for (int k = 0; k < 3; ++k) {
      const int r = static_cast<int>(rng.uniform_int(1, 3)), s = static_cast<int>(rng.uniform_int(1, 3));
      const CiFactorization f =
          ci_factorization_check(i, r, s, random_int_matrix(rng, n, 2), random_int_matrix(rng, n, 2));
      CHECK(f.factorization_holds);
      CHECK(f.matches_chern_difference);
    }
  }
  CHECK_THROWS_AS(ci_factorization_check(2, 1, 1, IntMatrix{{1, 0}, {0, 1}}, IntMatrix{{0, 0}, {0, 0}}), GuardError);
  CHECK_THROWS_AS(ci_factorization_check(3, 1, 1, IntMatrix{{1, 0}, {0, 1}}, IntMatrix{{0, 0}, {0, 0}}), GuardError);
}

TEST_CASE("worked example on the square torus") {
  const Section5Report rep = section5_fixture(kI, PiComplex(0), PiComplex(0));
  CHECK(rep.all());
  CHECK(rep.eta == PiComplex(PiLinear(0, 1), PiLinear(0, 1)));
  CHECK(rep.mirror.codim.codim == 1);
}

TEST_CASE("worked example rejects bad inputs") {
  CHECK_THROWS_AS(section5_fixture(QComplex(1), PiComplex(0), PiComplex(0)), InputError);
  CocycleSet commuting = section5_cocycle();
  commuting.U[0] = CycloMatrix::identity(2);
  const Section5Report rep = section5_fixture(kI, PiComplex(0), PiComplex(0), commuting);
  CHECK_FALSE(rep.cocycle_verified);
  CHECK_FALSE(rep.all());
}
